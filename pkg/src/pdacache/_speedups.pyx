# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; see ``_purepy`` for the reference semantics."""


def label_pair_violations(const int[::1] rows, const int[::1] cols,
                          const unsigned char[:, ::1] star,
                          const int[::1] offsets):
    cdef Py_ssize_t g, a, b, lo, hi
    cdef int ja, ka, jb, kb
    out = []
    for g in range(offsets.shape[0] - 1):
        lo = offsets[g]
        hi = offsets[g + 1]
        for a in range(lo, hi):
            ja = rows[a]
            ka = cols[a]
            for b in range(a + 1, hi):
                jb = rows[b]
                kb = cols[b]
                if ja == jb or ka == kb:
                    out.append((a, b, 0))
                elif not (star[ja, kb] and star[jb, ka]):
                    out.append((a, b, 1))
    return out


def c4_violations(const int[:, ::1] base, const unsigned char[:, ::1] star):
    cdef Py_ssize_t F = base.shape[0]
    cdef Py_ssize_t K = base.shape[1]
    cdef Py_ssize_t j1, k1, k2, j2
    cdef int s
    out = []
    for j1 in range(F):
        for k1 in range(K):
            s = base[j1, k1]
            if s < 0:
                continue
            for k2 in range(K):
                if k2 == k1 or base[j1, k2] != s:
                    continue
                for j2 in range(F):
                    if star[j2, k1] and not star[j2, k2]:
                        out.append((j1, k1, j2, k2))
    return out


def xor_into(unsigned char[::1] dst, const unsigned char[::1] src):
    cdef Py_ssize_t i, n = dst.shape[0]
    if src.shape[0] != n:
        raise ValueError(f"length mismatch: {n} != {src.shape[0]}")
    with nogil:
        for i in range(n):
            dst[i] ^= src[i]
