"""Pure-Python kernels. Same signatures and results as ``_speedups``."""


def label_pair_violations(rows, cols, star, offsets):
    """Pairwise C3 check inside each group of equally-labelled cells.

    ``rows``/``cols`` hold cell coordinates grouped by label, group ``g``
    spanning ``offsets[g]:offsets[g + 1]``. ``star`` is an F x K 0/1 array.
    Returns ``(a, b, kind)`` triples of cell positions with ``kind`` 0 for a
    shared row or column and 1 for a non-star cross cell.
    """
    rows = rows.tolist()
    cols = cols.tolist()
    star = star.tolist()
    offsets = offsets.tolist()
    out = []
    for g in range(len(offsets) - 1):
        lo, hi = offsets[g], offsets[g + 1]
        for a in range(lo, hi):
            ja, ka = rows[a], cols[a]
            for b in range(a + 1, hi):
                jb, kb = rows[b], cols[b]
                if ja == jb or ka == kb:
                    out.append((a, b, 0))
                elif not (star[ja][kb] and star[jb][ka]):
                    out.append((a, b, 1))
    return out


def c4_violations(base, star):
    """Quadruples ``(j1, k1, j2, k2)`` breaking the shared-star rule.

    ``base`` carries the integer of each cell with superscripts dropped and
    -1 for stars.
    """
    base = base.tolist()
    star = star.tolist()
    F = len(base)
    K = len(base[0]) if F else 0
    out = []
    for j1 in range(F):
        row = base[j1]
        for k1 in range(K):
            s = row[k1]
            if s < 0:
                continue
            for k2 in range(K):
                if k2 == k1 or row[k2] != s:
                    continue
                for j2 in range(F):
                    if star[j2][k1] and not star[j2][k2]:
                        out.append((j1, k1, j2, k2))
    return out


def xor_into(dst, src):
    """In-place ``dst ^= src`` over equal-length byte buffers."""
    n = len(dst)
    if len(src) != n:
        raise ValueError(f"length mismatch: {n} != {len(src)}")
    x = int.from_bytes(dst, "little") ^ int.from_bytes(src, "little")
    dst[:] = x.to_bytes(n, "little")
