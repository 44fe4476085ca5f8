"""PDA constructions: the MN array, the worked exemplars, parameter
arithmetic for the known PDA families and a tiny exhaustive searcher used as
a test oracle."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from pdacache.errors import InvalidParameter, InvalidT, SearchSpaceTooLarge, UnknownExemplar
from pdacache.pda import STAR, PdaArray


@dataclass(frozen=True)
class MnParameters:
    num_users_K: int
    t: int

    def __post_init__(self):
        if self.num_users_K < 1:
            raise InvalidT(f"K={self.num_users_K} must be positive")
        if not 0 <= self.t <= self.num_users_K:
            raise InvalidT(f"t={self.t} outside [0,{self.num_users_K}]")

    @property
    def F(self) -> int:
        return comb(self.num_users_K, self.t)

    @property
    def Z(self) -> int:
        return comb(self.num_users_K - 1, self.t - 1) if self.t > 0 else 0

    @property
    def S(self) -> int:
        return comb(self.num_users_K, self.t + 1)


def build_mn_pda(K: int, t: int) -> PdaArray:
    """Rows are t-subsets of range(K) in lexicographic order; cell (T, k) is
    a star when k is in T, else the lexicographic rank of T | {k} among
    the (t+1)-subsets."""
    params = MnParameters(K, t)
    rank = {c: r for r, c in enumerate(itertools.combinations(range(K), t + 1))}
    grid = []
    for T in itertools.combinations(range(K), t):
        members = set(T)
        grid.append(
            tuple(
                STAR if k in members else rank[tuple(sorted(members | {k}))]
                for k in range(K)
            )
        )
    return PdaArray(K, params.F, params.Z, params.S, tuple(grid))


_ = STAR
_EXEMPLARS = {
    # (4,2,1,2) PDA used for the shared-cache example with profile (3,2,2,1)
    "ex1": ((_, 1, _, 0), (0, _, 1, _)),
    # MN PDA for K=4, t=2, used for the PUE recovery example
    "pue_example": (
        (_, _, 0, 1),
        (_, 0, _, 2),
        (_, 1, 2, _),
        (0, _, _, 3),
        (1, _, 3, _),
        (2, 3, _, _),
    ),
}
del _


def exemplar_names():
    return sorted(_EXEMPLARS)


def paper_exemplar(name: str) -> PdaArray:
    try:
        rows = _EXEMPLARS[name]
    except KeyError:
        raise UnknownExemplar(
            f"unknown exemplar {name!r}; choose from {', '.join(exemplar_names())}"
        ) from None
    return PdaArray.from_rows(rows)


# -- known families ----------------------------------------------------------


@dataclass(frozen=True)
class TableOneEntry:
    scheme_id: str
    parameters: dict = field(compare=False)
    K: int
    M_over_N: Fraction
    F: int
    S: int


def _need(params, name, lo=None, hi=None):
    try:
        v = params[name]
    except KeyError:
        raise InvalidParameter(f"missing parameter {name!r}") from None
    if not isinstance(v, int) or isinstance(v, bool):
        raise InvalidParameter(f"{name} must be an integer, got {v!r}")
    if lo is not None and v < lo:
        raise InvalidParameter(f"{name}={v} violates {name} >= {lo}")
    if hi is not None and v > hi:
        raise InvalidParameter(f"{name}={v} violates {name} <= {hi}")
    return v


def table_one_parameters(scheme_id: str, **params) -> TableOneEntry:
    """Derived (K, M/N, F, S) for a known PDA family.

    ``scheme_id`` is one of ``MN`` (K, t), ``YCT-A`` (q, m; M/N = 1/q),
    ``YCT-B`` (q, m; M/N = (q-1)/q) or ``PDA2`` (q, z, m).
    """
    if scheme_id == "MN":
        K = _need(params, "K", lo=1)
        t = _need(params, "t", lo=0, hi=K)
        return TableOneEntry(scheme_id, params, K, Fraction(t, K), comb(K, t), comb(K, t + 1))
    if scheme_id in ("YCT-A", "YCT-B", "PDA2"):
        q = _need(params, "q", lo=2)
        m = _need(params, "m", lo=1)
        K = q * (m + 1)
        if scheme_id == "YCT-A":
            return TableOneEntry(scheme_id, params, K, Fraction(1, q), q**m, q**m * (q - 1))
        if scheme_id == "YCT-B":
            return TableOneEntry(scheme_id, params, K, Fraction(q - 1, q), (q - 1) * q**m, q**m)
        z = _need(params, "z", lo=1, hi=q - 1)
        F = ((q - 1) // (q - z)) * q**m
        return TableOneEntry(scheme_id, params, K, Fraction(z, q), F, (q - z) * q**m)
    raise InvalidParameter(f"unknown scheme {scheme_id!r}")


# -- exhaustive search --------------------------------------------------------

SEARCH_CELL_CAP = 16


def brute_force_search(K: int, F: int, Z: int, S: int, limit: int | None = None) -> list[PdaArray]:
    """Enumerate valid (K, F, Z, S) PDAs, at most ``limit`` of them.

    Cells are filled column by column. Integer labels are canonical: a new
    label is always the smallest unused one, so arrays differing only by a
    relabelling are produced once.
    """
    if K < 1 or F < 1:
        raise InvalidParameter(f"K={K} and F={F} must be positive")
    if K * F > SEARCH_CELL_CAP:
        raise SearchSpaceTooLarge(f"K*F={K * F} exceeds the cap of {SEARCH_CELL_CAP}")
    if not 0 <= Z <= F or S < 0:
        return []
    total_ints = K * (F - Z)
    if S > total_ints or (S == 0) != (total_ints == 0):
        return []

    grid = [[None] * K for _ in range(F)]
    stars = [0] * K
    forced = [[0] * K for _ in range(F)]
    where: list[list[tuple[int, int]]] = [[] for _ in range(S)]
    found: list[PdaArray] = []
    n = K * F

    def emit():
        found.append(PdaArray(K, F, Z, S, tuple(tuple(r) for r in grid)))
        return limit is not None and len(found) >= limit

    def rec(pos, used, placed):
        if pos == n:
            return emit() if used == S else False
        k, j = divmod(pos, F)
        need = Z - stars[k]
        if need > 0:
            grid[j][k] = STAR
            stars[k] += 1
            done = rec(pos + 1, used, placed)
            stars[k] -= 1
            grid[j][k] = None
            if done:
                return True
        if F - j - 1 < need or forced[j][k]:
            return False
        left = total_ints - placed - 1
        for v in range(min(used + 1, S)):
            new_used = max(used, v + 1)
            if S - new_used > left:
                continue
            pending = []
            ok = True
            for j2, k2 in where[v]:
                if j2 == j or k2 == k or grid[j][k2] is not STAR:
                    ok = False
                    break
                if j2 < j:
                    if grid[j2][k] is not STAR:
                        ok = False
                        break
                else:
                    pending.append(j2)
            if not ok:
                continue
            grid[j][k] = v
            where[v].append((j, k))
            for j2 in pending:
                forced[j2][k] += 1
            done = rec(pos + 1, new_used, placed + 1)
            for j2 in pending:
                forced[j2][k] -= 1
            where[v].pop()
            grid[j][k] = None
            if done:
                return True
        return False

    rec(0, 0, 0)
    return found
