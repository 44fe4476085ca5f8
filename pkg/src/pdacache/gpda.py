"""Generalized PDAs for shared-cache networks.

A generalized PDA has one column per user. Users attached to the same
cache get copies of that cache's PDA column, with the integers of the
``i``-th copy carrying superscript ``i`` (1-based).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from pdacache import kernels
from pdacache._textio import read_table, write_table
from pdacache.errors import (
    EmptyNetwork,
    HeaderMismatch,
    InconsistentGrouping,
    IntegerOutOfRange,
    ProfileLengthMismatch,
    SuperscriptOutOfRange,
)
from pdacache.pda import (
    STAR,
    PdaArray,
    ValidationResult,
    Violation,
    _check_dimensions,
    column_star_violations,
    pair_violations,
)


class Label(NamedTuple):
    s: int
    i: int

    def __str__(self):
        return f"{self.s}^{self.i}"


def _coerce_entry(x):
    if x is STAR or x is None or x == "*" or x == "★":
        return STAR
    if isinstance(x, str):
        return _parse_label(x)
    s, i = x
    return Label(int(s), int(i))


def _fmt(x):
    return "*" if x is STAR else str(x)


@dataclass(frozen=True)
class GeneralizedPdaArray:
    num_users_K: int
    num_rows_F: int
    stars_per_column_Z: int
    num_integers_S: int
    max_superscript_I: int
    grid: tuple

    def __post_init__(self):
        grid = tuple(tuple(_coerce_entry(x) for x in row) for row in self.grid)
        object.__setattr__(self, "grid", grid)
        _check_dimensions(self)
        S, I = self.num_integers_S, self.max_superscript_I
        for j, row in enumerate(grid):
            for k, x in enumerate(row):
                if x is STAR:
                    continue
                if not 0 <= x.s < S:
                    raise IntegerOutOfRange(f"entry {x} at ({j},{k}) outside [0,{S})")
                if not 1 <= x.i <= I:
                    raise SuperscriptOutOfRange(f"entry {x} at ({j},{k}) outside [1,{I}]")

    # the shared dimension check reads these names
    @property
    def num_rows(self):
        return self.num_rows_F

    @property
    def num_caches(self):
        return self.num_users_K

    @property
    def stars_per_column(self):
        return self.stars_per_column_Z

    @property
    def num_integers(self):
        return self.num_integers_S

    @property
    def params(self):
        """``(K, F, Z, S, I)``."""
        return (
            self.num_users_K,
            self.num_rows_F,
            self.stars_per_column_Z,
            self.num_integers_S,
            self.max_superscript_I,
        )

    @classmethod
    def from_rows(cls, rows, num_integers=None, max_superscript=None):
        grid = tuple(tuple(_coerce_entry(x) for x in row) for row in rows)
        F = len(grid)
        K = len(grid[0]) if F else 0
        Z = sum(1 for row in grid if row and row[0] is STAR)
        labels = [x for row in grid for x in row if x is not STAR]
        if num_integers is None:
            num_integers = max((x.s for x in labels), default=-1) + 1
        if max_superscript is None:
            max_superscript = max((x.i for x in labels), default=0)
        return cls(K, F, Z, num_integers, max_superscript, grid)

    def column(self, k):
        return tuple(row[k] for row in self.grid)

    def star_mask(self) -> np.ndarray:
        return np.array(
            [[x is STAR for x in row] for row in self.grid], dtype=np.uint8
        ).reshape(self.num_rows_F, self.num_users_K)

    def base_values(self) -> np.ndarray:
        """Integer of each cell with the superscript dropped; -1 for stars."""
        return np.array(
            [[-1 if x is STAR else x.s for x in row] for row in self.grid], dtype=np.intc
        ).reshape(self.num_rows_F, self.num_users_K)

    def cells_by_label(self) -> dict[Label, list[tuple[int, int]]]:
        cells: dict[Label, list[tuple[int, int]]] = {}
        for j, row in enumerate(self.grid):
            for k, x in enumerate(row):
                if x is not STAR:
                    cells.setdefault(x, []).append((j, k))
        return cells

    def labels(self) -> list[Label]:
        return sorted(self.cells_by_label())

    def with_entry(self, j, k, value) -> "GeneralizedPdaArray":
        grid = [list(r) for r in self.grid]
        grid[j][k] = value
        return GeneralizedPdaArray(*self.params, grid=tuple(map(tuple, grid)))

    def __str__(self):
        return "\n".join(" ".join(_fmt(x) for x in row) for row in self.grid)


@dataclass(frozen=True)
class AssociationProfile:
    """Number of users attached to each cache, in cache order."""

    counts: tuple

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if any(c < 0 for c in counts):
            raise ValueError(f"profile counts must be non-negative: {counts}")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def coerce(cls, profile) -> "AssociationProfile":
        return profile if isinstance(profile, cls) else cls(tuple(profile))

    @property
    def num_caches(self):
        return len(self.counts)

    @property
    def num_users(self):
        return sum(self.counts)

    def __len__(self):
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)


@dataclass(frozen=True)
class UserAssignment:
    """Ordered user groups, one per cache (possibly empty)."""

    groups: tuple

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(tuple(g) for g in self.groups))

    @property
    def profile(self) -> AssociationProfile:
        return AssociationProfile(tuple(len(g) for g in self.groups))

    def cache_of(self, user: int) -> int:
        for lam, g in enumerate(self.groups):
            if user in g:
                return lam
        raise KeyError(user)

    def as_partition(self) -> frozenset:
        return frozenset(frozenset(g) for g in self.groups if g)

    def nonempty(self) -> tuple:
        return tuple(g for g in self.groups if g)


def expand(pda: PdaArray, profile) -> tuple[GeneralizedPdaArray, UserAssignment]:
    """Replicate cache columns per the association profile.

    Column ``λ`` of ``pda`` is copied ``profile[λ]`` times; in the ``i``-th
    copy every integer ``s`` becomes ``s^i``. Users are numbered in column
    order, so cache 0's users come first.
    """
    profile = AssociationProfile.coerce(profile)
    if len(profile) != pda.num_caches:
        raise ProfileLengthMismatch(
            f"profile has {len(profile)} entries for {pda.num_caches} caches"
        )
    if profile.num_users == 0:
        raise EmptyNetwork("every cache has zero users")

    columns = []
    groups = []
    for lam, count in enumerate(profile.counts):
        col = pda.column(lam)
        start = len(columns)
        for i in range(1, count + 1):
            columns.append(tuple(x if x is STAR else Label(x, i) for x in col))
        groups.append(tuple(range(start, len(columns))))

    grid = tuple(zip(*columns))
    I = max(profile.counts) if pda.num_integers else 0
    g = GeneralizedPdaArray(
        len(columns), pda.num_rows, pda.stars_per_column, pda.num_integers, I, grid
    )
    return g, UserAssignment(tuple(groups))


def validate_gpda(g: GeneralizedPdaArray) -> ValidationResult:
    """Check conditions C1-C4, collecting every violation."""
    _check_dimensions(g)
    F, K = g.num_rows_F, g.num_users_K
    violations = column_star_violations(g.grid, F, K, g.stars_per_column_Z)

    cells = g.cells_by_label()
    present_s = {lab.s for lab in cells}
    present_i = {lab.i for lab in cells}
    for s in range(g.num_integers_S):
        if s not in present_s:
            violations.append(Violation("C2", (), f"integer {s} never appears"))
    for i in range(1, g.max_superscript_I + 1):
        if i not in present_i:
            violations.append(Violation("C2", (), f"superscript {i} never appears"))

    star = g.star_mask()
    violations.extend(pair_violations(g.grid, star, cells, _fmt))

    for j1, k1, j2, k2 in kernels.c4_violations(g.base_values(), star):
        violations.append(
            Violation(
                "C4",
                (j1, k1, j2, k2),
                f"({j1},{k1})={_fmt(g.grid[j1][k1])} and ({j1},{k2})={_fmt(g.grid[j1][k2])} "
                f"share an integer, ({j2},{k1}) is a star but ({j2},{k2})={_fmt(g.grid[j2][k2])}",
            )
        )
    return ValidationResult(tuple(violations))


def recover_association(g: GeneralizedPdaArray) -> UserAssignment:
    """Group users into caches from the array alone.

    Columns holding the same integer (any superscript) in some row belong to
    one cache. Columns with no integers at all are grouped by identical star
    pattern. Groups are ordered by their lowest column.
    """
    K = g.num_users_K
    parent = list(range(K))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row in g.grid:
        first: dict[int, int] = {}
        for k, x in enumerate(row):
            if x is STAR:
                continue
            if x.s in first:
                a, b = find(first[x.s]), find(k)
                if a != b:
                    parent[max(a, b)] = min(a, b)
            else:
                first[x.s] = k

    patterns = [tuple(x is STAR for x in g.column(k)) for k in range(K)]
    bare: dict[tuple, int] = {}
    for k in range(K):
        if all(patterns[k]):
            root = bare.setdefault(patterns[k], k)
            a, b = find(root), find(k)
            if a != b:
                parent[max(a, b)] = min(a, b)

    groups: dict[int, list[int]] = {}
    for k in range(K):
        groups.setdefault(find(k), []).append(k)
    for members in groups.values():
        ref = patterns[members[0]]
        for k in members[1:]:
            if patterns[k] != ref:
                raise InconsistentGrouping(
                    f"columns {members[0]} and {k} share an integer but differ in star pattern"
                )
    return UserAssignment(tuple(groups[r] for r in sorted(groups)))


# -- text format --------------------------------------------------------------

_MAGIC = "GPDA v1"
_KEYS = ("K", "F", "Z", "S", "I")
_LABEL_RE = re.compile(r"(\d+)\^(\d+)")


def _parse_label(tok):
    m = _LABEL_RE.fullmatch(tok)
    if m is None:
        raise ValueError(f"bad token {tok!r}; expected '*' or 's^i'")
    return Label(int(m.group(1)), int(m.group(2)))


def _parse_token(tok, header):
    if tok == "*":
        return STAR
    lab = _parse_label(tok)
    if lab.s >= header["S"]:
        raise HeaderMismatch(f"integer {lab.s} not below declared S={header['S']}")
    if not 1 <= lab.i <= header["I"]:
        raise HeaderMismatch(f"superscript {lab.i} outside declared [1,{header['I']}]")
    return lab


def read_gpda(data) -> GeneralizedPdaArray:
    header, rows = read_table(data, _MAGIC, _KEYS, _parse_token)
    return GeneralizedPdaArray(
        header["K"], header["F"], header["Z"], header["S"], header["I"], tuple(rows)
    )


def write_gpda(g: GeneralizedPdaArray) -> bytes:
    return write_table(_MAGIC, dict(zip(_KEYS, g.params)), g.grid, _fmt)


def load_gpda(path) -> GeneralizedPdaArray:
    with open(path, "rb") as fh:
        return read_gpda(fh.read())


def save_gpda(path, g: GeneralizedPdaArray) -> None:
    with open(path, "wb") as fh:
        fh.write(write_gpda(g))
