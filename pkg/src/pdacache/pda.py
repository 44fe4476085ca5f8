"""Placement delivery arrays: the array type, its validator, statistics and
the ``PDA v1`` text format.

Rows index subfiles, columns index caches. Everything is 0-based.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Union

import numpy as np

from pdacache import kernels
from pdacache._textio import read_table, write_table
from pdacache.errors import DimensionMismatch, HeaderMismatch, IntegerOutOfRange


class _Star:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "*"

    def __reduce__(self):
        return (_Star, ())


STAR = _Star()

PdaEntry = Union[int, _Star]


def is_star(entry) -> bool:
    return entry is STAR


def _coerce_entry(x):
    if x is STAR or x is None or x == "*" or x == "★":
        return STAR
    if isinstance(x, (bool, np.bool_)) or not isinstance(x, (int, np.integer)):
        raise TypeError(f"PDA entries must be STAR or int, got {x!r}")
    return int(x)


@dataclass(frozen=True)
class PdaArray:
    """An F x Λ array of ``STAR`` and integer entries.

    Shape and integer range are enforced on construction; conditions C1-C3
    are left to :func:`validate_pda` so broken arrays can still be inspected.
    """

    num_caches: int
    num_rows: int
    stars_per_column: int
    num_integers: int
    grid: tuple

    def __post_init__(self):
        grid = tuple(tuple(_coerce_entry(x) for x in row) for row in self.grid)
        object.__setattr__(self, "grid", grid)
        _check_dimensions(self)
        for j, row in enumerate(grid):
            for k, x in enumerate(row):
                if x is not STAR and not 0 <= x < self.num_integers:
                    raise IntegerOutOfRange(
                        f"entry {x} at ({j},{k}) outside [0,{self.num_integers})"
                    )

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], num_integers: int | None = None) -> "PdaArray":
        """Build from nested rows, inferring Λ, F, Z (from column 0) and S.

        ``"*"``, ``"★"`` and ``None`` are accepted as stars.
        """
        grid = tuple(tuple(_coerce_entry(x) for x in row) for row in rows)
        F = len(grid)
        K = len(grid[0]) if F else 0
        Z = sum(1 for row in grid if row and row[0] is STAR)
        if num_integers is None:
            values = [x for row in grid for x in row if x is not STAR]
            num_integers = max(values) + 1 if values else 0
        return cls(K, F, Z, num_integers, grid)

    @property
    def shape(self):
        return (self.num_rows, self.num_caches)

    @property
    def params(self):
        """``(Λ, F, Z, S)``."""
        return (self.num_caches, self.num_rows, self.stars_per_column, self.num_integers)

    def column(self, k):
        return tuple(row[k] for row in self.grid)

    def star_mask(self) -> np.ndarray:
        return np.array(
            [[x is STAR for x in row] for row in self.grid], dtype=np.uint8
        ).reshape(self.num_rows, self.num_caches)

    def cells_by_integer(self) -> dict[int, list[tuple[int, int]]]:
        cells: dict[int, list[tuple[int, int]]] = {}
        for j, row in enumerate(self.grid):
            for k, x in enumerate(row):
                if x is not STAR:
                    cells.setdefault(x, []).append((j, k))
        return cells

    def __str__(self):
        return "\n".join(" ".join(repr(x) if x is STAR else str(x) for x in row) for row in self.grid)


def _check_dimensions(arr):
    F, K = arr.num_rows, arr.num_caches
    if F < 1 or K < 1:
        raise DimensionMismatch(f"need at least one row and one column, got F={F}, K={K}")
    if len(arr.grid) != F:
        raise DimensionMismatch(f"declared F={F} but grid has {len(arr.grid)} rows")
    for j, row in enumerate(arr.grid):
        if len(row) != K:
            raise DimensionMismatch(f"declared K={K} but row {j} has {len(row)} entries")
    if not 0 <= arr.stars_per_column <= F:
        raise DimensionMismatch(f"Z={arr.stars_per_column} outside [0,{F}]")
    if arr.num_integers < 0:
        raise DimensionMismatch(f"S={arr.num_integers} is negative")


# -- validation ---------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    condition: str
    cells: tuple
    detail: str
    subarray: tuple | None = None

    def __str__(self):
        return f"{self.condition}: {self.detail}"


@dataclass(frozen=True)
class ValidationResult:
    violations: tuple = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def conditions(self) -> set[str]:
        return {v.condition for v in self.violations}

    def __str__(self):
        if self.ok:
            return "OK"
        return "\n".join(str(v) for v in self.violations)


def _fmt(x):
    return "*" if x is STAR else str(x)


def column_star_violations(grid, num_rows, num_cols, Z):
    out = []
    for k in range(num_cols):
        stars = tuple((j, k) for j in range(num_rows) if grid[j][k] is STAR)
        if len(stars) != Z:
            out.append(
                Violation("C1", stars, f"column {k} has {len(stars)} stars, expected Z={Z}")
            )
    return out


def pair_violations(grid, star_mask, cells_by_label, fmt=_fmt):
    """C3 check over ``cells_by_label`` (label -> list of (row, col))."""
    labels = list(cells_by_label)
    rows, cols, offsets = [], [], [0]
    for lab in labels:
        for j, k in cells_by_label[lab]:
            rows.append(j)
            cols.append(k)
        offsets.append(len(rows))
    out = []
    for a, b, kind in kernels.label_pair_violations(rows, cols, star_mask, offsets):
        j1, k1, j2, k2 = rows[a], cols[a], rows[b], cols[b]
        lab = grid[j1][k1]
        if kind == 0:
            where = "row" if j1 == j2 else "column"
            out.append(
                Violation(
                    "C3(a)",
                    ((j1, k1), (j2, k2)),
                    f"{fmt(lab)} at ({j1},{k1}) and ({j2},{k2}) share a {where}",
                )
            )
        else:
            sub = ((grid[j1][k1], grid[j1][k2]), (grid[j2][k1], grid[j2][k2]))
            text = "[" + "; ".join(" ".join(fmt(x) for x in r) for r in sub) + "]"
            out.append(
                Violation(
                    "C3(b)",
                    ((j1, k1), (j2, k2)),
                    f"{fmt(lab)} at ({j1},{k1}) and ({j2},{k2}): cross cells not both stars {text}",
                    subarray=sub,
                )
            )
    return out


def validate_pda(array: PdaArray) -> ValidationResult:
    """Check conditions C1-C3, collecting every violation."""
    _check_dimensions(array)
    F, K, Z, S = array.num_rows, array.num_caches, array.stars_per_column, array.num_integers
    for j, row in enumerate(array.grid):
        for k, x in enumerate(row):
            if x is not STAR and not 0 <= x < S:
                raise IntegerOutOfRange(f"entry {x} at ({j},{k}) outside [0,{S})")

    violations = column_star_violations(array.grid, F, K, Z)
    cells = array.cells_by_integer()
    for s in range(S):
        if s not in cells:
            violations.append(Violation("C2", (), f"integer {s} never appears"))
    violations.extend(pair_violations(array.grid, array.star_mask(), cells))
    return ValidationResult(tuple(violations))


# -- statistics ---------------------------------------------------------------


@dataclass(frozen=True)
class PdaStats:
    occurrence_count_per_integer: dict
    is_regular: bool
    regularity_g: int | None


def pda_stats(array: PdaArray) -> PdaStats:
    """Multiplicity of each integer and whether they are all equal.

    An array with no integers is reported as not regular.
    """
    counts = Counter(x for row in array.grid for x in row if x is not STAR)
    occ = {s: counts[s] for s in sorted(counts)}
    distinct = set(occ.values())
    if len(distinct) == 1:
        return PdaStats(occ, True, distinct.pop())
    return PdaStats(occ, False, None)


# -- text format --------------------------------------------------------------

_MAGIC = "PDA v1"
_KEYS = ("K", "F", "Z", "S")


def _parse_token(tok, header):
    if tok == "*":
        return STAR
    if not tok.isdigit():
        raise ValueError(f"bad token {tok!r}; expected '*' or a decimal integer")
    value = int(tok)
    if value >= header["S"]:
        raise HeaderMismatch(f"integer {value} not below declared S={header['S']}")
    return value


def read_pda(data) -> PdaArray:
    """Parse ``PDA v1`` text (``bytes`` or ``str``)."""
    header, rows = read_table(data, _MAGIC, _KEYS, _parse_token)
    return PdaArray(header["K"], header["F"], header["Z"], header["S"], tuple(rows))


def write_pda(array: PdaArray) -> bytes:
    header = dict(zip(_KEYS, array.params))
    return write_table(_MAGIC, header, array.grid, _fmt)


def load_pda(path) -> PdaArray:
    with open(path, "rb") as fh:
        return read_pda(fh.read())


def save_pda(path, array: PdaArray) -> None:
    with open(path, "wb") as fh:
        fh.write(write_pda(array))
