"""Placement, multicast delivery and per-user decoding on real bytes."""

from __future__ import annotations

import os
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from pdacache import kernels
from pdacache.errors import (
    DemandLengthMismatch,
    MissingTransmission,
    SubfileLengthMismatch,
    UndecipherableTerm,
)
from pdacache.gpda import GeneralizedPdaArray, Label, UserAssignment
from pdacache.pda import STAR, PdaArray


@dataclass(frozen=True)
class PlacementMap:
    """Row indices cached by each cache (every file's subfile at those rows)."""

    stored_rows: tuple

    def __getitem__(self, cache):
        return self.stored_rows[cache]

    def __len__(self):
        return len(self.stored_rows)


def build_placement(pda: PdaArray) -> PlacementMap:
    return PlacementMap(
        tuple(
            tuple(j for j in range(pda.num_rows) if pda.grid[j][lam] is STAR)
            for lam in range(pda.num_caches)
        )
    )


@dataclass(frozen=True)
class DemandVector:
    d: tuple
    num_files: int | None = None

    def __post_init__(self):
        d = tuple(int(x) for x in self.d)
        object.__setattr__(self, "d", d)
        if not d:
            raise DemandLengthMismatch("empty demand vector")
        for k, n in enumerate(d):
            if n < 0 or (self.num_files is not None and n >= self.num_files):
                raise ValueError(f"user {k} demands file {n}, outside [0,{self.num_files})")

    @classmethod
    def coerce(cls, d) -> "DemandVector":
        return d if isinstance(d, cls) else cls(tuple(d))

    def __len__(self):
        return len(self.d)

    def __getitem__(self, k):
        return self.d[k]

    def __iter__(self):
        return iter(self.d)


class Transmission(NamedTuple):
    label: Label
    terms: tuple  # ((user, row), ...) sorted by user


@dataclass(frozen=True)
class TransmissionPlan:
    transmissions: tuple
    num_rows_F: int
    num_users_K: int

    def __len__(self):
        return len(self.transmissions)

    def __iter__(self):
        return iter(self.transmissions)

    def by_label(self) -> dict:
        return {t.label: t.terms for t in self.transmissions}

    @cached_property
    def _term_index(self):
        index = {}
        for pos, t in enumerate(self.transmissions):
            for term in t.terms:
                index[term] = pos
        return index

    def term_index(self) -> dict:
        """Map each ``(user, row)`` to the position of the transmission serving it."""
        return self._term_index


def build_transmission_plan(g: GeneralizedPdaArray, d) -> TransmissionPlan:
    """One XOR per distinct label ``s^i``, ordered by ``s`` then ``i``."""
    d = DemandVector.coerce(d)
    if len(d) != g.num_users_K:
        raise DemandLengthMismatch(f"{len(d)} demands for {g.num_users_K} users")
    cells = g.cells_by_label()
    transmissions = tuple(
        Transmission(lab, tuple(sorted((k, j) for j, k in cells[lab])))
        for lab in sorted(cells)
    )
    return TransmissionPlan(transmissions, g.num_rows_F, g.num_users_K)


@dataclass(frozen=True)
class FileLibrary:
    """N files split into F equal subfiles.

    Files are zero-padded to a common length divisible by F; the original
    lengths are kept so decoding can trim the padding off again.
    """

    data: tuple
    num_rows_F: int
    lengths: tuple = field(default=())

    def __post_init__(self):
        if not self.data:
            raise ValueError("library needs at least one file")
        if self.num_rows_F < 1:
            raise ValueError(f"F={self.num_rows_F} must be positive")
        if not self.lengths:
            object.__setattr__(self, "lengths", tuple(len(f) for f in self.data))
        if any(n == 0 for n in self.lengths):
            raise ValueError("zero-length files are not supported")
        size = max(len(f) for f in self.data)
        size += -size % self.num_rows_F
        padded = tuple(bytes(f) + bytes(size - len(f)) for f in self.data)
        object.__setattr__(self, "data", padded)

    @classmethod
    def random(cls, num_files: int, size: int, F: int, seed: int = 0) -> "FileLibrary":
        rng = np.random.default_rng(seed)
        return cls(tuple(rng.bytes(size) for _ in range(num_files)), F)

    @classmethod
    def from_directory(cls, path, F: int) -> "FileLibrary":
        names = sorted(n for n in os.listdir(path) if os.path.isfile(os.path.join(path, n)))
        files = []
        for name in names:
            with open(os.path.join(path, name), "rb") as fh:
                files.append(fh.read())
        return cls(tuple(files), F)

    @property
    def num_files(self):
        return len(self.data)

    @property
    def subfile_size(self):
        return len(self.data[0]) // self.num_rows_F

    def subfile(self, n: int, j: int) -> bytes:
        size = self.subfile_size
        return self.data[n][j * size:(j + 1) * size]

    def original(self, n: int) -> bytes:
        return self.data[n][: self.lengths[n]]


def encode(plan: TransmissionPlan, lib: FileLibrary, d) -> list[bytes]:
    """XOR the demanded subfiles of every transmission."""
    d = DemandVector.coerce(d)
    if lib.num_rows_F != plan.num_rows_F:
        raise SubfileLengthMismatch(
            f"library split into {lib.num_rows_F} subfiles, plan expects {plan.num_rows_F}"
        )
    if len(d) != plan.num_users_K:
        raise DemandLengthMismatch(f"{len(d)} demands for {plan.num_users_K} users")
    payloads = []
    for t in plan:
        (k, j), *rest = t.terms
        buf = bytearray(lib.subfile(d[k], j))
        for k2, j2 in rest:
            kernels.xor_into(buf, lib.subfile(d[k2], j2))
        payloads.append(bytes(buf))
    return payloads


class CacheContents(Mapping):
    """Read-only ``{(file, row): subfile}`` view of one cache.

    Holds every file's subfiles at ``rows``; slices are cut on access.
    """

    def __init__(self, lib: FileLibrary, rows: Sequence[int]):
        self._lib = lib
        self.rows = frozenset(rows)

    def __getitem__(self, key):
        n, j = key
        if j not in self.rows or not 0 <= n < self._lib.num_files:
            raise KeyError(key)
        return self._lib.subfile(n, j)

    def __iter__(self):
        return ((n, j) for n in range(self._lib.num_files) for j in sorted(self.rows))

    def __len__(self):
        return self._lib.num_files * len(self.rows)


def cache_contents(lib: FileLibrary, rows: Sequence[int]) -> CacheContents:
    return CacheContents(lib, rows)


def decode(k, cache, payloads, plan, g, d, length=None) -> bytes:
    """Rebuild user ``k``'s demanded file from its cache and the payloads.

    Each missing row is served by exactly one transmission; the user XORs out
    the other terms, which its cache holds by the clique structure.
    """
    d = DemandVector.coerce(d)
    index = plan.term_index()
    want = d[k]
    parts = []
    for j in range(g.num_rows_F):
        if g.grid[j][k] is STAR:
            try:
                parts.append(cache[(want, j)])
            except KeyError:
                raise UndecipherableTerm(f"user {k} lacks cached subfile ({want},{j})") from None
            continue
        pos = index.get((k, j))
        if pos is None:
            raise MissingTransmission(f"no transmission carries row {j} for user {k}")
        buf = bytearray(payloads[pos])
        for k2, j2 in plan.transmissions[pos].terms:
            if (k2, j2) == (k, j):
                continue
            try:
                side = cache[(d[k2], j2)]
            except KeyError:
                raise UndecipherableTerm(
                    f"user {k} cannot cancel term (user {k2}, row {j2}) of "
                    f"{plan.transmissions[pos].label}"
                ) from None
            kernels.xor_into(buf, side)
        parts.append(bytes(buf))
    out = b"".join(parts)
    return out if length is None else out[:length]


@dataclass
class SimulationResult:
    plan: TransmissionPlan
    payloads: list
    decoded: list
    correct: list

    @property
    def all_ok(self) -> bool:
        return all(self.correct)

    @property
    def transmitted_bytes(self) -> int:
        return sum(len(p) for p in self.payloads)


def simulate(
    g: GeneralizedPdaArray,
    d,
    lib: FileLibrary,
    assignment: UserAssignment | None = None,
    placement: PlacementMap | None = None,
) -> SimulationResult:
    """Run delivery and decode at every user, checking against the library.

    Each user's cache holds the star rows of its own column, or, when both
    ``assignment`` and ``placement`` are given, the rows its cache stores.
    """
    d = DemandVector.coerce(d)
    plan = build_transmission_plan(g, d)
    payloads = encode(plan, lib, d)
    decoded, correct = [], []
    for k in range(g.num_users_K):
        if assignment is not None and placement is not None:
            rows = placement[assignment.cache_of(k)]
        else:
            rows = [j for j in range(g.num_rows_F) if g.grid[j][k] is STAR]
        out = decode(k, cache_contents(lib, rows), payloads, plan, g, d, lib.lengths[d[k]])
        decoded.append(out)
        correct.append(out == lib.original(d[k]))
    return SimulationResult(plan, payloads, decoded, correct)
