"""Exact delivery loads and scheme comparisons."""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from pdacache.constructions import build_mn_pda
from pdacache.errors import InvalidT, NonIntegralT, ProfileLengthMismatch, RatioMismatch
from pdacache.gpda import AssociationProfile, GeneralizedPdaArray
from pdacache.pda import PdaArray


@dataclass(frozen=True)
class LoadReport:
    """Worst-case load of one scheme as ``transmissions / F``.

    ``coding_gains`` lists how many users each transmission serves, in
    delivery order (integer ascending, then superscript ascending).
    """

    scheme: str
    sub_packetization_F: int
    num_integers_S: int
    transmissions: int
    coding_gains: tuple

    @property
    def load(self) -> Fraction:
        return Fraction(self.transmissions, self.sub_packetization_F)

    @property
    def load_num(self) -> int:
        return self.transmissions

    @property
    def load_den(self) -> int:
        return self.sub_packetization_F

    def gain_histogram(self) -> Counter:
        return Counter(self.coding_gains)

    def decimal(self) -> str:
        return f"{float(self.load):.4g}"


def load_from_gpda(g: GeneralizedPdaArray, scheme: str = "ours") -> LoadReport:
    cells = g.cells_by_label()
    top: dict[int, int] = {}
    for lab in cells:
        top[lab.s] = max(top.get(lab.s, 0), lab.i)
    gains = tuple(len(cells[lab]) for lab in sorted(cells))
    return LoadReport(scheme, g.num_rows_F, g.num_integers_S, sum(top.values()), gains)


def _profile_for(pda, profile):
    profile = AssociationProfile.coerce(profile)
    if len(profile) != pda.num_caches:
        raise ProfileLengthMismatch(
            f"profile has {len(profile)} entries for {pda.num_caches} caches"
        )
    return profile.counts


def load_shortcut(pda: PdaArray, profile, scheme: str = "ours") -> LoadReport:
    """Load of the expanded scheme computed straight from the PDA.

    Integer ``s`` needs one transmission per replica of the busiest cache
    carrying it; replica ``i`` serves every carrying cache with at least
    ``i`` users.
    """
    counts = _profile_for(pda, profile)
    total = 0
    gains = []
    for s, cells in sorted(pda.cells_by_integer().items()):
        loads = [counts[k] for _, k in cells]
        top = max(loads)
        total += top
        gains.extend(sum(1 for c in loads if c >= i) for i in range(1, top + 1))
    return LoadReport(scheme, pda.num_rows, pda.num_integers, total, tuple(gains))


def uniform_load(pda: PdaArray, users_per_cache: int, scheme: str = "ours") -> LoadReport:
    """Closed form ``K*S / (Λ*F)`` for the same number of users at every cache."""
    if users_per_cache < 1:
        raise ValueError(f"users_per_cache={users_per_cache} must be positive")
    lam, F, S = pda.num_caches, pda.num_rows, pda.num_integers
    K = users_per_cache * lam
    load = Fraction(K * S, lam * F)
    numerator = load * F
    assert numerator.denominator == 1
    mult = pda.cells_by_integer()
    gains = tuple(len(mult[s]) for s in sorted(mult) for _ in range(users_per_cache))
    return LoadReport(scheme, F, S, int(numerator), gains)


def _t_from_ratio(num_caches, M_over_N):
    t = num_caches * Fraction(M_over_N)
    if t.denominator != 1:
        raise NonIntegralT(f"Λ*M/N = {t} is not an integer")
    t = int(t)
    if not 0 <= t <= num_caches:
        raise InvalidT(f"Λ*M/N = {t} outside [0,{num_caches}]")
    return t


def pue_baseline(num_caches: int, M_over_N, profile) -> LoadReport:
    """The optimal uncoded-placement scheme, as the MN PDA on Λ caches
    expanded by the profile."""
    t = _t_from_ratio(num_caches, M_over_N)
    return load_shortcut(build_mn_pda(num_caches, t), profile, scheme="PUE")


@dataclass(frozen=True)
class Comparison:
    rows: tuple

    def render_table(self) -> str:
        header = ("scheme", "F", "S", "load", "decimal")
        body = [
            (r.scheme, str(r.sub_packetization_F), str(r.num_integers_S),
             f"{r.load_num}/{r.load_den}", r.decimal())
            for r in self.rows
        ]
        widths = [max(len(x[i]) for x in [header, *body]) for i in range(len(header))]
        lines = ["  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip()
                 for line in [header, *body]]
        return "\n".join(lines) + "\n"

    def render_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["scheme", "F", "S", "load_num", "load_den", "load_decimal"])
        for r in self.rows:
            w.writerow([r.scheme, r.sub_packetization_F, r.num_integers_S,
                        r.load_num, r.load_den, r.decimal()])
        return buf.getvalue()


def compare(pda: PdaArray, profile, M_over_N=None) -> Comparison:
    """Our scheme from ``pda`` next to the PUE baseline at the same memory."""
    ratio = Fraction(pda.stars_per_column, pda.num_rows)
    if M_over_N is not None and Fraction(M_over_N) != ratio:
        raise RatioMismatch(f"PDA has Z/F = {ratio}, requested M/N = {Fraction(M_over_N)}")
    ours = load_shortcut(pda, profile, scheme="ours")
    pue = pue_baseline(pda.num_caches, ratio, profile)
    return Comparison((ours, pue))
