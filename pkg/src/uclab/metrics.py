"""Exact rational statistics for explicit families.

Abundance of an element is the fraction of members containing it; the
average overlap density (AOD) is the expected abundance of a uniform
element of a uniform nonempty member, equivalently the expected value of
|A n B| / |A| over a uniform nonempty A and uniform B. Everything is a
`fractions.Fraction`; floats appear only in reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from . import setfam
from ._strfmt import int_str
from .errors import (
    BadN,
    DegenerateFamily,
    ElementOutOfRange,
    InternalInconsistency,
    NoNonemptySet,
    UnknownName,
)
from .setfam import Family, bit_positions

AOD_METHODS = ("gamma_weighted", "pairwise")


@dataclass(frozen=True)
class AbundanceProfile:
    """Abundance of every universe element, including uncovered ones (0)."""

    universe_n: int
    gamma: Mapping[int, Fraction]


@dataclass(frozen=True)
class MetricsReport:
    """Headline statistics of one family, plus structural flags."""

    n: int
    size: int
    aod: Fraction
    avg_abundance: Fraction
    max_abundance_element: int
    max_abundance: Fraction
    knill_ratio: Optional[float]
    is_union_closed: bool
    separates: bool


def _member_counts(f: Family) -> list[int]:
    """How many members contain each element, indexed 0-based."""
    counts = [0] * f.universe_n
    for member in f.members:
        for x in bit_positions(member.bits):
            counts[x] += 1
    return counts


def abundance(f: Family, x: int) -> Fraction:
    """Fraction of members containing element x (1-based)."""
    if not 1 <= x <= f.universe_n:
        raise ElementOutOfRange(f"element {x} outside universe [1, {f.universe_n}]")
    mask = 1 << (x - 1)
    hits = sum(1 for member in f.members if member.bits & mask)
    return Fraction(hits, f.size())


def abundance_profile(f: Family) -> AbundanceProfile:
    size = f.size()
    counts = _member_counts(f)
    return AbundanceProfile(
        f.universe_n, {x + 1: Fraction(c, size) for x, c in enumerate(counts)}
    )


def average_abundance(f: Family) -> Fraction:
    """Mean abundance over the whole declared universe.

    Uncovered elements count with abundance 0, so this equals the total of
    all member cardinalities divided by n * |F|.
    """
    total = sum(member.cardinality() for member in f.members)
    return Fraction(total, f.universe_n * f.size())


def aod(f: Family, method: str = "gamma_weighted") -> Fraction:
    """Average overlap density, exact.

    gamma_weighted averages the member-wise mean abundance; pairwise
    averages |A n B| / |A| with A uniform over nonempty members and B
    uniform over the whole family (empty set included). The two forms are
    equal for every family; tests and the CLI check that exactly.
    """
    if method not in AOD_METHODS:
        raise ValueError(f"unknown AOD method {method!r}")
    nonempty = [m.bits for m in f.members if m.bits]
    if not nonempty:
        raise NoNonemptySet("AOD needs at least one nonempty member")
    size = f.size()

    total = Fraction(0)
    if method == "gamma_weighted":
        counts = _member_counts(f)
        for bits in nonempty:
            weight = sum(counts[x] for x in bit_positions(bits))
            total += Fraction(weight, bits.bit_count())
    else:
        all_bits = [m.bits for m in f.members]
        for a in nonempty:
            overlap = sum((a & b).bit_count() for b in all_bits)
            total += Fraction(overlap, a.bit_count())
    return total / (len(nonempty) * size)


def max_abundance(f: Family) -> tuple[int, Fraction]:
    """Most abundant element (smallest label on ties) and its abundance."""
    counts = _member_counts(f)
    best = max(counts)
    element = counts.index(best) + 1
    return element, Fraction(best, f.size())


def knill_ratio(f: Family) -> float:
    """gamma_max * log2(|F|), the scale-free form of the max abundance."""
    if f.size() <= 1:
        raise DegenerateFamily("knill_ratio needs |F| >= 2")
    _, gmax = max_abundance(f)
    return float(gmax) * math.log2(f.size())


def reference_family(name: str, n: Optional[int] = None) -> Family:
    """Small named union-closed families used as calibration points.

    "triple" is {{}, {1}, {1,2,3}} on a universe of 3 (n is ignored).
    "chain" on [n] holds the empty set, the prefixes {1..i} for
    i <= floor(sqrt(n)), and [n] itself; its average abundance decays like
    1/sqrt(n).
    """
    if name == "triple":
        return Family.of(3, [], [1], [1, 2, 3])
    if name == "chain":
        if n is None or n < 2:
            raise BadN(f"chain needs n >= 2, got {n}")
        root = math.isqrt(n)
        bits = {0, (1 << n) - 1}
        bits.update((1 << i) - 1 for i in range(1, root + 1))
        return Family.from_bits(n, bits)
    raise UnknownName(f"no reference family named {name!r}")


def metrics_report(f: Family) -> MetricsReport:
    """Compute the full report; AOD is computed both ways and must agree."""
    aod_gamma = aod(f, "gamma_weighted")
    aod_pairs = aod(f, "pairwise")
    if aod_gamma != aod_pairs:
        raise InternalInconsistency(
            f"AOD forms disagree: gamma_weighted={aod_gamma} pairwise={aod_pairs}"
        )
    element, gmax = max_abundance(f)
    kn = knill_ratio(f) if f.size() >= 2 else None
    separates = True
    if f.universe_n >= 2:
        separates = setfam.separates_points(f).separates
    return MetricsReport(
        n=f.universe_n,
        size=f.size(),
        aod=aod_gamma,
        avg_abundance=average_abundance(f),
        max_abundance_element=element,
        max_abundance=gmax,
        knill_ratio=kn,
        is_union_closed=setfam.is_union_closed(f),
        separates=separates,
    )


def rational_json(q: Fraction) -> dict:
    """JSON shape for exact rationals; big integers as decimal strings."""
    return {"num": int_str(q.numerator), "den": int_str(q.denominator), "approx": float(q)}


def report_json(rep: MetricsReport) -> dict:
    return {
        "n": rep.n,
        "size": rep.size,
        "aod": rational_json(rep.aod),
        "avg_abundance": rational_json(rep.avg_abundance),
        "max_abundance": {
            "element": rep.max_abundance_element,
            "num": int_str(rep.max_abundance.numerator),
            "den": int_str(rep.max_abundance.denominator),
        },
        "knill_ratio": rep.knill_ratio,
        "is_union_closed": rep.is_union_closed,
        "separates": rep.separates,
    }
