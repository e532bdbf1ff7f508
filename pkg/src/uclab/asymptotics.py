"""Parameter planning and the scaling sweep for block families.

For a target universe size the planner picks m near (n / log2 n)^(1/3),
the smallest s with m * 2^-s <= 1/4, and k as large as fits. Along a
sweep, AOD * log2|F| / log2(log2|F|) should sit in a bounded band; the
band check is the numerical rendering of the Theta-scaling claim, since
no explicit constants exist to compare against.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from ._strfmt import float12, int_str
from .construction import BlockParams, build_block_family, count_table, exact_metrics
from .errors import BadM, Infeasible, TooFewRecords

log = logging.getLogger(__name__)

SMALLEST_FEASIBLE_TARGET = 10  # m=2 -> s=3 -> k>=5

CSV_HEADER = (
    "n_target,n,k,m,s,log2_N,aod_num,aod_den,aod_approx,"
    "avg_num,avg_den,avg_approx,theta_aod,theta_avg"
)


@dataclass(frozen=True)
class SweepRecord:
    n_target: int
    n: int
    k: int
    m: int
    s: int
    log2_size: float  # log2 |F| from the exact big-integer count
    aod: Fraction
    avg_abundance: Fraction
    theta_aod: float  # aod * log2|F| / log2(log2|F|)
    theta_avg: float


@dataclass(frozen=True)
class BandReport:
    quantity: str
    min_ratio: float
    max_ratio: float
    spread: float
    band_ok: bool


def optimal_s(m: int) -> int:
    """Smallest s with m * 2^-s <= 1/4, i.e. ceil(log2 m) + 2."""
    if m < 2:
        raise BadM(f"need m >= 2, got {m}")
    return (m - 1).bit_length() + 2


def plan_params(n_target: int) -> BlockParams:
    """Pick (k, m, s) for a universe of at most n_target elements.

    m starts at the cube-root rule rounded to nearest and is decremented
    until k = floor(n_target / m) satisfies k >= s + 2. The returned
    universe n = k * m may be slightly below n_target.
    """
    if n_target >= 2:
        guess = max(2, round((n_target / math.log2(n_target)) ** (1 / 3)))
        for m in range(guess, 1, -1):
            s = optimal_s(m)
            k = n_target // m
            if k >= s + 2:
                return BlockParams(k=k, m=m, s=s)
    raise Infeasible(
        f"no valid (k, m, s) fits n_target={n_target}; "
        f"smallest feasible n_target is {SMALLEST_FEASIBLE_TARGET}"
    )


def sweep_row(n_target: int) -> SweepRecord:
    """Plan, build, and exactly analyze one target (never materializes)."""
    params = plan_params(n_target)
    bf = build_block_family(params)
    ct = count_table(bf)
    bm = exact_metrics(bf)
    log2_size = math.log2(ct.total)
    if log2_size <= 1:
        raise ValueError("theta ratios need log2 |F| > 1")
    denom = math.log2(log2_size)
    return SweepRecord(
        n_target=n_target,
        n=params.n,
        k=params.k,
        m=params.m,
        s=params.s,
        log2_size=log2_size,
        aod=bm.aod,
        avg_abundance=bm.avg_abundance,
        theta_aod=float(bm.aod) * log2_size / denom,
        theta_avg=float(bm.avg_abundance) * log2_size / denom,
    )


def _row_or_none(n_target: int) -> Optional[SweepRecord]:
    try:
        return sweep_row(n_target)
    except Infeasible:
        return None


def sweep(n_targets: Iterable[int], workers: int = 1) -> list[SweepRecord]:
    """One record per feasible target, in input order.

    Infeasible targets are logged and skipped. Rows are independent pure
    computations, so workers > 1 changes nothing but wall time.
    """
    targets = list(n_targets)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row_or_none, targets))
    else:
        rows = [_row_or_none(t) for t in targets]
    records = []
    for target, row in zip(targets, rows):
        if row is None:
            log.warning("skipping infeasible n_target=%d", target)
        else:
            records.append(row)
    return records


def theta_band(
    records: Sequence[SweepRecord], quantity: str = "aod", spread: float = 8.0
) -> BandReport:
    """Bounded-spread check of the theta ratios across a sweep."""
    if len(records) < 3:
        raise TooFewRecords(f"need at least 3 sweep records, got {len(records)}")
    for r in records:
        if not r.log2_size > 2:
            raise ValueError("theta band needs log2 |F| > 2 on every record")
    if quantity == "aod":
        ratios = [r.theta_aod for r in records]
    elif quantity == "avg_abundance":
        ratios = [r.theta_avg for r in records]
    else:
        raise ValueError(f"unknown quantity {quantity!r}")
    lo, hi = min(ratios), max(ratios)
    return BandReport(
        quantity=quantity, min_ratio=lo, max_ratio=hi, spread=spread,
        band_ok=hi <= spread * lo,
    )


def sweep_csv(records: Sequence[SweepRecord]) -> str:
    """Deterministic CSV: exact rationals as decimal strings, floats .12g."""
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            ",".join(
                (
                    str(r.n_target),
                    str(r.n),
                    str(r.k),
                    str(r.m),
                    str(r.s),
                    float12(r.log2_size),
                    int_str(r.aod.numerator),
                    int_str(r.aod.denominator),
                    float12(float(r.aod)),
                    int_str(r.avg_abundance.numerator),
                    int_str(r.avg_abundance.denominator),
                    float12(float(r.avg_abundance)),
                    float12(r.theta_aod),
                    float12(r.theta_avg),
                )
            )
        )
    return "\n".join(lines) + "\n"
