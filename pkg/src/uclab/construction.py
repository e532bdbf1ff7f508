"""Block-structured union-closed families and their exact analysis.

The universe [n], n = k*m, is partitioned into m blocks of k elements;
each block carries an s-element tag set T_i (s <= k - 2), and the family
is generated under union by all sets B_i u {j} with j in the union T of
the tags. Every member is a union of at least one full block plus any
subset of the tags of the remaining blocks, which makes counting and all
density statistics polynomial in m and s, with no enumeration:

    members with exactly j blocks:  C(m, j) * 2^((m - j) * s)

The structured representation is validated against the union-closure
oracle on a small grid by the test suite before anything trusts it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import CapExceeded, InvalidParams
from .setfam import DEFAULT_CAP, Family, SetBits, bit_positions


@dataclass(frozen=True, slots=True)
class BlockParams:
    """(k, m, s): block size, block count, tag-set size; universe n = k*m."""

    k: int
    m: int
    s: int

    def __post_init__(self):
        if self.m < 2:
            raise InvalidParams(f"require m >= 2, got m={self.m}")
        if self.s < 1:
            raise InvalidParams(f"require s >= 1, got s={self.s}")
        if self.s > self.k - 2:
            raise InvalidParams(f"require s <= k-2, got k={self.k}, s={self.s}")

    @property
    def n(self) -> int:
        return self.k * self.m


@dataclass(frozen=True, slots=True)
class BlockFamily:
    """Implicit representation: parameters plus chosen tag elements.

    Stores no member and no bit vector; the explicit block and tag masks
    are derived on demand, so building and analyzing a family stays cheap
    even when the universe has millions of elements.
    """

    params: BlockParams
    t_elements: tuple[tuple[int, ...], ...]  # 1-based tag elements per block

    @property
    def blocks(self) -> tuple[SetBits, ...]:
        k, m, n = self.params.k, self.params.m, self.params.n
        window = (1 << k) - 1
        return tuple(SetBits(n, window << (i * k)) for i in range(m))

    @property
    def t_sets(self) -> tuple[SetBits, ...]:
        n = self.params.n
        return tuple(
            SetBits(n, sum(1 << (x - 1) for x in elems)) for elems in self.t_elements
        )

    def t_union_bits(self) -> int:
        t = 0
        for elems in self.t_elements:
            for x in elems:
                t |= 1 << (x - 1)
        return t

    def generators(self) -> tuple[SetBits, ...]:
        """All sets B_i u {j} for j in T, deduplicated, canonical order."""
        n = self.params.n
        t_all = self.t_union_bits()
        gens: set[int] = set()
        for block in self.blocks:
            base = block.bits
            for pos in bit_positions(t_all):
                gens.add(base | (1 << pos))
        return tuple(SetBits(n, b) for b in sorted(gens))


@dataclass(frozen=True)
class CountTable:
    """Exact member counts by number of blocks contained."""

    nj: tuple[int, ...]  # nj[j-1] = members containing exactly j blocks
    total: int
    pj: tuple[Fraction, ...]
    tau: Fraction  # m * 2^-s; the bound suite needs tau <= 1/4


@dataclass(frozen=True)
class BlockMetrics:
    """Densities of the family, exact, valid at any scale."""

    gamma_out: Fraction  # abundance of any untagged element
    gamma_in: Fraction  # abundance of any tagged element
    avg_abundance: Fraction
    aod: Fraction


@dataclass(frozen=True)
class BoundReport:
    """Exact evaluation of every structural inequality.

    The tau-gated fields (gamma_out_linear, gamma_out_double, the two AOD
    uppers) are guaranteed only when tau <= 1/4; the rest hold for every
    valid parameter triple.
    """

    tau: Fraction
    tau_ok: bool
    gamma_out_lower: bool  # 1/m <= gamma_out
    gamma_out_series: bool  # gamma_out <= (1/m) * sum_j j tau^(j-1)
    gamma_out_linear: bool  # gamma_out <= (1/m)(1 + 4 tau)
    gamma_out_double: bool  # gamma_out <= 2/m
    gamma_in_range: bool  # 1/2 <= gamma_in <= 1
    t_fraction_ok: bool  # max_A |A n T| / |A| <= m s / k
    aod_lower: bool  # 1/m <= AOD
    aod_upper_mix: bool  # AOD <= (1 - ms/k)(2/m) + ms/k
    aod_upper_simple: bool  # AOD <= 2/m + m^2 s / n

    @property
    def unconditional_ok(self) -> bool:
        return (
            self.gamma_out_lower
            and self.gamma_out_series
            and self.gamma_in_range
            and self.t_fraction_ok
            and self.aod_lower
        )

    @property
    def all_ok(self) -> bool:
        return (
            self.unconditional_ok
            and self.gamma_out_linear
            and self.gamma_out_double
            and self.aod_upper_mix
            and self.aod_upper_simple
        )


def build_block_family(
    params: BlockParams, t_choice: Optional[Sequence[Iterable[int]]] = None
) -> BlockFamily:
    """Lay out blocks and tag sets.

    Blocks are the contiguous ranges B_i = {(i-1)k + 1, ..., ik}. The
    canonical tag choice is the first s elements of each block; t_choice
    overrides it with explicit 1-based element lists, one per block. All
    statistics are invariant under the choice (tested, not assumed).
    """
    k, m, s = params.k, params.m, params.s
    if t_choice is None:
        t_elements = tuple(tuple(range(i * k + 1, i * k + s + 1)) for i in range(m))
    else:
        if len(t_choice) != m:
            raise InvalidParams(f"t_choice must list {m} tag sets, got {len(t_choice)}")
        chosen = []
        for i, elems in enumerate(t_choice):
            uniq = tuple(sorted(set(elems)))
            if len(uniq) != s:
                raise InvalidParams(f"tag set {i + 1} must have exactly s={s} distinct elements")
            if uniq[0] < i * k + 1 or uniq[-1] > (i + 1) * k:
                raise InvalidParams(f"tag set {i + 1} is not a subset of block {i + 1}")
            chosen.append(uniq)
        t_elements = tuple(chosen)
    return BlockFamily(params=params, t_elements=t_elements)


def count_table(bf: BlockFamily) -> CountTable:
    m, s = bf.params.m, bf.params.s
    nj = tuple(math.comb(m, j) * 2 ** ((m - j) * s) for j in range(1, m + 1))
    total = sum(nj)
    pj = tuple(Fraction(c, total) for c in nj)
    return CountTable(nj=nj, total=total, pj=pj, tau=Fraction(m, 2**s))


def materialize(bf: BlockFamily, cap: int = DEFAULT_CAP) -> Family:
    """Enumerate the family explicitly: a nonempty block selection S plus
    any subset of the tags of unselected blocks. Must (and does, by test)
    equal the union closure of the generators, set for set.
    """
    total = count_table(bf).total
    if total > cap:
        raise CapExceeded(
            f"block family has {total} members, cap is {cap}; use exact_metrics instead"
        )
    m = bf.params.m
    block_bits = [b.bits for b in bf.blocks]
    tag_bits = [t.bits for t in bf.t_sets]
    members: list[int] = []
    for smask in range(1, 1 << m):
        base = 0
        free = 0
        for i in range(m):
            if (smask >> i) & 1:
                base |= block_bits[i]
            else:
                free |= tag_bits[i]
        free_pos = list(bit_positions(free))
        for pick in range(1 << len(free_pos)):
            extra = 0
            rest = pick
            idx = 0
            while rest:
                if rest & 1:
                    extra |= 1 << free_pos[idx]
                rest >>= 1
                idx += 1
            members.append(base | extra)
    return Family.from_bits(bf.params.n, members)


def _tree_sum(terms: list[tuple[int, int]], lo: int, hi: int) -> tuple[int, int]:
    # Balanced pairwise merge of num/den pairs; reduced once by the caller.
    if hi - lo == 1:
        return terms[lo]
    mid = (lo + hi) // 2
    n1, d1 = _tree_sum(terms, lo, mid)
    n2, d2 = _tree_sum(terms, mid, hi)
    return n1 * d2 + n2 * d1, d1 * d2


def exact_metrics(bf: BlockFamily) -> BlockMetrics:
    """All densities from the (blocks, tags) class decomposition.

    A member class is (j, u): j blocks and u extra tag elements, of size
    C(m, j) * C((m-j)s, u), member cardinality jk + u, tag intersection
    js + u. An untagged element is present iff its block is selected; a
    tagged element additionally via the extra-tag route. O(m^2 s) exact
    rational work, so the sweep never materializes anything.
    """
    p = bf.params
    k, m, s, n = p.k, p.m, p.s, p.n
    nj = [math.comb(m, j) * 2 ** ((m - j) * s) for j in range(1, m + 1)]
    total = sum(nj)
    block_weighted = sum(j * c for j, c in enumerate(nj, start=1))
    gamma_out = Fraction(block_weighted, m * total)

    with_block = sum(math.comb(m - 1, j - 1) * 2 ** ((m - j) * s) for j in range(1, m + 1))
    as_extra = sum(math.comb(m - 1, j) * 2 ** ((m - j) * s - 1) for j in range(1, m))
    gamma_in = Fraction(with_block + as_extra, total)

    avg = ((n - m * s) * gamma_out + m * s * gamma_in) / n

    # Per-class mean abundance over a common denominator m * total, summed
    # as raw integer pairs and reduced once (the denominators jk + u are
    # what make the exact value large).
    go_num = block_weighted  # gamma_out = go_num / (m * total)
    gi_num = with_block + as_extra  # gamma_in = gi_num / total
    terms: list[tuple[int, int]] = []
    for j in range(1, m + 1):
        free = (m - j) * s
        choose_blocks = math.comb(m, j)
        for u in range(free + 1):
            class_size = choose_blocks * math.comb(free, u)
            w = j * (k - s) * go_num + m * (j * s + u) * gi_num
            terms.append((class_size * w, j * k + u))
    num, den = _tree_sum(terms, 0, len(terms))
    aod = Fraction(num, den * m * total * total)
    return BlockMetrics(gamma_out=gamma_out, gamma_in=gamma_in, avg_abundance=avg, aod=aod)


def verify_bounds(bf: BlockFamily) -> BoundReport:
    """Evaluate every structural inequality with exact comparisons."""
    p = bf.params
    k, m, s, n = p.k, p.m, p.s, p.n
    bm = exact_metrics(bf)
    tau = Fraction(m, 2**s)

    one_over_m = Fraction(1, m)
    series = one_over_m * sum(j * tau ** (j - 1) for j in range(1, m + 1))
    linear = one_over_m * (1 + 4 * tau)
    double = Fraction(2, m)

    t_frac_bound = Fraction(m * s, k)
    max_t_frac = Fraction(0)
    for j in range(1, m + 1):
        for u in range((m - j) * s + 1):
            frac = Fraction(j * s + u, j * k + u)
            if frac > max_t_frac:
                max_t_frac = frac

    mix_upper = (1 - t_frac_bound) * double + t_frac_bound
    simple_upper = double + Fraction(m * m * s, n)

    return BoundReport(
        tau=tau,
        tau_ok=tau <= Fraction(1, 4),
        gamma_out_lower=one_over_m <= bm.gamma_out,
        gamma_out_series=bm.gamma_out <= series,
        gamma_out_linear=bm.gamma_out <= linear,
        gamma_out_double=bm.gamma_out <= double,
        gamma_in_range=Fraction(1, 2) <= bm.gamma_in <= 1,
        t_fraction_ok=max_t_frac <= t_frac_bound,
        aod_lower=one_over_m <= bm.aod,
        aod_upper_mix=bm.aod <= mix_upper,
        aod_upper_simple=bm.aod <= simple_upper,
    )
