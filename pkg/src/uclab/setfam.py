"""Set families over [n] represented as arbitrary-width bit vectors.

A set is an immutable bit vector: bit x (0-based) set means element x + 1
belongs to the set; all I/O and reports are 1-based. A Family is a
deduplicated tuple of such sets in canonical order, ascending unsigned
value of the bit vector. Union closure is a worklist fixed point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import CapExceeded, EmptyGenerators, ParseError, PreconditionFailed

# Default bound on materialized / closed family sizes; the CLI lets the
# UCLAB_CAP environment variable override it.
DEFAULT_CAP = 1_000_000


def bit_positions(bits: int) -> Iterator[int]:
    """Yield the 0-based positions of the set bits, ascending."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


@dataclass(frozen=True, slots=True)
class SetBits:
    """A subset of {1, ..., universe_n} stored as one big-int bit vector."""

    universe_n: int
    bits: int = 0

    def __post_init__(self):
        if self.universe_n < 1:
            raise ValueError(f"universe_n must be positive, got {self.universe_n}")
        if self.bits < 0 or self.bits >> self.universe_n:
            raise ValueError(
                f"bit vector 0x{self.bits:x} does not fit a universe of {self.universe_n} elements"
            )

    @classmethod
    def from_elements(cls, universe_n: int, elements: Iterable[int]) -> "SetBits":
        """Build from 1-based element labels."""
        bits = 0
        for x in elements:
            if not 1 <= x <= universe_n:
                raise ValueError(f"element {x} outside universe [1, {universe_n}]")
            bits |= 1 << (x - 1)
        return cls(universe_n, bits)

    def elements(self) -> tuple[int, ...]:
        """1-based elements in ascending order."""
        return tuple(x + 1 for x in bit_positions(self.bits))

    def cardinality(self) -> int:
        return self.bits.bit_count()

    def contains(self, x: int) -> bool:
        if not 1 <= x <= self.universe_n:
            raise ValueError(f"element {x} outside universe [1, {self.universe_n}]")
        return bool((self.bits >> (x - 1)) & 1)

    def union(self, other: "SetBits") -> "SetBits":
        if other.universe_n != self.universe_n:
            raise ValueError("universe size mismatch")
        return SetBits(self.universe_n, self.bits | other.bits)

    def intersection(self, other: "SetBits") -> "SetBits":
        if other.universe_n != self.universe_n:
            raise ValueError("universe size mismatch")
        return SetBits(self.universe_n, self.bits & other.bits)

    __or__ = union
    __and__ = intersection

    def __repr__(self) -> str:
        inner = ",".join(map(str, self.elements()))
        return f"SetBits(n={self.universe_n}, {{{inner}}})"


@dataclass(frozen=True, slots=True)
class Family:
    """A nonempty, deduplicated family of subsets of [universe_n].

    Members are kept in canonical order (ascending bit-vector value), which
    makes equality, serialization, and deduplication deterministic. Use the
    factory methods; the constructor insists on already-canonical input.
    """

    universe_n: int
    members: tuple[SetBits, ...]

    def __post_init__(self):
        if self.universe_n < 1:
            raise ValueError(f"universe_n must be positive, got {self.universe_n}")
        if not self.members:
            raise ValueError("a family needs at least one member")
        prev = -1
        for member in self.members:
            if member.universe_n != self.universe_n:
                raise ValueError("member universe size mismatch")
            if member.bits <= prev:
                raise ValueError("members must be strictly ascending in canonical order")
            prev = member.bits

    @classmethod
    def from_bits(cls, universe_n: int, bits: Iterable[int]) -> "Family":
        uniq = sorted(set(bits))
        return cls(universe_n, tuple(SetBits(universe_n, b) for b in uniq))

    @classmethod
    def from_sets(cls, universe_n: int, sets: Iterable[SetBits]) -> "Family":
        return cls.from_bits(universe_n, (s.bits for s in sets))

    @classmethod
    def of(cls, universe_n: int, *element_sets: Iterable[int]) -> "Family":
        """Convenience: build from 1-based element collections."""
        return cls.from_sets(
            universe_n, [SetBits.from_elements(universe_n, es) for es in element_sets]
        )

    def size(self) -> int:
        return len(self.members)

    def bits_set(self) -> set[int]:
        """Member bit vectors as a set, for O(1) membership tests."""
        return {m.bits for m in self.members}

    def __iter__(self) -> Iterator[SetBits]:
        return iter(self.members)

    def __contains__(self, item: SetBits) -> bool:
        return item.universe_n == self.universe_n and item.bits in self.bits_set()


@dataclass(frozen=True)
class SeparationReport:
    """Which element pairs are split by some member (all of them, or not)."""

    separates: bool
    witness_pairs: tuple[tuple[int, int], ...]


def union_closure(
    generators: Sequence[SetBits], universe_n: int, cap: int = DEFAULT_CAP
) -> Family:
    """Smallest family containing the generators and closed under union.

    Worklist fixed point: every set discovered is eventually unioned against
    every member present at that time; pairs formed later are covered when
    the later set is itself processed. Raises CapExceeded once the closure
    grows past `cap` (large instances should use the structured block
    representation instead of materializing).
    """
    if not generators:
        raise EmptyGenerators("union_closure needs at least one generator")
    if cap < 1:
        raise ValueError(f"cap must be positive, got {cap}")
    for g in generators:
        if g.universe_n != universe_n:
            raise ValueError("generator universe size mismatch")

    seen: set[int] = set()
    members: list[int] = []
    work: list[int] = []
    for g in generators:
        if g.bits not in seen:
            seen.add(g.bits)
            members.append(g.bits)
            work.append(g.bits)
    if len(seen) > cap:
        raise CapExceeded(f"union closure exceeded cap of {cap} sets")

    while work:
        a = work.pop()
        for i in range(len(members)):
            u = a | members[i]
            if u not in seen:
                seen.add(u)
                if len(seen) > cap:
                    raise CapExceeded(f"union closure exceeded cap of {cap} sets")
                members.append(u)
                work.append(u)
    return Family.from_bits(universe_n, seen)


def is_union_closed(f: Family) -> bool:
    """True iff the union of every member pair is again a member."""
    have = f.bits_set()
    bits = [m.bits for m in f.members]
    for i, a in enumerate(bits):
        for b in bits[i:]:
            if a | b not in have:
                return False
    return True


def separates_points(f: Family) -> SeparationReport:
    """Find every pair {i, j} that no member contains exactly one of.

    Two elements are inseparable iff their membership columns across the
    family are identical, so pairs are grouped by column signature.
    """
    n = f.universe_n
    if n < 2:
        raise ValueError("point separation needs a universe of at least 2 elements")
    sig = [0] * n
    for idx, member in enumerate(f.members):
        for x in bit_positions(member.bits):
            sig[x] |= 1 << idx
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(sig[x], []).append(x + 1)
    witness: list[tuple[int, int]] = []
    for xs in groups.values():
        for i in range(len(xs)):
            for j in range(i + 1, len(xs)):
                witness.append((xs[i], xs[j]))
    witness.sort()
    return SeparationReport(separates=not witness, witness_pairs=tuple(witness))


def augment_cosingletons(f: Family) -> Family:
    """Add every co-singleton [n] \\ {j}; repairs point separation.

    Requires the input to be union-closed with [n] a member; otherwise the
    augmented family need not stay union-closed.
    """
    n = f.universe_n
    full = (1 << n) - 1
    have = f.bits_set()
    if full not in have:
        raise PreconditionFailed("the full set [n] must be a member before augmentation")
    if not is_union_closed(f):
        raise PreconditionFailed("input family must be union-closed")
    have.update(full ^ (1 << x) for x in range(n))
    return Family.from_bits(n, have)


def parse_family(text: str) -> Family:
    """Parse the family file format (see serialize_family for the shape)."""
    lines = text.split("\n")
    if not lines[0].startswith("n="):
        raise ParseError(1, "first line must be 'n=<universe size>'")
    head = lines[0][2:]
    if not head.isdigit() or int(head) < 1:
        raise ParseError(1, f"bad universe size {head!r}")
    n = int(head)

    seen: dict[int, int] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if line == "":
            continue
        if line == "-":
            bits = 0
        else:
            bits = 0
            prev = 0
            for tok in line.split(","):
                if not tok.isdigit():
                    raise ParseError(lineno, f"bad element {tok!r}")
                x = int(tok)
                if x < 1:
                    raise ParseError(lineno, "elements are 1-based")
                if x > n:
                    raise ParseError(lineno, f"element {x} exceeds n={n}")
                if x <= prev:
                    raise ParseError(
                        lineno, f"elements must be strictly ascending, got {x} after {prev}"
                    )
                prev = x
                bits |= 1 << (x - 1)
        if bits in seen:
            raise ParseError(lineno, f"duplicate set (first seen on line {seen[bits]})")
        seen[bits] = lineno
    if not seen:
        raise ParseError(len(lines), "family has no sets")
    return Family.from_bits(n, seen)


def serialize_family(f: Family) -> str:
    """Family file format: `n=<universe>` then one set per line in canonical
    order, elements comma-separated ascending 1-based, `-` for the empty
    set, LF-terminated. parse_family(serialize_family(f)) == f.
    """
    out = [f"n={f.universe_n}"]
    for member in f.members:
        out.append("-" if member.bits == 0 else ",".join(map(str, member.elements())))
    return "\n".join(out) + "\n"
