import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_closure, brute_is_union_closed
from uclab.errors import CapExceeded, EmptyGenerators, ParseError, PreconditionFailed
from uclab.setfam import (
    Family,
    SetBits,
    augment_cosingletons,
    is_union_closed,
    parse_family,
    separates_points,
    serialize_family,
    union_closure,
)

# Union closure of {B_i u {j}} for k=3, m=2, s=1, T={1,4}; enumerated by
# hand and cross-checked by the brute-force fixed point below.
FIVE_SET_MEMBERS = [
    (1, 2, 3),
    (1, 2, 3, 4),
    (4, 5, 6),
    (1, 4, 5, 6),
    (1, 2, 3, 4, 5, 6),
]
FIVE_SET_GENERATORS = [(1, 2, 3), (1, 2, 3, 4), (4, 5, 6), (1, 4, 5, 6)]


def five_set_family():
    return Family.of(6, *FIVE_SET_MEMBERS)


@st.composite
def generator_draws(draw):
    n = draw(st.integers(1, 8))
    gens = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=1, max_size=6))
    return n, gens


class TestSetBits:
    def test_roundtrip_elements(self):
        s = SetBits.from_elements(6, [4, 1, 5])
        assert s.elements() == (1, 4, 5)
        assert s.cardinality() == 3
        assert s.contains(4) and not s.contains(2)

    def test_rejects_out_of_universe(self):
        with pytest.raises(ValueError):
            SetBits.from_elements(3, [4])
        with pytest.raises(ValueError):
            SetBits(3, 0b1000)
        with pytest.raises(ValueError):
            SetBits(0, 0)

    def test_union_intersection(self):
        a = SetBits.from_elements(4, [1, 2])
        b = SetBits.from_elements(4, [2, 3])
        assert (a | b).elements() == (1, 2, 3)
        assert (a & b).elements() == (2,)
        with pytest.raises(ValueError):
            a | SetBits.from_elements(5, [1])


class TestFamily:
    def test_canonical_order_and_dedup(self):
        f = Family.of(3, [1, 2], [1], [1, 2])
        assert [m.elements() for m in f.members] == [(1,), (1, 2)]
        assert f.size() == 2

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            Family(3, ())

    def test_rejects_non_canonical_direct_construction(self):
        a = SetBits(3, 0b11)
        b = SetBits(3, 0b01)
        with pytest.raises(ValueError):
            Family(3, (a, b))

    def test_rejects_universe_mismatch(self):
        with pytest.raises(ValueError):
            Family(3, (SetBits(4, 1),))

    def test_contains(self):
        f = five_set_family()
        assert SetBits.from_elements(6, [4, 5, 6]) in f
        assert SetBits.from_elements(6, [1]) not in f


class TestUnionClosure:
    def test_two_singletons(self):
        gens = [SetBits.from_elements(2, [1]), SetBits.from_elements(2, [2])]
        f = union_closure(gens, 2)
        assert [m.elements() for m in f.members] == [(1,), (2,), (1, 2)]

    def test_single_generator_already_closed(self):
        f = union_closure([SetBits.from_elements(3, [1])], 3)
        assert [m.elements() for m in f.members] == [(1,)]

    def test_block_generators_close_to_five_sets(self):
        gens = [SetBits.from_elements(6, g) for g in FIVE_SET_GENERATORS]
        f = union_closure(gens, 6)
        assert [m.elements() for m in f.members] == FIVE_SET_MEMBERS
        assert f.bits_set() == brute_closure({g.bits for g in gens})

    def test_empty_generators(self):
        with pytest.raises(EmptyGenerators):
            union_closure([], 3)

    def test_cap_exceeded(self):
        gens = [SetBits.from_elements(6, [i]) for i in range(1, 7)]
        with pytest.raises(CapExceeded):
            union_closure(gens, 6, cap=10)

    def test_universe_mismatch(self):
        with pytest.raises(ValueError):
            union_closure([SetBits(3, 1)], 4)

    @given(generator_draws())
    @settings(deadline=None)
    def test_matches_brute_force_and_is_closed(self, draw):
        n, gens = draw
        f = union_closure([SetBits(n, b) for b in gens], n)
        assert f.bits_set() == brute_closure(set(gens))
        assert is_union_closed(f)

    @given(generator_draws())
    @settings(deadline=None)
    def test_idempotent_on_closed_families(self, draw):
        n, gens = draw
        f = union_closure([SetBits(n, b) for b in gens], n)
        again = union_closure(list(f.members), n)
        assert again == f

    def test_minimality_small_instances(self):
        # removing any non-generator member breaks union-closedness
        rng = random.Random(7)
        cases = [(6, [SetBits.from_elements(6, g).bits for g in FIVE_SET_GENERATORS])]
        for _ in range(8):
            n = rng.randint(3, 8)
            cases.append((n, [rng.getrandbits(n) for _ in range(rng.randint(2, 6))]))
        for n, gen_bits in cases:
            gen_bits = [b for b in gen_bits] or [1]
            f = union_closure([SetBits(n, b) for b in gen_bits], n, cap=200)
            assert is_union_closed(f)
            for member in f.members:
                if member.bits in set(gen_bits):
                    continue
                rest = f.bits_set() - {member.bits}
                assert not brute_is_union_closed(rest)


class TestIsUnionClosed:
    def test_triple_family(self):
        assert is_union_closed(Family.of(3, [], [1], [1, 2, 3]))

    def test_missing_union(self):
        assert not is_union_closed(Family.of(2, [1], [2]))


class TestSeparatesPoints:
    def test_singletons_separate(self):
        rep = separates_points(Family.of(2, [1], [2], [1, 2]))
        assert rep.separates and rep.witness_pairs == ()

    def test_block_family_does_not_separate(self):
        rep = separates_points(five_set_family())
        assert not rep.separates
        assert (2, 3) in rep.witness_pairs
        assert rep.witness_pairs == ((2, 3), (5, 6))

    def test_single_pair_witness(self):
        rep = separates_points(Family.of(2, [1, 2]))
        assert not rep.separates
        assert rep.witness_pairs == ((1, 2),)

    def test_needs_two_elements(self):
        with pytest.raises(ValueError):
            separates_points(Family.of(1, [1]))


class TestAugmentCosingletons:
    def test_full_set_only(self):
        f = augment_cosingletons(Family.of(2, [1, 2]))
        assert [m.elements() for m in f.members] == [(1,), (2,), (1, 2)]

    def test_block_family_augments_to_eleven(self):
        f = augment_cosingletons(five_set_family())
        assert f.size() == 11
        assert is_union_closed(f)
        assert separates_points(f).separates

    def test_full_set_any_n(self):
        f = augment_cosingletons(Family.of(4, [1, 2, 3, 4]))
        assert f.size() == 5
        assert separates_points(f).separates

    def test_requires_full_set(self):
        with pytest.raises(PreconditionFailed):
            augment_cosingletons(Family.of(3, [1], [1, 2]))

    def test_requires_union_closed(self):
        with pytest.raises(PreconditionFailed):
            augment_cosingletons(Family.of(3, [1], [2], [1, 2, 3]))

    @given(generator_draws())
    @settings(deadline=None)
    def test_postconditions_hold(self, draw):
        n, gens = draw
        full = (1 << n) - 1
        f = union_closure([SetBits(n, b) for b in gens] + [SetBits(n, full)], n)
        out = augment_cosingletons(f)
        assert is_union_closed(out)
        if n >= 2:
            assert separates_points(out).separates


class TestFileFormat:
    def test_parse_example(self):
        f = parse_family("n=3\n1\n1,2,3\n-\n")
        assert [m.elements() for m in f.members] == [(), (1,), (1, 2, 3)]

    def test_serialize_sorted(self):
        assert serialize_family(Family.of(1, [1], [])) == "n=1\n-\n1\n"

    def test_serialize_block_family(self):
        text = serialize_family(five_set_family())
        assert text == "n=6\n1,2,3\n1,2,3,4\n4,5,6\n1,4,5,6\n1,2,3,4,5,6\n"

    def test_roundtrip(self):
        f = five_set_family()
        assert parse_family(serialize_family(f)) == f

    @given(generator_draws())
    @settings(deadline=None)
    def test_roundtrip_property(self, draw):
        n, gens = draw
        f = Family.from_bits(n, gens)
        assert parse_family(serialize_family(f)) == f

    @pytest.mark.parametrize(
        "text,lineno",
        [
            ("m=3\n1\n", 1),
            ("n=x\n1\n", 1),
            ("n=0\n-\n", 1),
            ("n=3\n4\n", 2),
            ("n=3\n1\nfoo\n", 3),
            ("n=3\n2,1\n", 2),
            ("n=3\n1,1\n", 2),
            ("n=3\n0\n", 2),
            ("n=3\n1\n1\n", 3),
            ("n=3\n1\n 2\n", 3),
            ("n=3\n", 2),
        ],
    )
    def test_parse_errors_carry_line_numbers(self, text, lineno):
        with pytest.raises(ParseError) as exc:
            parse_family(text)
        assert exc.value.lineno == lineno

    def test_duplicate_set_is_error(self):
        with pytest.raises(ParseError, match="duplicate"):
            parse_family("n=3\n1,2\n1,2\n")
