"""Shared brute-force oracles and corpus builders.

The oracles are deliberately independent of the library paths they check:
closure by repeated full pairwise unions rather than a worklist, and AOD
by the direct double loop over member pairs.
"""

import random
from fractions import Fraction

from uclab._strfmt import allow_big_int_strings
from uclab.errors import CapExceeded
from uclab.setfam import SetBits, union_closure

allow_big_int_strings()


def brute_closure(gen_bits):
    """Fixed point by full re-pairing each round."""
    fam = set(gen_bits)
    while True:
        new = {a | b for a in fam for b in fam} - fam
        if not new:
            return fam
        fam |= new


def brute_is_union_closed(bits_iterable):
    have = set(bits_iterable)
    return all(a | b in have for a in have for b in have)


def brute_aod(members):
    """Direct double-loop overlap density over explicit member bit vectors."""
    nonempty = [a for a in members if a]
    assert nonempty, "oracle needs a nonempty member"
    total = Fraction(0)
    for a in nonempty:
        inner = Fraction(sum((a & b).bit_count() for b in members), len(members))
        total += inner / a.bit_count()
    return total / len(nonempty)


def brute_abundance(members, x):
    """x is 1-based."""
    return Fraction(sum(1 for a in members if (a >> (x - 1)) & 1), len(members))


def brute_average_abundance(members, n):
    total = sum(a.bit_count() for a in members)
    return Fraction(total, n * len(members))


def random_closed_families(count, seed, max_size=2000):
    """Deterministic corpus: union closures of random generator draws.

    Half the draws use sparse generators over wider universes, where most
    of the 2^g generator unions stay distinct, so closure sizes range from
    a handful of sets up to around a thousand.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        mode = rng.random()
        if mode < 0.2:
            n = rng.randint(20, 30)
            g = rng.randint(10, 11)
            density = rng.uniform(0.05, 0.15)
        elif mode < 0.6:
            n = rng.randint(10, 24)
            g = rng.randint(7, 10)
            density = rng.uniform(0.08, 0.25)
        else:
            n = rng.randint(3, 16)
            g = rng.randint(2, 8)
            density = rng.uniform(0.15, 0.6)
        gens = []
        for _ in range(g):
            bits = 0
            for x in range(n):
                if rng.random() < density:
                    bits |= 1 << x
            gens.append(bits)
        if not any(gens):
            continue
        if rng.random() < 0.25:
            gens.append(0)  # the empty set is a legal member
        try:
            fam = union_closure([SetBits(n, b) for b in gens], n, cap=max_size)
        except CapExceeded:
            continue
        out.append(fam)
    return out
