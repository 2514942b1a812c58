"""Graded posets, Möbius function, chain enumeration."""

import pytest

import sheaflat as sl
from sheaflat.errors import NotComparable, NotGraded
from sheaflat.posets import (Chain, Poset, covers, enumerate_chains, interval,
                             mobius, strict_down_set, up_set)

from conftest import brute_force_chains, graded_posets_upto


def boolean_poset(n: int) -> Poset:
    leq = [[(i & j) == i for j in range(1 << n)] for i in range(1 << n)]
    return Poset(leq)


def test_grading_rejects_uneven_chains():
    # 0 < 1 < 3 and 0 < 3 directly is fine, but 0 < 2 with 2 maximal beside
    # a rank-2 top breaks the cover condition
    leq = [
        [1, 1, 1, 1],
        [0, 1, 0, 1],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
    ]
    # element 2 has rank 1, element 3 rank 2; 2 is maximal: still graded
    Poset(leq)
    # now force a long jump: 0 < 3 is a cover in a poset where 3 must be rank 2
    leq_bad = [
        [1, 0, 1, 1],
        [0, 1, 1, 1],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
    ]
    # 2 covers both 0 and 1 (rank 1) while 3 also covers 0 and 1 -> graded;
    # build a genuinely ungradable N-shaped order instead
    Poset(leq_bad)
    with pytest.raises(NotGraded):
        Poset([
            [1, 1, 1, 1, 1],
            [0, 1, 0, 1, 1],
            [0, 0, 1, 0, 1],
            [0, 0, 0, 1, 1],
            [0, 0, 0, 0, 1],
        ])  # two maximal chains of different lengths to the same top


def test_standard_grading_on_boolean():
    p = boolean_poset(3)
    assert p.rank == 3
    assert p.rank_of[0] == 0 and p.rank_of[7] == 3
    assert p.minimum() == 0 and p.maximum() == 7


def test_mobius_boolean_alternates():
    p = boolean_poset(4)
    for x in range(16):
        assert mobius(p, 0, x) == (-1) ** bin(x).count("1")


def test_mobius_delta_identity_exhaustive():
    for p in graded_posets_upto(5):
        for x in range(p.n):
            for y in range(p.n):
                if not p.leq(x, y):
                    continue
                total = sum(mobius(p, x, z) for z in range(p.n)
                            if p.leq(x, z) and p.leq(z, y))
                assert total == (1 if x == y else 0)


def test_mobius_requires_comparable():
    p = boolean_poset(2)
    with pytest.raises(NotComparable):
        mobius(p, 1, 2)


def test_partition_lattice_mobius_values(braid4):
    l = braid4.lattice
    p = braid4.poset
    assert all(mobius(p, l.bottom, a) == -1 for a in l.atoms)
    rank2 = sorted(mobius(p, l.bottom, x) for x in p.elements()
                   if p.rank_of[x] == 2)
    assert rank2 == [1, 1, 1, 2, 2, 2, 2]
    assert mobius(p, l.bottom, l.top) == -6


def test_chain_enumeration_matches_brute_force():
    for p in graded_posets_upto(5):
        for length in range(0, p.rank + 1):
            got = sorted(c.elements for c in enumerate_chains(p, length))
            assert got == brute_force_chains(p, length)


def test_chain_drop_faces():
    c = Chain((5, 3, 1))
    assert c.length == 2 and c.top == 5
    assert c.drop(0).elements == (3, 1)
    assert c.drop(1).elements == (5, 1)
    assert c.drop(2).elements == (5, 3)


def test_covers_and_subposets():
    p = boolean_poset(3)
    cov = covers(p)
    assert all(bin(y).count("1") - bin(x).count("1") == 1 for x, y in cov)
    assert len(cov) == 12
    up, upmap = up_set(p, 1)
    assert up.n == 4 and all(p.leq(1, upmap[i]) for i in range(up.n))
    down, downmap = strict_down_set(p, 7)
    assert down.n == 7 and 7 not in downmap
    mid, midmap = interval(p, 1, 7)
    assert mid.n == 4
    for i in range(mid.n):
        for j in range(mid.n):
            assert mid.leq(i, j) == p.leq(midmap[i], midmap[j])


def test_up_down_masks_consistent():
    p = boolean_poset(3)
    for x in range(p.n):
        for y in range(p.n):
            assert bool((p.up_mask(x) >> y) & 1) == p.leq(x, y)
            assert bool((p.down_mask(x) >> y) & 1) == p.leq(y, x)
