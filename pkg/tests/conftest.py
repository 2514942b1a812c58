"""Shared corpus and generators for the test suite."""

import random
from itertools import combinations

import pytest

import sheaflat as sl
from sheaflat.errors import NotGraded
from sheaflat.linalg import Matrix, rank
from sheaflat.posets import Poset


@pytest.fixture(scope="session")
def braid3():
    return sl.build_lattice(sl.braid(3))


@pytest.fixture(scope="session")
def braid4():
    return sl.build_lattice(sl.braid(4))


@pytest.fixture(scope="session")
def braid5():
    return sl.build_lattice(sl.braid(5))


@pytest.fixture(scope="session")
def coord3():
    return sl.build_lattice(sl.coordinate(3))


@pytest.fixture(scope="session")
def coord4():
    return sl.build_lattice(sl.coordinate(4))


@pytest.fixture(scope="session")
def full23():
    return sl.build_lattice(sl.full_field(2, 3))


@pytest.fixture(scope="session")
def full33():
    return sl.build_lattice(sl.full_field(3, 3))


def generic_lines(m: int, ambient: int = 2) -> sl.Arrangement:
    """m pairwise non-proportional hyperplanes through a common codim-2 core:
    a rank-2 arrangement in any ambient dimension."""
    normals = []
    for k in range(m):
        v = [0] * ambient
        if k == 0:
            v[0] = 1
        else:
            v[0], v[1] = 1, k
        normals.append(v)
    return sl.Arrangement.make(sl.QQ, ambient, normals)


def random_essential_arrangement(seed: int, dim: int, count: int) -> sl.Arrangement:
    """Deterministic pseudo-random essential arrangement over Q."""
    rng = random.Random(seed)
    while True:
        normals = []
        seen = set()
        tries = 0
        while len(normals) < count and tries < 200:
            tries += 1
            v = tuple(rng.randint(-3, 3) for _ in range(dim))
            if not any(v):
                continue
            lead = next(x for x in v if x)
            canon = tuple(sl.QQ.div(sl.QQ.of(x), sl.QQ.of(lead)) for x in v)
            if canon in seen:
                continue
            seen.add(canon)
            normals.append(list(v))
        if len(normals) < count:
            continue
        if rank(Matrix.from_rows(sl.QQ, normals, dim)) == dim:
            return sl.Arrangement.make(sl.QQ, dim, normals)


def naturally_labeled_posets(n: int):
    """Every strict order on 0..n-1 compatible with the natural labelling:
    hits every isomorphism class of n-element posets at least once."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    m = len(pairs)
    for mask in range(1 << m):
        rel = {pairs[k] for k in range(m) if (mask >> k) & 1}
        transitive = all((a, d) in rel
                         for (a, b) in rel for (c, d) in rel if b == c)
        if transitive:
            yield rel


def graded_posets_upto(max_n: int):
    for n in range(1, max_n + 1):
        for rel in naturally_labeled_posets(n):
            leq = [[i == j or (i, j) in rel for j in range(n)] for i in range(n)]
            try:
                yield Poset(leq)
            except NotGraded:
                continue


def brute_force_chains(p: Poset, length: int):
    """All strictly decreasing (top-first) chains, by exhaustive subset scan."""
    out = []
    for subset in combinations(range(p.n), length + 1):
        if all(p.lt(subset[i], subset[j]) or p.lt(subset[j], subset[i])
               for i in range(len(subset)) for j in range(i + 1, len(subset))):
            ordered = sorted(subset, key=lambda x: -sum(
                1 for y in subset if p.leq(y, x)))
            out.append(tuple(ordered))
    return sorted(out)
