"""Chain complexes and homology: structural laws and small-poset oracles."""

import os

import pytest

import sheaflat as sl
from sheaflat.complexes import (chain_complex_S, chain_complex_T, homology,
                                homology_data)
from sheaflat.deletion_restriction import lattice_complex
from sheaflat.errors import AugmentationIncompatible, VerificationError
from sheaflat.linalg import Matrix, rank
from sheaflat.posets import Poset
from sheaflat.sheaves import Sheaf, constant_sheaf, modify_at_top, natural_sheaf

from conftest import graded_posets_upto


def boolean_poset(n: int) -> Poset:
    return Poset([[(i & j) == i for j in range(1 << n)] for i in range(1 << n)])


def random_sheaf(p: Poset, seed: int) -> Sheaf:
    """A pseudo-random functorial sheaf.

    Dimensions shrink with rank, the map for x <= y is C_x T C_y^{-1} where
    T is the diagonal truncation and C_z a random unimodular change of basis;
    truncations compose because dimensions are monotone along the order.
    """
    import random
    rng = random.Random(seed)
    dims = [p.rank + 1 - p.rank_of[x] for x in range(p.n)]

    def unimodular(n):
        fwd = Matrix.identity(sl.QQ, n)
        inv = Matrix.identity(sl.QQ, n)
        for _ in range(2 * n):
            i, j = rng.randrange(n), rng.randrange(n)
            if i == j:
                continue
            c = sl.QQ.of(rng.randint(-2, 2))
            add = Matrix.from_rows(sl.QQ, [
                [sl.QQ.one if r == s else (c if (r, s) == (i, j) else sl.QQ.zero)
                 for s in range(n)] for r in range(n)], n)
            sub = Matrix.from_rows(sl.QQ, [
                [sl.QQ.one if r == s else (sl.QQ.neg(c) if (r, s) == (i, j) else sl.QQ.zero)
                 for s in range(n)] for r in range(n)], n)
            fwd = add.mul(fwd)
            inv = inv.mul(sub)
        return fwd, inv

    change = [unimodular(d) for d in dims]
    maps = {}
    for x in range(p.n):
        for y in range(p.n):
            if x != y and p.leq(x, y):
                trunc = Matrix.from_rows(sl.QQ, [
                    [sl.QQ.one if r == s else sl.QQ.zero for s in range(dims[y])]
                    for r in range(dims[x])], dims[y])
                maps[(x, y)] = change[x][0].mul(trunc).mul(change[y][1])
    return Sheaf(p, sl.QQ, dims, maps)


def test_differentials_compose_to_zero_enforced():
    with pytest.raises(VerificationError):
        from sheaflat.complexes import ChainComplex
        bad = Matrix.from_rows(sl.QQ, [[1]], 1)
        ChainComplex(sl.QQ, 0, 2, {0: 1, 1: 1, 2: 1}, {1: bad, 2: bad})


def test_euler_characteristic_equals_homology_alternating_sum():
    for p in graded_posets_upto(4):
        f = constant_sheaf(p, sl.QQ, 1)
        cx = chain_complex_T(p, f)
        h = homology(cx)
        assert cx.euler_characteristic() == sum(
            (-1) ** i * h.dim(i) for i in range(cx.lo, cx.hi + 1))


def test_degree_bound():
    for p in graded_posets_upto(4):
        f = constant_sheaf(p, sl.QQ, 1)
        h = homology(chain_complex_T(p, f))
        assert all(0 <= i <= p.rank for i in h.nonzero())


def test_minimum_collapse():
    """With a minimum present, homology is the bottom value in degree 0."""
    for p in graded_posets_upto(4):
        if p.minimum() is None:
            continue
        f = random_sheaf(p, seed=p.n * 101 + p.rank)
        h = homology(chain_complex_T(p, f))
        assert h.nonzero() in ({}, {0: f.dim(p.minimum())})
        assert h.dim(0) == f.dim(p.minimum())


def test_maximum_collapse_constant():
    for p in graded_posets_upto(4):
        if p.maximum() is None:
            continue
        h = homology(chain_complex_T(p, constant_sheaf(p, sl.QQ, 2)))
        assert h.nonzero() == {0: 2}


def test_max_kill(braid4):
    """If F vanishes at the maximum, removing the maximum keeps homology."""
    l = braid4.lattice
    f = modify_at_top(natural_sheaf(braid4), l.top)
    with_top = homology(lattice_complex(l, f, exclude={l.bottom})[0])
    without_top = homology(lattice_complex(l, f, exclude={l.bottom, l.top})[0])
    assert with_top.nonzero() == without_top.nonzero()


def test_s_and_t_agree_exhaustively_small():
    for p in graded_posets_upto(4):
        f = random_sheaf(p, seed=p.n * 7 + 1)
        hT = homology(chain_complex_T(p, f))
        hS = homology(chain_complex_S(p, f, truncate_at=p.rank + 2))
        assert all(hT.dim(i) == hS.dim(i) for i in range(0, p.rank + 1))


def test_augmentation_functoriality_enforced(braid3):
    l = braid3.lattice
    f = natural_sheaf(braid3)
    keep = [x for x in braid3.poset.elements() if x != l.bottom]
    sub, emap = braid3.poset.subposet(keep)
    from sheaflat.sheaves import restrict_sheaf
    fs = restrict_sheaf(f, sub, emap)
    bad_maps = {x: Matrix.zeros(sl.QQ, f.dim(l.bottom), fs.dim(x))
                for x in range(sub.n)}
    # zero maps are functorial only if every composite is zero; the natural
    # sheaf has nonzero structure maps, so make one entry inconsistent
    bad_maps[0] = Matrix.from_rows(
        sl.QQ, [[1] * fs.dim(0)] * f.dim(l.bottom), fs.dim(0))
    with pytest.raises(AugmentationIncompatible):
        chain_complex_T(sub, fs, augmented=True,
                        augment_to=(f.dim(l.bottom), bad_maps))


def test_reduced_complex_shifts_by_augmentation(braid4):
    l = braid4.lattice
    f = natural_sheaf(braid4)
    plain = lattice_complex(l, f, exclude={l.bottom})[0]
    reduced = lattice_complex(l, f, exclude={l.bottom}, augment_base=l.bottom)[0]
    assert reduced.lo == -1 and reduced.dim(-1) == f.dim(l.bottom)
    assert plain.dim(0) == reduced.dim(0)
    # the augmentation is onto F(bottom), so reduced H_0 drops by dim V
    hp, hr = homology(plain), homology(reduced)
    assert rank(reduced.differential(0)) == f.dim(l.bottom)
    assert hr.dim(-1) == 0
    assert hp.dim(0) - hr.dim(0) == f.dim(l.bottom)


def test_homology_data_matches_homology(braid4):
    l = braid4.lattice
    cx = lattice_complex(l, natural_sheaf(braid4), exclude={l.bottom})[0]
    data = homology_data(cx)
    h = homology(cx)
    for i in range(cx.lo, cx.hi + 1):
        assert data[i].dim == h.dim(i)
        assert data[i].cycles.contains(data[i].boundaries)


def test_thread_pool_env(braid4, monkeypatch):
    monkeypatch.setenv("SHEAFLAT_THREADS", "4")
    l = braid4.lattice
    cx = lattice_complex(l, natural_sheaf(braid4), exclude={l.bottom})[0]
    data = homology_data(cx)
    h = homology(cx)
    assert all(data[i].dim == h.dim(i) for i in range(cx.lo, cx.hi + 1))
    assert os.environ["SHEAFLAT_THREADS"] == "4"
