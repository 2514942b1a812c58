"""Sheaves on posets: functoriality, natural sheaf, pullback, top-kill."""

import pytest

import sheaflat as sl
from sheaflat.errors import MapNotMonotone, SheafLatError, VerificationError
from sheaflat.linalg import Matrix, rank
from sheaflat.posets import Poset
from sheaflat.sheaves import (Sheaf, constant_sheaf, modify_at_top,
                              natural_sheaf, restrict_sheaf)


def chain_poset(n: int) -> Poset:
    return Poset([[i <= j for j in range(n)] for i in range(n)])


def test_functoriality_verified():
    p = chain_poset(3)
    good = {
        (0, 1): Matrix.from_rows(sl.QQ, [[2]], 1),
        (1, 2): Matrix.from_rows(sl.QQ, [[3]], 1),
        (0, 2): Matrix.from_rows(sl.QQ, [[6]], 1),
    }
    Sheaf(p, sl.QQ, [1, 1, 1], good)
    bad = dict(good)
    bad[(0, 2)] = Matrix.from_rows(sl.QQ, [[5]], 1)
    with pytest.raises(VerificationError):
        Sheaf(p, sl.QQ, [1, 1, 1], bad)


def test_missing_map_rejected():
    p = chain_poset(2)
    with pytest.raises(SheafLatError):
        Sheaf(p, sl.QQ, [1, 1], {})


def test_constant_sheaf():
    p = chain_poset(3)
    f = constant_sheaf(p, sl.QQ, 2)
    assert f.dim(0) == 2
    assert f.map(0, 2).entries == Matrix.identity(sl.QQ, 2).entries


def test_natural_sheaf_dims_and_injectivity(braid4):
    f = natural_sheaf(braid4)
    p = braid4.poset
    for x in p.elements():
        assert f.dim(x) == braid4.dim_of(x)
    # structure maps are inclusions, hence injective
    for (x, y), m in f.maps.items():
        if x != y:
            assert rank(m) == m.cols


def test_natural_sheaf_functorial_over_prime_field(full23):
    f = natural_sheaf(full23)
    assert f.field.p == 2
    assert f.dim(full23.lattice.bottom) == 3
    assert f.dim(full23.lattice.top) == 0


def test_restrict_sheaf_monotone_guard(braid3):
    f = natural_sheaf(braid3)
    p = braid3.poset
    two = Poset([[True, True], [False, True]])
    l = braid3.lattice
    restrict_sheaf(f, two, [l.bottom, l.top])
    with pytest.raises(MapNotMonotone):
        restrict_sheaf(f, two, [l.top, l.bottom])


def test_modify_at_top(braid3):
    f = natural_sheaf(braid3)
    top = braid3.lattice.top
    g = modify_at_top(f, top)
    assert g.dim(top) == 0
    for x in braid3.poset.elements():
        if x != top:
            assert g.dim(x) == f.dim(x)
            assert g.map(x, top).cols == 0
