"""Lattice structure: joins, atoms, deletion/restriction, geometry tests."""

import pytest

import sheaflat as sl
from sheaflat.errors import NotALattice
from sheaflat.lattices import (Lattice, deletion, find_dependent_atom, is_atomic,
                               is_boolean, is_geometric, is_independent,
                               restriction)
from sheaflat.posets import Poset


def boolean_lattice(n: int) -> Lattice:
    leq = [[(i & j) == i for j in range(1 << n)] for i in range(1 << n)]
    return Lattice(Poset(leq))


def square_face_lattice() -> Lattice:
    """Face lattice of a square: graded, atomic, but not geometric."""
    # 0: empty face, 1-4: vertices in cyclic order, 5-8: edges, 9: the square
    n = 10
    leq = [[i == j for j in range(n)] for i in range(n)]
    edges = {5: (1, 2), 6: (2, 3), 7: (3, 4), 8: (4, 1)}
    for e, (a, b) in edges.items():
        leq[a][e] = leq[b][e] = True
    for x in range(n):
        leq[0][x] = True
        leq[x][9] = True
    return Lattice(Poset(leq))


def test_boolean_lattice_operations():
    l = boolean_lattice(3)
    assert l.bottom == 0 and l.top == 7
    assert sorted(l.atoms) == [1, 2, 4]
    assert l.join(1, 2) == 3 and l.meet(3, 5) == 1
    assert l.join_all([1, 2, 4]) == 7 and l.join_all([]) == 0
    assert is_boolean(l) and is_atomic(l) and is_geometric(l)
    assert find_dependent_atom(l) is None


def test_non_lattice_rejected():
    # two atoms with two incomparable upper bounds: join undefined
    leq = [
        [1, 1, 1, 1, 1],
        [0, 1, 0, 1, 1],
        [0, 0, 1, 1, 1],
        [0, 0, 0, 1, 0],
        [0, 0, 0, 0, 1],
    ]
    with pytest.raises(NotALattice):
        Lattice(Poset(leq))


def test_partition_lattice_geometry(braid4):
    l = braid4.lattice
    assert is_atomic(l) and is_geometric(l) and not is_boolean(l)
    a = find_dependent_atom(l)
    assert a is not None and a in l.atoms
    # deleting a dependent atom keeps the rank
    del_lat, _ = deletion(l, a)
    assert del_lat.rank == l.rank


def test_square_face_lattice_not_geometric():
    l = square_face_lattice()
    assert is_atomic(l)
    assert not is_geometric(l)


def test_independence(braid4):
    l = braid4.lattice
    atoms = l.atoms
    # two distinct atoms of a geometric lattice are always independent
    assert is_independent(l, atoms[:2])
    # the three hyperplanes x1-x2, x1-x3, x2-x3 form a circuit
    names = braid4.arrangement.names
    circuit = [braid4.atom_for_hyperplane(i) for i, nm in enumerate(names)
               if nm in ("x1-x2=0", "x1-x3=0", "x2-x3=0")]
    assert len(circuit) == 3
    assert not is_independent(l, circuit)


def test_deletion_structure(braid4):
    l = braid4.lattice
    a = l.atoms[0]
    del_lat, emap = deletion(l, a)
    assert a not in emap
    assert len(del_lat.atoms) == len(l.atoms) - 1
    # deletion elements are exactly the joins of the remaining atoms
    for x in del_lat.poset.elements():
        parent = emap[x]
        below = [b for b in l.atoms if b != a and l.poset.leq(b, parent)]
        assert l.join_all(below) == parent


def test_restriction_structure(braid4):
    l = braid4.lattice
    a = l.atoms[0]
    res_lat, emap = restriction(l, a)
    assert emap[res_lat.bottom] == a
    assert all(l.poset.leq(a, y) for y in emap)
    assert res_lat.rank == l.rank - 1


def test_deletion_of_independent_atom_drops_rank(coord3):
    l = coord3.lattice
    for a in l.atoms:
        del_lat, _ = deletion(l, a)
        assert del_lat.rank == l.rank - 1
    assert find_dependent_atom(l) is None


def test_atoms_below(braid4):
    l = braid4.lattice
    assert sorted(l.atoms_below(l.top)) == sorted(l.atoms)
    for a in l.atoms:
        assert l.atoms_below(a) == [a]


def test_sublattice_roundtrip(braid3):
    l = braid3.lattice
    keep = sorted(set([l.bottom, l.top] + list(l.atoms)))
    sub, emap = l.sublattice(keep)
    assert sub.poset.n == len(keep)
    for i in range(sub.poset.n):
        for j in range(sub.poset.n):
            assert sub.poset.leq(i, j) == l.poset.leq(emap[i], emap[j])
