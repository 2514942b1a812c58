"""Broken circuit complexes of geometric lattices and plain simplicial
homology over the working field."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .complexes import HomologyProfile
from .errors import NotGeometric, SheafLatError
from .fields import Field
from .lattices import Lattice, is_geometric
from .linalg import Matrix, rank


def simplicial_homology(simplices, field: Field) -> HomologyProfile:
    """Reduced homology of an abstract simplicial complex.

    ``simplices`` is any iterable of vertex collections; the complex is
    closed downward automatically. The empty complex has trivial homology;
    a nonempty complex is augmented over the empty simplex.
    """
    closed = set()
    stack = [frozenset(s) for s in simplices]
    for s in stack:
        if s and s not in closed:
            closed.add(s)
            _close_down(s, closed)
    if not closed:
        return HomologyProfile({}, True, field)
    by_dim = {}
    for s in closed:
        by_dim.setdefault(len(s) - 1, []).append(tuple(sorted(s)))
    top = max(by_dim)
    basis = {d: sorted(by_dim.get(d, [])) for d in range(top + 1)}
    index = {d: {s: i for i, s in enumerate(basis[d])} for d in basis}
    diffs = {}
    one = field.one
    for d in range(1, top + 1):
        rows, cols = len(basis[d - 1]), len(basis[d])
        mat = [[field.zero] * cols for _ in range(rows)]
        for j, s in enumerate(basis[d]):
            sign = one
            for k in range(len(s)):
                face = s[:k] + s[k + 1:]
                mat[index[d - 1][face]][j] = sign
                sign = field.neg(sign)
        diffs[d] = Matrix(rows, cols, tuple(tuple(r) for r in mat), field)
    # augmentation: every vertex maps to the generator of the empty simplex
    diffs[0] = Matrix(1, len(basis[0]), (tuple(one for _ in basis[0]),), field)
    dims = {}
    prev_rank = rank(diffs[0])
    ker_prev = len(basis[0]) - prev_rank
    dims[-1] = 1 - prev_rank
    for d in range(0, top + 1):
        nxt = rank(diffs[d + 1]) if d + 1 in diffs else 0
        dims[d] = ker_prev - nxt
        if d + 1 in diffs:
            ker_prev = len(basis[d + 1]) - rank(diffs[d + 1])
    return HomologyProfile(dims, True, field)


def _close_down(s, closed):
    for v in s:
        face = s - {v}
        if face and face not in closed:
            closed.add(face)
            _close_down(face, closed)


@dataclass
class BCResult:
    """The broken circuit complex of a geometric lattice under an atom order."""

    atom_order: tuple[int, ...]
    simplices: set                      # frozensets of atom element indices
    reduced_simplices: set              # the cone base: simplices without the apex
    apex: int
    full_homology: HomologyProfile
    reduced_homology: HomologyProfile
    increasing_chain_counts: dict       # element -> number of label-increasing chains

    def simplex_counts(self) -> dict:
        return dict(Counter(len(s) - 1 for s in self.simplices))


def bc_complex(l: Lattice, atom_order=None, field: Field | None = None) -> BCResult:
    """Label covers by the largest atom joining up to them, collect the
    label-increasing saturated chains from the bottom, and take homology of
    the resulting complex and of its cone base."""
    if not is_geometric(l):
        raise NotGeometric("broken circuit complexes need a geometric lattice")
    field = field or Field.rationals()
    if atom_order is None:
        atom_order = tuple(sorted(l.atoms))
    else:
        atom_order = tuple(atom_order)
        if sorted(atom_order) != sorted(l.atoms):
            raise SheafLatError("atom_order must be a permutation of the atoms")
    pos = {a: i for i, a in enumerate(atom_order)}

    p = l.poset
    cover_up = {x: [] for x in p.elements()}
    from .posets import covers
    for x, y in covers(p):
        cover_up[x].append(y)

    def label(x: int, y: int) -> int:
        best = None
        for a in l.atoms:
            if l.join(x, a) == y and (best is None or pos[a] > pos[best]):
                best = a
        if best is None:
            raise NotGeometric(f"cover {x} < {y} not reachable by a single atom")
        return best

    simplices = set()
    counts = Counter({l.bottom: 1})

    def walk(x: int, labels: tuple):
        if labels:
            simplices.add(frozenset(labels))
            counts[x] += 1
        for y in cover_up[x]:
            a = label(x, y)
            if not labels or pos[a] > pos[labels[-1]]:
                walk(y, labels + (a,))

    walk(l.bottom, ())
    apex = atom_order[-1]
    reduced = {s for s in simplices if apex not in s}
    return BCResult(atom_order, simplices, reduced, apex,
                    simplicial_homology(simplices, field),
                    simplicial_homology(reduced, field),
                    dict(counts))
