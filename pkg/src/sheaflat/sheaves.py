"""Sheaves on posets: vector-space dimensions per element plus structure
map matrices for every comparable pair, verified to be functorial."""

from __future__ import annotations

from .errors import MapNotMonotone, SheafLatError, VerificationError
from .fields import Field
from .linalg import Matrix, Subspace
from .posets import Poset


class Sheaf:
    """A contravariant functor to vector spaces.

    ``maps[(x, y)]`` for x <= y is the structure map F(y) -> F(x): a matrix
    with dim F(y) columns and dim F(x) rows. Identity maps on (x, x) are
    implicit and need not be supplied.
    """

    def __init__(self, poset: Poset, field: Field, dims, maps, validate: bool = True):
        self.poset = poset
        self.field = field
        self.dims = tuple(dims)
        if len(self.dims) != poset.n:
            raise SheafLatError("one dimension per poset element required")
        self.maps = dict(maps)
        for x in range(poset.n):
            self.maps[(x, x)] = Matrix.identity(field, self.dims[x])
        for (x, y), m in self.maps.items():
            if not poset.leq(x, y):
                raise SheafLatError(f"structure map on non-relation {x} <= {y}")
            if (m.rows, m.cols) != (self.dims[x], self.dims[y]):
                raise SheafLatError(f"structure map shape mismatch at ({x},{y})")
        for x in range(poset.n):
            for y in range(poset.n):
                if poset.leq(x, y) and (x, y) not in self.maps:
                    raise SheafLatError(f"missing structure map for {x} <= {y}")
        if validate:
            self._check_functorial()

    def _check_functorial(self):
        p = self.poset
        for y in range(p.n):
            up = p.up_mask(y) & ~(1 << y)
            down = p.down_mask(y) & ~(1 << y)
            for x in range(p.n):
                if not (down >> x) & 1:
                    continue
                for z in range(p.n):
                    if (up >> z) & 1:
                        lhs = self.maps[(x, y)].mul(self.maps[(y, z)])
                        if lhs.entries != self.maps[(x, z)].entries:
                            raise VerificationError(
                                f"functoriality fails on {x} <= {y} <= {z}")

    def map(self, x: int, y: int) -> Matrix:
        return self.maps[(x, y)]

    def dim(self, x: int) -> int:
        return self.dims[x]


def constant_sheaf(p: Poset, field: Field, k: int) -> Sheaf:
    """The constant sheaf of dimension k: identity structure maps."""
    ident = Matrix.identity(field, k)
    maps = {}
    for x in range(p.n):
        for y in range(p.n):
            if x != y and p.leq(x, y):
                maps[(x, y)] = ident
    return Sheaf(p, field, [k] * p.n, maps, validate=False)


def restrict_sheaf(f: Sheaf, sub: Poset, element_map) -> Sheaf:
    """Pull back f along an order-preserving element map sub -> f.poset."""
    element_map = list(element_map)
    if len(element_map) != sub.n:
        raise SheafLatError("element map size mismatch")
    for x in range(sub.n):
        for y in range(sub.n):
            if sub.leq(x, y) and not f.poset.leq(element_map[x], element_map[y]):
                raise MapNotMonotone(f"map breaks {x} <= {y}")
    dims = [f.dims[element_map[x]] for x in range(sub.n)]
    maps = {}
    for x in range(sub.n):
        for y in range(sub.n):
            if x != y and sub.leq(x, y):
                maps[(x, y)] = f.map(element_map[x], element_map[y])
    return Sheaf(sub, f.field, dims, maps, validate=False)


def natural_sheaf(al) -> Sheaf:
    """The natural sheaf of an arrangement lattice.

    F(x) is the subspace x in the coordinates of its own RREF basis; the
    structure map for x <= y (reverse inclusion: y is a subspace of x) is
    the change-of-basis matrix of the inclusion.
    """
    poset = al.poset
    field = al.arrangement.field
    dims = [al.dim_of(x) for x in poset.elements()]
    maps = {}
    for x in poset.elements():
        sx: Subspace = al.subspace_of[x]
        for y in poset.elements():
            if x != y and poset.leq(x, y):
                sy: Subspace = al.subspace_of[y]
                cols = []
                for row in sy.basis.entries:
                    coords = sx.coords_of(row)
                    if coords is None:
                        raise VerificationError("reverse inclusion violated")
                    cols.append(coords)
                maps[(x, y)] = Matrix(sx.dim, sy.dim,
                                      tuple(tuple(c[i] for c in cols) for i in range(sx.dim)),
                                      field)
    return Sheaf(poset, field, dims, maps)


def modify_at_top(f: Sheaf, top: int) -> Sheaf:
    """The sheaf equal to f except zero at the given maximum element."""
    dims = list(f.dims)
    dims[top] = 0
    maps = {}
    for (x, y), m in f.maps.items():
        if x == y:
            continue
        if y == top:
            maps[(x, y)] = Matrix(dims[x], 0, ((),) * dims[x], f.field)
        elif x == top:
            maps[(x, y)] = Matrix(0, dims[y], (), f.field)
        else:
            maps[(x, y)] = m
    return Sheaf(f.poset, f.field, dims, maps, validate=False)
