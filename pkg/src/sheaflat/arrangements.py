"""Hyperplane arrangements over Q or GF(p): intersection lattices, the
natural sheaf data, characteristic polynomial, beta invariant, and the
standard generator families (coordinate, braid, full projective field)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import ArrangementParseError, NotAnAtom, RankTooSmall, SheafLatError
from .fields import Field
from .lattices import Lattice, deletion, restriction
from .linalg import Matrix, Subspace, kernel_basis
from .posets import Poset, mobius


@dataclass(frozen=True)
class Arrangement:
    """A set of linear hyperplanes, each the kernel of a normal functional."""

    field: Field
    ambient_dim: int
    normals: tuple[tuple, ...]
    names: tuple[str, ...] = ()

    @staticmethod
    def make(field: Field, ambient_dim: int, normals, names=None) -> "Arrangement":
        rows = [tuple(field.of(v) for v in n) for n in normals]
        if not rows:
            raise SheafLatError("an arrangement needs at least one hyperplane")
        seen = []
        for idx, row in enumerate(rows):
            if len(row) != ambient_dim:
                raise SheafLatError(f"normal {idx} has wrong length")
            if not any(row):
                raise SheafLatError(f"normal {idx} is zero")
            canon = _projectivize(field, row)
            if canon in seen:
                raise SheafLatError(f"normal {idx} duplicates an earlier hyperplane")
            seen.append(canon)
        if names is None:
            names = tuple(f"h{i}" for i in range(len(rows)))
        return Arrangement(field, ambient_dim, tuple(rows), tuple(names))

    @property
    def size(self) -> int:
        return len(self.normals)

    def hyperplane(self, i: int) -> Subspace:
        return kernel_basis(Matrix.from_rows(self.field, [self.normals[i]], self.ambient_dim))


def _projectivize(field: Field, row):
    lead = next(v for v in row if v)
    inv = field.inv(lead)
    return tuple(field.mul(inv, v) for v in row)


class ArrangementLattice:
    """Intersections of the hyperplanes, ordered by reverse inclusion."""

    def __init__(self, arrangement: Arrangement, lattice: Lattice, subspaces):
        self.arrangement = arrangement
        self.lattice = lattice
        self.subspace_of = tuple(subspaces)

    @property
    def poset(self) -> Poset:
        return self.lattice.poset

    def dim_of(self, x: int) -> int:
        return self.subspace_of[x].dim

    @property
    def essential(self) -> bool:
        return self.subspace_of[self.lattice.top].dim == 0

    @property
    def intersection_dim(self) -> int:
        """dim of the common intersection of all hyperplanes (the space U)."""
        return self.subspace_of[self.lattice.top].dim

    def atom_for_hyperplane(self, i: int) -> int:
        h = self.arrangement.hyperplane(i)
        return self.subspace_of.index(h)


def build_lattice(a: Arrangement) -> ArrangementLattice:
    """Close the hyperplane set under intersection and order by reverse inclusion."""
    from .linalg import intersect

    field = a.field
    full = Subspace.full(field, a.ambient_dim)
    hyperplanes = [a.hyperplane(i) for i in range(a.size)]
    subspaces = {full} | set(hyperplanes)
    frontier = list(subspaces)
    while frontier:
        s = frontier.pop()
        for h in hyperplanes:
            t = intersect(s, h)
            if t not in subspaces:
                subspaces.add(t)
                frontier.append(t)
    # order by codimension, then by basis entries for determinism
    ordered = sorted(subspaces, key=lambda s: (a.ambient_dim - s.dim, _basis_key(s)))
    n = len(ordered)
    leq = [[ordered[i].contains(ordered[j]) for j in range(n)] for i in range(n)]
    ranks = [a.ambient_dim - s.dim for s in ordered]
    labels = [f"dim{s.dim}#{i}" for i, s in enumerate(ordered)]
    poset = Poset(leq, labels=labels, ranks=ranks)
    return ArrangementLattice(a, Lattice(poset), ordered)


def _basis_key(s: Subspace):
    return tuple(tuple(str(v) for v in row) for row in s.basis.entries)


# -- characteristic polynomial / beta ------------------------------------


@dataclass(frozen=True)
class CharPoly:
    """chi(t) with integer coefficients, stored low degree first."""

    coefficients: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, t: int) -> int:
        return sum(c * t ** i for i, c in enumerate(self.coefficients))

    def derivative_at(self, t: int) -> int:
        return sum(i * c * t ** (i - 1) for i, c in enumerate(self.coefficients) if i)

    def sub(self, other: "CharPoly") -> "CharPoly":
        n = max(len(self.coefficients), len(other.coefficients))
        a = list(self.coefficients) + [0] * (n - len(self.coefficients))
        b = list(other.coefficients) + [0] * (n - len(other.coefficients))
        return CharPoly(tuple(x - y for x, y in zip(a, b)))


def char_poly(al: ArrangementLattice) -> CharPoly:
    """chi(t) = sum over lattice elements of mu(0, x) t^{dim x}."""
    n = al.arrangement.ambient_dim
    coeffs = [0] * (n + 1)
    bottom = al.lattice.bottom
    for x in al.poset.elements():
        coeffs[al.dim_of(x)] += mobius(al.poset, bottom, x)
    return CharPoly(tuple(coeffs))


def beta_invariant(al: ArrangementLattice) -> int:
    """(-1)^(rk-1) * chi'(1); nonnegative for rank >= 2."""
    rk = al.lattice.rank
    if rk < 2:
        raise RankTooSmall(f"beta needs rank >= 2, got {rk}")
    beta = (-1) ** (rk - 1) * char_poly(al).derivative_at(1)
    if beta < 0:
        raise SheafLatError("beta came out negative; lattice is not geometric?")
    return beta


def sub_arrangement(a: Arrangement, keep) -> Arrangement:
    keep = list(keep)
    return Arrangement.make(a.field, a.ambient_dim,
                            [a.normals[i] for i in keep],
                            [a.names[i] for i in keep])


def charpoly_deletion_restriction_check(al: ArrangementLattice, atom: int) -> bool:
    """chi_L == chi_{L_a} - chi_{L^a}, all three computed independently."""
    del_lat, del_map = deletion(al.lattice, atom)
    res_lat, res_map = restriction(al.lattice, atom)
    chi = char_poly(al)
    chi_del = _sublattice_char_poly(al, del_lat, del_map)
    chi_res = _sublattice_char_poly(al, res_lat, res_map)
    return chi.coefficients == chi_del.sub(chi_res).coefficients


def beta_additivity_check(al: ArrangementLattice, atom: int) -> bool:
    """beta(L) = beta(L_a) + beta(L^a) at a dependent atom.

    The three betas are computed independently from the three characteristic
    polynomials. Raises NotAnAtom for a non-atom and SheafLatError when the
    atom is independent (deleting it drops the rank and the identity does
    not apply).
    """
    l = al.lattice
    if atom not in l.atoms:
        raise NotAnAtom(f"{atom} is not an atom")
    del_lat, del_map = deletion(l, atom)
    if del_lat.rank != l.rank:
        raise SheafLatError("atom is independent; beta additivity needs a dependent atom")
    res_lat, res_map = restriction(l, atom)
    beta = beta_invariant(al)
    beta_del = _derived_beta(_sublattice_char_poly(al, del_lat, del_map), del_lat.rank)
    beta_res = _derived_beta(_sublattice_char_poly(al, res_lat, res_map), res_lat.rank)
    return beta == beta_del + beta_res


def _derived_beta(chi: CharPoly, rk: int) -> int:
    return (-1) ** (rk - 1) * chi.derivative_at(1)


def _sublattice_char_poly(al: ArrangementLattice, lat: Lattice, emap) -> CharPoly:
    """chi of a deletion/restriction lattice, reusing the parent's subspaces."""
    n = al.arrangement.ambient_dim
    coeffs = [0] * (n + 1)
    for x in lat.poset.elements():
        coeffs[al.dim_of(emap[x])] += mobius(lat.poset, lat.bottom, x)
    return CharPoly(tuple(coeffs))


# -- generators -----------------------------------------------------------


def coordinate(n: int, field: Field | None = None) -> Arrangement:
    """The n coordinate hyperplanes x_i = 0 in dimension n."""
    field = field or Field.rationals()
    normals = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    return Arrangement.make(field, n, normals, [f"x{i + 1}=0" for i in range(n)])


def braid(n: int, field: Field | None = None) -> Arrangement:
    """The hyperplanes x_i - x_j = 0 for i < j in dimension n."""
    if n < 2:
        raise SheafLatError("braid needs n >= 2")
    field = field or Field.rationals()
    normals, names = [], []
    for i, j in itertools.combinations(range(n), 2):
        v = [0] * n
        v[i], v[j] = 1, -1
        normals.append(v)
        names.append(f"x{i + 1}-x{j + 1}=0")
    return Arrangement.make(field, n, normals, names)


def full_field(p: int, n: int) -> Arrangement:
    """All hyperplanes of GF(p)^n: one normal per projective point."""
    field = Field.prime(p)
    normals = []
    for v in itertools.product(range(p), repeat=n):
        if any(v) and next(x for x in v if x) == 1:  # projective representative
            normals.append(list(v))
    return Arrangement.make(field, n, normals)


def from_file(path) -> Arrangement:
    """Parse the line-oriented arrangement format; see parse_arrangement."""
    with open(path, encoding="utf-8") as fh:
        return parse_arrangement(fh.read())


def parse_arrangement(text: str) -> Arrangement:
    """Parse `field Q|F<p>`, `dim <n>`, then one normal vector per line.

    Entries are integers or fractions a/b; `#` starts a comment. Raises
    ArrangementParseError with a line number on malformed input.
    """
    field = None
    dim = None
    normals = []
    normal_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if field is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "field":
                raise ArrangementParseError("expected 'field Q' or 'field F<p>'", lineno)
            if parts[1] == "Q":
                field = Field.rationals()
            elif parts[1].startswith("F"):
                try:
                    field = Field.prime(int(parts[1][1:]))
                except (ValueError, SheafLatError) as exc:
                    raise ArrangementParseError(str(exc), lineno) from exc
            else:
                raise ArrangementParseError(f"unknown field {parts[1]!r}", lineno)
            continue
        if dim is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "dim":
                raise ArrangementParseError("expected 'dim <n>'", lineno)
            try:
                dim = int(parts[1])
            except ValueError as exc:
                raise ArrangementParseError("dimension is not an integer", lineno) from exc
            if dim < 1:
                raise ArrangementParseError("dimension must be positive", lineno)
            continue
        entries = line.split()
        if len(entries) != dim:
            raise ArrangementParseError(f"expected {dim} entries, got {len(entries)}", lineno)
        try:
            row = [Fraction(e) for e in entries]
        except (ValueError, ZeroDivisionError) as exc:
            raise ArrangementParseError(f"bad entry: {exc}", lineno) from exc
        normals.append(row)
        normal_lines.append(lineno)
    if field is None or dim is None or not normals:
        raise ArrangementParseError("missing field/dim header or normals")
    # reuse Arrangement.make validation, but re-report with line numbers
    for i in range(len(normals)):
        try:
            sub = [tuple(field.of(v) for v in n) for n in normals[: i + 1]]
            if not any(sub[-1]):
                raise SheafLatError("normal is zero")
            canon = [_projectivize(field, r) for r in sub]
            if canon[-1] in canon[:-1]:
                raise SheafLatError("normal duplicates an earlier hyperplane")
        except (SheafLatError, ZeroDivisionError) as exc:
            raise ArrangementParseError(str(exc), normal_lines[i]) from exc
    return Arrangement.make(field, dim, normals)
