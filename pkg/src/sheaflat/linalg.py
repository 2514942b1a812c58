"""Dense exact linear algebra over Q and GF(p).

Everything is immutable and pure: matrices are tuples of row tuples,
subspaces are canonical reduced-row-echelon bases with zero rows dropped,
so structural equality doubles as mathematical equality. Elimination
skips zero entries, which is what makes the sparse chain-complex
differentials cheap despite the dense representation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AmbientMismatch, NotWellDefined, SheafLatError
from .fields import Field


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples, rows x cols
    field: Field

    @staticmethod
    def from_rows(field: Field, rows, cols: int | None = None) -> "Matrix":
        rows = [tuple(field.of(v) for v in row) for row in rows]
        if cols is None:
            if not rows:
                raise SheafLatError("column count required for empty matrix")
            cols = len(rows[0])
        for row in rows:
            if len(row) != cols:
                raise SheafLatError("ragged rows")
        return Matrix(len(rows), cols, tuple(rows), field)

    @staticmethod
    def zeros(field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return Matrix(rows, cols, tuple((z,) * cols for _ in range(rows)), field)

    @staticmethod
    def identity(field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return Matrix(n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), field)

    def is_zero(self) -> bool:
        return all(not v for row in self.entries for v in row)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else ((),) * self.cols, self.field)

    def stack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols or self.field != other.field:
            raise SheafLatError("stack shape/field mismatch")
        return Matrix(self.rows + other.rows, self.cols, self.entries + other.entries, self.field)

    def mul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows or self.field != other.field:
            raise SheafLatError("matmul shape/field mismatch")
        p = self.field.p
        z = self.field.zero
        out = []
        for arow in self.entries:
            acc = [z] * other.cols
            for k, a in enumerate(arow):
                if not a:
                    continue
                brow = other.entries[k]
                for j, b in enumerate(brow):
                    if b:
                        acc[j] = acc[j] + a * b
            if p is not None:
                acc = [v % p for v in acc]
            out.append(tuple(acc))
        return Matrix(self.rows, other.cols, tuple(out), self.field)

    def apply(self, vec):
        """Matrix times a column vector given as a sequence; returns a tuple."""
        p = self.field.p
        out = []
        for row in self.entries:
            acc = self.field.zero
            for a, v in zip(row, vec):
                if a and v:
                    acc = acc + a * v
            out.append(acc % p if p is not None else acc)
        return tuple(out)

    def neg(self) -> "Matrix":
        f = self.field
        return Matrix(self.rows, self.cols, tuple(tuple(f.neg(v) for v in row) for row in self.entries), f)


def _rref_rows(rows, cols, field):
    """In-place RREF of a list of row lists; returns (nonzero rows, pivots)."""
    p = field.p
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(cols):
        pr = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        prow = rows[r]
        pv = prow[c]
        if pv != field.one:
            pinv = field.inv(pv)
            if p is None:
                for j in range(c, cols):
                    if prow[j]:
                        prow[j] = prow[j] * pinv
            else:
                for j in range(c, cols):
                    if prow[j]:
                        prow[j] = prow[j] * pinv % p
        nz = [j for j in range(c, cols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                row = rows[i]
                if p is None:
                    for j in nz:
                        row[j] = row[j] - f * prow[j]
                else:
                    for j in nz:
                        row[j] = (row[j] - f * prow[j]) % p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows[:r], pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form with zero rows dropped, plus pivot columns."""
    rows = [list(row) for row in m.entries]
    nonzero, pivots = _rref_rows(rows, m.cols, m.field)
    return Matrix(len(nonzero), m.cols, tuple(tuple(r) for r in nonzero), m.field), pivots


def rank(m: Matrix) -> int:
    return rref(m)[0].rows


@dataclass(frozen=True)
class Subspace:
    """Canonical subspace: basis rows in RREF with zero rows dropped."""

    ambient_dim: int
    basis: Matrix

    @staticmethod
    def from_matrix(m: Matrix) -> "Subspace":
        return Subspace(m.cols, rref(m)[0])

    @staticmethod
    def from_rows(field: Field, rows, ambient_dim: int) -> "Subspace":
        return Subspace.from_matrix(Matrix.from_rows(field, rows, ambient_dim))

    @staticmethod
    def zero(field: Field, ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, Matrix(0, ambient_dim, (), field))

    @staticmethod
    def full(field: Field, ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, Matrix.identity(field, ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def field(self) -> Field:
        return self.basis.field

    def coords_of(self, vec):
        """Coordinates of a vector in the RREF basis, or None if outside.

        RREF basis rows have disjoint pivot support, so the coordinates can
        be read off at the pivot columns and verified by re-expansion.
        """
        fld = self.field
        pivots = pivot_columns(self.basis)
        coeffs = [vec[c] for c in pivots]
        residual = list(vec)
        p = fld.p
        for coeff, brow in zip(coeffs, self.basis.entries):
            if coeff:
                for j, b in enumerate(brow):
                    if b:
                        residual[j] = residual[j] - coeff * b
        if p is not None:
            residual = [v % p for v in residual]
        if any(residual):
            return None
        return tuple(coeffs)

    def contains_vector(self, vec) -> bool:
        return self.coords_of(tuple(self.field.of(v) for v in vec)) is not None

    def contains(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise AmbientMismatch("ambient dimensions differ")
        return all(self.coords_of(row) is not None for row in other.basis.entries)


def pivot_columns(rref_matrix: Matrix) -> list[int]:
    """Pivot columns of a matrix already in RREF (leading entries)."""
    out = []
    for row in rref_matrix.entries:
        out.append(next(j for j, v in enumerate(row) if v))
    return out


def kernel_basis(m: Matrix) -> Subspace:
    """Canonical basis of the right kernel {v : m v = 0}."""
    red, pivots = rref(m)
    piv_set = set(pivots)
    free = [c for c in range(m.cols) if c not in piv_set]
    fld = m.field
    z, o = fld.zero, fld.one
    rows = []
    for fcol in free:
        v = [z] * m.cols
        v[fcol] = o
        for i, pcol in enumerate(pivots):
            v[pcol] = fld.neg(red.entries[i][fcol])
        rows.append(v)
    return Subspace.from_rows(fld, rows, m.cols)


def annihilator(s: Subspace) -> Subspace:
    """Vectors pairing to zero with s under the standard bilinear form."""
    return kernel_basis(s.basis) if s.dim else Subspace.full(s.field, s.ambient_dim)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatch("ambient dimensions differ")
    constraints = annihilator(a).basis.stack(annihilator(b).basis)
    return kernel_basis(constraints)


def sum_subspace(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatch("ambient dimensions differ")
    return Subspace.from_matrix(a.basis.stack(b.basis))


def express_in_rows(rows_matrix: Matrix, vec) -> tuple | None:
    """Coefficients c with c . rows_matrix == vec, or None if inconsistent.

    Unlike Subspace.coords_of this does not require RREF input.
    """
    fld = rows_matrix.field
    # Solve rows_matrix^T c = vec by eliminating the augmented system.
    cols = rows_matrix.rows
    aug = []
    for j in range(rows_matrix.cols):
        aug.append([rows_matrix.entries[i][j] for i in range(cols)] + [fld.of(vec[j])])
    red, pivots = _rref_rows(aug, cols + 1, fld)
    if cols in pivots:
        return None
    sol = [fld.zero] * cols
    for row, pc in zip(red, pivots):
        sol[pc] = row[cols]
    return tuple(sol)


def quotient_basis(im: Subspace, ker: Subspace) -> Matrix:
    """Deterministic representatives of ker/im by greedy pivot extension.

    Scans the RREF basis rows of ker in order, keeping those that enlarge
    the span of im plus the rows already kept.
    """
    if not ker.contains(im):
        raise NotWellDefined("im is not contained in ker")
    fld = ker.field
    current = im.basis
    kept = []
    for row in ker.basis.entries:
        grown = rref(current.stack(Matrix(1, ker.ambient_dim, (row,), fld)))[0]
        if grown.rows > current.rows:
            kept.append(row)
            current = grown
    return Matrix(len(kept), ker.ambient_dim, tuple(kept), fld)


def coords_in_quotient(vec, quot: Matrix, im: Subspace) -> tuple:
    """Coordinates of [vec] in the quotient basis, reducing modulo im."""
    stacked = quot.stack(im.basis)
    coeffs = express_in_rows(stacked, vec)
    if coeffs is None:
        raise NotWellDefined("vector not in the subspace spanned by quotient + im")
    return coeffs[: quot.rows]


def induced_map_on_quotient(f: Matrix, ker_sub: Subspace, im_sub: Subspace,
                            ker_tgt: Subspace, im_tgt: Subspace) -> Matrix:
    """Matrix of the map ker_sub/im_sub -> ker_tgt/im_tgt induced by f.

    Rows index the target quotient basis, columns the source one. Raises
    NotWellDefined when f fails to carry im_sub into im_tgt or ker_sub
    into ker_tgt.
    """
    fld = f.field
    for row in im_sub.basis.entries:
        img = f.mul(Matrix(len(row), 1, tuple((v,) for v in row), fld))
        if im_tgt.coords_of(tuple(r[0] for r in img.entries)) is None:
            raise NotWellDefined("f does not carry im into im")
    q_src = quotient_basis(im_sub, ker_sub)
    q_tgt = quotient_basis(im_tgt, ker_tgt)
    cols = []
    for row in q_src.entries:
        img = f.mul(Matrix(len(row), 1, tuple((v,) for v in row), fld))
        img_vec = tuple(r[0] for r in img.entries)
        if ker_tgt.coords_of(img_vec) is None:
            raise NotWellDefined("f does not carry ker into ker")
        cols.append(coords_in_quotient(img_vec, q_tgt, im_tgt))
    out = Matrix(q_tgt.rows, q_src.rows,
                 tuple(tuple(col[i] for col in cols) for i in range(q_tgt.rows)), fld)
    return out
