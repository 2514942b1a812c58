"""Chain complexes of sheaves on posets and their exact homology.

The working complex is T_* on non-degenerate chains; the degenerate
complex S_* exists only in truncated form for the homotopy-equivalence
cross-check on small posets. The differential follows the face rule

    d s_sigma = F(top face)(s)_{d_0 sigma} + sum_{i>=1} (-1)^i s_{d_i sigma}

with chains stored top-first, so face 0 removes the element carrying the
sheaf value and applies the structure map.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import AugmentationIncompatible, SheafLatError, VerificationError
from .fields import Field
from .linalg import (Matrix, Subspace, induced_map_on_quotient, kernel_basis,
                     quotient_basis, rank)
from .posets import Chain, Poset
from .sheaves import Sheaf

AUGMENTATION = Chain(())  # basis tag for the degree -1 augmentation slot


@dataclass(frozen=True)
class HomologyProfile:
    """Homology dimensions per degree; zero degrees are omitted."""

    dims: dict
    reduced: bool
    field: Field

    def dim(self, i: int) -> int:
        return self.dims.get(i, 0)

    def nonzero(self) -> dict:
        return {i: d for i, d in sorted(self.dims.items()) if d}

    def __eq__(self, other):
        if isinstance(other, dict):
            return self.nonzero() == {i: d for i, d in other.items() if d}
        return (self.nonzero(), self.reduced, self.field) == (
            other.nonzero(), other.reduced, other.field)


class ChainComplex:
    """A bounded complex of based vector spaces with exact differentials.

    ``basis[i]`` lists (chain, sheaf-coordinate offset is implicit) for
    degree i; ``diff[i]`` maps degree i to degree i-1. d o d = 0 is checked
    at construction.
    """

    def __init__(self, field: Field, lo: int, hi: int, dims, diff, basis=None):
        self.field = field
        self.lo = lo
        self.hi = hi
        self.dims = dict(dims)
        self.diff = dict(diff)
        self.basis = dict(basis or {})
        for i in range(lo, hi + 1):
            self.dims.setdefault(i, 0)
        for i in range(lo + 1, hi + 1):
            d = self.diff.get(i)
            if d is None:
                if self.dims[i] and self.dims[i - 1]:
                    raise SheafLatError(f"missing differential in degree {i}")
                self.diff[i] = Matrix.zeros(field, self.dims[i - 1], self.dims[i])
            elif (d.rows, d.cols) != (self.dims[i - 1], self.dims[i]):
                raise SheafLatError(f"differential shape mismatch in degree {i}")
        for i in range(lo + 2, hi + 1):
            if not self.diff[i - 1].mul(self.diff[i]).is_zero():
                raise VerificationError(f"d o d != 0 between degrees {i} and {i - 2}")

    def dim(self, i: int) -> int:
        return self.dims.get(i, 0)

    def differential(self, i: int) -> Matrix:
        if i in self.diff:
            return self.diff[i]
        return Matrix.zeros(self.field, self.dim(i - 1), self.dim(i))

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * d for i, d in self.dims.items())


@dataclass
class DegreeHomology:
    """Cycles, boundaries and a deterministic quotient basis in one degree."""

    cycles: Subspace
    boundaries: Subspace
    quotient: Matrix  # rows represent the chosen homology basis

    @property
    def dim(self) -> int:
        return self.quotient.rows


def homology_data(c: ChainComplex) -> dict[int, DegreeHomology]:
    """Per-degree kernel/image/quotient data, computed exactly.

    Degrees are independent, so the computation may be spread over the
    thread pool capped by SHEAFLAT_THREADS.
    """

    def one_degree(i: int) -> DegreeHomology:
        d_out = c.differential(i)
        cycles = kernel_basis(d_out) if d_out.rows else Subspace.full(c.field, c.dim(i))
        d_in = c.differential(i + 1)
        boundaries = Subspace.from_matrix(d_in.transpose()) if d_in.cols else \
            Subspace.zero(c.field, c.dim(i))
        return DegreeHomology(cycles, boundaries, quotient_basis(boundaries, cycles))

    degrees = list(range(c.lo, c.hi + 1))
    threads = int(os.environ.get("SHEAFLAT_THREADS", "1"))
    if threads > 1 and len(degrees) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one_degree, degrees))
    else:
        results = [one_degree(i) for i in degrees]
    return dict(zip(degrees, results))


def homology(c: ChainComplex, reduced: bool | None = None) -> HomologyProfile:
    """Homology dimensions: dim ker d_i - rank d_{i+1} in every degree."""
    dims = {}
    for i in range(c.lo, c.hi + 1):
        d_out = c.differential(i)
        ker_dim = c.dim(i) - rank(d_out) if d_out.rows else c.dim(i)
        dims[i] = ker_dim - rank(c.differential(i + 1))
    if reduced is None:
        reduced = c.lo < 0
    return HomologyProfile(dims, reduced, c.field)


class ChainMap:
    """Per-degree matrices commuting with the differentials (verified)."""

    def __init__(self, source: ChainComplex, target: ChainComplex, mats):
        self.source = source
        self.target = target
        self.mats = dict(mats)
        lo = max(source.lo, target.lo)
        hi = min(source.hi, target.hi)
        for i in range(lo, hi + 1):
            self.mats.setdefault(i, Matrix.zeros(source.field, target.dim(i), source.dim(i)))
        for i in range(lo + 1, hi + 1):
            lhs = target.differential(i).mul(self.mats[i])
            rhs = self.mats[i - 1].mul(source.differential(i))
            if lhs.entries != rhs.entries:
                raise VerificationError(f"chain map does not commute in degree {i}")

    def matrix(self, i: int) -> Matrix:
        if i in self.mats:
            return self.mats[i]
        return Matrix.zeros(self.source.field, self.target.dim(i), self.source.dim(i))

    def induced(self, i: int, src_data: DegreeHomology, tgt_data: DegreeHomology) -> Matrix:
        return induced_map_on_quotient(self.matrix(i), src_data.cycles,
                                       src_data.boundaries, tgt_data.cycles,
                                       tgt_data.boundaries)


# -- building the T complex ------------------------------------------------


def _nondegenerate_chains(p: Poset, max_len: int):
    by_degree = {n: [] for n in range(max_len + 1)}
    stack = []

    def extend(top_first):
        n = len(top_first) - 1
        by_degree[n].append(tuple(top_first))
        if n == max_len:
            return
        below = p.down_mask(top_first[-1]) & ~(1 << top_first[-1])
        for nxt in range(p.n):
            if (below >> nxt) & 1:
                top_first.append(nxt)
                extend(top_first)
                top_first.pop()

    for start in range(p.n):
        extend([start])
    return {n: sorted(cs) for n, cs in by_degree.items()}


def chain_complex_T(p: Poset, f: Sheaf, augmented: bool = False,
                    augment_to=None) -> ChainComplex:
    """The complex on non-degenerate chains with coefficients in f.

    When ``augmented``, ``augment_to`` must be (dim0, {x: Matrix}) carrying
    the target space F(bottom) and the maps F(x) -> F(bottom); the
    augmentation occupies degree -1 and its compatibility with f is
    verified.
    """
    if f.poset is not p:
        raise SheafLatError("sheaf lives on a different poset")
    field = f.field
    max_len = p.rank if p.n else 0
    chains = _nondegenerate_chains(p, max_len) if p.n else {}
    offsets = {}
    dims = {}
    basis = {}
    for n, cs in chains.items():
        off = 0
        basis[n] = []
        for ch in cs:
            offsets[ch] = off
            off += f.dim(ch[0])
            basis[n].append(Chain(ch))
        dims[n] = off
    diff = {}
    zero = field.zero
    for n in range(1, max_len + 1):
        rows = dims.get(n - 1, 0)
        cols = dims.get(n, 0)
        mat = [[zero] * cols for _ in range(rows)]
        for ch in chains.get(n, ()):
            col0 = offsets[ch]
            width = f.dim(ch[0])
            # face 0: drop the top, apply the structure map
            face0 = ch[1:]
            m = f.map(ch[1], ch[0])
            r0 = offsets[face0]
            for i in range(m.rows):
                mrow = m.entries[i]
                target = mat[r0 + i]
                for j in range(width):
                    if mrow[j]:
                        target[col0 + j] = field.add(target[col0 + j], mrow[j])
            # faces 1..n: drop a lower element, keep the value
            sign_neg = True
            for k in range(1, n + 1):
                face = ch[:k] + ch[k + 1:]
                rk_off = offsets[face]
                for j in range(width):
                    cur = mat[rk_off + j][col0 + j]
                    mat[rk_off + j][col0 + j] = field.sub(cur, field.one) if sign_neg \
                        else field.add(cur, field.one)
                sign_neg = not sign_neg
        diff[n] = Matrix(rows, cols, tuple(tuple(r) for r in mat), field)
    lo = 0
    if augmented:
        if augment_to is None:
            raise SheafLatError("augmented complex needs augment_to data")
        dim0, eps_maps = augment_to
        for x in range(p.n):
            if x not in eps_maps:
                raise AugmentationIncompatible(f"missing augmentation map at {x}")
            m = eps_maps[x]
            if (m.rows, m.cols) != (dim0, f.dim(x)):
                raise AugmentationIncompatible(f"augmentation shape mismatch at {x}")
        for x in range(p.n):
            for y in range(p.n):
                if x != y and p.leq(x, y):
                    composed = eps_maps[x].mul(f.map(x, y))
                    if composed.entries != eps_maps[y].entries:
                        raise AugmentationIncompatible(
                            f"augmentation not functorial through {x} <= {y}")
        rows = dim0
        cols = dims.get(0, 0)
        mat = [[zero] * cols for _ in range(rows)]
        for ch in chains.get(0, ()):
            m = eps_maps[ch[0]]
            c0 = offsets[ch]
            for i in range(rows):
                for j in range(m.cols):
                    if m.entries[i][j]:
                        mat[i][c0 + j] = field.add(mat[i][c0 + j], m.entries[i][j])
        diff[0] = Matrix(rows, cols, tuple(tuple(r) for r in mat), field)
        dims[-1] = dim0
        basis[-1] = [AUGMENTATION]
        lo = -1
    return ChainComplex(field, lo, max_len if p.n else 0, dims, diff, basis)


def chain_complex_S(p: Poset, f: Sheaf, truncate_at: int) -> ChainComplex:
    """The degenerate-chain complex, truncated above simplicial degree
    ``truncate_at``. Homology is only valid strictly below the truncation
    degree; intended for small-poset cross-checks against T."""
    if f.poset is not p:
        raise SheafLatError("sheaf lives on a different poset")
    field = f.field
    chains = {n: [] for n in range(truncate_at + 1)}

    def extend(top_first):
        n = len(top_first) - 1
        chains[n].append(tuple(top_first))
        if n == truncate_at:
            return
        below = p.down_mask(top_first[-1])  # weakly below: repeats allowed
        for nxt in range(p.n):
            if (below >> nxt) & 1:
                top_first.append(nxt)
                extend(top_first)
                top_first.pop()

    for start in range(p.n):
        extend([start])
    chains = {n: sorted(cs) for n, cs in chains.items()}
    offsets = {}
    dims = {}
    for n, cs in chains.items():
        off = 0
        for ch in cs:
            offsets[(n, ch)] = off
            off += f.dim(ch[0])
        dims[n] = off
    diff = {}
    for n in range(1, truncate_at + 1):
        rows = dims.get(n - 1, 0)
        cols = dims.get(n, 0)
        mat = [[field.zero] * cols for _ in range(rows)]
        for ch in chains.get(n, ()):
            col0 = offsets[(n, ch)]
            width = f.dim(ch[0])
            face0 = ch[1:]
            m = f.map(ch[1], ch[0])
            r0 = offsets[(n - 1, face0)]
            for i in range(m.rows):
                for j in range(width):
                    if m.entries[i][j]:
                        mat[r0 + i][col0 + j] = field.add(mat[r0 + i][col0 + j],
                                                          m.entries[i][j])
            sign_neg = True
            for k in range(1, n + 1):
                face = ch[:k] + ch[k + 1:]
                rk_off = offsets[(n - 1, face)]
                for j in range(width):
                    cur = mat[rk_off + j][col0 + j]
                    mat[rk_off + j][col0 + j] = field.sub(cur, field.one) if sign_neg \
                        else field.add(cur, field.one)
                sign_neg = not sign_neg
        diff[n] = Matrix(rows, cols, tuple(tuple(r) for r in mat), field)
    return ChainComplex(field, 0, truncate_at, dims, diff)
