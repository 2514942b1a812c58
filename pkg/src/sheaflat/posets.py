"""Finite graded posets: order relation, covers, intervals, chains, Moebius.

Elements are dense integer indices 0..n-1; an optional label table keeps
track of where they came from. The order relation is stored as per-element
up-set bitmasks, which makes comparisons and subposet extraction cheap.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotComparable, NotGraded, SheafLatError


@dataclass(frozen=True)
class Chain:
    """A strictly decreasing chain, stored top element first.

    ``elements[0]`` is the maximum, which is where sheaf values live in the
    chain complexes built on top of this module.
    """

    elements: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.elements) - 1

    @property
    def top(self) -> int:
        return self.elements[0]

    def drop(self, i: int) -> "Chain":
        """Face obtained by deleting position i (0 = the top)."""
        return Chain(self.elements[:i] + self.elements[i + 1:])


class Poset:
    """A finite graded poset, validated eagerly at construction."""

    def __init__(self, leq_rows, labels=None, ranks=None):
        """leq_rows: n x n boolean matrix, leq_rows[i][j] iff i <= j."""
        n = len(leq_rows)
        self.n = n
        up = []
        for i, row in enumerate(leq_rows):
            if len(row) != n:
                raise SheafLatError("leq matrix is not square")
            mask = 0
            for j, v in enumerate(row):
                if v:
                    mask |= 1 << j
            up.append(mask)
        self._up = up
        self._down = [0] * n
        for i in range(n):
            for j in range(n):
                if (up[i] >> j) & 1:
                    self._down[j] |= 1 << i
        self.labels = tuple(labels) if labels is not None else tuple(range(n))
        self._validate_order()
        self.rank_of = tuple(ranks) if ranks is not None else self._standard_grading()
        self._validate_grading()
        self._mobius_memo = {}

    # -- order queries -------------------------------------------------

    def leq(self, i: int, j: int) -> bool:
        return bool((self._up[i] >> j) & 1)

    def lt(self, i: int, j: int) -> bool:
        return i != j and self.leq(i, j)

    def up_mask(self, i: int) -> int:
        return self._up[i]

    def down_mask(self, i: int) -> int:
        return self._down[i]

    def elements(self):
        return range(self.n)

    def minimum(self) -> int | None:
        for i in range(self.n):
            if self._down[i] == 1 << i:
                # i is minimal; it is the minimum iff below everything
                if self._up[i] == (1 << self.n) - 1:
                    return i
        return None

    def maximum(self) -> int | None:
        for i in range(self.n):
            if self._down[i] == (1 << self.n) - 1:
                return i
        return None

    def minimal_elements(self) -> list[int]:
        return [i for i in range(self.n) if self._down[i] == 1 << i]

    @property
    def rank(self) -> int:
        """rk(P): the largest element rank (0 for the empty poset)."""
        return max(self.rank_of, default=0)

    # -- validation ----------------------------------------------------

    def _validate_order(self):
        n = self.n
        for i in range(n):
            if not self.leq(i, i):
                raise SheafLatError("relation is not reflexive")
        for i in range(n):
            for j in range(n):
                if i != j and self.leq(i, j) and self.leq(j, i):
                    raise SheafLatError("relation is not antisymmetric")
        for i in range(n):
            for j in range(n):
                if self.leq(i, j) and (self._up[j] & ~self._up[i]):
                    raise SheafLatError("relation is not transitive")

    def _standard_grading(self) -> tuple[int, ...]:
        """Longest chain length from a minimal element, computed upward."""
        order = sorted(range(self.n), key=lambda i: bin(self._down[i]).count("1"))
        rk = [0] * self.n
        for i in order:
            below = self._down[i] & ~(1 << i)
            best = -1
            for j in range(self.n):
                if (below >> j) & 1:
                    best = max(best, rk[j])
            rk[i] = best + 1
        return tuple(rk)

    def _validate_grading(self):
        for i in range(self.n):
            for j in range(self.n):
                if self.lt(i, j):
                    if self.rank_of[i] >= self.rank_of[j]:
                        raise NotGraded("x < y with rk(x) >= rk(y)")
        for x, y in covers(self):
            if self.rank_of[y] != self.rank_of[x] + 1:
                raise NotGraded("cover with rank jump != 1")

    # -- subposets -----------------------------------------------------

    def subposet(self, keep) -> tuple["Poset", list[int]]:
        """Induced subposet on the given elements (in index order).

        Returns the new poset plus the element map new index -> old index.
        The grading is re-based (standard grading of the subposet).
        """
        keep = sorted(keep)
        rows = [[self.leq(i, j) for j in keep] for i in keep]
        labs = [self.labels[i] for i in keep]
        return Poset(rows, labels=labs), keep


# -- operations ---------------------------------------------------------


def covers(p: Poset) -> list[tuple[int, int]]:
    """All pairs (x, y) with y covering x."""
    out = []
    for x in range(p.n):
        strict_up = p.up_mask(x) & ~(1 << x)
        for y in range(p.n):
            if (strict_up >> y) & 1:
                between = strict_up & (p.down_mask(y) & ~(1 << y))
                if between == 0:
                    out.append((x, y))
    return out


def interval(p: Poset, x: int, y: int) -> tuple[Poset, list[int]]:
    if not p.leq(x, y):
        raise NotComparable(f"{x} is not <= {y}")
    mask = p.up_mask(x) & p.down_mask(y)
    return p.subposet([i for i in range(p.n) if (mask >> i) & 1])


def up_set(p: Poset, x: int) -> tuple[Poset, list[int]]:
    mask = p.up_mask(x)
    return p.subposet([i for i in range(p.n) if (mask >> i) & 1])


def strict_down_set(p: Poset, x: int) -> tuple[Poset, list[int]]:
    mask = p.down_mask(x) & ~(1 << x)
    return p.subposet([i for i in range(p.n) if (mask >> i) & 1])


def mobius(p: Poset, x: int, y: int) -> int:
    """mu(x, y) by the defining recursion, memoized on the poset."""
    if not p.leq(x, y):
        raise NotComparable(f"{x} is not <= {y}")
    memo = p._mobius_memo
    key = (x, y)
    if key in memo:
        return memo[key]
    if x == y:
        memo[key] = 1
        return 1
    total = 0
    between = p.up_mask(x) & p.down_mask(y) & ~(1 << y)
    for z in range(p.n):
        if (between >> z) & 1:
            total += mobius(p, x, z)
    memo[key] = -total
    return -total


def enumerate_chains(p: Poset, length: int) -> list[Chain]:
    """All strictly increasing chains of length+1 elements.

    Chains are returned top-first, sorted lexicographically by their stored
    element tuples; this is the basis order used by the chain complexes.
    """
    if length < 0:
        return []
    chains = []

    def extend(prefix, top):
        # prefix is built top-first; extend downward
        if len(prefix) == length + 1:
            chains.append(tuple(prefix))
            return
        below = p.down_mask(top) & ~(1 << top)
        for nxt in range(p.n):
            if (below >> nxt) & 1:
                prefix.append(nxt)
                extend(prefix, nxt)
                prefix.pop()

    for start in range(p.n):
        extend([start], start)
    return [Chain(c) for c in sorted(chains)]
