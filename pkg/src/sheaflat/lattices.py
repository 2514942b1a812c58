"""Lattice structure on top of Poset: joins, meets, atoms, deletion and
restriction, independence of atom sets, Boolean/geometric recognition."""

from __future__ import annotations


from .errors import NotALattice, NotAnAtom
from .posets import Poset, up_set


class Lattice:
    """A finite lattice with precomputed join/meet tables.

    Construction fails with NotALattice when some pair of elements lacks a
    unique supremum or infimum.
    """

    def __init__(self, poset: Poset):
        self.poset = poset
        n = poset.n
        if n == 0:
            raise NotALattice("the empty poset is not a lattice")
        self.join_table = [[0] * n for _ in range(n)]
        self.meet_table = [[0] * n for _ in range(n)]
        for x in range(n):
            for y in range(x, n):
                j = self._bound(x, y, upper=True)
                m = self._bound(x, y, upper=False)
                self.join_table[x][y] = self.join_table[y][x] = j
                self.meet_table[x][y] = self.meet_table[y][x] = m
        self.bottom = self._fold(self.meet_table)
        self.top = self._fold(self.join_table)
        self.atoms = tuple(x for x in range(n) if poset.rank_of[x] == 1
                           and poset.leq(self.bottom, x)
                           and self._covers_bottom(x))

    def _bound(self, x: int, y: int, upper: bool) -> int:
        p = self.poset
        if upper:
            common = p.up_mask(x) & p.up_mask(y)
        else:
            common = p.down_mask(x) & p.down_mask(y)
        candidates = [z for z in range(p.n) if (common >> z) & 1]
        if not candidates:
            raise NotALattice(f"no common {'upper' if upper else 'lower'} bound for {x},{y}")
        for z in candidates:
            if all(p.leq(z, w) if upper else p.leq(w, z) for w in candidates):
                return z
        raise NotALattice(f"no unique {'join' if upper else 'meet'} for {x},{y}")

    def _fold(self, table) -> int:
        acc = 0
        for x in range(1, self.poset.n):
            acc = table[acc][x]
        return acc

    def _covers_bottom(self, x: int) -> bool:
        p = self.poset
        between = p.up_mask(self.bottom) & p.down_mask(x) & ~(1 << self.bottom) & ~(1 << x)
        return between == 0

    # -- basic queries ---------------------------------------------------

    def join(self, x: int, y: int) -> int:
        return self.join_table[x][y]

    def meet(self, x: int, y: int) -> int:
        return self.meet_table[x][y]

    def join_all(self, xs) -> int:
        acc = self.bottom
        for x in xs:
            acc = self.join_table[acc][x]
        return acc

    @property
    def rank(self) -> int:
        return self.poset.rank_of[self.top]

    def atoms_below(self, x: int) -> list[int]:
        return [a for a in self.atoms if self.poset.leq(a, x)]

    def sublattice(self, keep) -> tuple["Lattice", list[int]]:
        """Induced lattice on the given elements plus map back to the parent."""
        sub, emap = self.poset.subposet(keep)
        return Lattice(sub), emap


# -- predicates ----------------------------------------------------------


def is_atomic(l: Lattice) -> bool:
    """Every element is the join of the atoms below it."""
    return all(l.join_all(l.atoms_below(x)) == x for x in l.poset.elements())


def is_geometric(l: Lattice) -> bool:
    """Rank submodularity: rk(x v y) + rk(x ^ y) <= rk(x) + rk(y)."""
    if not is_atomic(l):
        return False
    rk = l.poset.rank_of
    n = l.poset.n
    for x in range(n):
        for y in range(x, n):
            if rk[l.join(x, y)] + rk[l.meet(x, y)] > rk[x] + rk[y]:
                return False
    return True


def is_independent(l: Lattice, atom_set) -> bool:
    """Every proper subset has a strictly smaller join."""
    atom_set = list(atom_set)
    for a in atom_set:
        if a not in l.atoms:
            raise NotAnAtom(f"{a} is not an atom")
    full = l.join_all(atom_set)
    for i in range(len(atom_set)):
        rest = atom_set[:i] + atom_set[i + 1:]
        if l.join_all(rest) == full:
            return False
    return True


def find_dependent_atom(l: Lattice):
    """Smallest-index atom a with join(atoms minus a) = join(atoms), if any."""
    full = l.join_all(l.atoms)
    for a in l.atoms:
        rest = [b for b in l.atoms if b != a]
        if l.join_all(rest) == full:
            return a
    return None


def is_boolean(l: Lattice) -> bool:
    """True iff the full atom set is independent (then L is a Boolean lattice)."""
    return is_independent(l, l.atoms)


# -- deletion / restriction -------------------------------------------------


def deletion(l: Lattice, a: int) -> tuple[Lattice, list[int]]:
    """Sublattice of joins of atoms other than a (the empty join = bottom)."""
    if a not in l.atoms:
        raise NotAnAtom(f"{a} is not an atom")
    rest = [b for b in l.atoms if b != a]
    members = {l.bottom} | set(rest)
    frontier = list(members)
    while frontier:
        x = frontier.pop()
        for b in rest:
            j = l.join(x, b)
            if j not in members:
                members.add(j)
                frontier.append(j)
    return l.sublattice(members)


def restriction(l: Lattice, a: int) -> tuple[Lattice, list[int]]:
    """The interval of elements >= a, as a lattice with minimum a."""
    if a not in l.atoms:
        raise NotAnAtom(f"{a} is not an atom")
    sub, emap = up_set(l.poset, a)
    return Lattice(sub), emap
