"""Finite groups as index-based Cayley tables.

Every element is an integer in ``range(order)``; the identity is always 0.
Labels are carried for display only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BoundsError, InvalidOrderError, LayoutError, NotAGroupError


@dataclass(frozen=True)
class Group:
    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    identity: int = field(default=0, init=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def label(self, a: int) -> str:
        return self.elements[a]

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(label) from None

    @property
    def _index(self) -> dict[str, int]:
        cache = self.__dict__.get("_label_index")
        if cache is None:
            cache = {lab: i for i, lab in enumerate(self.elements)}
            object.__setattr__(self, "_label_index", cache)
        return cache

    def same_as(self, other: Group) -> bool:
        """Same multiplication table (labels ignored)."""
        return self.table == other.table


@dataclass(frozen=True)
class Subgroup:
    parent: Group
    members: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, a: object) -> bool:
        return a in self._set

    def __iter__(self):
        return iter(self.members)

    @property
    def _set(self) -> frozenset[int]:
        s = self.__dict__.get("_member_set")
        if s is None:
            s = frozenset(self.members)
            object.__setattr__(self, "_member_set", s)
        return s

    def as_set(self) -> frozenset[int]:
        return self._set

    def left_coset(self, a: int) -> frozenset[int]:
        t = self.parent.table[a]
        return frozenset(t[h] for h in self.members)


def cyclic_label(k: int) -> str:
    if k == 0:
        return "1"
    if k == 1:
        return "g"
    return f"g^{k}"


def build_cyclic_group(n: int) -> Group:
    """Cyclic group of order ``n``; element ``k`` is ``g^k``."""
    if not isinstance(n, int) or n < 1:
        raise InvalidOrderError(f"cyclic group order must be a positive integer, got {n!r}")
    table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    inv = tuple((-a) % n for a in range(n))
    return Group(tuple(cyclic_label(k) for k in range(n)), table, inv)


def build_group_from_cayley(labels: Sequence[str], table: Sequence[Sequence[int]]) -> Group:
    """Validate a Cayley table and wrap it as a :class:`Group`.

    Checks, in order: shape and ranges, identity at index 0, the Latin-square
    property, and associativity. Each failure names its witness.
    """
    n = len(table)
    if n == 0:
        raise InvalidOrderError("a group needs at least one element")
    labels = tuple(str(lab) for lab in labels)
    if len(labels) != n:
        raise NotAGroupError(f"{len(labels)} labels for a {n}x{n} table")
    if len(set(labels)) != n:
        dup = next(lab for lab in labels if labels.count(lab) > 1)
        raise NotAGroupError(f"duplicate element label {dup!r}")
    rows = []
    for a, row in enumerate(table):
        if len(row) != n:
            raise NotAGroupError(f"row {a} has length {len(row)}, expected {n}")
        for b, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise NotAGroupError(f"entry ({a},{b}) = {v!r} is not an element index")
        rows.append(tuple(row))
    t = tuple(rows)

    if any(t[0][a] != a or t[a][0] != a for a in range(n)):
        for e in range(1, n):
            if all(t[e][a] == a and t[a][e] == a for a in range(n)):
                raise LayoutError(f"identity found at index {e}; it must be at index 0")
        a = next(a for a in range(n) if t[0][a] != a or t[a][0] != a)
        raise NotAGroupError(f"no identity element (index 0 fails at column/row {a})")

    for a in range(n):
        if len(set(t[a])) != n:
            raise NotAGroupError(f"row {a} is not a permutation (not a Latin square)")
    for b in range(n):
        if len({t[a][b] for a in range(n)}) != n:
            raise NotAGroupError(f"column {b} is not a permutation (not a Latin square)")

    for a in range(n):
        ta = t[a]
        for b in range(n):
            ab = ta[b]
            tb = t[b]
            tab = t[ab]
            for c in range(n):
                if tab[c] != ta[tb[c]]:
                    raise NotAGroupError(f"associativity fails at (a,b,c) = ({a},{b},{c})")

    # Latin + identity at 0 gives unique two-sided inverses once associative.
    inv = tuple(t[a].index(0) for a in range(n))
    return Group(labels, t, inv)


def subgroup_closure(G: Group, seed: Iterable[int]) -> Subgroup:
    """Smallest subgroup of ``G`` containing ``seed``."""
    gens = set()
    for a in seed:
        if not isinstance(a, int) or not 0 <= a < G.order:
            raise BoundsError(f"element index {a!r} out of range for group of order {G.order}")
        gens.add(a)
    members = {0}
    frontier = [0]
    # In a finite group, closure under right multiplication by generators suffices.
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                b = G.table[a][s]
                if b not in members:
                    members.add(b)
                    nxt.append(b)
        frontier = nxt
    return Subgroup(G, tuple(sorted(members)))
