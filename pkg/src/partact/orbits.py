"""Coset spaces, the induced partial action on them, and orbit counting.

Each theorem-level identity here is computed from two independent sides
and compared; a mismatch raises :class:`TheoremViolation` with a witness.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ArgumentError, InvalidGlobalActionError, TheoremViolation
from .group import Subgroup
from .partial import (
    PartialAction,
    left_cosets,
    make_partial_action,
    partial_orbit,
    partial_stabilizer,
    restrict_partial,
    upper_sets,
)


@dataclass(frozen=True)
class Coset:
    representative: int
    members: frozenset[int]

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class CosetSpace:
    base: int
    stabilizer: Subgroup
    cosets: tuple[Coset, ...]

    def __len__(self) -> int:
        return len(self.cosets)

    def locate(self, a: int) -> int | None:
        """Index of the coset containing group element ``a``."""
        for i, c in enumerate(self.cosets):
            if a in c.members:
                return i
        return None


def coset_space(A: PartialAction, x: int) -> CosetSpace:
    """The cosets ``g^-1 G_x`` with ``x in D_g``, ordered by least element."""
    stab = partial_stabilizer(A, x)
    upper, _ = upper_sets(A, x)
    cosets = tuple(Coset(rep, members) for rep, members in left_cosets(A.group, stab, upper))
    if len(cosets) * len(stab) != len(upper):
        raise TheoremViolation("coset count differs from |G^x|/|G_x|", {"x": A.xlabel(x)})
    return CosetSpace(x, stab, cosets)


def coset_label(A: PartialAction, space: CosetSpace, i: int) -> str:
    rep = space.cosets[i].representative
    head = "" if rep == 0 else A.glabel(rep)
    return f"{head}G_{A.xlabel(space.base)}"


@dataclass(frozen=True)
class InducedPartialAction:
    space: CosetSpace
    action: PartialAction


def induced_coset_action(A: PartialAction, x: int) -> InducedPartialAction:
    """The partial action of G on ``G^x/G_x`` obtained by restricting left translation.

    Domains come from the closed form ``{g^-1 G_x : x in D_g & D_{g h^-1}}``
    and are compared against ``C & h^-1 C`` computed by translating cosets.
    """
    G = A.group
    m = G.order
    inv, table = G.inv, G.table
    space = coset_space(A, x)
    which = {a: i for i, c in enumerate(space.cosets) for a in c.members}
    as_sets = {c.members: i for i, c in enumerate(space.cosets)}

    closed: dict[int, set[int]] = {}
    definitional: dict[int, set[int]] = {}
    for h in range(m):
        hinv = inv[h]
        closed[hinv] = {
            which[inv[g]]
            for g in range(m)
            if x in A.domains[g] and x in A.domains[table[g][hinv]]
        }
        translated = set()
        for c in space.cosets:
            image = frozenset(table[hinv][a] for a in c.members)
            if image in as_sets:
                translated.add(as_sets[image])
        definitional[hinv] = translated
        if closed[hinv] != definitional[hinv]:
            bad = min(closed[hinv] ^ definitional[hinv])
            raise TheoremViolation(
                "closed-form and definitional coset domains differ",
                {"x": A.xlabel(x), "h": G.label(h), "coset": coset_label(A, space, bad)},
            )

    maps: dict[int, list[tuple[int, int]]] = {}
    for h in range(m):
        pairs = []
        for i in sorted(closed[inv[h]]):
            j = which.get(table[h][space.cosets[i].representative])
            if j is None or j not in closed[h]:
                raise TheoremViolation(
                    "translated coset leaves D_h",
                    {"x": A.xlabel(x), "h": G.label(h), "coset": coset_label(A, space, i)},
                )
            pairs.append((i, j))
        maps[h] = pairs

    labels = [coset_label(A, space, i) for i in range(len(space.cosets))]
    action = make_partial_action(G, labels, {k: sorted(v) for k, v in closed.items()}, maps)
    return InducedPartialAction(space, action)


@dataclass(frozen=True)
class PartialGMap:
    source: PartialAction
    target: PartialAction
    mapping: tuple[int, ...]


@dataclass(frozen=True)
class GMapCheck:
    ok: bool
    bijective: bool
    witness: dict[str, str] | None = None

    @property
    def isomorphism(self) -> bool:
        return self.ok and self.bijective


def check_partial_g_map(phi: PartialGMap) -> GMapCheck:
    """Scan every ``(g, x)`` with ``x in D_{g^-1}`` for the partial G-map conditions."""
    src, tgt, f = phi.source, phi.target, phi.mapping
    if not src.group.same_as(tgt.group):
        raise ArgumentError("partial G-map between actions of different groups")
    if len(f) != src.carrier.size or any(not 0 <= y < tgt.carrier.size for y in f):
        raise ArgumentError("mapping is not a function from source to target carrier")
    G = src.group
    bijective = sorted(f) == list(range(tgt.carrier.size))
    for g in range(G.order):
        gi = G.inv[g]
        fg, tg = src.fn(g), tgt.fn(g)
        for x in sorted(src.domains[gi]):
            if f[x] not in tgt.domains[gi]:
                return GMapCheck(False, bijective, {"g": G.label(g), "x": src.xlabel(x), "reason": "domain"})
            if f[fg[x]] != tg.get(f[x]):
                return GMapCheck(False, bijective, {"g": G.label(g), "x": src.xlabel(x), "reason": "equivariance"})
    return GMapCheck(True, bijective)


def orbit_stabilizer_iso(A: PartialAction, x: int) -> PartialGMap:
    """``alpha_{g^-1}(x) -> g^-1 G_x`` from the partial orbit of ``x`` onto ``G^x/G_x``.

    Well-definedness, the partial G-map conditions and bijectivity are all
    checked; any failure is a :class:`TheoremViolation`.
    """
    G = A.group
    orbit = sorted(partial_orbit(A, x))
    local = {y: i for i, y in enumerate(orbit)}
    source = restrict_partial(A, orbit)
    induced = induced_coset_action(A, x)
    space = induced.space
    mapping: list[int | None] = [None] * len(orbit)
    for g in range(G.order):
        if x not in A.domains[g]:
            continue
        gi = G.inv[g]
        y = local[A.fn(gi)[x]]
        c = space.locate(gi)
        if mapping[y] is not None and mapping[y] != c:
            raise TheoremViolation(
                "orbit map is not well defined",
                {"x": A.xlabel(x), "y": A.xlabel(orbit[y]), "g": G.label(g)},
            )
        mapping[y] = c
    phi = PartialGMap(source, induced.action, tuple(mapping))
    chk = check_partial_g_map(phi)
    if not chk.isomorphism:
        raise TheoremViolation(
            "orbit map is not a partial G-isomorphism",
            chk.witness or {"x": A.xlabel(x), "reason": "not bijective"},
        )
    return phi


def global_orbit_size(A: PartialAction, x: int) -> int:
    """Predicted size of the orbit of ``x`` in any enveloping action.

    ``|O_x^alpha| + |complement of G^x| / |G_x|``.
    """
    orbit = partial_orbit(A, x)
    stab = partial_stabilizer(A, x)
    _, comp = upper_sets(A, x)
    q, r = divmod(len(comp), len(stab))
    if r:
        raise TheoremViolation(
            "|G_x| does not divide the upper complement",
            {"x": A.xlabel(x), "complement": str(len(comp)), "stabilizer": str(len(stab))},
        )
    return len(orbit) + q


def fixed_point_counts(B) -> list[int]:
    """``|Fix(beta_g)|`` for each group element, in index order."""
    return [sum(1 for t, u in enumerate(p) if t == u) for p in B.perms]


def burnside_orbit_count(B) -> int:
    counts = fixed_point_counts(B)
    q, r = divmod(sum(counts), B.group.order)
    if r:
        raise InvalidGlobalActionError(
            f"fixed-point total {sum(counts)} is not divisible by |G| = {B.group.order}"
        )
    return q
