"""Partial actions of a finite group on a finite set.

A partial action stores, for every group element ``g``, its domain ``D_g``
and the partial bijection ``alpha_g: D_{g^-1} -> D_g`` as a sorted tuple of
``(source, target)`` pairs. Domains and maps are kept side by side on
purpose: the validator insists they agree, which catches transcription
slips in hand-entered data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import ArgumentError, BoundsError, TheoremViolation
from .group import Group, Subgroup, subgroup_closure
from .report import ValidationReport


@dataclass(frozen=True)
class FiniteSet:
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            dup = next(lab for lab in self.labels if self.labels.count(lab) > 1)
            raise ArgumentError(f"duplicate carrier label {dup!r}")

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {lab: i for i, lab in enumerate(self.labels)}
            object.__setattr__(self, "_idx", idx)
        return idx[label]


Pairs = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class PartialAction:
    group: Group
    carrier: FiniteSet
    domains: tuple[frozenset[int], ...]
    maps: tuple[Pairs, ...]

    def fn(self, g: int) -> dict[int, int]:
        """``alpha_g`` as a dict. Later duplicates of a source win."""
        cache = self.__dict__.get("_fns")
        if cache is None:
            cache = tuple(dict(p) for p in self.maps)
            object.__setattr__(self, "_fns", cache)
        return cache[g]

    def apply(self, g: int, x: int) -> int | None:
        return self.fn(g).get(x)

    def glabel(self, g: int) -> str:
        return self.group.elements[g]

    def xlabel(self, x: int) -> str:
        return self.carrier.labels[x]

    def same_structure(self, other: PartialAction) -> bool:
        return (
            self.group.same_as(other.group)
            and self.carrier.size == other.carrier.size
            and self.domains == other.domains
            and self.maps == other.maps
        )


def make_partial_action(
    group: Group,
    labels: Sequence[str],
    domains: Mapping[int, Iterable[int]] | None = None,
    maps: Mapping[int, Mapping[int, int] | Iterable[tuple[int, int]]] | None = None,
) -> PartialAction:
    """Build a (not yet validated) partial action from index data.

    Group elements missing from ``domains``/``maps`` get an empty domain and
    empty map, except the identity, whose omission means ``D_1 = X`` and
    ``alpha_1 = id``.
    """
    carrier = FiniteSet(tuple(labels))
    n = carrier.size
    domains = dict(domains or {})
    maps = dict(maps or {})
    for g in list(domains) + list(maps):
        if not isinstance(g, int) or not 0 <= g < group.order:
            raise BoundsError(f"group index {g!r} out of range")

    doms = []
    for g in range(group.order):
        if g in domains:
            d = frozenset(domains[g])
        elif g == 0:
            d = frozenset(range(n))
        else:
            d = frozenset()
        for x in d:
            if not isinstance(x, int) or not 0 <= x < n:
                raise BoundsError(f"carrier index {x!r} in D_{group.elements[g]} out of range")
        doms.append(d)

    mps = []
    for g in range(group.order):
        if g in maps:
            m = maps[g]
            pairs = list(m.items()) if isinstance(m, Mapping) else [tuple(p) for p in m]
        elif g == 0:
            pairs = [(x, x) for x in range(n)]
        else:
            pairs = []
        for s, t in pairs:
            for v in (s, t):
                if not isinstance(v, int) or not 0 <= v < n:
                    raise BoundsError(f"carrier index {v!r} in alpha_{group.elements[g]} out of range")
        mps.append(tuple(sorted(pairs)))
    return PartialAction(group, carrier, tuple(doms), tuple(mps))


def validate_partial_action(A: PartialAction) -> ValidationReport:
    """Check the partial-action axioms exhaustively.

    Structural checks run first. A map with a repeated source cannot be read
    as a function, so in that case the axiom checks are skipped.
    """
    G = A.group
    n = A.carrier.size
    m = G.order
    gl, xl = A.glabel, A.xlabel
    rep = ValidationReport("partial-action")

    # structure: ranges, one entry per slot, functional maps
    bad = None
    if len(A.domains) != m or len(A.maps) != m:
        bad = {"g": "*"}
    else:
        for g in range(m):
            if any(not 0 <= x < n for x in A.domains[g]):
                bad = {"g": gl(g)}
                break
            seen = set()
            for s, t in A.maps[g]:
                if not (0 <= s < n and 0 <= t < n):
                    bad = {"g": gl(g)}
                    break
                if s in seen:
                    bad = {"g": gl(g), "x": xl(s)}
                    break
                seen.add(s)
            if bad:
                break
    rep.add("structure", bad, "maps must be functions on in-range indices")
    if bad:
        for name in ("map-sources", "map-targets", "identity", "bijective", "axiom-ii", "axiom-iii", "inverse-consistency"):
            rep.skip(name, "structure check failed")
        return rep

    inv = G.inv
    fns = [A.fn(g) for g in range(m)]
    D = A.domains

    w = None
    for g in range(m):
        for s in sorted(fns[g]):
            if s not in D[inv[g]]:
                w = {"g": gl(g), "x": xl(s)}
                break
        if w:
            break
    rep.add("map-sources", w, "every source of alpha_g lies in D_{g^-1}")

    w = None
    for g in range(m):
        seen = {}
        for s, t in A.maps[g]:
            if t not in D[g]:
                w = {"g": gl(g), "x": xl(s), "image": xl(t)}
                break
            if t in seen:
                w = {"g": gl(g), "x": xl(seen[t]), "y": xl(s), "image": xl(t)}
                break
            seen[t] = s
        if w:
            break
    rep.add("map-targets", w, "targets lie in D_g and are pairwise distinct")

    w = None
    if D[0] != frozenset(range(n)):
        x = min(frozenset(range(n)) - D[0])
        w = {"g": gl(0), "x": xl(x)}
    else:
        for x in range(n):
            if fns[0].get(x) != x:
                w = {"g": gl(0), "x": xl(x)}
                break
    rep.add("identity", w, "D_1 = X and alpha_1 = id")

    w = None
    for g in range(m):
        if set(fns[g]) != D[inv[g]]:
            x = min(set(fns[g]) ^ D[inv[g]])
            w = {"g": gl(g), "x": xl(x), "side": "domain"}
        elif set(fns[g].values()) != D[g] or len(set(fns[g].values())) != len(fns[g]):
            x = min(set(fns[g].values()) ^ D[g]) if set(fns[g].values()) != D[g] else None
            w = {"g": gl(g), "side": "image"}
            if x is not None:
                w["x"] = xl(x)
        if w:
            break
    rep.add("bijective", w, "alpha_g is a bijection D_{g^-1} -> D_g")

    w = None
    for g in range(m):
        fg = fns[g]
        for h in range(m):
            src = D[inv[g]] & D[h]
            image = set()
            undefined = None
            for y in sorted(src):
                if y not in fg:
                    undefined = y
                    break
                image.add(fg[y])
            target = D[g] & D[G.table[g][h]]
            if undefined is not None:
                w = {"g": gl(g), "h": gl(h), "x": xl(undefined), "reason": "alpha_g undefined"}
            elif image != target:
                x = min(image ^ target)
                w = {"g": gl(g), "h": gl(h), "x": xl(x)}
            if w:
                break
        if w:
            break
    rep.add("axiom-ii", w, "alpha_g(D_{g^-1} & D_h) = D_g & D_{gh}")

    w = None
    for g in range(m):
        fg = fns[g]
        for h in range(m):
            gh = G.table[g][h]
            fh, fgh = fns[h], fns[gh]
            for x in sorted(D[inv[h]] & D[inv[gh]]):
                a = fh.get(x)
                b = fg.get(a) if a is not None else None
                if b is None or b != fgh.get(x):
                    w = {"g": gl(g), "h": gl(h), "x": xl(x)}
                    break
            if w:
                break
        if w:
            break
    rep.add("axiom-iii", w, "alpha_g(alpha_h(x)) = alpha_{gh}(x) on D_{h^-1} & D_{(gh)^-1}")

    w = None
    for g in range(m):
        back = {t: s for s, t in fns[g].items()}
        if back != fns[inv[g]]:
            x = min(set(back.items()) ^ set(fns[inv[g]].items()))[0]
            w = {"g": gl(g), "x": xl(x)}
            break
    rep.add("inverse-consistency", w, "alpha_{g^-1} = alpha_g^-1")
    return rep


def restrict_global(B, subset: Iterable[int]) -> PartialAction:
    """Restriction of a global action ``B`` to ``subset`` of its carrier.

    ``D_g = S & beta_g(S)`` and ``alpha_g`` is ``beta_g`` restricted to
    ``D_{g^-1}``. Carrier index ``i`` of the result is ``sorted(subset)[i]``.
    """
    G = B.group
    size = len(B.carrier.labels)
    sub = sorted(set(subset))
    for t in sub:
        if not isinstance(t, int) or not 0 <= t < size:
            raise BoundsError(f"index {t!r} not in a carrier of size {size}")
    local = {t: i for i, t in enumerate(sub)}
    S = frozenset(sub)
    domains = {}
    maps = {}
    for g in range(G.order):
        p = B.perms[g]
        domains[g] = [local[p[t]] for t in sub if p[t] in S]
        maps[g] = [(local[t], local[p[t]]) for t in sub if p[t] in S]
    labels = [B.carrier.labels[t] for t in sub]
    return make_partial_action(G, labels, domains, maps)


def partial_orbit(A: PartialAction, x: int) -> frozenset[int]:
    """``{alpha_{g^-1}(x) : x in D_g}``, checked to be closed under every alpha."""
    _check_point(A, x)
    inv = A.group.inv
    orbit = frozenset(A.fn(inv[g])[x] for g in range(A.group.order) if x in A.domains[g])
    for y in orbit:
        for h in range(A.group.order):
            z = A.fn(h).get(y)
            if z is not None and z not in orbit:
                raise TheoremViolation(
                    "partial orbit is not closed",
                    {"x": A.xlabel(x), "y": A.xlabel(y), "h": A.glabel(h), "image": A.xlabel(z)},
                )
    return orbit


def partial_orbits(A: PartialAction) -> list[frozenset[int]]:
    """Distinct partial orbits ordered by least element; asserted to partition X."""
    owner: dict[int, frozenset[int]] = {}
    out = []
    for x in range(A.carrier.size):
        o = partial_orbit(A, x)
        if x in owner:
            if owner[x] != o:
                raise TheoremViolation(
                    "partial orbits overlap without coinciding", {"x": A.xlabel(x)}
                )
            continue
        for y in o:
            if y in owner and owner[y] != o:
                raise TheoremViolation(
                    "partial orbits overlap without coinciding", {"x": A.xlabel(x), "y": A.xlabel(y)}
                )
            owner[y] = o
        out.append(o)
    return out


def partial_transversal(A: PartialAction) -> list[int]:
    return [min(o) for o in partial_orbits(A)]


def partial_stabilizer(A: PartialAction, x: int) -> Subgroup:
    _check_point(A, x)
    members = tuple(g for g in range(A.group.order) if A.fn(g).get(x) == x)
    closure = subgroup_closure(A.group, members)
    if closure.members != members:
        raise TheoremViolation(
            "partial stabilizer is not a subgroup",
            {"x": A.xlabel(x), "missing": A.glabel(min(set(closure.members) - set(members)))},
        )
    return closure


def upper_sets(A: PartialAction, x: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """``(G^x, complement)`` where ``G^x = {g^-1 : x in D_g}``."""
    _check_point(A, x)
    G = A.group
    upper = {G.inv[g] for g in range(G.order) if x in A.domains[g]}
    complement = set(range(G.order)) - upper
    direct = {h for h in range(G.order) if x not in A.domains[G.inv[h]]}
    if direct != complement:
        h = min(direct ^ complement)
        raise TheoremViolation("two definitions of the upper complement differ", {"x": A.xlabel(x), "h": G.label(h)})
    return tuple(sorted(upper)), tuple(sorted(complement))


class SubsetWitness(NamedTuple):
    """``alpha_applied(x) = image`` leaves the subset."""

    applied: int
    x: int
    image: int


def partial_g_subset_witness(A: PartialAction, subset: Iterable[int]) -> SubsetWitness | None:
    S = set(subset)
    for x in S:
        _check_point(A, x)
    G = A.group
    for g in range(G.order):
        f = A.fn(G.inv[g])
        for x in sorted(S & A.domains[g]):
            y = f.get(x)
            if y not in S:
                return SubsetWitness(G.inv[g], x, y)
    return None


def is_partial_g_subset(A: PartialAction, subset: Iterable[int]) -> bool:
    return partial_g_subset_witness(A, subset) is None


def restrict_partial(A: PartialAction, subset: Iterable[int]) -> PartialAction:
    """The partial action induced on a partial G-subset (indices re-based to ``sorted(subset)``)."""
    sub = sorted(set(subset))
    w = partial_g_subset_witness(A, sub)
    if w is not None:
        raise ArgumentError(
            f"not a partial G-subset: alpha_{A.glabel(w.applied)}({A.xlabel(w.x)}) = {A.xlabel(w.image)}"
        )
    local = {x: i for i, x in enumerate(sub)}
    S = frozenset(sub)
    domains = {g: [local[x] for x in A.domains[g] & S] for g in range(A.group.order)}
    maps = {
        g: [(local[s], local[t]) for s, t in A.maps[g] if s in S]
        for g in range(A.group.order)
    }
    return make_partial_action(A.group, [A.xlabel(x) for x in sub], domains, maps)


def left_cosets(G: Group, stabilizer: Subgroup, upper: Iterable[int]) -> list[tuple[int, frozenset[int]]]:
    """Left cosets ``aH`` for ``a`` in ``upper``, as ``(min element, members)`` sorted by min."""
    seen: dict[frozenset[int], int] = {}
    for a in upper:
        c = stabilizer.left_coset(a)
        if c not in seen:
            seen[c] = min(c)
    return sorted(((rep, c) for c, rep in seen.items()), key=lambda rc: rc[0])


@dataclass(frozen=True)
class PartialOrbitReport:
    base: int
    orbit: tuple[int, ...]
    stabilizer: Subgroup
    upper: tuple[int, ...]
    upper_complement: tuple[int, ...]
    cosets: tuple[tuple[int, tuple[int, ...]], ...]


def orbit_report(A: PartialAction, x: int) -> PartialOrbitReport:
    orbit = partial_orbit(A, x)
    stab = partial_stabilizer(A, x)
    upper, comp = upper_sets(A, x)
    cosets = left_cosets(A.group, stab, upper)
    if len(orbit) * len(stab) != len(upper):
        raise TheoremViolation(
            "|O_x| * |G_x| != |G^x|",
            {"x": A.xlabel(x), "orbit": str(len(orbit)), "stabilizer": str(len(stab)), "upper": str(len(upper))},
        )
    if len(comp) % len(stab):
        raise TheoremViolation("|G_x| does not divide the upper complement", {"x": A.xlabel(x)})
    covered = set().union(*(c for _, c in cosets)) if cosets else set()
    if covered != set(upper) or sum(len(c) for _, c in cosets) != len(upper):
        raise TheoremViolation("cosets do not partition G^x", {"x": A.xlabel(x)})
    return PartialOrbitReport(
        x,
        tuple(sorted(orbit)),
        stab,
        upper,
        comp,
        tuple((rep, tuple(sorted(c))) for rep, c in cosets),
    )


def _check_point(A: PartialAction, x: int) -> None:
    if not isinstance(x, int) or not 0 <= x < A.carrier.size:
        raise BoundsError(f"carrier index {x!r} out of range")
