"""Enveloping actions: construction, verification and comparison.

``globalize`` builds the quotient of ``G x X`` by

    (g, x) ~ (h, y)  iff  x in D_{g^-1 h} and alpha_{h^-1 g}(x) = y

with ``beta_h [g, x] = [hg, x]``. Orbit sizes predicted from the partial
action alone are then compared against the constructed orbits in
``verify_globalization``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import ArgumentError, InvalidGlobalActionError, SizeCapExceeded, TheoremViolation
from .group import Group
from .orbits import burnside_orbit_count, global_orbit_size
from .partial import (
    FiniteSet,
    PartialAction,
    partial_orbit,
    partial_orbits,
    partial_stabilizer,
    partial_transversal,
    restrict_global,
)
from .report import ValidationReport

DEFAULT_MAX_SIZE = 10**6


@dataclass(frozen=True)
class GlobalAction:
    group: Group
    carrier: FiniteSet
    perms: tuple[tuple[int, ...], ...]
    orbit_decomposition: tuple[tuple[int, ...], ...]

    def label(self, t: int) -> str:
        return self.carrier.labels[t]

    def orbit_of(self, t: int) -> frozenset[int]:
        seen = {t}
        stack = [t]
        while stack:
            u = stack.pop()
            for p in self.perms:
                v = p[u]
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return frozenset(seen)

    def stabilizer(self, t: int) -> tuple[int, ...]:
        return tuple(g for g, p in enumerate(self.perms) if p[t] == t)


def compute_orbits(perms: Sequence[Sequence[int]], size: int) -> tuple[tuple[int, ...], ...]:
    """Connected components of the graph ``t -> perms[g][t]``, each sorted, ordered by least element."""
    parent = list(range(size))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for p in perms:
        for t in range(size):
            a, b = find(t), find(p[t])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for t in range(size):
        groups.setdefault(find(t), []).append(t)
    return tuple(tuple(v) for v in sorted(groups.values()))


def make_global_action(
    group: Group,
    labels: Sequence[str],
    perms: Sequence[Sequence[int]],
    orbits: Sequence[Sequence[int]] | None = None,
) -> GlobalAction:
    """Wrap permutation data. Only shape and ranges are checked here; see :func:`check_global_action`."""
    carrier = FiniteSet(tuple(labels))
    size = carrier.size
    if len(perms) != group.order:
        raise InvalidGlobalActionError(f"{len(perms)} permutations for a group of order {group.order}")
    rows = []
    for g, p in enumerate(perms):
        if len(p) != size or any(not isinstance(v, int) or not 0 <= v < size for v in p):
            raise InvalidGlobalActionError(f"beta_{group.label(g)} is not a map on {size} points")
        rows.append(tuple(p))
    if orbits is None:
        orbs = compute_orbits(rows, size)
    else:
        orbs = tuple(tuple(sorted(o)) for o in orbits)
    return GlobalAction(group, carrier, tuple(rows), orbs)


def check_global_action(B: GlobalAction, report: ValidationReport | None = None) -> ValidationReport:
    rep = report if report is not None else ValidationReport("global-action")
    G = B.group
    size = B.carrier.size
    lab = B.label

    w = None
    for g, p in enumerate(B.perms):
        if len(set(p)) != size:
            w = {"g": G.label(g)}
            break
    rep.add("permutations", w, "each beta_g is a bijection of T")

    w = None
    for t in range(size):
        if B.perms[0][t] != t:
            w = {"t": lab(t)}
            break
    rep.add("identity", w, "beta_1 = id")

    w = None
    for g in range(G.order):
        pg = B.perms[g]
        for h in range(G.order):
            ph, pgh = B.perms[h], B.perms[G.table[g][h]]
            for t in range(size):
                if pg[ph[t]] != pgh[t]:
                    w = {"g": G.label(g), "h": G.label(h), "t": lab(t)}
                    break
            if w:
                break
        if w:
            break
    rep.add("homomorphism", w, "beta_g beta_h = beta_gh")

    w = None
    for g in range(G.order):
        pg, pi = B.perms[g], B.perms[G.inv[g]]
        for t in range(size):
            if pi[pg[t]] != t:
                w = {"g": G.label(g), "t": lab(t)}
                break
        if w:
            break
    rep.add("inverse", w, "beta_{g^-1} = beta_g^-1")

    recomputed = compute_orbits(B.perms, size)
    w = None
    if tuple(sorted(B.orbit_decomposition)) != recomputed:
        stated = {t: o for o in B.orbit_decomposition for t in o}
        for o in recomputed:
            t = o[0]
            if tuple(stated.get(t, ())) != o:
                w = {"t": lab(t)}
                break
        if w is None:
            w = {"t": "*"}
    rep.add("orbit-decomposition", w, "stated orbits match the orbits recomputed from beta")
    return rep


@dataclass(frozen=True)
class Globalization:
    action: GlobalAction
    embedding: tuple[int, ...]
    witnesses: tuple[tuple[int, int], ...]


def globalize(A: PartialAction, max_size: int = DEFAULT_MAX_SIZE) -> Globalization:
    """Construct the enveloping action of a valid partial action."""
    G = A.group
    m, n = G.order, A.carrier.size
    if m * n > max_size:
        raise SizeCapExceeded(f"|G|*|X| = {m * n} exceeds the size cap {max_size}")
    table, inv = G.table, G.inv
    fns = [A.fn(g) for g in range(m)]

    def related(g: int, x: int) -> frozenset[int]:
        out = []
        gi = inv[g]
        for h in range(m):
            k = table[gi][h]  # g^-1 h
            if x in A.domains[k]:
                out.append(h * n + fns[inv[k]][x])
        return frozenset(out)

    cls = [related(p // n, p % n) for p in range(m * n)]

    def pair(p: int) -> dict[str, str]:
        return {"g": G.label(p // n), "x": A.xlabel(p % n)}

    for p in range(m * n):
        if p not in cls[p]:
            raise TheoremViolation("relation on G x X is not reflexive", pair(p))
        for q in cls[p]:
            if p not in cls[q]:
                raise TheoremViolation("relation on G x X is not symmetric", {**pair(p), **_suffix(pair(q), "2")})
            if cls[q] != cls[p]:
                r = min(cls[q] ^ cls[p])
                raise TheoremViolation(
                    "relation on G x X is not transitive",
                    {**pair(p), **_suffix(pair(q), "2"), **_suffix(pair(r), "3")},
                )

    # provisional class ids by least member
    first: dict[frozenset[int], int] = {}
    for p in range(m * n):
        first.setdefault(cls[p], min(cls[p]))
    mins = sorted(first.values())
    prov = {c: i for i, c in enumerate(sorted(first, key=first.__getitem__))}
    class_of = [prov[cls[p]] for p in range(m * n)]
    count = len(mins)

    prov_perms = []
    for h in range(m):
        row = [-1] * count
        for p in range(m * n):
            g, x = divmod(p, n)
            img = class_of[table[h][g] * n + x]
            c = class_of[p]
            if row[c] == -1:
                row[c] = img
            elif row[c] != img:
                raise TheoremViolation("translation is not well defined on classes", {"h": G.label(h), **pair(p)})
        prov_perms.append(row)

    # final order: embedded X first, then fresh points orbit by orbit
    embedded = [class_of[x] for x in range(n)]
    if len(set(embedded)) != n:
        raise TheoremViolation("embedding of X is not injective")
    order = list(embedded)
    placed = set(embedded)
    prov_orbits = compute_orbits(prov_perms, count)
    orbit_of = {c: o for o in prov_orbits for c in o}
    for s in partial_transversal(A):
        fresh = [c for c in orbit_of[class_of[s]] if c not in placed]
        fresh.sort(key=lambda c: mins[c])
        order.extend(fresh)
        placed.update(fresh)
    if len(order) != count:
        raise TheoremViolation("some class is not reachable from X")
    final = {c: i for i, c in enumerate(order)}
    perms = [[0] * count for _ in range(m)]
    for h in range(m):
        for c in range(count):
            perms[h][final[c]] = final[prov_perms[h][c]]

    labels = list(A.carrier.labels)
    taken = set(labels)
    k = 0
    while len(labels) < count:
        k += 1
        name = f"t{k}"
        if name not in taken:
            labels.append(name)
    B = make_global_action(G, labels, perms)
    witnesses = tuple(divmod(mins[c], n) for c in order)
    glob = Globalization(B, tuple(range(n)), witnesses)

    rep = ValidationReport("globalization")
    _check_embedding(A, glob, rep)
    for c in rep.checks:
        if not c.passed:
            raise TheoremViolation(f"constructed globalization fails {c.name}", c.witness)
    return glob


def _suffix(d: dict[str, str], s: str) -> dict[str, str]:
    return {k + s: v for k, v in d.items()}


def _check_embedding(A: PartialAction, glob: Globalization, rep: ValidationReport) -> None:
    """Restriction identity, map identity and minimality."""
    B = glob.action
    G = A.group
    emb = glob.embedding
    EX = frozenset(emb)

    w = None
    for g in range(G.order):
        lhs = {emb[x] for x in A.domains[g]}
        rhs = EX & {B.perms[g][t] for t in EX}
        if lhs != rhs:
            t = min(lhs ^ rhs)
            w = {"g": G.label(g), "t": B.label(t)}
            break
    rep.add("restriction", w, "embedding(D_g) = X & beta_g(X)")

    w = None
    for g in range(G.order):
        for x, y in A.maps[g]:
            if B.perms[g][emb[x]] != emb[y]:
                w = {"g": G.label(g), "x": A.xlabel(x)}
                break
        if w:
            break
    rep.add("map-identity", w, "beta_g(x) = alpha_g(x) on D_{g^-1}")

    reached = {p[t] for p in B.perms for t in EX}
    w = None
    if len(reached) != B.carrier.size:
        w = {"t": B.label(min(set(range(B.carrier.size)) - reached))}
    rep.add("minimality", w, "T is the union of the translates of X")


def verify_globalization(A: PartialAction, glob: Globalization) -> ValidationReport:
    """Check that ``glob`` is an enveloping action of ``A`` and agrees with every prediction."""
    B = glob.action
    G = A.group
    n = A.carrier.size
    emb = glob.embedding
    if not B.group.same_as(G):
        raise ArgumentError("global action is over a different group")
    if len(emb) != n or any(not 0 <= t < B.carrier.size for t in emb) or len(set(emb)) != n:
        raise ArgumentError("embedding must be an injective map from X into T")

    rep = ValidationReport("globalization")
    check_global_action(B, rep)
    _check_embedding(A, glob, rep)

    restricted = restrict_global(B, emb)
    pos = {t: i for i, t in enumerate(sorted(emb))}
    back = {pos[t]: x for x, t in enumerate(emb)}
    w = None
    for g in range(G.order):
        dom = frozenset(back[i] for i in restricted.domains[g])
        mp = tuple(sorted((back[s], back[t]) for s, t in restricted.maps[g]))
        if dom != A.domains[g] or mp != A.maps[g]:
            w = {"g": G.label(g)}
            break
    rep.add("round-trip", w, "restricting beta to X recovers alpha")

    w = None
    for x in range(n):
        predicted = global_orbit_size(A, x)
        actual = len(B.orbit_of(emb[x]))
        if predicted != actual:
            w = {"x": A.xlabel(x), "predicted": str(predicted), "actual": str(actual)}
            break
    rep.add("orbit-size", w, "orbit of x in T has the predicted size")

    k_partial = len(partial_orbits(A))
    try:
        k = burnside_orbit_count(B)
        w = None if k == k_partial else {"burnside": str(k), "partial-orbits": str(k_partial)}
    except InvalidGlobalActionError as exc:
        w = {"burnside": str(exc), "partial-orbits": str(k_partial)}
    rep.add("burnside", w, "Burnside count equals the number of partial orbits")

    inv_emb = {t: x for x, t in enumerate(emb)}
    w = None
    for x in range(n):
        seen = {inv_emb[t] for t in B.orbit_of(emb[x]) if t in inv_emb}
        if seen != partial_orbit(A, x):
            w = {"x": A.xlabel(x), "what": "orbit"}
            break
        if B.stabilizer(emb[x]) != partial_stabilizer(A, x).members:
            w = {"x": A.xlabel(x), "what": "stabilizer"}
            break
    rep.add("orbit-correspondence", w, "O_x & X = partial orbit and stabilizers agree")
    return rep


def actions_isomorphic(
    B1: GlobalAction,
    B2: GlobalAction,
    fixed: Mapping[int, int] | None = None,
) -> tuple[int, ...] | None:
    """Find an equivariant bijection ``T1 -> T2`` extending ``fixed``, or ``None``.

    An equivariant map is determined on each orbit by the image of one point,
    and that image must have the same stabilizer. The search assigns orbits
    of ``B1`` to distinct orbits of ``B2`` with backtracking.
    """
    if not B1.group.same_as(B2.group):
        raise ArgumentError("actions of different groups")
    fixed = dict(fixed or {})
    n1, n2 = B1.carrier.size, B2.carrier.size
    for s, t in fixed.items():
        if not 0 <= s < n1 or not 0 <= t < n2:
            raise ArgumentError(f"pinned pair ({s}, {t}) out of range")
    if len(set(fixed.values())) != len(fixed):
        raise ArgumentError("pinned correspondence is not injective")
    if n1 != n2:
        return None

    G = B1.group
    orbits1 = compute_orbits(B1.perms, n1)
    orbits2 = compute_orbits(B2.perms, n2)
    owner2 = {t: i for i, o in enumerate(orbits2) for t in o}

    def extend(r: int, u: int) -> dict[int, int] | None:
        phi: dict[int, int] = {}
        for g in range(G.order):
            a, b = B1.perms[g][r], B2.perms[g][u]
            if phi.setdefault(a, b) != b:
                return None
        if len(set(phi.values())) != len(phi):
            return None
        return phi

    phi: dict[int, int] = {}
    used: set[int] = set()
    free = []
    for o in orbits1:
        pins = [s for s in o if s in fixed]
        if not pins:
            free.append(o)
            continue
        r, s = o[0], pins[0]
        g = next((g for g in range(G.order) if B1.perms[g][r] == s), None)
        if g is None:
            return None
        u = B2.perms[G.inv[g]][fixed[s]]
        part = extend(r, u)
        if part is None or any(part[p] != fixed[p] for p in pins):
            return None
        j = owner2[u]
        if j in used or len(orbits2[j]) != len(o):
            return None
        used.add(j)
        phi.update(part)

    stab2 = [B2.stabilizer(t) for t in range(n2)]

    def search(i: int) -> bool:
        if i == len(free):
            return True
        o = free[i]
        r = o[0]
        st = B1.stabilizer(r)
        for j, o2 in enumerate(orbits2):
            if j in used or len(o2) != len(o):
                continue
            u = next((u for u in o2 if stab2[u] == st), None)
            if u is None:
                continue
            part = extend(r, u)
            if part is None:
                continue
            used.add(j)
            phi.update(part)
            if search(i + 1):
                return True
            used.discard(j)
            for k in part:
                del phi[k]
        return False

    if not search(0):
        return None
    result = tuple(phi[t] for t in range(n1))
    for g in range(G.order):
        for t in range(n1):
            if result[B1.perms[g][t]] != B2.perms[g][result[t]]:
                return None
    return result
