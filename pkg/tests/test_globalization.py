import random

import pytest
from hypothesis import given, settings, strategies as st

from partact import (
    ArgumentError,
    Globalization,
    SizeCapExceeded,
    actions_isomorphic,
    build_cyclic_group,
    burnside_orbit_count,
    global_orbit_size,
    globalize,
    make_global_action,
    make_partial_action,
    partial_orbits,
    partial_transversal,
    restrict_global,
    verify_globalization,
)

from generators import cayley_catalog, random_global_action, random_subset


def orbit_sizes(B):
    return sorted(len(o) for o in B.orbit_decomposition)


def test_cyclic8_globalizes_to_12_points(ex_i):
    glob = globalize(ex_i)
    B = glob.action
    assert B.carrier.size == 12
    assert orbit_sizes(B) == [4, 8]
    assert B.carrier.labels[:4] == ("x1", "x2", "x3", "x4")
    assert B.carrier.labels[4:] == tuple(f"t{i}" for i in range(1, 9))
    assert glob.embedding == (0, 1, 2, 3)
    assert verify_globalization(ex_i, glob).ok


def test_envelope_table_verifies(ex_i, envelope_table):
    rep = verify_globalization(ex_i, envelope_table)
    assert rep.ok, rep.to_dict()


def test_envelope_table_corruption_detected(ex_i, envelope_table):
    B = envelope_table.action
    perms = [list(p) for p in B.perms]
    x9, x10 = B.carrier.index("x9"), B.carrier.index("x10")
    perms[1][x9], perms[1][x10] = perms[1][x10], perms[1][x9]
    bad = make_global_action(B.group, B.carrier.labels, perms, B.orbit_decomposition)
    rep = verify_globalization(ex_i, Globalization(bad, envelope_table.embedding, ()))
    assert not rep.ok
    hom = rep["homomorphism"]
    assert not hom.passed
    # oracle: beta_{g^2} against beta_g composed with itself at the corrupted point
    g2 = [perms[1][perms[1][t]] for t in range(12)]
    broken = [B.carrier.labels[t] for t in range(12) if g2[t] != B.perms[2][t]]
    assert broken
    assert hom.witness is not None
    assert {hom.witness["g"], hom.witness["h"]} & {"g", "g^7"}


def test_global_input_is_idempotent():
    G = build_cyclic_group(6)
    B = make_global_action(G, list("abcdef"), [[(t + 2 * g) % 6 for t in range(6)] for g in range(6)])
    A = restrict_global(B, range(6))
    glob = globalize(A)
    assert glob.action.carrier.size == 6
    assert sorted(glob.embedding) == list(range(6))
    assert actions_isomorphic(B, glob.action, {t: t for t in range(6)}) is not None


@pytest.mark.parametrize("order, n", [(5, 3), (8, 2), (1, 4)])
def test_free_partial_action(order, n):
    A = make_partial_action(build_cyclic_group(order), [f"p{i}" for i in range(n)])
    glob = globalize(A)
    assert glob.action.carrier.size == n * order
    for x in range(n):
        assert global_orbit_size(A, x) == 1 + (order - 1) // 1
    assert orbit_sizes(glob.action) == [order] * n


def test_size_cap(ex_i):
    with pytest.raises(SizeCapExceeded):
        globalize(ex_i, max_size=31)
    assert globalize(ex_i, max_size=32).action.carrier.size == 12


def test_fresh_labels_avoid_collisions():
    A = make_partial_action(build_cyclic_group(3), ["t1", "t3"])
    labels = globalize(A).action.carrier.labels
    assert labels[:2] == ("t1", "t3")
    assert len(set(labels)) == 6
    assert labels[2:] == ("t2", "t4", "t5", "t6")


def test_isomorphic_to_envelope_table(ex_i, envelope_table):
    ours = globalize(ex_i)
    phi = actions_isomorphic(ours.action, envelope_table.action, {x: x for x in range(4)})
    assert phi is not None
    assert phi[:4] == (0, 1, 2, 3)


def test_isomorphism_reflexive(envelope_table):
    B = envelope_table.action
    assert actions_isomorphic(B, B, {}) is not None


def test_regular_vs_trivial_not_isomorphic():
    G = build_cyclic_group(4)
    regular = make_global_action(G, list("abcd"), [[(t + g) % 4 for t in range(4)] for g in range(4)])
    trivial = make_global_action(G, list("abcd"), [list(range(4))] * 4)
    assert sorted(map(len, regular.orbit_decomposition)) != sorted(map(len, trivial.orbit_decomposition))
    assert actions_isomorphic(regular, trivial, {}) is None


def test_pinning_that_breaks_equivariance(envelope_table):
    B = envelope_table.action
    # x1 and x3 lie in orbits of different sizes
    assert actions_isomorphic(B, B, {0: 2}) is None


def test_non_injective_pin(envelope_table):
    B = envelope_table.action
    with pytest.raises(ArgumentError):
        actions_isomorphic(B, B, {0: 0, 1: 0})


def test_verify_rejects_mismatched_embedding(ex_i, envelope_table):
    with pytest.raises(ArgumentError):
        verify_globalization(ex_i, Globalization(envelope_table.action, (0, 0, 1, 2), ()))


def test_wrong_but_valid_global_action_fails_verification(ex_i, envelope_table):
    # the regular action on 8 points plus 4 fixed points: a genuine action, not an envelope
    G = ex_i.group
    perms = [[(t + g) % 8 for t in range(8)] + list(range(8, 12)) for g in range(8)]
    B = make_global_action(G, [f"y{i}" for i in range(12)], perms)
    rep = verify_globalization(ex_i, Globalization(B, (0, 1, 8, 9), ()))
    assert rep["homomorphism"].passed
    assert not rep.ok
    assert not rep["restriction"].passed


def permuted(A, rng):
    """The same partial action with its carrier listed in a random order."""
    n = A.carrier.size
    order = list(range(n))
    rng.shuffle(order)  # new position -> old index
    pos = {old: new for new, old in enumerate(order)}
    labels = [A.carrier.labels[o] for o in order]
    domains = {g: [pos[x] for x in A.domains[g]] for g in range(A.group.order)}
    maps = {g: [(pos[s], pos[t]) for s, t in A.maps[g]] for g in range(A.group.order)}
    return make_partial_action(A.group, labels, domains, maps), pos


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_round_trip_and_predictions(rng):
    B0 = random_global_action(rng)
    A = restrict_global(B0, random_subset(rng, B0.carrier.size))
    glob = globalize(A)
    B = glob.action
    back = restrict_global(B, glob.embedding)
    assert back.same_structure(A)
    assert B.carrier.size == sum(global_orbit_size(A, s) for s in partial_transversal(A))
    assert burnside_orbit_count(B) == len(partial_orbits(A))
    assert verify_globalization(A, glob).ok

    # the quotient is independent of how X is listed
    A2, pos = permuted(A, rng)
    glob2 = globalize(A2)
    pins = {glob.embedding[x]: glob2.embedding[pos[x]] for x in range(A.carrier.size)}
    assert actions_isomorphic(B, glob2.action, pins) is not None

    # the envelope of a restriction embeds into the action it came from
    sub = sorted(set().union(*(B0.orbit_of(t) for t in back_indices(B0, A))) if A.carrier.size else set())
    assert len(sub) == B.carrier.size


def back_indices(B0, A):
    return [B0.carrier.index(lab) for lab in A.carrier.labels]


def test_every_catalog_group_regular_restriction():
    rng = random.Random(3)
    for G in cayley_catalog():
        B = make_global_action(G, [f"u{i}" for i in range(G.order)], [list(r) for r in G.table])
        S = rng.sample(range(G.order), k=max(1, G.order // 3))
        A = restrict_global(B, S)
        glob = globalize(A)
        assert glob.action.carrier.size == G.order
        assert verify_globalization(A, glob).ok
