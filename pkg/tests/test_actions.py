"""Partial action validators, orbits, restriction, equivariant maps."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from semigroupoids import corpus
from semigroupoids.actions import (
    EquivariantMap,
    check_equivariant,
    disjoint_union_actions,
    make_action,
    orbit,
    point_action,
    restrict_global,
    validate_partial_action_E,
    validate_partial_action_P,
)
from semigroupoids.errors import ValidationError
from semigroupoids.posets import chain_poset, discrete_poset
from semigroupoids.ptheorem import munn_action


def swap_action():
    """The pair groupoid moving a point at each object; global, ordered."""
    pg = corpus.pair_groupoid(2)
    loops = {pg.base.dom[s]: s for s in pg.arrows() if pg.base.dom[s] == pg.base.cod[s]}
    g = next(
        s for s in pg.arrows() if pg.base.dom[s] == 0 and pg.base.cod[s] == 1
    )
    gstar = pg.inv[g]
    domains = {loops[0]: {0}, loops[1]: {1}, g: {1}, gstar: {0}}
    maps = {loops[0]: {0: 0}, loops[1]: {1: 1}, g: {0: 1}, gstar: {1: 0}}
    return pg, make_action(
        pg,
        ("p", "q"),
        [domains[s] for s in pg.arrows()],
        [maps[s] for s in pg.arrows()],
        order=discrete_poset(2, ("p", "q")),
        global_flag=True,
    )


def test_munn_chain2_passes_both_validators():
    theta = munn_action(corpus.chain2())
    assert validate_partial_action_E(theta) is None
    assert validate_partial_action_P(theta) is None
    assert theta.global_flag


def test_identity_action_of_trivial_group():
    trivial = corpus.trivial_monoid()
    a = make_action(
        trivial,
        ("x", "y"),
        [{0, 1}],
        [{0: 0, 1: 1}],
        order=discrete_poset(2, ("x", "y")),
        global_flag=True,
    )
    assert validate_partial_action_E(a) is None
    assert validate_partial_action_P(a) is None


def test_shrunk_composition_domain_detected():
    # empty the identity's domain in the two-element group action on its
    # idempotent: composition g*g still reaches the removed point
    c2 = corpus.cyclic_group(2)
    theta = munn_action(c2)
    identity = c2.idempotents[0]
    g = 1 - identity
    domains = list(theta.domains)
    maps = [dict(m) for m in theta.maps]
    domains[identity] = frozenset()
    maps[identity] = {}
    broken = make_action(
        c2, theta.carrier_names, domains, maps, order=theta.order,
    )
    v = validate_partial_action_E(broken)
    assert v is not None
    assert v.code == "CompositionNotContained"
    assert v.witness == (g, g, 0)
    # the independent axiom route also rejects, through its own clause
    vp = validate_partial_action_P(broken)
    assert vp is not None
    assert vp.code == "IdempotentCoverageFailure"


def test_empty_carrier_rejected():
    trivial = corpus.trivial_monoid()
    a = make_action(trivial, (), [set()], [{}])
    assert validate_partial_action_E(a).code == "EmptyCarrier"
    assert validate_partial_action_P(a).code == "EmptyCarrier"


def test_fixtures_pass_both_validators(actions):
    for name, a in actions:
        assert validate_partial_action_E(a) is None, name
        assert validate_partial_action_P(a) is None, name


def test_random_candidates_verdicts_agree():
    for a in corpus.action_candidates(max_actor_arrows=3, max_carrier=3, seed=11,
                                      random_per_actor=15):
        ve = validate_partial_action_E(a)
        vp = validate_partial_action_P(a)
        assert (ve is None) == (vp is None), (ve, vp)


@given(st.integers(0, 10_000))
@settings(max_examples=25)
def test_verdict_agreement_property(seed):
    rng = random.Random(seed)
    actor = rng.choice(
        [corpus.chain2(), corpus.cyclic_group(2), corpus.brandt_b2(),
         corpus.pair_groupoid(2)]
    )
    a = corpus.random_action_candidate(actor, rng.randrange(1, 4), rng)
    assert (validate_partial_action_E(a) is None) == (
        validate_partial_action_P(a) is None
    )


def test_orbit_of_carrier_is_carrier():
    theta = munn_action(corpus.brandt_b2())
    full = set(range(theta.carrier_size))
    assert orbit(theta, full) == frozenset(full)


def test_orbit_of_empty_is_empty():
    theta = munn_action(corpus.chain2())
    assert orbit(theta, set()) == frozenset()


def test_orbit_pair_groupoid_swap():
    _pg, a = swap_action()
    assert orbit(a, {0}) == frozenset({0, 1})


def test_orbit_monotone_and_expansive(actions):
    for _name, a in actions:
        full = set(range(a.carrier_size))
        sub = set(list(full)[: max(1, a.carrier_size // 2)])
        assert orbit(a, sub) <= orbit(a, full)
        covered = set()
        for e in a.actor.idempotents:
            covered |= a.domains[e]
        y = sub & covered
        assert y <= orbit(a, y)


@given(st.data())
def test_orbit_monotone_random_subsets(data):
    theta = munn_action(
        data.draw(st.sampled_from([corpus.brandt_b2(), corpus.pair_groupoid(2),
                                   corpus.gen_SA(corpus.chain2(), 2)]))
    )
    points = st.integers(0, theta.carrier_size - 1)
    y = data.draw(st.sets(points))
    z = y | data.draw(st.sets(points))
    assert orbit(theta, y) <= orbit(theta, z)


def test_restrict_full_carrier_is_equivalent():
    theta = munn_action(corpus.brandt_b2())
    restricted = restrict_global(theta, range(theta.carrier_size))
    ident = tuple(range(theta.carrier_size))
    assert (
        check_equivariant(
            EquivariantMap(theta, restricted, ident), ordered=True, equivalence=True
        )
        is None
    )


def test_restrict_empty_ideal_rejected():
    theta = munn_action(corpus.chain2())
    with pytest.raises(ValidationError) as err:
        restrict_global(theta, set())
    assert err.value.code == "EmptyCarrier"


def test_restrict_requires_ideal():
    theta = munn_action(corpus.chain2())
    with pytest.raises(ValidationError) as err:
        restrict_global(theta, {0})  # the top idempotent alone is not an ideal
    assert err.value.code == "NotAnIdeal"


def test_restrictions_pass_ordered_validator(actions):
    for _name, a in actions:
        if not a.global_flag:
            continue
        ideals = corpus.all_order_ideals(a.order)
        for ideal in ideals:
            if not ideal:
                continue
            restricted = restrict_global(a, ideal)
            assert validate_partial_action_P(restricted) is None
            assert validate_partial_action_E(restricted) is None


def test_global_actions_have_tight_domains(actions):
    for _name, a in actions:
        if not a.global_flag:
            continue
        sg = a.actor.base
        for s in a.actor.arrows():
            e = sg.mul[s][a.actor.inv[s]]
            assert a.domains[s] == a.domains[e]


def test_equivariant_identity(actions):
    for _name, a in actions:
        ident = tuple(range(a.carrier_size))
        assert check_equivariant(
            EquivariantMap(a, a, ident), ordered=True, equivalence=True
        ) is None


def test_order_reversal_fails_only_ordered_check():
    trivial = corpus.trivial_monoid()
    a = make_action(
        trivial,
        ("x", "y"),
        [{0, 1}],
        [{0: 0, 1: 1}],
        order=chain_poset(2, ("x", "y")),
        global_flag=True,
    )
    swap = EquivariantMap(a, a, (1, 0))
    assert check_equivariant(swap) is None
    violation = check_equivariant(swap, ordered=True)
    assert violation is not None and violation.code == "OrderNotPreserved"


def test_commutation_failure_detected():
    # the two-element group swapping two points; a constant map cannot
    # commute with the swap
    c2 = corpus.cyclic_group(2)
    g = next(s for s in c2.arrows() if s not in c2.idempotents)
    a = make_action(
        c2,
        ("x", "y"),
        [{0, 1}, {0, 1}],
        [{0: 0, 1: 1} if s != g else {0: 1, 1: 0} for s in c2.arrows()],
        order=discrete_poset(2, ("x", "y")),
        global_flag=True,
    )
    assert validate_partial_action_E(a) is None
    violation = check_equivariant(EquivariantMap(a, a, (0, 0)))
    assert violation is not None
    assert violation.code == "CommutationFailure"
    assert violation.witness == (g, 0)


def test_point_action_valid(structures):
    for _name, s in structures:
        a = point_action(s)
        assert validate_partial_action_E(a) is None
        assert validate_partial_action_P(a) is None
