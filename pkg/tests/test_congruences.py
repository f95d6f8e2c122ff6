"""Congruence closure, sigma, quotients, idempotent purity, E-unitarity."""

import pytest
from hypothesis import given, strategies as st

from semigroupoids import corpus
from semigroupoids.congruences import (
    GraphedCongruence,
    check_lemma_sts,
    congruence_closure,
    is_e_unitary,
    is_idempotent_pure,
    quotient,
    sigma,
    sigma_by_equations,
    universal_groupoid_property,
    validate_congruence,
)
from semigroupoids.core import validate_morphism
from semigroupoids.errors import ValidationError
from semigroupoids.inverse import is_groupoid


def naive_closure_pairs(inv_sg, seed):
    """Oracle: grow the explicit pair set to a fixpoint of symmetry,
    transitivity, and multiplication."""
    sg = inv_sg.base
    n = sg.n_arrows
    rel = {(s, s) for s in range(n)} | set(seed)
    changed = True
    while changed:
        changed = False
        additions = set()
        for s, t in rel:
            if (t, s) not in rel:
                additions.add((t, s))
        for (s, t) in rel:
            for (t2, u) in rel:
                if t == t2 and (s, u) not in rel:
                    additions.add((s, u))
        for (s1, t1) in rel:
            for (s2, t2) in rel:
                if sg.composable(s1, s2):
                    pair = (sg.mul[s1][s2], sg.mul[t1][t2])
                    if pair not in rel:
                        additions.add(pair)
        if additions:
            rel |= additions
            changed = True
    return rel


def test_empty_seed_gives_equality():
    c2 = corpus.chain2()
    cong = congruence_closure(c2, [])
    assert cong.classes() == ((0,), (1,))


def test_chain2_seed_gives_universal():
    c2 = corpus.chain2()
    cong = congruence_closure(c2, [(0, 1)])
    assert cong.classes() == ((0, 1),)


def test_nonparallel_seed_rejected():
    pg = corpus.pair_groupoid(2)
    loops = [s for s in pg.arrows() if pg.base.dom[s] == pg.base.cod[s]]
    with pytest.raises(ValidationError) as err:
        congruence_closure(pg, [(loops[0], loops[1])])
    assert err.value.code == "NonParallelSeed"


def test_closure_matches_naive_fixpoint_oracle():
    cases = [
        (corpus.brandt_b2(), [(1, 2)]),   # relate a and a* (parallel, one object)
        (corpus.brandt_b2(), [(0, 3)]),
        (corpus.cyclic_group(3), [(1, 2)]),
        (corpus.vee_semilattice(), [(0, 1)]),
        (corpus.pair_groupoid(2), []),
    ]
    for inv_sg, seed in cases:
        cong = congruence_closure(inv_sg, seed)
        assert cong.pairs() == naive_closure_pairs(inv_sg, seed)


@given(st.data())
def test_closure_respects_involution(data):
    pool = [corpus.brandt_b2(), corpus.vee_semilattice(), corpus.gen_SA(corpus.chain2(), 2)]
    inv_sg = data.draw(st.sampled_from(pool))
    sg = inv_sg.base
    parallel = [
        (s, t)
        for s in range(sg.n_arrows)
        for t in range(sg.n_arrows)
        if s < t and sg.parallel(s, t)
    ]
    seed = data.draw(st.lists(st.sampled_from(parallel), max_size=2)) if parallel else []
    cong = congruence_closure(inv_sg, seed)
    for s, t in cong.pairs():
        assert cong.related(inv_sg.inv[s], inv_sg.inv[t])


def test_sigma_on_groupoid_is_equality():
    pg = corpus.pair_groupoid(2)
    assert sigma(pg).classes() == tuple((s,) for s in pg.arrows())


def test_sigma_on_chain2_is_universal():
    assert sigma(corpus.chain2()).classes() == ((0, 1),)


def test_sigma_on_b2_is_universal():
    b2 = corpus.brandt_b2()
    cong = sigma(b2)
    # oracle: direct scan over all r for each parallel pair
    for s in b2.arrows():
        for t in b2.arrows():
            expected = any(b2.leq(r, s) and b2.leq(r, t) for r in b2.arrows())
            assert cong.related(s, t) == expected
    assert cong.classes() == ((0, 1, 2, 3, 4),)


def test_sigma_equational_forms_agree(structures, small_structures):
    pool = [s for _n, s in structures] + small_structures
    for s in pool:
        assert sigma(s).rep == sigma_by_equations(s).rep


def test_quotient_by_equality_is_isomorphic_copy():
    b2 = corpus.brandt_b2()
    cong = congruence_closure(b2, [])
    q, proj = quotient(b2, cong)
    assert q.base.mul == b2.base.mul
    assert q.base.dom == b2.base.dom
    assert proj.arrow_map == tuple(range(5))


def test_chain2_mod_sigma_is_trivial():
    c2 = corpus.chain2()
    q, proj = quotient(c2, sigma(c2))
    assert q.n_arrows == 1
    assert proj.arrow_map == (0, 0)


def test_sigma_quotient_is_groupoid(structures, small_structures):
    pool = [s for _n, s in structures] + small_structures
    for s in pool:
        q, _ = quotient(s, sigma(s))
        assert is_groupoid(q)
        per_object = [0] * q.n_objects
        for e in q.idempotents:
            per_object[q.base.dom[e]] += 1
        assert all(k == 1 for k in per_object)


def test_universal_property_projection_factors_as_identity():
    c2 = corpus.chain2()
    q, proj = quotient(c2, sigma(c2))
    tilde = universal_groupoid_property(c2, proj, q)
    assert tilde.arrow_map == tuple(range(q.n_arrows))


def test_universal_property_chain2_collapse():
    c2 = corpus.chain2()
    trivial = corpus.trivial_monoid()
    phi = validate_morphism(c2.base, trivial.base, [0, 0])
    tilde = universal_groupoid_property(c2, phi, trivial)
    assert tilde.arrow_map == (0,)


def test_universal_property_b2_to_trivial_group():
    b2 = corpus.brandt_b2()
    trivial = corpus.trivial_monoid()
    phi = validate_morphism(b2.base, trivial.base, [0] * 5)
    tilde = universal_groupoid_property(b2, phi, trivial)
    q, proj = quotient(b2, sigma(b2))
    assert q.n_arrows == 1
    for s in b2.arrows():
        assert tilde.arrow_map[proj.arrow_map[s]] == 0


def test_mediating_morphism_unique(structures):
    # two morphisms out of the quotient agreeing after precomposition
    # with the projection agree everywhere (the projection is onto)
    for _name, s in structures:
        q, proj = quotient(s, sigma(s))
        assert set(proj.arrow_map) == set(range(q.n_arrows))


def test_every_morphism_into_a_groupoid_factors():
    # exhaustively enumerate all arrow maps from small fixtures into
    # small groupoids; every one that validates as a morphism must
    # factor uniquely through the sigma quotient
    import itertools

    from semigroupoids.errors import ValidationError

    sources = [corpus.brandt_b2(), corpus.vee_semilattice(), corpus.chain2()]
    targets = [
        corpus.trivial_monoid(),
        corpus.cyclic_group(2),
        corpus.pair_groupoid(2),
    ]
    factored = 0
    for s in sources:
        q, proj = quotient(s, sigma(s))
        for g in targets:
            for candidate in itertools.product(
                range(g.n_arrows), repeat=s.n_arrows
            ):
                try:
                    phi = validate_morphism(s.base, g.base, list(candidate))
                except ValidationError:
                    continue
                tilde = universal_groupoid_property(s, phi, g)
                for a in s.arrows():
                    assert tilde.arrow_map[proj.arrow_map[a]] == candidate[a]
                factored += 1
    assert factored >= 8


def test_idempotent_pure_equality_congruence():
    b2 = corpus.brandt_b2()
    assert is_idempotent_pure(congruence_closure(b2, []))


def test_idempotent_pure_sigma_chain2():
    c2 = corpus.chain2()
    assert is_idempotent_pure(sigma(c2))


def test_idempotent_pure_sigma_b2_false():
    b2 = corpus.brandt_b2()
    assert not is_idempotent_pure(sigma(b2))


def test_e_unitary_groupoids_and_semilatticeoids(structures):
    for name, s in structures:
        if is_groupoid(s) or set(s.idempotents) == set(s.arrows()):
            assert is_e_unitary(s).verdict, name


def test_e_unitary_b2_witness():
    b2 = corpus.brandt_b2()
    cert = is_e_unitary(b2)
    assert not cert.verdict
    assert cert.witness == (0, 1)
    names = [b2.base.arrow_names[w] for w in cert.witness]
    assert names == ["0", "a"]


def test_e_unitary_c2_with_zero_false():
    assert not is_e_unitary(corpus.c2_with_zero()).verdict


def test_e_unitary_matches_idempotent_pure_sigma(structures, small_structures):
    pool = [s for _n, s in structures] + small_structures
    for s in pool:
        assert is_e_unitary(s).verdict == is_idempotent_pure(sigma(s))


def test_lemma_sts_on_groupoid_and_chain2():
    assert check_lemma_sts(corpus.pair_groupoid(2))
    assert check_lemma_sts(corpus.chain2())


def test_lemma_sts_requires_e_unitary():
    with pytest.raises(ValidationError) as err:
        check_lemma_sts(corpus.brandt_b2())
    assert err.value.code == "NotEUnitary"


def test_lemma_sts_exhaustive_small(small_structures):
    for s in small_structures:
        if is_e_unitary(s).verdict:
            assert check_lemma_sts(s)


def test_validate_congruence_rejects_bad_partition():
    pg = corpus.pair_groupoid(2)
    loops = [s for s in pg.arrows() if pg.base.dom[s] == pg.base.cod[s]]
    rep = list(range(pg.n_arrows))
    rep[loops[1]] = loops[0]
    bad = GraphedCongruence(base=pg, rep=tuple(rep))
    with pytest.raises(ValidationError) as err:
        validate_congruence(bad)
    assert err.value.code == "NotGraphed"
