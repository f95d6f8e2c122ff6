"""Munn action, semidirect products, McAlister triples, and the
reconstruction of an E-unitary inverse semigroupoid as a semidirect
product of its maximal groupoid image acting on its idempotents.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .actions import (
    EquivariantMap,
    PartialActionData,
    check_equivariant,
    make_action,
    orbit,
    restrict_global,
    validate_partial_action_E,
    validate_partial_action_P,
)
from .congruences import is_e_unitary, quotient, sigma
from .core import SemigroupoidMorphism, validate_morphism, validate_semigroupoid
from .errors import InternalInconsistencyError, ValidationError
from .globalization import globalize
from .inverse import (
    InverseSemigroupoid,
    is_groupoid,
    is_strong_morphism,
    promote_to_inverse,
)
from .posets import (
    FinitePoset,
    Semilatticeoid,
    is_order_ideal,
    semilatticeoid_from_poset,
    validate_semilatticeoid,
)


def munn_action(inv_sg: InverseSemigroupoid) -> PartialActionData:
    """The global ordered action of a structure on its idempotents:
    the domain at s is the downset of s s* and s acts by e -> s e s*."""
    sg = inv_sg.base
    inv = inv_sg.inv
    idems = inv_sg.idempotents
    pos = {e: i for i, e in enumerate(idems)}
    order = inv_sg.order.restrict(list(idems))

    domains = []
    for s in inv_sg.arrows():
        top = sg.mul[s][inv[s]]
        domains.append(frozenset(pos[e] for e in idems if inv_sg.leq(e, top)))
    maps = []
    for s in inv_sg.arrows():
        theta = {}
        for i in domains[inv[s]]:
            e = idems[i]
            theta[i] = pos[sg.mul[sg.mul[s][e]][inv[s]]]
        maps.append(theta)

    action = make_action(
        inv_sg,
        tuple(sg.arrow_names[e] for e in idems),
        domains,
        maps,
        order=order,
        global_flag=True,
    )
    for validator in (validate_partial_action_E, validate_partial_action_P):
        v = validator(action)
        if v is not None:
            raise InternalInconsistencyError("MunnActionInvalid", (v.code, v.witness))
    return action


def induced_sigma_action(
    inv_sg: InverseSemigroupoid, theta: PartialActionData
) -> PartialActionData:
    """Glue a global ordered action of an E-unitary structure along its
    sigma classes into an ordered partial action of the quotient groupoid.

    The domain at a class is the union of the member domains; values are
    independent of the member used, so any gluing conflict signals a bug
    and is reported as GluingConflict.
    """
    if not is_e_unitary(inv_sg).verdict:
        raise ValidationError("NotEUnitary", ())
    if theta.actor != inv_sg:
        raise ValidationError("MalformedAction", (), "action actor differs")
    for validator in (validate_partial_action_E, validate_partial_action_P):
        v = validator(theta)
        if v is not None:
            raise ValidationError(v.code, v.witness)
    if theta.order is None or not theta.global_flag:
        raise ValidationError("NotGlobalOrdered", ())

    sig = sigma(inv_sg)
    q, proj = quotient(inv_sg, sig)
    classes = sig.classes()

    domains = []
    for cls in classes:
        union: set[int] = set()
        for t in cls:
            union |= theta.domains[t]
        domains.append(frozenset(union))

    maps = []
    for ci, cls in enumerate(classes):
        m: dict[int, int] = {}
        src = domains[q.inv[ci]]
        for x in sorted(src):
            values = {theta.maps[t][x] for t in cls if x in theta.maps[t]}
            if len(values) > 1:
                witnesses = sorted(t for t in cls if x in theta.maps[t])
                raise InternalInconsistencyError(
                    "GluingConflict", (witnesses[0], witnesses[1], x)
                )
            if not values:
                raise InternalInconsistencyError("GluingConflict", (ci, x))
            m[x] = values.pop()
        maps.append(m)

    alpha = make_action(
        q,
        theta.carrier_names,
        domains,
        maps,
        order=theta.order,
        global_flag=False,
    )
    for validator in (validate_partial_action_E, validate_partial_action_P):
        v = validator(alpha)
        if v is not None:
            raise InternalInconsistencyError("InducedActionInvalid", (v.code, v.witness))
    return alpha


@dataclass(frozen=True)
class SemidirectProduct:
    """An inverse semigroupoid of pairs (arrow, carrier point) built from
    an ordered partial action on a semilatticeoid."""

    actor: InverseSemigroupoid
    latt: Semilatticeoid
    action: PartialActionData
    product: InverseSemigroupoid
    arrow_pairs: tuple[tuple[int, int], ...]
    object_pairs: tuple[tuple[int, int], ...]

    @cached_property
    def pair_index(self) -> dict[tuple[int, int], int]:
        return {p: i for i, p in enumerate(self.arrow_pairs)}


def _check_action_matches_lattice(action: PartialActionData, latt: Semilatticeoid):
    if action.carrier_size != latt.n_arrows:
        raise ValidationError("MalformedAction", (), "carrier size differs from lattice")
    if action.order is None or action.order.leq != latt.order.leq:
        raise ValidationError(
            "MalformedAction", (), "carrier order differs from lattice order"
        )


def semidirect_product(
    action: PartialActionData, latt: Semilatticeoid
) -> SemidirectProduct:
    """Build the semidirect product of the actor with the semilatticeoid.

    Arrows are the pairs (s, x) with x in the domain of the map of s,
    indexed lexicographically; the product of (s, x) and (t, y) is
    (s t, theta at t* of (x meet theta_t(y))) wherever s t is defined and
    the meet exists in a common fiber.
    """
    actor = action.actor
    _check_action_matches_lattice(action, latt)
    v = validate_partial_action_E(action)
    if v is not None:
        raise ValidationError(v.code, v.witness)
    for s in actor.arrows():
        if not action.domains[s]:
            raise ValidationError("EmptyDomain", (s,))

    sg = actor.base
    inv = actor.inv
    pairs = [
        (s, x)
        for s in actor.arrows()
        for x in sorted(action.domains[inv[s]])
    ]
    index = {p: i for i, p in enumerate(pairs)}
    fiber = latt.fiber_of

    def theta(s: int, x: int) -> int:
        return action.maps[s][x]

    objects: list[tuple[int, int]] = []
    obj_index: dict[tuple[int, int], int] = {}
    dom_list = []
    cod_list = []
    for s, x in pairs:
        d = (sg.dom[s], fiber(x))
        c = (sg.cod[s], fiber(theta(s, x)))
        for o in (d, c):
            if o not in obj_index:
                obj_index[o] = len(objects)
                objects.append(o)
        dom_list.append(d)
        cod_list.append(c)
    objects_sorted = sorted(objects)
    obj_index = {o: i for i, o in enumerate(objects_sorted)}

    triples = []
    for i, (s, x) in enumerate(pairs):
        for k, (t, y) in enumerate(pairs):
            if not sg.composable(s, t):
                continue
            ty = theta(t, y)
            if fiber(x) != fiber(ty):
                continue
            st = sg.mul[s][t]
            z = latt.meet(x, ty)
            if z not in action.maps[inv[t]]:
                raise InternalInconsistencyError("SemidirectMeetEscapes", (i, k))
            w = theta(inv[t], z)
            target = index.get((st, w))
            if target is None:
                raise InternalInconsistencyError("SemidirectProductEscapes", (i, k))
            triples.append((i, k, target))

    arrow_names = tuple(
        f"({sg.arrow_names[s]},{action.carrier_names[x]})" for s, x in pairs
    )
    object_names = tuple(
        f"({sg.object_names[u]},{latt.base.base.object_names[c]})"
        for u, c in objects_sorted
    )
    base = validate_semigroupoid(
        [obj_index[d] for d in dom_list],
        [obj_index[c] for c in cod_list],
        triples,
        n_objects=len(objects_sorted),
        arrow_names=arrow_names,
        object_names=object_names,
    )
    product = promote_to_inverse(base)

    for i, (s, x) in enumerate(pairs):
        expected = index[(inv[s], theta(s, x))]
        if product.inv[i] != expected:
            raise InternalInconsistencyError("SemidirectInvolutionMismatch", (i,))

    return SemidirectProduct(
        actor=actor,
        latt=latt,
        action=action,
        product=product,
        arrow_pairs=tuple(pairs),
        object_pairs=tuple(objects_sorted),
    )


def check_e_unitary_preservation(p: SemidirectProduct) -> bool:
    """True unless the actor is E-unitary and the product is not."""
    if not is_e_unitary(p.actor).verdict:
        return True
    return bool(is_e_unitary(p.product).verdict)


@dataclass(frozen=True)
class McAlisterTriple:
    """A groupoid acting globally on a poset with a distinguished order
    ideal that is a semilatticeoid, meets every translate, and generates
    the whole space."""

    groupoid: InverseSemigroupoid
    space: FinitePoset
    ideal: frozenset[int]
    action: PartialActionData


def validate_mcalister_triple(t: McAlisterTriple) -> McAlisterTriple:
    if not is_groupoid(t.groupoid):
        raise ValidationError("NotGroupoid", ())
    if t.action.actor != t.groupoid:
        raise ValidationError("MalformedAction", (), "action actor differs")
    if t.action.order is None or t.action.order.leq != t.space.leq:
        raise ValidationError("MalformedAction", (), "order differs from space")
    for validator in (validate_partial_action_E, validate_partial_action_P):
        v = validator(t.action)
        if v is not None:
            raise ValidationError(v.code, v.witness)
    if not t.action.global_flag:
        raise ValidationError("NotGlobalOrdered", ())

    if not is_order_ideal(t.space, t.ideal):
        raise ValidationError("TripleIdealFailure", ())
    ideal = sorted(t.ideal)
    semilatticeoid_from_poset(t.space.restrict(ideal))
    if orbit(t.action, t.ideal) != frozenset(range(t.space.size)):
        raise ValidationError("TripleOrbitFailure", ())
    for g in t.groupoid.arrows():
        theta = t.action.maps[g]
        moved = {theta[x] for x in t.ideal if x in theta}
        if not (moved & t.ideal):
            raise ValidationError("TripleMeetFailure", (g,))
    return t


def mcalister_from_action(
    action: PartialActionData, latt: Semilatticeoid
) -> McAlisterTriple:
    """Globalize a groupoid action on a semilatticeoid with nonempty
    domains into a McAlister triple on the enveloping ordered carrier."""
    actor = action.actor
    if not is_groupoid(actor):
        raise ValidationError("NotGroupoid", ())
    _check_action_matches_lattice(action, latt)
    for g in actor.arrows():
        if not action.domains[g]:
            raise ValidationError("EmptyDomain", (g,))
    result = globalize(action)
    triple = McAlisterTriple(
        groupoid=actor,
        space=result.order,
        ideal=frozenset(result.embed),
        action=result.envelope,
    )
    return validate_mcalister_triple(triple)


def triple_restriction(t: McAlisterTriple) -> PartialActionData:
    """The ordered partial action of the groupoid on the ideal obtained
    by restricting the global action; all domains stay nonempty."""
    restricted = restrict_global(t.action, t.ideal)
    for g in t.groupoid.arrows():
        if not restricted.domains[g]:
            raise InternalInconsistencyError("EmptyDomain", (g,))
    return restricted


@dataclass(frozen=True)
class PTheoremBundle:
    """All ingredients of the reconstruction isomorphism."""

    structure: InverseSemigroupoid
    munn: PartialActionData
    induced: PartialActionData
    lattice: Semilatticeoid
    semidirect: SemidirectProduct
    morphism: SemigroupoidMorphism


def idempotent_semilatticeoid(inv_sg: InverseSemigroupoid) -> Semilatticeoid:
    """The idempotents of a structure as a semilatticeoid (product
    inherited; every object keeps its idempotents)."""
    sg = inv_sg.base
    idems = inv_sg.idempotents
    pos = {e: i for i, e in enumerate(idems)}
    dom = [sg.dom[e] for e in idems]
    triples = []
    for e in idems:
        for f in idems:
            if sg.composable(e, f):
                triples.append((pos[e], pos[f], pos[sg.mul[e][f]]))
    base = validate_semigroupoid(
        dom,
        dom,
        triples,
        n_objects=sg.n_objects,
        arrow_names=tuple(sg.arrow_names[e] for e in idems),
        object_names=sg.object_names,
    )
    return validate_semilatticeoid(promote_to_inverse(base))


def ptheorem_bundle(inv_sg: InverseSemigroupoid) -> PTheoremBundle:
    """Rebuild an E-unitary structure as the semidirect product of its
    maximal groupoid image acting on its idempotents, with the
    isomorphism checked arrow by arrow."""
    if not is_e_unitary(inv_sg).verdict:
        raise ValidationError("NotEUnitary", ())
    theta = munn_action(inv_sg)
    alpha = induced_sigma_action(inv_sg, theta)
    latt = idempotent_semilatticeoid(inv_sg)
    if latt.order.leq != theta.order.leq:
        raise InternalInconsistencyError("LatticeOrderMismatch", ())
    sdp = semidirect_product(alpha, latt)

    sig = sigma(inv_sg)
    cls_index = sig.class_index()
    idems = inv_sg.idempotents
    pos = {e: i for i, e in enumerate(idems)}
    sg = inv_sg.base
    inv = inv_sg.inv

    arrow_map = []
    for s in inv_sg.arrows():
        e = sg.mul[inv[s]][s]
        arrow_map.append(sdp.pair_index[(cls_index[s], pos[e])])

    phi = validate_morphism(sg, sdp.product.base, arrow_map)
    if not is_strong_morphism(phi):
        raise InternalInconsistencyError("PhiNotStrong", ())
    if len(set(arrow_map)) != inv_sg.n_arrows:
        raise InternalInconsistencyError("PhiNotInjective", ())
    if set(arrow_map) != set(range(sdp.product.n_arrows)):
        raise InternalInconsistencyError("PhiNotSurjective", ())
    return PTheoremBundle(
        structure=inv_sg,
        munn=theta,
        induced=alpha,
        lattice=latt,
        semidirect=sdp,
        morphism=phi,
    )


def ptheorem_isomorphism(inv_sg: InverseSemigroupoid) -> SemigroupoidMorphism:
    """The isomorphism onto the semidirect-product reconstruction."""
    return ptheorem_bundle(inv_sg).morphism
