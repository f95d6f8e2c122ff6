"""The universal (ordered) globalization of a partial action.

The carrier of the enveloping global action is the quotient of the pair
set D = {(s, x) : x in the domain of the idempotent s* s} by the
equivalence generated by two rules: transport along a composable pair
(theta of t* s sends x to y), and identification of idempotent tags on a
shared point.  Classes are managed by union-find; the generating rules
only need to be seeded since transitivity comes from the partition.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .actions import (
    EquivariantMap,
    PartialActionData,
    check_equivariant,
    make_action,
    orbit,
    validate_partial_action_E,
    validate_partial_action_P,
)
from .errors import InternalInconsistencyError, ValidationError, Violation
from .posets import FinitePoset, validate_poset


@dataclass(frozen=True)
class GlobalizationResult:
    """The enveloping global action together with its bookkeeping.

    ``pairs`` lists D lexicographically; ``class_of`` maps a pair index
    to its class (a carrier point of ``envelope``); ``embed`` maps each
    original carrier point into the class set; ``order`` is the induced
    order (present iff the input was ordered) and coincides with the
    order carried by ``envelope``.
    """

    action: PartialActionData
    pairs: tuple[tuple[int, int], ...]
    class_of: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    envelope: PartialActionData
    embed: tuple[int, ...]
    order: FinitePoset | None

    @cached_property
    def pair_index(self) -> dict[tuple[int, int], int]:
        return {p: i for i, p in enumerate(self.pairs)}

    def canonical_rep(self, cls: int) -> tuple[int, int]:
        return self.pairs[self.classes[cls][0]]

    @property
    def n_classes(self) -> int:
        return len(self.classes)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra


def globalize(a: PartialActionData) -> GlobalizationResult:
    """Construct the universal globalization of a valid partial action."""
    violation = validate_partial_action_E(a)
    if violation is not None:
        raise ValidationError(violation.code, violation.witness)

    actor = a.actor
    sg = actor.base
    inv = actor.inv

    pairs: list[tuple[int, int]] = []
    for s in actor.arrows():
        e = sg.mul[inv[s]][s]
        for x in sorted(a.domains[e]):
            pairs.append((s, x))
    index = {p: i for i, p in enumerate(pairs)}

    uf = _UnionFind(len(pairs))
    # transport rule: (s, x) ~ (t, theta_{t* s}(x)) whenever cod t = cod s
    # and x lies in the domain at s* t
    for i, (s, x) in enumerate(pairs):
        for t in actor.arrows():
            if sg.cod[t] != sg.cod[s]:
                continue
            if x not in a.domains[sg.mul[inv[s]][t]]:
                continue
            y = a.maps[sg.mul[inv[t]][s]][x]
            uf.union(i, index[(t, y)])
    # idempotent rule: (e, x) ~ (f, x) for idempotent tags on one point
    for x in range(a.carrier_size):
        tagged = [e for e in actor.idempotents if x in a.domains[e]]
        for e in tagged[1:]:
            uf.union(index[(tagged[0], x)], index[(e, x)])

    roots = sorted({uf.find(i) for i in range(len(pairs))})
    cls_of_root = {r: c for c, r in enumerate(roots)}
    class_of = tuple(cls_of_root[uf.find(i)] for i in range(len(pairs)))
    members: list[list[int]] = [[] for _ in roots]
    for i in range(len(pairs)):
        members[class_of[i]].append(i)
    classes = tuple(tuple(ms) for ms in members)

    class_names = tuple(
        "[%s,%s]"
        % (sg.arrow_names[pairs[ms[0]][0]], a.carrier_names[pairs[ms[0]][1]])
        for ms in classes
    )

    # carrier sets and maps of the enveloping action
    domains_env: list[set[int]] = []
    member_sets: list[list[set[int]]] = []
    for s in actor.arrows():
        dom_pairs = set()
        for i, (p, x) in enumerate(pairs):
            if sg.cod[p] != sg.cod[s]:
                continue
            sp = sg.mul[inv[s]][p]
            e = sg.mul[inv[sp]][sp]
            if x in a.domains[e]:
                dom_pairs.add(i)
        domains_env.append({class_of[i] for i in dom_pairs})
        member_sets.append([set() for _ in classes])
        for i in dom_pairs:
            member_sets[s][class_of[i]].add(i)

    maps_env: list[dict[int, int]] = []
    for s in actor.arrows():
        theta: dict[int, int] = {}
        for c in sorted(domains_env[inv[s]]):
            values = set()
            for i in member_sets[inv[s]][c]:
                p, x = pairs[i]
                values.add(class_of[index[(sg.mul[s][p], x)]])
            if len(values) != 1:
                raise InternalInconsistencyError("EnvelopeMapNotWellDefined", (s, c))
            theta[c] = values.pop()
        maps_env.append(theta)

    order = None
    if a.order is not None:
        order = _class_order(a, pairs, index, class_of, classes, class_names)

    envelope = make_action(
        actor,
        class_names,
        [frozenset(d) for d in domains_env],
        maps_env,
        order=order,
        global_flag=True,
    )

    embed = []
    for x in range(a.carrier_size):
        e = min(e for e in actor.idempotents if x in a.domains[e])
        embed.append(class_of[index[(e, x)]])

    result = GlobalizationResult(
        action=a,
        pairs=tuple(pairs),
        class_of=class_of,
        classes=classes,
        envelope=envelope,
        embed=tuple(embed),
        order=order,
    )

    # construction-time self-checks backed by the globalization theorem
    if len(set(embed)) != a.carrier_size:
        raise InternalInconsistencyError("EmbeddingNotInjective", ())
    for validator in (validate_partial_action_E, validate_partial_action_P):
        v = validator(envelope)
        if v is not None:
            raise InternalInconsistencyError("EnvelopeNotGlobal", (v.code, v.witness))
    v = check_equivariant(
        EquivariantMap(a, envelope, tuple(embed)), ordered=a.order is not None
    )
    if v is not None:
        raise InternalInconsistencyError("EmbeddingNotEquivariant", (v.code, v.witness))
    if orbit(envelope, set(embed)) != frozenset(range(len(classes))):
        raise InternalInconsistencyError("OrbitNotFull", ())
    return result


def _class_order(a, pairs, index, class_of, classes, class_names) -> FinitePoset:
    """Order on classes via the canonical-representative criterion:
    c1 <= c2 iff the canonical representative (p, z) of c2 admits some
    z' <= z with (p, z') in the class c1."""
    order = a.order
    n = len(classes)
    relation = []
    for c2 in range(n):
        p, z = pairs[classes[c2][0]]
        for zp in sorted(order.downset(z)):
            i = index.get((p, zp))
            if i is not None:
                relation.append((class_of[i], c2))
    try:
        return validate_poset(relation, n, names=class_names, auto_close=False)
    except ValidationError as exc:
        raise InternalInconsistencyError(
            "InternalInconsistency", exc.witness, f"class order: {exc.code}"
        ) from exc


def class_order(r: GlobalizationResult) -> FinitePoset:
    """Recompute the induced order on classes (ordered input only)."""
    if r.action.order is None:
        raise ValidationError("NotOrdered", ())
    names = tuple(r.envelope.carrier_names)
    return _class_order(
        r.action, r.pairs, r.pair_index, r.class_of, r.classes, names
    )


def _definition_leq(r: GlobalizationResult, c1: int, c2: int) -> bool:
    """The order on classes by its defining formula, quantifying over all
    representatives: some representative (p, y') of c2 and some x' <= y'
    put (p, x') in c1."""
    order = r.action.order
    for i in r.classes[c2]:
        p, yp = r.pairs[i]
        for xp in order.downset(yp):
            j = r.pair_index.get((p, xp))
            if j is not None and r.class_of[j] == c1:
                return True
    return False


def check_lemma_tec(r: GlobalizationResult) -> list[Violation]:
    """Exhaustively verify the three facts about the pair equivalence on
    an ordered input, plus agreement of both order computations.

    (i) two pairs with the same arrow are related only when their points
    coincide; (ii) relatedness transports downward along the carrier
    order; (iii) the order holds through one representative iff it holds
    through every representative of the upper class.
    """
    if r.action.order is None:
        raise ValidationError("NotOrdered", ())
    order = r.action.order
    out: list[Violation] = []

    same_arrow: dict[int, list[int]] = {}
    for i, (s, x) in enumerate(r.pairs):
        same_arrow.setdefault(s, []).append(i)
    for s, idxs in same_arrow.items():
        for i in idxs:
            for j in idxs:
                if i < j and r.class_of[i] == r.class_of[j]:
                    out.append(
                        Violation(
                            "SameArrowRelatednessFailure",
                            (s, r.pairs[i][1], r.pairs[j][1]),
                        )
                    )

    for i, (s, x) in enumerate(r.pairs):
        for j, (t, y) in enumerate(r.pairs):
            if r.class_of[i] != r.class_of[j]:
                continue
            for xp in order.downset(x):
                ii = r.pair_index.get((s, xp))
                if ii is None:
                    out.append(Violation("DownwardTransportFailure", (s, x, t, y, xp)))
                    continue
                found = any(
                    r.pair_index.get((t, yp)) is not None
                    and r.class_of[r.pair_index[(t, yp)]] == r.class_of[ii]
                    for yp in order.downset(y)
                )
                if not found:
                    out.append(Violation("DownwardTransportFailure", (s, x, t, y, xp)))

    n = r.n_classes
    for c1 in range(n):
        for c2 in range(n):
            if not _definition_leq(r, c1, c2):
                continue
            # every representative of c2 must admit a witness below it
            for j in r.classes[c2]:
                p, z = r.pairs[j]
                ok = any(
                    r.pair_index.get((p, zp)) is not None
                    and r.class_of[r.pair_index[(p, zp)]] == c1
                    for zp in order.downset(z)
                )
                if not ok:
                    out.append(
                        Violation("RepresentativeCriterionFailure", (c1, c2, p, z))
                    )

    stored = r.order
    for c1 in range(n):
        for c2 in range(n):
            if stored.leq[c1][c2] != _definition_leq(r, c1, c2):
                out.append(Violation("OrderComputationMismatch", (c1, c2)))
    return out


def universal_map(
    r: GlobalizationResult, target: PartialActionData, j: Sequence[int]
) -> EquivariantMap:
    """The unique mediating map from the globalization to another global
    ordered action extending the input through ``j``.

    Every class [s, x] is sent to the target map of s applied to j(x);
    the value is independent of the representative, the composite with
    the embedding recovers j, and the forced-value propagation from the
    embedded copy certifies uniqueness.
    """
    if target.order is None or not target.global_flag:
        raise ValidationError("NotGlobalOrdered", ())
    for validator in (validate_partial_action_E, validate_partial_action_P):
        violation = validator(target)
        if violation is not None:
            raise ValidationError(violation.code, violation.witness)
    jmap = tuple(j)
    violation = check_equivariant(
        EquivariantMap(r.action, target, jmap), ordered=True
    )
    if violation is not None:
        raise ValidationError(violation.code, violation.witness)

    k = []
    for cls in range(r.n_classes):
        values = set()
        for i in r.classes[cls]:
            s, x = r.pairs[i]
            zeta = target.maps[s]
            if jmap[x] not in zeta:
                raise InternalInconsistencyError("WellDefinednessFailure", (s, x))
            values.add(zeta[jmap[x]])
        if len(values) != 1:
            raise InternalInconsistencyError("WellDefinednessFailure", (cls,))
        k.append(values.pop())
    kmap = tuple(k)

    for x in range(r.action.carrier_size):
        if kmap[r.embed[x]] != jmap[x]:
            raise InternalInconsistencyError("WellDefinednessFailure", (x,))
    mediating = EquivariantMap(r.envelope, target, kmap)
    violation = check_equivariant(mediating, ordered=True)
    if violation is not None:
        raise InternalInconsistencyError(
            "WellDefinednessFailure", (violation.code, violation.witness)
        )

    # uniqueness: values on the embedded copy propagate along the action
    # and reach every class, forcing any equivariant alternative to agree
    reached = set(r.embed)
    actor = r.action.actor
    for s in actor.arrows():
        eta_s = r.envelope.maps[s]
        zeta_s = target.maps[s]
        for x in range(r.action.carrier_size):
            c0 = r.embed[x]
            if c0 not in eta_s:
                continue
            c = eta_s[c0]
            reached.add(c)
            if jmap[x] not in zeta_s or zeta_s[jmap[x]] != kmap[c]:
                raise InternalInconsistencyError("UniquenessFailure", (s, x))
    if reached != set(range(r.n_classes)):
        raise InternalInconsistencyError("UniquenessFailure", ())
    return mediating
