"""Graphed congruences, quotients, the minimal groupoid congruence sigma,
idempotent-pure tests, and E-unitarity.

Sigma is computed by a direct definitional scan and cross-validated by
two equational forms; redundancy is the test strategy throughout, so the
different routes never share their core loops.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import (
    SemigroupoidMorphism,
    NOT_COMPOSABLE,
    validate_morphism,
    validate_semigroupoid,
)
from .errors import InternalInconsistencyError, ValidationError
from .inverse import InverseSemigroupoid, is_groupoid, promote_to_inverse


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # keep the least index as representative for determinism
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


@dataclass(frozen=True)
class GraphedCongruence:
    """An equivalence on arrows relating only parallel arrows and
    compatible with multiplication, stored by least-index representative."""

    base: InverseSemigroupoid
    rep: tuple[int, ...]

    def related(self, s: int, t: int) -> bool:
        return self.rep[s] == self.rep[t]

    def classes(self) -> tuple[tuple[int, ...], ...]:
        buckets: dict[int, list[int]] = {}
        for s, r in enumerate(self.rep):
            buckets.setdefault(r, []).append(s)
        return tuple(tuple(buckets[r]) for r in sorted(buckets))

    def class_index(self) -> tuple[int, ...]:
        """Arrow -> index of its class in classes() order."""
        reps = sorted(set(self.rep))
        pos = {r: i for i, r in enumerate(reps)}
        return tuple(pos[r] for r in self.rep)

    def pairs(self) -> frozenset[tuple[int, int]]:
        n = len(self.rep)
        return frozenset(
            (s, t) for s in range(n) for t in range(n) if self.rep[s] == self.rep[t]
        )


def _reps_from_unionfind(uf: _UnionFind, n: int) -> tuple[int, ...]:
    rep = [uf.find(s) for s in range(n)]
    # normalize: representative is the least member of each class
    least: dict[int, int] = {}
    for s in range(n):
        r = rep[s]
        if r not in least or s < least[r]:
            least[r] = s
    return tuple(least[r] for r in rep)


def validate_congruence(cong: GraphedCongruence) -> None:
    """Raise unless the partition is a graphed congruence respecting
    the involution."""
    sg = cong.base.base
    n = sg.n_arrows
    for s in range(n):
        for t in range(s + 1, n):
            if cong.related(s, t) and not sg.parallel(s, t):
                raise ValidationError("NotGraphed", (s, t))
    for s1 in range(n):
        for t1 in range(n):
            if not cong.related(s1, t1):
                continue
            for s2 in range(n):
                if not sg.composable(s1, s2):
                    continue
                for t2 in range(n):
                    if not cong.related(s2, t2):
                        continue
                    if not cong.related(sg.mul[s1][s2], sg.mul[t1][t2]):
                        raise ValidationError("NotCompatible", (s1, t1, s2, t2))
    inv = cong.base.inv
    for s in range(n):
        for t in range(n):
            if cong.related(s, t) and not cong.related(inv[s], inv[t]):
                raise ValidationError("InvolutionNotRespected", (s, t))


def congruence_closure(
    inv_sg: InverseSemigroupoid, seed: Iterable[tuple[int, int]]
) -> GraphedCongruence:
    """Smallest congruence containing the seed pairs.

    Union-find plus a fixpoint loop over left/right multiplication;
    symmetry and transitivity come from the partition structure.
    """
    sg = inv_sg.base
    n = sg.n_arrows
    uf = _UnionFind(n)
    for s, t in seed:
        if not sg.parallel(s, t):
            raise ValidationError("NonParallelSeed", (s, t))
        uf.union(s, t)

    changed = True
    while changed:
        changed = False
        for s1 in range(n):
            for t1 in range(n):
                if uf.find(s1) != uf.find(t1):
                    continue
                for s2 in range(n):
                    if not sg.composable(s1, s2):
                        continue
                    for t2 in range(n):
                        if uf.find(s2) != uf.find(t2):
                            continue
                        if uf.union(sg.mul[s1][s2], sg.mul[t1][t2]):
                            changed = True

    cong = GraphedCongruence(base=inv_sg, rep=_reps_from_unionfind(uf, n))
    validate_congruence(cong)
    return cong


def sigma(inv_sg: InverseSemigroupoid) -> GraphedCongruence:
    """The minimal groupoid congruence: s ~ t iff some r lies below both."""
    sg = inv_sg.base
    n = sg.n_arrows
    order = inv_sg.order
    uf = _UnionFind(n)
    raw = set()
    for s in range(n):
        for t in range(n):
            if not sg.parallel(s, t):
                continue
            if any(order.leq[r][s] and order.leq[r][t] for r in range(n)):
                raw.add((s, t))
                uf.union(s, t)

    cong = GraphedCongruence(base=inv_sg, rep=_reps_from_unionfind(uf, n))
    # the scanned relation is an equivalence outright; the partition is
    # not allowed to silently close it
    if cong.pairs() != frozenset(raw):
        raise InternalInconsistencyError("SigmaNotEquivalence", ())
    validate_congruence(cong)
    if not is_groupoid(quotient(inv_sg, cong)[0]):
        raise InternalInconsistencyError("SigmaQuotientNotGroupoid", ())
    return cong


def sigma_by_equations(inv_sg: InverseSemigroupoid) -> GraphedCongruence:
    """Sigma via the equational forms: s e = t e for some idempotent e,
    and independently f s = f t for some idempotent f.  Both must agree."""
    sg = inv_sg.base
    n = sg.n_arrows
    idems = inv_sg.idempotents

    right = set()
    left = set()
    for s in range(n):
        for t in range(n):
            if not sg.parallel(s, t):
                continue
            for e in idems:
                if sg.composable(s, e) and sg.mul[s][e] == sg.mul[t][e]:
                    right.add((s, t))
                    break
            for f in idems:
                if sg.composable(f, s) and sg.mul[f][s] == sg.mul[f][t]:
                    left.add((s, t))
                    break
    if right != left:
        raise InternalInconsistencyError(
            "SigmaEquationMismatch", tuple(sorted(right ^ left))[:1]
        )

    uf = _UnionFind(n)
    for s, t in right:
        uf.union(s, t)
    cong = GraphedCongruence(base=inv_sg, rep=_reps_from_unionfind(uf, n))
    # the raw relation must already have been an equivalence
    if cong.pairs() != frozenset(right):
        raise InternalInconsistencyError("SigmaEquationNotEquivalence", ())
    validate_congruence(cong)
    return cong


def quotient(
    inv_sg: InverseSemigroupoid, cong: GraphedCongruence
) -> tuple[InverseSemigroupoid, SemigroupoidMorphism]:
    """The quotient inverse semigroupoid and its projection morphism.

    Objects are kept unchanged; classes are indexed by their least
    member, so quotients are deterministic.
    """
    sg = inv_sg.base
    classes = cong.classes()
    index = cong.class_index()
    reps = [cls[0] for cls in classes]

    dom = [sg.dom[r] for r in reps]
    cod = [sg.cod[r] for r in reps]
    triples = []
    for a, ra in enumerate(reps):
        for b, rb in enumerate(reps):
            if sg.dom[ra] != sg.cod[rb]:
                continue
            triples.append((a, b, index[sg.mul[ra][rb]]))
    names = tuple("[" + sg.arrow_names[r] + "]" for r in reps)
    qsg = validate_semigroupoid(
        dom,
        cod,
        triples,
        n_objects=sg.n_objects,
        arrow_names=names,
        object_names=sg.object_names,
    )
    q = promote_to_inverse(qsg)
    for s in sg.arrows():
        if q.inv[index[s]] != index[inv_sg.inv[s]]:
            raise InternalInconsistencyError("QuotientInvolutionMismatch", (s,))
    proj = validate_morphism(sg, qsg, index)
    return q, proj


def universal_groupoid_property(
    inv_sg: InverseSemigroupoid,
    phi: SemigroupoidMorphism,
    target: InverseSemigroupoid,
) -> SemigroupoidMorphism:
    """Factor a morphism into a groupoid through the sigma quotient.

    Returns the unique mediating morphism; uniqueness amounts to phi
    being constant on sigma classes, which is checked exhaustively.
    """
    if not is_groupoid(target):
        raise ValidationError("TargetNotGroupoid", ())
    cong = sigma(inv_sg)
    q, proj = quotient(inv_sg, cong)
    classes = cong.classes()
    mediating = []
    for cls in classes:
        images = {phi.arrow_map[s] for s in cls}
        if len(images) != 1:
            raise InternalInconsistencyError("NotConstantOnClasses", tuple(cls))
        mediating.append(images.pop())
    tilde = validate_morphism(q.base, target.base, mediating)
    for s in inv_sg.arrows():
        if tilde.arrow_map[proj.arrow_map[s]] != phi.arrow_map[s]:
            raise InternalInconsistencyError("FactorizationFailure", (s,))
    return tilde


def is_idempotent_pure(cong: GraphedCongruence) -> bool:
    """Definition check, cross-validated against both equivalent forms."""
    inv_sg = cong.base
    sg = inv_sg.base
    idems = set(inv_sg.idempotents)
    n = sg.n_arrows

    by_definition = all(
        s in idems
        for s in range(n)
        for e in idems
        if cong.related(s, e)
    )

    q, proj = quotient(inv_sg, cong)
    q_idems = set(q.idempotents)
    by_projection = all(
        s in idems for s in range(n) if proj.arrow_map[s] in q_idems
    )

    by_equation = all(
        sg.mul[inv_sg.inv[s]][t] in idems
        for s in range(n)
        for t in range(n)
        if cong.related(s, t)
    )

    if not (by_definition == by_projection == by_equation):
        raise InternalInconsistencyError(
            "IdempotentPureMismatch",
            (),
            f"def={by_definition} proj={by_projection} eq={by_equation}",
        )
    return by_definition


@dataclass(frozen=True)
class EUnitarityCertificate:
    """Verdict of the five equivalent E-unitarity conditions.

    ``conditions`` holds the five independent evaluations (they must
    agree); ``witness`` is the least (e, s) with e idempotent, e <= s
    and s not idempotent when the verdict is negative.
    """

    verdict: bool
    conditions: tuple[bool, bool, bool, bool, bool]
    witness: tuple[int, int] | None

    def __bool__(self) -> bool:
        return self.verdict


def is_e_unitary(inv_sg: InverseSemigroupoid) -> EUnitarityCertificate:
    """Evaluate all five equivalent E-unitarity conditions independently."""
    sg = inv_sg.base
    inv = inv_sg.inv
    idems = set(inv_sg.idempotents)
    order = inv_sg.order
    n = sg.n_arrows
    sig = sigma(inv_sg)

    # (1) sigma relates no non-idempotent to an idempotent
    cond1 = all(
        s in idems for s in range(n) for e in idems if sig.related(s, e)
    )

    # (2) the projection onto the quotient groupoid is idempotent pure
    q, proj = quotient(inv_sg, sig)
    q_idems = set(q.idempotents)
    cond2 = all(s in idems for s in range(n) if proj.arrow_map[s] in q_idems)

    # (3) sigma-related pairs have idempotent s* t and s t*
    def _pair_idem(s: int, t: int) -> bool:
        return (
            sg.mul[inv[s]][t] in idems and sg.mul[s][inv[t]] in idems
        )

    cond3 = all(
        _pair_idem(s, t)
        for s in range(n)
        for t in range(n)
        if sig.related(s, t)
    )

    # (4) the same, as an exact characterization of sigma on parallel pairs
    cond4 = all(
        sig.related(s, t) == _pair_idem(s, t)
        for s in range(n)
        for t in range(n)
        if sg.parallel(s, t)
    )

    # (5) an idempotent below s forces s idempotent
    cond5 = True
    witness = None
    for e in sorted(idems):
        for s in range(n):
            if s not in idems and order.leq[e][s]:
                cond5 = False
                if witness is None:
                    witness = (e, s)
                break
        if witness is not None:
            break

    conditions = (cond1, cond2, cond3, cond4, cond5)
    if len(set(conditions)) != 1:
        raise InternalInconsistencyError("InternalInconsistency", conditions)
    return EUnitarityCertificate(
        verdict=conditions[0], conditions=conditions, witness=witness
    )


def check_lemma_sts(inv_sg: InverseSemigroupoid) -> bool:
    """For E-unitary input: every sigma-congruent parallel pair (s, t)
    satisfies s t* t = t s* s."""
    if not is_e_unitary(inv_sg).verdict:
        raise ValidationError("NotEUnitary", ())
    sg = inv_sg.base
    inv = inv_sg.inv
    sig = sigma(inv_sg)
    for s in inv_sg.arrows():
        for t in inv_sg.arrows():
            if not sig.related(s, t):
                continue
            lhs = sg.mul[s][sg.mul[inv[t]][t]]
            rhs = sg.mul[t][sg.mul[inv[s]][s]]
            if lhs != rhs:
                return False
    return True
