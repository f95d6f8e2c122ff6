"""Inverse structure: pseudoinverses, idempotents, the natural partial order.

Pseudoinverses are found by exhaustive search and their uniqueness is
enforced, not assumed.  The natural partial order is materialized as a
poset on the arrow set; all four standard characterizations are computed
independently and must coincide.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import FiniteSemigroupoid, SemigroupoidMorphism, NOT_COMPOSABLE
from .errors import InternalInconsistencyError, ValidationError, Violation
from .posets import FinitePoset, poset_from_matrix


@dataclass(frozen=True)
class InverseSemigroupoid:
    """A semigroupoid in which every arrow has a unique pseudoinverse."""

    base: FiniteSemigroupoid
    inv: tuple[int, ...]
    idempotents: tuple[int, ...]
    order: FinitePoset

    @property
    def n_arrows(self) -> int:
        return self.base.n_arrows

    @property
    def n_objects(self) -> int:
        return self.base.n_objects

    def arrows(self) -> range:
        return range(self.base.n_arrows)

    def composable(self, s: int, t: int) -> bool:
        return self.base.composable(s, t)

    def parallel(self, s: int, t: int) -> bool:
        return self.base.parallel(s, t)

    def product(self, s: int, t: int) -> int:
        return self.base.product(s, t)

    def leq(self, s: int, t: int) -> bool:
        return self.order.leq[s][t]

    def source_idem(self, s: int) -> int:
        """The idempotent at the domain end, s* s."""
        return self.base.product(self.inv[s], s)

    def range_idem(self, s: int) -> int:
        """The idempotent at the codomain end, s s*."""
        return self.base.product(s, self.inv[s])


def _pseudoinverses(sg: FiniteSemigroupoid, s: int) -> list[int]:
    out = []
    for t in sg.arrows():
        if sg.dom[t] != sg.cod[s] or sg.cod[t] != sg.dom[s]:
            continue
        st = sg.mul[s][t]
        ts = sg.mul[t][s]
        if st == NOT_COMPOSABLE or ts == NOT_COMPOSABLE:
            continue
        if sg.mul[st][s] == s and sg.mul[ts][t] == t:
            out.append(t)
    return out


def _idempotents(sg: FiniteSemigroupoid) -> tuple[int, ...]:
    return tuple(
        e for e in sg.arrows() if sg.dom[e] == sg.cod[e] and sg.mul[e][e] == e
    )


def _order_matrix(sg: FiniteSemigroupoid, inv: Sequence[int], idems: Sequence[int]):
    """All four characterizations of the natural order; they must agree."""
    n = sg.n_arrows
    by_object = {}
    for e in idems:
        by_object.setdefault(sg.dom[e], []).append(e)

    def le_right_idem(s: int, t: int) -> bool:
        # s = t e for some idempotent e at dom(t)
        return any(sg.mul[t][e] == s for e in by_object.get(sg.dom[t], ()))

    def le_canonical(s: int, t: int) -> bool:
        # s = t (s* s)
        e = sg.mul[inv[s]][s]
        return sg.mul[t][e] == s

    def le_left_idem(s: int, t: int) -> bool:
        # s = f t for some idempotent f at cod(t)
        return any(sg.mul[f][t] == s for f in by_object.get(sg.cod[t], ()))

    def le_left_canonical(s: int, t: int) -> bool:
        # s = (s s*) t
        f = sg.mul[s][inv[s]]
        return sg.mul[f][t] == s

    matrix = [[False] * n for _ in range(n)]
    for s in range(n):
        for t in range(n):
            if not sg.parallel(s, t):
                continue
            votes = (
                le_right_idem(s, t),
                le_canonical(s, t),
                le_left_idem(s, t),
                le_left_canonical(s, t),
            )
            if len(set(votes)) != 1:
                raise InternalInconsistencyError(
                    "OrderCharacterizationMismatch", (s, t), f"votes {votes}"
                )
            matrix[s][t] = votes[0]
    return matrix


def promote_to_inverse(sg: FiniteSemigroupoid) -> InverseSemigroupoid:
    """Find the pseudoinverse of every arrow; fail on zero or several."""
    inv = []
    for s in sg.arrows():
        candidates = _pseudoinverses(sg, s)
        if not candidates:
            raise ValidationError("NoInverse", (s,))
        if len(candidates) > 1:
            raise ValidationError("NonUniqueInverse", (s, candidates[0], candidates[1]))
        inv.append(candidates[0])

    idems = _idempotents(sg)
    matrix = _order_matrix(sg, inv, idems)
    order = poset_from_matrix(matrix, names=sg.arrow_names)
    return InverseSemigroupoid(
        base=sg, inv=tuple(inv), idempotents=idems, order=order
    )


def natural_partial_order(inv_sg: InverseSemigroupoid) -> FinitePoset:
    """Recompute the natural order, asserting the four forms agree."""
    matrix = _order_matrix(inv_sg.base, inv_sg.inv, inv_sg.idempotents)
    return poset_from_matrix(matrix, names=inv_sg.base.arrow_names)


def is_groupoid(inv_sg: InverseSemigroupoid) -> bool:
    """Exactly one idempotent per object; cross-checked against the
    order-coincides-with-equality test."""
    per_object = [0] * inv_sg.n_objects
    for e in inv_sg.idempotents:
        per_object[inv_sg.base.dom[e]] += 1
    by_count = all(k == 1 for k in per_object)

    by_order = all(
        (s == t) == inv_sg.order.leq[s][t]
        for s in inv_sg.arrows()
        for t in inv_sg.arrows()
        if inv_sg.parallel(s, t)
    )
    if by_count != by_order:
        raise InternalInconsistencyError("GroupoidTestMismatch", (), f"{by_count} vs {by_order}")
    return by_count


def check_partial_morphism(
    f: Sequence[int], src: InverseSemigroupoid, dst: InverseSemigroupoid
) -> Violation | None:
    """First failure of the partial-morphism conditions, or None.

    Checks that f respects involution, preserves composability with
    f(s) f(t) <= f(st), and preserves the natural order.
    """
    for s in src.arrows():
        if dst.inv[f[s]] != f[src.inv[s]]:
            return Violation("InverseNotPreserved", (s,))
    for s in src.arrows():
        for t in src.arrows():
            if not src.composable(s, t):
                continue
            if not dst.composable(f[s], f[t]):
                return Violation("SubmultiplicativityFailure", (s, t))
            lhs = dst.base.mul[f[s]][f[t]]
            if not dst.leq(lhs, f[src.base.mul[s][t]]):
                return Violation("SubmultiplicativityFailure", (s, t))
    for s in src.arrows():
        for t in src.arrows():
            if src.parallel(s, t) and src.leq(s, t) and not dst.leq(f[s], f[t]):
                return Violation("OrderNotPreserved", (s, t))
    return None


def is_strong_morphism(phi: SemigroupoidMorphism) -> bool:
    """True iff composability is reflected: (phi s, phi t) composable
    implies (s, t) composable."""
    src, dst = phi.source, phi.target
    return all(
        src.composable(s, t)
        for s in src.arrows()
        for t in src.arrows()
        if dst.composable(phi.arrow_map[s], phi.arrow_map[t])
    )
