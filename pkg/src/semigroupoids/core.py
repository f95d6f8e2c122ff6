"""Finite graphed semigroupoids as validated partial multiplication tables.

Arrows and objects are dense integer indices; names are metadata only.
The product is stored as an n x n table with a ``-1`` sentinel on
non-composable pairs, so the validator can enforce that the sentinel
pattern matches the dom/cod graph exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ValidationError

NOT_COMPOSABLE = -1


def _default_names(prefix: str, n: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(n))


@dataclass(frozen=True)
class FiniteSemigroupoid:
    """A finite semigroupoid over objects ``0..n_objects-1``.

    ``mul[s][t]`` is the product arrow when ``dom[s] == cod[t]`` and
    ``-1`` otherwise.  Instances are immutable after validation; build
    them through :func:`validate_semigroupoid`.
    """

    n_objects: int
    dom: tuple[int, ...]
    cod: tuple[int, ...]
    mul: tuple[tuple[int, ...], ...]
    arrow_names: tuple[str, ...]
    object_names: tuple[str, ...]

    @property
    def n_arrows(self) -> int:
        return len(self.dom)

    def arrows(self) -> range:
        return range(self.n_arrows)

    def composable(self, s: int, t: int) -> bool:
        return self.dom[s] == self.cod[t]

    def parallel(self, s: int, t: int) -> bool:
        return self.dom[s] == self.dom[t] and self.cod[s] == self.cod[t]

    def product(self, s: int, t: int) -> int:
        r = self.mul[s][t]
        if r == NOT_COMPOSABLE:
            raise ValueError(f"arrows {s} and {t} are not composable")
        return r


def composable_pairs(sg: FiniteSemigroupoid) -> frozenset[tuple[int, int]]:
    """All pairs (s, t) with dom(s) = cod(t)."""
    return frozenset(
        (s, t)
        for s in sg.arrows()
        for t in sg.arrows()
        if sg.composable(s, t)
    )


def validate_semigroupoid(
    dom: Sequence[int],
    cod: Sequence[int],
    triples: Iterable[tuple[int, int, int]],
    *,
    n_objects: int | None = None,
    arrow_names: Sequence[str] | None = None,
    object_names: Sequence[str] | None = None,
) -> FiniteSemigroupoid:
    """Validate raw multiplication data and build a semigroupoid.

    ``triples`` lists the partial product as (s, t, s*t) arrow triples.
    Raises :class:`ValidationError` naming the first violated axiom with
    the smallest witness under index order.
    """
    n = len(dom)
    if len(cod) != n:
        raise ValidationError("MalformedTable", (), "dom and cod lengths differ")
    if n_objects is None:
        n_objects = max([*dom, *cod], default=-1) + 1
    dom = tuple(dom)
    cod = tuple(cod)
    for s in range(n):
        if not (0 <= dom[s] < n_objects and 0 <= cod[s] < n_objects):
            raise ValidationError("MalformedTable", (s,), "object index out of range")

    table = [[NOT_COMPOSABLE] * n for _ in range(n)]
    for s, t, r in sorted(triples):
        for a in (s, t, r):
            if not (0 <= a < n):
                raise ValidationError("MalformedTable", (s, t, r), "arrow index out of range")
        if dom[s] != cod[t]:
            raise ValidationError("DefinedOnNonComposablePair", (s, t))
        if table[s][t] != NOT_COMPOSABLE and table[s][t] != r:
            raise ValidationError("DuplicateProduct", (s, t))
        table[s][t] = r

    for s in range(n):
        for t in range(n):
            if dom[s] == cod[t] and table[s][t] == NOT_COMPOSABLE:
                raise ValidationError("UndefinedOnComposablePair", (s, t))

    for s in range(n):
        for t in range(n):
            r = table[s][t]
            if r == NOT_COMPOSABLE:
                continue
            if dom[r] != dom[t] or cod[r] != cod[s]:
                raise ValidationError("DomCodMismatch", (s, t))

    for r in range(n):
        for s in range(n):
            if dom[r] != cod[s]:
                continue
            rs = table[r][s]
            for t in range(n):
                if dom[s] != cod[t]:
                    continue
                st = table[s][t]
                if table[rs][t] != table[r][st]:
                    raise ValidationError("AssociativityFailure", (r, s, t))

    used = set(dom) | set(cod)
    for u in range(n_objects):
        if u not in used:
            raise ValidationError("OrphanObject", (u,))

    if arrow_names is None:
        arrow_names = _default_names("a", n)
    if object_names is None:
        object_names = _default_names("u", n_objects)
    if len(arrow_names) != n or len(object_names) != n_objects:
        raise ValidationError("MalformedTable", (), "name lists have wrong length")

    return FiniteSemigroupoid(
        n_objects=n_objects,
        dom=dom,
        cod=cod,
        mul=tuple(tuple(row) for row in table),
        arrow_names=tuple(arrow_names),
        object_names=tuple(object_names),
    )


def semigroupoid_triples(sg: FiniteSemigroupoid) -> list[tuple[int, int, int]]:
    """The defined products of ``sg`` as sorted (s, t, s*t) triples."""
    return [
        (s, t, sg.mul[s][t])
        for s in sg.arrows()
        for t in sg.arrows()
        if sg.mul[s][t] != NOT_COMPOSABLE
    ]


@dataclass(frozen=True)
class SemigroupoidMorphism:
    """An arrow map with its unique graph-morphism companion on objects."""

    source: FiniteSemigroupoid
    target: FiniteSemigroupoid
    arrow_map: tuple[int, ...]
    object_map: tuple[int, ...]

    def __call__(self, s: int) -> int:
        return self.arrow_map[s]


def validate_morphism(
    source: FiniteSemigroupoid,
    target: FiniteSemigroupoid,
    arrow_map: Sequence[int],
    object_map: Sequence[int] | None = None,
) -> SemigroupoidMorphism:
    """Check multiplicativity and derive/verify the object map."""
    n = source.n_arrows
    if len(arrow_map) != n:
        raise ValidationError("MalformedTable", (), "arrow map has wrong length")
    f = tuple(arrow_map)
    for s in f:
        if not (0 <= s < target.n_arrows):
            raise ValidationError("MalformedTable", (s,), "arrow image out of range")

    for s in range(n):
        for t in range(n):
            if not source.composable(s, t):
                continue
            if not target.composable(f[s], f[t]):
                raise ValidationError("ComposabilityNotPreserved", (s, t))
            if target.mul[f[s]][f[t]] != f[source.mul[s][t]]:
                raise ValidationError("NotMultiplicative", (s, t))

    # The object map is forced by the dom/cod squares; conflicting
    # requirements mean no graph-morphism companion exists.
    obj: dict[int, int] = {}
    for s in range(n):
        for u, v in ((source.dom[s], target.dom[f[s]]), (source.cod[s], target.cod[f[s]])):
            if obj.setdefault(u, v) != v:
                raise ValidationError("ObjectMapConflict", (u,))
    derived = tuple(obj[u] for u in range(source.n_objects))

    if object_map is not None:
        if tuple(object_map) != derived:
            raise ValidationError("ObjectMapConflict", ())
    return SemigroupoidMorphism(source, target, f, derived)


def compose_morphisms(
    g: SemigroupoidMorphism, f: SemigroupoidMorphism
) -> SemigroupoidMorphism:
    """The composite g after f, revalidated."""
    if f.target is not g.source and f.target != g.source:
        raise ValidationError("MalformedTable", (), "morphisms not composable")
    return validate_morphism(
        f.source, g.target, tuple(g.arrow_map[a] for a in f.arrow_map)
    )


def identity_morphism(sg: FiniteSemigroupoid) -> SemigroupoidMorphism:
    return SemigroupoidMorphism(
        sg, sg, tuple(range(sg.n_arrows)), tuple(range(sg.n_objects))
    )
