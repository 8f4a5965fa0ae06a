"""Finite sets, total maps, and pullback/pushout machinery.

Elements of a :class:`FinSet` are the integers ``0..size-1``; labels are
display names only and never take part in equality.  Pullbacks and pushouts
are constructed canonically, but whether a given commutative square *is* a
pullback or pushout is always decided as a property of that square, through
bijectivity of the comparison map to the canonical construction.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class ShapeError(ValueError):
    """Domains and codomains of the maps involved do not line up."""


class NotCommutative(ValueError):
    pass


class ConeError(ValueError):
    """A would-be cone or cocone fails its defining equation."""


class NotAPullback(ValueError):
    pass


class NotAPushout(ValueError):
    pass


class OracleBoundError(ValueError):
    pass


@dataclass(frozen=True)
class FinSet:
    size: int
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.size < 0:
            raise ValueError(f"negative size {self.size}")
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != self.size:
                raise ValueError(f"{len(labels)} labels for a set of size {self.size}")
            if len(set(labels)) != len(labels):
                raise ValueError("labels must be pairwise distinct")
            object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return self.size

    def __iter__(self):
        return iter(range(self.size))

    def label(self, k: int) -> str:
        return self.labels[k] if self.labels is not None else str(k)

    def index(self, label: str) -> int:
        if self.labels is None:
            return int(label)
        return self.labels.index(label)


@dataclass(frozen=True)
class FinMap:
    """A total function ``dom -> cod`` stored as a table of codomain indices."""

    dom: FinSet
    cod: FinSet
    table: tuple[int, ...]

    def __post_init__(self):
        table = tuple(int(x) for x in self.table)
        object.__setattr__(self, "table", table)
        if len(table) != self.dom.size:
            raise ShapeError(f"table has {len(table)} entries, domain has {self.dom.size}")
        for k, x in enumerate(table):
            if not 0 <= x < self.cod.size:
                raise ShapeError(f"entry {k} -> {x} outside codomain of size {self.cod.size}")

    def __call__(self, k: int) -> int:
        return self.table[k]

    def __matmul__(self, other: FinMap) -> FinMap:
        return compose(self, other)

    def __repr__(self):
        return f"FinMap({self.dom.size}->{self.cod.size}, {list(self.table)})"

    @classmethod
    def from_function(cls, dom: FinSet, cod: FinSet, fn) -> FinMap:
        return cls(dom, cod, tuple(fn(k) for k in range(dom.size)))

    @classmethod
    def constant(cls, dom: FinSet, cod: FinSet, value: int) -> FinMap:
        return cls(dom, cod, (value,) * dom.size)

    def image(self) -> set[int]:
        return set(self.table)

    def fiber(self, y: int) -> list[int]:
        return [k for k, x in enumerate(self.table) if x == y]


def identity(A: FinSet) -> FinMap:
    return FinMap(A, A, tuple(range(A.size)))


def compose(g: FinMap, f: FinMap) -> FinMap:
    """``g after f``."""
    if f.cod != g.dom:
        raise ShapeError(f"cannot compose: cod(f) has size {f.cod.size}, dom(g) has size {g.dom.size}")
    gt = g.table
    return FinMap(f.dom, g.cod, tuple(gt[x] for x in f.table))


def compose_all(*maps: FinMap) -> FinMap:
    """``compose_all(h, g, f) == h @ g @ f``."""
    if not maps:
        raise ValueError("nothing to compose")
    result = maps[-1]
    for g in reversed(maps[:-1]):
        result = compose(g, result)
    return result


def is_mono(f: FinMap) -> bool:
    return len(set(f.table)) == len(f.table)


def is_epi(f: FinMap) -> bool:
    return len(set(f.table)) == f.cod.size


def is_iso(f: FinMap) -> bool:
    return is_mono(f) and is_epi(f)


def inverse(f: FinMap) -> FinMap:
    if not (is_mono(f) and is_epi(f)):
        raise ValueError("map is not a bijection")
    table = [0] * f.cod.size
    for k, x in enumerate(f.table):
        table[x] = k
    return FinMap(f.cod, f.dom, tuple(table))


def tuples(family: Sequence[FinMap]) -> list[tuple[int, ...]]:
    """Pointwise tupling ``a -> (f1(a), ..., fn(a))`` of a family with common domain."""
    if not family:
        raise ValueError("empty family")
    dom = family[0].dom
    for f in family[1:]:
        if f.dom != dom:
            raise ShapeError("family members must share a domain")
    return list(zip(*(f.table for f in family))) if dom.size else []


def is_jointly_mono(family: Sequence[FinMap]) -> bool:
    ts = tuples(family)
    return len(set(ts)) == len(ts)


def joint_mono_witness(family: Sequence[FinMap]) -> tuple[int, int] | None:
    """Smallest ``a`` colliding with a later ``a'`` under the tupling, or None."""
    seen: dict[tuple[int, ...], int] = {}
    first = None
    for a, t in enumerate(tuples(family)):
        if t in seen:
            cand = (seen[t], a)
            if first is None or cand < first:
                first = cand
        else:
            seen[t] = a
    return first


def first_difference(f: FinMap, g: FinMap) -> int | None:
    """Smallest element where two parallel maps disagree."""
    if f.dom != g.dom or f.cod != g.cod:
        raise ShapeError("maps are not parallel")
    for k, (x, y) in enumerate(zip(f.table, g.table)):
        if x != y:
            return k
    return None


@dataclass(frozen=True)
class CommSquare:
    """A commutative square::

        apex --top--> B
         |            |
        left        right
         v            v
         A --bottom-> C
    """

    top: FinMap
    left: FinMap
    bottom: FinMap
    right: FinMap

    def __post_init__(self):
        if self.top.dom != self.left.dom:
            raise ShapeError("top and left must share the apex")
        if self.top.cod != self.right.dom or self.left.cod != self.bottom.dom:
            raise ShapeError("square corners do not match")
        if self.bottom.cod != self.right.cod:
            raise ShapeError("bottom and right must share the coapex")
        k = first_difference(compose(self.right, self.top), compose(self.bottom, self.left))
        if k is not None:
            raise NotCommutative(f"square does not commute at apex element {k}")

    @property
    def apex(self) -> FinSet:
        return self.top.dom

    @property
    def coapex(self) -> FinSet:
        return self.bottom.cod

    def corner_sizes(self) -> tuple[int, int, int, int]:
        return (self.apex.size, self.left.cod.size, self.top.cod.size, self.coapex.size)


def pullback(f: FinMap, g: FinMap) -> tuple[FinSet, FinMap, FinMap]:
    """Fiber product of the cospan ``f: A -> C <- B: g``.

    Elements are the pairs ``(a, b)`` with ``f(a) == g(b)`` in lexicographic order.
    """
    if f.cod != g.cod:
        raise ShapeError("pullback needs a common codomain")
    by_value: dict[int, list[int]] = {}
    for b, y in enumerate(g.table):
        by_value.setdefault(y, []).append(b)
    pairs = [(a, b) for a, x in enumerate(f.table) for b in by_value.get(x, ())]
    P = FinSet(len(pairs))
    p1 = FinMap(P, f.dom, tuple(a for a, _ in pairs))
    p2 = FinMap(P, g.dom, tuple(b for _, b in pairs))
    return P, p1, p2


def pullback_square(f: FinMap, g: FinMap) -> CommSquare:
    _, p1, p2 = pullback(f, g)
    return CommSquare(top=p2, left=p1, bottom=f, right=g)


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        x, y = self.find(x), self.find(y)
        if x != y:
            # keep the smaller index as root
            if y < x:
                x, y = y, x
            self.parent[y] = x


def pushout(f: FinMap, g: FinMap) -> tuple[FinSet, FinMap, FinMap]:
    """Pushout of the span ``A <- X -> B`` given by ``f: X -> A`` and ``g: X -> B``.

    ``A + B`` is quotiented by ``f(x) ~ g(x)``; classes are numbered by their
    least member, with ``A`` indexed before ``B``.
    """
    if f.dom != g.dom:
        raise ShapeError("pushout needs a common domain")
    na = f.cod.size
    uf = UnionFind(na + g.cod.size)
    for x, y in zip(f.table, g.table):
        uf.union(x, na + y)
    index: dict[int, int] = {}
    cls = []
    for k in range(na + g.cod.size):
        r = uf.find(k)
        if r not in index:
            index[r] = len(index)
        cls.append(index[r])
    Q = FinSet(len(index))
    q1 = FinMap(f.cod, Q, tuple(cls[:na]))
    q2 = FinMap(g.cod, Q, tuple(cls[na:]))
    return Q, q1, q2


def pushout_square(f: FinMap, g: FinMap) -> CommSquare:
    _, q1, q2 = pushout(f, g)
    return CommSquare(top=g, left=f, bottom=q1, right=q2)


def pullback_comparison(sq: CommSquare) -> tuple[FinMap, list[tuple[int, int]]]:
    """Comparison from the apex to the canonical pullback of ``(bottom, right)``.

    Also returns the canonical pullback's pairs, for witness reporting.
    """
    P, p1, p2 = pullback(sq.bottom, sq.right)
    pairs = list(zip(p1.table, p2.table))
    where = {pair: k for k, pair in enumerate(pairs)}
    table = tuple(where[(sq.left(k), sq.top(k))] for k in range(sq.apex.size))
    return FinMap(sq.apex, P, table), pairs


def pushout_comparison(sq: CommSquare) -> FinMap:
    """Comparison from the canonical pushout of ``(left, top)`` to the coapex."""
    Q, q1, q2 = pushout(sq.left, sq.top)
    table: list[int | None] = [None] * Q.size
    for a, q in enumerate(q1.table):
        table[q] = sq.bottom(a)
    for b, q in enumerate(q2.table):
        if table[q] is None:
            table[q] = sq.right(b)
    return FinMap(Q, sq.coapex, tuple(table))


def is_pullback(sq: CommSquare) -> bool:
    cmp, _ = pullback_comparison(sq)
    return is_mono(cmp) and is_epi(cmp)


def is_pushout(sq: CommSquare) -> bool:
    cmp = pushout_comparison(sq)
    return is_mono(cmp) and is_epi(cmp)


def is_exact(sq: CommSquare) -> bool:
    return is_pullback(sq) and is_pushout(sq)


def pullback_defect(sq: CommSquare) -> str | None:
    """Why the square fails to be a pullback, or None if it is one."""
    cmp, pairs = pullback_comparison(sq)
    seen: dict[int, int] = {}
    for k, x in enumerate(cmp.table):
        if x in seen:
            return f"apex elements {seen[x]} and {k} both over {pairs[x]}"
        seen[x] = k
    for x, pair in enumerate(pairs):
        if x not in seen:
            return f"no apex element over {pair}"
    return None


def pushout_defect(sq: CommSquare) -> str | None:
    cmp = pushout_comparison(sq)
    seen: dict[int, int] = {}
    for q, x in enumerate(cmp.table):
        if x in seen:
            return f"pushout classes {seen[x]} and {q} both sent to coapex element {x}"
        seen[x] = q
    for x in range(sq.coapex.size):
        if x not in seen:
            return f"coapex element {x} not hit by either leg"
    return None


def induced_to_pullback(sq: CommSquare, u: FinMap, v: FinMap) -> FinMap:
    """The unique ``h`` with ``left h = u`` and ``top h = v``.

    ``u`` lands in the corner under ``left``, ``v`` in the corner under ``top``.
    """
    if u.dom != v.dom:
        raise ShapeError("cone legs must share a domain")
    if u.cod != sq.left.cod or v.cod != sq.top.cod:
        raise ShapeError("cone legs do not land in the square's corners")
    k = first_difference(compose(sq.bottom, u), compose(sq.right, v))
    if k is not None:
        raise ConeError(f"cone equation fails at element {k}")
    defect = pullback_defect(sq)
    if defect is not None:
        raise NotAPullback(defect)
    where = {(sq.left(k), sq.top(k)): k for k in range(sq.apex.size)}
    return FinMap(u.dom, sq.apex, tuple(where[(x, y)] for x, y in zip(u.table, v.table)))


def induced_from_pushout(sq: CommSquare, u: FinMap, v: FinMap) -> FinMap:
    """The unique ``h`` with ``h bottom = u`` and ``h right = v``."""
    if u.cod != v.cod:
        raise ShapeError("cocone legs must share a codomain")
    if u.dom != sq.bottom.dom or v.dom != sq.right.dom:
        raise ShapeError("cocone legs do not start at the square's corners")
    k = first_difference(compose(u, sq.left), compose(v, sq.top))
    if k is not None:
        raise ConeError(f"cocone equation fails at apex element {k}")
    defect = pushout_defect(sq)
    if defect is not None:
        raise NotAPushout(defect)
    table: list[int | None] = [None] * sq.coapex.size
    for a, x in enumerate(sq.bottom.table):
        table[x] = u(a)
    for b, x in enumerate(sq.right.table):
        table[x] = v(b)
    return FinMap(sq.coapex, u.cod, tuple(table))


# Exhaustive universal-property oracles.  Exponential; cross-checks only.

def _all_maps(n: int, m: int) -> Iterable[tuple[int, ...]]:
    return itertools.product(range(m), repeat=n)


def _oracle_bound(sq: CommSquare, bound: int | None, limit: int) -> int:
    biggest = max(sq.corner_sizes())
    if biggest > limit:
        raise OracleBoundError(f"corner of size {biggest} exceeds oracle limit {limit}")
    return biggest + 1 if bound is None else bound


def universal_pullback_oracle(sq: CommSquare, bound: int | None = None, limit: int = 5) -> bool:
    """Every cone from a test set of size <= bound factors uniquely through the apex."""
    bound = _oracle_bound(sq, bound, limit)
    A, P = sq.left.cod.size, sq.apex.size
    # v is constrained pointwise to the fiber of right over bottom(u(x))
    fibers = [sq.right.fiber(z) for z in range(sq.bottom.cod.size)]
    for t in range(bound + 1):
        mediators: dict[tuple, int] = {}
        for h in _all_maps(t, P):
            key = (tuple(sq.left(x) for x in h), tuple(sq.top(x) for x in h))
            mediators[key] = mediators.get(key, 0) + 1
        for u in _all_maps(t, A):
            for v in itertools.product(*(fibers[sq.bottom(x)] for x in u)):
                if mediators.get((u, v), 0) != 1:
                    return False
    return True


def universal_pushout_oracle(sq: CommSquare, bound: int | None = None, limit: int = 5) -> bool:
    """Every cocone into a test set of size <= bound factors uniquely through the coapex."""
    bound = _oracle_bound(sq, bound, limit)
    A, B, C = sq.left.cod.size, sq.top.cod.size, sq.coapex.size
    for t in range(bound + 1):
        mediators: dict[tuple, int] = {}
        for h in _all_maps(C, t):
            key = (tuple(h[x] for x in sq.bottom.table), tuple(h[x] for x in sq.right.table))
            mediators[key] = mediators.get(key, 0) + 1
        for u in _all_maps(A, t):
            # v is pinned on the image of top by the cocone equation
            forced: dict[int, int] = {}
            consistent = True
            for x in range(sq.apex.size):
                b, val = sq.top(x), u[sq.left(x)]
                if forced.setdefault(b, val) != val:
                    consistent = False
                    break
            if not consistent:
                continue
            free = [b for b in range(B) if b not in forced]
            for choice in _all_maps(len(free), t):
                v = [0] * B
                for b, val in forced.items():
                    v[b] = val
                for b, val in zip(free, choice):
                    v[b] = val
                if mediators.get((u, tuple(v)), 0) != 1:
                    return False
    return True


@dataclass(frozen=True)
class BiexactCompletion:
    """Both squares completing a parallel pair ``pi1, pi2: C2 -> C1``::

        C3 --p2--> C2
        |p1        |pi1
        C2 --pi2-> C1
        |pi1       |c
        C1 --d---> C0
    """

    pi1: FinMap
    pi2: FinMap
    c3: FinSet
    p1: FinMap
    p2: FinMap
    c0: FinSet
    d: FinMap
    c: FinMap
    ok = True

    @property
    def top_square(self) -> CommSquare:
        return CommSquare(top=self.p2, left=self.p1, bottom=self.pi2, right=self.pi1)

    @property
    def bottom_square(self) -> CommSquare:
        return CommSquare(top=self.pi2, left=self.pi1, bottom=self.d, right=self.c)


@dataclass(frozen=True)
class BiexactFailure:
    square: str  # "top" or "bottom"
    missing: str  # "pullback" or "pushout"
    detail: str
    ok = False

    def __str__(self):
        return f"{self.square} square is not a {self.missing}: {self.detail}"


def complete_biexact(pi1: FinMap, pi2: FinMap) -> BiexactCompletion | BiexactFailure:
    """Complete a parallel pair as a span and as a cospan and test exactness.

    Bottom square: pushout of the span ``(pi1, pi2)``, then checked to be a
    pullback.  Top square: pullback of the cospan ``(pi2, pi1)``, then
    checked to be a pushout.
    """
    if pi1.dom != pi2.dom or pi1.cod != pi2.cod:
        raise ShapeError("pi1 and pi2 must be parallel")
    c0, d, c = pushout(pi1, pi2)
    bottom = CommSquare(top=pi2, left=pi1, bottom=d, right=c)
    defect = pullback_defect(bottom)
    if defect is not None:
        return BiexactFailure("bottom", "pullback", defect)
    c3, p1, p2 = pullback(pi2, pi1)
    top = CommSquare(top=p2, left=p1, bottom=pi2, right=pi1)
    defect = pushout_defect(top)
    if defect is not None:
        return BiexactFailure("top", "pushout", defect)
    return BiexactCompletion(pi1, pi2, c3, p1, p2, c0, d, c)
