"""Internal groupoids in finite sets.

An :class:`InternalGroupoid` carries the full structure

    C2 --pi1, m, pi2--> C1 --d, c--> C0,   e: C0 -> C1,   i: C1 -> C1

where ``m(x)`` is the composite of the pair ``(pi1 x, pi2 x)`` with
``d pi1 = c pi2``: ``pi2 x`` is applied first.  Nothing assumes ``C2`` is the
canonical fiber product; :func:`validate_groupoid` checks that the square is a
pullback.  The triple-composable object ``C3`` is rebuilt on demand.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .finset import (
    CommSquare,
    ConeError,
    FinMap,
    FinSet,
    NotAPullback,
    NotCommutative,
    ShapeError,
    compose,
    first_difference,
    identity,
    induced_to_pullback,
    inverse,
    pullback,
    pullback_defect,
)
from .verdicts import Report, Verdict, failed, passed


@dataclass(frozen=True)
class InternalGroupoid:
    d: FinMap
    c: FinMap
    e: FinMap
    i: FinMap
    pi1: FinMap
    pi2: FinMap
    m: FinMap

    def __post_init__(self):
        c0, c1, c2 = self.d.cod, self.d.dom, self.m.dom
        shapes = {
            "c": (c1, c0), "e": (c0, c1), "i": (c1, c1),
            "pi1": (c2, c1), "pi2": (c2, c1), "m": (c2, c1),
        }
        for name, (dom, cod) in shapes.items():
            g = getattr(self, name)
            if g.dom != dom or g.cod != cod:
                raise ShapeError(f"{name} has shape {g.dom.size}->{g.cod.size}, "
                                 f"expected {dom.size}->{cod.size}")

    @property
    def c0(self) -> FinSet:
        return self.d.cod

    @property
    def c1(self) -> FinSet:
        return self.d.dom

    @property
    def c2(self) -> FinSet:
        return self.m.dom

    def composable_square(self) -> CommSquare:
        """The square ``d pi1 = c pi2``; raises NotCommutative if it is not one."""
        return CommSquare(top=self.pi2, left=self.pi1, bottom=self.d, right=self.c)

    def pair(self, u: FinMap, v: FinMap) -> FinMap:
        """``<u, v>`` into C2: the map with ``pi1 <u,v> = u`` and ``pi2 <u,v> = v``."""
        return induced_to_pullback(self.composable_square(), u, v)


class GroupoidReport(Report):
    pass


class GroupoidAxiomError(ValueError):
    def __init__(self, report: GroupoidReport):
        super().__init__("groupoid axioms fail: " + ", ".join(v.name for v in report.failures()))
        self.report = report


def _equation(name: str, lhs: FinMap, rhs: FinMap) -> Verdict:
    k = first_difference(lhs, rhs)
    return passed(name) if k is None else failed(name, lhs.dom.label(k))


def triple_composables(G: InternalGroupoid) -> tuple[FinSet, FinMap, FinMap]:
    """``C3`` as the pullback of the cospan ``d pi2: C2 -> C0 <- C1: c``."""
    return pullback(compose(G.d, G.pi2), G.c)


def associativity_maps(G: InternalGroupoid) -> tuple[FinMap, FinMap, FinMap, FinMap]:
    """``(p1, p2, 1 x m, m x 1)`` on C3."""
    _, p1, p2 = triple_composables(G)
    m_x_1 = G.pair(compose(G.m, p1), p2)
    tail = G.pair(compose(G.pi2, p1), p2)
    one_x_m = G.pair(compose(G.pi1, p1), compose(G.m, tail))
    return p1, p2, one_x_m, m_x_1


def validate_groupoid(G: InternalGroupoid) -> GroupoidReport:
    """Check every groupoid axiom and return one verdict per axiom."""
    d, c, e, i, m, pi1, pi2 = G.d, G.c, G.e, G.i, G.m, G.pi1, G.pi2
    one0, one1 = identity(G.c0), identity(G.c1)
    ed, ec = compose(e, d), compose(e, c)
    verdicts = [
        _equation("de=1", compose(d, e), one0),
        _equation("ce=1", compose(c, e), one0),
        _equation("dm=dpi2", compose(d, m), compose(d, pi2)),
        _equation("cm=cpi1", compose(c, m), compose(c, pi1)),
        _equation("dpi1=cpi2", compose(d, pi1), compose(c, pi2)),
        _equation("di=c", compose(d, i), c),
        _equation("ci=d", compose(c, i), d),
        _equation("ii=1", compose(i, i), one1),
        _equation("ie=e", compose(i, e), e),
    ]
    square_ok = verdicts[4].ok
    defect = pullback_defect(G.composable_square()) if square_ok else "square does not commute"
    verdicts.append(passed("pullback(dpi1=cpi2)") if defect is None
                    else failed("pullback(dpi1=cpi2)", detail=defect))

    laws = (
        ("m<1,ed>=1", (one1, ed), one1),
        ("m<ec,1>=1", (ec, one1), one1),
        ("m<1,i>=ec", (one1, i), ec),
        ("m<i,1>=ed", (i, one1), ed),
    )
    for name, (u, v), rhs in laws:
        try:
            verdicts.append(_equation(name, compose(m, G.pair(u, v)), rhs))
        except (ConeError, NotAPullback, NotCommutative) as exc:
            verdicts.append(failed(name, detail=f"pairing undefined: {exc}"))

    try:
        _, _, one_x_m, m_x_1 = associativity_maps(G)
        verdicts.append(_equation("assoc", compose(m, one_x_m), compose(m, m_x_1)))
    except (ConeError, NotAPullback, NotCommutative) as exc:
        verdicts.append(failed("assoc", detail=f"(1xm), (mx1) undefined: {exc}"))
    return GroupoidReport(tuple(verdicts))


class InvolutionDerivationError(ValueError):
    """``reason`` is ``"precondition"``, ``"pullback"`` or ``"verification"``."""

    def __init__(self, reason: str, message: str, witness=None):
        super().__init__(message)
        self.reason = reason
        self.witness = witness


def _fiber_witness(sq: CommSquare) -> tuple[int, int, int] | None:
    """``(a, b, n)`` for the least compatible pair whose apex fiber has n != 1 elements."""
    counts: dict[tuple[int, int], int] = {}
    for k in range(sq.apex.size):
        key = (sq.left(k), sq.top(k))
        counts[key] = counts.get(key, 0) + 1
    for a in range(sq.left.cod.size):
        for b in range(sq.top.cod.size):
            if sq.bottom(a) == sq.right(b) and counts.get((a, b), 0) != 1:
                return a, b, counts.get((a, b), 0)
    return None


def derive_involution(d: FinMap, c: FinMap, e: FinMap, m: FinMap,
                      pi1: FinMap, pi2: FinMap) -> FinMap:
    """Recover the inverse map from the multiplicative data alone.

    Inverses exist exactly when ``d m = d pi2`` is a pullback; then
    ``i = pi1 h`` where ``h`` is the pairing with ``m h = e d`` and ``pi2 h = 1``.
    """
    try:
        composable = CommSquare(top=pi2, left=pi1, bottom=d, right=c)
    except NotCommutative as exc:
        raise InvolutionDerivationError("precondition", str(exc)) from exc
    defect = pullback_defect(composable)
    if defect is not None:
        raise InvolutionDerivationError("precondition", f"C2 is not the pullback of d and c: {defect}")
    try:
        kernel = CommSquare(top=pi2, left=m, bottom=d, right=d)
    except NotCommutative as exc:
        raise InvolutionDerivationError("precondition", f"dm != dpi2: {exc}") from exc
    w = _fiber_witness(kernel)
    if w is not None:
        a, b, n = w
        raise InvolutionDerivationError(
            "pullback",
            f"square dm = dpi2 is not a pullback: fiber over ({a},{b}) has {n} elements", w)

    one = identity(d.dom)
    h = induced_to_pullback(kernel, compose(e, d), one)
    i = compose(pi1, h)

    ed, ec = compose(e, d), compose(e, c)
    checks = [
        ("di=c", compose(d, i), c),
        ("ci=d", compose(c, i), d),
        ("ii=1", compose(i, i), one),
        ("ie=e", compose(i, e), e),
    ]
    try:
        checks += [
            ("m<1,i>=ec", compose(m, induced_to_pullback(composable, one, i)), ec),
            ("m<i,1>=ed", compose(m, induced_to_pullback(composable, i, one)), ed),
        ]
    except ConeError as exc:
        raise InvolutionDerivationError("verification", f"inverse pairing undefined: {exc}") from exc
    for name, lhs, rhs in checks:
        k = first_difference(lhs, rhs)
        if k is not None:
            raise InvolutionDerivationError(
                "verification", f"derived i violates {name} at {lhs.dom.label(k)}", (name, k))
    return i


def make_groupoid_from_multiplicative_data(d: FinMap, c: FinMap, e: FinMap, m) -> InternalGroupoid:
    """Build a groupoid from a reflexive graph and a multiplication on the fiber product.

    ``m`` is a FinMap out of the canonical pullback of ``(d, c)`` or just its table.
    """
    one0 = identity(d.cod)
    if compose(d, e) != one0 or compose(c, e) != one0:
        raise ValueError("d and c must both be retractions of e")
    C2, pi1, pi2 = pullback(d, c)
    table = m.table if isinstance(m, FinMap) else tuple(m)
    m = FinMap(C2, d.dom, table)
    i = derive_involution(d, c, e, m, pi1, pi2)
    G = InternalGroupoid(d, c, e, i, pi1, pi2, m)
    report = validate_groupoid(G)
    if not report.ok:
        raise GroupoidAxiomError(report)
    return G


class NotAFunctor(ValueError):
    pass


@dataclass(frozen=True)
class GroupoidFunctor:
    source: InternalGroupoid
    target: InternalGroupoid
    f0: FinMap
    f1: FinMap

    def __post_init__(self):
        G, H, f0, f1 = self.source, self.target, self.f0, self.f1
        if f0.dom != G.c0 or f0.cod != H.c0 or f1.dom != G.c1 or f1.cod != H.c1:
            raise ShapeError("f0, f1 do not match the groupoids' carriers")
        checks = [
            ("f0d=d'f1", compose(f0, G.d), compose(H.d, f1)),
            ("f0c=c'f1", compose(f0, G.c), compose(H.c, f1)),
            ("f1e=e'f0", compose(f1, G.e), compose(H.e, f0)),
            ("f1i=i'f1", compose(f1, G.i), compose(H.i, f1)),
        ]
        for name, lhs, rhs in checks:
            k = first_difference(lhs, rhs)
            if k is not None:
                raise NotAFunctor(f"{name} fails at {lhs.dom.label(k)}")
        f2 = H.pair(compose(f1, G.pi1), compose(f1, G.pi2))
        k = first_difference(compose(H.m, f2), compose(f1, G.m))
        if k is not None:
            raise NotAFunctor(f"f1 does not preserve composition at {G.c2.label(k)}")

    @property
    def f2(self) -> FinMap:
        return self.target.pair(compose(self.f1, self.source.pi1), compose(self.f1, self.source.pi2))


def _arrow_signatures(G: InternalGroupoid) -> list[tuple]:
    hom: dict[tuple[int, int], int] = {}
    out: dict[int, int] = {}
    for a in range(G.c1.size):
        key = (G.d(a), G.c(a))
        hom[key] = hom.get(key, 0) + 1
        out[G.d(a)] = out.get(G.d(a), 0) + 1
    ids = set(G.e.table)
    comp = {(G.pi1(x), G.pi2(x)): G.m(x) for x in range(G.c2.size)}
    sigs = []
    for a in range(G.c1.size):
        x, y = G.d(a), G.c(a)
        order = 0
        if x == y:
            power, order = a, 1
            while power not in ids and order <= G.c1.size:
                power = comp.get((power, a), a)
                order += 1
        sigs.append((a in ids, x == y, hom[(x, y)], out[x], order))
    return sigs


def groupoids_isomorphic(G: InternalGroupoid, H: InternalGroupoid) -> Optional[tuple[GroupoidFunctor, GroupoidFunctor]]:
    """Find an isomorphism ``G -> H`` (with its inverse) by propagating backtracking search."""
    if (G.c0.size, G.c1.size, G.c2.size) != (H.c0.size, H.c1.size, H.c2.size):
        return None
    sg, sh = _arrow_signatures(G), _arrow_signatures(H)
    if sorted(sg) != sorted(sh):
        return None
    pairs_g = {(G.pi1(x), G.pi2(x)): x for x in range(G.c2.size)}
    pairs_h = {(H.pi1(x), H.pi2(x)): x for x in range(H.c2.size)}
    by_first: dict[int, list[int]] = {}
    by_second: dict[int, list[int]] = {}
    for (a, b) in pairs_g:
        by_first.setdefault(a, []).append(b)
        by_second.setdefault(b, []).append(a)

    def assign(state, a, b):
        f1, f1i, f0, f0i = (dict(s) for s in state)
        work = [(a, b)]
        while work:
            a, b = work.pop()
            if a in f1:
                if f1[a] != b:
                    return None
                continue
            if b in f1i or sg[a] != sh[b]:
                return None
            f1[a], f1i[b] = b, a
            for x, y in ((G.d(a), H.d(b)), (G.c(a), H.c(b))):
                if f0.get(x, y) != y or f0i.get(y, x) != x:
                    return None
                f0[x], f0i[y] = y, x
            work.append((G.i(a), H.i(b)))
            work.append((G.e(G.d(a)), H.e(H.d(b))))
            work.append((G.e(G.c(a)), H.e(H.c(b))))
            for other in by_first.get(a, ()):
                if other in f1:
                    hp = pairs_h.get((b, f1[other]))
                    if hp is None:
                        return None
                    work.append((G.m(pairs_g[(a, other)]), H.m(hp)))
            for other in by_second.get(a, ()):
                if other in f1:
                    hp = pairs_h.get((f1[other], b))
                    if hp is None:
                        return None
                    work.append((G.m(pairs_g[(other, a)]), H.m(hp)))
        return f1, f1i, f0, f0i

    def search(state):
        f1 = state[0]
        if len(f1) == G.c1.size:
            return state
        a = next(x for x in range(G.c1.size) if x not in f1)
        for b in range(H.c1.size):
            if b in state[1] or sg[a] != sh[b]:
                continue
            nxt = assign(state, a, b)
            if nxt is not None:
                found = search(nxt)
                if found is not None:
                    return found
        return None

    found = search(({}, {}, {}, {}))
    if found is None:
        return None
    f1_d, _, f0_d, _ = found
    f1 = FinMap(G.c1, H.c1, tuple(f1_d[a] for a in range(G.c1.size)))
    f0 = FinMap(G.c0, H.c0, tuple(f0_d[x] for x in range(G.c0.size)))
    # every functor law was enforced during propagation; these re-check it
    forward = GroupoidFunctor(G, H, f0, f1)
    backward = GroupoidFunctor(H, G, inverse(f0), inverse(f1))
    return forward, backward


def discrete_groupoid(X: FinSet | int) -> InternalGroupoid:
    one = identity(X if isinstance(X, FinSet) else FinSet(X))
    return InternalGroupoid(one, one, one, one, one, one, one)
