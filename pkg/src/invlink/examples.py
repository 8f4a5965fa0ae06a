"""Constructors for the standard families of involutive-2-links.

Each family describes ``C1``, ``C2``, ``m``, ``theta`` and ``phi`` on explicit
elements (tuples); :func:`_build` indexes them.  Carriers that are products or
tagged disjoint unions are ordered lexicographically.  Monoids are written
multiplicatively throughout.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

from .algebra import (
    AlgebraError,
    FinGroup,
    FinInverseSemigroup,
    FinMonoid,
    GroupAction,
    OpenCover,
    monoid_hom_report,
)
from .finset import FinMap, FinSet, identity, pullback
from .groupoid import InternalGroupoid, make_groupoid_from_multiplicative_data
from .inv2link import Inv2Link
from .verdicts import Report, failed, passed


def _fmt(x) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(_fmt(y) for y in x) + ")"
    return str(x)


def _as_set(X: FinSet | int) -> FinSet:
    return X if isinstance(X, FinSet) else FinSet(X)


def _build(c1: Sequence[Hashable], c2: Sequence[Hashable],
           m: Callable, theta: Callable, phi: Callable) -> Inv2Link:
    i1 = {x: k for k, x in enumerate(c1)}
    i2 = {x: k for k, x in enumerate(c2)}
    C1 = FinSet(len(c1), [_fmt(x) for x in c1])
    C2 = FinSet(len(c2), [_fmt(x) for x in c2])

    def table(fn, index, name):
        out = []
        for x in c2:
            y = fn(x)
            if y not in index:
                raise ValueError(f"{name} sends {_fmt(x)} to {_fmt(y)}, outside its codomain")
            out.append(index[y])
        return tuple(out)

    return Inv2Link(
        FinMap(C2, C1, table(m, i1, "m")),
        FinMap(C2, C2, table(theta, i2, "theta")),
        FinMap(C2, C2, table(phi, i2, "phi")),
    )


def discrete(X: FinSet | int) -> Inv2Link:
    X = _as_set(X)
    one = identity(X)
    return Inv2Link(one, one, one)


def codiscrete(X: FinSet | int) -> Inv2Link:
    n = _as_set(X).size
    c1 = list(itertools.product(range(n), repeat=2))
    c2 = list(itertools.product(range(n), repeat=3))
    return _build(c1, c2,
                  lambda t: (t[0], t[2]),
                  lambda t: (t[1], t[0], t[2]),
                  lambda t: (t[0], t[2], t[1]))


def equivalence_report(n: int, R: set[tuple[int, int]]) -> Report:
    verdicts = []
    bad = next((x for x in range(n) if (x, x) not in R), None)
    verdicts.append(passed("reflexive") if bad is None else failed("reflexive", bad))
    bad = next(((x, y) for x, y in sorted(R) if (y, x) not in R), None)
    verdicts.append(passed("symmetric") if bad is None else failed("symmetric", _fmt(bad)))
    bad = next(((x, y, z) for x, y in sorted(R) for z in range(n)
                if (y, z) in R and (x, z) not in R), None)
    verdicts.append(passed("transitive") if bad is None else failed("transitive", _fmt(bad)))
    return Report(tuple(verdicts))


def from_equivalence_relation(X: FinSet | int, R: Iterable[tuple[int, int]]) -> Inv2Link:
    n = _as_set(X).size
    R = {(int(x), int(y)) for x, y in R}
    if any(not (0 <= x < n and 0 <= y < n) for x, y in R):
        raise ValueError("relation mentions points outside X")
    report = equivalence_report(n, R)
    if not report.ok:
        raise AlgebraError("equivalence relation", report)
    c1 = sorted(R)
    c2 = [(x, y, z) for x, y in c1 for z in range(n) if (y, z) in R]
    return _build(c1, c2,
                  lambda t: (t[0], t[2]),
                  lambda t: (t[1], t[0], t[2]),
                  lambda t: (t[0], t[2], t[1]))


def partition_relation(blocks: Sequence[int]) -> set[tuple[int, int]]:
    """Equivalence relation whose classes are given by a block label per point."""
    return {(x, y) for x in range(len(blocks)) for y in range(len(blocks)) if blocks[x] == blocks[y]}


def cech(cover: OpenCover) -> Inv2Link:
    cover.check()
    U = cover.parts
    idx = range(len(U))
    c1 = [(i, j, x) for i in idx for j in idx for x in sorted(U[i] & U[j])]
    c2 = [(i, j, k, x) for i in idx for j in idx for k in idx for x in sorted(U[i] & U[j] & U[k])]
    return _build(c1, c2,
                  lambda t: (t[0], t[2], t[3]),
                  lambda t: (t[1], t[0], t[2], t[3]),
                  lambda t: (t[0], t[2], t[1], t[3]))


def from_group(G: FinGroup) -> Inv2Link:
    G.check()
    mul, inv = G.mul, G.inv
    els = range(G.order)
    c2 = list(itertools.product(els, repeat=2))
    return _build(list(els), c2,
                  lambda t: mul(*t),
                  lambda t: (inv[t[0]], mul(*t)),
                  lambda t: (mul(*t), inv[t[1]]))


def from_group_action(A: GroupAction) -> Inv2Link:
    A.check()
    G, xi = A.group, A.xi
    mul, inv = G.mul, G.inv
    c1 = list(itertools.product(range(G.order), range(A.carrier.size)))
    c2 = list(itertools.product(range(G.order), range(G.order), range(A.carrier.size)))
    return _build(c1, c2,
                  lambda t: (mul(t[0], t[1]), t[2]),
                  lambda t: (inv[t[0]], mul(t[0], t[1]), t[2]),
                  lambda t: (mul(t[0], t[1]), inv[t[1]], xi[t[1]][t[2]]))


def from_group_monoid_hom(G: FinGroup, M: FinMonoid, h: Sequence[int]) -> Inv2Link:
    G.check()
    M.check()
    h = tuple(int(x) for x in h)
    if len(h) != G.order or any(not 0 <= x < M.order for x in h):
        raise ValueError("h must map G into M")
    report = monoid_hom_report(G, M, h)
    if not report.ok:
        raise AlgebraError("monoid homomorphism", report)
    mul, inv = G.mul, G.inv
    c1 = list(itertools.product(range(G.order), range(M.order)))
    c2 = list(itertools.product(range(G.order), range(G.order), range(M.order)))
    return _build(c1, c2,
                  lambda t: (mul(t[0], t[1]), t[2]),
                  lambda t: (inv[t[0]], mul(t[0], t[1]), t[2]),
                  lambda t: (mul(t[0], t[1]), inv[t[1]], M.mul(h[t[1]], t[2])))


def from_inverse_semigroup(S: FinInverseSemigroup) -> Inv2Link:
    S.check()
    mul, inv = S.mul, S.inv
    c2 = [(x, y) for x in range(S.order) for y in range(S.order)
          if mul(inv[x], x) == mul(y, inv[y])]
    return _build(list(range(S.order)), c2,
                  lambda t: mul(*t),
                  lambda t: (inv[t[0]], mul(*t)),
                  lambda t: (mul(*t), inv[t[1]]))


def minimal_non_groupoid() -> Inv2Link:
    """Two arrows, three 'composable pairs' labelled 1, 2, 3; theta swaps 1,2 and phi swaps 2,3."""
    C1 = FinSet(2)
    C2 = FinSet(3, ("1", "2", "3"))
    return Inv2Link(FinMap(C2, C1, (0, 1, 0)), FinMap(C2, C2, (1, 0, 2)), FinMap(C2, C2, (0, 2, 1)))


@dataclass(frozen=True)
class RelationAction:
    """Inputs of the combined construction.

    ``g: S -> B``, ``phi[b][x]`` a map ``B x X -> X`` and ``R`` a subset of ``S x X``.
    """

    S: FinInverseSemigroup
    X: FinSet
    B: FinSet
    g: tuple[int, ...]
    phi: tuple[tuple[int, ...], ...]
    R: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "g", tuple(int(x) for x in self.g))
        object.__setattr__(self, "phi", tuple(tuple(int(x) for x in row) for row in self.phi))
        object.__setattr__(self, "R", frozenset((int(s), int(x)) for s, x in self.R))
        if len(self.g) != self.S.order or any(not 0 <= b < self.B.size for b in self.g):
            raise ValueError("g must map S into B")
        if len(self.phi) != self.B.size or any(len(r) != self.X.size for r in self.phi):
            raise ValueError("phi must be a |B| x |X| table")
        if any(not 0 <= x < self.X.size for r in self.phi for x in r):
            raise ValueError("phi leaves X")
        if any(not (0 <= s < self.S.order and 0 <= x < self.X.size) for s, x in self.R):
            raise ValueError("R must be a subset of S x X")

    def act(self, s: int, x: int) -> int:
        return self.phi[self.g[s]][x]

    def report(self) -> Report:
        S, R = self.S, self.R
        mul, inv, act = S.mul, S.inv, self.act
        elems = range(S.order)
        points = range(self.X.size)
        verdicts = list(S.report().verdicts)
        bad = next(((s, x) for s in elems for x in points
                    if not act(mul(inv[s], s), x) == x == act(mul(s, inv[s]), x)), None)
        verdicts.append(passed("phi_units") if bad is None else failed("phi_units", _fmt(bad)))
        bad = next(((s2, s, x) for s2 in elems for s in elems for x in points
                    if act(mul(s2, s), x) != act(s2, act(s, x))), None)
        verdicts.append(passed("phi_compose") if bad is None else failed("phi_compose", _fmt(bad)))
        bad = next(((s, x) for s, x in sorted(R)
                    if (mul(inv[s], s), x) not in R or (mul(s, inv[s]), act(s, x)) not in R), None)
        verdicts.append(passed("R_closure_i") if bad is None else failed("R_closure_i", _fmt(bad)))
        bad = next(((s2, s, x) for s, x in sorted(R) for s2 in elems
                    if (s2, act(s, x)) in R and (mul(s2, s), x) not in R), None)
        verdicts.append(passed("R_closure_ii") if bad is None else failed("R_closure_ii", _fmt(bad)))
        return Report(tuple(verdicts))


def from_relation_action(S: FinInverseSemigroup, X: FinSet | int, B: FinSet | int,
                         g: Sequence[int], phi: Sequence[Sequence[int]],
                         R: Iterable[tuple[int, int]]) -> Inv2Link:
    ra = RelationAction(S, _as_set(X), _as_set(B), g, phi, frozenset(R))
    report = ra.report()
    if not report.ok:
        raise AlgebraError("relation action", report)
    mul, inv, act = S.mul, S.inv, ra.act
    c1 = sorted(ra.R)
    c2 = [(s2, s, x) for s2 in range(S.order) for s, x in c1
          if mul(inv[s2], s2) == mul(s, inv[s]) and (s2, act(s, x)) in ra.R]
    c2.sort()
    return _build(c1, c2,
                  lambda t: (mul(t[0], t[1]), t[2]),
                  lambda t: (inv[t[0]], mul(t[0], t[1]), t[2]),
                  lambda t: (mul(t[0], t[1]), inv[t[1]], act(t[1], t[2])))


def relation_action_link(ra: RelationAction) -> Inv2Link:
    return from_relation_action(ra.S, ra.X, ra.B, ra.g, ra.phi, ra.R)


# The specialisations under which the combined construction recovers earlier families.

def relation_action_of_group(G: FinGroup) -> RelationAction:
    one = FinSet(1)
    return RelationAction(G.as_inverse_semigroup(), one, one, (0,) * G.order, ((0,),),
                          frozenset((s, 0) for s in range(G.order)))


def relation_action_of_action(A: GroupAction) -> RelationAction:
    G = A.group
    return RelationAction(G.as_inverse_semigroup(), A.carrier, FinSet(G.order),
                          tuple(range(G.order)), A.xi,
                          frozenset(itertools.product(range(G.order), range(A.carrier.size))))


def relation_action_of_monoid_hom(G: FinGroup, M: FinMonoid, h: Sequence[int]) -> RelationAction:
    return RelationAction(G.as_inverse_semigroup(), M.carrier, M.carrier, tuple(h), M.op,
                          frozenset(itertools.product(range(G.order), range(M.order))))


def relation_action_of_inverse_semigroup(S: FinInverseSemigroup) -> RelationAction:
    one = FinSet(1)
    return RelationAction(S, one, one, (0,) * S.order, ((0,),),
                          frozenset((s, 0) for s in range(S.order)))


class MagmaHypothesisError(ValueError):
    pass


class MagmaConditionError(ValueError):
    def __init__(self, message: str, witness: tuple[int, int]):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class InvolutiveMagma:
    """A binary operation ``op[x][y]`` with a unary ``inv`` on ``carrier``."""

    carrier: FinSet
    op: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]

    def __post_init__(self):
        n = self.carrier.size
        op = tuple(tuple(int(v) for v in row) for row in self.op)
        inv = tuple(int(v) for v in self.inv)
        if len(op) != n or any(len(r) != n for r in op) or len(inv) != n:
            raise ValueError("magma tables do not match the carrier")
        if any(not 0 <= v < n for r in op for v in r) or any(not 0 <= v < n for v in inv):
            raise ValueError("magma tables leave the carrier")
        object.__setattr__(self, "op", op)
        object.__setattr__(self, "inv", inv)

    def report(self) -> Report:
        """Hypotheses (involution, reversal) first, then the two cancellation laws."""
        n, op, i = self.carrier.size, self.op, self.inv
        pairs = list(itertools.product(range(n), repeat=2))
        verdicts = []
        bad = next((x for x in range(n) if i[i[x]] != x), None)
        verdicts.append(passed("involution") if bad is None else failed("involution", bad))
        bad = next((p for p in pairs if i[op[p[0]][p[1]]] != op[i[p[1]]][i[p[0]]]), None)
        verdicts.append(passed("reverses_op") if bad is None else failed("reverses_op", _fmt(bad)))
        bad = next((p for p in pairs if op[i[p[0]]][op[p[0]][p[1]]] != p[1]), None)
        verdicts.append(passed("cancel_left") if bad is None else failed("cancel_left", _fmt(bad)))
        bad = next((p for p in pairs if op[op[p[0]][p[1]]][i[p[1]]] != p[0]), None)
        verdicts.append(passed("cancel_right") if bad is None else failed("cancel_right", _fmt(bad)))
        return Report(tuple(verdicts))

    def link(self) -> Inv2Link:
        return from_involutive_magma(self.carrier, self.op, self.inv)


def from_involutive_magma(X: FinSet | int, m: Sequence[Sequence[int]], i: Sequence[int]) -> Inv2Link:
    """``theta = <i pi1, m>``, ``phi = <m, i pi2>`` on ``X x X``.

    Needs ``i`` an involution reversing ``m``; the result is a link exactly
    when ``m(i x, m(x, y)) = y`` and ``m(m(x, y), i y) = x`` everywhere.
    """
    M = InvolutiveMagma(_as_set(X), m, i)
    report = M.report()
    for v in report.verdicts[:2]:
        if not v.ok:
            raise MagmaHypothesisError(f"{v.name} fails at {v.witness}")
    for v in report.verdicts[2:]:
        if not v.ok:
            x, y = (int(t) for t in v.witness.strip("()").split(","))
            raise MagmaConditionError(f"{v.name} fails at {v.witness}", (x, y))
    mul, inv = M.op, M.inv
    c2 = list(itertools.product(range(M.carrier.size), repeat=2))
    return _build(list(range(M.carrier.size)), c2,
                  lambda t: mul[t[0]][t[1]],
                  lambda t: (inv[t[0]], mul[t[0]][t[1]]),
                  lambda t: (mul[t[0]][t[1]], inv[t[1]]))


# Groupoids built directly from their multiplicative data, independent of links.

def group_groupoid(G: FinGroup) -> InternalGroupoid:
    G.check()
    C1, C0 = FinSet(G.order), FinSet(1)
    d = FinMap.constant(C1, C0, 0)
    e = FinMap(C0, C1, (G.unit,))
    # C2 = G x G in lexicographic order, the canonical pullback over a point
    m = [G.mul(x, y) for x in range(G.order) for y in range(G.order)]
    return make_groupoid_from_multiplicative_data(d, d, e, m)


def relation_groupoid(X: FinSet | int, R: Iterable[tuple[int, int]]) -> InternalGroupoid:
    """Arrow ``(x, y)`` goes from ``y`` to ``x``, so ``(x, y)(y, z) = (x, z)``."""
    n = _as_set(X).size
    arrows = sorted({(int(x), int(y)) for x, y in R})
    report = equivalence_report(n, set(arrows))
    if not report.ok:
        raise AlgebraError("equivalence relation", report)
    C1, C0 = FinSet(len(arrows), [_fmt(a) for a in arrows]), FinSet(n)
    where = {a: k for k, a in enumerate(arrows)}
    d = FinMap(C1, C0, tuple(y for _, y in arrows))
    c = FinMap(C1, C0, tuple(x for x, _ in arrows))
    e = FinMap(C0, C1, tuple(where[(x, x)] for x in range(n)))
    _, p1, p2 = pullback(d, c)
    m = [where[(arrows[a][0], arrows[b][1])] for a, b in zip(p1.table, p2.table)]
    return make_groupoid_from_multiplicative_data(d, c, e, m)
