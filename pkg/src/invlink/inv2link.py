"""Involutive-2-links: a map ``m: C2 -> C1`` with two interlinked involutions.

The objects of the category are triples ``(theta, phi, m)`` with
``theta^2 = phi^2 = 1``, ``theta phi theta = phi theta phi`` and the three
parallel maps ``m, m theta, m phi`` jointly monic.  :class:`Inv2Link` holds
raw data; :func:`validate_link` decides membership.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .finset import (
    FinMap,
    FinSet,
    ShapeError,
    compose,
    compose_all,
    first_difference,
    identity,
    inverse,
    is_iso,
    joint_mono_witness,
)
from .verdicts import Report, failed, passed


@dataclass(frozen=True)
class Inv2Link:
    m: FinMap
    theta: FinMap
    phi: FinMap

    def __post_init__(self):
        for name in ("theta", "phi"):
            g = getattr(self, name)
            if g.dom != self.m.dom or g.cod != self.m.dom:
                raise ShapeError(f"{name} must be an endomap of dom(m)")

    @property
    def c2(self) -> FinSet:
        return self.m.dom

    @property
    def c1(self) -> FinSet:
        return self.m.cod

    @property
    def pi1(self) -> FinMap:
        return compose(self.m, self.phi)

    @property
    def pi2(self) -> FinMap:
        return compose(self.m, self.theta)

    def triple(self, a: int) -> tuple[int, int, int]:
        """``(m, m theta, m phi)`` at ``a``."""
        return self.m(a), self.m(self.theta(a)), self.m(self.phi(a))

    def relabel(self, c1: FinSet | None = None, c2: FinSet | None = None) -> Inv2Link:
        c1 = c1 or self.c1
        c2 = c2 or self.c2
        return Inv2Link(
            FinMap(c2, c1, self.m.table),
            FinMap(c2, c2, self.theta.table),
            FinMap(c2, c2, self.phi.table),
        )


class LinkValidationReport(Report):
    pass


def _involution_witness(g: FinMap) -> int | None:
    return first_difference(compose(g, g), identity(g.dom))


def validate_link(link: Inv2Link) -> LinkValidationReport:
    """Check involutions, the interlink law and joint monomorphy; report all three."""
    c2 = link.c2
    theta, phi = link.theta, link.phi
    verdicts = []
    notes = []

    bad = [(a, n) for n, g in (("theta", theta), ("phi", phi))
           if (a := _involution_witness(g)) is not None]
    if bad:
        a, which = min(bad)
        verdicts.append(failed("involutions", c2.label(a), f"{which}^2 moves {c2.label(a)}"))
    else:
        verdicts.append(passed("involutions"))

    k = first_difference(compose_all(theta, phi, theta), compose_all(phi, theta, phi))
    if k is None:
        verdicts.append(passed("interlink"))
    else:
        verdicts.append(failed("interlink", c2.label(k), "theta.phi.theta != phi.theta.phi"))

    w = joint_mono_witness([link.m, link.pi2, link.pi1])
    if w is None:
        verdicts.append(passed("joint_mono"))
    else:
        a, b = w
        verdicts.append(failed("joint_mono", c2.label(a),
                               f"{c2.label(a)} and {c2.label(b)} share (m, m.theta, m.phi)"))

    # cross-check: interlink with theta = 1 forces phi = phi^2 = 1
    ident = identity(c2)
    if theta == ident and verdicts[0].ok and verdicts[1].ok:
        notes.append("theta is the identity, hence so is phi"
                     if phi == ident else "inconsistent: theta = 1 but phi != 1")
    return LinkValidationReport(tuple(verdicts), notes=tuple(notes))


def _closure(gens: list[tuple[int, ...]], n: int) -> set[tuple[int, ...]]:
    start = tuple(range(n))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[x] for x in p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def dihedral_order(link: Inv2Link) -> int:
    """Order of the permutation group generated by theta and phi."""
    return len(_closure([link.theta.table, link.phi.table], link.c2.size))


class NoInducedMap(ValueError):
    """No ``fbar`` exists for the proposed ``f``; ``witness`` is an offending element."""

    def __init__(self, message: str, witness: int | None = None):
        super().__init__(message)
        self.witness = witness


class NotALinkMorphism(ValueError):
    pass


@dataclass(frozen=True)
class Inv2LinkMorphism:
    source: Inv2Link
    target: Inv2Link
    f: FinMap
    fbar: FinMap

    def __post_init__(self):
        s, t = self.source, self.target
        if self.f.dom != s.c1 or self.f.cod != t.c1:
            raise ShapeError("f must map source.c1 to target.c1")
        if self.fbar.dom != s.c2 or self.fbar.cod != t.c2:
            raise ShapeError("fbar must map source.c2 to target.c2")
        checks = (
            ("m'fbar = fm", compose(t.m, self.fbar), compose(self.f, s.m)),
            ("theta'fbar = fbar theta", compose(t.theta, self.fbar), compose(self.fbar, s.theta)),
            ("phi'fbar = fbar phi", compose(t.phi, self.fbar), compose(self.fbar, s.phi)),
        )
        for name, lhs, rhs in checks:
            k = first_difference(lhs, rhs)
            if k is not None:
                raise NotALinkMorphism(f"{name} fails at {s.c2.label(k)}")


def induce_fbar(source: Inv2Link, target: Inv2Link, f: FinMap) -> FinMap:
    """The unique ``fbar`` making ``f`` a link morphism, located by triple matching."""
    if f.dom != source.c1 or f.cod != target.c1:
        raise ShapeError("f must map source.c1 to target.c1")
    where: dict[tuple[int, int, int], int] = {}
    for a in range(target.c2.size):
        t = target.triple(a)
        if t in where:
            raise ValueError(f"target is not jointly monic at {target.c2.label(a)}")
        where[t] = a
    table = []
    for a in range(source.c2.size):
        want = tuple(f(x) for x in source.triple(a))
        if want not in where:
            raise NoInducedMap(
                f"no element of the target carries the triple {want} "
                f"required by {source.c2.label(a)}", a)
        table.append(where[want])
    fbar = FinMap(source.c2, target.c2, tuple(table))
    try:
        Inv2LinkMorphism(source, target, f, fbar)
    except NotALinkMorphism as exc:
        raise NoInducedMap(str(exc)) from exc
    return fbar


def link_morphism(source: Inv2Link, target: Inv2Link, f: FinMap) -> Inv2LinkMorphism:
    return Inv2LinkMorphism(source, target, f, induce_fbar(source, target, f))


def identity_morphism(link: Inv2Link) -> Inv2LinkMorphism:
    return Inv2LinkMorphism(link, link, identity(link.c1), identity(link.c2))


def compose_morphisms(g: Inv2LinkMorphism, f: Inv2LinkMorphism) -> Inv2LinkMorphism:
    if f.target != g.source:
        raise ShapeError("morphisms are not composable")
    return Inv2LinkMorphism(f.source, g.target, compose(g.f, f.f), compose(g.fbar, f.fbar))


def orbits(link: Inv2Link) -> list[list[int]]:
    """Orbits of the group generated by theta and phi, each sorted, ordered by least element."""
    seen = [False] * link.c2.size
    result = []
    for a in range(link.c2.size):
        if seen[a]:
            continue
        orbit, stack = [], [a]
        seen[a] = True
        while stack:
            x = stack.pop()
            orbit.append(x)
            for g in (link.theta, link.phi):
                y = g(x)
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        result.append(sorted(orbit))
    return result


def links_isomorphic(L1: Inv2Link, L2: Inv2Link) -> Optional[tuple[Inv2LinkMorphism, Inv2LinkMorphism]]:
    """Find an isomorphism ``L1 -> L2`` and its inverse, or return None.

    ``fbar`` commutes with theta and phi, so it is fixed on each orbit by the
    image of one point; the search backtracks over those images while keeping
    the induced ``f`` on ``c1`` a partial bijection.
    """
    if L1.c1.size != L2.c1.size or L1.c2.size != L2.c2.size:
        return None
    orbs1 = orbits(L1)
    perms = all(is_iso(g) for g in (L1.theta, L1.phi, L2.theta, L2.phi))
    if perms and sorted(map(len, orbs1)) != sorted(map(len, orbits(L2))):
        return None
    n2 = L1.c2.size

    def extend(rep, img, fbar, fbar_inv, f, f_inv):
        fbar, fbar_inv, f, f_inv = dict(fbar), dict(fbar_inv), dict(f), dict(f_inv)
        stack = [(rep, img)]
        while stack:
            x, y = stack.pop()
            if x in fbar:
                if fbar[x] != y:
                    return None
                continue
            if y in fbar_inv:
                return None
            fbar[x], fbar_inv[y] = y, x
            b, b2 = L1.m(x), L2.m(y)
            if f.get(b, b2) != b2 or f_inv.get(b2, b) != b:
                return None
            f[b], f_inv[b2] = b2, b
            stack.append((L1.theta(x), L2.theta(y)))
            stack.append((L1.phi(x), L2.phi(y)))
        return fbar, fbar_inv, f, f_inv

    def search(i, state):
        if i == len(orbs1):
            return state
        rep = orbs1[i][0]
        for img in range(n2):
            if img in state[1]:
                continue
            nxt = extend(rep, img, *state)
            if nxt is not None:
                found = search(i + 1, nxt)
                if found is not None:
                    return found
        return None

    found = search(0, ({}, {}, {}, {}))
    if found is None:
        return None
    fbar_d, _, f_d, f_inv = found
    rest1 = [b for b in range(L1.c1.size) if b not in f_d]
    rest2 = [b for b in range(L2.c1.size) if b not in f_inv]
    f_d.update(zip(rest1, rest2))
    f = FinMap(L1.c1, L2.c1, tuple(f_d[b] for b in range(L1.c1.size)))
    fbar = FinMap(L1.c2, L2.c2, tuple(fbar_d[a] for a in range(n2)))
    if validate_link(L2).ok:
        assert induce_fbar(L1, L2, f) == fbar
    forward = Inv2LinkMorphism(L1, L2, f, fbar)
    backward = Inv2LinkMorphism(L2, L1, inverse(f), inverse(fbar))
    return forward, backward
