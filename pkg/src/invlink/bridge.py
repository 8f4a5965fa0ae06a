"""Passing between internal groupoids and involutive-2-links.

:func:`to_link` is the fully faithful embedding of groupoids into links;
:func:`classify` decides whether a link lies in its image, and
:func:`to_groupoid` rebuilds the groupoid when it does.  Every reconstruction
is re-validated against the full groupoid axioms before it is returned.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .finset import (
    BiexactCompletion,
    ConeError,
    FinMap,
    NotAPullback,
    NotAPushout,
    complete_biexact,
    compose,
    compose_all,
    first_difference,
    identity,
    induced_from_pushout,
    induced_to_pullback,
    joint_mono_witness,
)
from .groupoid import (
    GroupoidFunctor,
    GroupoidReport,
    InternalGroupoid,
    NotAFunctor,
    validate_groupoid,
)
from .inv2link import Inv2Link, NoInducedMap, induce_fbar, validate_link
from .verdicts import Report, Verdict, failed, passed

JOINT_MONO_THETA = "jointly_mono(m,m.theta)"
JOINT_MONO_PHI = "jointly_mono(m,m.phi)"
SECTIONS = "sections:m.e1=1=m.e2"
FIXED = "fixed:theta.e2=e2,phi.e1=e1"
UNIQUE = "sections_unique"
INVERSE = "inverse:m.theta.phi.e2=m.phi.theta.e1"
UNITS = "units:m.theta.e1.m.phi=m.phi.e2.m.theta"
CONTRACT_THETA = "contract:m.theta.e1.m=m.theta.e1.m.theta"
CONTRACT_PHI = "contract:m.phi.e2.m=m.phi.e2.m.phi"
BIEXACT = "biexact(m.phi,m.theta)"
CONE_M1 = "cone:dm=dpi2"
CONE_M2 = "cone:cm=cpi1"
ASSOC = "assoc:m.m1=m.m2"

THEOREM_VERDICTS = (
    JOINT_MONO_THETA, JOINT_MONO_PHI, SECTIONS, FIXED, UNIQUE, INVERSE, UNITS,
    CONTRACT_THETA, CONTRACT_PHI, BIEXACT, CONE_M1, CONE_M2, ASSOC,
)


def to_link(G: InternalGroupoid) -> Inv2Link:
    """``theta = <i pi1, m>`` and ``phi = <m, i pi2>`` on the pullback C2."""
    theta = G.pair(compose(G.i, G.pi1), G.m)
    phi = G.pair(G.m, compose(G.i, G.pi2))
    L = Inv2Link(G.m, theta, phi)
    recovery = (
        ("m.phi=pi1", compose(G.m, phi), G.pi1),
        ("m.theta=pi2", compose(G.m, theta), G.pi2),
        ("pi1.phi=m", compose(G.pi1, phi), G.m),
        ("pi1.theta=i.pi1", compose(G.pi1, theta), compose(G.i, G.pi1)),
        ("pi2.phi=i.pi2", compose(G.pi2, phi), compose(G.i, G.pi2)),
        ("pi2.theta=m", compose(G.pi2, theta), G.m),
    )
    for name, lhs, rhs in recovery:
        if lhs != rhs:
            raise InternalInconsistency(f"to_link: {name} fails", report=None)
    report = validate_link(L)
    if not report.ok:
        raise InternalInconsistency("to_link produced an invalid link", report=report)
    return L


@dataclass(frozen=True)
class ClassificationReport(Report):
    """Verdicts for each hypothesis of the characterisation, plus the data found."""

    e1: Optional[FinMap] = field(default=None, kw_only=True)
    e2: Optional[FinMap] = field(default=None, kw_only=True)
    completion: Optional[BiexactCompletion] = field(default=None, kw_only=True)
    m1: Optional[FinMap] = field(default=None, kw_only=True)
    m2: Optional[FinMap] = field(default=None, kw_only=True)

    @property
    def link_ok(self) -> bool:
        return all(v.ok for v in self.verdicts if v.name.startswith("link."))


class NotAGroupoid(ValueError):
    def __init__(self, report: ClassificationReport):
        names = ", ".join(v.name for v in report.failures())
        super().__init__(f"link is not a groupoid: {names}")
        self.report = report


class InternalInconsistency(RuntimeError):
    """A construction that passed classification failed its own post-check."""

    def __init__(self, message: str, report: Optional[Report] = None, link: Optional[Inv2Link] = None):
        super().__init__(message)
        self.report = report
        self.link = link


def _equation(name: str, lhs: FinMap, rhs: FinMap) -> Verdict:
    k = first_difference(lhs, rhs)
    return passed(name) if k is None else failed(name, lhs.dom.label(k))


def _solve_sections(L: Inv2Link, cand1: list[list[int]], cand2: list[list[int]],
                    limit: int = 2) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Assignments of e1, e2 from the candidate lists satisfying the global equations."""
    m, th, ph = L.m.table, L.theta.table, L.phi.table
    n1 = L.c1.size
    mth = [m[th[a]] for a in range(L.c2.size)]
    mph = [m[ph[a]] for a in range(L.c2.size)]
    # variables: ("e1", b) -> index 2b, ("e2", b) -> 2b + 1
    constraints: dict[int, list[tuple[tuple[int, ...], object]]] = {}

    def add(vars_, pred):
        constraints.setdefault(max(vars_), []).append((vars_, pred))

    for b in range(n1):
        add((2 * b, 2 * b + 1),
            lambda v, b=b: m[th[ph[v[2 * b + 1]]]] == m[ph[th[v[2 * b]]]])
    for a in range(L.c2.size):
        x, y = 2 * mph[a], 2 * mth[a] + 1
        add((x, y), lambda v, x=x, y=y: mth[v[x]] == mph[v[y]])
        x, y = 2 * m[a], 2 * mth[a]
        add((x, y), lambda v, x=x, y=y: mth[v[x]] == mth[v[y]])
        x, y = 2 * m[a] + 1, 2 * mph[a] + 1
        add((x, y), lambda v, x=x, y=y: mph[v[x]] == mph[v[y]])

    domains = []
    for b in range(n1):
        domains += [cand1[b], cand2[b]]
    solutions = []
    values = [0] * len(domains)

    def search(k):
        if len(solutions) >= limit:
            return
        if k == len(domains):
            solutions.append((tuple(values[0::2]), tuple(values[1::2])))
            return
        for a in domains[k]:
            values[k] = a
            if all(pred(values) for _, pred in constraints.get(k, ())):
                search(k + 1)

    search(0)
    return solutions


def classify(L: Inv2Link) -> ClassificationReport:
    """Decide whether ``L`` comes from an internal groupoid, one verdict per hypothesis."""
    link_report = validate_link(L)
    verdicts = [Verdict("link." + v.name, v.ok, v.witness, v.detail) for v in link_report.verdicts]
    c1, c2 = L.c1, L.c2
    m, th, ph = L.m, L.theta, L.phi
    mth, mph = compose(m, th), compose(m, ph)

    for name, family in ((JOINT_MONO_THETA, [m, mth]), (JOINT_MONO_PHI, [m, mph])):
        w = joint_mono_witness(family)
        verdicts.append(passed(name) if w is None else
                        failed(name, c2.label(w[0]), f"{c2.label(w[0])} and {c2.label(w[1])} collide"))

    fibers = [m.fiber(b) for b in range(c1.size)]
    empty = next((b for b in range(c1.size) if not fibers[b]), None)
    if empty is None:
        verdicts.append(passed(SECTIONS))
    else:
        verdicts.append(failed(SECTIONS, c1.label(empty), f"m has an empty fiber over {c1.label(empty)}"))

    cand1 = [[a for a in fibers[b] if ph(a) == a] for b in range(c1.size)]
    cand2 = [[a for a in fibers[b] if th(a) == a] for b in range(c1.size)]
    fixed_fail = None
    for b in range(c1.size):
        if not fibers[b]:
            continue
        for which, cands, g, gname in (("e1", cand1, ph, "phi"), ("e2", cand2, th, "theta")):
            if not cands[b]:
                a = fibers[b][0]
                fixed_fail = failed(
                    FIXED, c2.label(a),
                    f"no {which} over c1 element {c1.label(b)}: fiber "
                    f"{{{','.join(c2.label(x) for x in fibers[b])}}}, "
                    f"{gname}({c2.label(a)})={c2.label(g(a))}")
                break
        if fixed_fail is not None:
            break
    if fixed_fail is None and empty is not None:
        fixed_fail = failed(FIXED, detail="no sections exist")
    verdicts.append(fixed_fail or passed(FIXED))

    e1 = e2 = None
    if fixed_fail is None:
        solutions = _solve_sections(L, cand1, cand2)
        singletons = all(len(x) == 1 for x in cand1 + cand2)
        if len(solutions) == 1 or (singletons and not solutions):
            verdicts.append(passed(UNIQUE))
        elif len(solutions) > 1:
            b = next(b for b in range(c1.size)
                     if solutions[0][0][b] != solutions[1][0][b] or solutions[0][1][b] != solutions[1][1][b])
            verdicts.append(failed(UNIQUE, c1.label(b), "several consistent choices of e1, e2"))
        else:
            verdicts.append(failed(UNIQUE, detail="candidate sections are ambiguous and none is consistent"))
        t1, t2 = solutions[0] if solutions else (tuple(x[0] for x in cand1), tuple(x[0] for x in cand2))
        e1, e2 = FinMap(c1, c2, t1), FinMap(c1, c2, t2)
        verdicts += [
            _equation(INVERSE, compose_all(m, th, ph, e2), compose_all(m, ph, th, e1)),
            _equation(UNITS, compose_all(mth, e1, mph), compose_all(mph, e2, mth)),
            _equation(CONTRACT_THETA, compose_all(mth, e1, m), compose_all(mth, e1, mth)),
            _equation(CONTRACT_PHI, compose_all(mph, e2, m), compose_all(mph, e2, mph)),
        ]
    else:
        for name in (UNIQUE, INVERSE, UNITS, CONTRACT_THETA, CONTRACT_PHI):
            verdicts.append(failed(name, detail="requires e1, e2"))

    completion = complete_biexact(mph, mth)
    m1 = m2 = None
    if isinstance(completion, BiexactCompletion):
        verdicts.append(passed(BIEXACT))
        d, c = completion.d, completion.c
        cone1 = _equation(CONE_M1, compose(d, m), compose(d, mth))
        cone2 = _equation(CONE_M2, compose(c, m), compose(c, mph))
        verdicts += [cone1, cone2]
        if cone1.ok and cone2.ok:
            sq, p1, p2 = completion.bottom_square, completion.p1, completion.p2
            try:
                m1 = induced_to_pullback(sq, compose(m, p1), compose(mth, p2))
                m2 = induced_to_pullback(sq, compose(mph, p1), compose(m, p2))
            except (ConeError, NotAPullback) as exc:
                verdicts.append(failed(ASSOC, detail=f"m1, m2 undefined: {exc}"))
            else:
                verdicts.append(_equation(ASSOC, compose(m, m1), compose(m, m2)))
        else:
            verdicts.append(failed(ASSOC, detail="requires both cone equations"))
        completion_out = completion
    else:
        verdicts.append(failed(BIEXACT, completion.square, str(completion)))
        for name in (CONE_M1, CONE_M2, ASSOC):
            verdicts.append(failed(name, detail="requires the bi-exact completion"))
        completion_out = None

    return ClassificationReport(tuple(verdicts), notes=link_report.notes, e1=e1, e2=e2,
                                completion=completion_out, m1=m1, m2=m2)


def to_groupoid(L: Inv2Link) -> InternalGroupoid:
    """Rebuild the groupoid of a link passing :func:`classify`.

    Raises :class:`NotAGroupoid` with the failing report otherwise.
    """
    report = classify(L)
    if not report.ok:
        raise NotAGroupoid(report)
    m, th, ph = L.m, L.theta, L.phi
    e1, e2, comp = report.e1, report.e2, report.completion
    pi1, pi2 = compose(m, ph), compose(m, th)
    i = compose_all(m, th, ph, e2)
    if i != compose_all(m, ph, th, e1):
        raise InternalInconsistency("the two expressions for i disagree", report, L)
    try:
        e = induced_from_pushout(comp.bottom_square, compose_all(m, th, e1), compose_all(m, ph, e2))
    except (ConeError, NotAPushout) as exc:
        raise InternalInconsistency(f"unit map undefined: {exc}", report, L) from exc
    G = InternalGroupoid(comp.d, comp.c, e, i, pi1, pi2, m)
    check = validate_groupoid(G)
    if not check.ok:
        raise InternalInconsistency("reconstruction fails the groupoid axioms", check, L)
    if compose(e1, e) != compose(e2, e):
        raise InternalInconsistency("e1 e != e2 e", check, L)
    return G


@dataclass(frozen=True)
class ContractibilityReport(Report):
    e1: Optional[FinMap] = field(default=None, kw_only=True)
    e2: Optional[FinMap] = field(default=None, kw_only=True)


def _contracting_section(m: FinMap, k: FinMap) -> Optional[FinMap]:
    """A section ``s`` of ``m`` with ``k s m = k s k``, by backtracking over the fibers."""
    n1 = m.cod.size
    fibers = [m.fiber(b) for b in range(n1)]
    if any(not f for f in fibers):
        return None
    # constraint k s(m a) = k s(k a), checked once both points are assigned
    pending: dict[int, list[tuple[int, int]]] = {}
    for a in range(m.dom.size):
        x, y = m(a), k(a)
        pending.setdefault(max(x, y), []).append((x, y))
    values = [0] * n1

    def search(b):
        if b == n1:
            return True
        for a in fibers[b]:
            values[b] = a
            if all(k(values[x]) == k(values[y]) for x, y in pending.get(b, ())):
                if search(b + 1):
                    return True
        return False

    return FinMap(m.cod, m.dom, tuple(values)) if search(0) else None


def contractibility_check(L: Inv2Link) -> ContractibilityReport:
    """Are ``(m, m theta)`` and ``(m, m phi)`` contractible pairs?"""
    e1 = _contracting_section(L.m, compose(L.m, L.theta))
    e2 = _contracting_section(L.m, compose(L.m, L.phi))
    verdicts = (
        passed("contractible(m,m.theta)") if e1 is not None else failed("contractible(m,m.theta)"),
        passed("contractible(m,m.phi)") if e2 is not None else failed("contractible(m,m.phi)"),
    )
    return ContractibilityReport(verdicts, e1=e1, e2=e2)


def canonical_sections(G: InternalGroupoid) -> tuple[FinMap, FinMap]:
    """``e1 = <1, ed>`` and ``e2 = <ec, 1>``."""
    one = identity(G.c1)
    return G.pair(one, compose(G.e, G.d)), G.pair(compose(G.e, G.c), one)


def induce_functor_images(G: InternalGroupoid, H: InternalGroupoid, f1: FinMap) -> Optional[GroupoidFunctor]:
    """Extend an arrow map to a functor when it is a morphism of the associated links."""
    LG, LH = to_link(G), to_link(H)
    try:
        fbar = induce_fbar(LG, LH, f1)
    except NoInducedMap:
        return None
    try:
        f0 = induced_from_pushout(G.composable_square(), compose(H.d, f1), compose(H.c, f1))
    except (ConeError, NotAPushout) as exc:
        raise InternalInconsistency(f"object map undefined: {exc}") from exc
    if compose(H.i, f1) != compose(f1, G.i) or compose(f1, G.e) != compose(H.e, f0):
        raise InternalInconsistency("induced functor fails i'f = fi or fe = e'f0")
    for s, t in zip(canonical_sections(G), canonical_sections(H)):
        if compose(fbar, s) != compose(t, f1):
            raise InternalInconsistency("fbar does not preserve the canonical sections")
    try:
        return GroupoidFunctor(G, H, f0, f1)
    except NotAFunctor as exc:
        raise InternalInconsistency(f"induced functor invalid: {exc}") from exc


__all__ = [
    "ClassificationReport",
    "ContractibilityReport",
    "GroupoidReport",
    "InternalInconsistency",
    "NotAGroupoid",
    "THEOREM_VERDICTS",
    "canonical_sections",
    "classify",
    "contractibility_check",
    "induce_functor_images",
    "to_groupoid",
    "to_link",
]
