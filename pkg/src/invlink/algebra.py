"""Table-based finite algebraic structures consumed by the link constructors.

Binary operations are Cayley tables ``op[x][y]`` over ``0..n-1``.  Every type
exposes ``report()`` (one verdict per law, with the first violating tuple as
witness) and ``check()`` which raises :class:`AlgebraError` on failure.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .finset import FinSet
from .verdicts import Report, failed, passed

Table = tuple[tuple[int, ...], ...]


class AlgebraError(ValueError):
    def __init__(self, what: str, report: Report):
        names = ", ".join(v.name for v in report.failures())
        super().__init__(f"not a valid {what}: {names}")
        self.report = report


def _table(op: Sequence[Sequence[int]], n: int) -> Table:
    rows = tuple(tuple(int(x) for x in row) for row in op)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError(f"operation table must be {n}x{n}")
    if any(not 0 <= x < n for r in rows for x in r):
        raise ValueError("operation table has entries outside the carrier")
    return rows


def _vector(v: Sequence[int], n: int, cod: int | None = None) -> tuple[int, ...]:
    cod = n if cod is None else cod
    v = tuple(int(x) for x in v)
    if len(v) != n or any(not 0 <= x < cod for x in v):
        raise ValueError("unary table has the wrong length or range")
    return v


def _associativity(op: Table):
    n = len(op)
    for x, y, z in itertools.product(range(n), repeat=3):
        if op[op[x][y]][z] != op[x][op[y][z]]:
            return failed("associativity", f"({x},{y},{z})")
    return passed("associativity")


def _unit_laws(op: Table, unit: int):
    for x in range(len(op)):
        if op[unit][x] != x or op[x][unit] != x:
            return failed("unit", x)
    return passed("unit")


@dataclass(frozen=True)
class FinMonoid:
    carrier: FinSet
    op: Table
    unit: int

    def __post_init__(self):
        object.__setattr__(self, "op", _table(self.op, self.carrier.size))
        if not 0 <= self.unit < self.carrier.size:
            raise ValueError("unit outside the carrier")

    @property
    def order(self) -> int:
        return self.carrier.size

    def mul(self, x: int, y: int) -> int:
        return self.op[x][y]

    def report(self) -> Report:
        return Report((_associativity(self.op), _unit_laws(self.op, self.unit)))

    def check(self) -> FinMonoid:
        r = self.report()
        if not r.ok:
            raise AlgebraError("monoid", r)
        return self


@dataclass(frozen=True)
class FinGroup:
    carrier: FinSet
    op: Table
    unit: int
    inv: tuple[int, ...]

    def __post_init__(self):
        n = self.carrier.size
        object.__setattr__(self, "op", _table(self.op, n))
        object.__setattr__(self, "inv", _vector(self.inv, n))
        if not 0 <= self.unit < n:
            raise ValueError("unit outside the carrier")

    @property
    def order(self) -> int:
        return self.carrier.size

    def mul(self, x: int, y: int) -> int:
        return self.op[x][y]

    @classmethod
    def from_table(cls, op: Sequence[Sequence[int]], labels=None) -> FinGroup:
        """Deduce unit and inverses from a Cayley table (which must have them)."""
        n = len(op)
        rn = range(n)
        unit = next((u for u in rn if all(op[u][x] == x == op[x][u] for x in rn)), None)
        if unit is None:
            raise ValueError("table has no two-sided unit")
        inv = []
        for x in rn:
            y = next((y for y in rn if op[x][y] == unit == op[y][x]), None)
            if y is None:
                raise ValueError(f"element {x} has no inverse")
            inv.append(y)
        return cls(FinSet(n, labels), op, unit, tuple(inv))

    def as_monoid(self) -> FinMonoid:
        return FinMonoid(self.carrier, self.op, self.unit)

    def as_inverse_semigroup(self) -> FinInverseSemigroup:
        return FinInverseSemigroup(self.carrier, self.op, self.inv)

    def report(self) -> Report:
        verdicts = [_associativity(self.op), _unit_laws(self.op, self.unit)]
        bad = next((x for x in range(self.order)
                    if self.op[x][self.inv[x]] != self.unit or self.op[self.inv[x]][x] != self.unit), None)
        verdicts.append(passed("inverse") if bad is None else failed("inverse", bad))
        return Report(tuple(verdicts))

    def check(self) -> FinGroup:
        r = self.report()
        if not r.ok:
            raise AlgebraError("group", r)
        return self


@dataclass(frozen=True)
class FinInverseSemigroup:
    carrier: FinSet
    op: Table
    inv: tuple[int, ...]

    def __post_init__(self):
        n = self.carrier.size
        object.__setattr__(self, "op", _table(self.op, n))
        object.__setattr__(self, "inv", _vector(self.inv, n))

    @property
    def order(self) -> int:
        return self.carrier.size

    def mul(self, x: int, y: int) -> int:
        return self.op[x][y]

    def idempotents(self) -> list[int]:
        return [x for x in range(self.order) if self.op[x][x] == x]

    def report(self) -> Report:
        op, inv, rn = self.op, self.inv, range(self.order)
        verdicts = [_associativity(op)]
        bad = next((x for x in rn if op[op[x][inv[x]]][x] != x), None)
        verdicts.append(passed("xx'x=x") if bad is None else failed("xx'x=x", bad))
        bad = next((x for x in rn if op[op[inv[x]][x]][inv[x]] != inv[x]), None)
        verdicts.append(passed("x'xx'=x'") if bad is None else failed("x'xx'=x'", bad))
        es = self.idempotents()
        bad = next(((e, f) for e in es for f in es if op[e][f] != op[f][e]), None)
        verdicts.append(passed("idempotents_commute") if bad is None
                        else failed("idempotents_commute", f"({bad[0]},{bad[1]})"))
        return Report(tuple(verdicts))

    def check(self) -> FinInverseSemigroup:
        r = self.report()
        if not r.ok:
            raise AlgebraError("inverse semigroup", r)
        return self


@dataclass(frozen=True)
class GroupAction:
    """A left action ``xi[a][x]`` of ``group`` on ``carrier``."""

    group: FinGroup
    carrier: FinSet
    xi: Table = field()

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.xi)
        if len(rows) != self.group.order or any(len(r) != self.carrier.size for r in rows):
            raise ValueError("action table must be |G| x |X|")
        if any(not 0 <= x < self.carrier.size for r in rows for x in r):
            raise ValueError("action table leaves the carrier")
        object.__setattr__(self, "xi", rows)

    def report(self) -> Report:
        G, xi = self.group, self.xi
        verdicts = list(G.report().verdicts)
        bad = next((x for x in range(self.carrier.size) if xi[G.unit][x] != x), None)
        verdicts.append(passed("action_unit") if bad is None else failed("action_unit", bad))
        bad = next(((a, b, x) for a in range(G.order) for b in range(G.order)
                    for x in range(self.carrier.size)
                    if xi[a][xi[b][x]] != xi[G.mul(a, b)][x]), None)
        verdicts.append(passed("action_compat") if bad is None
                        else failed("action_compat", "({},{},{})".format(*bad)))
        return Report(tuple(verdicts))

    def check(self) -> GroupAction:
        r = self.report()
        if not r.ok:
            raise AlgebraError("group action", r)
        return self


@dataclass(frozen=True)
class OpenCover:
    """A finite family of subsets of ``base``; covering is not required."""

    base: FinSet
    parts: tuple[frozenset[int], ...]

    def __post_init__(self):
        parts = tuple(frozenset(int(x) for x in p) for p in self.parts)
        object.__setattr__(self, "parts", parts)

    def report(self) -> Report:
        for k, p in enumerate(self.parts):
            bad = sorted(x for x in p if not 0 <= x < self.base.size)
            if bad:
                return Report((failed("parts_in_base", f"part{k}:{bad[0]}"),))
        return Report((passed("parts_in_base"),))

    def check(self) -> OpenCover:
        r = self.report()
        if not r.ok:
            raise AlgebraError("cover", r)
        return self


def monoid_hom_report(G: FinGroup, M: FinMonoid, h: Sequence[int]) -> Report:
    unit = passed("hom_unit") if h[G.unit] == M.unit else failed("hom_unit", G.unit)
    bad = next(((a, b) for a in range(G.order) for b in range(G.order)
                if h[G.mul(a, b)] != M.mul(h[a], h[b])), None)
    mul = passed("hom_mul") if bad is None else failed("hom_mul", f"({bad[0]},{bad[1]})")
    return Report((unit, mul))


# Standard small structures

def cyclic_group(n: int) -> FinGroup:
    return FinGroup(FinSet(n), [[(x + y) % n for y in range(n)] for x in range(n)],
                    0, [(-x) % n for x in range(n)])


def direct_product(G: FinGroup, H: FinGroup) -> FinGroup:
    pairs = list(itertools.product(range(G.order), range(H.order)))
    idx = {p: k for k, p in enumerate(pairs)}
    op = [[idx[(G.mul(a, c), H.mul(b, d))] for (c, d) in pairs] for (a, b) in pairs]
    inv = [idx[(G.inv[a], H.inv[b])] for (a, b) in pairs]
    return FinGroup(FinSet(len(pairs)), op, idx[(G.unit, H.unit)], inv)


def symmetric_group(k: int) -> FinGroup:
    """Permutations of ``0..k-1`` in lexicographic order; ``(p q)(x) = p(q(x))``."""
    perms = list(itertools.permutations(range(k)))
    idx = {p: n for n, p in enumerate(perms)}
    op = [[idx[tuple(p[q[x]] for x in range(k))] for q in perms] for p in perms]
    return FinGroup.from_table(op)


def small_groups(max_order: int = 6) -> list[tuple[str, FinGroup]]:
    """One representative of each isomorphism class of groups of order <= 6."""
    groups = [(f"Z{n}", cyclic_group(n)) for n in range(1, max_order + 1)]
    if max_order >= 4:
        groups.append(("Z2xZ2", direct_product(cyclic_group(2), cyclic_group(2))))
    if max_order >= 6:
        groups.append(("S3", symmetric_group(3)))
    return groups


def small_monoids(n: int) -> list[FinMonoid]:
    """All monoid tables on ``0..n-1`` with unit 0 (labelled, not up to isomorphism)."""
    if n == 0:
        return []
    rest = range(1, n)
    cells = [(x, y) for x in rest for y in rest]
    found = []
    for values in itertools.product(range(n), repeat=len(cells)):
        op = [[y if x == 0 else (x if y == 0 else 0) for y in range(n)] for x in range(n)]
        for (x, y), v in zip(cells, values):
            op[x][y] = v
        M = FinMonoid(FinSet(n), op, 0)
        if M.report().ok:
            found.append(M)
    return found


def monoid_homs(G: FinGroup, M: FinMonoid) -> list[tuple[int, ...]]:
    return [h for h in itertools.product(range(M.order), repeat=G.order)
            if monoid_hom_report(G, M, h).ok]


def symmetric_inverse_monoid(k: int) -> FinInverseSemigroup:
    """Partial bijections of ``0..k-1``; ``(s t)(x) = s(t(x))``."""
    elems = []
    for size in range(k + 1):
        for dom in itertools.combinations(range(k), size):
            for img in itertools.permutations(range(k), size):
                elems.append(tuple(sorted(zip(dom, img))))
    idx = {e: n for n, e in enumerate(elems)}

    def mul(s, t):
        sd, td = dict(s), dict(t)
        return tuple(sorted((x, sd[y]) for x, y in td.items() if y in sd))

    op = [[idx[mul(s, t)] for t in elems] for s in elems]
    inv = [idx[tuple(sorted((y, x) for x, y in s))] for s in elems]
    labels = ["{" + ",".join(f"{x}>{y}" for x, y in s) + "}" for s in elems]
    return FinInverseSemigroup(FinSet(len(elems), labels), op, inv)


def chain_semilattice(n: int) -> FinInverseSemigroup:
    """``0 < 1 < ... < n-1`` under min."""
    return FinInverseSemigroup(FinSet(n), [[min(x, y) for y in range(n)] for x in range(n)],
                               list(range(n)))


def free_semilattice(k: int) -> FinInverseSemigroup:
    """Nonempty subsets of ``k`` generators under union."""
    subsets = [frozenset(c) for r in range(1, k + 1) for c in itertools.combinations(range(k), r)]
    idx = {s: n for n, s in enumerate(subsets)}
    op = [[idx[s | t] for t in subsets] for s in subsets]
    return FinInverseSemigroup(FinSet(len(subsets)), op, list(range(len(subsets))))


def brandt_semigroup(k: int) -> FinInverseSemigroup:
    """Matrix units ``E_ij`` on k indices plus zero (index 0)."""
    units = list(itertools.product(range(k), repeat=2))
    idx = {u: n + 1 for n, u in enumerate(units)}
    n = len(units) + 1
    op = [[0] * n for _ in range(n)]
    for (i, j), a in idx.items():
        for (r, s), b in idx.items():
            if j == r:
                op[a][b] = idx[(i, s)]
    inv = [0] + [idx[(j, i)] for (i, j) in units]
    return FinInverseSemigroup(FinSet(n), op, inv)


def with_zero(G: FinGroup) -> FinInverseSemigroup:
    """``G`` with an adjoined absorbing element (the last index)."""
    n = G.order
    op = [[G.mul(x, y) if x < n and y < n else n for y in range(n + 1)] for x in range(n + 1)]
    return FinInverseSemigroup(FinSet(n + 1), op, list(G.inv) + [n])


def small_inverse_semigroups() -> list[tuple[str, FinInverseSemigroup]]:
    items = [(f"group:{name}", G.as_inverse_semigroup()) for name, G in small_groups(6)]
    items += [
        ("chain2", chain_semilattice(2)),
        ("chain3", chain_semilattice(3)),
        ("free_semilattice2", free_semilattice(2)),
        ("Z2_with_zero", with_zero(cyclic_group(2))),
        ("Z3_with_zero", with_zero(cyclic_group(3))),
        ("brandt2", brandt_semigroup(2)),
        ("symmetric_inverse2", symmetric_inverse_monoid(2)),
    ]
    return items
