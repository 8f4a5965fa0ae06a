"""Desk-scale instances shared by the round-trip, derivation and mutation tests."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from invlink.algebra import (
    GroupAction,
    OpenCover,
    cyclic_group,
    monoid_homs,
    small_groups,
    small_inverse_semigroups,
    small_monoids,
)
from invlink.examples import (
    cech,
    codiscrete,
    discrete,
    from_equivalence_relation,
    from_group,
    from_group_action,
    from_group_monoid_hom,
    from_inverse_semigroup,
    group_groupoid,
    relation_groupoid,
)
from invlink.finset import FinSet
from invlink.groupoid import InternalGroupoid
from invlink.inv2link import Inv2Link


@dataclass(frozen=True)
class Instance:
    name: str
    link: Inv2Link
    # a groupoid built directly, without going through links, when one is available
    direct: Optional[InternalGroupoid] = None


def set_partitions(n: int):
    """Block assignments in restricted growth form."""
    def grow(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for b in range(top + 2):
            yield from grow(prefix + [b], max(top, b))
    yield from grow([], -1)


def relation_of(blocks) -> set[tuple[int, int]]:
    n = len(blocks)
    return {(x, y) for x in range(n) for y in range(n) if blocks[x] == blocks[y]}


def involutions(n: int):
    for p in itertools.permutations(range(n)):
        if all(p[p[x]] == x for x in range(n)):
            yield p


def sample_covers(count: int = 40, seed: int = 7) -> list[OpenCover]:
    """A reproducible sample of subset families, plus a few fixed shapes."""
    rng = random.Random(seed)
    fixed = [
        (3, [{0, 1, 2}]),
        (3, [{0, 1}, {1, 2}]),
        (4, [{0, 1}, {1, 2}, {2, 3}]),
        (4, [{0, 1, 2, 3}, {1, 2}, set()]),
        (2, [set(), set()]),
    ]
    covers = [OpenCover(FinSet(n), tuple(frozenset(p) for p in parts)) for n, parts in fixed]
    seen = {(c.base.size, c.parts) for c in covers}
    while len(covers) < count:
        n = rng.randint(1, 4)
        k = rng.randint(1, 3)
        parts = tuple(frozenset(x for x in range(n) if rng.random() < 0.6) for _ in range(k))
        if (n, parts) not in seen:
            seen.add((n, parts))
            covers.append(OpenCover(FinSet(n), parts))
    return covers


@lru_cache(maxsize=None)
def suite() -> tuple[Instance, ...]:
    out = []
    for n in range(4):
        out.append(Instance(f"discrete{n}", discrete(n),
                            relation_groupoid(n, {(x, x) for x in range(n)})))
        out.append(Instance(f"codiscrete{n}", codiscrete(n),
                            relation_groupoid(n, set(itertools.product(range(n), repeat=2)))))
    for n in range(1, 5):
        for blocks in set_partitions(n):
            R = relation_of(blocks)
            out.append(Instance(f"equivalence{blocks}", from_equivalence_relation(n, R),
                                relation_groupoid(n, R)))
    for k, cover in enumerate(sample_covers()):
        out.append(Instance(f"cech{k}", cech(cover)))
    for name, G in small_groups(6):
        out.append(Instance(f"group:{name}", from_group(G), group_groupoid(G)))
    Z2 = cyclic_group(2)
    for n in range(4):
        for p in involutions(n):
            A = GroupAction(Z2, FinSet(n), [list(range(n)), list(p)])
            out.append(Instance(f"action:Z2on{p}", from_group_action(A)))
    for g in (1, 2, 3):
        G = cyclic_group(g)
        for m in (1, 2, 3):
            for j, M in enumerate(small_monoids(m)):
                for h in monoid_homs(G, M):
                    out.append(Instance(f"hom:Z{g}->M{m}.{j}{h}", from_group_monoid_hom(G, M, h)))
    for name, S in small_inverse_semigroups():
        out.append(Instance(f"inverse:{name}", from_inverse_semigroup(S)))
    return tuple(out)


def instance(name: str) -> Instance:
    return next(x for x in suite() if x.name == name)
