"""Counting homomorphisms into small finite groups.

The count |Hom(G, T)| over a panel of small targets is an isomorphism
invariant that is cheap to compute and sharp enough to distinguish the
presentations compared here.  Targets are concrete permutation /
quaternion groups packaged as multiplication tables.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Sequence, Tuple

from .presentation import Presentation


class HomError(ValueError):
    pass


class FiniteGroup:
    """Multiplication-table group: elements 0..n-1, identity 0."""

    def __init__(self, name: str, mult: Sequence[Sequence[int]]):
        self.name = name
        self.mult = [list(row) for row in mult]
        self.order = len(self.mult)
        if any(len(row) != self.order for row in self.mult):
            raise HomError("multiplication table is not square")
        if any(self.mult[0][j] != j or self.mult[j][0] != j
               for j in range(self.order)):
            raise HomError("element 0 is not an identity")
        self.inv = [None] * self.order
        for a in range(self.order):
            for b in range(self.order):
                if self.mult[a][b] == 0:
                    self.inv[a] = b
        if any(v is None for v in self.inv):
            raise HomError("table has a non-invertible element")

    def __repr__(self):
        return f"FiniteGroup({self.name}, order {self.order})"


def _perm_group(name: str, degree: int,
                gens: Sequence[Tuple[int, ...]]) -> FiniteGroup:
    """Closure of permutation generators (tuples = images of 0..deg-1)."""
    identity = tuple(range(degree))
    elements = [identity]
    index = {identity: 0}
    frontier = [identity]
    while frontier:
        p = frontier.pop()
        for g in gens:
            q = tuple(p[g[i]] for i in range(degree))
            if q not in index:
                index[q] = len(elements)
                elements.append(q)
                frontier.append(q)
    mult = [[index[tuple(a[b[i]] for i in range(degree))]
             for b in elements] for a in elements]
    return FiniteGroup(name, mult)


def _quaternion_group() -> FiniteGroup:
    # elements 1, -1, i, -i, j, -j, k, -k encoded as (sign, axis)
    elems = [(1, "1"), (-1, "1"), (1, "i"), (-1, "i"),
             (1, "j"), (-1, "j"), (1, "k"), (-1, "k")]
    index = {e: n for n, e in enumerate(elems)}
    rules = {("1", "1"): (1, "1"),
             ("1", "i"): (1, "i"), ("i", "1"): (1, "i"),
             ("1", "j"): (1, "j"), ("j", "1"): (1, "j"),
             ("1", "k"): (1, "k"), ("k", "1"): (1, "k"),
             ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"),
             ("k", "k"): (-1, "1"),
             ("i", "j"): (1, "k"), ("j", "i"): (-1, "k"),
             ("j", "k"): (1, "i"), ("k", "j"): (-1, "i"),
             ("k", "i"): (1, "j"), ("i", "k"): (-1, "j")}
    mult = []
    for sa, a in elems:
        row = []
        for sb, b in elems:
            s, c = rules[(a, b)]
            row.append(index[(s * sa * sb, c)])
        mult.append(row)
    return FiniteGroup("Q8", mult)


def standard_target(name: str) -> FiniteGroup:
    """S3, S4, D4, Q8 (and Z/n via 'Z2', 'Z8', ...)."""
    name = name.upper()
    if name == "S3":
        return _perm_group("S3", 3, [(1, 0, 2), (0, 2, 1)])
    if name == "S4":
        return _perm_group("S4", 4, [(1, 0, 2, 3), (1, 2, 3, 0)])
    if name == "D4":
        return _perm_group("D4", 4, [(1, 2, 3, 0), (3, 2, 1, 0)])
    if name == "Q8":
        return _quaternion_group()
    if name.startswith("Z") and name[1:].isdigit():
        n = int(name[1:])
        if n < 1:
            raise HomError("cyclic order must be >= 1")
        mult = [[(a + b) % n for b in range(n)] for a in range(n)]
        return FiniteGroup(name, mult)
    raise HomError(f"unknown target group {name!r}")


DEFAULT_TARGET_CAP = 120


def count_homs(p: Presentation, target,
               order_cap: int = DEFAULT_TARGET_CAP) -> int:
    """Number of homomorphisms from the presented group into `target`.

    Backtracking over generator images; each relator is checked as soon
    as all of its generators have images, which prunes hard on the short
    relators typical of the corpus presentations.
    """
    if isinstance(target, str):
        target = standard_target(target)
    if target.order > order_cap:
        raise HomError(
            f"target order {target.order} exceeds cap {order_cap}")
    gens = list(p.generators)
    gidx = {g: i for i, g in enumerate(gens)}
    n = len(gens)
    # relator -> (letters as (gen index, exp), last generator position)
    rel_by_last: List[List[List[Tuple[int, int]]]] = [[] for _ in range(n)]
    for r in p.relators:
        letters = [(gidx[name], e) for name, e in r.letters]
        last = max(i for i, _e in letters)
        rel_by_last[last].append(letters)
    if n == 0:
        return 1
    mult = target.mult
    inv = target.inv
    images = [0] * n
    total = 0

    def ok(letters):
        acc = 0
        for i, e in letters:
            x = images[i] if e == 1 else inv[images[i]]
            acc = mult[acc][x]
        return acc == 0

    def recurse(k):
        nonlocal total
        if k == n:
            total += 1
            return
        for x in range(target.order):
            images[k] = x
            if all(ok(letters) for letters in rel_by_last[k]):
                recurse(k + 1)

    recurse(0)
    return total
