"""Reidemeister–Schreier kernels, Tietze simplification, derived series.

Kernels are taken along surjections onto finite abelian groups (coset =
element of the quotient), which is exactly what the derived-series pipeline
needs: the coset table is built directly from the abelianized generator
images, the Schreier transversal is shortlex, and relators are rewritten
into Schreier generators and then Tietze-simplified.
"""

from __future__ import annotations

import itertools
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .abelian import AbelianInvariants, abelianization_with_images
from .presentation import Presentation, PresentationError
from .words import GroupWord


class RewriteError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Reidemeister–Schreier along a finite abelian quotient
# ---------------------------------------------------------------------------

def rs_kernel(p: Presentation, moduli: Sequence[int],
              images: Mapping[str, Sequence[int]],
              simplify: bool = True,
              tietze_limits: Optional[Mapping] = None) -> Presentation:
    """Presentation of the kernel of the map onto prod Z/moduli[i].

    `images` sends each generator to a tuple of residues.  The map must be
    surjective (checked).  The identity-coset case (empty moduli) returns
    the presentation unchanged.
    """
    moduli = tuple(int(m) for m in moduli)
    if any(m < 2 for m in moduli):
        raise RewriteError("moduli must all be >= 2")
    imgs = {g: tuple(int(x) % m for x, m in zip(images[g], moduli))
            for g in p.generators}
    if not moduli:
        return p

    def add(a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, moduli))

    def neg(a):
        return tuple((-x) % m for x, m in zip(a, moduli))

    zero = tuple(0 for _ in moduli)
    # surjectivity: close {0} under adding generator images
    reach = {zero}
    frontier = [zero]
    while frontier:
        t = frontier.pop()
        for g in p.generators:
            for step in (imgs[g], neg(imgs[g])):
                u = add(t, step)
                if u not in reach:
                    reach.add(u)
                    frontier.append(u)
    order = 1
    for m in moduli:
        order *= m
    if len(reach) != order:
        raise RewriteError(
            f"images generate a subgroup of index {order // len(reach)}, "
            "not the full target")

    # shortlex Schreier transversal (BFS over generator letters in order)
    letters = []
    for g in p.generators:
        letters.append((g, 1, imgs[g]))
        letters.append((g, -1, neg(imgs[g])))
    transversal: Dict[tuple, GroupWord] = {zero: GroupWord()}
    queue = [zero]
    while queue:
        nxt = []
        for t in queue:
            for g, e, step in letters:
                u = add(t, step)
                if u not in transversal:
                    transversal[u] = transversal[t] * GroupWord([(g, e)])
                    nxt.append(u)
        queue = nxt

    # Schreier generators: one per (coset, generator); tree edges trivial
    names: Dict[Tuple[tuple, str], str] = {}
    trivial = set()
    counter = itertools.count(1)
    cosets = sorted(transversal)
    for t in cosets:
        for g in p.generators:
            u = add(t, imgs[g])
            w = transversal[t] * GroupWord.gen(g) * transversal[u].inverse()
            key = (t, g)
            if w.is_identity():
                trivial.add(key)
            else:
                names[key] = f"y{next(counter)}"

    def rewrite(r: GroupWord, t: tuple) -> GroupWord:
        out = []
        s = t
        for g, e in r.letters:
            if e == 1:
                key = (s, g)
                if key not in trivial:
                    out.append((names[key], 1))
                s = add(s, imgs[g])
            else:
                s = add(s, neg(imgs[g]))
                key = (s, g)
                if key not in trivial:
                    out.append((names[key], -1))
        return GroupWord(out)

    relators = []
    for r in p.relators:
        for t in cosets:
            rr = rewrite(r, t)
            if not rr.is_identity():
                relators.append(rr)
    kernel = Presentation(
        [names[k] for k in sorted(names, key=lambda k: int(names[k][1:]))],
        relators,
        notes=f"rs_kernel of ({p.notes or 'presentation'}) onto "
              f"{'x'.join(f'Z/{m}' for m in moduli)}")
    if simplify:
        kernel = tietze_simplify(kernel, tietze_limits)
    return kernel


# ---------------------------------------------------------------------------
# Tietze simplification
# ---------------------------------------------------------------------------

DEFAULT_TIETZE = {"max_growth": 200_000, "max_total_length": 4_000_000,
                  "max_eliminations": 100_000}


def _free_cyclic_reduce(ls):
    """Free reduction (stack) then cyclic reduction of a letter list."""
    stack = []
    for let in ls:
        if stack and stack[-1][0] == let[0] and stack[-1][1] == -let[1]:
            stack.pop()
        else:
            stack.append(let)
    while len(stack) >= 2 and stack[0][0] == stack[-1][0] and \
            stack[0][1] == -stack[-1][1]:
        stack = stack[1:-1]
    return stack


def _canonical_key(ls):
    """Cyclic-rotation / inversion canonical key for deduplication."""
    if not ls:
        return ()
    best = None
    inv = [(n, -e) for n, e in reversed(ls)]
    for w in (ls, inv):
        for k in range(len(w)):
            rot = tuple(w[k:] + w[:k])
            if best is None or rot < best:
                best = rot
    return best


def tietze_simplify(p: Presentation,
                    limits: Optional[Mapping] = None) -> Presentation:
    """Shorter presentation of an isomorphic group.

    Moves: free/cyclic relator reduction, duplicate removal, removal of
    generators made trivial by length-1 relators, and elimination of a
    generator occurring exactly once in some relator (substituting its
    expression into every other relator).  All moves preserve the group;
    the move log is attached as `tietze_log`.  Eliminations are chosen
    cheapest-first through a lazy priority queue, so large Schreier
    presentations (hundreds of generators) stay tractable.
    """
    import heapq

    limits = {**DEFAULT_TIETZE, **(limits or {})}
    gens = set(p.generators)
    gen_order = list(p.generators)
    rels = {}            # idx -> letter list (alive relators)
    gen2rels = {g: set() for g in gens}
    occ = {g: 0 for g in gens}
    version = {}
    log = []

    def register(idx, ls):
        rels[idx] = ls
        version[idx] = version.get(idx, 0) + 1
        for n, _e in ls:
            occ[n] += 1
            gen2rels[n].add(idx)

    def unregister(idx):
        for n, _e in rels[idx]:
            occ[n] -= 1
        for n in {n for n, _e in rels[idx]}:
            gen2rels[n].discard(idx)
        del rels[idx]

    next_idx = 0
    seen_keys = set()
    for r in p.relators:
        ls = _free_cyclic_reduce(list(r.letters))
        if not ls:
            continue
        key = _canonical_key(ls) if len(ls) <= 128 else tuple(ls)
        if key in seen_keys:
            continue
        seen_keys.add(key)
        register(next_idx, ls)
        next_idx += 1

    heap = []

    def push_candidates(idx):
        ls = rels.get(idx)
        if ls is None:
            return
        v = version.get(idx, 0)
        counts = {}
        for n, _e in ls:
            counts[n] = counts.get(n, 0) + 1
        for g, k in counts.items():
            if k == 1:
                cost = (len(ls) - 2) * max(occ[g] - 1, 0)
                heapq.heappush(heap, (cost, len(ls), g, idx, v))

    for idx in list(rels):
        push_candidates(idx)

    eliminations = 0
    while heap and eliminations < limits["max_eliminations"]:
        cost, rl, g, idx, v = heapq.heappop(heap)
        ls = rels.get(idx)
        if ls is None or g not in gens or version.get(idx, 0) != v:
            continue  # stale: fresh candidates were pushed on modification
        true_cost = (len(ls) - 2) * max(occ[g] - 1, 0)
        if true_cost != cost:
            heapq.heappush(heap, (true_cost, len(ls), g, idx, v))
            continue
        if true_cost > limits["max_growth"]:
            continue
        # rotate so the relator starts with g^e; then g = (rest)^-e
        pos = next(i for i, (n, _e) in enumerate(ls) if n == g)
        ls = ls[pos:] + ls[:pos]
        e = ls[0][1]
        rest = ls[1:]
        if e == 1:
            expr = [(n, -ee) for n, ee in reversed(rest)]
        else:
            expr = rest
        expr_inv = [(n, -ee) for n, ee in reversed(expr)]
        unregister(idx)
        affected = list(gen2rels[g])
        for j in affected:
            old = rels[j]
            new = []
            for n, ee in old:
                if n == g:
                    new.extend(expr if ee == 1 else expr_inv)
                else:
                    new.append((n, ee))
            new = _free_cyclic_reduce(new)
            unregister(j)
            if new:
                register(j, new)
                push_candidates(j)
        gens.discard(g)
        del gen2rels[g]
        del occ[g]
        log.append(f"eliminated {g} (relator length {rl}, cost {cost})")
        eliminations += 1
        if sum(len(ls2) for ls2 in rels.values()) > \
                limits["max_total_length"]:
            log.append("stopped: total length limit")
            break

    # final cleanup: dedup by canonical form, drop empties
    seen = set()
    final = []
    for idx in sorted(rels):
        ls = rels[idx]
        key = _canonical_key(ls) if len(ls) <= 128 else tuple(ls)
        if key and key not in seen:
            seen.add(key)
            final.append(GroupWord(ls))
    out_gens = [g for g in gen_order if g in gens]
    notes = (p.notes + "; " if p.notes else "") + \
        f"tietze: {len(log)} moves"
    out = Presentation(out_gens, final, notes)
    out.tietze_log = log
    return out


# ---------------------------------------------------------------------------
# derived series
# ---------------------------------------------------------------------------

DEFAULT_DERIVED_LIMITS = {"max_index": 512, "max_generators": 4000,
                          "tietze": None}


def derived_series_quotients(p: Presentation, depth: int,
                             limits: Optional[Mapping] = None):
    """Successive abelianizations G/G', G'/G'', ... down to `depth` levels.

    Returns {"quotients": [AbelianInvariants...], "status": str,
    "presentations": [...]}.  Recursion into the next level needs a finite
    abelianization; an infinite one is reported and stops the walk (its
    invariants are still appended).
    """
    if depth < 1:
        raise RewriteError("depth must be >= 1")
    limits = {**DEFAULT_DERIVED_LIMITS, **(limits or {})}
    quotients = []
    presentations = [p]
    status = "complete"
    current = p
    for level in range(depth):
        if level == depth - 1:
            # the last level only needs invariants (fast sparse path):
            # the unsimplified kernel can be large
            from .abelian import abelianization
            quotients.append(abelianization(current))
            break
        inv, images = abelianization_with_images(current)
        quotients.append(inv)
        if not inv.is_finite():
            status = "stopped: infinite abelianization at level " \
                f"{level + 1}"
            break
        if inv.order() == 1:
            status = f"stopped: perfect group at level {level + 1}"
            break
        if inv.order() > limits["max_index"]:
            status = f"stopped: index {inv.order()} exceeds limit"
            break
        torsion_images = {g: v[:len(inv.torsion)]
                          for g, v in images.items()}
        # the kernel feeding the final level is only ever abelianized, and
        # the sparse invariants path digests the raw Schreier presentation
        # directly; Tietze there costs far more than it saves
        simplify = level < depth - 2
        current = rs_kernel(current, inv.torsion, torsion_images,
                            simplify=simplify,
                            tietze_limits=limits["tietze"])
        if len(current.generators) > limits["max_generators"]:
            status = "stopped: generator limit exceeded"
            break
        presentations.append(current)
    return {"quotients": quotients, "status": status,
            "presentations": presentations}
