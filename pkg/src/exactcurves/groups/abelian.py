"""Smith normal form and abelianization of finite presentations."""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .presentation import Presentation


class AbelianInvariants:
    """Free rank plus invariant torsion factors d1 | d2 | ... (all >= 2)."""

    def __init__(self, rank: int, torsion: Sequence[int]):
        torsion = tuple(int(d) for d in torsion)
        if any(d < 2 for d in torsion):
            raise ValueError("torsion factors must be >= 2")
        for a, b in zip(torsion, torsion[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must form a "
                                 "divisibility chain")
        self.rank = rank
        self.torsion = torsion

    def is_finite(self) -> bool:
        return self.rank == 0

    def order(self):
        if not self.is_finite():
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def __eq__(self, other):
        return (isinstance(other, AbelianInvariants)
                and self.rank == other.rank
                and self.torsion == other.torsion)

    def __hash__(self):
        return hash((self.rank, self.torsion))

    def describe(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        groups = {}
        for d in self.torsion:
            groups[d] = groups.get(d, 0) + 1
        for d in sorted(groups):
            k = groups[d]
            parts.append(f"Z/{d}" if k == 1 else f"(Z/{d})^{k}")
        return " + ".join(parts) if parts else "trivial"

    def __repr__(self):
        return f"AbelianInvariants({self.describe()})"


def smith_normal_form(M: Sequence[Sequence[int]]):
    """U*M*V = D with D diagonal (divisibility chain), U and V unimodular.

    Returns (invariant_factors, D, U, V); invariant_factors lists the
    nonzero diagonal entries (including 1s).
    """
    A = [list(map(int, row)) for row in M]
    r = len(A)
    c = len(A[0]) if r else 0
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    V = [[int(i == j) for j in range(c)] for i in range(c)]

    def row_op(i, j, k):          # row_i += k*row_j
        A[i] = [a + k * b for a, b in zip(A[i], A[j])]
        U[i] = [a + k * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, k):          # col_i += k*col_j
        for row in A:
            row[i] += k * row[j]
        for row in V:
            row[i] += k * row[j]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def row_neg(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]

    t = 0
    while t < min(r, c):
        # find smallest-magnitude nonzero pivot in the remaining block
        best = None
        for i in range(t, r):
            for j in range(t, c):
                if A[i][j] and (best is None
                                or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i0, j0 = best
        row_swap(t, i0)
        col_swap(t, j0)
        while True:
            done = True
            for i in range(t + 1, r):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    row_op(i, t, -q)
                    if A[i][t]:
                        row_swap(t, i)
                        done = False
            for j in range(t + 1, c):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    col_op(j, t, -q)
                    if A[t][j]:
                        col_swap(t, j)
                        done = False
            if done:
                break
        if A[t][t] < 0:
            row_neg(t)
        t += 1
    return _chain_fix(A, U, V, t)


def _chain_fix(A, U, V, t):
    """Ensure divisibility d1 | d2 | ... by gcd-absorbing passes."""
    import math
    changed = True
    while changed:
        changed = False
        for i in range(t - 1):
            a, b = A[i][i], A[i + 1][i + 1]
            if b % a != 0:
                g = math.gcd(a, b)
                lcm = a // g * b
                A[i][i], A[i + 1][i + 1] = g, lcm
                # transforms: [[1,1],[0,1]] style updates on U/V restricted
                # to rows/cols i, i+1 using the standard 2x2 identity
                #   [a 0; 0 b] = P [g 0; 0 lcm] Q for unimodular P, Q
                x, y = _bezout(a, b)
                # U' rows: combine rows i, i+1
                _two_by_two(U, A, V, i, a, b, g, lcm, x, y)
                changed = True
    diag = [A[i][i] for i in range(t)]
    return diag, A, U, V


def _bezout(a, b):
    # x*a + y*b = g
    old_r, r = a, b
    old_s, s = 1, 0
    old_t2, t2 = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t2, t2 = t2, old_t2 - q * t2
    return old_s, old_t2


def _two_by_two(U, A, V, i, a, b, g, lcm, x, y):
    """Absorb a 2x2 diagonal block diag(a, b) into diag(g, lcm) by
    unimodular P (rows of U) and Q (columns of V):
    P = [[x, y], [-b//g, a//g]],  Q = [[1, -(b//g)*y], [1, (a//g)*x]]."""
    P = [[x, y], [-(b // g), a // g]]
    Q = [[1, -(b // g) * y], [1, (a // g) * x]]
    # sanity (cheap, exact):
    M00 = P[0][0] * a * Q[0][0] + P[0][1] * b * Q[1][0]
    M01 = P[0][0] * a * Q[0][1] + P[0][1] * b * Q[1][1]
    M10 = P[1][0] * a * Q[0][0] + P[1][1] * b * Q[1][0]
    M11 = P[1][0] * a * Q[0][1] + P[1][1] * b * Q[1][1]
    assert (M00, M01, M10, M11) == (g, 0, 0, lcm)
    r1, r2 = list(U[i]), list(U[i + 1])
    U[i] = [P[0][0] * u + P[0][1] * v for u, v in zip(r1, r2)]
    U[i + 1] = [P[1][0] * u + P[1][1] * v for u, v in zip(r1, r2)]
    for row in V:
        u, v = row[i], row[i + 1]
        row[i] = u * Q[0][0] + v * Q[1][0]
        row[i + 1] = u * Q[0][1] + v * Q[1][1]


def abelianization(p: Presentation) -> AbelianInvariants:
    """Invariants only (no generator images): uses a sparse fast path that
    first eliminates unit pivots, so it scales to the large unsimplified
    kernel presentations produced by the derived-series walk."""
    n = len(p.generators)
    if n == 0:
        return AbelianInvariants(0, ())
    index = {g: i for i, g in enumerate(p.generators)}
    rows = []
    seen = set()
    for r in p.relators:
        row = {}
        for name, e in r.letters:
            j = index[name]
            row[j] = row.get(j, 0) + e
        row = {j: v for j, v in row.items() if v}
        if not row:
            continue
        key = tuple(sorted(row.items()))
        if key in seen:
            continue
        seen.add(key)
        rows.append(row)
    return _invariants_sparse(rows, n)


def _invariants_sparse(rows, ncols) -> AbelianInvariants:
    """Cokernel invariants of Z^ncols / rowspace for sparse integer rows.

    Unit (+-1) pivots are eliminated first, chosen by Markowitz cost
    (minimal predicted fill-in), which keeps both fill and coefficient
    growth under control on the large relator matrices coming out of
    Reidemeister-Schreier; the dense Smith form only ever sees the small
    non-unit remnant."""
    col_rows = {}   # col -> set of row ids
    rows = {i: dict(r) for i, r in enumerate(rows)}
    for i, r in rows.items():
        for j in r:
            col_rows.setdefault(j, set()).add(i)
    unit_pivots = 0
    while True:
        best = None
        for i, r in rows.items():
            rn = len(r)
            for j, v in r.items():
                if v in (1, -1):
                    cost = (rn - 1) * (len(col_rows[j]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, i, j)
        if best is None:
            break
        _cost, i0, j0 = best
        pivot = rows.pop(i0)
        v0 = pivot[j0]
        for j in pivot:
            col_rows[j].discard(i0)
        # clear column j0 from every other row (row operations only; the
        # cokernel is unchanged) then drop the pivot row and column
        for i in list(col_rows.get(j0, ())):
            r = rows[i]
            f = r[j0] * v0  # v0 in {1,-1}: multiplier so column vanishes
            for j, v in pivot.items():
                nv = r.get(j, 0) - f * v
                if nv:
                    if j not in r:
                        col_rows.setdefault(j, set()).add(i)
                    r[j] = nv
                elif j in r:
                    del r[j]
                    col_rows[j].discard(i)
            if not r:
                del rows[i]
        del col_rows[j0]
        unit_pivots += 1
    # dense remnant on the columns still present
    live_cols = sorted(j for j, s in col_rows.items() if s)
    live_rows = [r for r in rows.values() if r]
    free_untouched = ncols - unit_pivots - len(live_cols)
    if not live_rows:
        return AbelianInvariants(free_untouched + len(live_cols), ())
    colmap = {j: k for k, j in enumerate(live_cols)}
    seen = set()
    M = []
    for r in live_rows:
        row = [0] * len(live_cols)
        for j, v in r.items():
            row[colmap[j]] = v
        key = tuple(row)
        if key not in seen:
            seen.add(key)
            M.append(row)
    diag = _snf_diagonal(M)
    torsion = [d for d in diag if d > 1]
    rank = len(live_cols) - len(diag) + free_untouched
    return AbelianInvariants(rank, torsion)


def _snf_diagonal(M):
    """Invariant factors of an integer matrix without transform tracking
    (same pivoting as smith_normal_form, cheaper for invariants only)."""
    import math
    A = [list(row) for row in M]
    r = len(A)
    c = len(A[0]) if r else 0
    t = 0
    while t < min(r, c):
        best = None
        for i in range(t, r):
            Ai = A[i]
            for j in range(t, c):
                if Ai[j] and (best is None
                              or abs(Ai[j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i0, j0 = best
        A[t], A[i0] = A[i0], A[t]
        if j0 != t:
            for row in A:
                row[t], row[j0] = row[j0], row[t]
        while True:
            done = True
            p = A[t][t]
            for i in range(t + 1, r):
                if A[i][t]:
                    q = A[i][t] // p
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        p = A[t][t]
                        done = False
            for j in range(t + 1, c):
                if A[t][j]:
                    q = A[t][j] // p
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        for row in A:
                            row[t], row[j] = row[j], row[t]
                        p = A[t][t]
                        done = False
            if done:
                break
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
        t += 1
    diag = [abs(A[i][i]) for i in range(t)]
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            a, b = diag[i], diag[i + 1]
            if b % a:
                g = math.gcd(a, b)
                diag[i], diag[i + 1] = g, a // g * b
                changed = True
    return diag


def abelianization_with_images(p: Presentation):
    """Invariants plus each generator's image in the torsion coordinates.

    Returns (AbelianInvariants, {generator: tuple of residues}), the tuple
    running over the torsion factors (and free coordinates last, as exact
    integers) of Z^n / relator lattice.
    """
    n = len(p.generators)
    if n == 0:
        return AbelianInvariants(0, ()), {}
    rows = [[r.exponent_sum(g) for g in p.generators] for r in p.relators]
    if not rows:
        rows = [[0] * n]
    diag, _A, _U, V = smith_normal_form(rows)
    k = len(diag)
    torsion_idx = [i for i in range(k) if diag[i] > 1]
    free_count = n - k
    inv = AbelianInvariants(free_count, [diag[i] for i in torsion_idx])
    images = {}
    for j, g in enumerate(p.generators):
        # generator e_j maps to row j of V in the new coordinates
        coords = []
        for i in torsion_idx:
            coords.append(V[j][i] % diag[i])
        for i in range(k, n):
            coords.append(V[j][i])
        images[g] = tuple(coords)
    return inv, images
