"""Local analysis of plane-curve germs.

Certifies singularity types from exact data: multiplicity and tangent cone,
Newton-segment certificates for ordinary cusps (type A2) and the deeper
cuspidal type E6 (local model u^3 = v^4), truncated integer-exponent branch
expansions for germs whose branches are all smooth, the composite
three-branch type with pairwise contact orders (2,2,3), tangent-line
concurrency, weighted Bezout numbers, and projective smoothness
certificates via iterated resultants.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from . import fields as fl
from .fields import QQ, FieldElement, NumberField
from .multipoly import (MultiPoly, PolyError, poly_gcd_univ, resultant,
                        squarefree_part)


class GermError(ValueError):
    pass


# Local invariants of the model u^3 = v^4, fixed by its Newton segment
# (3,0)-(0,4): Newton number (3-1)(4-1) = 6, delta invariant 3.
E6_MILNOR = 6
E6_DELTA = 3


class CurveGerm:
    """A plane-curve germ: a 2-variable polynomial at a base point.

    The first variable of `f` is treated as the dependent one (branches are
    expanded as series u = phi(v)).  The base point is translated to the
    origin internally.
    """

    def __init__(self, f: MultiPoly, point=(0, 0)):
        if len(f.vars) != 2:
            raise GermError("germ polynomial must have exactly 2 variables")
        if f.is_zero():
            raise GermError("germ polynomial is identically zero")
        u, v = f.vars
        a, b = point
        field = f.field
        for c in (a, b):
            if isinstance(c, FieldElement):
                field = fl.common_field(field, c.field)
        f = f.to_field(field)
        if a or b:
            shifted = f.substitute({
                u: MultiPoly.var(f.vars, u, field) + field.coerce(a),
                v: MultiPoly.var(f.vars, v, field) + field.coerce(b)})
        else:
            shifted = f
        self.original = f
        self.point = (field.coerce(a), field.coerce(b))
        self.f = shifted
        self.field = field

    def on_curve(self) -> bool:
        return (0,) * 2 not in self.f.terms

    def __repr__(self):
        return f"CurveGerm({self.f.to_text()} at {self.point})"


class SingularityCertificate:
    """Verdict record for a germ: type, multiplicity, tangent/Newton data."""

    def __init__(self, verdict, multiplicity=None, tangent_cone=None,
                 cone_power_of=None, newton_segment=None, newton_number=None,
                 contacts=None, reason=None, notes=None):
        self.verdict = verdict
        self.multiplicity = multiplicity
        self.tangent_cone = tangent_cone
        self.cone_power_of = cone_power_of  # linear form when cone = c*L^m
        self.newton_segment = newton_segment
        self.newton_number = newton_number
        self.contacts = contacts
        self.reason = reason
        self.notes = list(notes or [])

    def to_doc(self):
        doc = {"verdict": self.verdict}
        if self.multiplicity is not None:
            doc["multiplicity"] = self.multiplicity
        if self.tangent_cone is not None:
            doc["tangent_cone"] = self.tangent_cone.to_text()
        if self.cone_power_of is not None:
            doc["cone_power_of"] = self.cone_power_of.to_text()
        if self.newton_segment is not None:
            doc["newton_segment"] = [list(p) for p in self.newton_segment]
        if self.newton_number is not None:
            doc["newton_number"] = self.newton_number
        if self.contacts is not None:
            doc["contacts"] = list(self.contacts)
        if self.reason is not None:
            doc["reason"] = self.reason
        doc["notes"] = list(self.notes)
        return doc

    def __repr__(self):
        return f"SingularityCertificate({self.verdict}, m={self.multiplicity})"


class BranchExpansion:
    """Truncated smooth-branch series u = sum a_k v^k (integer exponents)."""

    def __init__(self, varnames, coeffs, field, truncation):
        self.vars = tuple(varnames)
        self.coeffs = list(coeffs)  # coeffs[k-1] is the coefficient of v^k
        self.field = field
        self.truncation = truncation

    def tangent_slope(self):
        return self.coeffs[0] if self.coeffs else self.field.zero()

    def series_poly(self) -> MultiPoly:
        u, v = self.vars
        terms = {}
        for k, a in enumerate(self.coeffs, start=1):
            if a:
                terms[(0, k)] = a
        return MultiPoly(self.vars, terms, self.field)

    def residual_valuation(self, f: MultiPoly) -> int:
        """Order in v of f(series, v); > truncation for a true branch."""
        u, v = self.vars
        g = f.substitute({u: self.series_poly()})
        if g.is_zero():
            return 10 ** 9
        return min(e[1] for e in g.terms)

    def __repr__(self):
        return f"BranchExpansion({self.series_poly().to_text()})"


# ---------------------------------------------------------------------------
# multiplicity and tangent cone
# ---------------------------------------------------------------------------

def multiplicity_and_cone(germ: CurveGerm):
    """Multiplicity m, degree-m cone, and its perfect-power analysis.

    Returns (m, cone, is_perfect_power, linear_form).  The perfect-power
    test is exact: discriminant for m=2, Hessian for m=3, verified
    reconstruction for other m.
    """
    f = germ.f
    if (0, 0) in f.terms:
        raise GermError("base point is not on the curve")
    m = f.min_degree()
    cone = f.homogeneous_part(m)
    is_power, L = _perfect_power_linear(cone, m)
    return m, cone, is_power, L


def _cone_coeff(cone, i, j):
    return cone.terms.get((i, j), cone.field.zero())


def _perfect_power_linear(cone: MultiPoly, m: int):
    """Whether a binary degree-m form equals c*L^m; returns (bool, L)."""
    field = cone.field
    u, v = cone.vars
    if m == 0:
        return False, None
    if m == 1:
        return True, cone
    if m == 2:
        a = _cone_coeff(cone, 2, 0)
        b = _cone_coeff(cone, 1, 1)
        c = _cone_coeff(cone, 0, 2)
        if b * b - 4 * a * c != 0:
            return False, None
    elif m == 3:
        # binary cubic is a perfect cube iff its Hessian vanishes identically
        huu = cone.derivative(u).derivative(u)
        hvv = cone.derivative(v).derivative(v)
        huv = cone.derivative(u).derivative(v)
        if not (huu * hvv - huv * huv).is_zero():
            return False, None
    L = _extract_power_root(cone, m)
    return (L is not None), L


def _extract_power_root(cone: MultiPoly, m: int):
    """Linear L with cone = c*L^m, verified by expansion; None if absent."""
    field = cone.field
    u, v = cone.vars
    a = _cone_coeff(cone, m, 0)
    if a:
        # cone = a*(u + s*v)^m  =>  coefficient of u^(m-1) v is m*a*s
        s = _cone_coeff(cone, m - 1, 1) / (m * a)
        L = MultiPoly.var(cone.vars, u, field) + \
            MultiPoly.const(cone.vars, s, field) * \
            MultiPoly.var(cone.vars, v, field)
        if cone == MultiPoly.const(cone.vars, a, field) * L ** m:
            return L
        return None
    c = _cone_coeff(cone, 0, m)
    L = MultiPoly.var(cone.vars, v, field)
    if c and cone == MultiPoly.const(cone.vars, c, field) * L ** m:
        return L
    return None


# ---------------------------------------------------------------------------
# A1 / A2 / E6 certificates
# ---------------------------------------------------------------------------

_TYPE_DATA = {
    # expected type -> (multiplicity, second Newton vertex b, i.e. the
    # required nonzero coefficient of v^b after the cone-straightening change)
    "A2": (2, 3),
    "E6": (3, 4),
}


def certify_type(germ: CurveGerm, expected: str) -> SingularityCertificate:
    """Certificate that a germ has type A1, A2, or E6 (or explain failure).

    For A2/E6: multiplicity m with tangent cone a perfect m-th power c*L^m,
    and after the linear change L -> u the coefficient of v^(m+1) is
    nonzero.  With the cone equal to L^m no monomial can lie below the
    Newton segment (m,0)-(0,m+1); the segment's endpoints are coprime, so
    the germ is Newton-nondegenerate with Newton number (m-1)*m and is
    topologically u^m = v^(m+1).
    """
    if expected not in ("A1", "A2", "E6"):
        raise GermError(f"unsupported expected type {expected!r}")
    if not germ.on_curve():
        raise GermError("point not on curve")
    f = germ.f
    u, v = f.vars
    m = f.min_degree()
    if m == 1:
        return SingularityCertificate(
            "SMOOTH", multiplicity=1, tangent_cone=f.homogeneous_part(1),
            notes=["germ is smooth at the point"])
    mm, cone, is_power, L = multiplicity_and_cone(germ)
    notes = []
    if expected == "A1":
        if m != 2:
            return SingularityCertificate(
                "OTHER", multiplicity=m, tangent_cone=cone,
                reason=f"multiplicity {m}, expected 2")
        if is_power:
            return SingularityCertificate(
                "OTHER", multiplicity=2, tangent_cone=cone,
                reason="tangent cone is a repeated line, not two distinct "
                       "lines")
        return SingularityCertificate(
            "A1", multiplicity=2, tangent_cone=cone,
            notes=["cone discriminant nonzero: two distinct tangent lines"])

    m_want, b = _TYPE_DATA[expected]
    if m != m_want:
        return SingularityCertificate(
            "OTHER", multiplicity=m, tangent_cone=cone,
            reason=f"multiplicity {m}, expected {m_want}")
    if not is_power:
        return SingularityCertificate(
            "OTHER", multiplicity=m, tangent_cone=cone,
            reason="tangent cone is not a perfect power of a linear form")
    g = _straighten(f, L)
    crit = g.terms.get((0, b), g.field.zero())
    if not crit:
        return SingularityCertificate(
            "OTHER", multiplicity=m, tangent_cone=cone, cone_power_of=L,
            reason=f"v^{b} coefficient zero: degenerates beyond expected "
                   "type")
    nu = (m - 1) * (b - 1)
    notes.append(
        f"tangent cone is L^{m}; every monomial of the straightened germ "
        f"lies on or above the segment ({m},0)-(0,{b})")
    notes.append(
        f"gcd({m},{b})=1: no interior lattice points; Newton-nondegenerate "
        f"with Newton number {nu}; topological model u^{m} = v^{b}")
    return SingularityCertificate(
        expected, multiplicity=m, tangent_cone=cone, cone_power_of=L,
        newton_segment=((m, 0), (0, b)), newton_number=nu, notes=notes)


def _straighten(f: MultiPoly, L: MultiPoly) -> MultiPoly:
    """Linear change sending the line L to u (and a complement to v)."""
    u, v = f.vars
    cu = L.terms.get((1, 0), f.field.zero())
    cv = L.terms.get((0, 1), f.field.zero())
    U = MultiPoly.var(f.vars, u, f.field)
    V = MultiPoly.var(f.vars, v, f.field)
    if cu:
        # L = cu*u + cv*v -> u:  u = (U - cv*V)/cu, v = V
        return f.substitute({
            u: (U - MultiPoly.const(f.vars, cv, f.field) * V) *
            MultiPoly.const(f.vars, 1 / cu, f.field)})
    # L = cv*v: swap roles
    return f.substitute({u: V * MultiPoly.const(f.vars, 1 / cv, f.field),
                         v: U})


# ---------------------------------------------------------------------------
# integer-exponent branch expansions
# ---------------------------------------------------------------------------

def puiseux_branches(germ: CurveGerm, truncation: int = 8):
    """Truncated series for the branches of a germ, all assumed smooth.

    Branch exponents are restricted to integers; a germ needing fractional
    exponents is rejected.  Branch coefficients live in the germ's field or
    a bounded extension adjoined on the way.
    """
    f = germ.f
    if not germ.on_curve():
        raise GermError("point not on curve")
    u, v = f.vars
    m = f.min_degree()
    cone = f.homogeneous_part(m)
    shear = None
    if not _cone_coeff(cone, m, 0):
        f, shear = _shear_away_vertical(f, m)
    raw = _expand_branches(f, truncation, 0)
    branches = []
    for coeffs, field in raw:
        coeffs = list(coeffs) + [field.zero()] * (truncation - len(coeffs))
        branches.append(BranchExpansion(f.vars, coeffs[:truncation], field,
                                        truncation))
    for b in branches:
        val = b.residual_valuation(f)
        if val <= truncation:
            raise GermError(
                "branch residual has order <= truncation; truncation too "
                "small to separate branches")
    return branches, shear


def _shear_away_vertical(f: MultiPoly, m: int):
    """Substitute v -> v + lam*u so no branch is tangent to the v-axis."""
    u, v = f.vars
    U = MultiPoly.var(f.vars, u, f.field)
    V = MultiPoly.var(f.vars, v, f.field)
    for lam in range(1, 20):
        g = f.substitute({v: V + Fraction(lam) * U})
        cone = g.homogeneous_part(g.min_degree())
        if _cone_coeff(cone, g.min_degree(), 0):
            return g, Fraction(lam)
    raise GermError("no shear separates the germ from the v-axis")


def _strip_root(rest, r, field):
    """Divide out (t - r) as often as it divides; returns (rest, mult)."""
    mult = 0
    lin = [-field.coerce(r), field.one()]
    while True:
        q, rem = fl.up_divmod(rest, lin)
        if rem:
            break
        rest = q
        mult += 1
    return rest, mult


def _edge_roots(poly_coeffs, field):
    """Roots (with multiplicities) of a univariate polynomial over `field`.

    When some roots live outside the field, bounded extensions (degree <= 4
    over Q, degree 2 over a depth-1 field) are adjoined.  Returns
    (list of (root, mult, field), fully_split).
    """
    poly = fl.up_trim([field.coerce(c) for c in poly_coeffs])
    out = []
    rest = poly
    for r in fl.roots_in_field(poly, field):
        rest, mult = _strip_root(rest, r, field)
        if mult:
            out.append((r, mult, field))
    if fl.up_deg(rest) == 0:
        return out, True
    if field.depth() >= 3:
        return out, False
    mono = fl.up_monic(rest)
    if isinstance(field, fl.RationalField):
        parts = _q_irreducible_parts_mult(mono)
        if parts is None:
            return out, False
    elif fl.up_deg(mono) == 2:
        parts = [(mono, 1)]
    else:
        return out, False
    for part, mult in parts:
        ext = NumberField(_fresh_ext_name(field), part, field)
        lifted = [ext.coerce(c) for c in part]
        if fl.up_deg(part) == 2:
            # monic quadratic t^2 + b t + c: the generator and -b - gen
            r1 = ext.gen()
            part_roots = [r1, -ext.coerce(part[1]) - r1]
        else:
            part_roots = fl.roots_in_field(lifted, ext)
        found_any = False
        for r in part_roots:
            _, k = _strip_root(lifted, r, ext)
            if k:
                out.append((r, mult, ext))
                found_any = True
        if not found_any:
            return out, False
        # conjugate roots outside ext remain unaccounted
        total = sum(1 for rr, _m, ff in out if ff is ext)
        if total < fl.up_deg(part):
            return out, False
    return out, True


def _q_irreducible_parts_mult(mono):
    """Irreducible factors (degree <= 4) of a rational polynomial with
    multiplicities, as (coefficient list, multiplicity); None if any factor
    stays unresolved."""
    from .multipoly import factor_bounded
    f = MultiPoly.from_univariate(
        [Fraction(c) for c in mono], ("t",), "t")
    _, fac, unres = factor_bounded(f, "t", cap=4)
    if unres:
        return None
    return [(p.univariate_coeffs("t"), m) for p, m in fac]


_EXT_COUNTER = [0]


def _fresh_ext_name(field):
    _EXT_COUNTER[0] += 1
    return f"w{_EXT_COUNTER[0]}"


def _field_one(field):
    return field.one()


def _expand_branches(f: MultiPoly, remaining: int, depth: int):
    """Recursive integer-exponent expansion; returns [(coeff list, field)]."""
    u, v = f.vars
    m = f.min_degree()
    if m == 0:
        raise GermError("internal: sub-germ does not vanish at origin")
    if remaining <= 0:
        if m == 1:
            return [([], f.field)]
        raise GermError("truncation too small to separate branches")
    cone = f.homogeneous_part(m)
    # edge polynomial cone(t, 1): directions u = t*v
    edge = [_cone_coeff(cone, i, m - i) for i in range(m + 1)]
    edge = fl.up_trim(edge)
    if fl.up_deg(edge) != m:
        raise GermError(
            "fractional exponents required (branch tangent to the v-axis "
            "below the top level): out of scope")
    roots, full = _edge_roots(edge, f.field)
    if not full:
        raise GermError(
            "branch tangent direction outside supported field extensions")
    out = []
    for a, mult, field in roots:
        g = f.to_field(field) if field is not f.field else f
        U = MultiPoly.var(f.vars, u, field)
        V = MultiPoly.var(f.vars, v, field)
        # u = v*(a + w); recurse on f(v*(a+w), v) / v^m in (w, v)
        sub = g.substitute({u: V * (U + MultiPoly.const(f.vars, a, field))})
        sub = _divide_out_v(sub, m)
        if sub.is_zero() or (0, 0) in sub.terms:
            raise GermError("internal: sub-germ does not vanish at origin")
        for tail, tfield in _expand_branches(sub, remaining - 1, depth + 1):
            out.append(([tfield.coerce(a)] + list(tail), tfield))
    return out


def _divide_out_v(f: MultiPoly, m: int) -> MultiPoly:
    u, v = f.vars
    terms = {}
    for e, c in f.terms.items():
        if e[1] < m:
            raise GermError("internal: expected divisibility by v^m")
        terms[(e[0], e[1] - m)] = c
    out = MultiPoly.zero(f.vars, f.field)
    out.terms = terms
    return out


# ---------------------------------------------------------------------------
# composite three-branch certificate
# ---------------------------------------------------------------------------

def certify_composite(germ: CurveGerm,
                      truncation: int = 8) -> SingularityCertificate:
    """Certificate for the three-smooth-branch type with contacts (2,2,3).

    Verdict COMPOSITE_3BRANCH iff the germ has exactly 3 smooth branches
    sharing one tangent line, and the sorted pairwise contact orders
    (valuations of branch differences) are (2, 2, 3).
    """
    branches, shear = puiseux_branches(germ, truncation)
    m, cone, is_power, L = multiplicity_and_cone(germ)
    notes = []
    if shear is not None:
        notes.append(f"internal shear v -> v + {shear}*u applied")
    if len(branches) != 3:
        return SingularityCertificate(
            "OTHER", multiplicity=m, tangent_cone=cone,
            reason=f"branch count {len(branches)}, expected 3", notes=notes)
    field = branches[0].field
    for b in branches[1:]:
        field = fl.common_field(field, b.field)
    slopes = [field.coerce(b.tangent_slope()) for b in branches]
    if not (slopes[0] == slopes[1] == slopes[2]):
        return SingularityCertificate(
            "OTHER", multiplicity=m, tangent_cone=cone,
            reason="branches do not share a tangent line", notes=notes)
    contacts = []
    for i in range(3):
        for j in range(i + 1, 3):
            k = _contact_order(branches[i], branches[j], field)
            if k is None:
                return SingularityCertificate(
                    "OTHER", multiplicity=m, tangent_cone=cone,
                    reason="two branches agree to the full truncation; "
                           "truncation too small", notes=notes)
            contacts.append(k)
    contacts.sort()
    # contact of the common tangent line u = a1*v with the germ: the sum of
    # the branch contact orders with the line (reported, not adjudicated)
    line_contact = 0
    for b in branches:
        k = 1 + next((i for i, c in enumerate(b.coeffs[1:], start=1)
                      if field.coerce(c)), b.truncation)
        line_contact += k
    notes.append(
        f"intersection of the common tangent line with the germ: "
        f"{line_contact} (sum of per-branch contact orders with the line)")
    if contacts != [2, 2, 3]:
        return SingularityCertificate(
            "OTHER", multiplicity=m, tangent_cone=cone,
            contacts=tuple(contacts),
            reason=f"pairwise contacts {tuple(contacts)}, expected (2, 2, 3)",
            notes=notes)
    notes.append("3 smooth branches, common tangent, pairwise contacts "
                 "(2, 2, 3)")
    return SingularityCertificate(
        "COMPOSITE_3BRANCH", multiplicity=m, tangent_cone=cone,
        cone_power_of=L, contacts=(2, 2, 3), notes=notes)


def _contact_order(b1: BranchExpansion, b2: BranchExpansion, field):
    n = min(len(b1.coeffs), len(b2.coeffs))
    for k in range(1, n + 1):
        if field.coerce(b1.coeffs[k - 1]) != field.coerce(b2.coeffs[k - 1]):
            return k
    return None


# ---------------------------------------------------------------------------
# tangent lines and concurrency
# ---------------------------------------------------------------------------

def tangent_lines_and_concurrency(f: MultiPoly, points: Sequence):
    """Unique tangent line at each singular point; concurrency of 3 lines.

    `f` is homogeneous in 3 variables; each point is a projective triple
    with a perfect-power tangent cone at it.  Returns (lines, concurrent)
    where each line is a coefficient triple on the variables of f.
    """
    if len(f.vars) != 3:
        raise GermError("projective polynomial must have 3 variables")
    lines = [_tangent_line_at(f, p) for p in points]
    if len(lines) != 3:
        raise GermError("concurrency test needs exactly 3 lines")
    det = _det3(lines)
    return lines, (not det)


def _tangent_line_at(f: MultiPoly, point):
    field = f.field
    pt = []
    for c in point:
        if isinstance(c, FieldElement):
            field = fl.common_field(field, c.field)
    f = f.to_field(field)
    pt = [field.coerce(c) for c in point]
    i = next((k for k in (0, 1, 2) if pt[k]), None)
    if i is None:
        raise GermError("zero projective point")
    j, k = [t for t in (0, 1, 2) if t != i]
    names = f.vars
    affine_vars = (names[j], names[k])
    scale = 1 / pt[i]
    a, b = pt[j] * scale, pt[k] * scale
    chart = f.substitute({names[i]: MultiPoly.const(names, 1, field)})
    chart2 = MultiPoly(affine_vars,
                       {(e[j], e[k]): c for e, c in chart.terms.items()},
                       field)
    germ = CurveGerm(chart2, (a, b))
    m, cone, is_power, L = multiplicity_and_cone(germ)
    if not is_power:
        raise GermError("point has a non-unique tangent line")
    cu = L.terms.get((1, 0), field.zero())
    cv = L.terms.get((0, 1), field.zero())
    # affine line cu*(x_j - a*x_i) + cv*(x_k - b*x_i) = 0, homogenized
    coeffs = [field.zero()] * 3
    coeffs[j] = cu
    coeffs[k] = cv
    coeffs[i] = -(cu * a + cv * b)
    return tuple(coeffs)


def _det3(rows):
    (a, b, c), (d, e, f_), (g, h, i) = rows
    return a * (e * i - f_ * h) - b * (d * i - f_ * g) + c * (d * h - e * g)


def lines_concurrent(lines) -> bool:
    if len(lines) != 3:
        raise GermError("concurrency test needs exactly 3 lines")
    return not _det3([tuple(r) for r in lines])


# ---------------------------------------------------------------------------
# weighted Bezout
# ---------------------------------------------------------------------------

def weighted_bezout(d1: int, d2: int, weights: Sequence[int]) -> Fraction:
    """Intersection number d1*d2/(p*q*r) in the weighted projective plane."""
    if d1 < 0 or d2 < 0:
        raise GermError("degrees must be nonnegative")
    p, q, r = weights
    if gcd(p, q) != 1 or gcd(p, r) != 1 or gcd(q, r) != 1:
        raise GermError("weights must be pairwise coprime")
    return Fraction(d1 * d2, p * q * r)


# ---------------------------------------------------------------------------
# projective smoothness certificates
# ---------------------------------------------------------------------------

def certify_smooth_projective(f: MultiPoly, max_attempts: int = 4):
    """Whether a homogeneous plane curve is smooth, with an audit witness.

    True iff the three partial derivatives have no common projective zero
    (the curve itself then contains no such zero by the Euler relation).
    Certified chart by chart via iterated resultants; a chart whose
    eliminations degenerate triggers a recorded random linear change.
    """
    if len(f.vars) != 3:
        raise GermError("expected a polynomial in 3 variables")
    if not f.is_homogeneous():
        raise GermError("expected a homogeneous polynomial")
    import random
    rng = random.Random(20240817)
    witness = {"steps": [], "changes": []}
    g = f
    for attempt in range(max_attempts):
        verdict = _smooth_attempt(g, witness)
        if verdict is not None:
            witness["euler_note"] = (
                "common zeros of the partials lie on the curve by the "
                "Euler relation; checking the partials suffices")
            return verdict, witness
        # degenerate alignment: random linear change and retry
        M = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
        if _det3([tuple(r) for r in M]) == 0:
            continue
        witness["changes"].append(M)
        names = f.vars
        subs = {}
        for i, n in enumerate(names):
            acc = MultiPoly.zero(names, f.field)
            for jj, n2 in enumerate(names):
                acc = acc + MultiPoly.const(names, M[i][jj], f.field) * \
                    MultiPoly.var(names, n2, f.field)
            subs[n] = acc
        g = f.substitute(subs)
    raise GermError("smoothness certification inconclusive after retries")


def _smooth_attempt(f: MultiPoly, witness):
    names = f.vars
    partials = [f.derivative(n) for n in names]
    if any(p.is_zero() for p in partials):
        # a vanishing partial means f ignores that variable; the curve is a
        # cone over a binary form and is singular at the apex (degree >= 2)
        if f.degree() >= 2:
            witness["steps"].append("a partial derivative vanishes "
                                    "identically: cone point is singular")
            return False
        return True
    for i in range(3):
        chart_ok = _chart_no_common_zero(f, partials, i, witness)
        if chart_ok is None:
            return None
        if chart_ok is False:
            return False
    return True


def _chart_no_common_zero(f, partials, i, witness):
    """True if the partials have no common zero in chart x_i = 1."""
    names = f.vars
    field = f.field
    j, k = [t for t in range(3) if t != i]
    one = MultiPoly.const(names, 1, field)
    charts = []
    for p in partials:
        q = p.substitute({names[i]: one})
        charts.append(MultiPoly((names[j], names[k]),
                                {(e[j], e[k]): c for e, c in q.terms.items()},
                                field))
    a, b, c = charts
    x, y = names[j], names[k]
    label = f"chart {names[i]}=1"
    nonconst = [p for p in (a, b, c) if p.degree() > 0]
    if not nonconst:
        if any(p for p in (a, b, c)):
            witness["steps"].append(f"{label}: a partial is a nonzero "
                                    "constant; no zero in this chart")
            return True
        return None
    # choose an elimination variable present in at least two of the charts
    for elim in (x, y):
        keep = y if elim == x else x
        degs = [p.degree_in(elim) for p in (a, b, c)]
        if sum(1 for d in degs if d > 0) < 2:
            continue
        pivot_idx = min((d, t) for t, d in enumerate(degs) if d > 0)[1]
        pivot = (a, b, c)[pivot_idx]
        others = [p for t, p in enumerate((a, b, c)) if t != pivot_idx]
        res = []
        for g in others:
            if g.degree_in(elim) > 0:
                r = resultant(pivot, g, elim)
            else:
                r = g
            if r.is_zero():
                witness["steps"].append(
                    f"{label}: zero resultant eliminating {elim} "
                    "(common factor); inconclusive")
                return None
            res.append(r)
        # every common zero of the three charts makes all entries of `res`
        # vanish at its `keep` coordinate
        univs = []
        for r in res:
            try:
                univs.append(r.univariate_coeffs(keep))
            except PolyError:
                witness["steps"].append(
                    f"{label}: resultant not univariate in {keep}; "
                    "inconclusive")
                return None
        g = univs[0]
        for h in univs[1:]:
            g = fl.up_gcd(g, h)
        if fl.up_deg(g) == 0:
            witness["steps"].append(
                f"{label}: eliminated {elim}; gcd of resultants in {keep} "
                "is constant; no common zero")
            return True
        # candidate keep-coordinates: roots of g; check each exactly
        verdict = _check_candidates(charts, elim, keep, g, field, witness,
                                    label)
        if verdict is not None:
            return verdict
    witness["steps"].append(f"{label}: no usable elimination; inconclusive")
    return None


def _check_candidates(charts, elim, keep, g, field, witness, label):
    roots = fl.roots_in_field(g, field)
    rem = [field.coerce(c) for c in g]
    for r in roots:
        lin = [-r, field.one()]
        while True:
            q, rr = fl.up_divmod(rem, lin)
            if rr:
                break
            rem = q
        point_sing = _common_zero_at(charts, elim, keep, r, field)
        if point_sing:
            witness["steps"].append(
                f"{label}: common zero of the partials at {keep}={r!r}")
            return False
    if fl.up_deg(rem) == 0:
        witness["steps"].append(
            f"{label}: all candidate {keep}-values checked; none is a "
            "common zero")
        return True
    # residual candidates live in an extension; adjoin when possible
    mono = fl.up_monic(rem)
    if field.depth() < 2 and fl.up_deg(mono) <= 4:
        if isinstance(field, fl.RationalField):
            parts = _q_irreducible_parts(mono)
        elif fl.up_deg(mono) == 2:
            parts = [mono]
        else:
            parts = None
        if parts is not None:
            for part in parts:
                ext = NumberField(_fresh_ext_name(field), part, field)
                r = ext.gen()
                ext_charts = [p.to_field(ext) for p in charts]
                if _common_zero_at(ext_charts, elim, keep, r, ext):
                    witness["steps"].append(
                        f"{label}: common zero over an adjoined root of "
                        f"{part}")
                    return False
            witness["steps"].append(
                f"{label}: extension candidates checked; none is a common "
                "zero")
            return True
    witness["steps"].append(
        f"{label}: residual candidate factor beyond supported extensions; "
        "inconclusive")
    return None


def _q_irreducible_parts(mono):
    """Split a squarefree rational polynomial into irreducible factors
    (degree <= 4 each) for candidate checking; None if not possible."""
    from .multipoly import factor_bounded, MultiPoly as MP
    f = MP.from_univariate([Fraction(c) for c in mono], ("t",), "t")
    _, fac, unres = factor_bounded(f, "t", cap=4)
    if unres:
        return None
    return [p.univariate_coeffs("t") for p, _ in fac]


def _common_zero_at(charts, elim, keep, r, field):
    """Exact check: do the three chart polynomials share a zero with the
    `keep` coordinate equal to r?"""
    specialized = []
    for p in charts:
        q = p.to_field(field).substitute(
            {keep: MultiPoly.const(p.vars, field.coerce(r), field)})
        specialized.append(q)
    # now univariate in elim
    univs = []
    for q in specialized:
        univs.append(fl.up_trim(q.univariate_coeffs(elim)))
    if any(not u for u in univs):
        nonzero = [u for u in univs if u]
        if not nonzero:
            return True
        g = nonzero[0]
        for h in nonzero[1:]:
            g = fl.up_gcd(g, h)
        return fl.up_deg(g) > 0
    g = univs[0]
    for h in univs[1:]:
        g = fl.up_gcd(g, h)
    return fl.up_deg(g) > 0
