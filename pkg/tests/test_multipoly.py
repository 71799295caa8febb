"""Tests for sparse multivariate polynomial arithmetic."""

import random
from fractions import Fraction

import pytest

from exactcurves.fields import QQ, field_create, up_gcd, up_derivative
from exactcurves.multipoly import (
    MultiPoly, PolyError, exact_div, factor_bounded, parse_poly,
    poly_from_sparse, poly_gcd_univ, poly_to_sparse, resultant,
    squarefree_decomposition, squarefree_part, sylvester_resultant,
)

XYZ = ("x", "y", "z")


def rand_poly(rng, varnames=XYZ, max_deg=3, nterms=5, coeff=9):
    terms = {}
    for _ in range(nterms):
        e = tuple(rng.randint(0, max_deg) for _ in varnames)
        terms[e] = Fraction(rng.randint(-coeff, coeff))
    return MultiPoly(varnames, terms)


def rand_poly_in_x(rng, **kw):
    # resample until x genuinely appears, so resultant suites never skip
    while True:
        p = rand_poly(rng, **kw)
        if p.degree_in("x") > 0:
            return p


# -- arithmetic --------------------------------------------------------------

def test_parse_and_expand():
    f = parse_poly("x^2 + 2*x*y + y^2 - z^2", XYZ)
    g = parse_poly("(x+y-z)*(x+y+z)", XYZ)
    assert f == g
    assert parse_poly("0", XYZ).is_zero()
    assert parse_poly("-3/4*x", XYZ) == parse_poly("(-3*x)/4", XYZ)


def test_parse_rejects_garbage():
    with pytest.raises(PolyError):
        parse_poly("x + w", XYZ)
    with pytest.raises(PolyError):
        parse_poly("x^", XYZ)
    with pytest.raises(PolyError):
        parse_poly("(x", XYZ)


def test_degree_and_homogeneity():
    f = parse_poly("x^3 + y^2*z + z^3", XYZ)
    assert f.degree() == 3
    assert f.is_homogeneous()
    assert f.degree((2, 3, 2)) == 8
    assert not f.is_homogeneous((2, 3, 2))
    # weighted-homogeneous example: x^2 + y^3 under weights (3, 2, 1)
    g = parse_poly("x^2 + y^3", XYZ)
    assert g.is_homogeneous((3, 2, 1))
    assert MultiPoly.zero(XYZ).degree() == -1


def test_derivative():
    f = parse_poly("x^3*y + 2*x*z^2 - 7", XYZ)
    assert f.derivative("x") == parse_poly("3*x^2*y + 2*z^2", XYZ)
    assert f.derivative("y") == parse_poly("x^3", XYZ)
    assert f.derivative("z") == parse_poly("4*x*z", XYZ)


def test_substitute_and_eval():
    f = parse_poly("x^2 - y", XYZ)
    g = f.substitute({"x": parse_poly("y+1", XYZ)})
    assert g == parse_poly("y^2 + y + 1", XYZ)
    v = f.eval_point({"x": Fraction(3), "y": Fraction(2), "z": Fraction(0)})
    assert v == 7


def test_substitute_into_other_variables():
    f = parse_poly("x*y", ("x", "y"))
    uv = ("u", "v")
    g = f.substitute({"x": parse_poly("u+v", uv), "y": parse_poly("u-v", uv)})
    assert g == parse_poly("u^2 - v^2", uv)


def test_homogeneous_part():
    f = parse_poly("x^2 + x*y + z + 1", XYZ)
    assert f.homogeneous_part(2) == parse_poly("x^2 + x*y", XYZ)
    assert f.homogeneous_part(1) == parse_poly("z", XYZ)
    assert f.homogeneous_part(0) == parse_poly("1", XYZ)


def test_exact_division():
    f = parse_poly("(x+y-z)*(x^2+z^2)", XYZ)
    assert exact_div(f, parse_poly("x+y-z", XYZ)) == parse_poly(
        "x^2+z^2", XYZ)
    with pytest.raises(PolyError):
        exact_div(parse_poly("x^2+1", XYZ), parse_poly("x+y", XYZ))


# -- resultants --------------------------------------------------------------

def test_resultant_known_value():
    # Res_x(x^2 - y, x^2 - 3x + y) = 4y^2 - 9y
    r = resultant(parse_poly("x^2-y", XYZ),
                  parse_poly("x^2-3*x+y", XYZ), "x")
    assert r == parse_poly("4*y^2 - 9*y", XYZ)


def test_resultant_common_root_vanishes():
    f = parse_poly("(x-y)*(x+z)", XYZ)
    g = parse_poly("(x-y)*(x-2*z)", XYZ)
    assert resultant(f, g, "x").is_zero()


@pytest.mark.parametrize("seed", range(100))
def test_resultant_matches_sylvester_oracle(seed):
    rng = random.Random(40_000 + seed)
    a = rand_poly_in_x(rng, max_deg=3, nterms=4, coeff=5)
    b = rand_poly_in_x(rng, max_deg=3, nterms=4, coeff=5)
    assert resultant(a, b, "x") == sylvester_resultant(a, b, "x")


@pytest.mark.parametrize("seed", range(100))
def test_resultant_multiplicative(seed):
    rng = random.Random(50_000 + seed)
    a = rand_poly_in_x(rng, max_deg=2, nterms=3, coeff=4)
    b = rand_poly_in_x(rng, max_deg=2, nterms=3, coeff=4)
    c = rand_poly_in_x(rng, max_deg=2, nterms=3, coeff=4)
    assert resultant(a * b, c, "x") == resultant(a, c, "x") * \
        resultant(b, c, "x")


@pytest.mark.parametrize("seed", range(100))
def test_resultant_swap_sign(seed):
    rng = random.Random(60_000 + seed)
    a = rand_poly_in_x(rng, max_deg=3, nterms=4, coeff=5)
    b = rand_poly_in_x(rng, max_deg=2, nterms=4, coeff=5)
    m, n = a.degree_in("x"), b.degree_in("x")
    lhs = resultant(a, b, "x")
    rhs = resultant(b, a, "x")
    if (m * n) % 2 == 0:
        assert lhs == rhs
    else:
        assert lhs == -rhs


def test_resultant_over_number_field():
    K = field_create([Fraction(-2), Fraction(-2), Fraction(1),
                      Fraction(-2), Fraction(1)], varname="eta")
    p = parse_poly("eta*x^2 + (eta^2-2)*y", ("x", "y"), K)
    q = parse_poly("x*y - 1", ("x", "y"), K)
    eta = K.gen()
    expect = MultiPoly(("x", "y"), {(0, 3): eta ** 2 - 2, (0, 0): eta}, K)
    assert resultant(p, q, "x") == expect
    assert resultant(p, q, "x") == sylvester_resultant(p, q, "x")


# -- gcd / squarefree --------------------------------------------------------

def test_gcd_univ():
    f = parse_poly("(x-1)*(x-2)^2", ("x",))
    g = parse_poly("(x-1)*(x-3)", ("x",))
    assert poly_gcd_univ(f, g, "x") == parse_poly("x-1", ("x",))


def test_squarefree_decomposition():
    h = parse_poly("3*x^2*(x-1)^3*(x+2)", ("x",))
    c, parts = squarefree_decomposition(h, "x")
    assert c == 3
    got = {(p.to_text(), m) for p, m in parts}
    assert got == {("x + 2", 1), ("x", 2), ("x + -1", 3)}
    # product reconstructs the input
    acc = MultiPoly.const(("x",), c)
    for p, m in parts:
        acc = acc * p ** m
    assert acc == h
    assert squarefree_part(h, "x") == parse_poly("x*(x-1)*(x+2)", ("x",))


@pytest.mark.parametrize("seed", range(100))
def test_squarefree_parts_are_squarefree(seed):
    rng = random.Random(70_000 + seed)
    coeffs = [Fraction(rng.randint(-4, 4)) for _ in range(rng.randint(2, 6))]
    f = MultiPoly.from_univariate(coeffs, ("x",), "x")
    k = rng.randint(1, 3)
    g = f ** k * parse_poly("x^2+1", ("x",))
    if g.degree_in("x") <= 0:
        pytest.skip("degenerate sample")
    _, parts = squarefree_decomposition(g, "x")
    for p, _m in parts:
        cs = p.univariate_coeffs("x")
        assert len(up_gcd(cs, up_derivative(cs))) == 1  # gcd is 1
    # multiplicity-weighted product reconstructs g up to content
    acc = MultiPoly.const(("x",), 1)
    for p, m in parts:
        acc = acc * p ** m
    lc = g.univariate_coeffs("x")[-1]
    assert acc * lc == g


def test_factor_bounded():
    f = parse_poly("(x-1)*(x^2+1)*(x^2-2)", ("x",))
    content, fac, unres = factor_bounded(f, "x", cap=2)
    assert content == 1
    assert not unres
    got = {p.to_text() for p, _ in fac}
    assert got == {"x + -1", "x^2 + 1", "x^2 + -2"}


def test_factor_bounded_reports_unresolved():
    # irreducible quartic stays unresolved at cap 2
    f = parse_poly("x^4 - 2*x^3 + x^2 - 2*x - 2", ("x",))
    _, fac, unres = factor_bounded(f, "x", cap=2)
    assert not fac
    assert len(unres) == 1
    assert unres[0][0] == f


def test_factor_bounded_cap4_accepts_quartic():
    f = parse_poly("(x^4 - 2*x^3 + x^2 - 2*x - 2)*(x-5)", ("x",))
    _, fac, unres = factor_bounded(f, "x", cap=4)
    assert not unres
    degs = sorted(p.degree_in("x") for p, _ in fac)
    assert degs == [1, 4]


# -- serialization -----------------------------------------------------------

def test_sparse_roundtrip_q():
    f = parse_poly("x^2*y - 7/3*z + 1", XYZ)
    data = poly_to_sparse(f)
    assert poly_from_sparse(data, XYZ) == f
    # canonical order: graded-lex descending
    assert data[0][0] == [2, 1, 0]


def test_sparse_roundtrip_number_field():
    K = field_create([Fraction(-2), Fraction(-2), Fraction(1),
                      Fraction(-2), Fraction(1)], varname="eta")
    p = parse_poly("eta*x^2 + (eta^2-2)*y", ("x", "y"), K)
    assert poly_from_sparse(poly_to_sparse(p), ("x", "y"), K) == p


@pytest.mark.parametrize("seed", range(30))
def test_text_roundtrip(seed):
    rng = random.Random(80_000 + seed)
    f = rand_poly(rng)
    assert parse_poly(f.to_text(), XYZ) == f
