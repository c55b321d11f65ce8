from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import f3u3, gr42, z8u
from skewcodes import SkewPolynomial, identity_automorphism, is_central, sigma_norm
from skewcodes.errors import IdentityAutomorphism, ModulusMismatch, NonUnitLeadingCoefficient, NotMonic
from skewcodes.skew_poly import (
    QuotientElement,
    associator,
    in_A_sigma,
    left_divmod,
    quotient_mul,
    reduce_mod,
    right_divmod,
    right_root_test,
    skew_mul,
    substitute_alpha_x,
)


def P(sigma, coeffs):
    return SkewPolynomial(sigma, coeffs)


def brute_central(f):
    """``f`` commutes with ``x`` and with every constant."""
    sigma = f.sigma
    R = sigma.ring
    x = SkewPolynomial.x(sigma)
    if f * x != x * f:
        return False
    for r in range(R.size):
        c = SkewPolynomial._raw(sigma, [r])
        if f * c != c * f:
            return False
    return True


def test_twisted_rule():
    R, sigma = z8u()
    x = SkewPolynomial.x(sigma)
    u = P(sigma, ["u"])
    assert x * u == P(sigma, [0, "3*u"])
    g = P(sigma, ["1+u", 0, 5])
    assert g * P(sigma, [1]) == g


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 31), st.integers(0, 31), st.integers(0, 5), st.integers(0, 5))
def test_monomial_product(a, b, j, k):
    R, sigma = z8u()
    lhs = SkewPolynomial._raw(sigma, [0] * j + [a]) * SkewPolynomial._raw(sigma, [0] * k + [b])
    expected = SkewPolynomial._raw(sigma, [0] * (j + k) + [R.mul(a, sigma.apply(b, j))])
    assert lhs == expected


def polys(size, max_deg=6):
    return st.lists(st.integers(0, size - 1), min_size=0, max_size=max_deg + 1)


@settings(max_examples=100, deadline=None)
@given(polys(32), polys(32, 4), polys(32, 3))
def test_skew_mul_associative_and_distributive(a, b, c):
    R, sigma = z8u()
    g, h, k = (SkewPolynomial._raw(sigma, v) for v in (a, b, c))
    assert (g * h) * k == g * (h * k)
    assert g * (h + k) == g * h + g * k
    assert (h + k) * g == h * g + k * g
    if g.degree >= 0 and h.degree >= 0:
        assert (g * h).degree <= g.degree + h.degree


@settings(max_examples=150, deadline=None)
@given(polys(32), polys(32, 4), st.data())
def test_right_division_recomposes(gc, dc, data):
    R, sigma = z8u()
    lead = data.draw(st.sampled_from(R.units.tolist()))
    g = SkewPolynomial._raw(sigma, gc)
    d = SkewPolynomial._raw(sigma, dc + [lead])
    q, r = right_divmod(g, d)
    assert q * d + r == g
    assert r.degree < d.degree
    q2, r2 = left_divmod(g, d)
    assert d * q2 + r2 == g
    assert r2.degree < d.degree


@settings(max_examples=100, deadline=None)
@given(polys(27, 3), polys(27, 2), st.data())
def test_right_division_unique(qc, rc, data):
    R, sigma = f3u3()
    lead = data.draw(st.sampled_from(R.units.tolist()))
    d = SkewPolynomial._raw(sigma, [1, 2, lead])
    q = SkewPolynomial._raw(sigma, qc)
    r = SkewPolynomial._raw(sigma, rc[:2])
    assert right_divmod(q * d + r, d) == (q, r)


def test_division_edge_cases():
    R, sigma = z8u()
    d = P(sigma, [1, "u", 1])
    one, zero = P(sigma, [1]), P(sigma, [])
    assert right_divmod(d, d) == (one, zero)
    g = P(sigma, [3, 1])
    assert right_divmod(g, d) == (zero, g)
    with pytest.raises(NonUnitLeadingCoefficient):
        right_divmod(g, P(sigma, [1, "u"]))
    with pytest.raises(ZeroDivisionError):
        right_divmod(g, zero)


def test_sigma_norm_examples():
    R, sigma = z8u()
    a = R("1+u")
    assert sigma_norm(sigma, a, 2) == 7
    assert sigma_norm(sigma, a, 4) == 1
    assert sigma_norm(sigma, a, 0) == 1
    G, frob = gr42()
    assert sigma_norm(frob, G("w"), 3) == G("w")


def test_is_central_examples():
    R, sigma = z8u()
    assert is_central(P(sigma, [-1, 0, -7, 0, 1]))
    F, tau = f3u3()
    assert is_central(P(tau, [0, "-u^2", 1]))
    G, frob = gr42()
    res = is_central(P(frob, [0, "-w", 0, 1]))
    assert not res and res.failed_condition == 1
    assert not brute_central(P(frob, [0, "-w", 0, 1]))
    odd = is_central(P(sigma, [1, 0, 0, 1]))
    assert not odd and odd.failed_condition == 3
    with pytest.raises(NotMonic):
        is_central(P(sigma, [1, 2]))


def test_condition_two_diagnosis():
    R, sigma = z8u()
    # a_1 = 1 is fixed but 1 * (u - sigma(u)) = -2u is not zero
    res = is_central(P(sigma, [0, "-1", 1]))
    assert not res and res.failed_condition == 2


@pytest.mark.parametrize("build", [z8u, gr42, f3u3])
def test_centrality_against_commutation(build):
    R, sigma = build()
    fixed = sigma.fixed.tolist()
    for n in (2, 3, 4):
        for ell in range(1, n):
            for a_ell in fixed[:6] + [R.gamma]:
                for a0 in fixed[:4]:
                    coeffs = [R.neg(a0)] + [0] * (ell - 1) + [R.neg(a_ell)] + [0] * (n - ell - 1) + [1]
                    f = SkewPolynomial._raw(sigma, coeffs)
                    assert bool(is_central(f)) == brute_central(f)


def test_in_A_sigma():
    F, tau = f3u3()
    assert in_A_sigma([0, 0], tau)
    assert not in_A_sigma([0, "-u^2"], tau)
    assert in_A_sigma(["u^2", 0, 1, 0], tau)
    with pytest.raises(IdentityAutomorphism):
        in_A_sigma([1], identity_automorphism(F))


@pytest.mark.parametrize("build", [z8u, gr42, f3u3])
def test_A_sigma_implies_central(build):
    R, sigma = build()
    fixed = sigma.fixed.tolist()
    for a0, a1 in product(fixed, repeat=2):
        coeffs = [R.at(a0), 0, R.at(a1), 0]
        assert in_A_sigma(coeffs, sigma)
        f = SkewPolynomial._raw(sigma, [R.neg(a0), 0, R.neg(a1), 0, 1])
        assert is_central(f)


def test_central_implies_A_sigma_when_residue_order_is_full():
    R, sigma = gr42()
    assert sigma.residue_order == sigma.order
    for a0, a1 in product(range(R.size), repeat=2):
        f = SkewPolynomial._raw(sigma, [R.neg(a0), R.neg(a1), 1])
        assert bool(is_central(f)) == in_A_sigma([R.at(a0), R.at(a1)], sigma)


def test_reduce_mod_examples():
    R, sigma = z8u()
    f = P(sigma, [-1, 0, -1, 0, 1])
    x = SkewPolynomial.x(sigma)
    assert reduce_mod(x ** 4, f).value == P(sigma, [1, 0, 1])
    assert reduce_mod(x ** 5, f).value == P(sigma, [0, 1, 0, 1])
    g = P(sigma, [1, "u"])
    assert reduce_mod(g, f).value == g
    assert quotient_mul(reduce_mod(x, f), reduce_mod(x ** 3, f)).value == P(sigma, [1, 0, 1])
    with pytest.raises(NotMonic):
        reduce_mod(g, P(sigma, [1, 2]))


def test_modulus_mismatch():
    R, sigma = z8u()
    a = QuotientElement(P(sigma, [1, 0, 1]), P(sigma, [1]))
    b = QuotientElement(P(sigma, [3, 0, 1]), P(sigma, [1]))
    with pytest.raises(ModulusMismatch):
        quotient_mul(a, b)


def _spanning_monomials(sigma, n):
    R = sigma.ring
    return [SkewPolynomial._raw(sigma, [0] * i + [g]) for i in range(n) for g in R.additive_generators()]


def test_associator_vanishes_for_central_modulus():
    # the associator is additive in each argument, so spanning monomials suffice
    R, sigma = z8u()
    f = P(sigma, [-1, 0, -7, 0, 1])
    mons = _spanning_monomials(sigma, 4)
    for g, h, k in product(mons, repeat=3):
        assert associator(g, h, k, f).degree < 0
    one = P(sigma, [1])
    assert associator(one, one, one, f).degree < 0


def test_associator_nonzero_for_some_non_central_modulus():
    R, sigma = z8u()
    f = P(sigma, [-1, 0, 0, 1])
    assert not is_central(f)
    mons = _spanning_monomials(sigma, 3)
    assert any(associator(g, h, k, f).degree >= 0 for g, h, k in product(mons, repeat=3))


@settings(max_examples=150, deadline=None)
@given(polys(32, 5), st.integers(0, 31))
def test_right_root_test_agrees_with_division(hc, beta):
    R, sigma = z8u()
    h = SkewPolynomial._raw(sigma, hc)
    d = SkewPolynomial._raw(sigma, [R.neg(beta), R.one])
    assert right_root_test(h, beta) == (right_divmod(h, d)[1].degree < 0)


def test_right_root_examples():
    R, sigma = z8u()
    b = R("3+u")
    assert right_root_test(P(sigma, [-b, 1]), b)
    assert right_root_test(P(sigma, [-1, 0, 1]), R(1))


@settings(max_examples=100, deadline=None)
@given(polys(32, 4), polys(32, 4), st.sampled_from(list(range(32))))
def test_substitution_is_multiplicative(gc, hc, alpha):
    R, sigma = z8u()
    if not R.is_unit_id(alpha):
        alpha = R.one
    g, h = SkewPolynomial._raw(sigma, gc), SkewPolynomial._raw(sigma, hc)
    lhs = substitute_alpha_x(g * h, alpha)
    rhs = substitute_alpha_x(g, alpha) * substitute_alpha_x(h, alpha)
    assert lhs == rhs


def test_substitution_examples():
    R, sigma = z8u()
    g = P(sigma, [1, "u", 3])
    assert substitute_alpha_x(g, R(1)) == g
    assert substitute_alpha_x(P(sigma, [0, 0, 1]), R("1+u")) == P(sigma, [0, 0, 7])


def test_printing():
    R, sigma = z8u()
    assert str(P(sigma, [-1, 0, -7, 0, 1])) == "x^4 + x^2 + 7"
    assert str(P(sigma, ["1+u", 2])) == "2*x + (1 + u)"
    assert str(P(sigma, [])) == "0"
    assert skew_mul(P(sigma, []), P(sigma, [1])).degree == -1
