from math import gcd

import pytest

from oracles import f3u3, gr42, z8u
from skewcodes import identity_automorphism
from skewcodes.class_counting import (
    H_size,
    class_count,
    decompose_U,
    image_size,
    ker_theta_brute,
    ker_theta_T,
    ker_theta_T_brute,
    ker_theta_U,
    teich_norm,
    teich_norm_is_one,
)
from skewcodes.equivalence import H_set
from skewcodes.errors import HypothesisViolated


def element_order(R, x):
    o, cur = 1, x
    while cur != R.one:
        cur = R.mul(cur, x)
        o += 1
    return o


@pytest.mark.parametrize("build", [z8u, gr42, f3u3])
def test_decomposition_is_valid(build):
    R, _ = build()
    d = decompose_U(R)
    size = 1
    for g, o in zip(d.generators, d.orders):
        assert element_order(R, g) == o
        size *= o
    assert size == len(R.one_plus_m) == R.p ** (R.r * (R.e - 1))
    assert d.is_bijective()
    assert sorted(d.expand_all().tolist()) == sorted(R.one_plus_m.tolist())


def test_decomposition_orders():
    assert decompose_U(z8u()[0]).orders == [4, 2, 2]
    # U of F_3[u]/(u^3) has exponent 3: (1 + a u + b u^2)^3 = 1
    assert decompose_U(f3u3()[0]).orders == [3, 3]
    assert decompose_U(gr42()[0]).orders == [2, 2]
    assert decompose_U(z8u()[0]).exponents == [2, 1, 1]


def test_ker_theta_T_formula():
    assert ker_theta_T(4, 2, 0, 2, 2) == 1
    for n, ell, k in [(4, 2, 0), (6, 3, 1), (9, 4, 2)]:
        assert ker_theta_T(n, ell, k, 2, 2) == 1
    assert ker_theta_T(4, 2, 1, 4, 2) == gcd(3, 15, 3) == 3
    assert ker_theta_T(4, 2, 0, 9, 3) == gcd(4, 2, 8) == 2


@pytest.mark.parametrize("build,n,ell", [(z8u, 4, 2), (gr42, 4, 2), (f3u3, 4, 2), (gr42, 6, 2)])
def test_ker_T_matches_direct_count(build, n, ell):
    R, sigma = build()
    assert ker_theta_T(n, ell, sigma.teich_exponent, R.q, R.p) == ker_theta_T_brute(n, ell, sigma)


def test_ker_theta_U_example():
    R, sigma = z8u()
    d = decompose_U(R)
    assert ker_theta_U(d, 4, 2, sigma) == 8
    # the first generator has norm 7, the others norm 1
    assert [str(R.at(sigma.norms(2)[g])) for g in d.generators] == ["7", "1", "1"]
    ident = identity_automorphism(R)
    assert ker_theta_U(d, 8, 4, ident) == len(R.one_plus_m)


def test_ker_theta_U_needs_hypotheses():
    R, sigma = z8u()
    with pytest.raises(HypothesisViolated):
        ker_theta_U(decompose_U(R), 3, 2, sigma)


def test_brute_kernel():
    R, sigma = z8u()
    assert ker_theta_brute(4, 2, sigma) == 8
    assert ker_theta_brute(8, 4, identity_automorphism(R)) == len(R.units)
    G, frob = gr42()
    assert ker_theta_brute(4, 2, frob) == 6


@pytest.mark.parametrize("build,n,ell", [(z8u, 4, 2), (gr42, 4, 2), (f3u3, 4, 2), (z8u, 8, 2),
                                         (f3u3, 6, 4)])
def test_H_size_reports(build, n, ell):
    R, sigma = build()
    rep = H_size(n, ell, sigma)
    assert rep.consistent
    assert rep.ker_total == rep.ker_T * rep.ker_U == rep.brute_ker
    assert rep.H_size * rep.brute_ker == len(R.units)
    assert rep.H_size == len(H_set(n, ell, sigma))


def test_H_size_example_values():
    R, sigma = z8u()
    rep = H_size(4, 2, sigma)
    assert (rep.ker_T, rep.ker_U, rep.ker_total, rep.H_size) == (1, 8, 8, 2)
    assert rep.to_json()["H_size"] == 2
    G, frob = gr42()
    rep = H_size(4, 2, frob)
    assert (rep.ker_T, rep.ker_total, rep.H_size) == (3, 6, 2)


def test_full_kernel_gives_trivial_H():
    R, _ = z8u()
    rep = H_size(8, 4, identity_automorphism(R))
    assert rep.H_size == 1 and rep.consistent


def test_outside_hypotheses():
    G, frob = gr42()
    with pytest.raises(HypothesisViolated):
        H_size(3, 2, frob)
    assert image_size(3, 2, frob) == 12


def test_class_count():
    R, sigma = z8u()
    assert class_count(4, 2, sigma) == 32


@pytest.mark.parametrize("build", [z8u, gr42, f3u3])
def test_teichmuller_norm_formula(build):
    R, sigma = build()
    for xi in R.teichmuller_star.tolist():
        for i in range(9):
            n = int(sigma.norms(i)[xi])
            assert teich_norm(xi, i, sigma) == n
            assert teich_norm_is_one(xi, i, sigma) == (n == R.one)
