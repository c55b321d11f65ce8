import numpy as np
import pytest

from oracles import BUNDLED, id_map
from skewcodes import build_automorphism, galois_ring, identity_automorphism
from skewcodes.automorphism import fixed_subring, teichmuller_exponent
from skewcodes.errors import NotAnAutomorphism


@pytest.mark.parametrize("name", list(BUNDLED))
def test_sigma_matches_hand_written_map(name):
    build, oracle = BUNDLED[name]
    R, sigma = build()
    m = id_map(name)
    for x in oracle.elements:
        assert sigma.apply(m[x]) == m[oracle.sigma(x)]


def test_z8u_sigma():
    R, sigma = BUNDLED["z8u"][0]()
    assert sigma.order == 2
    assert sigma.residue_order == 1
    assert teichmuller_exponent(sigma) == 0
    fixed = {str(x) for x in fixed_subring(sigma)}
    # a + b u is fixed iff b is even
    expected = {R.format(R.parse(f"{a}+{b}*u").id) for a in range(8) for b in (0, 2)}
    assert fixed == expected


def test_gr42_frobenius():
    R, sigma = BUNDLED["gr42"][0]()
    assert (sigma.order, sigma.residue_order, sigma.teich_exponent) == (2, 2, 1)
    assert sorted(str(x) for x in fixed_subring(sigma)) == ["0", "1", "2", "3"]
    assert sigma(R("w")) == R("w") ** 2


def test_f3u3_sigma():
    R, sigma = BUNDLED["f3u3"][0]()
    assert (sigma.order, sigma.residue_order) == (2, 1)


def test_norms_match_definition():
    for name, (build, oracle) in BUNDLED.items():
        R, sigma = build()
        m = id_map(name)
        for i in range(6):
            table = sigma.norms(i)
            for x in oracle.elements:
                assert table[m[x]] == m[oracle.norm_product(x, i)]


def test_powers_and_inverse_power():
    R, sigma = BUNDLED["gr42"][0]()
    assert np.array_equal(sigma.power(2), np.arange(R.size))
    assert np.array_equal(sigma.power(-1), sigma.power(1))


def test_identity():
    R, _ = BUNDLED["gr42"][0]()
    ident = identity_automorphism(R)
    assert ident.is_identity and ident.order == 1 and ident.teich_exponent == 0


def test_rejects_non_automorphisms():
    R, _ = BUNDLED["z8u"][0]()
    with pytest.raises(NotAnAutomorphism):
        build_automorphism(R, u_image="2*u")
    with pytest.raises(NotAnAutomorphism):
        build_automorphism(R, omega_image="1")
    G = galois_ring(2, 2, 2, [1, 1, 1])
    with pytest.raises(NotAnAutomorphism):
        build_automorphism(G, omega_image="3")
    with pytest.raises(NotAnAutomorphism):
        build_automorphism(G, u_image="1")


def test_teichmuller_set_is_stable():
    for build, _ in BUNDLED.values():
        R, sigma = build()
        tstar = set(R.teichmuller_star.tolist())
        assert {sigma.apply(x) for x in tstar} == tstar
        U = set(R.one_plus_m.tolist())
        assert {sigma.apply(x) for x in U} == U
