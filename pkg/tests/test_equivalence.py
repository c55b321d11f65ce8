from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import f3u3, gr42, z8u
from skewcodes.equivalence import (
    B_pairs,
    Binomial,
    H_set,
    equivalence_classes,
    equivalent,
    in_B,
    schur_product,
    theta,
)
from skewcodes.errors import (
    DegreeMismatch,
    HypothesisViolated,
    NotAUnit,
    NotCentral,
    OutOfHypothesis,
)


def B(R, a_ell, a0, ell=2):
    return Binomial.of(R, ell, a_ell, a0)


def test_schur_product_examples():
    R, _ = z8u()
    a = B(R, 7, 1)
    e = Binomial.identity(R, 2)
    assert a * e == a
    assert schur_product(a, a) == B(R, 1, 1)
    assert a * a.inverse() == e
    with pytest.raises(DegreeMismatch):
        schur_product(a, B(R, 1, 1, ell=1))
    with pytest.raises(NotAUnit):
        B(R, "u", 1).inverse()


def test_B_group_axioms_exhaustive():
    R, sigma = z8u()
    elems = [Binomial(2, R.at(x), R.at(y)) for x, y in B_pairs(2, sigma)]
    assert len(elems) == 64
    keys = {b.key for b in elems}
    e = Binomial.identity(R, 2)
    for a in elems:
        assert (a * e) == a and (a * a.inverse()) == e
        assert a.inverse().key in keys
        for b in elems:
            assert (a * b).key in keys
            assert a * b == b * a


def test_in_B():
    R, sigma = z8u()
    assert in_B(Binomial.identity(R, 2), sigma)
    assert in_B(B(R, 7, 1), sigma)
    assert not in_B(B(R, "1+u", 1), sigma)
    assert not in_B(B(R, 2, 1), sigma)
    G, frob = gr42()
    assert not in_B(B(G, "w", 1), frob)


def test_theta_examples():
    R, sigma = z8u()
    assert theta(R(1), 4, 2, sigma) == Binomial.identity(R, 2)
    assert theta(R("1+u"), 4, 2, sigma) == B(R, 7, 1)
    G, frob = gr42()
    t = theta(G("w"), 3, 2, frob)
    assert t == B(G, "w", "w") and not in_B(t, frob)
    with pytest.raises(NotAUnit):
        theta(R("u"), 4, 2, sigma)


@pytest.mark.parametrize("build,n,ell", [(z8u, 4, 2), (gr42, 4, 2), (f3u3, 4, 2), (z8u, 6, 4)])
def test_theta_is_a_homomorphism(build, n, ell):
    R, sigma = build()
    units = R.units.tolist()
    for a, b in product(units, repeat=2):
        lhs = theta(R.at(R.mul(a, b)), n, ell, sigma)
        assert lhs == theta(R.at(a), n, ell, sigma) * theta(R.at(b), n, ell, sigma)


def test_H_set_examples():
    R, sigma = z8u()
    assert [str(h) for h in H_set(4, 2, sigma)] == ["x^2 + 1", "7*x^2 + 1"]
    G, frob = gr42()
    assert any(not in_B(h, frob) for h in H_set(3, 2, frob))


def test_H_set_identity_sigma_collapses():
    from skewcodes import identity_automorphism
    R, _ = z8u()
    ident = identity_automorphism(R)
    # every unit of Z_8[u] satisfies alpha^8 = 1, so n = 16, ell = 8 gives only the identity
    assert [h.key for h in H_set(16, 8, ident)] == [(R.one, R.one)]


def test_equivalent_examples():
    R, sigma = z8u()
    rep = equivalent(B(R, 7, 1), B(R, 1, 1), 4, sigma)
    assert rep.verdict and rep.alpha == R("1+u")
    assert rep.conditions["c2"]["norms"] == ["7", "1"]
    assert rep.to_json()["alpha"] == "1 + u"
    same = equivalent(B(R, 3, 5), B(R, 3, 5), 4, sigma)
    assert same.verdict and same.alpha == R(1)
    rep = equivalent(B(R, 3, 1), B(R, 1, 1), 4, sigma)
    assert not rep.verdict and rep.alpha is None


def test_equivalent_refuses_outside_hypotheses():
    R, sigma = z8u()
    with pytest.raises(OutOfHypothesis):
        equivalent(B(R, "1+u", 1), B(R, 1, 1), 4, sigma)
    with pytest.raises(NotCentral):
        equivalent(B(R, 1, 1, ell=1), B(R, 1, 1, ell=1), 3, sigma)
    with pytest.raises(DegreeMismatch):
        equivalent(B(R, 1, 1, ell=1), B(R, 1, 1), 4, sigma)


def test_equivalence_classes_z8u():
    R, sigma = z8u()
    classes = equivalence_classes(4, 2, sigma)
    assert len(classes) == 32
    assert all(len(c) == 2 for c in classes)
    assert [h.key for h in classes[0]] == [h.key for h in H_set(4, 2, sigma)]
    members = [b.key for c in classes for b in c]
    assert sorted(members) == sorted(B_pairs(2, sigma))


def test_classes_agree_with_pairwise_decisions():
    R, sigma = f3u3()
    classes = equivalence_classes(4, 2, sigma)
    label = {b.key: i for i, c in enumerate(classes) for b in c}
    elems = [Binomial(2, R.at(x), R.at(y)) for x, y in B_pairs(2, sigma)]
    for a in elems:
        for b in elems:
            assert equivalent(a, b, 4, sigma).verdict == (label[a.key] == label[b.key])


def test_classes_need_hypotheses():
    R, sigma = z8u()
    with pytest.raises(HypothesisViolated):
        equivalence_classes(3, 2, sigma)
    with pytest.raises(HypothesisViolated):
        equivalence_classes(4, 1, sigma)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_witness_satisfies_schur_form(data):
    R, sigma = gr42()
    pairs = B_pairs(2, sigma)
    x = data.draw(st.sampled_from(pairs))
    y = data.draw(st.sampled_from(pairs))
    a, b = Binomial(2, R.at(x[0]), R.at(x[1])), Binomial(2, R.at(y[0]), R.at(y[1]))
    rep = equivalent(a, b, 4, sigma)
    if rep.verdict:
        assert b * theta(rep.alpha, 4, 2, sigma) == a
        back = equivalent(b, a, 4, sigma)
        assert back.verdict
        assert a * theta(rep.alpha.inverse(), 4, 2, sigma) == b
