"""The Schur group ``B_(ell,sigma)``, its subgroup ``H_(ell,sigma)`` and
Hamming ``(n, sigma)``-equivalence of central trinomials.
"""

from dataclasses import dataclass, field

import numpy as np

from .chain_ring import RingElement
from .errors import (
    DegreeMismatch,
    HypothesisViolated,
    InconsistencyError,
    NotAUnit,
    NotCentral,
    OutOfHypothesis,
    RingMismatch,
)
from .polycyclic_codes import Trinomial
from .skew_poly import is_central

EQUIVALENCE_SCHEMA = "skewcodes.equivalence/1"


@dataclass(frozen=True)
class Binomial:
    """``a_ell x^ell + a_0``."""

    ell: int
    a_ell: RingElement
    a0: RingElement

    def __post_init__(self):
        if self.ell < 1:
            raise DegreeMismatch(f"ell must be positive, got {self.ell}")
        if self.a_ell.ring is not self.a0.ring:
            raise RingMismatch("coefficients belong to different rings")

    @classmethod
    def of(cls, ring, ell, a_ell, a0):
        return cls(ell, ring.element(a_ell), ring.element(a0))

    @classmethod
    def identity(cls, ring, ell):
        return cls(ell, ring.at(ring.one), ring.at(ring.one))

    @property
    def ring(self):
        return self.a0.ring

    @property
    def key(self):
        return (self.a_ell.id, self.a0.id)

    def __mul__(self, other):
        return schur_product(self, other)

    def inverse(self):
        for c in (self.a_ell, self.a0):
            if not self.ring.is_unit_id(c.id):
                raise NotAUnit(f"{c} is not a unit")
        return Binomial(self.ell, self.a_ell.inverse(), self.a0.inverse())

    def trinomial(self, n):
        return Trinomial(n, self.ell, self.a_ell, self.a0)

    def __str__(self):
        x = "x" if self.ell == 1 else f"x^{self.ell}"
        lead = x if self.a_ell.id == self.ring.one else f"{_paren(self.a_ell)}*{x}"
        return f"{lead} + {_paren(self.a0)}"

    def to_list(self):
        return [str(self.a_ell), str(self.a0)]


def _paren(c):
    s = str(c)
    return f"({s})" if " " in s else s


def schur_product(a, b):
    """Componentwise product ``a_ell b_ell x^ell + a_0 b_0``."""
    if a.ell != b.ell:
        raise DegreeMismatch(f"binomials of degrees {a.ell} and {b.ell}")
    if a.ring is not b.ring:
        raise RingMismatch("binomials over different rings")
    return Binomial(a.ell, a.a_ell * b.a_ell, a.a0 * b.a0)


def in_B(a, sigma):
    """Both coefficients are sigma-fixed units."""
    R = sigma.ring
    return all(R.is_unit_id(c.id) and sigma.apply(c.id) == c.id for c in (a.a_ell, a.a0))


def _theta_arrays(n, ell, sigma, alphas):
    a_ell = sigma.norms(n - ell)[sigma.power(ell)[alphas]]
    a0 = sigma.norms(n)[alphas]
    return a_ell, a0


def theta(alpha, n, ell, sigma):
    """``N_(n-ell)(sigma^ell(alpha)) x^ell + N_n(alpha)``."""
    R = sigma.ring
    a = R.element(alpha) if not isinstance(alpha, RingElement) else alpha
    if not R.is_unit_id(a.id):
        raise NotAUnit(f"{a} is not a unit")
    if not 1 <= ell <= n - 1:
        raise DegreeMismatch(f"need 1 <= ell <= n-1, got n={n}, ell={ell}")
    a_ell, a0 = _theta_arrays(n, ell, sigma, np.array([a.id]))
    return Binomial(ell, R.at(a_ell[0]), R.at(a0[0]))


def H_pairs(n, ell, sigma):
    """The image of ``theta`` as a sorted list of ``(a_ell, a_0)`` id pairs."""
    a_ell, a0 = _theta_arrays(n, ell, sigma, sigma.ring.units)
    return sorted(set(zip(a_ell.tolist(), a0.tolist())))


def H_set(n, ell, sigma):
    R = sigma.ring
    return [Binomial(ell, R.at(x), R.at(y)) for x, y in H_pairs(n, ell, sigma)]


def B_pairs(ell, sigma):
    """All of ``B_(ell,sigma)`` as sorted id pairs."""
    fu = sorted(int(v) for v in sigma.fixed_units())
    return [(x, y) for x in fu for y in fu]


@dataclass
class EquivalenceReport:
    verdict: bool
    alpha: RingElement = None
    conditions: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "schema": EQUIVALENCE_SCHEMA,
            "verdict": self.verdict,
            "alpha": None if self.alpha is None else str(self.alpha),
            "conditions": self.conditions,
        }


def _check_pair(a, b, n, sigma):
    if a.ell != b.ell:
        raise DegreeMismatch(f"binomials of degrees {a.ell} and {b.ell}")
    if a.ring is not sigma.ring or b.ring is not sigma.ring:
        raise RingMismatch("binomials and sigma live over different rings")
    for name, c in (("a", a), ("b", b)):
        if not in_B(c, sigma):
            raise OutOfHypothesis(f"{name}(x) = {c} is not in B_(ell,sigma)")
        cen = is_central(c.trinomial(n).poly(sigma))
        if not cen:
            raise NotCentral(f"x^{n} - ({c}) is not central: {cen.reason}")


def equivalent(a, b, n, sigma):
    """Decide ``x^n - a(x) ~ x^n - b(x)`` by searching all units for
    ``a_0 = b_0 N_n(alpha)`` and ``a_ell = b_ell N_(n-ell)(sigma^ell(alpha))``.

    The membership ``a * b^(-1) in H`` (reported as ``c4``) and the Schur
    form ``b * theta(alpha) = a`` (``c3``) are evaluated independently of
    the norm search (``c2``); any disagreement raises ``InconsistencyError``.
    The witness is the unit of smallest id.
    """
    _check_pair(a, b, n, sigma)
    R = sigma.ring
    units = R.units
    t_ell, t0 = _theta_arrays(n, a.ell, sigma, units)
    mul = R.mul_table
    hits = (mul[b.a0.id, t0] == a.a0.id) & (mul[b.a_ell.id, t_ell] == a.a_ell.id)
    c2 = bool(hits.any())
    alpha = R.at(int(units[hits.argmax()])) if c2 else None

    c3 = False
    if alpha is not None:
        c3 = schur_product(b, theta(alpha, n, a.ell, sigma)) == a
    q = schur_product(a, b.inverse())
    c4 = q.key in set(zip(t_ell.tolist(), t0.tolist()))
    if not c2 == c4 or (c2 and not c3):
        raise InconsistencyError(
            f"norm search gives {c2}, Schur form gives {c3}, H membership gives {c4}")
    conditions = {
        "c2": {"evaluated": True, "holds": c2},
        "c3": {"evaluated": c2, "holds": c3},
        "c4": {"evaluated": True, "holds": c4, "quotient": q.to_list()},
    }
    if c2:
        i = int(hits.argmax())
        conditions["c2"]["norms"] = [R.format(int(t_ell[i])), R.format(int(t0[i]))]
    return EquivalenceReport(c2, alpha, conditions)


def _require_hypotheses(n, ell, sigma):
    mu = sigma.order
    if n % mu or ell % mu:
        raise HypothesisViolated(f"need n = ell = 0 mod {mu}, got n={n}, ell={ell}")


def equivalence_classes(n, ell, sigma):
    """Partition ``B_(ell,sigma)`` into cosets of ``H_(ell,sigma)``.

    Under ``n = ell = 0 (mod mu)`` every element of ``B`` gives a central
    trinomial.  Classes are listed in order of their smallest member, and
    each class is sorted by id pair; the first class is ``H`` itself.
    """
    _require_hypotheses(n, ell, sigma)
    R = sigma.ring
    mul = R.mul_table
    H = H_pairs(n, ell, sigma)
    remaining = set(B_pairs(ell, sigma))
    if not set(H) <= remaining:
        raise InconsistencyError("H_(ell,sigma) is not contained in B_(ell,sigma)")
    classes = []
    while remaining:
        x, y = min(remaining)
        coset = sorted({(int(mul[x, h0]), int(mul[y, h1])) for h0, h1 in H})
        remaining.difference_update(coset)
        classes.append([Binomial(ell, R.at(c0), R.at(c1)) for c0, c1 in coset])
    return classes
