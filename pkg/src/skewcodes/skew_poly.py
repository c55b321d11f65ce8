"""Skew polynomials ``R[x; sigma]`` with the rule ``x * a = sigma(a) * x``."""

from dataclasses import dataclass

import numpy as np

from .chain_ring import RingElement
from .errors import (
    IdentityAutomorphism,
    ModulusMismatch,
    NonUnitLeadingCoefficient,
    NotMonic,
    RingMismatch,
)


def _ids(ring, coeffs):
    out = []
    for c in coeffs:
        if isinstance(c, RingElement):
            if c.ring is not ring:
                raise RingMismatch("coefficient belongs to a different ring")
            out.append(c.id)
        else:
            out.append(ring.element(c).id)
    while out and out[-1] == ring.zero:
        out.pop()
    return tuple(out)


class SkewPolynomial:
    """Polynomial ``sum c_i x^i`` over ``(R, sigma)``.

    ``coeffs`` holds element ids in ascending degree without trailing zeros,
    so the zero polynomial has no coefficients and degree ``-1``.  Plain
    integers and expression strings are accepted as coefficients.
    """

    __slots__ = ("sigma", "coeffs")

    def __init__(self, sigma, coeffs=()):
        self.sigma = sigma
        self.coeffs = _ids(sigma.ring, coeffs)

    @classmethod
    def _raw(cls, sigma, ids):
        self = object.__new__(cls)
        self.sigma = sigma
        zero = sigma.ring.zero
        ids = list(ids)
        while ids and ids[-1] == zero:
            ids.pop()
        self.coeffs = tuple(ids)
        return self

    @classmethod
    def monomial(cls, sigma, c, i):
        return cls(sigma, [0] * i + [c])

    @classmethod
    def x(cls, sigma):
        return cls._raw(sigma, [sigma.ring.zero, sigma.ring.one])

    @property
    def ring(self):
        return self.sigma.ring

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.ring.at(self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.zero)

    @property
    def leading(self):
        return self[self.degree]

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.ring.one

    def _check(self, other):
        if not isinstance(other, SkewPolynomial):
            if isinstance(other, (RingElement, int, str)):
                return SkewPolynomial(self.sigma, [other])
            raise TypeError(f"cannot combine a skew polynomial with {other!r}")
        if other.sigma is not self.sigma:
            raise RingMismatch("polynomials live over different (R, sigma)")
        return other

    def __add__(self, other):
        other = self._check(other)
        R = self.ring
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        a = a + (R.zero,) * (n - len(a))
        b = b + (R.zero,) * (n - len(b))
        return SkewPolynomial._raw(self.sigma, [R.add(x, y) for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return SkewPolynomial._raw(self.sigma, [self.ring.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        return skew_mul(self, self._check(other))

    def __rmul__(self, other):
        return skew_mul(self._check(other), self)

    def __pow__(self, k):
        out = SkewPolynomial._raw(self.sigma, [self.ring.one])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, SkewPolynomial):
            return other.sigma is self.sigma and other.coeffs == self.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def weight(self):
        return sum(1 for c in self.coeffs if c != self.ring.zero)

    def __str__(self):
        R = self.ring
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == R.zero:
                continue
            cs = R.format(c)
            if " " in cs:
                cs = f"({cs})"
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(cs)
            elif c == R.one:
                terms.append(mono)
            else:
                terms.append(f"{cs}*{mono}")
        return " + ".join(terms)

    def __repr__(self):
        return f"SkewPolynomial({self})"

    def to_list(self):
        return [self.ring.format(c) for c in self.coeffs]


def skew_mul(g, h):
    """Product with ``(a x^i)(b x^j) = a sigma^i(b) x^(i+j)``."""
    if g.sigma is not h.sigma:
        raise RingMismatch("polynomials live over different (R, sigma)")
    if not g.coeffs or not h.coeffs:
        return SkewPolynomial._raw(g.sigma, [])
    R, sigma = g.ring, g.sigma
    add, mul = R.add_table, R.mul_table
    out = [R.zero] * (len(g.coeffs) + len(h.coeffs) - 1)
    for i, a in enumerate(g.coeffs):
        if a == R.zero:
            continue
        tw = sigma.power(i)
        for j, b in enumerate(h.coeffs):
            out[i + j] = add[out[i + j], mul[a, tw[b]]]
    return SkewPolynomial._raw(sigma, [int(c) for c in out])


def right_divmod(g, d):
    """``(q, rem)`` with ``g = q*d + rem`` and ``deg rem < deg d``."""
    R, sigma = g.ring, g.sigma
    if not d.coeffs:
        raise ZeroDivisionError("division by the zero polynomial")
    lead = d.coeffs[-1]
    if not R.is_unit_id(lead):
        raise NonUnitLeadingCoefficient(f"leading coefficient {R.format(lead)} is not a unit")
    m = d.degree
    rem = list(g.coeffs)
    quo = [R.zero] * max(0, len(rem) - m)
    for k in range(len(rem) - 1, m - 1, -1):
        c = rem[k]
        if c == R.zero:
            continue
        # (s x^(k-m)) * d has leading coefficient s * sigma^(k-m)(lead)
        s = R.mul(c, R.inv(sigma.apply(lead, k - m)))
        quo[k - m] = s
        tw = sigma.power(k - m)
        for j, dj in enumerate(d.coeffs):
            rem[k - m + j] = R.sub(rem[k - m + j], R.mul(s, int(tw[dj])))
    return SkewPolynomial._raw(sigma, quo), SkewPolynomial._raw(sigma, rem[:m])


def left_divmod(g, d):
    """``(q, rem)`` with ``g = d*q + rem`` and ``deg rem < deg d``."""
    R, sigma = g.ring, g.sigma
    if not d.coeffs:
        raise ZeroDivisionError("division by the zero polynomial")
    lead = d.coeffs[-1]
    if not R.is_unit_id(lead):
        raise NonUnitLeadingCoefficient(f"leading coefficient {R.format(lead)} is not a unit")
    m = d.degree
    inv_lead = R.inv(lead)
    rem = list(g.coeffs)
    quo = [R.zero] * max(0, len(rem) - m)
    for k in range(len(rem) - 1, m - 1, -1):
        c = rem[k]
        if c == R.zero:
            continue
        # d * (s x^(k-m)) has leading coefficient lead * sigma^m(s)
        s = sigma.apply(R.mul(inv_lead, c), -m)
        quo[k - m] = s
        for j, dj in enumerate(d.coeffs):
            rem[k - m + j] = R.sub(rem[k - m + j], R.mul(dj, sigma.apply(s, j)))
    return SkewPolynomial._raw(sigma, quo), SkewPolynomial._raw(sigma, rem[:m])


def sigma_norm(sigma, beta, i):
    """``N_i(beta) = sigma^(i-1)(beta) ... sigma(beta) beta``."""
    b = beta.id if isinstance(beta, RingElement) else int(beta)
    return sigma.ring.at(sigma.norms(i)[b])


@dataclass(frozen=True)
class Centrality:
    """Outcome of the centrality test; truthy iff the polynomial is central."""

    central: bool
    failed_condition: int = None
    reason: str = ""

    def __bool__(self):
        return self.central


def is_central(f):
    """Decide whether monic ``f = x^n - sum a_i x^i`` lies in the centre.

    The three conditions are checked in order and the first failure is
    reported: every ``a_i`` is sigma-fixed; ``a_i (r - sigma^i(r)) = 0`` for
    all ``r`` in ``R``; ``sigma^n`` is the identity.
    """
    if not f.is_monic():
        raise NotMonic(f"{f} is not monic")
    R, sigma = f.ring, f.sigma
    n = f.degree
    a = [R.neg(c) for c in f.coeffs[:n]]
    for i, ai in enumerate(a):
        if sigma.apply(ai) != ai:
            return Centrality(False, 1, f"coefficient a_{i} = {R.format(ai)} is not fixed by sigma")
    for i, ai in enumerate(a):
        if ai == R.zero:
            continue
        diff = R.add_table[np.arange(R.size), R.neg_table[sigma.power(i)]]
        bad = R.mul_table[ai, diff] != R.zero
        if bad.any():
            r = int(bad.argmax())
            return Centrality(False, 2, f"a_{i}*(r - sigma^{i}(r)) != 0 at r = {R.format(r)}")
    if n % sigma.order:
        return Centrality(False, 3, f"sigma^{n} is not the identity (order {sigma.order})")
    return Centrality(True)


def in_A_sigma(coeffs, sigma):
    """Membership of a coefficient vector in ``A_sigma``.

    Entries must be sigma-fixed and vanish off the multiples of the order of
    ``sigma``.  Undefined for the identity automorphism.
    """
    if sigma.is_identity:
        raise IdentityAutomorphism("A_sigma is only defined for sigma of order > 1")
    R = sigma.ring
    ids = [c.id if isinstance(c, RingElement) else R.element(c).id for c in coeffs]
    for i, c in enumerate(ids):
        if sigma.apply(c) != c:
            return False
        if i % sigma.order and c != R.zero:
            return False
    return True


@dataclass(frozen=True)
class QuotientElement:
    """A right remainder modulo the monic polynomial ``modulus``."""

    modulus: SkewPolynomial
    value: SkewPolynomial

    def __mul__(self, other):
        return quotient_mul(self, other)

    def __add__(self, other):
        _same_modulus(self, other)
        return QuotientElement(self.modulus, self.value + other.value)

    def __sub__(self, other):
        _same_modulus(self, other)
        return QuotientElement(self.modulus, self.value - other.value)

    def weight(self):
        return self.value.weight()

    def vector(self):
        n = self.modulus.degree
        return list(self.value.coeffs) + [self.value.ring.zero] * (n - len(self.value.coeffs))

    def __str__(self):
        return str(self.value)


def _same_modulus(a, b):
    if a.modulus != b.modulus:
        raise ModulusMismatch("quotient elements have different moduli")


def reduce_mod(g, f):
    if not f.is_monic():
        raise NotMonic(f"{f} is not monic")
    return QuotientElement(f, right_divmod(g, f)[1])


def quotient_mul(a, b):
    """``rem_r(a*b, f)``; associative whenever ``f`` is central."""
    _same_modulus(a, b)
    return reduce_mod(a.value * b.value, a.modulus)


def associator(g, h, k, f):
    """``(g.h).k - g.(h.k)`` in the right-remainder space of ``f``."""
    g, h, k = (reduce_mod(p, f) for p in (g, h, k))
    return ((g * h) * k - g * (h * k)).value


def right_root_test(h, beta):
    """``x - beta`` right-divides ``h`` iff ``sum a_i N_i(beta) = 0``."""
    R, sigma = h.ring, h.sigma
    b = beta.id if isinstance(beta, RingElement) else int(beta)
    acc = R.zero
    for i, a in enumerate(h.coeffs):
        acc = R.add(acc, R.mul(a, int(sigma.norms(i)[b])))
    return acc == R.zero


def substitute_alpha_x(g, alpha):
    """``g(alpha x) = sum g_i N_i(alpha) x^i``."""
    sigma = g.sigma
    a = alpha.id if isinstance(alpha, RingElement) else int(alpha)
    R = g.ring
    return SkewPolynomial._raw(sigma, [R.mul(c, int(sigma.norms(i)[a])) for i, c in enumerate(g.coeffs)])
