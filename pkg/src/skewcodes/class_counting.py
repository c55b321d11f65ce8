"""Counting ``|ker theta|`` and ``|H_(ell,sigma)|`` through the Teichmuller
gcd formula and a cyclic decomposition of ``U = 1 + gamma R``, each paired
with a brute-force count over all units.
"""

from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import HypothesisViolated, InconsistencyError
from .equivalence import H_pairs

COUNT_SCHEMA = "skewcodes.count/1"


@dataclass
class AbelianDecomposition:
    """``U = <u_1> x ... x <u_J>`` with ``u_i`` of order ``p^(k_i)``."""

    ring: object
    generators: list
    orders: list

    @property
    def exponents(self):
        out = []
        for o in self.orders:
            k = 0
            while o > 1:
                o //= self.ring.p
                k += 1
            out.append(k)
        return out

    def expand(self, exps):
        R = self.ring
        acc = R.one
        for g, m in zip(self.generators, exps):
            acc = R.mul(acc, R.pow(g, m))
        return acc

    def expand_all(self):
        """Ids of ``prod u_i^(m_i)`` for every exponent tuple, in lexicographic order."""
        R = self.ring
        vals = np.array([R.one], dtype=np.int64)
        for g, o in zip(self.generators, self.orders):
            pw = _power_list(R, g, o)
            vals = R.mul_table[vals[:, None], pw[None, :]].reshape(-1)
        return vals

    def is_bijective(self):
        vals = self.expand_all()
        target = set(int(v) for v in self.ring.one_plus_m)
        return len(vals) == len(target) and set(vals.tolist()) == target

    def to_json(self):
        R = self.ring
        return {"generators": [R.format(g) for g in self.generators], "orders": list(self.orders)}


def _power_list(R, g, k):
    out = [R.one]
    for _ in range(k - 1):
        out.append(R.mul(out[-1], g))
    return np.array(out, dtype=np.int64)


def _generated(R, gens):
    """Subgroup of the unit group generated by ``gens`` (as a set of ids)."""
    H = {R.one}
    for g in gens:
        new = set(H)
        cur = g
        while cur not in H:
            new |= {R.mul(h, cur) for h in H}
            cur = R.mul(cur, g)
        H = new
    return H


def _order_mod(R, x, H):
    """Order of ``x`` modulo the subgroup ``H`` (a power of ``p``)."""
    o, cur = 1, x
    while cur not in H:
        cur = R.pow(cur, R.p)
        o *= R.p
    return o


def decompose_U(ring):
    """Cyclic decomposition of ``U`` by maximal-order extraction.

    At each step the coset of maximal order ``p^k`` in ``U / <u_1..u_j>``
    (smallest id on ties) is chosen and searched for a representative ``y``
    with ``y^(p^k) = 1``; such a lift exists because every earlier factor
    had maximal order.  The result is checked by full expansion.
    """
    R = ring
    U = sorted(int(v) for v in R.one_plus_m)
    gens, orders = [], []
    H = {R.one}
    while len(H) < len(U):
        best, best_o = None, 1
        for x in U:
            if x in H:
                continue
            o = _order_mod(R, x, H)
            if o > best_o:
                best, best_o = x, o
        lift = None
        for h in sorted(H):
            y = R.mul(best, h)
            if R.pow(y, best_o) == R.one:
                lift = y
                break
        if lift is None:
            raise InconsistencyError("no lift of maximal order found")
        gens.append(lift)
        orders.append(best_o)
        H = _generated(R, gens)
    d = AbelianDecomposition(R, gens, orders)
    if not d.is_bijective():
        raise InconsistencyError("decomposition does not expand bijectively onto U")
    return d


def _geom(p, k, i):
    """``(p^(ik) - 1) / (p^k - 1)``, or ``i`` when ``p^k = 1``."""
    pk = p ** k
    return i if pk == 1 else (pk ** i - 1) // (pk - 1)


def ker_theta_T(n, ell, k, q, p):
    """``|ker theta|`` restricted to ``T*``."""
    return gcd(gcd(_geom(p, k, n - ell), _geom(p, k, n)), q - 1)


def teich_norm(xi, i, sigma):
    """``N_i(xi)`` for ``xi`` in ``T*`` as the power ``xi^((p^(ik)-1)/(p^k-1))``."""
    R = sigma.ring
    return R.pow(xi, _geom(R.p, sigma.teich_exponent, i))


def teich_norm_is_one(xi, i, sigma):
    """``N_i(xi) = 1`` decided through ``ord(xi) | gcd(exponent, q - 1)``."""
    R = sigma.ring
    return gcd(_geom(R.p, sigma.teich_exponent, i), R.q - 1) % _mult_order(R, xi) == 0


def _mult_order(R, x):
    o, cur = 1, x
    while cur != R.one:
        cur = R.mul(cur, x)
        o += 1
    return o


def _require_hypotheses(n, ell, sigma):
    mu = sigma.order
    if n % mu or ell % mu:
        raise HypothesisViolated(f"need n = ell = 0 mod {mu}, got n={n}, ell={ell}")


def ker_theta_U(decomp, n, ell, sigma):
    """Number of exponent tuples with ``prod a_i^(m_i) = 1 = prod b_i^(m_i)``,
    where ``a_i = N_(n-ell)(u_i)`` and ``b_i = N_n(u_i)``."""
    _require_hypotheses(n, ell, sigma)
    R = decomp.ring
    A = np.array([R.one], dtype=np.int64)
    B = np.array([R.one], dtype=np.int64)
    for u, o in zip(decomp.generators, decomp.orders):
        pa = _power_list(R, int(sigma.norms(n - ell)[u]), o)
        pb = _power_list(R, int(sigma.norms(n)[u]), o)
        A = R.mul_table[A[:, None], pa[None, :]].reshape(-1)
        B = R.mul_table[B[:, None], pb[None, :]].reshape(-1)
    return int(((A == R.one) & (B == R.one)).sum())


def _kernel_mask(n, ell, sigma, alphas):
    R = sigma.ring
    a = sigma.norms(n - ell)[sigma.power(ell)[alphas]]
    b = sigma.norms(n)[alphas]
    return (a == R.one) & (b == R.one)


def ker_theta_brute(n, ell, sigma):
    """Direct count of units with both defining norms equal to 1."""
    return int(_kernel_mask(n, ell, sigma, sigma.ring.units).sum())


def ker_theta_T_brute(n, ell, sigma):
    return int(_kernel_mask(n, ell, sigma, np.asarray(sigma.ring.teichmuller_star)).sum())


def image_size(n, ell, sigma):
    """Raw size of ``{theta(alpha)}``; meaningful for any ``n, ell``."""
    return len(H_pairs(n, ell, sigma))


@dataclass
class CountReport:
    ker_T: int
    ker_U: int
    ker_total: int
    H_size: int
    brute_ker: int
    brute_H: int
    consistent: bool

    def to_json(self):
        return {
            "schema": COUNT_SCHEMA,
            "ker_T": self.ker_T,
            "ker_U": self.ker_U,
            "ker_total": self.ker_total,
            "H_size": self.H_size,
            "brute_ker": self.brute_ker,
            "brute_H": self.brute_H,
            "consistent": self.consistent,
        }


def H_size(n, ell, sigma, decomp=None):
    """``|H| = |R^x| / (|ker theta|_T*| * |ker theta|_U|)`` next to brute force."""
    _require_hypotheses(n, ell, sigma)
    R = sigma.ring
    decomp = decomp or decompose_U(R)
    kt = ker_theta_T(n, ell, sigma.teich_exponent, R.q, R.p)
    ku = ker_theta_U(decomp, n, ell, sigma)
    total = kt * ku
    h = len(R.units) // total
    bk = ker_theta_brute(n, ell, sigma)
    bh = image_size(n, ell, sigma)
    ok = total == bk and h == bh and len(R.units) % total == 0 and bh * bk == len(R.units)
    return CountReport(kt, ku, total, h, bk, bh, ok)


def class_count(n, ell, sigma):
    """Number of equivalence classes in ``B_(ell,sigma)``: ``|B| / |H|``."""
    _require_hypotheses(n, ell, sigma)
    fu = len(sigma.fixed_units())
    return fu * fu // image_size(n, ell, sigma)
