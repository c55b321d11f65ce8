"""Skew polycyclic codes, the twisted shift and the maps ``phi_alpha``.

A code of length ``n`` over ``R`` is an additive subgroup of ``R^n``.  Since
``R`` itself is ``Z^N / L``, such a code is a lattice between ``L^n`` and
``Z^(nN)``; codes are kept in that form (Hermite basis) and enumerated only
when explicit codewords are needed.
"""

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import _lattice
from .chain_ring import RingElement
from .errors import (
    BudgetExceeded,
    DegreeMismatch,
    LengthMismatch,
    ModulusMismatch,
    NotAUnit,
    NotCentral,
    RingMismatch,
)
from .skew_poly import QuotientElement, SkewPolynomial, is_central, reduce_mod, substitute_alpha_x

DEFAULT_BUDGET = 2 ** 16
MAX_ENUMERATION = 2 ** 21


@dataclass(frozen=True)
class Trinomial:
    """``f(x) = x^n - (a_ell x^ell + a_0)``."""

    n: int
    ell: int
    a_ell: RingElement
    a0: RingElement

    def __post_init__(self):
        if not 1 <= self.ell <= self.n - 1:
            raise DegreeMismatch(f"need 1 <= ell <= n-1, got n={self.n}, ell={self.ell}")
        if self.a_ell.ring is not self.a0.ring:
            raise RingMismatch("coefficients belong to different rings")

    @classmethod
    def from_binomial(cls, n, b):
        return cls(n, b.ell, b.a_ell, b.a0)

    @property
    def ring(self):
        return self.a0.ring

    def vector(self):
        """Coefficient vector ``(a_0, ..., a_(n-1))`` of ``a(x)`` as ids."""
        v = [self.ring.zero] * self.n
        v[0] = self.a0.id
        v[self.ell] = self.ring.add(v[self.ell], self.a_ell.id)
        return v

    def poly(self, sigma):
        R = self.ring
        coeffs = [R.neg(c) for c in self.vector()] + [R.one]
        return SkewPolynomial._raw(sigma, coeffs)

    def __str__(self):
        return f"x^{self.n} - ({self.a_ell}*x^{self.ell} + {self.a0})"


def _word_ids(ring, c, n=None):
    ids = [x.id if isinstance(x, RingElement) else ring.element(x).id for x in c]
    if n is not None and len(ids) != n:
        raise LengthMismatch(f"expected a vector of length {n}, got {len(ids)}")
    return ids


def shift_words(words, avec, sigma):
    """Vectorised twisted shift on an ``(k, n)`` id array."""
    R = sigma.ring
    s = sigma.image[np.asarray(words)]
    out = np.zeros_like(s)
    out[:, 1:] = s[:, :-1]
    tail = R.mul_table[s[:, -1:], np.asarray(avec)[None, :]]
    return R.add_table[out, tail]


def shift(c, f, sigma):
    """``(0, sigma(c_0), ..., sigma(c_(n-2))) + sigma(c_(n-1)) * a``."""
    R = f.ring
    ids = _word_ids(R, c, f.n)
    out = shift_words(np.array([ids]), f.vector(), sigma)[0]
    return [R.at(v) for v in out]


def companion_matrix(f):
    R = f.ring
    n = f.n
    rows = [[R.at(R.one if j == i + 1 else R.zero) for j in range(n)] for i in range(n - 1)]
    rows.append([R.at(v) for v in f.vector()])
    return rows


def vector_matrix_product(v, M):
    R = M[0][0].ring
    out = []
    for j in range(len(M[0])):
        acc = R.zero
        for i, vi in enumerate(v):
            acc = R.add(acc, R.mul(vi.id, M[i][j].id))
        out.append(R.at(acc))
    return out


class Code:
    """An additive code ``C <= R^n`` held as a lattice in ``Z^(nN)``."""

    def __init__(self, ring, n, basis, modulus=None, sigma=None):
        self.ring = ring
        self.n = n
        self.basis = basis
        self.modulus = modulus
        self.sigma = sigma

    @staticmethod
    def ambient_basis(ring, n):
        N = ring.dim
        B = np.zeros((n * N, n * N), dtype=np.int64)
        for i in range(n):
            B[i * N:(i + 1) * N, i * N:(i + 1) * N] = ring.lattice
        return B

    @classmethod
    def from_rows(cls, ring, n, rows, modulus=None, sigma=None):
        gens = list(cls.ambient_basis(ring, n)) + list(rows)
        return cls(ring, n, _lattice.hnf(gens, n * ring.dim, ring.modulus), modulus, sigma)

    @classmethod
    def whole_space(cls, ring, n, modulus=None, sigma=None):
        return cls(ring, n, np.eye(n * ring.dim, dtype=np.int64), modulus, sigma)

    def to_coords(self, words):
        words = np.asarray(words, dtype=np.int64)
        return self.ring.coords[words].reshape(len(words), self.n * self.ring.dim)

    def to_words(self, coords):
        coords = np.asarray(coords, dtype=np.int64).reshape(-1, self.n, self.ring.dim)
        return self.ring.encode(self.ring.reduce(coords))

    @property
    def size(self):
        return _lattice.index(self.basis, self.ambient_basis(self.ring, self.n))

    def __len__(self):
        return self.size

    def __contains__(self, word):
        ids = _word_ids(self.ring, word, self.n)
        return _lattice.contains(self.basis, self.to_coords([ids])[0])

    def contains_words(self, words):
        red = _lattice.reduce(self.to_coords(words), self.basis)
        return ~red.any(axis=1)

    def __eq__(self, other):
        return (isinstance(other, Code) and other.ring is self.ring and other.n == self.n
                and np.array_equal(other.basis, self.basis))

    def __hash__(self):
        return hash((self.n, self.basis.tobytes()))

    def words(self, limit=MAX_ENUMERATION):
        """All codewords as an ``(|C|, n)`` id array."""
        if self.size > limit:
            raise BudgetExceeded(f"code has {self.size} words, enumeration limit is {limit}")
        reps = _lattice.coset_representatives(self.basis, self.ambient_basis(self.ring, self.n))
        return self.to_words(reps)

    def weight_distribution(self, limit=MAX_ENUMERATION):
        return weight_distribution(self, limit)

    def is_shift_invariant(self, f=None, sigma=None):
        f = f or self.modulus
        sigma = sigma or self.sigma
        rows = self.to_words(self.basis)
        return bool(self.contains_words(shift_words(rows, f.vector(), sigma)).all())

    def is_submodule(self):
        """Closed under scalar multiplication by every ``r`` in ``R``."""
        rows = self.to_words(self.basis)
        R = self.ring
        for g in R.additive_generators():
            if not self.contains_words(R.mul_table[g, rows]).all():
                return False
        return True

    def __repr__(self):
        return f"Code(n={self.n}, |C|={self.size})"


def _as_word(ring, n, g):
    """Element ids of a generator; numpy arrays are taken to hold ids already."""
    if isinstance(g, np.ndarray):
        if g.shape != (n,):
            raise LengthMismatch(f"expected a vector of length {n}")
        return [int(v) for v in g]
    if isinstance(g, QuotientElement):
        return g.vector()
    if isinstance(g, SkewPolynomial):
        if g.degree >= n:
            raise LengthMismatch(f"polynomial of degree {g.degree} does not fit length {n}")
        return list(g.coeffs) + [ring.zero] * (n - len(g.coeffs))
    return _word_ids(ring, g, n)


def submodule_closure(generators, f, sigma):
    """Smallest ``R``-submodule of ``R^n`` containing ``generators`` and closed
    under the twisted shift of ``f``.

    For central ``f`` this is the left ideal of ``R[x; sigma]/(f)`` generated
    by the corresponding polynomials.
    """
    R, n = f.ring, f.n
    gens_R = R.additive_generators()
    avec = np.array(f.vector())
    code = Code.from_rows(R, n, [], f, sigma)
    rows = list(code.basis)
    for g in generators:
        v = np.array([_as_word(R, n, g)])
        while not code.contains_words(v)[0]:
            scaled = R.mul_table[np.array(gens_R)[:, None], v[0][None, :]]
            rows.extend(code.to_coords(scaled))
            code = Code(R, n, _lattice.hnf(rows, n * R.dim, R.modulus), f, sigma)
            rows = list(code.basis)
            v = shift_words(v, avec, sigma)
    return code


def left_ideal(g, f, sigma):
    return submodule_closure([g], f, sigma)


def weight_distribution(code, limit=MAX_ENUMERATION):
    """``counts[w]`` = number of codewords of Hamming weight ``w``."""
    if isinstance(code, Code):
        words = code.words(limit)
        n, zero = code.n, code.ring.zero
    else:
        words = np.asarray(code)
        n, zero = words.shape[1], 0
    weights = (words != zero).sum(axis=1)
    return np.bincount(weights, minlength=n + 1).tolist()


def _norm_row(alpha, n, sigma):
    R = sigma.ring
    a = alpha.id if isinstance(alpha, RingElement) else int(alpha)
    if not R.is_unit_id(a):
        raise NotAUnit(f"{R.format(a)} is not a unit")
    return np.array([sigma.norms(i)[a] for i in range(n)])


def phi_alpha(g, alpha, f1, f2, sigma=None):
    """``sum g_i x^i -> sum g_i N_i(alpha) x^i``, read modulo ``f2``."""
    if f1.n != f2.n:
        raise DegreeMismatch("trinomials of different degree")
    sigma = sigma or g.value.sigma
    R = sigma.ring
    a = alpha.id if isinstance(alpha, RingElement) else int(alpha)
    if not R.is_unit_id(a):
        raise NotAUnit(f"{R.format(a)} is not a unit")
    m1, m2 = f1.poly(sigma), f2.poly(sigma)
    if g.modulus != m1:
        raise ModulusMismatch("element does not live modulo f1")
    return QuotientElement(m2, substitute_alpha_x(g.value, a))


def phi_words(words, alpha, sigma):
    words = np.asarray(words)
    return sigma.ring.mul_table[words, _norm_row(alpha, words.shape[1], sigma)[None, :]]


@dataclass
class IsometryReport:
    verdict: bool
    mode: str
    checks: dict
    witness: str = None

    def to_json(self):
        return {"verdict": self.verdict, "mode": self.mode, "checks": self.checks, "witness": self.witness}


def _require_central(f, sigma):
    c = is_central(f.poly(sigma))
    if not c:
        raise NotCentral(f"{f} is not central: {c.reason}")


def verify_isometry(alpha, f1, f2, sigma, budget=DEFAULT_BUDGET):
    """Check that ``phi_alpha`` is a weight-preserving ring isomorphism
    ``R[x;sigma]/(f1) -> R[x;sigma]/(f2)``.

    ``phi_alpha`` scales coordinate ``i`` by ``N_i(alpha)``, so additivity,
    bijectivity and weight preservation are decided exactly coordinate by
    coordinate; when ``|R|^n <= budget`` they are also confirmed over the
    whole quotient.  Multiplicativity is checked on all pairs of monomials
    ``r x^i`` (or on additive generators when that is over budget), which
    suffices because both products are bi-additive.
    """
    if f1.n != f2.n:
        raise DegreeMismatch("trinomials of different degree")
    _require_central(f1, sigma)
    _require_central(f2, sigma)
    R, n = sigma.ring, f1.n
    norms = _norm_row(alpha, n, sigma)
    checks = {}
    witness = None
    ids = np.arange(R.size)

    coord_maps = R.mul_table[:, norms]  # column i: r -> r * N_i(alpha)
    checks["additive"] = bool(all(
        (coord_maps[R.add_table, i] == R.add_table[coord_maps[:, i][:, None], coord_maps[:, i][None, :]]).all()
        for i in range(n)))
    checks["bijective"] = bool(all(len(np.unique(coord_maps[:, i])) == R.size for i in range(n)))
    zero_in = ids == R.zero
    checks["weight_preserving"] = bool(all(((coord_maps[:, i] == R.zero) == zero_in).all() for i in range(n)))

    exhaustive = R.size ** n <= budget
    if exhaustive:
        words = np.array(list(product(range(R.size), repeat=n)), dtype=np.int64)
        img = phi_words(words, alpha, sigma)
        checks["weight_preserving"] &= bool(((words != R.zero).sum(1) == (img != R.zero).sum(1)).all())
        enc = (img * (R.size ** np.arange(n))).sum(1)
        checks["bijective"] &= len(np.unique(enc)) == len(words)

    m1, m2 = f1.poly(sigma), f2.poly(sigma)
    if (R.size * n) ** 2 <= budget:
        scalars = range(R.size)
    else:
        scalars = R.additive_generators()
    monos = [SkewPolynomial._raw(sigma, [R.zero] * i + [c]) for i in range(n) for c in scalars]
    ok = True
    a = alpha.id if isinstance(alpha, RingElement) else int(alpha)
    for g in monos:
        for h in monos:
            lhs = substitute_alpha_x(reduce_mod(g * h, m1).value, a)
            lhs = reduce_mod(lhs, m2).value
            rhs = reduce_mod(substitute_alpha_x(g, a) * substitute_alpha_x(h, a), m2).value
            if lhs != rhs:
                ok = False
                witness = f"phi(g*h) != phi(g)*phi(h) for g = {g}, h = {h}"
                break
        if not ok:
            break
    checks["multiplicative"] = ok
    # phi must send f1 to zero modulo f2 for the map to be well defined
    checks["well_defined"] = reduce_mod(substitute_alpha_x(m1, a), m2).value.degree < 0
    if witness is None:
        for name, passed in checks.items():
            if not passed:
                witness = f"{name} check failed"
                break
    return IsometryReport(all(checks.values()), "exhaustive" if exhaustive else "coordinatewise", checks, witness)


def singleton_generators(ring, n, budget=DEFAULT_BUDGET):
    """Generators whose principal left ideals are examined.

    Every nonzero vector when ``|R|^n <= budget``; otherwise every nonzero
    vector with entries in ``{0, 1, gamma, ..., gamma^(e-1)}``.
    """
    if ring.size ** n <= budget:
        values = range(ring.size)
    else:
        values = [ring.zero] + ring.gamma_powers[:-1]
    for w in product(values, repeat=n):
        if any(v != ring.zero for v in w):
            yield np.array(w, dtype=np.int64)


def all_left_ideals(f, sigma, budget=2 ** 12):
    """Distinct singleton-generated left ideals (only for ``|R|^n <= budget``)."""
    R = f.ring
    if R.size ** f.n > budget:
        raise BudgetExceeded(f"|R|^n = {R.size ** f.n} exceeds {budget}")
    seen = {}
    for g in singleton_generators(R, f.n, budget):
        C = left_ideal(g, f, sigma)
        seen.setdefault(C.basis.tobytes(), C)
    return list(seen.values())


@dataclass
class IdealCorrespondence:
    ideals_checked: int
    distinct_ideals: int
    consistent: bool
    mismatches: list = field(default_factory=list)
    distributions: dict = field(default_factory=dict)


def ideal_correspondence(alpha, f1, f2, sigma, generators=None, budget=DEFAULT_BUDGET,
                         limit=MAX_ENUMERATION):
    """For each generator ``g``, compare ``phi_alpha(<g>)`` with ``<phi_alpha(g)>``.

    The image of the left ideal must be exactly the left ideal generated by
    the image, and the two must have the same weight distribution.
    """
    R, n = sigma.ring, f1.n
    norms = _norm_row(alpha, n, sigma)
    if generators is None:
        generators = singleton_generators(R, n, budget)
    seen = set()
    result = IdealCorrespondence(0, 0, True)
    for g in generators:
        g = np.array([_as_word(R, n, g)])
        result.ideals_checked += 1
        C1 = left_ideal(g[0], f1, sigma)
        key = C1.basis.tobytes()
        if key in seen:
            continue
        seen.add(key)
        C2 = left_ideal(phi_words(g, alpha, sigma)[0], f2, sigma)
        img_rows = R.mul_table[C1.to_words(C1.basis), norms[None, :]]
        image = Code.from_rows(R, n, C2.to_coords(img_rows), f2, sigma)
        wd1 = C1.weight_distribution(limit)
        wd2 = C2.weight_distribution(limit)
        if image != C2 or wd1 != wd2 or not C2.is_shift_invariant():
            result.consistent = False
            result.mismatches.append([R.format(v) for v in g[0]])
        result.distributions[key] = (C1.size, wd1)
    result.distinct_ideals = len(seen)
    return result
