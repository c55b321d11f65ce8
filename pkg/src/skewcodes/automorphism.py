"""Ring automorphisms of a chain ring, given by the images of its generators."""

import numpy as np

from .chain_ring import RingElement
from .errors import NotAnAutomorphism


class RingAutomorphism:
    """A validated automorphism ``sigma`` stored as a permutation of element ids.

    Attributes
    ----------
    order : int
        The order ``mu`` of ``sigma``.
    residue_order : int
        Order of the induced automorphism of the residue field.  It divides
        ``order`` and may be strictly smaller.
    teich_exponent : int
        The ``k`` in ``{0, ..., r-1}`` with ``sigma(xi) = xi^(p^k)`` on ``T*``.
    """

    def __init__(self, ring, image):
        self.ring = ring
        image = np.asarray(image, dtype=np.int64)
        self.image = image
        self._validate()
        powers = [np.arange(ring.size)]
        while True:
            nxt = image[powers[-1]]
            if (nxt == powers[0]).all():
                break
            powers.append(nxt)
        self.powers = powers
        self.order = len(powers)
        self.fixed = np.flatnonzero(image == np.arange(ring.size))
        self.residue_order = self._residue_order()
        self.teich_exponent = self._teich_exponent()
        self._norms = {0: np.full(ring.size, ring.one, dtype=np.int64)}

    def _validate(self):
        R, s = self.ring, self.image
        if len(s) != R.size or len(np.unique(s)) != R.size:
            raise NotAnAutomorphism("map is not a bijection")
        if s[R.zero] != R.zero or s[R.one] != R.one:
            raise NotAnAutomorphism("map does not fix 0 and 1")
        if not (s[R.add_table] == R.add_table[s[:, None], s[None, :]]).all():
            raise NotAnAutomorphism("map is not additive")
        if not (s[R.mul_table] == R.mul_table[s[:, None], s[None, :]]).all():
            raise NotAnAutomorphism("map is not multiplicative")

    def _residue_order(self):
        tstar = self.ring.teichmuller_star
        k = 1
        cur = self.image[tstar]
        while not (cur == tstar).all():
            cur = self.image[cur]
            k += 1
        return k

    def _teich_exponent(self):
        R = self.ring
        tstar = R.teichmuller_star
        for k in range(R.r):
            if (R.power_map(R.p ** k)[tstar] == self.image[tstar]).all():
                return k
        raise NotAnAutomorphism("no Frobenius exponent matches sigma on T*")

    @property
    def is_identity(self):
        return self.order == 1

    def power(self, i):
        """Array of ``sigma^i`` (any integer ``i``)."""
        return self.powers[i % self.order]

    def apply(self, a, i=1):
        return int(self.powers[i % self.order][a])

    def __call__(self, a):
        if isinstance(a, RingElement):
            return RingElement(self.ring, self.apply(a.id))
        return self.apply(a)

    def norms(self, i):
        """``N_i(beta)`` for every element ``beta``, as an id array (cached)."""
        if i not in self._norms:
            prev = self.norms(i - 1)
            self._norms[i] = self.ring.mul_table[self.image[prev], np.arange(self.ring.size)]
        return self._norms[i]

    def fixed_units(self):
        return self.fixed[self.ring.unit_mask[self.fixed]]

    def __repr__(self):
        return f"RingAutomorphism(order={self.order}, |fixed|={len(self.fixed)}, k={self.teich_exponent})"


def _as_id(ring, value):
    if value is None:
        return None
    if isinstance(value, RingElement):
        return value.id
    if isinstance(value, (list, tuple)):
        # ascending coefficients of a polynomial in the ring's own generator
        gen = ring.parse("u") if ring.presentation.kind != "galois" else ring.parse("w")
        acc = ring.element(0)
        for j, c in enumerate(value):
            acc = acc + ring.element(c) * gen ** j
        return acc.id
    return ring.element(value).id


def build_automorphism(ring, u_image=None, omega_image=None, omega_exponent=None):
    """Extend generator images to the whole ring and validate exhaustively.

    ``u_image`` / ``omega_image`` accept ring elements, integers, expression
    strings or ascending coefficient lists in the generator.  ``omega_exponent``
    is shorthand for ``omega_image = w^omega_exponent``.  Missing images
    default to the identity.
    """
    if omega_exponent is not None:
        if omega_image is not None:
            raise ValueError("give omega_image or omega_exponent, not both")
        omega_image = ring.parse("w") ** int(omega_exponent)
    if omega_image is not None and ring.r == 1:
        raise NotAnAutomorphism("ring has no omega generator")
    if u_image is not None and ring.presentation.kind == "galois":
        raise NotAnAutomorphism("Galois rings have no u generator")
    w_img = _as_id(ring, omega_image)
    u_img = _as_id(ring, u_image)
    if w_img is None and ring.r > 1:
        w_img = ring.parse("w").id
    if u_img is None and ring.presentation.kind != "galois":
        u_img = ring.parse("u").id

    # image of each basis monomial w^i u^j, then extend Z-linearly
    amb = ring._amb
    basis_images = np.zeros((ring.dim, ring.dim), dtype=np.int64)
    for k in range(ring.dim):
        i, j = k % amb.r, k // amb.r
        img = ring.one
        if i:
            img = ring.mul(img, ring.pow(w_img, i))
        if j:
            img = ring.mul(img, ring.pow(u_img, j))
        basis_images[k] = ring.coords[img]
    image = ring.encode(ring.reduce(ring.coords @ basis_images))
    return RingAutomorphism(ring, image)


def identity_automorphism(ring):
    return RingAutomorphism(ring, np.arange(ring.size))


def fixed_subring(sigma):
    return [sigma.ring.at(i) for i in sigma.fixed]


def teichmuller_exponent(sigma):
    return sigma.teich_exponent
