"""Finite chain rings, skew polynomial rings over them, skew polycyclic codes
and the Hamming ``(n, sigma)``-equivalence of central trinomials."""

from .automorphism import RingAutomorphism, build_automorphism, identity_automorphism
from .chain_ring import (
    ChainRing,
    RingElement,
    RingPresentation,
    build_ring,
    eisenstein_ring,
    galois_ring,
    truncated_ring,
)
from .class_counting import AbelianDecomposition, CountReport, H_size, decompose_U
from .equivalence import Binomial, EquivalenceReport, H_set, equivalent, in_B, schur_product, theta
from .polycyclic_codes import Code, Trinomial, verify_isometry
from .skew_poly import SkewPolynomial, is_central, sigma_norm

__version__ = "0.1.0"
