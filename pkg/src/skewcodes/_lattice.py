"""Integer lattices of full rank that contain ``modulus * Z^dim``.

Both the additive group of a ring and every code inside ``R^n`` are handled
as ``Z^dim / L`` for such a lattice ``L``.  Bases are kept in upper
triangular Hermite normal form (row ``i`` has its positive pivot in column
``i``), which gives canonical representatives coordinate by coordinate.
"""

import numpy as np


def _xgcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf(rows, dim, modulus):
    """Hermite basis of the lattice spanned by ``rows`` and ``modulus * Z^dim``.

    Returns a ``(dim, dim)`` int64 array.  All arithmetic is done modulo
    ``modulus`` off the pivots, which is legitimate because every
    ``modulus * e_k`` lies in the lattice.
    """
    work = [[int(v) % modulus for v in row] for row in rows]
    work = [row for row in work if any(row)]
    basis = []
    for col in range(dim):
        pivot = [0] * dim
        pivot[col] = modulus
        rest = []
        for row in work:
            b = row[col]
            if b == 0:
                rest.append(row)
                continue
            a = pivot[col]
            g, x, y = _xgcd(a, b)
            new = [(x * pv + y * rv) for pv, rv in zip(pivot, row)]
            other = [((b // g) * pv - (a // g) * rv) % modulus for pv, rv in zip(pivot, row)]
            new = [v % modulus if k != col else v for k, v in enumerate(new)]
            pivot = new
            if any(other):
                rest.append(other)
        if pivot[col] < 0:
            pivot = [-v for v in pivot]
        pivot = [v % modulus if k != col else v for k, v in enumerate(pivot)]
        basis.append(pivot)
        work = rest
    # make entries above each pivot canonical
    for i in range(dim):
        for j in range(i):
            q = basis[j][i] // basis[i][i]
            if q:
                basis[j] = [vj - q * vi for vj, vi in zip(basis[j], basis[i])]
    return np.array(basis, dtype=np.int64)


def reduce(vectors, basis):
    """Canonical representatives of ``vectors`` (shape ``(..., dim)``) mod the lattice."""
    v = np.array(vectors, dtype=np.int64, copy=True)
    for i in range(basis.shape[0]):
        q = v[..., i] // basis[i, i]
        v -= q[..., None] * basis[i]
    return v


def contains(basis, vector):
    return not reduce(vector, basis).any()


def index(outer, inner):
    """``[outer : inner]`` for nested lattices ``inner <= outer``."""
    return int(np.prod(np.diag(inner).astype(object)) // np.prod(np.diag(outer).astype(object)))


def coset_representatives(outer, inner):
    """All vectors of ``outer`` reduced modulo ``inner`` (one per coset).

    For nested Hermite bases the combinations ``sum c_i outer_i`` with
    ``0 <= c_i < inner_ii / outer_ii`` hit every coset exactly once.
    """
    dim = outer.shape[0]
    reps = np.zeros((1, dim), dtype=np.int64)
    for i in range(dim):
        k = int(inner[i, i] // outer[i, i])
        if k == 1:
            continue
        steps = np.arange(k, dtype=np.int64)[:, None] * outer[i][None, :]
        reps = (reps[:, None, :] + steps[None, :, :]).reshape(-1, dim)
    return reduce(reps, inner)
