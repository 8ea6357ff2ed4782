"""Shared helpers: random matrix factories and multiplicity-structure tools.

numpy.linalg is used here and throughout the tests as an independent
oracle; the package itself never calls it.
"""

import numpy as np
import pytest

from vandermat import Spectrum


@pytest.fixture
def rng():
    return np.random.default_rng(20260822)


def crandn(rng, *shape, scale=1.0):
    """Complex standard-normal draw, scaled."""
    re = rng.standard_normal(shape)
    im = rng.standard_normal(shape)
    return scale * (re + 1j * im)


def random_nonsingular(rng, n, max_cond=1e8, scale=1.0):
    """Random complex matrix rejected until comfortably invertible."""
    while True:
        a = crandn(rng, n, n, scale=scale / np.sqrt(n))
        if n == 1 or np.linalg.cond(a) < max_cond:
            return a


def random_hermitian(rng, n, scale=1.0):
    a = crandn(rng, n, n, scale=scale)
    return (a + a.conj().T) / 2


def separated_lambdas(rng, count, sep=0.1, scale=1.5):
    """count complex values with pairwise distance at least sep."""
    while True:
        lam = crandn(rng, count, scale=scale)
        if count == 1:
            return lam
        gaps = np.abs(lam[:, None] - lam[None, :])
        np.fill_diagonal(gaps, np.inf)
        if gaps.min() >= sep:
            return lam


def annulus_lambdas(rng, count, r0=0.8, r1=1.5, sep=0.4):
    """Well-spread eigenvalues in a ring, pairwise at least sep apart.

    Distinct-node Vandermonde matrices have geometrically decaying singular
    values for generic point sets, which starves explicit inversion at
    n = 7..8; ring configurations are the well-conditioned regime.
    """
    while True:
        radius = np.sqrt(rng.random(count) * (r1 * r1 - r0 * r0) + r0 * r0)
        lam = radius * np.exp(2j * np.pi * rng.random(count))
        if count == 1:
            return lam
        gaps = np.abs(lam[:, None] - lam[None, :])
        np.fill_diagonal(gaps, np.inf)
        if gaps.min() >= sep:
            return lam


def partitions_of(n):
    """All integer partitions of n as weakly decreasing tuples."""
    if n == 0:
        return [()]
    out = []

    def rec(remaining, largest, prefix):
        if remaining == 0:
            out.append(prefix)
            return
        for first in range(min(remaining, largest), 0, -1):
            rec(remaining - first, first, prefix + (first,))

    rec(n, n, ())
    return out


def block_diagonal_jordan(spec):
    """Upper bidiagonal matrix with the blocks dictated by spec."""
    n = spec.n
    J = np.zeros((n, n), dtype=complex)
    pos = 0
    for lam, mu in zip(spec.lambdas, spec.mus):
        for i in range(int(mu)):
            J[pos + i, pos + i] = lam
            if i + 1 < mu:
                J[pos + i, pos + i + 1] = 1.0
        pos += int(mu)
    return J


def jordan_like(rng, lambdas, mus, mix=0.25):
    """Similarity transform of a Jordan-form matrix by a mild random P.

    Returns (A, spec) where spec is exact by construction.  mix keeps P
    well conditioned so A carries the intended eigenstructure to roundoff.
    """
    spec = Spectrum(np.asarray(lambdas), np.asarray(mus))
    J = block_diagonal_jordan(spec)
    n = spec.n
    P = np.eye(n) + mix * crandn(rng, n, n, scale=1.0 / np.sqrt(n))
    A = P @ J @ np.linalg.inv(P)
    return A, spec


def multiset_close(a, b, tol):
    """Match two unordered value collections greedily within tol."""
    a = list(np.asarray(a, dtype=complex).ravel())
    b = list(np.asarray(b, dtype=complex).ravel())
    if len(a) != len(b):
        return False
    for x in a:
        dists = [abs(x - y) for y in b]
        j = int(np.argmin(dists))
        if dists[j] > tol:
            return False
        b.pop(j)
    return True
