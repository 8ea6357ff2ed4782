"""Eigenvalue extraction and multiplicity bookkeeping.

Roots of the characteristic polynomial are found by simultaneous
Durand-Kerner iteration on the Fourier-sampled coefficients, then merged
into a multiplicity structure by single-linkage clustering.  The partition
counter enumerates how many such structures exist at a given dimension.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .charpoly import charpoly_coeffs
from .errors import ClusteringError, ConvergenceError
from .linalg import as_square, fro


@dataclass(frozen=True)
class EigenOptions:
    """Knobs for root finding and clustering.

    cluster_tol None means the adaptive default 1e-8 * (1 + max |root|).
    Double-precision root accuracy degrades like eps**(1/mu) with
    multiplicity, so the default is only suitable for multiplicities up to
    2; pass an explicit tolerance when expecting higher ones.
    """

    cluster_tol: float | None = None
    root_iters: int = 500
    root_tol: float = 1e-10


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Distinct eigenvalues with positive multiplicities, canonically ordered.

    Ordering is by descending real part, ties broken by descending imaginary
    part, so equal spectra always produce identical downstream matrices.
    """

    lambdas: np.ndarray
    mus: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.lambdas, dtype=complex).ravel()
        raw_mus = np.asarray(self.mus).ravel()
        if np.iscomplexobj(raw_mus) or not np.all(raw_mus == np.floor(raw_mus)):
            raise ValueError("multiplicities must be integers")
        mus = raw_mus.astype(int)
        if lam.size == 0 or lam.size != mus.size:
            raise ValueError("lambdas and mus must be nonempty and the same length")
        if np.any(mus < 1):
            raise ValueError("multiplicities must be positive")
        if not np.all(np.isfinite(lam)):
            raise ValueError("eigenvalues must be finite")
        order = np.lexsort((-lam.imag, -lam.real))
        lam = lam[order]
        mus = mus[order]
        for a in range(lam.size - 1):
            if lam[a] == lam[a + 1]:
                raise ValueError(
                    "coincident eigenvalues must be merged into one multiplicity"
                )
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "mus", mus)

    @property
    def n(self) -> int:
        """Total dimension: sum of multiplicities."""
        return int(self.mus.sum())

    @property
    def m(self) -> int:
        """Number of distinct eigenvalues."""
        return int(self.lambdas.size)

    def expand(self) -> np.ndarray:
        """Full eigenvalue multiset, each value repeated by its multiplicity."""
        return np.repeat(self.lambdas, self.mus)


def eigenvalues(A, opts: EigenOptions | None = None) -> np.ndarray:
    """All n roots of the characteristic polynomial of A (with repetition).

    Durand-Kerner iteration, started on a circle of radius 1 + max |c_k|
    at non-real angle offsets so complex-conjugate symmetry cannot trap the
    iteration.  Raises ConvergenceError (carrying per-root residuals) when
    the residual bound root_tol * (1 + ||A||_F)^n is not met.
    """
    opts = opts or EigenOptions()
    A = as_square(A)
    n = A.shape[0]
    c = charpoly_coeffs(A)
    radius = 1.0 + float(np.max(np.abs(c)))
    angles = 2.0 * np.pi * np.arange(n) / n + 0.4
    z = radius * np.exp(1j * angles)
    for _ in range(int(opts.root_iters)):
        pz = npoly.polyval(z, c)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        denom = diff.prod(axis=1)
        collided = denom == 0
        if np.any(collided):
            # nudge coincident iterates apart instead of dividing by zero
            z = z + 1e-12 * radius * (1 + np.arange(n)) * collided
            continue
        step = pz / denom
        z = z - step
        if np.max(np.abs(step)) <= 1e-14 * (1.0 + np.max(np.abs(z))):
            break
    residuals = np.abs(npoly.polyval(z, c))
    bound = opts.root_tol * (1.0 + fro(A)) ** n
    if not np.all(np.isfinite(z)) or np.max(residuals) > bound:
        raise ConvergenceError(
            f"root iteration left residual {np.max(residuals):.3e} above {bound:.3e} "
            f"after {opts.root_iters} sweeps",
            residuals,
        )
    return z


def cluster_spectrum(roots, tol: float) -> Spectrum:
    """Merge a root multiset into a Spectrum by single-linkage at distance tol.

    Each cluster contributes its mean as the representative eigenvalue and
    its size as the multiplicity.  A cluster whose diameter exceeds 10 * tol
    is an ambiguous chain and raises ClusteringError.
    """
    roots = np.asarray(roots, dtype=complex).ravel()
    if roots.size == 0:
        raise ValueError("empty root multiset")
    if tol < 0:
        raise ValueError("clustering tolerance must be nonnegative")

    parent = list(range(roots.size))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(roots.size):
        for j in range(i + 1, roots.size):
            if abs(roots[i] - roots[j]) <= tol:
                parent[find(i)] = find(j)

    groups: dict[int, list[int]] = {}
    for i in range(roots.size):
        groups.setdefault(find(i), []).append(i)

    lambdas, mus = [], []
    for members in groups.values():
        vals = roots[members]
        if len(members) > 1:
            diameter = max(
                abs(vals[a] - vals[b])
                for a in range(len(vals))
                for b in range(a + 1, len(vals))
            )
            if diameter > 10 * tol:
                raise ClusteringError(
                    f"cluster diameter {diameter:.3e} exceeds 10 x tol = {10 * tol:.3e}; "
                    "choose a tolerance matching the actual eigenvalue spacing"
                )
        lambdas.append(vals.mean())
        mus.append(len(members))
    try:
        return Spectrum(np.array(lambdas), np.array(mus))
    except ValueError as exc:
        raise ClusteringError(
            f"cluster representatives coincide ({exc}); increase the tolerance"
        ) from exc


def default_cluster_tol(roots) -> float:
    """Adaptive clustering tolerance 1e-8 * (1 + max |root|)."""
    roots = np.asarray(roots, dtype=complex)
    return 1e-8 * (1.0 + float(np.max(np.abs(roots))))


def spectrum_of(A, opts: EigenOptions | None = None) -> Spectrum:
    """Convenience composition: root extraction followed by clustering."""
    opts = opts or EigenOptions()
    roots = eigenvalues(A, opts)
    tol = opts.cluster_tol if opts.cluster_tol is not None else default_cluster_tol(roots)
    return cluster_spectrum(roots, tol)


def partition_count(n: int) -> int:
    """Number of integer partitions of n via the pentagonal-number recursion.

    Negative arguments count zero partitions and p(0) = 1.
    """
    n = int(n)
    if n < 0:
        return 0
    p = [0] * (n + 1)
    p[0] = 1
    for i in range(1, n + 1):
        total = 0
        k = 1
        while True:
            q_minus = i - k * (3 * k - 1) // 2
            q_plus = i - k * (3 * k + 1) // 2
            if q_minus < 0 and q_plus < 0:
                break
            sign = 1 if k % 2 == 1 else -1
            term = (p[q_minus] if q_minus >= 0 else 0) + (p[q_plus] if q_plus >= 0 else 0)
            total += sign * term
            k += 1
        p[i] = total
    return p[n]
