"""Characteristic polynomial coefficients and explicit adjugate/inverse routes.

The coefficients of det(lambda I - A) are recovered from determinant samples
at the (n+1)-st roots of unity by a discrete Fourier sum; the adjugate and
inverse then come out as short polynomials in A.  A second inverse route goes
through power sums (traces of A^q) arranged in a banded Hessenberg matrix
whose determinants are scaled elementary symmetric polynomials.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import SingularMatrixError
from .linalg import as_square, det_lu, fro, mat_pow

def singularity_threshold(A) -> float:
    """Absolute |det| floor below which explicit inversion is refused."""
    A = np.asarray(A)
    return 1e-12 * max(1.0, fro(A) ** A.shape[0])


def charpoly_coeffs(A) -> np.ndarray:
    """Monic characteristic polynomial coefficients, ascending powers.

    Returns c with det(lambda I - A) = sum_k c[k] lambda^k, c[n] = 1.
    Each coefficient is a fixed-order Fourier sum of det(w_j I - A) over the
    (n+1)-st roots of unity w_j, every determinant evaluated by pivoted LU.
    """
    A = as_square(A)
    n = A.shape[0]
    j = np.arange(n + 1)
    samples = np.exp(-2j * np.pi * j / (n + 1))
    eye = np.eye(n, dtype=complex)
    dets = np.array([det_lu(z * eye - A) for z in samples])
    fourier = np.exp(2j * np.pi * np.outer(j, j) / (n + 1))
    return fourier @ dets / (n + 1)


def adjugate_fourier(A) -> np.ndarray:
    """Adjugate as a degree n-1 polynomial in A.

    Valid for every square A, including singular ones:
    adj(A) A = det(A) I always holds.
    """
    A = as_square(A)
    n = A.shape[0]
    c = charpoly_coeffs(A)
    acc = np.zeros_like(A)
    power = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        acc += c[k] * power
        if k < n:
            power = power @ A
    return (-1) ** (n + 1) * acc


def inverse_fourier(A) -> np.ndarray:
    """Inverse via the adjugate polynomial divided by det(A)."""
    A = as_square(A)
    d = det_lu(A)
    threshold = singularity_threshold(A)
    if abs(d) < threshold:
        raise SingularMatrixError(
            f"matrix numerically singular: |det| = {abs(d):.3e} below {threshold:.3e}",
            abs(d),
        )
    return adjugate_fourier(A) / d


def power_sums(x, q: int) -> complex:
    """q-th power sum: sum of x_i**q for a vector, trace(X^q) for a matrix."""
    q = int(q)
    if q < 1:
        raise ValueError("power-sum order must be a positive integer")
    x = np.asarray(x, dtype=complex)
    if x.ndim == 2:
        return complex(np.trace(mat_pow(x, q)))
    if x.ndim != 1:
        raise ValueError("expected a vector or a square matrix")
    return complex(np.sum(x**q))


def q_matrix(p, j: int) -> np.ndarray:
    """Banded j x j matrix whose determinant is j! times the j-th elementary
    symmetric polynomial.

    ``p`` supplies power sums p[0] = p_1, ..., p[j-1] = p_j.  The matrix has
    an integer superdiagonal 1, 2, ..., j-1 and constant diagonals carrying
    p_1 on the main diagonal, p_2 below it, and so on.
    """
    j = int(j)
    if j < 0:
        raise ValueError("order must be nonnegative")
    p = np.asarray(p, dtype=complex).ravel()
    if p.size < j:
        raise ValueError(f"need {j} power sums, got {p.size}")
    Q = np.zeros((j, j), dtype=complex)
    for a in range(2, j + 1):
        Q[a - 2, a - 1] = a - 1
    for q in range(1, j + 1):
        for b in range(q, j + 1):
            Q[b - 1, b - q] += p[q - 1]
    return Q


def _q_det(p, j: int) -> complex:
    # empty matrix determinant is 1 by convention
    if j == 0:
        return 1.0 + 0.0j
    return det_lu(q_matrix(p, j))


def esp_detform(x, j: int) -> complex:
    """Elementary symmetric polynomial e_j via det of the power-sum band matrix."""
    x = np.asarray(x, dtype=complex).ravel()
    j = int(j)
    if j < 0 or j > x.size:
        raise ValueError(f"order {j} outside 0..{x.size}")
    p = [power_sums(x, q) for q in range(1, j + 1)]
    return complex(_q_det(p, j) / math.factorial(j))


def inverse_charpoly(X) -> np.ndarray:
    """Inverse as a polynomial in X with power-sum determinant coefficients.

    The coefficient of (-X)^(k-1) is det of the (m-k)-th band matrix over
    (m-k)!, with power sums taken as traces of X^q.
    """
    X = as_square(X)
    m = X.shape[0]
    d = det_lu(X)
    threshold = singularity_threshold(X)
    if abs(d) < threshold:
        raise SingularMatrixError(
            f"matrix numerically singular: |det| = {abs(d):.3e} below {threshold:.3e}",
            abs(d),
        )
    traces = []
    power = np.eye(m, dtype=complex)
    for _ in range(m):
        power = power @ X
        traces.append(complex(np.trace(power)))
    acc = np.zeros_like(X)
    neg_power = np.eye(m, dtype=complex)
    for k in range(1, m + 1):
        acc += (_q_det(traces, m - k) / math.factorial(m - k)) * neg_power
        if k < m:
            neg_power = neg_power @ (-X)
    return acc / d
