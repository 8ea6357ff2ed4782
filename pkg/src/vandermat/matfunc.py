"""Analytic functions of a matrix from its spectrum.

A function f applied to an n x n matrix A collapses to a polynomial
sum_k b_k A^(k-1) of degree below n.  The coefficient vector b solves the
confluent Vandermonde system against the vector of derivative values
f^(beta-1)(lambda_alpha), so only eigenvalues, multiplicities, and matrix
powers are ever needed.  The matrix exponential, its special cases, and
exponential conjugation are the main consumers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .charpoly import singularity_threshold
from .eigen import Spectrum
from .errors import SingularMatrixError
from .linalg import as_square, det_lu, fro, solve_lu
from .vandermonde import (
    ConfluentVandermonde,
    build_vandermonde,
    register,
    vinv_degenerate,
    vinv_distinct,
    vinv_general,
)


class AnalyticFunction:
    """Scalar function together with its derivatives.

    Subclasses implement ``eval(order, x)`` returning the order-th
    derivative at x.  ``max_order`` is None for arbitrarily differentiable
    families, otherwise the highest supported derivative order.
    """

    max_order: int | None = None

    def eval(self, order: int, x: complex) -> complex:
        raise NotImplementedError


@dataclass(frozen=True)
class ExpFunction(AnalyticFunction):
    """f(x) = exp(t x); the order-th derivative is t^order exp(t x)."""

    t: complex = 1.0

    def eval(self, order: int, x: complex) -> complex:
        return self.t**order * np.exp(self.t * x)


@dataclass(frozen=True)
class Monomial(AnalyticFunction):
    """f(x) = x^p with falling-factorial derivatives."""

    power: int

    def eval(self, order: int, x: complex) -> complex:
        p = int(self.power)
        if order > p:
            return 0.0 + 0.0j
        coeff = math.factorial(p) // math.factorial(p - order)
        return coeff * x ** (p - order)


@dataclass(frozen=True)
class PowerSeries(AnalyticFunction):
    """Finite power series sum_j coeffs[j] x^j, differentiated termwise."""

    coeffs: tuple

    def eval(self, order: int, x: complex) -> complex:
        total = 0.0 + 0.0j
        for j, a in enumerate(self.coeffs):
            if j < order:
                continue
            total += a * (math.factorial(j) // math.factorial(j - order)) * x ** (j - order)
        return total


class _CallableFunction(AnalyticFunction):
    def __init__(self, fn, max_order=None):
        self._fn = fn
        self.max_order = max_order

    def eval(self, order, x):
        return self._fn(order, x)


def as_function(f) -> AnalyticFunction:
    """Accept an AnalyticFunction or any callable of (order, x)."""
    if isinstance(f, AnalyticFunction):
        return f
    if callable(f):
        return _CallableFunction(f)
    raise TypeError("expected an AnalyticFunction or a callable (order, x) -> value")


def ftilde(f, spec: Spectrum) -> np.ndarray:
    """Derivative-value vector matching the Vandermonde row register.

    Entry at register (alpha, beta) is the (beta-1)-th derivative of f at
    eigenvalue alpha.
    """
    f = as_function(f)
    top_order = int(np.max(spec.mus)) - 1
    if f.max_order is not None and top_order > f.max_order:
        raise ValueError(
            f"function supplies derivatives up to order {f.max_order}, "
            f"spectrum needs order {top_order}"
        )
    out = np.empty(spec.n, dtype=complex)
    for alpha in range(1, spec.m + 1):
        lam = spec.lambdas[alpha - 1]
        for beta in range(1, int(spec.mus[alpha - 1]) + 1):
            out[register(alpha, beta, spec.mus) - 1] = f.eval(beta - 1, lam)
    return out


def coeff_vector(f, spec: Spectrum, method: str = "inverse") -> np.ndarray:
    """Power-basis coefficients b with f(A) = sum_k b[k-1] A^(k-1).

    method "inverse" multiplies by the explicit Vandermonde inverse (the
    production route); "solve" eliminates against the same system as a
    cross-check.
    """
    cv = build_vandermonde(spec)
    ft = ftilde(f, spec)
    if method == "solve":
        return solve_lu(cv.matrix, ft)
    if method != "inverse":
        raise ValueError(f"unknown coefficient method {method!r}")
    vinv = vinv_general(cv)
    b = vinv @ ft
    # The polynomial value of f(A) feels the residual V b - ftilde, not the
    # forward error of b, and the explicit inverse leaves a residual of order
    # eps * kappa(V) for high-multiplicity spectra.  Refining with the same
    # inverse contracts that residual to the elimination-level floor.
    resid = ft - cv.matrix @ b
    for _ in range(2):
        trial = b + vinv @ resid
        trial_resid = ft - cv.matrix @ trial
        if not np.linalg.norm(trial_resid) < np.linalg.norm(resid):
            break
        b, resid = trial, trial_resid
    return b


def _polynomial_in(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(A)
    power = np.eye(A.shape[0], dtype=complex)
    for k in range(b.size):
        acc += b[k] * power
        if k + 1 < b.size:
            power = power @ A
    return acc


def _check_spec_dim(A: np.ndarray, spec: Spectrum):
    if spec.n != A.shape[0]:
        raise ValueError(
            f"spectrum describes dimension {spec.n}, matrix is {A.shape[0]} x {A.shape[0]}"
        )


def apply_function(A, f, spec: Spectrum, method: str = "inverse") -> np.ndarray:
    """Evaluate f(A) given the spectrum of A.

    The caller asserts that ``spec`` really is the spectrum of A; only the
    dimension is checked here.  The result is a polynomial in A of degree
    below n and therefore commutes with A.
    """
    A = as_square(A)
    _check_spec_dim(A, spec)
    b = coeff_vector(f, spec, method=method)
    return _polynomial_in(A, b)


@dataclass(frozen=True, eq=False)
class WDDecomposition:
    """Factored inverse data: V^-1 = sum_l q[l-1] V^(l-1) with q = W d.

    W is the n x (n+1) root-of-unity frame; d holds the scaled determinant
    samples of V on the unit circle.
    """

    W: np.ndarray
    d: np.ndarray
    q: np.ndarray


def wd_decomposition(V) -> WDDecomposition:
    """Split the Fourier inverse of V into its frame and determinant parts."""
    mat = V.matrix if isinstance(V, ConfluentVandermonde) else as_square(V)
    n = mat.shape[0]
    det = det_lu(mat)
    threshold = singularity_threshold(mat)
    if abs(det) < threshold:
        raise SingularMatrixError(
            f"matrix numerically singular: |det| = {abs(det):.3e} below {threshold:.3e}",
            abs(det),
        )
    ell = np.arange(1, n + 1)
    m = np.arange(n + 1)
    W = np.exp(2j * np.pi * np.outer(ell, m) / (n + 1)) / np.sqrt(n + 1)
    eye = np.eye(n, dtype=complex)
    samples = np.exp(-2j * np.pi * m / (n + 1))
    dets = np.array([det_lu(z * eye - mat) for z in samples])
    d = (-1) ** (n + 1) / (det * np.sqrt(n + 1)) * dets
    return WDDecomposition(W, d, W @ d)


def apply_function_alt(A, f, spec: Spectrum) -> np.ndarray:
    """f(A) through the frame/determinant split of the Vandermonde inverse.

    Same value as ``apply_function`` up to roundoff; exercises the factored
    route where the inverse is a q-weighted sum of Vandermonde powers.
    """
    A = as_square(A)
    _check_spec_dim(A, spec)
    V = build_vandermonde(spec).matrix
    wd = wd_decomposition(V)
    ft = ftilde(f, spec)
    b = np.zeros(spec.n, dtype=complex)
    vec = ft.copy()
    for ell in range(1, spec.n + 1):
        b += wd.q[ell - 1] * vec
        if ell < spec.n:
            vec = V @ vec
    return _polynomial_in(A, b)


def expm(A, t, spec: Spectrum, method: str = "inverse") -> np.ndarray:
    """exp(t A) as a polynomial in A with coefficients from the spectrum."""
    return apply_function(A, ExpFunction(t), spec, method=method)


def expm_distinct(A, t, spec: Spectrum) -> np.ndarray:
    """exp(t A) via the closed-form inverse for all-simple eigenvalues."""
    A = as_square(A)
    _check_spec_dim(A, spec)
    if spec.m != spec.n:
        raise ValueError("distinct-eigenvalue route needs all multiplicities equal to 1")
    b = vinv_distinct(spec) @ np.exp(spec.lambdas * t)
    return _polynomial_in(A, b)


def expm_degenerate(A, t, spec: Spectrum) -> np.ndarray:
    """exp(t A) for a single n-fold eigenvalue.

    Truncated double sum in powers of t A and the eigenvalue; collapses to
    exp(lambda t) I only when A - lambda I is numerically zero, since a
    defective A keeps genuine nilpotent content.
    """
    A = as_square(A)
    _check_spec_dim(A, spec)
    if spec.m != 1:
        raise ValueError("degenerate route needs a single eigenvalue")
    lam = spec.lambdas[0]
    n = spec.n
    if fro(A - lam * np.eye(n)) <= 1e-12 * (1.0 + abs(lam)):
        return np.exp(lam * t) * np.eye(n, dtype=complex)
    acc = np.zeros_like(A)
    power = np.eye(n, dtype=complex)  # (tA)^k / k!
    for k in range(n):
        inner = 0.0 + 0.0j
        for beta in range(n - k):
            inner += (-lam * t) ** beta / math.factorial(beta)
        acc += inner * power
        if k + 1 < n:
            power = power @ (t * A) / (k + 1)
    return np.exp(lam * t) * acc


def expm_taylor(A, t, degree: int = 25) -> np.ndarray:
    """Scaling-and-squaring Taylor exponential, the independent oracle.

    t A is scaled by a power of two until its Frobenius norm is at most
    one half, the series is summed to ``degree``, and the result is squared
    back up.  No spectral information is used.
    """
    A = as_square(A)
    if degree < 20:
        raise ValueError("oracle degree must be at least 20")
    M = t * A
    norm = fro(M)
    s = 0
    while norm / 2**s > 0.5:
        s += 1
    Ms = M / 2**s
    n = A.shape[0]
    term = np.eye(n, dtype=complex)
    acc = np.eye(n, dtype=complex)
    for k in range(1, degree + 1):
        term = term @ Ms / k
        acc = acc + term
    for _ in range(s):
        acc = acc @ acc
    return acc


def exp_identity_check(z, m: int) -> complex:
    """Double truncated-exponential sum that telescopes to exactly 1.

    sum_{a=0}^{m} z^a/a! * sum_{b=0}^{m-a} (-z)^b/b!; every cross term
    beyond order zero cancels, for any z and any truncation order m.
    """
    m = int(m)
    if m < 0:
        raise ValueError("truncation order must be nonnegative")
    z = complex(z)
    total = 0.0 + 0.0j
    for a in range(m + 1):
        inner = 0.0 + 0.0j
        for b in range(m - a + 1):
            inner += (-z) ** b / math.factorial(b)
        total += z**a / math.factorial(a) * inner
    return total


def bch_conjugate(A, B, s, spec: Spectrum) -> np.ndarray:
    """exp(s A) B exp(-s A) as a finite double sum over matrix powers.

    Both exponentials are expanded into polynomials in A over the same
    spectrum, so the conjugation closes after n^2 scalar-weighted products
    A^(k-1) B A^(k'-1).
    """
    A = as_square(A)
    B = as_square(B)
    if A.shape != B.shape:
        raise ValueError("operands must share one dimension")
    _check_spec_dim(A, spec)
    left = _polynomial_in(A, coeff_vector(ExpFunction(s), spec))
    right = _polynomial_in(A, coeff_vector(ExpFunction(-s), spec))
    return left @ B @ right


def bch_series_oracle(A, B, s, order: int) -> np.ndarray:
    """Truncated nested-commutator series for exp(s A) B exp(-s A).

    Reference route only: sums s^k/k! times the k-fold commutator of A
    with B up to the given order.
    """
    A = as_square(A)
    B = as_square(B)
    if A.shape != B.shape:
        raise ValueError("operands must share one dimension")
    if order < 0:
        raise ValueError("series order must be nonnegative")
    acc = B.astype(complex).copy()
    nested = B.astype(complex).copy()
    for k in range(1, order + 1):
        nested = A @ nested - nested @ A
        acc = acc + s**k / math.factorial(k) * nested
    return acc
