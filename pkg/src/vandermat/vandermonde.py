"""Confluent Vandermonde construction and its explicit inverse routes.

Rows are indexed by a flat register running over (eigenvalue, derivative
order) pairs; each row holds derivatives of the monomial basis at one
eigenvalue.  The general inverse reuses the Fourier adjugate route; fully
distinct and fully degenerate spectra additionally have closed forms built
from elementary symmetric polynomials and factorials.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .charpoly import inverse_fourier
from .eigen import Spectrum
from .errors import ConditioningWarning, SingularMatrixError
from .linalg import as_square

# below this pairwise separation the distinct-eigenvalue closed form starts
# amplifying roundoff through its difference-product denominators
NEAR_CONFLUENT_SEP = 1e-6


def register(alpha: int, beta: int, mus) -> int:
    """Flat 1-based row index of derivative order beta-1 at eigenvalue alpha.

    Rows stack eigenvalue blocks in order: all derivative rows of the first
    eigenvalue, then the second, and so on.
    """
    mus = [int(m) for m in np.asarray(mus).ravel()]
    if not 1 <= alpha <= len(mus):
        raise ValueError(f"eigenvalue index {alpha} outside 1..{len(mus)}")
    if not 1 <= beta <= mus[alpha - 1]:
        raise ValueError(
            f"derivative index {beta} outside 1..{mus[alpha - 1]} for eigenvalue {alpha}"
        )
    return sum(mus[: alpha - 1]) + beta


def inverse_register(v: int, mus) -> tuple[int, int]:
    """Invert the flat row index back to its (alpha, beta) pair.

    Direct search over the bijection table; the flat index enumerates each
    (alpha, beta) exactly once so the lookup cannot be ambiguous.
    """
    mus = [int(m) for m in np.asarray(mus).ravel()]
    n = sum(mus)
    if not 1 <= v <= n:
        raise ValueError(f"register index {v} outside 1..{n}")
    for alpha in range(1, len(mus) + 1):
        for beta in range(1, mus[alpha - 1] + 1):
            if sum(mus[: alpha - 1]) + beta == v:
                return alpha, beta
    raise AssertionError("register bijection violated")  # pragma: no cover


@dataclass(frozen=True, eq=False)
class RegisterMap:
    """Precomputed two-way register table for one multiplicity vector."""

    mus: tuple[int, ...]
    backward: tuple[tuple[int, int], ...]

    @classmethod
    def from_mus(cls, mus) -> "RegisterMap":
        mus = tuple(int(m) for m in np.asarray(mus).ravel())
        if not mus or any(m < 1 for m in mus):
            raise ValueError("multiplicities must be positive integers")
        backward = tuple(
            (alpha, beta)
            for alpha in range(1, len(mus) + 1)
            for beta in range(1, mus[alpha - 1] + 1)
        )
        return cls(mus, backward)

    @property
    def n(self) -> int:
        return sum(self.mus)

    def row(self, alpha: int, beta: int) -> int:
        return register(alpha, beta, self.mus)

    def alpha_beta(self, v: int) -> tuple[int, int]:
        if not 1 <= v <= self.n:
            raise ValueError(f"register index {v} outside 1..{self.n}")
        return self.backward[v - 1]


def _entry(lam: complex, beta: int, d: int) -> complex:
    # shared kernel for both construction routes: the factorial ratio is an
    # exact integer, so both routes perform the identical multiplication
    return (math.factorial(d - 1) // math.factorial(d - beta)) * lam ** (d - beta)


def vandermonde_matrix(spec: Spectrum) -> np.ndarray:
    """Confluent Vandermonde matrix: derivative rows of (1, x, ..., x^(n-1)).

    Row for (alpha, beta) holds the (beta-1)-th derivative of each monomial
    evaluated at eigenvalue alpha; entries left of the derivative order are
    exactly zero.
    """
    n = spec.n
    V = np.zeros((n, n), dtype=complex)
    for alpha in range(1, spec.m + 1):
        lam = spec.lambdas[alpha - 1]
        for beta in range(1, int(spec.mus[alpha - 1]) + 1):
            row = register(alpha, beta, spec.mus) - 1
            for d in range(beta, n + 1):
                V[row, d - 1] = _entry(lam, beta, d)
    return V


def _step(z: int, y: int) -> int:
    # unit step written as sgn of a Kronecker delta plus a clipped difference
    return int(np.sign((1 if z == y else 0) + max(0, z - y)))


def vandermonde_matrix_flat(spec: Spectrum) -> np.ndarray:
    """Same matrix via the single-term entry formula over flat indices.

    Every entry is one closed-form product gated by a unit step; rows are
    recovered from the flat index through ``inverse_register``.  Cross-checked
    against ``vandermonde_matrix`` entry for entry.
    """
    n = spec.n
    V = np.zeros((n, n), dtype=complex)
    reg = RegisterMap.from_mus(spec.mus)
    for q in range(1, n + 1):
        alpha, beta = reg.alpha_beta(q)
        lam = spec.lambdas[alpha - 1]
        for d in range(1, n + 1):
            if _step(d, beta) == 0:
                continue
            V[q - 1, d - 1] = _entry(lam, beta, d)
    return V


@dataclass(frozen=True, eq=False)
class ConfluentVandermonde:
    """Matrix plus the spectrum and register map that generated it."""

    matrix: np.ndarray
    spectrum: Spectrum
    register: RegisterMap


def build_vandermonde(spec: Spectrum) -> ConfluentVandermonde:
    """Assemble the confluent Vandermonde system for a spectrum."""
    return ConfluentVandermonde(
        vandermonde_matrix(spec), spec, RegisterMap.from_mus(spec.mus)
    )


def _matrix_of(V) -> np.ndarray:
    return V.matrix if isinstance(V, ConfluentVandermonde) else as_square(V)


def _pow2_balance(mat: np.ndarray):
    """Equilibrate rows and columns to unit max by exact powers of two.

    Column d of a confluent Vandermonde matrix grows like lambda^(d-1) and
    derivative rows carry factorials, so the raw determinant is dwarfed by
    norm^n once eigenvalues leave the unit disk; that starves the Fourier
    adjugate of relative accuracy.  Power-of-two scaling introduces no
    rounding, so the balanced inverse unscales back exactly.
    """
    B = np.array(mat, dtype=complex)
    n = B.shape[0]
    rscale = np.ones(n)
    cscale = np.ones(n)
    for _ in range(2):
        for axis, store in ((0, cscale), (1, rscale)):
            peak = np.max(np.abs(B), axis=axis)
            with np.errstate(divide="ignore"):
                s = np.exp2(np.ceil(np.log2(np.where(peak > 0, peak, 1.0))))
            store *= s
            B /= s[None, :] if axis == 0 else s[:, None]
    return B, rscale, cscale


def vinv_general(V) -> np.ndarray:
    """Inverse for any multiplicity structure via the Fourier adjugate route,
    evaluated on a power-of-two balanced copy for scale robustness."""
    mat = _matrix_of(V)
    balanced, rscale, cscale = _pow2_balance(mat)
    try:
        inv = inverse_fourier(balanced)
    except SingularMatrixError as exc:
        raise SingularMatrixError(
            "confluent Vandermonde numerically singular; nearly coincident "
            "eigenvalues should be re-clustered into higher multiplicities "
            f"({exc})",
            exc.det_abs,
        ) from exc
    return inv / cscale[:, None] / rscale[None, :]


def esp_classic(x, j: int) -> complex:
    """Elementary symmetric polynomial e_j as a sum over increasing index sets.

    e_0 = 1; orders outside 0..len(x) vanish.
    """
    x = np.asarray(x, dtype=complex).ravel()
    j = int(j)
    if j == 0:
        return 1.0 + 0.0j
    if j < 0 or j > x.size:
        return 0.0 + 0.0j
    total = 0.0 + 0.0j
    for combo in itertools.combinations(x, j):
        prod = 1.0 + 0.0j
        for v in combo:
            prod *= v
        total += prod
    return total


def esp_fourier(x, j: int) -> complex:
    """e_j as a Fourier sum of root-of-unity products, no nested index sets."""
    x = np.asarray(x, dtype=complex).ravel()
    m = x.size
    j = int(j)
    if j < 0 or j > m:
        raise ValueError(f"order {j} outside 0..{m}")
    k = np.arange(m + 1)
    w = np.exp(-2j * np.pi * k / (m + 1))
    prods = np.prod(w[:, None] - x[None, :], axis=1)
    phases = np.exp(2j * np.pi * k * (m - j) / (m + 1))
    return complex((-1) ** j / (m + 1) * (phases @ prods))


def vinv_distinct(spec: Spectrum) -> np.ndarray:
    """Closed-form inverse when every eigenvalue is simple.

    Column b is built from elementary symmetric polynomials of the other
    eigenvalues over the difference product around eigenvalue b.  Emits a
    ConditioningWarning for nearly coincident eigenvalues.
    """
    if spec.m != spec.n:
        raise ValueError("distinct-eigenvalue form needs all multiplicities equal to 1")
    lam = spec.lambdas
    n = spec.n
    if n > 1:
        sep = min(
            abs(lam[a] - lam[b]) for a in range(n) for b in range(a + 1, n)
        )
        if sep < NEAR_CONFLUENT_SEP:
            warnings.warn(
                f"eigenvalue separation {sep:.3e} below {NEAR_CONFLUENT_SEP:.0e}; "
                "difference-product denominators will amplify roundoff",
                ConditioningWarning,
                stacklevel=2,
            )
    Vinv = np.zeros((n, n), dtype=complex)
    for b in range(1, n + 1):
        others = np.delete(lam, b - 1)
        denom = 1.0 + 0.0j
        for c in others:
            denom *= lam[b - 1] - c
        for a in range(1, n + 1):
            Vinv[a - 1, b - 1] = (
                (-1) ** (n - a) * esp_classic(others, n - a) / denom
            )
    return Vinv


def vinv_degenerate(spec: Spectrum) -> np.ndarray:
    """Closed-form inverse when one eigenvalue carries all multiplicity.

    Upper triangular with entries (-lambda)^(b-a) / ((b-a)! (a-1)!).
    """
    if spec.m != 1:
        raise ValueError("degenerate form needs a single eigenvalue")
    lam = spec.lambdas[0]
    n = spec.n
    Vinv = np.zeros((n, n), dtype=complex)
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            Vinv[a - 1, b - 1] = (-lam) ** (b - a) / (
                math.factorial(b - a) * math.factorial(a - 1)
            )
    return Vinv
