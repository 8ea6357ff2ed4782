"""Dense complex matrix kernels.

Permutation-sign determinants, partially pivoted LU factorization, and
integer matrix powers.  Everything here works on plain complex ndarrays;
the sign-sum determinant is the slow reference route and is capped at
small sizes, the LU route is the production one.
"""

from __future__ import annotations

import numpy as np

from .errors import SingularMatrixError

# n**n terms make the unconstrained sign-sum determinant explode quickly.
DET_SIGN_SUM_MAX = 8


def as_square(B) -> np.ndarray:
    """Validate and return ``B`` as a finite square complex ndarray."""
    B = np.asarray(B, dtype=complex)
    if B.ndim != 2 or B.shape[0] != B.shape[1] or B.shape[0] == 0:
        raise ValueError(f"expected a square matrix, got shape {B.shape}")
    if not np.all(np.isfinite(B)):
        raise ValueError("matrix entries must be finite")
    return B


def levi_civita(indices) -> int:
    """Totally antisymmetric symbol of a 1-based index tuple.

    Computed as the product of sgn(k_b - k_a) over all pairs a < b, so any
    repeated index gives 0 and swapping two indices flips the sign.
    """
    k = tuple(int(v) for v in indices)
    n = len(k)
    if n == 0:
        raise ValueError("empty index tuple")
    for v in k:
        if not 1 <= v <= n:
            raise ValueError(f"index {v} outside 1..{n}")
    sign = 1
    for a in range(n - 1):
        for b in range(a + 1, n):
            d = k[b] - k[a]
            if d == 0:
                return 0
            if d < 0:
                sign = -sign
    return sign


def _sign_products(tuples: np.ndarray) -> np.ndarray:
    # vectorized pairwise sgn product; values in {-1, 0, 1}
    m, n = tuples.shape
    eps = np.ones(m, dtype=np.int8)
    for a in range(n - 1):
        for b in range(a + 1, n):
            eps *= np.sign(tuples[:, b] - tuples[:, a]).astype(np.int8)
    return eps


def det_levicivita(B) -> complex:
    """Determinant as the full unconstrained sign-weighted index sum.

    Every index tuple (k_1, ..., k_n) over 1..n contributes
    eps(k) * prod_q B[q, k_q]; tuples with a repeated index carry weight 0.
    Exponential cost, so this is a reference oracle for ``det_lu`` and is
    refused above ``DET_SIGN_SUM_MAX``.
    """
    B = as_square(B)
    n = B.shape[0]
    if n > DET_SIGN_SUM_MAX:
        raise ValueError(
            f"det_levicivita handles n <= {DET_SIGN_SUM_MAX} (n**n terms); use det_lu for n={n}"
        )
    if n == 1:
        return complex(B[0, 0])
    axes = [np.arange(1, n + 1, dtype=np.int8)] * (n - 1)
    suffix = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n - 1)
    total = 0.0 + 0.0j
    # stream over the leading index so n = 8 stays within memory
    for first in range(1, n + 1):
        lead = np.full((suffix.shape[0], 1), first, dtype=np.int8)
        tuples = np.concatenate([lead, suffix], axis=1)
        eps = _sign_products(tuples)
        prod = B[0, tuples[:, 0] - 1].copy()
        for q in range(1, n):
            prod *= B[q, tuples[:, q] - 1]
        total += complex(eps @ prod)
    return total


def lu_factor(A) -> tuple[np.ndarray, np.ndarray, int]:
    """Partially pivoted LU factorization; returns (LU, piv, parity).

    LU packs the unit-lower and upper factors; ``piv[k]`` is the row swapped
    into position k; ``parity`` is +1/-1 with the number of swaps.
    Raises on an exactly zero pivot column.
    """
    LU = as_square(A).copy()
    n = LU.shape[0]
    piv = np.arange(n)
    parity = 1
    for col in range(n):
        p = col + int(np.argmax(np.abs(LU[col:, col])))
        if LU[p, col] == 0:
            raise SingularMatrixError("matrix is singular to working precision", 0.0)
        if p != col:
            LU[[col, p]] = LU[[p, col]]
            piv[[col, p]] = piv[[p, col]]
            parity = -parity
        LU[col + 1 :, col] /= LU[col, col]
        LU[col + 1 :, col + 1 :] -= np.outer(LU[col + 1 :, col], LU[col, col + 1 :])
    return LU, piv, parity


def det_lu(B) -> complex:
    """Determinant via partially pivoted elimination; exact singularity gives 0."""
    B = as_square(B).copy()
    n = B.shape[0]
    det = 1.0 + 0.0j
    for col in range(n):
        p = col + int(np.argmax(np.abs(B[col:, col])))
        if B[p, col] == 0:
            return 0.0 + 0.0j
        if p != col:
            B[[col, p]] = B[[p, col]]
            det = -det
        det *= B[col, col]
        factors = B[col + 1 :, col] / B[col, col]
        B[col + 1 :, col:] -= np.outer(factors, B[col, col:])
    return complex(det)


def solve_lu(A, B) -> np.ndarray:
    """Solve A X = B by pivoted elimination with forward/back substitution."""
    LU, piv, _ = lu_factor(A)
    n = LU.shape[0]
    rhs = np.asarray(B, dtype=complex)
    vector_in = rhs.ndim == 1
    X = rhs.reshape(n, -1)[piv].astype(complex)
    for col in range(n):
        X[col + 1 :] -= np.outer(LU[col + 1 :, col], X[col])
    for col in range(n - 1, -1, -1):
        X[col] = (X[col] - LU[col, col + 1 :] @ X[col + 1 :]) / LU[col, col]
    return X.ravel() if vector_in else X


def inv_lu(A) -> np.ndarray:
    """Elimination inverse: solve against the identity column by column."""
    A = as_square(A)
    return solve_lu(A, np.eye(A.shape[0], dtype=complex))


def mat_pow(B, k: int) -> np.ndarray:
    """Integer matrix power by repeated squaring; k = 0 gives the identity."""
    B = as_square(B)
    k = int(k)
    if k < 0:
        raise ValueError("exponent must be a nonnegative integer")
    result = np.eye(B.shape[0], dtype=complex)
    base = B.copy()
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def fro(A) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(A))


def cond_estimate(A) -> float:
    """Frobenius condition estimate ||A||_F * ||A^-1||_F; inf when singular."""
    A = as_square(A)
    try:
        return fro(A) * fro(inv_lu(A))
    except SingularMatrixError:
        return float("inf")
