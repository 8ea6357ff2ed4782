"""Acceptance gate: end-to-end accuracy and runtime budgets.

Each test prints one summary line (visible with -s) and enforces a wall
clock budget on top of its numeric tolerances.
"""

import time
from contextlib import contextmanager

import numpy as np
import pytest

from vandermat import (
    Spectrum,
    TrotterPlan,
    bch_conjugate,
    bch_series_oracle,
    bloch_path,
    build_vandermonde,
    esp_classic,
    esp_detform,
    esp_fourier,
    evolve_const,
    evolve_trotter,
    exp_identity_check,
    expm,
    expm_taylor,
    fro,
    gate_design_check,
    hadamard_time,
    inverse_charpoly,
    inverse_fourier,
    named_hamiltonian,
    partition_count,
    phase_gate_time,
    qubit_coefficients,
    qubit_u_const,
    seteo_residual,
    spectrum_of,
    vinv_degenerate,
    vinv_distinct,
    vinv_general,
)

from conftest import (
    annulus_lambdas,
    crandn,
    jordan_like,
    partitions_of,
    random_hermitian,
    random_nonsingular,
    separated_lambdas,
)

from test_matfunc import (
    exp2_distinct,
    exp2_double,
    exp3_distinct,
    exp3_simple_plus_double,
    exp3_triple,
)


@contextmanager
def criterion(num, label, budget_s):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"[criterion {num}] {label}: FAIL")
        raise
    elapsed = time.perf_counter() - start
    if elapsed >= budget_s:
        print(f"[criterion {num}] {label}: FAIL "
              f"({elapsed:.2f}s over the {budget_s}s budget)")
        pytest.fail(f"{label}: {elapsed:.2f}s exceeds {budget_s}s")
    print(f"[criterion {num}] {label}: PASS ({elapsed:.2f}s)")


def test_inverse_routes_within_conditioning(rng):
    with criterion(1, "inverse routes, 500 matrices", 10.0):
        for trial in range(500):
            n = 1 + trial % 6
            A = random_nonsingular(rng, n)
            kappa = np.linalg.cond(A)
            eye = np.eye(n)
            for route in (inverse_fourier, inverse_charpoly):
                resid = fro(A @ route(A) - eye)
                assert resid <= 1e-8 * kappa, (route.__name__, n, resid, kappa)


def test_vandermonde_inverse_all_partitions(rng):
    with criterion(2, "confluent Vandermonde inverses", 30.0):
        for n in range(1, 7):
            parts = partitions_of(n)
            assert len(parts) == partition_count(n)
            if n == 4:
                assert len(parts) == 5
            for mus in parts:
                lams = separated_lambdas(rng, len(mus), sep=0.1)
                cv = build_vandermonde(Spectrum(lams, list(mus)))
                V = cv.matrix
                kappa = np.linalg.cond(V)
                resid = fro(V @ vinv_general(cv) - np.eye(n))
                assert resid <= 1e-8 * kappa, (n, mus, resid, kappa)
        # closed forms at both multiplicity extremes, against the general route
        for n in range(1, 9):
            lams = annulus_lambdas(rng, n)
            spec = Spectrum(lams, [1] * n)
            cv = build_vandermonde(spec)
            kappa = np.linalg.cond(cv.matrix)
            gap = fro(vinv_distinct(spec) - vinv_general(cv))
            assert gap <= 1e-9 * kappa, ("distinct", n, gap, kappa)

            spec = Spectrum([lams[0]], [n])
            cv = build_vandermonde(spec)
            kappa = np.linalg.cond(cv.matrix)
            gap = fro(vinv_degenerate(spec) - vinv_general(cv))
            assert gap <= 1e-9 * kappa, ("degenerate", n, gap, kappa)


def test_exponentials_match_oracle(rng):
    with criterion(3, "matrix exponentials vs series oracle", 30.0):
        for trial in range(500):
            n = 1 + trial % 6
            if trial % 2 == 0:
                A = crandn(rng, n, n)
                A *= 2.0 / max(1.0, fro(A))
                spec = spectrum_of(A)
            else:
                parts = partitions_of(n)
                mus = parts[trial % len(parts)]
                lams = annulus_lambdas(rng, len(mus), r0=0.6, r1=1.3, sep=0.55)
                A, spec = jordan_like(rng, lams, list(mus))
            t = 0.25 + 0.75 * rng.random()
            ref = expm_taylor(A, t)
            err = fro(expm(A, t, spec) - ref)
            assert err <= 1e-8 * fro(ref), (n, trial, err / fro(ref))

        # low-order closed forms on random draws
        for _ in range(40):
            l1, l2, l3 = separated_lambdas(rng, 3, sep=0.15, scale=1.2)
            t = 0.3 + rng.random()

            A, spec = jordan_like(rng, [l1, l2], [1, 1])
            assert fro(expm(A, t, spec) - exp2_distinct(A, t, l1, l2)) <= 1e-9

            A, spec = jordan_like(rng, [l1], [2])
            assert fro(expm(A, t, spec) - exp2_double(A, t, l1)) <= 1e-9

            A, spec = jordan_like(rng, [l1, l2, l3], [1, 1, 1])
            got = expm(A, t, spec)
            assert fro(got - exp3_distinct(A, t, l1, l2, l3)) <= 1e-9

            A, spec = jordan_like(rng, [l1, l2], [1, 2])
            got = expm(A, t, spec)
            assert fro(got - exp3_simple_plus_double(A, t, l1, l2)) <= 1e-9

            A, spec = jordan_like(rng, [l1], [3])
            assert fro(expm(A, t, spec) - exp3_triple(A, t, l1)) <= 1e-9

        # truncated-exponential telescoping identity
        for m in (0, 1, 2, 3, 5, 10, 20, 30):
            for _ in range(12):
                z = 5.0 * (rng.random() * np.exp(2j * np.pi * rng.random()))
                assert abs(exp_identity_check(z, m) - 1.0) <= 1e-10


def test_symmetric_polynomial_triple_agreement(rng):
    with criterion(4, "symmetric polynomial routes, 200 trials", 5.0):
        for trial in range(200):
            m = 1 + trial % 8
            xs = crandn(rng, m)
            j = trial % (m + 1)
            ref = esp_classic(xs, j)
            scale = max(1.0, abs(ref))
            assert abs(esp_fourier(xs, j) - ref) <= 1e-10 * scale, (m, j)
            assert abs(esp_detform(xs, j) - ref) <= 1e-10 * scale, (m, j)


def test_qubit_closed_forms(rng):
    with criterion(5, "qubit closed forms and gates", 10.0):
        for trial in range(500):
            if trial % 10 == 0:
                H = (2.0 * rng.random() - 1.0) * np.eye(2, dtype=complex)
            else:
                H = random_hermitian(rng, 2)
            t0 = rng.random() - 0.5
            t = t0 + 2.5 * (rng.random() - 0.2)
            hbar = 1.0 if trial % 3 else 0.5
            a, b, _ = qubit_coefficients(H, t - t0, hbar)
            assert abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) <= 1e-12
            closed = qubit_u_const(H, t0, t, hbar)
            general = evolve_const(H, None, t0, t, hbar)
            assert fro(closed - general) <= 1e-9, (trial, fro(closed - general))

        target = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
        H = named_hamiltonian("hadamard").h
        assert gate_design_check(target, H, hadamard_time()) <= 1e-9

        phi = 0.85 * 2.0 * np.pi
        target = np.diag([1.0, np.exp(1j * phi)])
        for delta in (1.0, 0.7):
            H = np.diag([delta, -delta]).astype(complex)
            t0 = 0.3
            t = t0 + phase_gate_time(phi, delta)
            assert gate_design_check(target, H, t, t0=t0) <= 1e-9


def test_product_formula_first_order(rng):
    with criterion(6, "product-formula convergence", 60.0):
        hspec = named_hamiltonian("driven")
        ref = evolve_trotter(hspec, TrotterPlan(0.0, 1.0, 4096))
        errs = []
        for N in (64, 128, 256):
            U = evolve_trotter(hspec, TrotterPlan(0.0, 1.0, N))
            errs.append(np.linalg.norm(U - ref, 2))
        for coarse, fine in zip(errs, errs[1:]):
            ratio = coarse / fine
            assert 1.6 <= ratio <= 2.4, (errs, ratio)

        h_fn = hspec.h_at
        resids = []
        for N in (16, 32, 64, 128):
            def u_fn(t, N=N):
                return evolve_trotter(hspec, TrotterPlan(0.0, t, N))

            resids.append(seteo_residual(u_fn, h_fn, 0.6))
        assert all(r1 > r2 for r1, r2 in zip(resids, resids[1:])), resids


def test_bloch_trajectory(rng):
    with criterion(7, "Bloch path to the equal superposition", 10.0):
        hspec = named_hamiltonian("hadamard")
        spec = spectrum_of(hspec.h)
        u_fn = lambda t: evolve_const(hspec.h, spec, 0.0, t)
        times = np.linspace(0.0, hadamard_time(), 512)
        path = bloch_path(np.array([1.0, 0.0]), u_fn, times)
        xyz = path.samples[:, 1:]
        radii = np.linalg.norm(xyz, axis=1)
        assert np.max(np.abs(radii - 1.0)) <= 1e-9
        assert np.linalg.norm(xyz[-1] - [1.0, 0.0, 0.0]) <= 1e-6


def test_similarity_conjugation(rng):
    with criterion(8, "exponential conjugation routes", 10.0):
        for trial in range(40):
            n = 2 + trial % 2
            A = crandn(rng, n, n)
            B = crandn(rng, n, n)
            s = (0.3 + 0.7 * rng.random()) / fro(A)
            spec = spectrum_of(A)
            got = bch_conjugate(A, B, s, spec)
            direct = expm_taylor(A, s) @ B @ expm_taylor(A, -s)
            scale = max(1.0, fro(direct))
            assert fro(got - direct) <= 1e-8 * scale, (n, trial)
            series = bch_series_oracle(A, B, s, order=20)
            assert fro(got - series) <= 1e-6 * scale, (n, trial)
