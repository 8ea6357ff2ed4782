"""Unitary time evolution driven entirely by eigenvalues.

Constant Hamiltonians evolve through the polynomial exponential; a family
commuting at unequal times evolves through the time integral of H with its
spectrum redetermined at each evaluation; everything else falls back to a
first-order product formula whose factors are constant-H steps.  Closed
forms for a single qubit, a residual check of the equation of motion, and
Bloch-sphere path extraction round out the toolkit.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .eigen import EigenOptions, Spectrum, spectrum_of
from .errors import CommutationWarning, HermiticityWarning, QuadratureError
from .linalg import as_square, fro
from .matfunc import expm

HERMITICITY_TOL = 1e-10
COMMUTATION_TOL = 1e-8
QUAD_TOL = 1e-10
QUAD_MAX_DEPTH = 40


def _warn_if_not_hermitian(H: np.ndarray, label: str):
    dev = fro(H - H.conj().T)
    if dev > HERMITICITY_TOL * max(1.0, fro(H)):
        warnings.warn(
            f"{label} deviates from Hermitian symmetry by {dev:.3e}; "
            "evolution is computed anyway but will not be unitary",
            HermiticityWarning,
            stacklevel=3,
        )


@dataclass
class HamiltonianSpec:
    """A Hamiltonian handed to the evolution routines.

    kind is one of "constant" (h is a matrix), "commuting" (h is a callable
    of time whose values commute at unequal times), or "general" (callable,
    no commutation assumed).  ``htilde``, when given, maps (t, t0) to the
    time integral of h over [t0, t] and skips the quadrature.  Hermiticity
    and commutation are sampled checks that warn rather than refuse.
    """

    kind: str
    h: object
    htilde: object = None
    hbar: float = 1.0

    def __post_init__(self):
        if self.kind not in ("constant", "commuting", "general"):
            raise ValueError(f"unknown Hamiltonian kind {self.kind!r}")
        if self.kind == "constant":
            self.h = as_square(self.h)
        elif not callable(self.h):
            raise ValueError(f"kind {self.kind!r} needs a callable of time")
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")

    @property
    def dim(self) -> int | None:
        return self.h.shape[0] if self.kind == "constant" else None

    def h_at(self, t: float) -> np.ndarray:
        if self.kind == "constant":
            return self.h
        return as_square(self.h(t))

    def htilde_between(self, t0: float, t: float) -> np.ndarray:
        """Integral of h over [t0, t], analytic if supplied else by quadrature."""
        if self.kind == "constant":
            return (t - t0) * self.h
        if self.htilde is not None:
            return as_square(self.htilde(t, t0))
        return integrate_matrix(self.h_at, t0, t)

    def sampled_checks(self, t0: float, t: float):
        """Warn on Hermiticity or commutation violations at sampled times."""
        nodes = _chebyshev_nodes(t0, t, 32)
        for tau in nodes[:4]:
            _warn_if_not_hermitian(self.h_at(tau), f"H({tau:g})")
        if self.kind != "commuting":
            return
        for ta, tb in zip(nodes[0::2], nodes[1::2]):
            Ha, Hb = self.h_at(ta), self.h_at(tb)
            comm = Ha @ Hb - Hb @ Ha
            bound = COMMUTATION_TOL * max(1e-30, fro(Ha) * fro(Hb))
            if fro(comm) > bound:
                warnings.warn(
                    f"[H({ta:g}), H({tb:g})] has norm {fro(comm):.3e}, above "
                    f"{bound:.3e}; the commuting-family route is unreliable here",
                    CommutationWarning,
                    stacklevel=3,
                )
                return


def _chebyshev_nodes(a: float, b: float, count: int) -> np.ndarray:
    i = np.arange(1, count + 1)
    return (a + b) / 2 + (b - a) / 2 * np.cos(np.pi * (2 * i - 1) / (2 * count))


def integrate_matrix(f, a: float, b: float, tol: float = QUAD_TOL,
                     max_depth: int = QUAD_MAX_DEPTH) -> np.ndarray:
    """Entrywise adaptive Simpson integral of a matrix-valued function.

    Absolute tolerance, interval halving with the usual fifteen-fold
    Richardson acceptance; raises QuadratureError at the depth cap.
    """
    fa = np.asarray(f(a), dtype=complex)
    fb = np.asarray(f(b), dtype=complex)
    mid = (a + b) / 2
    fm = np.asarray(f(mid), dtype=complex)
    whole = (b - a) / 6 * (fa + 4 * fm + fb)

    def recurse(lo, hi, flo, fmid, fhi, total, tol, depth):
        m = (lo + hi) / 2
        lm = (lo + m) / 2
        rm = (m + hi) / 2
        flm = np.asarray(f(lm), dtype=complex)
        frm = np.asarray(f(rm), dtype=complex)
        left = (m - lo) / 6 * (flo + 4 * flm + fmid)
        right = (hi - m) / 6 * (fmid + 4 * frm + fhi)
        err = float(np.max(np.abs(left + right - total)))
        if err <= 15 * tol:
            return left + right + (left + right - total) / 15
        if depth >= max_depth:
            raise QuadratureError(
                f"adaptive Simpson hit depth {max_depth} on [{lo:g}, {hi:g}] "
                f"with error estimate {err:.3e}"
            )
        return recurse(lo, m, flo, flm, fmid, left, tol / 2, depth + 1) + recurse(
            m, hi, fmid, frm, fhi, right, tol / 2, depth + 1
        )

    return recurse(a, b, fa, fm, fb, whole, tol, 0)


def evolve_const(H, spec: Spectrum | None, t0: float, t: float,
                 hbar: float = 1.0) -> np.ndarray:
    """Propagator exp(-i (t - t0) H / hbar) from the spectrum of H.

    ``spec`` is the caller-asserted spectrum of H; pass None to have it
    computed.  Non-Hermitian input warns and is evolved anyway.
    """
    H = as_square(H)
    _warn_if_not_hermitian(H, "H")
    if spec is None:
        spec = spectrum_of(H)
    return expm(H, -1j * (t - t0) / hbar, spec)


def qubit_eigenvalues(H) -> tuple[complex, complex]:
    """Both eigenvalues of a 2 x 2 Hamiltonian, larger real part first."""
    H = as_square(H)
    if H.shape[0] != 2:
        raise ValueError("qubit closed forms need a 2 x 2 matrix")
    half_tr = (H[0, 0] + H[1, 1]) / 2
    disc = cmath.sqrt(((H[0, 0] - H[1, 1]) / 2) ** 2 + H[0, 1] * H[1, 0])
    lam1, lam2 = half_tr + disc, half_tr - disc
    if lam1.real < lam2.real:
        lam1, lam2 = lam2, lam1
    return complex(lam1), complex(lam2)


@dataclass(frozen=True)
class QubitParams:
    """Derived qubit quantities: detuning, coupling, and precession rate."""

    delta_h: float
    h12: complex
    omega_h: float

    @classmethod
    def from_hamiltonian(cls, H, hbar: float = 1.0) -> "QubitParams":
        H = as_square(H)
        if H.shape[0] != 2:
            raise ValueError("qubit closed forms need a 2 x 2 matrix")
        delta = (H[0, 0] - H[1, 1]) / 2
        h12 = complex(H[0, 1])
        omega = math.sqrt(abs(delta) ** 2 + abs(h12) ** 2) / hbar
        return cls(float(delta.real), h12, omega)


def qubit_coefficients(H, dt: float, hbar: float = 1.0):
    """Closed-form (a, b, phase) of the 2 x 2 propagator over a span dt.

    a and b sit in a unit-determinant block [[a, b], [-conj(b), conj(a)]]
    and satisfy |a|^2 + |b|^2 = 1; ``phase`` is the global factor from the
    trace of H.  A zero precession rate switches the sine terms off through
    a guard in the denominators.
    """
    par = QubitParams.from_hamiltonian(H, hbar)
    H = as_square(H)
    guard = 1.0 if par.omega_h == 0.0 else 0.0
    arg = par.omega_h * dt
    denom = hbar * par.omega_h + guard
    a = math.cos(arg) - 1j * (par.delta_h / denom) * math.sin(arg)
    b = -1j * (par.h12 / denom) * math.sin(arg)
    phase = cmath.exp(-1j * dt * complex(H[0, 0] + H[1, 1]) / (2 * hbar))
    return a, b, phase


def qubit_u_const(H, t0: float, t: float, hbar: float = 1.0) -> np.ndarray:
    """Constant-H qubit propagator in closed form (no root finding)."""
    a, b, phase = qubit_coefficients(H, t - t0, hbar)
    return phase * np.array([[a, b], [-np.conj(b), np.conj(a)]])


def qubit_u_commuting(htilde_mat, hbar: float = 1.0) -> np.ndarray:
    """Qubit propagator from an integrated Hamiltonian: unit-span closed form."""
    a, b, phase = qubit_coefficients(htilde_mat, 1.0, hbar)
    return phase * np.array([[a, b], [-np.conj(b), np.conj(a)]])


def evolve_commuting(hspec: HamiltonianSpec, t0: float, t: float,
                     opts: EigenOptions | None = None) -> np.ndarray:
    """Propagator for a family commuting at unequal times.

    Exponentiates the integrated Hamiltonian with -i/hbar in place of the
    time span; the multiplicity structure of the integral is redetermined
    at every evaluation time since crossings can change it.
    """
    hspec.sampled_checks(t0, t)
    Ht = hspec.htilde_between(t0, t)
    spec = spectrum_of(Ht, opts)
    return expm(Ht, -1j / hspec.hbar, spec)


@dataclass(frozen=True)
class TrotterPlan:
    """Uniform product-formula grid over [t0, t] with N steps."""

    t0: float
    t: float
    steps: int

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError("step count must be a positive integer")
        if not self.t > self.t0:
            raise ValueError("final time must exceed the initial time")

    @property
    def dt(self) -> float:
        return (self.t - self.t0) / self.steps

    def time_at(self, r: int) -> float:
        """Grid time t_r = t0 + r dt; factor r samples H here."""
        return self.t0 + r * self.dt


def evolve_trotter(hspec: HamiltonianSpec, plan: TrotterPlan,
                   opts: EigenOptions | None = None) -> np.ndarray:
    """First-order product formula: constant-H factors multiplied leftward.

    Factor r evolves under H(t_r) over one grid step, with that factor's
    spectrum computed on the spot; later times stack on the left.
    """
    H_first = hspec.h_at(plan.time_at(1))
    n = H_first.shape[0]
    U = np.eye(n, dtype=complex)
    with warnings.catch_warnings():
        # one sampled Hermiticity report is enough for a long factor chain
        warnings.simplefilter("once", HermiticityWarning)
        for r in range(1, plan.steps + 1):
            Hr = H_first if r == 1 else hspec.h_at(plan.time_at(r))
            spec_r = spectrum_of(Hr, opts)
            U = evolve_const(Hr, spec_r, plan.time_at(r - 1), plan.time_at(r),
                             hspec.hbar) @ U
    return U


def evolve_trotter_qubit(hspec: HamiltonianSpec, plan: TrotterPlan) -> np.ndarray:
    """Product formula with each 2 x 2 factor in closed form."""
    U = np.eye(2, dtype=complex)
    for r in range(1, plan.steps + 1):
        Hr = hspec.h_at(plan.time_at(r))
        U = qubit_u_const(Hr, plan.time_at(r - 1), plan.time_at(r), hspec.hbar) @ U
    return U


def seteo_residual(u_fn, h_fn, t: float, hbar: float = 1.0,
                   h_step: float = 1e-5) -> float:
    """Frobenius residual of the Schrodinger equation at time t.

    Central-difference time derivative of the propagator plus
    (i/hbar) H(t) U(t); exact evolution drives this to the discretization
    floor of order h_step squared.
    """
    du = (u_fn(t + h_step) - u_fn(t - h_step)) / (2 * h_step)
    return fro(du + 1j / hbar * (h_fn(t) @ u_fn(t)))


@dataclass(frozen=True, eq=False)
class BlochPath:
    """Sampled Bloch-sphere trajectory: rows of (t, x, y, z)."""

    samples: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 4 or arr.shape[0] == 0:
            raise ValueError("expected a nonempty (T, 4) array of (t, x, y, z) rows")
        object.__setattr__(self, "samples", arr)

    @property
    def times(self) -> np.ndarray:
        return self.samples[:, 0]

    @property
    def coords(self) -> np.ndarray:
        return self.samples[:, 1:]

    def __len__(self) -> int:
        return self.samples.shape[0]


def bloch_coordinates(psi) -> tuple[float, float, float]:
    """Bloch vector of a normalized two-component state.

    The state is first rotated by the phase of its first component; with
    x1 the (real) first amplitude and x2 + i x3 the second, the point is
    (2 x1 x2, 2 x1 x3, 2 x1^2 - 1), which always lands on the unit sphere.
    """
    psi = np.asarray(psi, dtype=complex).ravel()
    if psi.size != 2:
        raise ValueError("Bloch coordinates need a two-component state")
    phase = cmath.exp(-1j * cmath.phase(complex(psi[0])))
    x1 = (psi[0] * phase).real
    second = psi[1] * phase
    x2, x3 = second.real, second.imag
    return 2 * x1 * x2, 2 * x1 * x3, 2 * x1 * x1 - 1


def bloch_path(psi0, u_fn, times) -> BlochPath:
    """Trajectory of a normalized initial state under a propagator family."""
    psi0 = np.asarray(psi0, dtype=complex).ravel()
    if psi0.size != 2:
        raise ValueError("initial state must have two components")
    norm = float(np.linalg.norm(psi0))
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"initial state norm {norm:.12g} is not 1")
    rows = []
    for t in np.asarray(times, dtype=float).ravel():
        psi = u_fn(t) @ psi0
        x, y, z = bloch_coordinates(psi)
        rows.append((t, x, y, z))
    return BlochPath(np.array(rows))


def gate_design_check(target, H, t: float, t0: float = 0.0,
                      hbar: float = 1.0) -> float:
    """Distance of the evolved qubit propagator from a target gate.

    The global phase is fixed by the trace overlap arg tr(U^dag target),
    then the Frobenius distance of the phase-aligned propagator from the
    target is returned; zero means the gate is met exactly up to phase.
    """
    target = as_square(target)
    U = qubit_u_const(H, t0, t, hbar)
    if target.shape != U.shape:
        raise ValueError("target gate must be 2 x 2")
    overlap = complex(np.trace(U.conj().T @ target))
    phi = cmath.phase(overlap)
    return fro(cmath.exp(1j * phi) * U - target)


def hadamard_time(k: int = 0) -> float:
    """Span after which the balanced-coupling Hamiltonian acts as a Hadamard."""
    return (math.pi / 2 + 2 * math.pi * int(k)) / math.sqrt(2)


def phase_gate_time(phi: float, delta: float = 1.0, k: int = 0) -> float:
    """Span after which the detuning Hamiltonian applies a phase phi."""
    if delta <= 0:
        raise ValueError("detuning must be positive")
    return (phi / 2 + 2 * math.pi * int(k)) / delta


def named_hamiltonian(name: str, hbar: float = 1.0) -> HamiltonianSpec:
    """Built-in Hamiltonians used by the command-line interface.

    hadamard: constant balanced coupling hbar [[1, 1], [1, -1]]
    phase:    constant unit detuning hbar diag(1, -1)
    ramp:     commuting family t * diag(1, -1) (integral done by quadrature)
    driven:   non-commuting family diag(1, -1) + t * offdiag(1, 1)
    """
    if name == "hadamard":
        H = hbar * np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex)
        return HamiltonianSpec("constant", H, hbar=hbar)
    if name == "phase":
        H = hbar * np.diag([1.0 + 0.0j, -1.0 + 0.0j])
        return HamiltonianSpec("constant", H, hbar=hbar)
    if name == "ramp":
        return HamiltonianSpec(
            "commuting", lambda t: t * np.diag([1.0 + 0.0j, -1.0 + 0.0j]), hbar=hbar
        )
    if name == "driven":
        return HamiltonianSpec(
            "general",
            lambda t: np.array([[1.0, t], [t, -1.0]], dtype=complex),
            hbar=hbar,
        )
    raise ValueError(f"unknown built-in Hamiltonian {name!r}")
