"""Eigensystem of the multilevel Raman Hamiltonian.

Works in scaled variables x_n = Omega_P;n / (2 Omega_0),
y_n = Omega_S;n e^(-i delta t) / (2 Omega_0), delta_app = Delta / Omega_0.
(The Stokes frame phase follows the sign convention of the builder
below: delta is the offset of the drive-frequency difference from the
ground splitting, and the Stokes block rotates at e^(-i delta t).)
The scaled matrix carries +delta_app on the intermediate diagonal (the
sign convention under which the characteristic polynomial below holds);
the unscaled interaction Hamiltonian keeps -Delta.  The two spectra are
related by an overall sign: eig(H_interaction) = -Omega_0 * eig(H_scaled).

The two eigenvalues whose eigenvectors live mostly in the ground doublet
have the closed form

    lambda_pm = [-(||x||^2 + ||y||^2) +- chi] / (2 delta_app),
    chi = sqrt((||x||^2 - ||y||^2)^2 + 4 |x . y*|^2),

valid for |delta_app| >> ||x||, ||y||.  A dense cyclic-Jacobi Hermitian
eigensolver provides the numerical cross-check.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .dynamics import CouplingVectors, DetuningSet

__all__ = [
    "EigenDegeneracyWarning",
    "ScaledSystem",
    "build_interaction_hamiltonian",
    "characteristic_poly",
    "dressed_rotation",
    "finite_eigenvalues",
    "numeric_eigensystem",
    "rabi_and_shift_from_eigenvalues",
    "scale_system",
    "scaled_hamiltonian",
]


class EigenDegeneracyWarning(UserWarning):
    """The two ground-doublet eigenvectors are degenerate."""


@dataclass(frozen=True)
class ScaledSystem:
    """Dimensionless couplings and detuning, plus the scale Omega0 (rad/s)."""

    x: np.ndarray
    y: np.ndarray
    delta_scaled: float
    Omega0: float

    def __post_init__(self) -> None:
        x = np.atleast_1d(np.asarray(self.x, dtype=complex))
        y = np.atleast_1d(np.asarray(self.y, dtype=complex))
        if x.shape != y.shape or x.ndim != 1:
            raise ValueError("x and y must be 1-d arrays of equal length")
        if self.Omega0 <= 0:
            raise ValueError("Omega0 must be positive")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def dot_xy(self) -> complex:
        return complex(np.sum(self.x * np.conj(self.y)))

    def norm_x_sq(self) -> float:
        return float(np.sum(np.abs(self.x) ** 2))

    def norm_y_sq(self) -> float:
        return float(np.sum(np.abs(self.y) ** 2))

    def chi(self) -> float:
        return math.sqrt(
            (self.norm_x_sq() - self.norm_y_sq()) ** 2 + 4.0 * abs(self.dot_xy()) ** 2
        )


def scale_system(couplings: CouplingVectors, detuning: DetuningSet,
                 t: float = 0.0, Omega0: float | None = None) -> ScaledSystem:
    """Scaled variables for the interaction Hamiltonian at time t.

    Omega0 defaults to the largest half-coupling magnitude so the scaled
    vectors are O(1).
    """
    xraw = 0.5 * couplings.omega_p
    yraw = 0.5 * couplings.omega_s * cmath.exp(-1j * detuning.delta * t)
    if Omega0 is None:
        Omega0 = float(max(np.max(np.abs(xraw)), np.max(np.abs(yraw))))
        if Omega0 == 0.0:
            Omega0 = 1.0
    return ScaledSystem(xraw / Omega0, yraw / Omega0, detuning.Delta / Omega0, Omega0)


def build_interaction_hamiltonian(couplings: CouplingVectors, detuning: DetuningSet,
                                  t: float) -> np.ndarray:
    """(N+2)x(N+2) interaction-picture Hamiltonian snapshot at time t.

    Zero 2x2 ground block, half-couplings in rows 0 (pump, static) and 1
    (Stokes, rotating at e^(-i delta t)), their conjugates below, and
    -Delta_i on the intermediate diagonal.

    Sign convention: delta = (omega_P - omega_S) - omega_10, the offset
    of the drive-frequency difference from the ground splitting.  With
    the Stokes phase e^(-i delta t) this Hamiltonian reproduces the
    explicit two-level amplitudes (effective detuning Delta_B - delta,
    A1 rotating at e^(-i delta t)); the opposite phase choice flips the
    sign of delta throughout.
    """
    n = couplings.n_levels
    h = np.zeros((n + 2, n + 2), dtype=complex)
    h[0, 2:] = 0.5 * couplings.omega_p
    h[1, 2:] = 0.5 * couplings.omega_s * cmath.exp(-1j * detuning.delta * t)
    h[2:, 0] = np.conj(h[0, 2:])
    h[2:, 1] = np.conj(h[1, 2:])
    diag = detuning.per_level_Delta
    if diag is None:
        diag = np.full(n, detuning.Delta)
    elif diag.size != n:
        raise ValueError("per_level_Delta length must match the coupling vectors")
    h[np.arange(2, n + 2), np.arange(2, n + 2)] = -diag
    return h


def scaled_hamiltonian(system: ScaledSystem) -> np.ndarray:
    """Scaled matrix with +delta_app on the intermediate diagonal."""
    n = system.x.size
    h = np.zeros((n + 2, n + 2), dtype=complex)
    h[0, 2:] = system.x
    h[1, 2:] = system.y
    h[2:, 0] = np.conj(system.x)
    h[2:, 1] = np.conj(system.y)
    h[np.arange(2, n + 2), np.arange(2, n + 2)] = system.delta_scaled
    return h


def _check_deep_detuning(system: ScaledSystem) -> None:
    if system.delta_scaled == 0.0:
        raise ValueError("delta_scaled must be nonzero")
    strength = math.sqrt(max(system.norm_x_sq(), system.norm_y_sq()))
    if strength > 0.1 * abs(system.delta_scaled):
        warnings.warn(
            "||x||, ||y|| are not small against |delta_app|; the closed-form "
            "eigenvalues are perturbative and will lose accuracy",
            stacklevel=3,
        )


def finite_eigenvalues(system: ScaledSystem) -> tuple[float, float]:
    """The two ground-doublet eigenvalues (lambda_plus, lambda_minus)."""
    _check_deep_detuning(system)
    sx = system.norm_x_sq()
    sy = system.norm_y_sq()
    chi = system.chi()
    lam_plus = (-(sx + sy) + chi) / (2.0 * system.delta_scaled)
    lam_minus = (-(sx + sy) - chi) / (2.0 * system.delta_scaled)
    return lam_plus, lam_minus


def characteristic_poly(system: ScaledSystem, lam: complex) -> complex:
    """det(H_scaled - lambda I) from the closed-form expansion.

    |A| = l^2 (d-l)^(M-2) + l (||x||^2+||y||^2) (d-l)^(M-3)
          + (1/2) sum_ij |x_i y_j - x_j y_i|^2 (d-l)^(M-4)

    with M the full dimension.  The pair sum vanishes identically for a
    single intermediate level, so the (d-l)^(M-4) term never needs a
    negative exponent.
    """
    m = system.x.size + 2
    d = system.delta_scaled
    u = d - lam
    sx = system.norm_x_sq()
    sy = system.norm_y_sq()
    pair = sx * sy - abs(system.dot_xy()) ** 2
    value = lam * lam * u ** (m - 2) + lam * (sx + sy) * u ** (m - 3)
    if pair != 0.0:
        value += pair * u ** (m - 4)
    return value


def rabi_and_shift_from_eigenvalues(system: ScaledSystem) -> tuple[float, float]:
    """(Omega_B, Delta_B) in rad/s recovered from the scaled eigensystem.

    Omega_B = (Omega0^2/Delta) 2|x.y*| and
    Delta_B = (Omega0^2/Delta) (||y||^2 - ||x||^2); the generalized Rabi
    frequency is Omega0 (lambda_plus - lambda_minus).
    """
    _check_deep_detuning(system)
    scale = system.Omega0 / system.delta_scaled
    omega_b = scale * 2.0 * abs(system.dot_xy())
    delta_b = scale * (system.norm_y_sq() - system.norm_x_sq())
    return omega_b, delta_b


def dressed_rotation(system: ScaledSystem) -> tuple[float, float]:
    """(theta, phi) of the rotation onto the ground-doublet eigenvectors.

    The eigenvector adiabatically connected to |0> satisfies
    a1/a0 = e^(i phi) tan(theta) with phi = -arg(x . y*); the quadratic
    root is chosen so theta lies in (-pi/4, pi/4].  For x . y* = 0 the
    states decouple and theta = 0; if additionally ||x|| = ||y|| the
    doublet is degenerate and an EigenDegeneracyWarning is emitted.
    """
    dot = system.dot_xy()
    sx = system.norm_x_sq()
    sy = system.norm_y_sq()
    if dot == 0:
        if sx == sy:
            warnings.warn("ground-doublet eigenvectors are degenerate; "
                          "returning theta = 0", EigenDegeneracyWarning,
                          stacklevel=2)
        return 0.0, 0.0
    chi = system.chi()
    # root with |tan| <= 1: -chi when ||y|| > ||x||, +chi otherwise
    numerator = (sy - sx) - chi if sy > sx else (sy - sx) + chi
    theta = math.atan(numerator / (2.0 * abs(dot)))
    return theta, -cmath.phase(dot)


def numeric_eigensystem(h: np.ndarray, tol: float = 1e-14,
                        max_sweeps: int = 60) -> tuple[np.ndarray, np.ndarray]:
    """Full spectrum of a Hermitian matrix by cyclic Jacobi rotations.

    Returns eigenvalues ascending and the matching unit-norm eigenvector
    columns.  Intended for the dense N <= 64 matrices of this problem.
    Raises ValueError on non-Hermitian input.
    """
    a = np.array(h, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    n = a.shape[0]
    scale = max(1.0, float(np.max(np.abs(a))))
    if np.max(np.abs(a - a.conj().T)) > 1e-12 * scale:
        raise ValueError("matrix is not Hermitian")
    if n > 64:
        raise ValueError("Jacobi solver supports N <= 64")

    v = np.eye(n, dtype=complex)
    for _ in range(max_sweeps):
        off = math.sqrt(float(np.sum(np.abs(np.triu(a, 1)) ** 2)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                phase = apq / abs(apq)
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * abs(apq))
                if tau >= 0.0:
                    t = 1.0 / (tau + math.hypot(1.0, tau))
                else:
                    t = -1.0 / (-tau + math.hypot(1.0, tau))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                # plane rotation G: G[pp]=c, G[pq]=s, G[qp]=-s e^(-i phi),
                # G[qq]=c e^(-i phi); apply A <- G^H A G, V <- V G
                gqp = -s * np.conj(phase)
                gqq = c * np.conj(phase)
                col_p = c * a[:, p] + gqp * a[:, q]
                col_q = s * a[:, p] + gqq * a[:, q]
                a[:, p] = col_p
                a[:, q] = col_q
                row_p = c * a[p, :] + np.conj(gqp) * a[q, :]
                row_q = s * a[p, :] + np.conj(gqq) * a[q, :]
                a[p, :] = row_p
                a[q, :] = row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vcol_p = c * v[:, p] + gqp * v[:, q]
                vcol_q = s * v[:, p] + gqq * v[:, q]
                v[:, p] = vcol_p
                v[:, q] = vcol_q
    else:
        raise RuntimeError("Jacobi sweeps did not converge")

    w = a.diagonal().real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]
