"""Reduction of the multilevel Raman problem to an effective two-level system.

Given complex pump/Stokes coupling vectors over the intermediate manifold
and a large common single-photon detuning, the two ground states behave
as a two-level system with coupling strength

    Omega_B = |omega_p . omega_s*| / (2 Delta)

and lightshift

    Delta_B = (||omega_s||^2 - ||omega_p||^2) / (4 Delta).

This module computes those quantities, the dressing angles, the explicit
bare-amplitude evolution, the oscillation envelope, and a validity-regime
report.  All frequencies are angular (rad/s).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "AmplitudePair",
    "CouplingVectors",
    "DetuningSet",
    "EffectiveTwoLevel",
    "RegimeCriterion",
    "RegimeReport",
    "effective_rabi",
    "envelope",
    "evolve_amplitudes",
    "evolve_via_chain",
    "lightshift",
    "mixing_angles",
    "regime_check",
]


@dataclass(frozen=True)
class CouplingVectors:
    """Complex pump and Stokes couplings over the intermediate levels, rad/s."""

    omega_p: np.ndarray
    omega_s: np.ndarray

    def __post_init__(self) -> None:
        op = np.atleast_1d(np.asarray(self.omega_p, dtype=complex))
        os_ = np.atleast_1d(np.asarray(self.omega_s, dtype=complex))
        if op.shape != os_.shape or op.ndim != 1 or op.size == 0:
            raise ValueError("pump and Stokes vectors must be 1-d and of equal length >= 1")
        if not (np.all(np.isfinite(op)) and np.all(np.isfinite(os_))):
            raise ValueError("couplings must be finite")
        object.__setattr__(self, "omega_p", op)
        object.__setattr__(self, "omega_s", os_)

    @property
    def n_levels(self) -> int:
        return self.omega_p.size

    def dot_ps(self) -> complex:
        """omega_p . omega_s* (conjugated dot product)."""
        return complex(np.sum(self.omega_p * np.conj(self.omega_s)))

    def norm_p(self) -> float:
        return float(np.linalg.norm(self.omega_p))

    def norm_s(self) -> float:
        return float(np.linalg.norm(self.omega_s))


@dataclass(frozen=True)
class DetuningSet:
    """Single-photon detuning Delta, two-photon detuning delta, optional
    per-level single-photon detunings (all rad/s)."""

    Delta: float
    delta: float = 0.0
    per_level_Delta: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.Delta == 0.0:
            raise ValueError("single-photon detuning Delta must be nonzero")
        if self.per_level_Delta is not None:
            arr = np.asarray(self.per_level_Delta, dtype=float)
            if np.any(np.sign(arr) != np.sign(self.Delta)):
                raise ValueError("per-level detunings must share the sign of Delta")
            object.__setattr__(self, "per_level_Delta", arr)


@dataclass(frozen=True)
class EffectiveTwoLevel:
    """Derived effective two-level quantities (angles in rad, rates in rad/s).

    OmegaB is stored non-negative; for Delta < 0 the sign of the raw
    coupling formula is absorbed into the phase convention phi.
    """

    OmegaB: float
    DeltaB: float
    OmegaB_tilde: float
    theta: float
    theta2: float
    DeltaD: float
    OmegaD_tilde: float
    phi: float


@dataclass(frozen=True)
class AmplitudePair:
    """Bare interaction-picture amplitudes of the two ground states."""

    a0: complex
    a1: complex

    @property
    def populations(self) -> tuple[float, float]:
        return abs(self.a0) ** 2, abs(self.a1) ** 2

    def norm_sq(self) -> float:
        return abs(self.a0) ** 2 + abs(self.a1) ** 2


def effective_rabi(couplings: CouplingVectors, detuning: DetuningSet) -> float:
    """Effective Rabi frequency |omega_p . omega_s*| / (2 Delta).

    Follows the sign of Delta; magnitudes alone drive populations.
    """
    return abs(couplings.dot_ps()) / (2.0 * detuning.Delta)


def lightshift(couplings: CouplingVectors, detuning: DetuningSet) -> float:
    """Lightshift (||omega_s||^2 - ||omega_p||^2) / (4 Delta)."""
    return (couplings.norm_s() ** 2 - couplings.norm_p() ** 2) / (4.0 * detuning.Delta)


def mixing_angles(couplings: CouplingVectors, detuning: DetuningSet) -> EffectiveTwoLevel:
    """All effective two-level quantities for the given couplings and detunings.

    theta satisfies tan(theta) = (Delta_B - Omega~_B)/Omega_B, computed
    with atan2 so the Omega_B = 0 limit is continuous; theta2 satisfies
    tan(2 theta2) = delta sin(2 theta) / (Omega~_B - delta cos(2 theta))
    with 2 theta2 in (-pi, pi].
    """
    dot = couplings.dot_ps()
    omega_b = abs(dot) / (2.0 * abs(detuning.Delta))
    delta_b = lightshift(couplings, detuning)
    omega_b_tilde = math.hypot(omega_b, delta_b)
    theta = math.atan2(delta_b - omega_b_tilde, omega_b)

    delta = detuning.delta
    theta2 = 0.5 * math.atan2(
        delta * math.sin(2.0 * theta),
        omega_b_tilde - delta * math.cos(2.0 * theta),
    )
    delta_d = delta_b - delta
    phi = -cmath.phase(dot) if dot != 0 else 0.0
    if detuning.Delta < 0:
        # |dot|/(2 Delta) < 0: fold the sign into the coupling phase
        phi = math.remainder(phi + math.pi, 2.0 * math.pi)
    return EffectiveTwoLevel(
        OmegaB=omega_b,
        DeltaB=delta_b,
        OmegaB_tilde=omega_b_tilde,
        theta=theta,
        theta2=theta2,
        DeltaD=delta_d,
        OmegaD_tilde=math.hypot(omega_b, delta_d),
        phi=phi,
    )


def evolve_amplitudes(initial: AmplitudePair, eff: EffectiveTwoLevel,
                      delta: float, t: float) -> AmplitudePair:
    """Bare ground-state amplitudes after constant illumination for time t.

    Explicit closed form of the effective two-level evolution with
    Omega_D = Omega_B and Delta_D = Delta_B - delta; A1 carries the
    e^(-i delta t) frame factor.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    omega_d = eff.OmegaB
    delta_d = eff.DeltaB - delta
    omega_tilde = math.hypot(omega_d, delta_d)
    if omega_tilde == 0.0:
        return AmplitudePair(initial.a0, initial.a1 * cmath.exp(-1j * delta * t))

    half = 0.5 * omega_tilde * t
    c = math.cos(half)
    s = math.sin(half)
    cd = delta_d / omega_tilde
    co = omega_d / omega_tilde
    a0 = initial.a0 * (c - 1j * cd * s) + initial.a1 * 1j * co * s
    a1 = (initial.a1 * (c + 1j * cd * s) + initial.a0 * 1j * co * s) * cmath.exp(-1j * delta * t)
    return AmplitudePair(a0, a1)


def evolve_via_chain(initial: AmplitudePair, eff: EffectiveTwoLevel,
                     delta: float, t: float) -> AmplitudePair:
    """Same evolution through the explicit transformation chain.

    Rotate by theta + theta2 into the doubly dressed basis, apply pure
    phase evolution exp(-+ i Omega~_D t / 2) (the symmetric phase
    reference, which is what the explicit amplitude formulas use), and
    rotate back, restoring the e^(-i delta t) frame factor on A1.
    Kept separate from evolve_amplitudes as a redundant verification path.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    th = eff.theta + eff.theta2
    c, s = math.cos(th), math.sin(th)
    rot = np.array([[c, s], [-s, c]])
    omega_tilde = math.hypot(eff.OmegaB, eff.DeltaB - delta)
    phases = np.array([cmath.exp(-0.5j * omega_tilde * t),
                       cmath.exp(+0.5j * omega_tilde * t)])
    frame = np.array([1.0, cmath.exp(-1j * delta * t)])

    vec = np.array([initial.a0, initial.a1], dtype=complex)
    dressed = rot @ vec
    dressed *= phases
    bare = rot.T @ dressed
    bare *= frame
    return AmplitudePair(complex(bare[0]), complex(bare[1]))


def envelope(eff: EffectiveTwoLevel) -> float:
    """Upper bound m on the peak-to-peak population oscillation.

    m = Omega_B / sqrt(Omega_B^2 + Delta_D^2); squared, this is the
    power-broadened Lorentzian envelope of the transfer probability.
    Returns 0 when Omega_B = 0 (including the doubly degenerate case).
    """
    if eff.OmegaB == 0.0:
        return 0.0
    return eff.OmegaB / math.hypot(eff.OmegaB, eff.DeltaD)


@dataclass(frozen=True)
class RegimeCriterion:
    name: str
    margin: float
    required: float

    @property
    def passed(self) -> bool:
        return self.margin >= self.required


@dataclass(frozen=True)
class RegimeReport:
    """Validity findings for the far-detuned Raman treatment."""

    criteria: tuple[RegimeCriterion, ...]
    spread_fraction: float | None = None
    spread_tolerance: float = 0.1
    warnings: tuple[str, ...] = field(default_factory=tuple)

    @property
    def spread_ok(self) -> bool:
        return self.spread_fraction is None or self.spread_fraction <= self.spread_tolerance

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.criteria) and self.spread_ok

    def lines(self) -> list[str]:
        out = [
            f"{c.name}: margin {c.margin:.3g} (required >= {c.required:.3g}) "
            f"{'PASS' if c.passed else 'FAIL'}"
            for c in self.criteria
        ]
        if self.spread_fraction is not None:
            out.append(
                f"per-level detuning spread / |Delta|: {self.spread_fraction:.3g} "
                f"(tolerance {self.spread_tolerance:.3g}) "
                f"{'PASS' if self.spread_ok else 'FAIL'}"
            )
        return out


def regime_check(couplings: CouplingVectors, detuning: DetuningSet,
                 omega10: float, margin: float = 10.0,
                 spread_tolerance: float = 0.1) -> RegimeReport:
    """Check the validity conditions of the effective two-level reduction.

    The three criteria - |Delta| >> ||omega||, |Delta +- omega10| >>
    ||omega||, and omega10 >> ||omega|| - pass when their margin ratio
    meets `margin` (default 10).  A spread of per-level detunings larger
    than `spread_tolerance * |Delta|` is flagged as a warning.  Always
    returns a report; callers decide what to do with failures.
    """
    if omega10 <= 0:
        raise ValueError("ground splitting omega10 must be positive")
    strength = max(couplings.norm_p(), couplings.norm_s())
    if strength == 0.0:
        strength = float("inf")  # margins are infinite for zero coupling

    def ratio(value: float) -> float:
        if math.isinf(strength):
            return math.inf
        return abs(value) / strength

    criteria = (
        RegimeCriterion("single-photon detuning |Delta| >> max coupling norm",
                        ratio(detuning.Delta), margin),
        RegimeCriterion("other-leg detunings |Delta +- omega10| >> max coupling norm",
                        min(ratio(detuning.Delta + omega10), ratio(detuning.Delta - omega10)),
                        margin),
        RegimeCriterion("ground-state resolution omega10 >> max coupling norm",
                        ratio(omega10), margin),
    )

    spread_fraction = None
    warnings: list[str] = []
    if detuning.per_level_Delta is not None and detuning.per_level_Delta.size > 0:
        spread = float(np.ptp(detuning.per_level_Delta))
        spread_fraction = spread / abs(detuning.Delta)
        if spread_fraction > spread_tolerance:
            warnings.append(
                f"per-level detuning spread {spread:.3g} rad/s exceeds "
                f"{spread_tolerance:.0%} of |Delta|; the common-detuning "
                "approximation degrades"
            )
    return RegimeReport(criteria, spread_fraction, spread_tolerance, tuple(warnings))
