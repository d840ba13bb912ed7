"""Geometric dipole factors for alkali-metal Raman transitions.

The coupling of a ground hyperfine Zeeman sublevel |I J F mF> to an
excited sublevel |I J' F' mF+q> by light of polarization q factors into
a reduced matrix element (physics of the atom) times a purely geometric
coefficient G built from one Wigner 3-j and one 6-j symbol.  This module
computes G, assembles per-F' vectors of it for the pump (F = I - 1/2)
and Stokes (F = I + 1/2) branches, and provides the closed forms for
||G||^2 and |G_P . G_S| that the vector sums must reproduce.

Closed forms are evaluated in exact rational arithmetic so tables can be
emitted as exact "sqrt(n)/d" entries.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import constants

from .angular import HalfInt, triangle_ok, wigner_3j, wigner_6j

__all__ = [
    "AngularMomentumState",
    "Branch",
    "GeometricVector",
    "SqrtRational",
    "check_polarization",
    "coupling_vector",
    "g_dot_closed",
    "g_dot_exact",
    "g_dot_sq_exact",
    "g_norm_sq_closed",
    "g_norm_sq_exact",
    "geometric_factor",
    "reduced_dipole_from_linewidth",
    "triangular",
]


def check_polarization(q: int) -> int:
    if q not in (-1, 0, 1):
        raise ValueError(f"polarization must be -1, 0 or +1, got {q!r}")
    return q


class Branch(enum.Enum):
    """Which hyperfine ground state a coupling vector starts from."""

    PUMP = "pump"      # F = I - 1/2
    STOKES = "stokes"  # F = I + 1/2

    def f_twice(self, nuclear_spin: HalfInt) -> int:
        return nuclear_spin.twice + (1 if self is Branch.STOKES else -1)


@dataclass(frozen=True)
class AngularMomentumState:
    """Hyperfine Zeeman sublevel |I J F mF>."""

    I: HalfInt
    J: HalfInt
    F: HalfInt
    mF: HalfInt

    def __post_init__(self) -> None:
        object.__setattr__(self, "I", HalfInt.of(self.I))
        object.__setattr__(self, "J", HalfInt.of(self.J))
        object.__setattr__(self, "F", HalfInt.of(self.F))
        object.__setattr__(self, "mF", HalfInt.of(self.mF))
        if not triangle_ok(self.I, self.J, self.F):
            raise ValueError(f"F={self.F} incompatible with I={self.I}, J={self.J}")
        if abs(self.mF.twice) > self.F.twice or (self.F.twice - self.mF.twice) % 2:
            raise ValueError(f"mF={self.mF} invalid for F={self.F}")


@dataclass(frozen=True)
class GeometricVector:
    """Geometric factors over the excited manifold, ordered by ascending F'.

    Entries that violate the m-selection rule are kept as explicit zeros
    so pump and Stokes vectors align index-by-index.
    """

    fprimes: tuple[HalfInt, ...]
    values: np.ndarray
    branch: Branch

    def dot(self, other: "GeometricVector") -> float:
        if self.fprimes != other.fprimes:
            raise ValueError("vectors span different excited manifolds")
        return float(np.dot(self.values, other.values))

    def norm_sq(self) -> float:
        return float(np.dot(self.values, self.values))

    def __len__(self) -> int:
        return len(self.values)


def geometric_factor(ground: AngularMomentumState, excited: AngularMomentumState,
                     q: int) -> float:
    """Geometric part G of the dipole matrix element <excited|mu|ground>.

    G = (-1)^(2F'+J+I+mF) sqrt((2F'+1)(2F+1)(2J+1))
        * 3j(F' 1 F; -mF' q mF) * 6j(J J' 1; F' F I)

    The 3-j m-slots carry (-mF', q, mF) so the symbol survives its own
    selection rule for mF' = mF + q; the alternative (mF', -q, -mF)
    differs only by a sign common to every F', so norms and dot-product
    magnitudes are unaffected.  Returns 0.0 whenever a selection rule
    makes the 3-j or 6-j vanish.
    """
    check_polarization(q)
    if excited.I != ground.I:
        raise ValueError("ground and excited states must share the nuclear spin")
    if excited.mF.twice != ground.mF.twice + 2 * q:
        raise ValueError(
            f"excited mF={excited.mF} is not ground mF={ground.mF} shifted by q={q}"
        )

    exponent_twice = 2 * excited.F.twice + ground.J.twice + ground.I.twice + ground.mF.twice
    if exponent_twice % 2:
        raise ValueError("phase exponent 2F'+J+I+mF is not an integer")
    phase = -1.0 if (exponent_twice // 2) % 2 else 1.0

    three = wigner_3j(excited.F, HalfInt(2), ground.F,
                      -excited.mF, HalfInt(2 * q), ground.mF)
    if three == 0.0:
        return 0.0
    six = wigner_6j(ground.J, excited.J, HalfInt(2),
                    excited.F, ground.F, ground.I)
    if six == 0.0:
        return 0.0
    scale = math.sqrt(
        (excited.F.twice + 1) * (ground.F.twice + 1) * (ground.J.twice + 1)
    )
    return phase * scale * three * six


def coupling_vector(ground: AngularMomentumState, q: int, jprime) -> GeometricVector:
    """Geometric factors from `ground` to every F' of the J' manifold."""
    check_polarization(q)
    jp = HalfInt.of(jprime)
    if ground.J.twice != 1:
        raise ValueError("coupling vectors are defined for J = 1/2 ground states")
    tI = ground.I.twice
    if ground.F.twice == tI + 1:
        branch = Branch.STOKES
    elif ground.F.twice == tI - 1:
        branch = Branch.PUMP
    else:
        raise ValueError(f"F={ground.F} is not I +- 1/2 for I={ground.I}")

    fprimes = []
    values = []
    tmF_exc = ground.mF.twice + 2 * q
    for tfp in range(abs(jp.twice - tI), jp.twice + tI + 1, 2):
        fp = HalfInt(tfp)
        fprimes.append(fp)
        if abs(tmF_exc) > tfp:
            values.append(0.0)
            continue
        excited = AngularMomentumState(ground.I, jp, fp, HalfInt(tmF_exc))
        values.append(geometric_factor(ground, excited, q))
    return GeometricVector(tuple(fprimes), np.array(values), branch)


def _line_coeff(jprime) -> int:
    """Slope coefficient of the closed forms: -2 on D1 (J'=1/2), +1 on D2 (J'=3/2)."""
    jp = HalfInt.of(jprime)
    if jp.twice == 1:
        return -2
    if jp.twice == 3:
        return 1
    raise ValueError(f"J'={jp} unsupported; closed forms exist for J' = 1/2 or 3/2")


def g_norm_sq_exact(nuclear_spin, branch: Branch, mF, q: int, jprime) -> Fraction:
    """||G||^2 as an exact rational: (1 +- a q mF / (2I+1)) / 3.

    The + sign applies to the Stokes branch (F = I + 1/2), the - sign to
    the pump branch, with a = -2 for J' = 1/2 and a = +1 for J' = 3/2.
    """
    check_polarization(q)
    a = _line_coeff(jprime)
    tI = HalfInt.of(nuclear_spin).twice
    tmF = HalfInt.of(mF).twice
    tF = branch.f_twice(HalfInt(tI))
    if tF < 0 or abs(tmF) > tF or (tF - tmF) % 2:
        raise ValueError(f"mF={HalfInt(tmF)} outside the {branch.value} branch for I={HalfInt(tI)}")
    sign = 1 if branch is Branch.STOKES else -1
    return Fraction(1, 3) * (1 + sign * Fraction(a * q * tmF, 2 * (tI + 1)))


def g_norm_sq_closed(nuclear_spin, branch: Branch, mF, q: int, jprime) -> float:
    return float(g_norm_sq_exact(nuclear_spin, branch, mF, q, jprime))


def triangular(n: int) -> int:
    """The n-th triangular number n(n+1)/2."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return n * (n + 1) // 2


def _g_dot_radicand(nuclear_spin, mF, q_pump: int, q_stokes: int, jprime) -> tuple[int, int]:
    """(radicand, denominator) with |G_P . G_S| = sqrt(radicand) / denominator."""
    check_polarization(q_pump)
    check_polarization(q_stokes)
    a = _line_coeff(jprime)
    tI = HalfInt.of(nuclear_spin).twice
    tmF = HalfInt.of(mF).twice
    if abs(tmF) > tI - 1 or (tI - 1 - tmF) % 2:
        raise ValueError(f"mF={HalfInt(tmF)} outside the pump branch for I={HalfInt(tI)}")

    pair = (q_pump, q_stokes)
    if pair in ((1, 1), (-1, -1)):
        # symmetric about mF = 0, so the (-1,-1) mirror is identical
        kappa4 = (tI + 1) ** 2 - tmF**2
        if kappa4 % 4:
            raise AssertionError("(I+1/2)^2 - mF^2 must be an integer here")
        kappa = kappa4 // 4
    elif pair in ((0, 1), (0, -1)):
        # (0,-1) follows from (0,1) under mF -> -mF
        tm = tmF if pair == (0, 1) else -tmF
        kappa = triangular((tI + 1 - tm) // 2)
    else:
        raise ValueError(
            f"closed form unavailable for (qP, qS)={pair}; supported: "
            "(1,1), (-1,-1), (0,1), (0,-1).  Use the coupling-vector path "
            "for other polarization pairs."
        )
    return a * a * kappa, 3 * (tI + 1)


def g_dot_sq_exact(nuclear_spin, mF, q_pump: int, q_stokes: int, jprime) -> Fraction:
    """|G_P . G_S|^2 as an exact rational, for the supported polarization pairs."""
    radicand, den = _g_dot_radicand(nuclear_spin, mF, q_pump, q_stokes, jprime)
    return Fraction(radicand, den * den)


def g_dot_closed(nuclear_spin, mF, q_pump: int, q_stokes: int, jprime) -> float:
    radicand, den = _g_dot_radicand(nuclear_spin, mF, q_pump, q_stokes, jprime)
    return math.sqrt(radicand) / den


@dataclass(frozen=True)
class SqrtRational:
    """Exact value sqrt(radicand)/denominator, kept unreduced for display."""

    radicand: int
    denominator: int

    def __float__(self) -> float:
        return math.sqrt(self.radicand) / self.denominator

    def __str__(self) -> str:
        return f"sqrt({self.radicand})/{self.denominator}"

    def squared(self) -> Fraction:
        return Fraction(self.radicand, self.denominator**2)


def g_dot_exact(nuclear_spin, mF, q_pump: int, q_stokes: int, jprime) -> SqrtRational:
    """|G_P . G_S| as an exact sqrt(n)/d value (Table-style entries)."""
    radicand, den = _g_dot_radicand(nuclear_spin, mF, q_pump, q_stokes, jprime)
    return SqrtRational(radicand, den)


def reduced_dipole_from_linewidth(gamma: float, wavelength: float, j, jprime) -> float:
    """Reduced dipole matrix element <J||mu||J'> in C m from the measured
    natural linewidth (rad/s) and vacuum wavelength (m) of the transition.

    Inverts  Gamma = 16 pi^3 / (3 eps0 h lambda^3) * (2J+1)/(2J'+1) * mu^2.
    """
    if gamma <= 0 or wavelength <= 0:
        raise ValueError("linewidth and wavelength must be positive")
    tj = HalfInt.of(j).twice
    tjp = HalfInt.of(jprime).twice
    mu_sq = (
        3 * constants.epsilon_0 * constants.h * wavelength**3 * gamma
        / (16 * math.pi**3)
        * (tjp + 1) / (tj + 1)
    )
    return math.sqrt(mu_sq)
