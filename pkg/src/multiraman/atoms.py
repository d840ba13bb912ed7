"""Alkali-atom catalog and physical-unit assembly of Raman couplings.

Loads D-line data from a plain-text catalog, enumerates the Zeeman
sublevel pairs that a given polarization pair Raman-couples (angular
momentum conservation pairs each lower sublevel with at most one upper
sublevel), converts field amplitudes to coupling vectors through the
reduced dipole moment, and evaluates the per-pair effective quantities.

Cesium D2 with (qP, qS) = (1, 1) reproduces the canonical 7-row table of
|G_P.G_S|, ||G_S||^2, ||G_P||^2 in exact n/24 and sqrt(n)/24 form.
"""

from __future__ import annotations

import importlib.resources
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import constants

from .angular import HalfInt
from .dynamics import CouplingVectors, DetuningSet, effective_rabi, envelope, lightshift, mixing_angles
from .geometry import (
    AngularMomentumState,
    Branch,
    SqrtRational,
    check_polarization,
    coupling_vector,
    g_dot_exact,
    g_norm_sq_exact,
    reduced_dipole_from_linewidth,
)

__all__ = [
    "AtomSpec",
    "FieldSpec",
    "LineSpec",
    "RamanPair",
    "SpectrumRow",
    "TableRow",
    "builtin_atoms",
    "enumerate_pairs",
    "get_atom",
    "load_atoms",
    "physical_couplings",
    "spectrum",
    "table_one",
    "table_rows",
]

_DATA_RESOURCE = "alkali_atoms.txt"


@dataclass(frozen=True)
class LineSpec:
    """One D line: label, excited J', vacuum wavelength (m), linewidth (rad/s)."""

    label: str
    jprime: HalfInt
    wavelength: float
    linewidth: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "jprime", HalfInt.of(self.jprime))
        expected = {"D1": 1, "D2": 3}.get(self.label)
        if expected is None:
            raise ValueError(f"unknown line label {self.label!r}")
        if self.jprime.twice != expected:
            raise ValueError(f"{self.label} requires J' = {expected}/2, got {self.jprime}")
        if self.wavelength <= 0 or self.linewidth <= 0:
            raise ValueError("wavelength and linewidth must be positive")

    def reduced_dipole(self) -> float:
        return reduced_dipole_from_linewidth(
            self.linewidth, self.wavelength, Fraction(1, 2), self.jprime
        )


@dataclass(frozen=True)
class AtomSpec:
    """Alkali atom: nuclear spin, D lines, ground hyperfine splitting (rad/s)."""

    name: str
    nuclear_spin: HalfInt
    lines: tuple[LineSpec, ...]
    ground_splitting: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "nuclear_spin", HalfInt.of(self.nuclear_spin))
        object.__setattr__(self, "lines", tuple(self.lines))
        if self.ground_splitting <= 0:
            raise ValueError("ground splitting must be positive")

    def line(self, label: str) -> LineSpec:
        for line in self.lines:
            if line.label == label:
                return line
        raise KeyError(f"{self.name} has no {label!r} line")

    @property
    def f_lower(self) -> HalfInt:
        return HalfInt(self.nuclear_spin.twice - 1)

    @property
    def f_upper(self) -> HalfInt:
        return HalfInt(self.nuclear_spin.twice + 1)


@dataclass(frozen=True)
class FieldSpec:
    """Complex field amplitude (V/m) and spherical polarization component.

    Zero amplitude is allowed (it yields a zero coupling vector, the
    single-field limit).
    """

    amplitude: complex
    polarization: int

    def __post_init__(self) -> None:
        check_polarization(self.polarization)


@dataclass(frozen=True)
class RamanPair:
    """A lower (F = I - 1/2) and upper (F = I + 1/2) Zeeman sublevel coupled
    by one polarization pair; mF_upper = mF_lower + qP - qS."""

    lower: AngularMomentumState
    upper: AngularMomentumState

    def __post_init__(self) -> None:
        if self.lower.I != self.upper.I:
            raise ValueError("pair members must share the nuclear spin")
        tI = self.lower.I.twice
        if self.lower.F.twice != tI - 1 or self.upper.F.twice != tI + 1:
            raise ValueError("pair must couple F = I - 1/2 to F = I + 1/2")


def _parse_atom_records(text: str) -> dict[str, AtomSpec]:
    atoms: dict[str, AtomSpec] = {}
    current: dict | None = None
    lines_acc: list[dict] = []

    def finish() -> None:
        nonlocal current, lines_acc
        if current is None:
            return
        specs = tuple(
            LineSpec(d["label"], HalfInt(int(d["jprime_x2"])),
                     float(d["wavelength_m"]), float(d["linewidth_rad_s"]))
            for d in lines_acc
        )
        atoms[current["atom"]] = AtomSpec(
            name=current["atom"],
            nuclear_spin=HalfInt(int(current["nuclear_spin_x2"])),
            lines=specs,
            ground_splitting=float(current["ground_splitting_rad_s"]),
        )
        current = None
        lines_acc = []

    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"malformed catalog line: {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key == "version":
            if int(value) != 1:
                raise ValueError(f"unsupported catalog version {value}")
        elif key == "atom":
            finish()
            current = {"atom": value}
        elif key.startswith("line."):
            if current is None:
                raise ValueError("line.* key before any atom record")
            sub = key[len("line."):]
            if sub == "label":
                lines_acc.append({"label": value})
            elif not lines_acc:
                raise ValueError(f"{key} before line.label")
            else:
                lines_acc[-1][sub] = value
        else:
            if current is None:
                raise ValueError(f"{key} before any atom record")
            current[key] = value
    finish()
    return atoms


def load_atoms(path=None) -> dict[str, AtomSpec]:
    """Atom catalog from `path`, or the packaged data file by default."""
    if path is None:
        text = (
            importlib.resources.files("multiraman")
            .joinpath("data", _DATA_RESOURCE)
            .read_text()
        )
    else:
        with open(path) as fh:
            text = fh.read()
    return _parse_atom_records(text)


def builtin_atoms() -> list[AtomSpec]:
    return list(load_atoms().values())


def get_atom(name: str, path=None) -> AtomSpec:
    atoms = load_atoms(path)
    try:
        return atoms[name]
    except KeyError:
        raise KeyError(
            f"unknown atom {name!r}; catalog has {sorted(atoms)}"
        ) from None


def enumerate_pairs(atom: AtomSpec, q_pump: int, q_stokes: int) -> list[RamanPair]:
    """All Raman-coupled sublevel pairs for one polarization pair,
    ascending in the lower-state mF."""
    check_polarization(q_pump)
    check_polarization(q_stokes)
    tI = atom.nuclear_spin.twice
    shift = 2 * (q_pump - q_stokes)
    pairs = []
    for tm_low in range(-(tI - 1), tI, 2):
        tm_up = tm_low + shift
        if abs(tm_up) > tI + 1:
            continue
        lower = AngularMomentumState(atom.nuclear_spin, Fraction(1, 2),
                                     atom.f_lower, HalfInt(tm_low))
        upper = AngularMomentumState(atom.nuclear_spin, Fraction(1, 2),
                                     atom.f_upper, HalfInt(tm_up))
        pairs.append(RamanPair(lower, upper))
    return pairs


def physical_couplings(atom: AtomSpec, line: str | LineSpec, pair: RamanPair,
                       pump: FieldSpec, stokes: FieldSpec) -> CouplingVectors:
    """Coupling vectors Omega_(P,S) = E mu G / hbar over the excited manifold.

    Selection-rule zeros in the geometric vectors pass through silently;
    an inconsistent (pair, polarizations) combination raises.
    """
    if isinstance(line, str):
        line = atom.line(line)
    if pair.upper.mF.twice - pair.lower.mF.twice != 2 * (pump.polarization - stokes.polarization):
        raise ValueError("pair does not match the field polarizations")
    mu = line.reduced_dipole()
    g_p = coupling_vector(pair.lower, pump.polarization, line.jprime)
    g_s = coupling_vector(pair.upper, stokes.polarization, line.jprime)
    omega_p = pump.amplitude * mu * g_p.values / constants.hbar
    omega_s = stokes.amplitude * mu * g_s.values / constants.hbar
    return CouplingVectors(omega_p, omega_s)


@dataclass(frozen=True)
class SpectrumRow:
    mF: HalfInt
    OmegaB: float
    DeltaB: float
    envelope: float


def spectrum(atom: AtomSpec, line: str | LineSpec, q_pump: int, q_stokes: int,
             pump: FieldSpec, stokes: FieldSpec,
             detuning: DetuningSet) -> list[SpectrumRow]:
    """Per-pair effective Rabi frequency, lightshift, and envelope at the
    configured two-photon detuning, indexed by the lower-state mF."""
    rows = []
    for pair in enumerate_pairs(atom, q_pump, q_stokes):
        couplings = physical_couplings(atom, line, pair, pump, stokes)
        eff = mixing_angles(couplings, detuning)
        rows.append(SpectrumRow(
            mF=pair.lower.mF,
            OmegaB=effective_rabi(couplings, detuning),
            DeltaB=lightshift(couplings, detuning),
            envelope=envelope(eff),
        ))
    return rows


@dataclass(frozen=True)
class TableRow:
    """Exact geometric entries for one lower-state mF."""

    mF: HalfInt
    g_dot: SqrtRational
    gs_norm_sq: Fraction
    gp_norm_sq: Fraction

    def exact_strings(self, denominator: int) -> tuple[str, str, str]:
        """Entries as unreduced strings over the given denominator,
        matching the customary sqrt(n)/24, n/24 presentation."""
        def over(fr: Fraction) -> str:
            scaled = fr * denominator
            if scaled.denominator != 1:
                raise ValueError(f"{fr} is not a multiple of 1/{denominator}")
            return f"{scaled.numerator}/{denominator}"

        return (str(self.g_dot), over(self.gs_norm_sq), over(self.gp_norm_sq))


def table_rows(atom: AtomSpec, line: str | LineSpec = "D2",
               q_pump: int = 1, q_stokes: int = 1) -> list[TableRow]:
    """Exact |G_P.G_S|, ||G_S||^2, ||G_P||^2 per lower-state mF.

    Available for the polarization pairs with closed forms: (1,1),
    (-1,-1), (0,1), (0,-1).
    """
    if isinstance(line, str):
        line = atom.line(line)
    spin = atom.nuclear_spin
    rows = []
    for pair in enumerate_pairs(atom, q_pump, q_stokes):
        rows.append(TableRow(
            mF=pair.lower.mF,
            g_dot=g_dot_exact(spin, pair.lower.mF, q_pump, q_stokes, line.jprime),
            gs_norm_sq=g_norm_sq_exact(spin, Branch.STOKES, pair.upper.mF,
                                       q_stokes, line.jprime),
            gp_norm_sq=g_norm_sq_exact(spin, Branch.PUMP, pair.lower.mF,
                                       q_pump, line.jprime),
        ))
    return rows


def table_one(atom: AtomSpec) -> list[TableRow]:
    """The canonical D2, (qP, qS) = (1, 1) table (7 rows for cesium)."""
    return table_rows(atom, "D2", 1, 1)
