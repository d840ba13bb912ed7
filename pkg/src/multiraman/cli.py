"""Command-line front end.

Subcommands: `table` (exact geometric table), `spectrum` (per-mF
effective quantities, or the coupling-vs-mF illustration data with
--fig2), `evolve` (analytic time series, optionally with the RK4 oracle
side by side), `validate` (regime report), `eigs` (closed-form vs
numerical eigenvalues).

Config files are plain `key = value` text; every key has a matching
command-line flag and flags win.  Frequencies are accepted in Hz and
converted to rad/s at this boundary; everything inside the library is
angular.  Data goes to stdout (or --output) as CSV or JSON with no
prose; warnings go to stderr.  Exit codes: 0 success, 1 usage/config
error, 2 numerical failure, 3 regime failure under --strict.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, fields as dataclass_fields

import numpy as np
from scipy import constants

from .angular import HalfInt
from .atoms import FieldSpec, enumerate_pairs, get_atom, physical_couplings, spectrum, table_rows
from .dynamics import (
    AmplitudePair,
    DetuningSet,
    evolve_amplitudes,
    mixing_angles,
    regime_check,
)
from .eigensystem import (
    build_interaction_hamiltonian,
    finite_eigenvalues,
    numeric_eigensystem,
    scale_system,
)
from .geometry import g_dot_closed
from .oracle import IntegrationError, integrate, interaction_drive

__all__ = ["main"]


class UsageError(Exception):
    """Bad flags or config; maps to exit code 1."""


class RegimeFailure(Exception):
    """Regime criteria failed under --strict; maps to exit code 3."""


@dataclass
class RunConfig:
    atom: str | None = None
    line: str = "D2"
    qp: int = 1
    qs: int = 1
    pump_field_v_m: float | None = None
    stokes_field_v_m: float | None = None
    pump_intensity_w_m2: float | None = None
    stokes_intensity_w_m2: float | None = None
    delta_hz: float | None = None
    two_photon_hz: float = 0.0
    mf: float = 0.0
    t_final_s: float | None = None
    samples: int = 201
    format: str = "csv"
    output: str | None = None
    exact: bool = False
    oracle: bool = False
    strict: bool = False
    fig2: bool = False
    seed: int = 0
    random_n: int | None = None
    coupling_scale: float = 0.005
    delta_scaled: float = 100.0

    def detuning(self, require: bool = True) -> DetuningSet | None:
        if self.delta_hz is None:
            if require:
                raise UsageError("--delta-hz (single-photon detuning) is required")
            return None
        if self.delta_hz == 0:
            raise UsageError("--delta-hz must be nonzero")
        return DetuningSet(Delta=2 * math.pi * self.delta_hz,
                           delta=2 * math.pi * self.two_photon_hz)

    def field(self, which: str) -> FieldSpec:
        amp = getattr(self, f"{which}_field_v_m")
        inten = getattr(self, f"{which}_intensity_w_m2")
        if (amp is None) == (inten is None):
            raise UsageError(
                f"give exactly one of --{which}-field (V/m) or "
                f"--{which}-intensity (W/m^2)"
            )
        if inten is not None:
            if inten < 0:
                raise UsageError(f"{which} intensity must be >= 0")
            amp = math.sqrt(2.0 * inten / (constants.epsilon_0 * constants.c))
        pol = self.qp if which == "pump" else self.qs
        return FieldSpec(complex(amp), pol)


_BOOL_KEYS = {"exact", "oracle", "strict", "fig2"}
_INT_KEYS = {"qp", "qs", "samples", "seed", "random_n"}
_STR_KEYS = {"atom", "line", "format", "output"}
_CONFIG_KEYS = {f.name for f in dataclass_fields(RunConfig)}


def _parse_config_file(path: str) -> dict:
    values: dict = {}
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected `key = value`, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        if key in _BOOL_KEYS:
            lowered = value.lower()
            if lowered in ("1", "true", "yes", "on"):
                values[key] = True
            elif lowered in ("0", "false", "no", "off"):
                values[key] = False
            else:
                raise UsageError(f"{path}:{lineno}: boolean expected for {key}")
        elif key in _INT_KEYS:
            values[key] = int(value)
        elif key in _STR_KEYS:
            values[key] = value
        else:
            values[key] = float(value)
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multiraman",
        description="Effective two-level quantities for multilevel stimulated "
                    "Raman transitions, with a brute-force integrator cross-check.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="key = value config file; flags override")
        p.add_argument("--atom", help="catalog atom name (e.g. Cs)")
        p.add_argument("--line", choices=["D1", "D2"], help="D line (default D2)")
        p.add_argument("--qp", type=int, choices=[-1, 0, 1], help="pump polarization")
        p.add_argument("--qs", type=int, choices=[-1, 0, 1], help="Stokes polarization")
        p.add_argument("--pump-field", dest="pump_field_v_m", type=float,
                       help="pump field amplitude, V/m")
        p.add_argument("--stokes-field", dest="stokes_field_v_m", type=float,
                       help="Stokes field amplitude, V/m")
        p.add_argument("--pump-intensity", dest="pump_intensity_w_m2", type=float,
                       help="pump intensity, W/m^2")
        p.add_argument("--stokes-intensity", dest="stokes_intensity_w_m2", type=float,
                       help="Stokes intensity, W/m^2")
        p.add_argument("--delta-hz", dest="delta_hz", type=float,
                       help="single-photon detuning, Hz")
        p.add_argument("--two-photon-hz", dest="two_photon_hz", type=float,
                       help="two-photon detuning, Hz")
        p.add_argument("--mf", type=float, help="lower-state mF selecting the pair")
        p.add_argument("--format", choices=["csv", "json"], help="output format")
        p.add_argument("--output", help="write data here instead of stdout")
        p.add_argument("--seed", type=int, help="seed for randomized modes")
        p.add_argument("--strict", action="store_true", default=None,
                       help="exit 3 when regime criteria fail")

    p_table = sub.add_parser("table", help="exact geometric table per mF")
    add_common(p_table)
    p_table.add_argument("--exact", action="store_true", default=None,
                         help="emit exact sqrt(n)/d and n/d strings")

    p_spec = sub.add_parser("spectrum", help="per-mF effective quantities")
    add_common(p_spec)
    p_spec.add_argument("--fig2", action="store_true", default=None,
                        help="emit coupling-vs-mF illustration data over "
                             "nuclear spins 1/2..9/2 instead")

    p_evolve = sub.add_parser("evolve", help="analytic ground-state time series")
    add_common(p_evolve)
    p_evolve.add_argument("--t-final", dest="t_final_s", type=float,
                          help="time span, s")
    p_evolve.add_argument("--samples", type=int, help="number of rows")
    p_evolve.add_argument("--oracle", action="store_true", default=None,
                          help="add RK4 integrator columns")

    p_val = sub.add_parser("validate", help="regime criteria report")
    add_common(p_val)

    p_eigs = sub.add_parser("eigs", help="closed-form vs numerical eigenvalues")
    add_common(p_eigs)
    p_eigs.add_argument("--random-n", dest="random_n", type=int,
                        help="synthetic mode: number of intermediate levels")
    p_eigs.add_argument("--coupling-scale", dest="coupling_scale", type=float,
                        help="synthetic mode: rms scaled coupling (default 0.005)")
    p_eigs.add_argument("--delta-scaled", dest="delta_scaled", type=float,
                        help="synthetic mode: Delta/Omega0 (default 100)")
    return parser


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        for key, value in _parse_config_file(args.config).items():
            setattr(cfg, key, value)
    for field in dataclass_fields(RunConfig):
        value = getattr(args, field.name, None)
        if value is not None:
            setattr(cfg, field.name, value)
    return cfg


def _require_atom(cfg: RunConfig):
    if cfg.atom is None:
        raise UsageError("--atom is required")
    try:
        return get_atom(cfg.atom)
    except KeyError as exc:
        raise UsageError(str(exc)) from exc


def _selected_pair(cfg: RunConfig, atom):
    target = HalfInt.of(cfg.mf)
    for pair in enumerate_pairs(atom, cfg.qp, cfg.qs):
        if pair.lower.mF == target:
            return pair
    raise UsageError(
        f"mF = {target} is not a valid lower-state projection for "
        f"{atom.name} with (qP, qS) = ({cfg.qp}, {cfg.qs})"
    )


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


def _emit(header: list[str], rows: list[list], cfg: RunConfig) -> None:
    if cfg.format == "json":
        lines = []
        for row in rows:
            items = []
            for key, value in zip(header, row):
                if isinstance(value, str):
                    items.append(f"{json.dumps(key)}: {json.dumps(value)}")
                elif isinstance(value, (bool, np.bool_)):
                    items.append(f"{json.dumps(key)}: {'true' if value else 'false'}")
                else:
                    items.append(f"{json.dumps(key)}: {_fmt(value)}")
            lines.append("  {" + ", ".join(items) + "}")
        text = "[\n" + ",\n".join(lines) + "\n]\n"
    else:
        out = [",".join(header)]
        out += [",".join(_fmt(v) for v in row) for row in rows]
        text = "\n".join(out) + "\n"
    if cfg.output:
        with open(cfg.output, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _warn(message: str) -> None:
    print(f"warning: {message}", file=sys.stderr)


def _mf_value(mf: HalfInt):
    return mf.twice // 2 if mf.is_integer else mf.twice / 2


def _check_regime(cfg: RunConfig, atom, couplings, detuning) -> bool:
    report = regime_check(couplings, detuning, atom.ground_splitting)
    for criterion in report.criteria:
        if not criterion.passed:
            _warn(f"regime: {criterion.name} fails "
                  f"(margin {criterion.margin:.3g} < {criterion.required:.3g})")
    for message in report.warnings:
        _warn(message)
    return report.all_passed


def cmd_table(cfg: RunConfig) -> tuple[list[str], list[list]]:
    atom = _require_atom(cfg)
    try:
        rows = table_rows(atom, cfg.line, cfg.qp, cfg.qs)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    header = ["mF", "gdot", "gs_norm_sq", "gp_norm_sq"]
    out = []
    denominator = 3 * (atom.nuclear_spin.twice + 1)
    for row in rows:
        if cfg.exact:
            gdot, gs, gp = row.exact_strings(denominator)
            out.append([str(row.mF), gdot, gs, gp])
        else:
            out.append([_mf_value(row.mF), float(row.g_dot),
                        float(row.gs_norm_sq), float(row.gp_norm_sq)])
    return header, out


def cmd_spectrum(cfg: RunConfig) -> tuple[list[str], list[list]]:
    if cfg.fig2:
        header = ["I_x2", "mF", "gdot_pp", "gdot_zp"]
        out: list[list] = []
        jprime = {"D1": HalfInt(1), "D2": HalfInt(3)}[cfg.line]
        for t_spin in range(1, 10, 2):
            spin = HalfInt(t_spin)
            for tm in range(-(t_spin - 1), t_spin, 2):
                mf = HalfInt(tm)
                out.append([
                    t_spin, _mf_value(mf),
                    g_dot_closed(spin, mf, 1, 1, jprime),
                    g_dot_closed(spin, mf, 0, 1, jprime),
                ])
        return header, out

    atom = _require_atom(cfg)
    detuning = cfg.detuning()
    pump = cfg.field("pump")
    stokes = cfg.field("stokes")
    rows = spectrum(atom, cfg.line, cfg.qp, cfg.qs, pump, stokes, detuning)
    pair = enumerate_pairs(atom, cfg.qp, cfg.qs)[0]
    couplings = physical_couplings(atom, cfg.line, pair, pump, stokes)
    ok = _check_regime(cfg, atom, couplings, detuning)
    if cfg.strict and not ok:
        raise RegimeFailure("regime criteria failed")
    header = ["mF", "OmegaB_rad_s", "DeltaB_rad_s", "envelope"]
    return header, [[_mf_value(r.mF), r.OmegaB, r.DeltaB, r.envelope] for r in rows]


def cmd_evolve(cfg: RunConfig) -> tuple[list[str], list[list]]:
    atom = _require_atom(cfg)
    detuning = cfg.detuning()
    pump = cfg.field("pump")
    stokes = cfg.field("stokes")
    pair = _selected_pair(cfg, atom)
    couplings = physical_couplings(atom, cfg.line, pair, pump, stokes)
    ok = _check_regime(cfg, atom, couplings, detuning)
    if cfg.strict and not ok:
        raise RegimeFailure("regime criteria failed")
    eff = mixing_angles(couplings, detuning)
    if cfg.t_final_s is not None:
        t_final = cfg.t_final_s
    elif eff.OmegaD_tilde > 0:
        t_final = 2 * math.pi / eff.OmegaD_tilde
    else:
        raise UsageError("evolution is static; give --t-final explicitly")
    if cfg.samples < 2:
        raise UsageError("--samples must be >= 2")

    times = np.linspace(0.0, t_final, cfg.samples)
    header = ["t_s", "p0", "p1"]
    rows = []
    for t in times:
        amps = evolve_amplitudes(AmplitudePair(1.0, 0.0), eff, detuning.delta, float(t))
        p0, p1 = amps.populations
        rows.append([float(t), p0, p1])

    if cfg.oracle:
        psi0 = np.zeros(couplings.n_levels + 2, dtype=complex)
        psi0[0] = 1.0
        traj = integrate(interaction_drive(couplings, detuning), psi0, t_final)
        pops = traj.populations
        p0_oracle = np.interp(times, traj.times, pops[:, 0])
        p1_oracle = np.interp(times, traj.times, pops[:, 1])
        header += ["p0_oracle", "p1_oracle"]
        for row, q0, q1 in zip(rows, p0_oracle, p1_oracle):
            row.extend([float(q0), float(q1)])
    return header, rows


def cmd_validate(cfg: RunConfig) -> tuple[list[str], list[list]]:
    atom = _require_atom(cfg)
    detuning = cfg.detuning()
    pump = cfg.field("pump")
    stokes = cfg.field("stokes")
    pair = _selected_pair(cfg, atom)
    couplings = physical_couplings(atom, cfg.line, pair, pump, stokes)
    report = regime_check(couplings, detuning, atom.ground_splitting)
    header = ["criterion", "margin_ratio", "required_ratio", "passed"]
    rows: list[list] = [[c.name, c.margin, c.required, c.passed]
                        for c in report.criteria]
    if report.spread_fraction is not None:
        rows.append(["per-level detuning spread / |Delta|",
                     report.spread_fraction, report.spread_tolerance,
                     report.spread_ok])
    # under --strict, main() inspects the emitted rows and exits 3 on failure
    return header, rows


def cmd_eigs(cfg: RunConfig) -> tuple[list[str], list[list]]:
    from .dynamics import CouplingVectors

    if cfg.random_n is not None:
        if cfg.random_n < 1:
            raise UsageError("--random-n must be >= 1")
        rng = np.random.default_rng(cfg.seed)
        sd = cfg.coupling_scale / math.sqrt(2 * cfg.random_n)
        x = sd * (rng.standard_normal(cfg.random_n) + 1j * rng.standard_normal(cfg.random_n))
        y = sd * (rng.standard_normal(cfg.random_n) + 1j * rng.standard_normal(cfg.random_n))
        couplings = CouplingVectors(2.0 * x, 2.0 * y)  # Omega0 = 1 rad/s
        detuning = DetuningSet(Delta=cfg.delta_scaled, delta=0.0)
    else:
        atom = _require_atom(cfg)
        detuning = cfg.detuning()
        pair = _selected_pair(cfg, atom)
        couplings = physical_couplings(atom, cfg.line, pair,
                                       cfg.field("pump"), cfg.field("stokes"))

    h = build_interaction_hamiltonian(couplings, detuning, 0.0)
    w, _ = numeric_eigensystem(h)
    system = scale_system(couplings, detuning)
    lam_plus, lam_minus = finite_eigenvalues(system)
    # unscaled convention flips the sign of the scaled eigenvalues
    ground_refs = sorted([-system.Omega0 * lam_plus, -system.Omega0 * lam_minus])
    strength_sq = system.norm_x_sq() + system.norm_y_sq()
    ground_bound = system.Omega0 * 5.0 * strength_sq**2 / abs(system.delta_scaled) ** 3
    inter_bound = system.Omega0 * 2.0 * strength_sq / abs(system.delta_scaled)

    ground_idx = set(np.argsort(np.abs(w))[:2])
    header = ["index", "eigenvalue_rad_s", "kind", "reference_rad_s",
              "deviation_rad_s", "bound_rad_s"]
    rows: list[list] = []
    ground_seen = 0
    for i, lam in enumerate(w):
        if i in ground_idx:
            ref = ground_refs[ground_seen]
            ground_seen += 1
            rows.append([i, float(lam), "ground_pair", ref,
                         float(lam - ref), ground_bound])
        else:
            ref = -detuning.Delta
            rows.append([i, float(lam), "intermediate", ref,
                         float(lam - ref), inter_bound])
    return header, rows


_COMMANDS = {
    "table": cmd_table,
    "spectrum": cmd_spectrum,
    "evolve": cmd_evolve,
    "validate": cmd_validate,
    "eigs": cmd_eigs,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve_config(args)
        header, rows = _COMMANDS[args.command](cfg)
        _emit(header, rows, cfg)
        if args.command == "validate" and cfg.strict:
            if any(row[-1] is False for row in rows):
                print("error: regime criteria failed (--strict)", file=sys.stderr)
                return 3
        return 0
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except RegimeFailure as exc:
        print(f"error: {exc} (--strict)", file=sys.stderr)
        return 3
    except IntegrationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
