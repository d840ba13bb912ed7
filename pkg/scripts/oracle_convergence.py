#!/usr/bin/env python3
"""Convergence study of the RK4 oracle: halving the step should cut the
state error ~16x (fourth order), against a matrix-exponential reference
on a frozen Hamiltonian.
"""

import argparse
import sys

import numpy as np

from multiraman import (
    CouplingVectors,
    DetuningSet,
    build_interaction_hamiltonian,
    integrate,
    interaction_drive,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--detuning", type=float, default=20.0)
    parser.add_argument("--coupling", type=float, default=0.5)
    parser.add_argument("--t-final", type=float, default=4.0)
    parser.add_argument("--halvings", type=int, default=5)
    args = parser.parse_args()

    couplings = CouplingVectors([args.coupling + 0j], [args.coupling + 0j])
    detuning = DetuningSet(Delta=args.detuning)
    h = build_interaction_hamiltonian(couplings, detuning, 0.0)
    w, v = np.linalg.eigh(h)
    psi0 = np.array([1.0, 0.0, 0.0], dtype=complex)
    exact = v @ np.diag(np.exp(-1j * w * args.t_final)) @ v.conj().T @ psi0

    print("dt_s,max_state_error,ratio")
    prev = None
    dt = 2e-3
    for _ in range(args.halvings):
        traj = integrate(interaction_drive(couplings, detuning), psi0,
                         args.t_final, dt=dt)
        err = float(np.max(np.abs(traj.states[-1] - exact)))
        ratio = "" if prev is None else f"{prev / err:.2f}"
        print(f"{dt:.6g},{err:.6e},{ratio}")
        prev = err
        dt /= 2
    print("fourth order gives ratios near 16 until roundoff dominates",
          file=sys.stderr)


if __name__ == "__main__":
    main()
