#!/usr/bin/env python3
"""Coupling strength |G_P . G_S| against the Zeeman sublevel, for equal
circular polarizations (symmetric about mF = 0) and for the pi/sigma+
pair (monotone, strongest from the extremal negative mF), over a range of
nuclear spins.
"""

import argparse
import sys
from fractions import Fraction

from multiraman import g_dot_closed


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--line", choices=["D1", "D2"], default="D2")
    parser.add_argument("--max-spin-x2", type=int, default=9)
    parser.add_argument("--output", default="coupling_vs_mf.csv")
    parser.add_argument("--plot", metavar="PNG", default=None)
    args = parser.parse_args()

    jprime = Fraction(1, 2) if args.line == "D1" else Fraction(3, 2)
    rows = []
    for t_spin in range(1, args.max_spin_x2 + 1, 2):
        spin = Fraction(t_spin, 2)
        for tm in range(-(t_spin - 1), t_spin, 2):
            mf = Fraction(tm, 2)
            rows.append((t_spin, tm / 2, g_dot_closed(spin, mf, 1, 1, jprime),
                         g_dot_closed(spin, mf, 0, 1, jprime)))

    with open(args.output, "w", newline="\n") as fh:
        fh.write("I_x2,mF,gdot_pp,gdot_zp\n")
        for t_spin, mf, pp, zp in rows:
            fh.write(f"{t_spin},{mf:.17g},{pp:.17g},{zp:.17g}\n")
    print(f"wrote {args.output}", file=sys.stderr)

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(6, 4))
        for t_spin in range(1, args.max_spin_x2 + 1, 2):
            sub = [r for r in rows if r[0] == t_spin]
            mfs = [r[1] for r in sub]
            ax.plot(mfs, [r[2] for r in sub], "o-", ms=3,
                    label=f"2I = {t_spin}, equal circular")
            ax.plot(mfs, [r[3] for r in sub], "s--", ms=3,
                    label=f"2I = {t_spin}, pi/sigma+")
        ax.set_xlabel(r"$m_F$ of the lower state")
        ax.set_ylabel(r"$|G_P \cdot G_S|$")
        ax.legend(fontsize=6, ncol=2)
        fig.tight_layout()
        fig.savefig(args.plot, dpi=150)
        print(f"wrote {args.plot}", file=sys.stderr)


if __name__ == "__main__":
    main()
