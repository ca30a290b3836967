"""Write U/T^3 against nu/T for every law to CSV, plus a short peak summary.

Usage: python3 scripts/figure_data.py [--outdir figures] [--grid 1e8:1e12:512]
"""

import argparse
from pathlib import Path

from piradiance.cli import parse_grid
from piradiance.laws import LAW_NAMES, NoMaximum, log_grid, peak_nu_over_T, preset_law, sample_spectrum, write_spectrum_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outdir", default="figures")
    ap.add_argument("--grid", default="1e8:1e12:512")
    args = ap.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    grid = log_grid(*parse_grid(args.grid))
    for name in LAW_NAMES:
        law = preset_law(name)
        samples = sample_spectrum(law, grid)
        path = outdir / f"{name}.csv"
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            write_spectrum_csv(samples, fh)
        try:
            peak = f"{peak_nu_over_T(law):.5e}"
        except NoMaximum:
            peak = "none"
        top = max(s.U_over_T3 for s in samples)
        print(f"{name:<15} peak nu/T = {peak:<12} max U/T^3 on grid = {top:.4e}  -> {path}")


if __name__ == "__main__":
    main()
