# Copyright 2026 The qdm authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Render qdm sweep CSVs.

Usage: python3 docs/plot_results.py results.csv [out.png]

Grid sweeps become per-(machine, secrets) score density plots, symmetric
sweeps become score-vs-signed-h lines, and decoherence sweeps become
score-vs-h lines per dephasing rate.
"""

import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def signed_h(row):
    # recover the signed symmetric coordinate: poor-side hints have h0
    # opposite the good diagonal of the row's secrets
    good_h0_sign = 1 if row.x0 == 0 else -1
    magnitude = abs(row.h0)
    return magnitude if row.h0 * good_h0_sign >= 0 else -magnitude


def plot_grid(frame, axes_iter):
    for (machine, x0, x1), cell in frame.groupby(["machine", "x0", "x1"]):
        ax = next(axes_iter)
        pivot = cell.pivot_table(index="h1", columns="h0", values="mean_score")
        im = ax.imshow(
            pivot.values,
            origin="lower",
            extent=(-0.5, 0.5, -0.5, 0.5),
            vmin=-1,
            vmax=1,
            cmap="RdBu_r",
        )
        ax.set_title(f"{machine}  x=({x0},{x1})")
        ax.set_xlabel("h0")
        ax.set_ylabel("h1")
        plt.colorbar(im, ax=ax, shrink=0.8)


def main():
    if len(sys.argv) < 2:
        print(__doc__)
        return 1
    path = sys.argv[1]
    out = sys.argv[2] if len(sys.argv) > 2 else path.rsplit(".", 1)[0] + ".png"
    frame = pd.read_csv(path)
    kind = frame.experiment.iloc[0]

    if kind == "grid":
        groups = frame.groupby(["machine", "x0", "x1"]).ngroups
        cols = min(groups, 4)
        rows = (groups + cols - 1) // cols
        fig, axes = plt.subplots(rows, cols, figsize=(4 * cols, 3.5 * rows), squeeze=False)
        plot_grid(frame, iter(axes.flat))
    elif kind == "symmetric":
        fig, ax = plt.subplots(figsize=(6, 4))
        frame["h"] = frame.apply(signed_h, axis=1)
        for machine, part in frame.groupby("machine"):
            part = part.sort_values("h")
            ax.errorbar(part.h, part.mean_score, yerr=part.std_err, fmt=".", label=machine)
            ax.plot(part.h, part.analytic_score, lw=0.8, alpha=0.6)
        ax.set_xlabel("signed symmetric hint h")
        ax.set_ylabel("average score")
        ax.legend()
    else:  # decoherence
        fig, ax = plt.subplots(figsize=(6, 4))
        frame["h"] = frame.h0.abs()
        for (machine, gamma), part in frame.groupby(["machine", "gamma"]):
            part = part.sort_values("h")
            label = machine if machine == "cdm" else f"{machine} gamma={gamma}"
            ax.plot(part.h, part.mean_score, marker=".", ms=3, lw=0.8, label=label)
        ax.set_xlabel("good symmetric hint h")
        ax.set_ylabel("average score")
        ax.legend(fontsize=8)

    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
