"""Figure rendering for the CLI report paths (matplotlib, file output only)."""

from __future__ import annotations

import os
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def decay_profile_figure(profile, path, title="Gramian decay profile"):
    """Semilog plot of per-distance Gramian maxima."""
    distances = [d for d, _ in profile]
    maxima = [max(m, 1e-18) for _, m in profile]
    fig, ax = plt.subplots(figsize=(5.5, 3.5))
    ax.semilogy(distances, maxima, "o-", ms=4)
    ax.set_xlabel("index distance")
    ax.set_ylabel("max |gramian entry|")
    ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def sweep_figures(rows, out_dir, stem="sweep"):
    """One predicted-vs-actual bounds figure per certificate.

    `rows` are the sweep CSV records (dicts); rows where the hypothesis
    failed carry no predictions and are skipped. Returns the written paths.
    """
    os.makedirs(out_dir, exist_ok=True)
    by_cert = defaultdict(list)
    for row in rows:
        if row["hypothesis_holds"]:
            by_cert[row["cert"]].append(row)
    written = []
    for cert, cert_rows in sorted(by_cert.items()):
        grouped = defaultdict(list)
        for row in cert_rows:
            grouped[row["magnitude"]].append(row)
        mags = sorted(grouped)
        mean = lambda key, m: sum(r[key] for r in grouped[m]) / len(grouped[m])
        fig, ax = plt.subplots(figsize=(5.5, 3.5))
        ax.plot(mags, [mean("predicted_A", m) for m in mags],
                "C0--", label="predicted A")
        ax.plot(mags, [mean("actual_A", m) for m in mags],
                "C0o-", ms=4, label="actual A")
        ax.plot(mags, [mean("predicted_B", m) for m in mags],
                "C3--", label="predicted B")
        ax.plot(mags, [mean("actual_B", m) for m in mags],
                "C3o-", ms=4, label="actual B")
        ax.set_xlabel("perturbation magnitude")
        ax.set_ylabel("frame bound")
        ax.set_title(f"{cert}: predicted vs actual bounds")
        ax.legend(fontsize=8)
        ax.grid(True, alpha=0.3)
        fig.tight_layout()
        path = os.path.join(out_dir, f"{stem}_{cert}.png")
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)
    return written
