"""Static SVG chart of observed vs predicted intervals."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "fuzzreg"

import matplotlib.pyplot as plt  # noqa: E402


def plot_intervals(analysis, path) -> None:
    labels = analysis.categories
    obs = analysis.problem.outputs
    pred = analysis.predictions
    n = len(labels)

    fig, ax = plt.subplots(figsize=(7.0, 1.2 + 0.7 * n))
    for k, (o, p) in enumerate(zip(obs, pred)):
        y = n - 1 - k
        ax.barh(y + 0.17, o.width, left=o.lower, height=0.3, color="#4c72b0",
                label="observed" if k == 0 else None)
        ax.barh(y - 0.17, p.width, left=p.lower, height=0.3, color="#dd8452",
                label="predicted" if k == 0 else None)
        ax.plot([o.midpoint] * 2, [y + 0.02, y + 0.32], color="black", lw=1)
        ax.plot([p.midpoint] * 2, [y - 0.32, y - 0.02], color="black", lw=1)
    ax.set_yticks(range(n))
    ax.set_yticklabels(list(reversed(labels)))
    ax.set_xlabel("value")
    coefs = ", ".join(f"{g}: [{a.lower:.2f}, {a.upper:.2f}]"
                      for g, a in zip(analysis.config.inputs, analysis.fit.coefficients))
    ax.set_title(f"Observed vs predicted intervals\n{coefs}", fontsize=9)
    ax.legend(loc="lower right", fontsize=8)
    ax.grid(axis="x", alpha=0.3)
    fig.tight_layout()
    # fixed metadata keeps repeated runs byte-identical
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
