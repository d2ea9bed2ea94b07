"""Figure rendering for harness outputs.

Each CLI report command drops PNG figures next to its CSV: a sweep gets
success and disturbance overlays (empirical markers, model lines), a
trace gets the trajectory of Pr(psi0) and the counter imbalance.  The
CSV stays the primary artifact; figures are a convenience view of the
same rows and can be disabled with --no-figures.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .harness import ModelPoint, SweepResult
from .walk import WalkTrace


def _by_mu(points):
    groups: dict[int, list] = {}
    for p in points:
        groups.setdefault(p.mu, []).append(p)
    return groups


def render_sweep_figures(result: SweepResult, csv_path: str | Path) -> list[Path]:
    """Success and disturbance overlays next to the sweep CSV."""
    stem = Path(csv_path).with_suffix("")
    paths = []
    specs = [
        ("empirical_success", "model_success", "success probability",
         Path(f"{stem}_success.png")),
        ("empirical_disturbance", "model_disturbance", "disturbance",
         Path(f"{stem}_disturbance.png")),
    ]
    for emp_field, model_field, label, out in specs:
        fig, ax = plt.subplots(figsize=(6.4, 4.2))
        for mu, pts in sorted(_by_mu(result.points).items()):
            x = [p.sin2phi for p in pts]
            ax.plot(x, [getattr(p, emp_field) for p in pts],
                    marker="o", markersize=2.5, linewidth=0.8,
                    label=f"mu={mu} empirical")
            ax.plot(x, [getattr(p, model_field) for p in pts],
                    linestyle="--", linewidth=1.2, label=f"mu={mu} model")
        ax.set_xlabel(r"$\sin^2\varphi$")
        ax.set_ylabel(label)
        ax.grid(alpha=0.3)
        ax.legend(fontsize=8)
        fig.tight_layout()
        fig.savefig(out, dpi=150)
        plt.close(fig)
        paths.append(out)
    return paths


def render_trace_figure(trace: WalkTrace, csv_path: str | Path) -> Path:
    """Pr(psi0) and j1 - j0 against the step counter."""
    out = Path(csv_path).with_suffix(".png")
    steps = range(1, len(trace.steps) + 1)
    pr0 = [s.alpha_after * s.alpha_after for s in trace.steps]
    delta = []
    d = 0
    for s in trace.steps:
        d += 1 if s.outcome == 1 else -1
        delta.append(d)
    fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(6.4, 5.0))
    ax1.plot(steps, pr0, linewidth=0.9)
    ax1.axhline(math.cos(trace.phi) ** 2, color="gray", linestyle=":",
                linewidth=1.0, label=r"prepared $\cos^2\varphi$")
    ax1.set_ylabel(r"$\Pr(\psi_0)$")
    ax1.set_ylim(-0.05, 1.05)
    ax1.grid(alpha=0.3)
    ax1.legend(fontsize=8)
    ax2.plot(steps, delta, linewidth=0.9, color="tab:orange")
    ax2.axhline(0.0, color="gray", linestyle=":", linewidth=1.0)
    ax2.set_xlabel("step")
    ax2.set_ylabel(r"$j_1 - j_0$")
    ax2.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out


def render_model_figures(points: list[ModelPoint], csv_path: str | Path) -> list[Path]:
    """Model-only success and disturbance curves."""
    stem = Path(csv_path).with_suffix("")
    paths = []
    specs = [
        ("model_success", "model success probability",
         Path(f"{stem}_success.png")),
        ("model_disturbance", "model disturbance",
         Path(f"{stem}_disturbance.png")),
    ]
    for field_name, label, out in specs:
        fig, ax = plt.subplots(figsize=(6.4, 4.2))
        for mu, pts in sorted(_by_mu(points).items()):
            ax.plot([p.sin2phi for p in pts],
                    [getattr(p, field_name) for p in pts],
                    linewidth=1.2, label=f"mu={mu}")
        ax.set_xlabel(r"$\sin^2\varphi$")
        ax.set_ylabel(label)
        ax.grid(alpha=0.3)
        ax.legend(fontsize=8)
        fig.tight_layout()
        fig.savefig(out, dpi=150)
        plt.close(fig)
        paths.append(out)
    return paths
