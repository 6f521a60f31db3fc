"""Static SVG scatter of synergy-bias gain against macro synergy bias."""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

COLORS = {"gaussian": "tab:blue", "deterministic": "tab:orange"}


def scatter_svg(rows, path):
    """Write ``path`` from :class:`~infoconv.expansion.SystemRow` records."""
    plt.rcParams["svg.hashsalt"] = "infoconv"
    fig, ax = plt.subplots(figsize=(5, 4))
    for kind, color in COLORS.items():
        pts = [(r.macro_bsyn, r.gain) for r in rows if r.kind == kind]
        if pts:
            xs, ys = zip(*pts)
            ax.scatter(xs, ys, s=12, color=color, label=kind)
    ax.axhline(0.0, color="grey", lw=0.5)
    ax.set_xlabel("macro synergy bias")
    ax.set_ylabel("synergy bias gain (macro - micro)")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
