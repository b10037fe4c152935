"""Figures for harness reports: predicted bound against measured derivation height."""

import collections

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "figure.dpi": 100,
}


def bound_figure(report, title=None):
    """Scatter of (dh, bound) with the diagonal, and a histogram of the gaps."""
    points = [(t.dh, t.bound) for t in report.terms if t.dh is not None and t.bound is not None]
    with plt.rc_context(STYLE):
        fig, (ax, hx) = plt.subplots(1, 2, figsize=(8, 3.4))
        counts = collections.Counter(points)
        if counts:
            xs, ys = zip(*counts)
            sizes = [12 + 6 * c for c in counts.values()]
            ok = ["tab:blue" if y >= x else "tab:red" for x, y in counts]
            ax.scatter(xs, ys, s=sizes, c=ok, alpha=0.6, edgecolors="none")
            top = max(max(xs), max(ys)) + 1
        else:
            top = 1
        ax.plot([0, top], [0, top], color="0.4", lw=0.8, ls="--", label="bound = dh")
        ax.set_xlim(-0.5, top + 0.5)
        ax.set_ylim(-0.5, top + 0.5)
        ax.set_xlabel("measured derivation height")
        ax.set_ylabel("interpreted cost bound")
        ax.legend(loc="upper left", frameon=False)

        gaps = [y - x for x, y in points]
        if gaps:
            lo, hi = min(gaps), max(gaps)
            hx.hist(gaps, bins=range(lo, hi + 2), align="left", color="tab:gray", rwidth=0.85)
        hx.set_xlabel("tightness gap (bound - dh)")
        hx.set_ylabel("terms")
        if title:
            fig.suptitle(title)
        fig.tight_layout()
    return fig


_NO_STAMP = {".png": {"Software": None}, ".pdf": {"CreationDate": None}, ".svg": {"Date": None}}


def save_figure(fig, path):
    # strip timestamps/versions so identical reports give identical files
    suffix = str(path)[str(path).rfind("."):].lower()
    fig.savefig(path, metadata=_NO_STAMP.get(suffix))
    plt.close(fig)
