"""Densities of the interval spacing for three variates at n = 50.

For uniform variates the density does not move with i, so a single curve
per width is drawn. Exponential and logistic variates are shown at the
middle of the sample (i = 25), where the spacing is smallest on average for
the logistic model and where the exponential spacings are still far from
the stretched upper tail.

Run: ``python demos/densities.py``
"""

import numpy as np

from _common import output_path, pyplot
from intspace import closedform
from intspace.closedform import IntervalSpec
from intspace.variates import Exponential, Logistic, Uniform

N, I = 50, 25
WIDTHS = (2, 5, 10)
PANELS = {
    "uniform:0,1": (Uniform(0.0, 1.0), np.linspace(0.0, 0.5, 201)),
    "exp:1": (Exponential(1.0), np.linspace(0.0, 1.0, 201)),
    "logistic:0,1": (Logistic(0.0, 1.0), np.linspace(0.0, 3.0, 201)),
}


def main():
    rows = []
    for label, (model, ys) in PANELS.items():
        for w in WIDTHS:
            spec = IntervalSpec(N, I, w)
            fs = closedform.density(spec, model, ys)
            mode = ys[int(np.argmax(fs))]
            print(f"{label:14s} w={w:2d}: mode near y={mode:.3f}, closed-form mean {closedform.mean(spec, model):.4f}")
            rows.extend((label, w, float(y), float(f)) for y, f in zip(ys, fs))

    path = output_path("densities.csv")
    with path.open("w") as fh:
        fh.write("dist,w,y,f\n")
        fh.writelines(f'"{d}",{w},{y!r},{f!r}\n' for d, w, y, f in rows)
    print(f"wrote {path}")

    plt = pyplot()
    if plt is None:
        return
    fig, axes = plt.subplots(1, 3, figsize=(12, 3.5))
    for ax, (label, (model, ys)) in zip(axes, PANELS.items()):
        for w in WIDTHS:
            ax.plot(ys, closedform.density(IntervalSpec(N, I, w), model, ys), label=f"w={w}")
        ax.set_title(label)
        ax.set_xlabel("y")
        ax.legend()
    axes[0].set_ylabel("density")
    fig.tight_layout()
    fig.savefig(output_path("densities.png"), dpi=120)
    print(f"wrote {output_path('densities.png')}")


if __name__ == "__main__":
    main()
