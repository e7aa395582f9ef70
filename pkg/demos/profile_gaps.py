"""Spacing profile of a one-column data set, used here to locate a gap.

A smooth synthetic sequence has one large gap planted at index 120. The
single-spacing profile singles it out; at width 8 the peak spreads over
the windows that straddle it; at width 32 the windows are long enough
that one gap no longer dominates and the profile flattens.

Pass ``--input file.csv --column name`` to profile real data instead.

Run: ``python demos/profile_gaps.py``
"""

import argparse

from _common import output_path, pyplot
from intspace.profile import compute_profile, load_csv, planted_gap_dataset

WIDTHS = (1, 8, 32)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--input")
    parser.add_argument("--column", default="0")
    args = parser.parse_args()

    if args.input:
        column = int(args.column) if args.column.isdigit() else args.column
        data = load_csv(args.input, column)
        print(f"loaded {len(data.values)} values from {data.source_name}")
    else:
        planted = planted_gap_dataset()
        data = planted.dataset
        print(f"synthetic sequence of {len(data.values)} values with a gap of "
              f"{planted.gap_sizes[0]} planted at i={planted.gap_indices[0]}")

    prof = compute_profile(data, WIDTHS)
    for w in WIDTHS:
        print(f"w={w:2d}: largest spacing at i={prof.argmax_index(w)}, peak/median {prof.peak_to_median(w):.2f}")
    path = output_path("profile.csv")
    path.write_text(prof.to_csv())
    print(f"wrote {path}")

    plt = pyplot()
    if plt is None:
        return
    fig, axes = plt.subplots(len(WIDTHS), 1, figsize=(7, 6), sharex=True)
    for ax, w in zip(axes, WIDTHS):
        ax.plot(prof.indices(w), prof.spacings[w], lw=0.8)
        ax.set_ylabel(f"w={w}")
    axes[-1].set_xlabel("i")
    fig.tight_layout()
    fig.savefig(output_path("profile.png"), dpi=120)
    print(f"wrote {output_path('profile.png')}")


if __name__ == "__main__":
    main()
