"""Shared helpers for the demo scripts: an output directory and optional plotting."""

from pathlib import Path

OUT = Path(__file__).resolve().parent / "output"


def output_path(name: str) -> Path:
    OUT.mkdir(exist_ok=True)
    return OUT / name


def pyplot():
    """Return ``matplotlib.pyplot`` with a file-only backend, or None if it is not installed."""
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("(matplotlib not installed; writing CSV only)")
        return None
    return plt
