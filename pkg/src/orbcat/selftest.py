"""The full invariant suite over the built-in zoo, as one deterministic report."""

from __future__ import annotations

from .checks import run_all


def run_selftest(seed: int = 42, scale: str = "full") -> dict:
    """Run every suite; the result holds no timings or environment details, so
    equal seeds give equal reports."""
    suites = run_all(seed=seed, scale=scale)
    return {
        "seed": seed,
        "scale": scale,
        "ok": all(s.ok for s in suites),
        "suites": [s.to_dict() for s in suites],
    }
