"""How many pieces do the derivative functions actually have?

Each level can at most double the piece count, so nothing rules out
exponential growth a priori, and no polynomial bound is known.  Measured
over random instances, the peak count grows extremely slowly with n, which
is why the explicit backend behaves near-linearly in practice.

This is a scaled-down version of the published experiment (200 trials per
cell instead of 1000; pass --full for the real thing).
"""

import sys

from lineprox.cli import run_pieces_stats

trials = 1000 if "--full" in sys.argv else 200

print(f"{'n':>6} {'distribution':>14} {'avg':>8} {'max':>5}")
for n in (100, 1000):
    for dist in ("small-uniform", "large-uniform", "gaussian"):
        stats = run_pieces_stats(n=n, dist=dist, trials=trials, seed=2024)
        print(f"{n:>6} {dist:>14} {stats.avg:>8.3f} {stats.max:>5}")
