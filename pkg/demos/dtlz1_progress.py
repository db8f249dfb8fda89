"""Track IGD on the multimodal DTLZ1 problem while the run progresses.

Local fronts of DTLZ1 trap many optimisers far above the true front
(sum of objectives 0.5). The printout shows how quickly the archive escapes.

    python3 demos/dtlz1_progress.py [iterations]
"""

import sys

from cmompa import RunConfig, igd, run
from cmompa.benchmarks import make_benchmark, sample_true_pf

iters = int(sys.argv[1]) if len(sys.argv) > 1 else 1000
pf = sample_true_pf("dtlz1")
step = max(iters // 10, 1)


def report(k, archive):
    if k % step == 0:
        F = archive.members.F
        print(f"iter {k:5d}  IGD {igd(F, pf):.3e}  mean objective sum {F.sum(axis=1).mean():.3f}")


run(make_benchmark("dtlz1"), RunConfig(seed=1, max_iter=iters), callback=report)
