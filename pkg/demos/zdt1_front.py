"""Optimise ZDT1 once and compare the archive with the analytic front.

    python3 demos/zdt1_front.py [iterations]
"""

import sys

import numpy as np

from cmompa import RunConfig, igd, normalized_hv, run
from cmompa.benchmarks import make_benchmark, sample_true_pf

iters = int(sys.argv[1]) if len(sys.argv) > 1 else 300
problem = make_benchmark("zdt1")
pf = sample_true_pf("zdt1")

result = run(problem, RunConfig(seed=0, max_iter=iters))
F = result.F[np.argsort(result.F[:, 0])]
print(f"{len(F)} archive members after {result.evaluations} evaluations ({result.elapsed:.1f}s)")
print(f"IGD {igd(F, pf):.3e}   normalised HV {normalized_hv(F, pf):.4f}")

# distance of each member to the curve f2 = 1 - sqrt(f1)
gap = F[:, 1] - (1 - np.sqrt(np.clip(F[:, 0], 0, 1)))
print(f"worst vertical gap to the front {gap.max():.2e}")
for f1, f2 in F[:: len(F) // 10]:
    print(f"  f1={f1:.3f}  f2={f2:.3f}")
