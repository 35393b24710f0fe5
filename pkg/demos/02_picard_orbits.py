"""Walkthrough: Picard orbits and their convergence diagnostics.

Follows the orbit of the x/3 map step by step, checks the decreasing-gap
and ratio-bound predictions, probes uniqueness from several starts, and
shows how a non-contractive map terminates.
"""

from picardkit import (PicardConfig, check_ratio_bound, gaps_monotone,
                       picard_iterate, scalar_metric, uniqueness_probe)
from picardkit.builtins import beta_reciprocal, example31_map

cfg = PicardConfig(tolerance=1e-10)

print("== orbit of x/3 from 1.0 ==")
trace = picard_iterate(example31_map, 1.0, cfg, scalar_metric)
print(f"termination: {trace.termination} after {trace.iterations} steps, "
      f"residual {trace.residual:.3e}")
print(f"{'step':>4} {'iterate':>14} {'gap':>12} {'ratio':>8}")
for k in range(min(8, trace.iterations)):
    ratio = f"{trace.ratios[k - 1]:.6f}" if k >= 1 and trace.ratios[k - 1] else ""
    print(f"{k + 1:>4} {trace.iterates[k + 1]:>14.3e} {trace.gaps[k]:>12.3e} {ratio:>8}")
print("...")
print()

print("gaps non-increasing:", gaps_monotone(trace))
ratio_report = check_ratio_bound(trace, beta_reciprocal())
print("every ratio below beta(gap):", ratio_report.passed,
      f"(first gap {trace.gaps[0]:.4f}, beta there = "
      f"{beta_reciprocal()(trace.gaps[0]):.4f})")
print()

print("== uniqueness probe ==")
probe = uniqueness_probe(lambda x: x / 2.0 + 0.25, [0.0, 0.2, 0.5, 0.8, 1.0],
                         cfg, scalar_metric)
print(f"limits found: {[round(v, 12) for v in probe.limits]}")
print(f"distinct limits: {probe.distinct_limits} "
      f"-> consistent with uniqueness: {probe.consistent_with_uniqueness}")
print()
probe_id = uniqueness_probe(lambda x: x, [0.2, 0.8], cfg, scalar_metric)
print(f"identity map from two starts keeps both: {probe_id.distinct_limits} "
      f"-> uniqueness fails, as it should")
print()

print("== divergence handling ==")
diverged = picard_iterate(lambda x: 3.0 * x, 1.0,
                          PicardConfig(divergence_bound=1e6), scalar_metric)
print(f"tripling map: termination '{diverged.termination}' after "
      f"{diverged.iterations} steps, last gap {diverged.gaps[-1]:.3e}")
