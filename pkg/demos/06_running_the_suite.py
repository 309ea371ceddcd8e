"""
Running the randomized suite
============================

The harness samples hypothesis-satisfying inputs for every inequality,
aggregates margins and keeps violating inputs as replayable witnesses.
The same runs are available from the shell as ``check run``.
"""
import json

from opineq import SuiteConfig, evaluate_witness, run_suite

# %%
# A short sweep over every inequality
report = run_suite(SuiteConfig(dims=[1, 2, 3, 4], trials=50, seed=42))
print(f"{'id':<16}{'trials':>7}{'skips':>7}{'viol':>6}{'min margin':>14}")
for ineq, agg in report.aggregates.items():
    print(f"{ineq:<16}{agg['trials']:>7}{agg['skips']:>7}{agg['violations']:>6}{agg['min_margin']:>14.3e}")

# %%
# The report is a pure function of the configuration
again = run_suite(SuiteConfig(dims=[1, 2, 3, 4], trials=50, seed=42))
print("identical report bytes:", report.dumps() == again.dumps())

# %%
# Bypassing the hypothesis gate on out-of-hypothesis inputs shows the checks
# can fail; each witness replays to the same margin
bypass = run_suite(SuiteConfig(ineqs=["cor_3_4", "prop_3_7"], dims=[3], trials=100, gate_bypass=True))
print("violations with the gate bypassed:", bypass.violations)
w = json.loads(json.dumps(bypass.witnesses[0]))
print("stored margin", w["margin"], "replayed", evaluate_witness(w).margin)
