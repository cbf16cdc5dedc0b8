"""The verification suite: every structural inequality on random samples.

Runs the full suite over the three families, three reactions, and two grids,
prints the per-property table, and demonstrates witness replay (any reported
worst case can be re-evaluated exactly from its recorded arguments).
"""

import orliczkit as ok
from orliczkit.verify import replay_witness

families = [ok.power_family(ok.ExponentField.affine(2.0, 1.0)),
            ok.log_quotient_family(ok.ExponentField.affine(3.0, 1.0)),
            ok.log_weight_family(ok.ExponentField.affine(2.0, 1.0), 1.0)]
reactions = [ok.power_reaction(ok.ExponentField.constant(2.0)),
             ok.power_log_reaction(ok.ExponentField.constant(4.0)),
             ok.power_sin_reaction(ok.ExponentField.constant(3.0))]
grids = [ok.make_grid(1, [(0.0, 1.0)], [65]),
         ok.make_grid(2, [(0.0, 1.0), (0.0, 1.0)], [17, 17])]

report = ok.run_property_suite(families, reactions, grids, n_samples=12, seed=7)

print(f"{'property':34s} {'samples':>8} {'passes':>8} {'worst margin':>14}")
for p in report.properties:
    print(f"{p.name:34s} {p.samples:8d} {p.passes:8d} {p.worst_margin:14.3e}")
print(f"\noverall: {report.overall}")

worst = min(report.properties, key=lambda p: p.worst_margin)
print(f"\nwitness replay for {worst.name!r}:")
replayed = replay_witness(worst.witness, families, reactions, grids)
print(f"  recorded worst margin: {worst.worst_margin!r}")
print(f"  replayed             : {replayed!r}")
print(f"  identical: {replayed == worst.worst_margin}")

print("\nCSV summary:")
print(report.csv_text())
