"""Walk a few parameter points through the rule catalog and print the witnesses.

Run with: python3 demos/sieve_tour.py
"""
from perfcodes.pell import exclusion_scan
from perfcodes.sieve import JohnsonParams, residue_classes_2perfect, run_rules, sieve_range

for n, w, e in ((6, 3, 1), (14, 7, 1), (2234, 1063, 1)):
    r = run_rules(JohnsonParams(n, w, e), first_fail=True)
    print(r.to_text())

survivors = [r for r in sieve_range(1, 1, 2000, survivors_only=True)]
print(f"e=1, w <= 2000: {len(survivors)} survivors")

summary = exclusion_scan()
print(f"Pell rows below n = {summary.n_limit}: {len(summary.reports)}, all excluded: {summary.all_excluded}")

rc = residue_classes_2perfect()
print(f"2-perfect J(2w,w) classes: w mod 60 in {rc.mod60}, w mod 420 in {rc.mod420}")
