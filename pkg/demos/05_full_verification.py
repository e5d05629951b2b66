# The full verification suite
# ---------------------------
# One named check per identity the package computes: the operator
# inequality between the defect sections, norm equivalence of the two
# range spaces, the norm decomposition identity, the isometry, the
# monomial distance lower bound, the Blaschke/Hardy comparison, and the
# constant-symbol rescaling.  Checks run over a seeded corpus, so two
# runs with the same config agree bit for bit.

from subbergman.verify import ToleranceConfig, default_symbol_corpus, run_all

config = ToleranceConfig()            # N = 48, M = 64, seed 0xB17
reports = run_all(config, default_symbol_corpus())

width = max(len(r.check_name) for r in reports)
current = None
for rep in reports:
    if rep.symbol != current:
        current = rep.symbol
        print(f"\n=== {current} ===")
    detail = f"measured={rep.measured:.6e}  target={rep.bound_or_target:.6e}"
    print(f" {'PASS' if rep.passed else 'FAIL'}  {rep.check_name:<{width}}  {detail}")

failed = [r for r in reports if not r.passed]
print(f"\n{len(reports) - len(failed)}/{len(reports)} checks passed")
raise SystemExit(1 if failed else 0)
