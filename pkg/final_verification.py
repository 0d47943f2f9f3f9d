#!/usr/bin/env python
"""
Final verification: runs the acceptance suite end to end and exits 0 only
if every criterion holds.

    python final_verification.py [--jobs N]
"""
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

import django

sys.path.append(str(Path(__file__).parent))

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'diffrep.settings')
django.setup()

from django.conf import settings  # noqa: E402

from group_core.services import GroupSpec, GSet, interval  # noqa: E402
from constructions.services import measure0_check, measure0_witness  # noqa: E402
from continuous.services import (StepFunction, autocorrelate, autocorrelation_checks,  # noqa: E402
                                 continuous_t, random_step_function)
from extremal_verify import sweeps  # noqa: E402
from extremal_verify.reports import HOLDS, VIOLATED  # noqa: E402
from extremal_verify.services import check_basic_chain, dense_bound_check  # noqa: E402
from energy_tcount.services import t_count, t_interval_closed_form  # noqa: E402


def _jobs():
    if '--jobs' in sys.argv:
        return int(sys.argv[sys.argv.index('--jobs') + 1])
    return getattr(settings, 'DIFFREP_DEFAULT_JOBS', None)


JOBS = _jobs()


def _sweep_ok(report, label):
    checks = report.details.get('checks')
    verdicts = report.details.get('verdicts', {})
    if report.verdict == VIOLATED:
        print(f"   ❌ {label}: {report.summary()}")
        print(f"      first violation: {report.instance}")
        return False
    print(f"   ✅ {label}: {checks} checks, {verdicts}")
    return True


def _timed(title, number):
    def wrap(fn):
        def run():
            print(f"\n🔍 CRITERION {number}: {title}")
            print("=" * 60)
            started = time.monotonic()
            try:
                passed = fn()
            except Exception as e:
                print(f"   ❌ {title} raised {type(e).__name__}: {e}")
                passed = False
            print(f"   ⏱  {time.monotonic() - started:.1f}s")
            return passed
        run.title = title
        return run
    return wrap


@_timed("Interval closed form", 1)
def verify_closed_form():
    return _sweep_ok(sweeps.closed_form_sweep(8, 5, JOBS), "t_count vs (m+1)^(k+1) - m^(k+1)")


@_timed("Energy commutation", 2)
def verify_energy_commutation():
    return _sweep_ok(sweeps.energy_commutation_sweep(100, 31, jobs=JOBS), "E_{k,l} = E_{l,k} in C_31")


@_timed("Tuple-count identities", 3)
def verify_identities():
    return _sweep_ok(sweeps.id_ax_sweep(100, jobs=JOBS), "three-way T_D^(k+1) agreement")


@_timed("Rearrangement inequality", 4)
def verify_intopt():
    passed = True
    for p in (5, 7, 11, 13):
        passed &= _sweep_ok(sweeps.exhaustive_intopt(p, 3, JOBS), f"exhaustive over C_{p}")
    return passed


@_timed("Tuple-count upper bound", 5)
def verify_corollary():
    return _sweep_ok(sweeps.corollary_sweep(jobs=JOBS), "T_D^(k)(D) <= 3k 2^(-k-1) |D|^k")


@_timed("Dense tuple-count bound", 6)
def verify_dense_bound():
    passed = _sweep_ok(sweeps.dense_bound_sweep(4, JOBS), "small cyclic and product groups")
    D = GSet.from_elements(GroupSpec.cyclic(9), [x for x in range(9) if x not in (4, 5)])
    report = dense_bound_check(D, 2)
    worked = (report.lhs, report.rhs, report.verdict) == (39, 42, HOLDS)
    print(f"   {'✅' if worked else '❌'} Z_9 minus {{4, 5}}: {report.lhs} <= {report.rhs}")
    return passed and worked


@_timed("Energy chain", 7)
def verify_chain():
    passed = _sweep_ok(sweeps.chain_sweep(1000, jobs=JOBS), "1000 seeded instances")
    report = check_basic_chain(GSet.from_elements(GroupSpec.cyclic(7), [0, 1, 2]), 2)
    worked = (report.lhs, report.details['middle'], report.rhs) == (729, 855, 1197)
    print(f"   {'✅' if worked else '❌'} {{0, 1, 2}} in C_7: "
          f"{report.lhs} <= {report.details['middle']} <= {report.rhs}")
    return passed and worked


@_timed("Lower bounds on mu", 8)
def verify_theorems():
    passed = _sweep_ok(sweeps.modp_sweep(jobs=JOBS), "every A in C_p, p <= 19")
    passed &= _sweep_ok(sweeps.extd_sweep(jobs=JOBS), "intervals, random sets and [1, 600] in C_1801")
    passed &= _sweep_ok(sweeps.fan_sweep(1000, jobs=JOBS), "1000 random step functions")
    return passed


@_timed("Sparse large values", 9)
def verify_measure0():
    passed = True
    for epsilon in (Fraction(1, 4), Fraction(1, 8)):
        witness = measure0_witness(epsilon)
        report = measure0_check(witness)
        ok = report.verdict == HOLDS
        print(f"   {'✅' if ok else '❌'} eps={epsilon}: {witness.threshold_count} <= {witness.bound} "
              f"(|A-A| = {witness.difference_size})")
        passed &= ok
    quarter = measure0_witness(Fraction(1, 4))
    passed &= quarter.difference_size == 143
    return passed


@_timed("Interval tightness", 10)
def verify_tightness():
    return _sweep_ok(sweeps.tightness_sweep(10, 200, JOBS), "A = [1, n], n = 10..200")


@_timed("Continuous analogue", 11)
def verify_continuous():
    exact = all(continuous_t(k) == k + 1 for k in range(1, 7))
    print(f"   {'✅' if exact else '❌'} T_D^(k)(D) = k + 1 for k <= 6")

    wide = autocorrelate(StepFunction.constant(256))
    triangle = all(wide.at_breakpoint(j) == 1 - Fraction(abs(j), 256) for j in range(-256, 257))
    print(f"   {'✅' if triangle else '❌'} triangle autocorrelation at N = 256")

    facts = all(
        autocorrelation_checks(random_step_function(2 + seed % 15, seed, nonconstant=False)).verdict == HOLDS
        for seed in range(100)
    )
    print(f"   {'✅' if facts else '❌'} (f∘f)(0) = ||f||_2^2 on 100 random step functions")
    return exact and triangle and facts


@_timed("Tuple-count performance", 12)
def verify_tcount_speed():
    m = 1000
    D = interval(GroupSpec.cyclic(6007), -m, m)
    started = time.monotonic()
    value = t_count(D, D, 4).value
    elapsed = time.monotonic() - started
    passed = value == t_interval_closed_form(m, 4) and elapsed < 10
    print(f"   {'✅' if passed else '❌'} T_D^(4)(D) for D = [-{m}, {m}] in C_6007: {elapsed:.1f}s")
    return passed


CRITERIA = [
    verify_closed_form,
    verify_energy_commutation,
    verify_identities,
    verify_intopt,
    verify_corollary,
    verify_dense_bound,
    verify_chain,
    verify_theorems,
    verify_measure0,
    verify_tightness,
    verify_continuous,
    verify_tcount_speed,
]


if __name__ == "__main__":
    print("🧮 diffrep - Final Verification Suite")
    print(f"🎯 {len(CRITERIA)} acceptance criteria, jobs={sweeps.resolve_jobs(JOBS)}")
    print("=" * 80)

    results = [(check.title, check()) for check in CRITERIA]

    print("\n" + "=" * 80)
    print("📋 FINAL VERIFICATION RESULTS:")
    print("-" * 50)
    for number, (title, passed) in enumerate(results, start=1):
        print(f"   {number:>2}. {title:<32} {'✅ PASSED' if passed else '❌ FAILED'}")

    print("\n" + "=" * 80)
    if all(passed for _, passed in results):
        print("🎉 ALL ACCEPTANCE CRITERIA HOLD")
        sys.exit(0)
    print("⚠️ Some criteria failed")
    sys.exit(1)
