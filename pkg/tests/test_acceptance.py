"""Acceptance suite: ten end-to-end criteria, each at exact (zero) tolerance.

Run under pytest, or directly with ``python3 tests/test_acceptance.py``.
Either way one PASS/FAIL line is printed per criterion.
"""
from __future__ import annotations

import json
import sys
import time

import pytest

from nonarch.suites import run_suite, suite_config

SEED = 20240601


def _run(name, trials, **kw):
    return run_suite(name, suite_config(name, seed=SEED, trials=trials, **kw))


def _all_held(res, expected_checked=None):
    ok = res.checked > 0 and res.held == res.checked and res.window_skipped == 0
    if expected_checked is not None:
        ok = ok and res.checked == expected_checked
    return ok


def criterion_1():
    t0 = time.perf_counter()
    res = _run("jensen", 500, primes=(2, 5, 7), max_degree=6, val_range=(-3, 3))
    dt = time.perf_counter() - t0
    defects_zero = all('"lhs":"0/1"' in line and '"rhs":"0/1"' in line for line in res.lines)
    ok = _all_held(res, 500 * 8 * 2) and defects_zero and dt < 10
    return ok, f"500 functions x 8 radii, defect 0 in {res.held // 2} cases, {dt:.1f}s"


def criterion_2():
    res = _run("newton", 500, primes=(2, 5, 7), max_degree=6)
    return _all_held(res, 500), f"{res.held}/{res.checked} factored polynomials matched"


def criterion_3():
    res = _run("lld-entire", 500)
    orders = {line.split('"check":"mu(D^')[1][0] for line in res.lines if '"check":"mu(D^' in line}
    ok = _all_held(res) and orders == {"1", "2", "3"}
    return ok, f"{res.held}/{res.checked} verdicts, orders {sorted(orders)}"


def criterion_4():
    res = _run("lld-mero", 500, family="shift")
    eq = sum('"check":"mu(f' in line for line in res.lines)
    corollary = sum('"check":"m(D^' in line for line in res.lines)
    ok = _all_held(res) and eq > 0 and corollary == 500 * 5
    return ok, f"{res.held}/{res.checked} verdicts ({eq} equality halves, {corollary} corollary)"


def criterion_5():
    t0 = time.perf_counter()
    res = _run("clunie-m", 200, family="shift")
    dt = time.perf_counter() - t0
    ok = _all_held(res, 1000) and dt < 60
    return ok, f"{res.held}/{res.checked} verdicts with slack >= 0, {dt:.1f}s"


def criterion_6():
    strict = _run("clunie-n-strict", 100)
    measured = _run("clunie-n-measured", 100)
    kstars = [v for k, v in measured.measured.items() if k.endswith(":K*")]
    finite = len(kstars) == 100 and all(v != "inf" for v in kstars)
    ok = _all_held(strict, 100 * 5) and finite and measured.checked == 0
    return ok, f"strict {strict.held}/{strict.checked}; K* finite for {sum(v != 'inf' for v in kstars)}/100"


def criterion_7():
    res = _run("degree", 200)
    return _all_held(res, 400), f"{res.held // 2}/200 slope identities exact"


def criterion_8():
    diff = _run("mokhonko", 200, family="derivative")
    shift = _run("mokhonko", 200, family="shift")
    corrupt = _run("mokhonko-corrupt", 20)
    advisories = len(diff.advisories) + len(shift.advisories)
    guards = {line.split('"check":"guard:')[1].split('"')[0] for line in corrupt.lines}
    ok = (_all_held(diff, 1000) and _all_held(shift, 1000) and advisories == 400
          and _all_held(corrupt, 20) and guards == {"TargetIsSolution", "NotASolution"})
    return ok, (f"differential {diff.held}/{diff.checked}, difference {shift.held}/{shift.checked}, "
                f"{advisories} advisories, guards {corrupt.held}/20")


def criterion_9():
    lld = _run("lld-mero", 500, family="delta")
    clunie = _run("clunie-m", 200, family="delta")
    mok = _run("mokhonko", 200, family="delta")
    ok = _all_held(lld) and _all_held(clunie, 1000) and _all_held(mok, 1000)
    return ok, f"delta family: lld {lld.held}/{lld.checked}, clunie {clunie.held}/{clunie.checked}, mokhonko {mok.held}/{mok.checked}"


def criterion_10():
    plan = [("jensen", 60, {}), ("lld-mero", 40, {"family": "delta"}), ("clunie-m", 30, {}),
            ("clunie-n-measured", 20, {}), ("degree", 30, {}), ("mokhonko", 30, {"family": "shift"}),
            ("malmquist", 15, {})]
    same = True
    for name, trials, kw in plan:
        cfg = suite_config(name, seed=SEED, trials=trials, **kw)
        a = run_suite(name, cfg)
        b = run_suite(name, cfg)
        c = run_suite(name, cfg, jobs=3)
        sa, sb, sc = (json.dumps(r.summary()) for r in (a, b, c))
        same &= a.lines == b.lines == c.lines and sa == sb == sc
        same &= bool(a.lines or a.measured)
    return same, f"{len(plan)} suites byte-identical across reruns and 3 workers"


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 11)}


def _report(n, ok, detail, out=sys.stdout):
    out.write(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}\n")


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, detail = CRITERIA[n]()
    with capsys.disabled():
        _report(n, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for n, fn in CRITERIA.items():
        ok, detail = fn()
        _report(n, ok, detail)
        failed += not ok
    sys.exit(1 if failed else 0)
