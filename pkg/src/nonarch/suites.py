"""Named verification suites and the (optionally parallel) trial runner.

A suite maps ``(config, trial index)`` to a list of verdicts.  Trials share
no state, so :func:`run_suite` may farm them out to worker processes; results
are always assembled in trial order, which keeps the verdict stream
byte-identical across runs and worker counts.
"""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import Callable

from . import checkers as ck
from .checkers import CheckReport, Verdict
from .errors import NotASolution, TargetIsSolution
from .generators import (
    GeneratorConfig,
    gen_clunie,
    gen_corrupted_mokhonko,
    gen_degree,
    gen_factored,
    gen_jensen,
    gen_lld_entire,
    gen_lld_mero,
    gen_mokhonko,
)
from .nevanlinna import jensen_defect
from .scalar import fmt_q
from .series import zero_log_radii

_ZERO = Fraction(0)


def _ladder(*pts) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in pts)


def _jensen(cfg, i) -> CheckReport:
    f = gen_jensen(cfg, i)
    rep = CheckReport()
    for s in cfg.ladder:
        defect = jensen_defect(f, s)
        rep.verdicts.append(Verdict(f"jensen-{i}", "jensen_defect<=0", s, defect, _ZERO))
        rep.verdicts.append(Verdict(f"jensen-{i}", "jensen_defect>=0", s, _ZERO, defect))
    return rep


def _newton(cfg, i) -> CheckReport:
    f, origin, expected = gen_factored(cfg, i)
    zr = zero_log_radii(f)
    got = zr.as_multiset()
    mismatch = abs(zr.origin_multiplicity - origin) + abs(zr.count - f.degree)
    pool = list(expected)
    for s in got:
        if s in pool:
            pool.remove(s)
        else:
            mismatch += 1
    mismatch += len(pool)
    rep = CheckReport()
    rep.verdicts.append(Verdict(f"newton-{i}", "factored_oracle_mismatch", _ZERO, Fraction(mismatch), _ZERO))
    return rep


def _lld_entire(cfg, i) -> CheckReport:
    f, L, m = gen_lld_entire(cfg, i)
    return ck.check_lld_entire(f, L, m, cfg.ladder, instance=f"lld-entire-{i}")


def _lld_mero(cfg, i) -> CheckReport:
    f, L, m = gen_lld_mero(cfg, i)
    return ck.check_lld_mero(f, L, m, cfg.ladder, instance=f"lld-mero-{cfg.family}-{i}")


def _clunie_m(cfg, i) -> CheckReport:
    return ck.check_clunie_m(gen_clunie(cfg, i), cfg.ladder)


def _clunie_n_strict(cfg, i) -> CheckReport:
    cfg = cfg.with_(phi_mode="x0", b_mode="constant")
    return ck.check_clunie_N(gen_clunie(cfg, i), cfg.ladder)


def _clunie_n_measured(cfg, i) -> CheckReport:
    cfg = cfg.with_(phi_mode="x0", b_mode="nonconstant")
    return ck.check_clunie_N(gen_clunie(cfg, i), cfg.ladder)


def _degree(cfg, i) -> CheckReport:
    return ck.check_degree_identity(gen_degree(cfg, i))


def _mokhonko(cfg, i) -> CheckReport:
    return ck.check_mokhonko(gen_mokhonko(cfg, i), cfg.ladder)


def _mokhonko_corrupt(cfg, i) -> CheckReport:
    inst, guard = gen_corrupted_mokhonko(cfg, i)
    fired = None
    try:
        ck.check_mokhonko(inst, cfg.ladder)
    except (TargetIsSolution, NotASolution) as exc:
        fired = type(exc).__name__
    rep = CheckReport()
    miss = _ZERO if fired == guard else Fraction(1)
    rep.verdicts.append(Verdict(inst.id, f"guard:{guard}", _ZERO, miss, _ZERO))
    return rep


def _malmquist(cfg, i) -> CheckReport:
    cfg = cfg.with_(phi_mode="x0")
    return ck.check_malmquist_consequence(gen_clunie(cfg, i), cfg.ladder)


_BASE = GeneratorConfig()

SUITES: dict[str, tuple[Callable, GeneratorConfig]] = {
    "jensen": (_jensen, _BASE.with_(primes=(2, 5, 7), max_degree=6,
                                    ladder=_ladder(-2, "-5/4", "-1/2", "1/4", 1, "7/4", "5/2", "13/4"))),
    "newton": (_newton, _BASE.with_(primes=(2, 5, 7), max_degree=6)),
    "lld-entire": (_lld_entire, _BASE.with_(primes=(2, 5, 7), max_degree=6,
                                            ladder=_ladder(0, "1/3", "2/3", 1, "4/3"))),
    "lld-mero": (_lld_mero, _BASE.with_(primes=(2, 5, 7), max_degree=4,
                                        ladder=_ladder("-1/2", 0, "1/2", 1, "3/2"))),
    "clunie-m": (_clunie_m, _BASE.with_(primes=(2, 3, 5, 7), n=2)),
    "clunie-n-strict": (_clunie_n_strict, _BASE.with_(primes=(2, 3, 5, 7), n=2)),
    "clunie-n-measured": (_clunie_n_measured, _BASE.with_(primes=(2, 3, 5, 7), n=1)),
    "degree": (_degree, _BASE.with_(primes=(2, 3, 5, 7), max_degree=3)),
    "mokhonko": (_mokhonko, _BASE.with_(primes=(2, 3, 5, 7), n=2)),
    "mokhonko-corrupt": (_mokhonko_corrupt, _BASE.with_(primes=(2, 3, 5, 7), n=1)),
    "malmquist": (_malmquist, _BASE.with_(primes=(2, 3, 5, 7), n=1)),
}


def suite_config(name: str, **overrides) -> GeneratorConfig:
    return SUITES[name][1].with_(**overrides)


@dataclass
class TrialResult:
    lines: list[str]
    checked: int
    held: int
    window_skipped: int
    measured: dict
    advisories: list


def run_trial(name: str, cfg: GeneratorConfig, index: int) -> TrialResult:
    rep = SUITES[name][0](cfg, index)
    lines = [json.dumps(v.to_json(), separators=(",", ":")) for v in rep.verdicts]
    measured = {k: ("inf" if v is None else fmt_q(v)) for k, v in rep.measured.items()}
    return TrialResult(lines, len(rep.verdicts), sum(v.holds for v in rep.verdicts),
                       rep.window_skipped, measured, rep.advisories)


@dataclass
class SuiteResult:
    lines: list[str] = field(default_factory=list)
    checked: int = 0
    held: int = 0
    window_skipped: int = 0
    measured: dict = field(default_factory=dict)
    advisories: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.checked == self.held

    def add(self, t: TrialResult) -> None:
        self.lines.extend(t.lines)
        self.checked += t.checked
        self.held += t.held
        self.window_skipped += t.window_skipped
        self.measured.update(t.measured)
        self.advisories.extend(t.advisories)

    def summary(self) -> dict:
        return {
            "checked": self.checked,
            "held": self.held,
            "windowSkipped": self.window_skipped,
            "measuredConstants": self.measured,
        }


def run_suite(name: str, cfg: GeneratorConfig | None = None, jobs: int = 1) -> SuiteResult:
    if cfg is None:
        cfg = SUITES[name][1]
    task = partial(run_trial, name, cfg)
    out = SuiteResult()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for t in pool.map(task, range(cfg.trials), chunksize=max(1, cfg.trials // (4 * jobs))):
                out.add(t)
    else:
        for i in range(cfg.trials):
            out.add(task(i))
    return out
