"""Per-radius exact checks of the shift lemmas, the Clunie bounds, the
Malmquist degree bookkeeping and the Mokhon'ko estimate.

Every checker evaluates an inequality ``lhs <= rhs`` between exact rationals
at each radius ``s`` of a ladder and records it as a :class:`Verdict`.
Radii inside a disk excluded by the lemma being used raise
:class:`PreconditionWindow`, or are counted and skipped when
``skip_out_of_window=True``.  Asymptotic statements are never asserted; they
appear as ratio reports in ``CheckReport.advisories``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Sequence

from .algebra import (
    AffineMap,
    DiffPoly,
    OperatorSpec,
    UniPoly,
    apply_operator,
    divide_univariate,
    eval_at,
    operands,
    substitute_shift_target,
    validate_family,
)
from .errors import (
    DegenerateComposition,
    HypothesisViolation,
    NonUnitMap,
    NotASolution,
    NotPolynomialInF,
    PreconditionWindow,
    ShiftedPoleCoincidence,
    TargetIsSolution,
    ZeroFunction,
    ZeroPolynomial,
)
from .instances import ClunieInstance, DegreeInstance, MokhonkoInstance, family_window
from .nevanlinna import CharacteristicRow, N_hat, T_hat, m_hat, ratio_report
from .ratfunc import RatFunc, compose_affine_rat, mu_hat_rat
from .scalar import BOTTOM, LogValue, fmt_q, valuation
from .series import ValuedPoly, compose_affine, mu_hat, poly_gcd

_ZERO = Fraction(0)


@dataclass(frozen=True)
class Verdict:
    instance: str
    check: str
    s: Fraction
    lhs: Fraction
    rhs: Fraction

    @property
    def slack(self) -> Fraction:
        return self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        return self.slack >= 0

    def to_json(self) -> dict:
        return {
            "instance": self.instance,
            "check": self.check,
            "s": fmt_q(self.s),
            "lhs": fmt_q(self.lhs),
            "rhs": fmt_q(self.rhs),
            "holds": self.holds,
            "slack": fmt_q(self.slack),
        }


@dataclass
class CheckReport:
    verdicts: list[Verdict] = field(default_factory=list)
    window_skipped: int = 0
    measured: dict = field(default_factory=dict)
    advisories: list[dict] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(v.holds for v in self.verdicts)

    def __iter__(self):
        return iter(self.verdicts)

    def __len__(self):
        return len(self.verdicts)

    def extend(self, other: "CheckReport") -> "CheckReport":
        self.verdicts.extend(other.verdicts)
        self.window_skipped += other.window_skipped
        self.measured.update(other.measured)
        self.advisories.extend(other.advisories)
        return self


def _window(ladder, bound: LogValue, skip: bool, report: CheckReport, what: str) -> list[Fraction]:
    keep = []
    for s in ladder:
        s = Fraction(s)
        if bound is BOTTOM or s > bound:
            keep.append(s)
        elif skip:
            report.window_skipped += 1
        else:
            raise PreconditionWindow(f"{what} needs s > {fmt_q(bound)}; got s = {fmt_q(s)}")
    return keep


def _nonneg_window(ladder, skip: bool, report: CheckReport, what: str) -> list[Fraction]:
    # origin poles carry weight s in N, so pointwise pole bounds integrate only for s >= 0
    keep = []
    for s in ladder:
        if s >= 0:
            keep.append(s)
        elif skip:
            report.window_skipped += 1
        else:
            raise PreconditionWindow(f"{what} needs s >= 0; got s = {fmt_q(s)}")
    return keep


def _m(f: RatFunc, s) -> Fraction:
    return m_hat(f, s)


def _T(f: RatFunc, s) -> Fraction:
    return _ZERO if f.is_zero() else T_hat(f, s).T


def _N(f: RatFunc, s) -> Fraction:
    return _ZERO if f.is_zero() else N_hat(f, s)


# -- shift lemmas ------------------------------------------------------------

def _iterated_delta(f: ValuedPoly, L: AffineMap, m: int) -> ValuedPoly:
    out = f
    for _ in range(m):
        out = compose_affine(out, L) - out
    return out


def check_lld_entire(
    f: ValuedPoly, L: AffineMap, m: int, ladder: Sequence, *, instance: str = "",
    skip_out_of_window: bool = False,
) -> CheckReport:
    """Entire case: ``mu(f o L) <= mu(f)`` and the ratios against ``f`` are at most 1.

    Needs ``|a| <= 1`` and radii with ``s > lam(b) - lam(a)``.
    """
    p = f.prime
    if f.is_zero():
        raise ZeroPolynomial("the shift lemma needs f != 0")
    lam_a = valuation(L.a, p)
    if lam_a > 0:
        raise NonUnitMap(f"entire shift lemma needs |a| <= 1, got lam(a) = {fmt_q(lam_a)}")
    lam_b = valuation(L.b, p)
    bound = BOTTOM if lam_b is BOTTOM else lam_b - lam_a
    report = CheckReport()
    radii = _window(ladder, bound, skip_out_of_window, report, "entire shift lemma")
    fL = compose_affine(f, L)
    ratio = RatFunc(fL, f)
    dm = _iterated_delta(f, L, m)
    dratio = RatFunc(dm, f)
    for s in radii:
        v = report.verdicts
        v.append(Verdict(instance, "mu(f.L)<=mu(f)", s, mu_hat(fL, s), mu_hat(f, s)))
        v.append(Verdict(instance, "mu(f.L/f)<=0", s, mu_hat_rat(ratio, s), _ZERO))
        v.append(Verdict(instance, "m(f.L/f)=0", s, _m(ratio, s), _ZERO))
        if not dratio.is_zero():
            v.append(Verdict(instance, f"mu(D^{m}f/f)<=0", s, mu_hat_rat(dratio, s), _ZERO))
        v.append(Verdict(instance, f"m(D^{m}f/f)=0", s, _m(dratio, s), _ZERO))
    return report


def check_lld_mero(
    f: RatFunc, L: AffineMap, m: int, ladder: Sequence, *, instance: str = "",
    skip_out_of_window: bool = False,
) -> CheckReport:
    """Meromorphic case with ``|a| = 1``: ``mu(f o L) = mu(f)`` for ``s > lam(b)``.

    The equalities are recorded as two opposite inequalities each.  The
    difference ``Delta_L^m f`` goes through the operator path, so the same
    code serves the shift and the difference families.
    """
    p = f.prime
    if f.is_zero():
        raise ZeroFunction("the shift lemma needs f != 0")
    if valuation(L.a, p) != 0:
        raise NonUnitMap(f"meromorphic shift lemma needs |a| = 1 (a = {fmt_q(L.a)})")
    report = CheckReport()
    radii = _window(ladder, L.window(p), skip_out_of_window, report, "meromorphic shift lemma")
    fL = compose_affine_rat(f, L)
    ratio = fL / f
    if L.is_identity():
        dm = RatFunc.const(0, p)
    else:
        dm = apply_operator(f, OperatorSpec("delta", L, m))
    dratio = dm / f
    for s in radii:
        mu_fL, mu_f, mu_r = mu_hat_rat(fL, s), mu_hat_rat(f, s), mu_hat_rat(ratio, s)
        v = report.verdicts
        v.append(Verdict(instance, "mu(f.L)<=mu(f)", s, mu_fL, mu_f))
        v.append(Verdict(instance, "mu(f)<=mu(f.L)", s, mu_f, mu_fL))
        v.append(Verdict(instance, "mu(f.L/f)<=0", s, mu_r, _ZERO))
        v.append(Verdict(instance, "0<=mu(f.L/f)", s, _ZERO, mu_r))
        v.append(Verdict(instance, "m(f.L/f)=0", s, _m(ratio, s), _ZERO))
        if not dratio.is_zero():
            v.append(Verdict(instance, f"mu(D^{m}f/f)<=0", s, mu_hat_rat(dratio, s), _ZERO))
        v.append(Verdict(instance, f"m(D^{m}f/f)=0", s, _m(dratio, s), _ZERO))
    return report


# -- Clunie ------------------------------------------------------------------

def _difference_family(inst, what: str):
    for op in inst.ops:
        if op.kind == "derivative":
            raise HypothesisViolation(f"{what} is stated for shift and difference operators")
    validate_family(inst.ops, inst.prime)


def _phi_degree(Phi: DiffPoly, reading: str) -> int:
    if Phi.is_zero():
        return -1
    if reading == "total":
        return Phi.total_deg()
    if reading == "x0":
        return Phi.degree_in(0)
    raise ValueError(f"unknown degree reading {reading!r}")


def _require_solution(inst: ClunieInstance) -> tuple[list[RatFunc], RatFunc]:
    vals = operands(inst.f, inst.ops)
    omega = eval_at(inst.Omega, vals)
    residual = inst.B(inst.f) * omega - eval_at(inst.Phi, vals)
    if not residual.is_zero():
        raise NotASolution(f"instance {inst.id!r}: B(f)*Omega - Phi = {residual}")
    return vals, omega


def check_clunie_m(
    inst: ClunieInstance, ladder: Sequence, *, skip_out_of_window: bool = False,
    degree_reading: str = "total",
) -> CheckReport:
    """Proximity bound for solutions of ``B(f) Omega = Phi`` with ``deg B >= deg Phi``.

    rhs = sum m(c_i) + sum m(d_j) + l*m(1/b_q) + l*sum_{j<=q} m(b_j), with
    ``l = max(1, deg Omega)``; ``b_q`` deliberately appears in both of the
    last two sums.  Valid for ``s`` above every ``lam(b_i)`` of the family.
    """
    _difference_family(inst, "the Clunie bound")
    if inst.B.is_zero():
        raise HypothesisViolation("B must be nonzero")
    q = inst.B.degree
    if q < _phi_degree(inst.Phi, degree_reading):
        raise HypothesisViolation(f"deg B = {q} < deg Phi ({degree_reading} degree)")
    _, omega = _require_solution(inst)
    report = CheckReport()
    radii = _window(ladder, family_window(inst.ops, inst.prime), skip_out_of_window, report,
                    "Clunie bound")
    l = max(1, inst.Omega.total_deg()) if not inst.Omega.is_zero() else 1
    bq_inv = inst.B.lead.inverse()
    for s in radii:
        rhs = sum((_m(c, s) for c in inst.Omega.coefficients()), _ZERO)
        rhs += sum((_m(d, s) for d in inst.Phi.coefficients()), _ZERO)
        rhs += l * _m(bq_inv, s)
        rhs += l * sum((_m(b, s) for b in inst.B.coeffs), _ZERO)
        report.verdicts.append(Verdict(inst.id, "clunie_m", s, _m(omega, s), rhs))
    return report


def shifted_pole_coincidence(inst: ClunieInstance) -> bool:
    """True if some zero of ``B(f)`` is a pole of a shifted operand ``f_k``."""
    Bf = inst.B(inst.f)
    if Bf.is_zero():
        return False
    for fk in operands(inst.f, inst.ops)[1:]:
        if fk.is_zero():
            continue
        if not poly_gcd(Bf.num, fk.den).is_constant():
            return True
    return False


def check_clunie_N(
    inst: ClunieInstance, ladder: Sequence, K: Fraction | None = None, *,
    skip_out_of_window: bool = False,
) -> CheckReport:
    """Valence bound for ``Phi`` polynomial in ``f`` alone.

    Constant ``b_j`` (strict regime): asserts ``N(Omega) <= sum N(c_i) +
    sum N(d_j)``.  Nonconstant ``b_j``: asserts with the supplied ``K``
    times ``sum N(1/b_j)``, or with ``K=None`` reports the least such
    constant ``K*`` over the ladder without asserting anything.
    """
    _difference_family(inst, "the Clunie valence bound")
    if not inst.Phi.depends_only_on_x0():
        raise NotPolynomialInF("Phi involves shifted operands")
    if inst.B.degree < _phi_degree(inst.Phi, "total"):
        raise HypothesisViolation("deg B < deg Phi")
    _, omega = _require_solution(inst)
    report = CheckReport()
    radii = _window(ladder, family_window(inst.ops, inst.prime), skip_out_of_window, report,
                    "Clunie valence bound")
    radii = _nonneg_window(radii, skip_out_of_window, report, "Clunie valence bound")
    strict = inst.B.has_constant_coefficients()
    if strict and shifted_pole_coincidence(inst):
        raise ShiftedPoleCoincidence(
            f"instance {inst.id!r}: a zero of B(f) is a pole of a shifted operand"
        )
    worst = None
    unbounded = False
    for s in radii:
        lhs = _N(omega, s)
        base = sum((_N(c, s) for c in inst.Omega.coefficients()), _ZERO)
        base += sum((_N(d, s) for d in inst.Phi.coefficients()), _ZERO)
        if strict:
            report.verdicts.append(Verdict(inst.id, "clunie_N", s, lhs, base))
            continue
        extra = sum((_N(b.inverse(), s) for b in inst.B.coeffs if not b.is_zero()), _ZERO)
        if K is not None:
            report.verdicts.append(Verdict(inst.id, "clunie_N", s, lhs, base + Fraction(K) * extra))
            continue
        excess = lhs - base
        if extra > 0:
            r = excess / extra
            worst = r if worst is None else max(worst, r)
        elif excess > 0:
            unbounded = True
    if not strict and K is None:
        kstar = None if unbounded else max(_ZERO, worst if worst is not None else _ZERO)
        report.measured[f"{inst.id}:K*"] = kstar
    return report


# -- Malmquist bookkeeping ---------------------------------------------------

def _as_scalar_poly(U: UniPoly) -> ValuedPoly:
    if not U.has_constant_coefficients():
        raise HypothesisViolation("degree identity needs scalar coefficients")
    return ValuedPoly([c.num[0] for c in U.coeffs], U.prime)


def _affine_from(f: RatFunc) -> Fraction:
    """A radius beyond every zero, pole and log+ kink of ``f``."""
    top = Fraction(0)
    for zr in (f.zeros(), f.poles()):
        for sw, _ in zr.radii:
            top = max(top, sw)
    dn, dd = f.num.degree, f.den.degree
    if dn != dd:
        c = valuation(f.num.lead, f.prime) - valuation(f.den.lead, f.prime)
        top = max(top, -c / (dn - dd))
    return top


def check_degree_identity(inst: DegreeInstance) -> CheckReport:
    """Slope of ``T(s, R(f))`` equals ``deg R`` times the slope of ``T(s, f)``.

    ``R = Phi/B`` is reduced first, so ``deg R = max(deg Phi, deg B)`` in
    lowest terms.  Slopes are taken between two integer radii beyond every
    zero, pole and ``log+`` kink of ``f`` and ``R(f)``.
    """
    f = inst.f
    if f.is_constant():
        raise HypothesisViolation("the degree identity needs a nonconstant f")
    phi, b = _as_scalar_poly(inst.Phi), _as_scalar_poly(inst.B)
    if b.is_zero():
        raise DegenerateComposition("B is the zero polynomial")
    g = poly_gcd(phi, b)
    if not g.is_constant():
        phi, b = phi // g, b // g
    d = max(phi.degree, b.degree, 0)
    to_uni = lambda v: UniPoly([RatFunc.const(c, f.prime) for c in v.coeffs], f.prime)  # noqa: E731
    Bf = to_uni(b)(f)
    if Bf.is_zero():
        raise DegenerateComposition("B(f) vanishes identically")
    Rf = to_uni(phi)(f) / Bf
    top = _affine_from(f)
    if not Rf.is_zero():
        top = max(top, _affine_from(Rf))
    s1 = Fraction(floor(top) + 1)
    s2 = s1 + 1
    slope_f = _T(f, s2) - _T(f, s1)
    slope_R = _T(Rf, s2) - _T(Rf, s1)
    report = CheckReport()
    report.verdicts.append(Verdict(inst.id, "slope(T(R.f))<=d*slope(T(f))", s1, slope_R, d * slope_f))
    report.verdicts.append(Verdict(inst.id, "d*slope(T(f))<=slope(T(R.f))", s1, d * slope_f, slope_R))
    report.measured[f"{inst.id}:d"] = Fraction(d)
    report.measured[f"{inst.id}:slope_f"] = slope_f
    return report


def _admissibility_report(coeffs: Sequence[RatFunc], f: RatFunc, radii) -> dict:
    radii = [s for s in radii if _T(f, s) > 0]
    if not radii:
        return {"s": [], "ratio": [], "trend": "undefined"}
    den = [T_hat(f, s) for s in radii]
    num = [[T_hat(c, s) for s in radii] for c in coeffs if not c.is_zero()]
    if not num:
        num = [[CharacteristicRow(s, _ZERO, _ZERO) for s in radii]]
    return ratio_report(num, den).to_json()


def check_malmquist_consequence(
    inst: ClunieInstance, ladder: Sequence, *, skip_out_of_window: bool = False
) -> CheckReport:
    """The proof-step inequalities behind ``q = 0, p <= deg Omega``.

    * Division ``Phi = Phi1*B + Phi2`` and the Clunie bound for the rearranged
      equation ``B(f) (Omega - Phi1(f)) = Phi2(f)``, plus its valence and
      characteristic forms when the strict valence regime applies.
    * ``T(Omega) <= sum T(c_i) + sum_k deg_{X_k}(Omega) T(f_k)`` for ``s >= 0``.
      The single-``T(f)`` form ``deg(Omega) T(f) + sum T(c_i) + C`` is only
      measured: shifted poles can raise the slope past ``deg Omega``.
    * ``q = 0`` and ``p <= deg Omega`` are reported, never asserted.
    """
    if not inst.Phi.depends_only_on_x0():
        raise NotPolynomialInF("Phi involves shifted operands")
    _difference_family(inst, "the Malmquist bookkeeping")
    vals, omega = _require_solution(inst)
    n = inst.Omega.nvars
    phi1, phi2 = divide_univariate(inst.Phi.to_unipoly(), inst.B)
    rearranged = ClunieInstance(
        inst.prime, inst.f, inst.ops, inst.B,
        inst.Omega - phi1.to_diffpoly(n), phi2.to_diffpoly(n), inst.id,
    )
    report = CheckReport()
    sub = check_clunie_m(rearranged, ladder, skip_out_of_window=skip_out_of_window)
    for v in sub.verdicts:
        report.verdicts.append(Verdict(v.instance, "malmquist_clunie_m", v.s, v.lhs, v.rhs))
    report.window_skipped += sub.window_skipped
    radii = [v.s for v in sub.verdicts]

    if inst.B.has_constant_coefficients() and not shifted_pole_coincidence(inst):
        nsub = check_clunie_N(rearranged, radii, skip_out_of_window=True)
        m_rhs = {v.s: v.rhs for v in sub.verdicts}
        for v in nsub.verdicts:
            report.verdicts.append(Verdict(v.instance, "malmquist_clunie_N", v.s, v.lhs, v.rhs))
            rest = eval_at(rearranged.Omega, vals)
            report.verdicts.append(
                Verdict(v.instance, "malmquist_T", v.s, _T(rest, v.s), m_rhs[v.s] + v.rhs)
            )

    deg_omega = inst.Omega.total_deg()
    coeffs = inst.Omega.coefficients()
    single_form = []
    for s in _nonneg_window(radii, True, CheckReport(), ""):
        rhs = sum((_T(c, s) for c in coeffs), _ZERO)
        rhs += sum((inst.Omega.degree_in(k) * _T(fk, s) for k, fk in enumerate(vals)), _ZERO)
        lhs = _T(omega, s)
        report.verdicts.append(Verdict(inst.id, "T(Omega)<=sum T(c)+sum deg_k T(f_k)", s, lhs, rhs))
        single_form.append(lhs - deg_omega * _T(inst.f, s) - sum((_T(c, s) for c in coeffs), _ZERO))
    if single_form:
        report.measured[f"{inst.id}:C_first"] = single_form[0]
        report.measured[f"{inst.id}:C_max"] = max(single_form)

    p_deg = inst.Phi.degree_in(0) if not inst.Phi.is_zero() else -1
    all_coeffs = list(inst.B.coeffs) + coeffs + inst.Phi.coefficients()
    report.advisories.append({
        "instance": inst.id,
        "kind": "malmquist",
        "asserted": False,
        "q": inst.B.degree,
        "p": p_deg,
        "degOmega": deg_omega,
        "q_is_zero": inst.B.degree == 0,
        "p_le_degOmega": p_deg <= deg_omega,
        "Phi1_degree": phi1.degree,
        "Phi2_degree": phi2.degree,
        "admissibility": _admissibility_report(all_coeffs, inst.f, radii),
    })
    return report


# -- Mokhon'ko ---------------------------------------------------------------

def check_mokhonko(
    inst: MokhonkoInstance, ladder: Sequence, *, skip_out_of_window: bool = False
) -> CheckReport:
    """Proximity of a non-solution target: with ``g = f - a`` and
    ``P(g + a, ...) = Psi(g, ...) + P(a, ...)``,

        m(1/g) <= sum_i [ m(C_i) + sum_k i_k m(g_k/g) ] + m(1/P(a, ...)).

    Operators may be derivatives (differential form) or shifts/differences.
    """
    p = inst.prime
    for op in inst.ops:
        op.validate(p)
    vals = operands(inst.f, inst.ops)
    if not eval_at(inst.P, vals).is_zero():
        raise NotASolution(f"instance {inst.id!r}: f does not solve P = 0")
    psi, pconst = substitute_shift_target(inst.P, inst.a, inst.ops)
    if pconst.is_zero():
        raise TargetIsSolution(f"instance {inst.id!r}: the target a solves P = 0")
    g = inst.f - inst.a
    if g.is_zero():
        raise TargetIsSolution(f"instance {inst.id!r}: g = f - a vanishes")
    report = CheckReport()
    radii = _window(ladder, family_window(inst.ops, p), skip_out_of_window, report,
                    "Mokhon'ko estimate")
    ratios = [gk / g for gk in operands(g, inst.ops)[1:]]
    inv_g, inv_p = g.inverse(), pconst.inverse()
    lhs_rows = []
    for s in radii:
        lhs = _m(inv_g, s)
        rhs = _m(inv_p, s)
        for exp, c in psi.terms:
            rhs += _m(c, s) + sum((e * _m(r, s) for e, r in zip(exp[1:], ratios)), _ZERO)
        report.verdicts.append(Verdict(inst.id, "mokhonko", s, lhs, rhs))
        lhs_rows.append(CharacteristicRow(s, lhs, _ZERO))
    positive = [(row, T_hat(inst.f, row.s)) for row in lhs_rows if _T(inst.f, row.s) > 0]
    if positive:
        adv = ratio_report([r for r, _ in positive], [t for _, t in positive]).to_json()
    else:
        adv = {"s": [], "ratio": [], "trend": "undefined"}
    adv.update({"instance": inst.id, "kind": "mokhonko", "asserted": False})
    report.advisories.append(adv)
    return report
