"""Corpus ingestion, end-to-end checks of the component-count /
discriminant-valuation characterization of the isogeny invariant, and
report generation.

Each corpus entry is one curve with a designated p-isogeny; the harness
computes local data for both curves of the pair, the invariant exponent by
differential scaling, the formal-series leading coefficient as an
independent oracle, and evaluates every applicable check.  Entries whose
reduction type falls outside a check's hypothesis are skipped by that
check, never failed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .exactnum import LocalFieldContext, Polynomial, parse_rational, residue, valuation
from .formalgroup import (
    default_order,
    formal_height,
    isogeny_series,
    isogeny_series_conjugate_check,
    separability_shadow,
)
from .isogeny import IsogenyData, alpha, dual_isogeny, find_kernels, velu
from .localdata import (
    ADDITIVE_POT_SUPERSINGULAR,
    GOOD_SUPERSINGULAR,
    LocalData,
    is_supersingular_j,
    local_data,
)
from .weierstrass import WeierstrassModel, invariants


@dataclass
class CorpusEntry:
    label: str
    coefficients: list
    p: int
    f: int = 1
    kernel: list = None
    expected: dict = None

    @classmethod
    def from_json(cls, obj):
        return cls(
            label=str(obj["label"]),
            coefficients=[str(c) for c in obj["coefficients"]],
            p=int(obj["p"]),
            f=int(obj.get("f", 1)),
            kernel=obj.get("kernel"),
            expected=obj.get("expected"),
        )

    def model(self):
        return WeierstrassModel.from_list(self.coefficients)


class CorpusError(ValueError):
    pass


def load_corpus(path_or_lines):
    """Parse a line-delimited corpus; parse errors carry line numbers."""
    if isinstance(path_or_lines, str):
        with open(path_or_lines) as fh:
            lines = fh.readlines()
    else:
        lines = list(path_or_lines)
    entries = []
    for i, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            entries.append(CorpusEntry.from_json(json.loads(line)))
        except (ValueError, KeyError) as exc:
            raise CorpusError(f"line {i}: {exc}") from exc
    return entries


@dataclass
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "skip"
    detail: str

    def to_record(self):
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class EntryAnalysis:
    """Everything computed for one corpus entry."""

    entry: CorpusEntry
    iso: IsogenyData
    dual: IsogenyData
    data_e: LocalData
    data_ep: LocalData
    alpha_exponent: int
    alpha_exponent_dual: int
    series_valuation: int
    series_valuation_dual: int
    checks: list = field(default_factory=list)

    def to_record(self):
        e = self.entry
        return {
            "label": e.label,
            "p": e.p,
            "f": e.f,
            "E": self.data_e.to_record(),
            "E_prime": self.data_ep.to_record(),
            "alpha_exponent": self.alpha_exponent,
            "alpha": _alpha_label(e.p, e.f, self.alpha_exponent),
            "checks": [c.to_record() for c in self.checks],
        }


def _alpha_label(p, f, exponent):
    if exponent == 0:
        return "1"
    return f"{p}^{f}" if f > 1 else str(p)


def select_kernel(model, p, kernel_coeffs=None):
    """The designated kernel polynomial: validate an explicit one, or
    discover automatically when the curve has exactly one."""
    if kernel_coeffs is not None:
        h = Polynomial([parse_rational(c) for c in kernel_coeffs]).monic()
        velu(model, h, p)  # raises KernelError when invalid
        return h
    if (p - 1) // 2 > 3:
        raise CorpusError(
            f"automatic kernel discovery is limited to (p-1)/2 <= 3; "
            f"p = {p} entries must supply the kernel explicitly"
        )
    kernels = find_kernels(model, p)
    if not kernels:
        raise CorpusError("curve has no rational p-isogeny")
    if len(kernels) > 1:
        raise CorpusError(
            f"curve has {len(kernels)} rational p-isogenies; "
            "an explicit kernel selection is required"
        )
    return kernels[0]


def analyze_entry(entry: CorpusEntry, precision=None) -> EntryAnalysis:
    """Full pipeline for one entry: isogeny, dual, local data on both
    sides, the invariant exponent by both routes, and all checks."""
    p = entry.p
    ctx = LocalFieldContext(p, entry.f)
    model = entry.model()
    N = precision if precision is not None else default_order(p)

    h = select_kernel(model, p, entry.kernel)
    iso = velu(model, h, p)
    dual = dual_isogeny(iso)

    data_e = local_data(iso.domain, p)
    data_ep = local_data(iso.codomain, p)

    a = alpha(iso, ctx)
    a_dual = alpha(dual, ctx)

    phi = isogeny_series(iso, N)
    phi_dual = isogeny_series(dual, N)

    analysis = EntryAnalysis(
        entry=entry,
        iso=iso,
        dual=dual,
        data_e=data_e,
        data_ep=data_ep,
        alpha_exponent=a.exponent,
        alpha_exponent_dual=a_dual.exponent,
        series_valuation=phi.leading_valuation(p),
        series_valuation_dual=phi_dual.leading_valuation(p),
    )
    analysis.checks = run_checks(analysis, N)
    return analysis


def run_checks(an: EntryAnalysis, N) -> list:
    checks = [
        check_expected(an),
        check_prop21(an),
        check_dual_exponents(an),
        check_a1_series(an),
        check_ogg(an),
        check_main_theorem(an),
        check_partial_converse(an),
        check_eq31_inequality(an),
        check_no_good_supersingular(an),
        check_separability(an),
        check_height_oracle(an),
        check_formal_composition(an, N),
    ]
    return checks


def check_expected(an: EntryAnalysis) -> CheckResult:
    """Compare against the entry's database-derived expected block."""
    exp = an.entry.expected
    if not exp:
        return CheckResult("expected_block", "skip", "no expected block")
    actual = {
        "v_min": an.data_e.v_min,
        "v_min_codomain": an.data_ep.v_min,
        "kodaira": an.data_e.kodaira.label(),
        "kodaira_codomain": an.data_ep.kodaira.label(),
        "m": an.data_e.m,
        "m_codomain": an.data_ep.m,
        "alpha_exponent": an.alpha_exponent,
    }
    bad = []
    for k, v in exp.items():
        if k not in actual:
            bad.append(f"unknown field {k}")
        elif actual[k] != v:
            bad.append(f"{k}: expected {v}, computed {actual[k]}")
    if bad:
        return CheckResult("expected_block", "fail", "; ".join(bad))
    return CheckResult("expected_block", "pass", f"all {len(exp)} expected fields match")


def check_prop21(an: EntryAnalysis) -> CheckResult:
    """Both pullback valuations are >= 0 and sum to val_K(p) = 1."""
    e, ed = an.alpha_exponent, an.alpha_exponent_dual
    if e < 0 or ed < 0:
        return CheckResult(
            "pullback_nonnegative_and_sum", "fail",
            f"negative pullback valuation: ({e}, {ed})",
        )
    if e + ed != 1:
        return CheckResult(
            "pullback_nonnegative_and_sum", "fail",
            f"exponent sum {e} + {ed} = {e + ed} != 1",
        )
    return CheckResult(
        "pullback_nonnegative_and_sum", "pass", f"{e} + {ed} = 1"
    )


def check_dual_exponents(an: EntryAnalysis) -> CheckResult:
    """Exactly one of the dual pair of exponents is 0 (unramified case)."""
    pair = sorted((an.alpha_exponent, an.alpha_exponent_dual))
    if pair == [0, 1]:
        return CheckResult(
            "one_exponent_zero", "pass",
            f"exponents ({an.alpha_exponent}, {an.alpha_exponent_dual})",
        )
    return CheckResult(
        "one_exponent_zero", "fail",
        f"exponents ({an.alpha_exponent}, {an.alpha_exponent_dual})",
    )


def check_a1_series(an: EntryAnalysis) -> CheckResult:
    """Cross-module oracle: the valuation of the leading formal series
    coefficient equals the differential-scaling exponent, on both sides."""
    ok = (
        an.series_valuation == an.alpha_exponent
        and an.series_valuation_dual == an.alpha_exponent_dual
    )
    detail = (
        f"series ({an.series_valuation}, {an.series_valuation_dual}) vs "
        f"scaling ({an.alpha_exponent}, {an.alpha_exponent_dual})"
    )
    return CheckResult("a1_series_consistency", "pass" if ok else "fail", detail)


def check_ogg(an: EntryAnalysis) -> CheckResult:
    """v_min = conductor + m - 1 on both sides; equal conductors; and
    conductor exactly 2 for additive reduction at p >= 5."""
    bad = []
    for tag, d in (("E", an.data_e), ("E'", an.data_ep)):
        if d.v_min != d.conductor_exponent + d.m - 1:
            bad.append(
                f"{tag}: v_min {d.v_min} != conductor {d.conductor_exponent}"
                f" + m {d.m} - 1"
            )
        if an.entry.p >= 5 and d.reduction.startswith("additive"):
            if d.conductor_exponent != 2:
                bad.append(
                    f"{tag}: additive at p >= 5 but conductor "
                    f"{d.conductor_exponent} != 2"
                )
    if an.data_e.conductor_exponent != an.data_ep.conductor_exponent:
        bad.append(
            f"conductors differ: {an.data_e.conductor_exponent} vs "
            f"{an.data_ep.conductor_exponent}"
        )
    if bad:
        return CheckResult("ogg_consistency", "fail", "; ".join(bad))
    return CheckResult(
        "ogg_consistency", "pass",
        f"conductor {an.data_e.conductor_exponent} on both sides",
    )


def _in_main_theorem_class(an: EntryAnalysis) -> bool:
    return an.data_e.reduction == ADDITIVE_POT_SUPERSINGULAR


def check_main_theorem(an: EntryAnalysis) -> CheckResult:
    """Additive potentially supersingular, unramified: the exponent is 0
    exactly when m(E) < m(E'), 1 exactly when m(E) > m(E'), equivalently
    with v_min, and the two differences agree."""
    if not _in_main_theorem_class(an):
        return CheckResult(
            "main_theorem", "skip",
            f"reduction {an.data_e.reduction!r} outside hypothesis",
        )
    m1, m2 = an.data_e.m, an.data_ep.m
    v1, v2 = an.data_e.v_min, an.data_ep.v_min
    e = an.alpha_exponent
    bad = []
    if m1 == m2:
        bad.append(f"m(E) = m(E') = {m1}")
    if v1 == v2:
        bad.append(f"v_min(E) = v_min(E') = {v1}")
    if (e == 0) != (m1 < m2):
        bad.append(f"exponent {e} but m(E) {m1} vs m(E') {m2}")
    if (e == 1) != (m1 > m2):
        bad.append(f"exponent {e} but m(E) {m1} vs m(E') {m2}")
    if (e == 0) != (v1 < v2):
        bad.append(f"exponent {e} but v_min(E) {v1} vs v_min(E') {v2}")
    if (e == 1) != (v1 > v2):
        bad.append(f"exponent {e} but v_min(E) {v1} vs v_min(E') {v2}")
    if m1 - m2 != v1 - v2:
        bad.append(f"m difference {m1 - m2} != v_min difference {v1 - v2}")
    if bad:
        return CheckResult("main_theorem", "fail", "; ".join(bad))
    return CheckResult(
        "main_theorem", "pass",
        f"exponent {e}, m ({m1}, {m2}), v_min ({v1}, {v2})",
    )


def check_partial_converse(an: EntryAnalysis) -> CheckResult:
    """Good supersingular or additive potentially supersingular: exponent 0
    forces strictly increasing m and v_min; exponent 1 the reverse."""
    if an.data_e.reduction not in (GOOD_SUPERSINGULAR, ADDITIVE_POT_SUPERSINGULAR):
        return CheckResult(
            "partial_converse", "skip",
            f"reduction {an.data_e.reduction!r} outside hypothesis",
        )
    m1, m2 = an.data_e.m, an.data_ep.m
    v1, v2 = an.data_e.v_min, an.data_ep.v_min
    e = an.alpha_exponent
    if e == 0:
        ok = m1 < m2 and v1 < v2
    else:
        ok = m1 > m2 and v1 > v2
    detail = f"exponent {e}, m ({m1}, {m2}), v_min ({v1}, {v2})"
    return CheckResult("partial_converse", "pass" if ok else "fail", detail)


def check_eq31_inequality(an: EntryAnalysis) -> CheckResult:
    """Strict bound 0 < exponent + (v_min(E') - v_min(E))/12 < 1."""
    if not _in_main_theorem_class(an):
        return CheckResult(
            "base_change_strict_bound", "skip",
            f"reduction {an.data_e.reduction!r} outside hypothesis",
        )
    e = Fraction(an.alpha_exponent)
    q = e + Fraction(an.data_ep.v_min - an.data_e.v_min, 12)
    detail = (
        f"exponent {an.alpha_exponent} + ({an.data_ep.v_min} - "
        f"{an.data_e.v_min})/12 = {q}"
    )
    if 0 < q < 1:
        return CheckResult("base_change_strict_bound", "pass", detail)
    return CheckResult("base_change_strict_bound", "fail", detail)


def check_no_good_supersingular(an: EntryAnalysis) -> CheckResult:
    """No curve with a validated rational p-isogeny may be good
    supersingular over an unramified field."""
    bad = [
        tag
        for tag, d in (("E", an.data_e), ("E'", an.data_ep))
        if d.reduction == GOOD_SUPERSINGULAR
    ]
    if bad:
        return CheckResult(
            "no_good_supersingular", "fail",
            f"{', '.join(bad)} classified good-supersingular despite a p-isogeny",
        )
    return CheckResult(
        "no_good_supersingular", "pass",
        f"reductions ({an.data_e.reduction}, {an.data_ep.reduction})",
    )


def check_separability(an: EntryAnalysis) -> CheckResult:
    """Good reduction: the reduced isogeny is separable iff the exponent is
    0, and exactly one of the dual pair is separable."""
    if not an.data_e.reduction.startswith("good"):
        return CheckResult(
            "separability", "skip",
            f"reduction {an.data_e.reduction!r} is not good",
        )
    p = an.entry.p
    sep = separability_shadow(an.iso, p)
    sep_dual = separability_shadow(an.dual, p)
    bad = []
    if sep != (an.alpha_exponent == 0):
        bad.append(f"separable(phi) = {sep} but exponent {an.alpha_exponent}")
    if sep_dual != (an.alpha_exponent_dual == 0):
        bad.append(
            f"separable(dual) = {sep_dual} but exponent {an.alpha_exponent_dual}"
        )
    if sep == sep_dual:
        bad.append(f"dual pair separabilities both {sep}")
    if bad:
        return CheckResult("separability", "fail", "; ".join(bad))
    return CheckResult(
        "separability", "pass", f"separable(phi) = {sep}, separable(dual) = {sep_dual}"
    )


def _good_model_with_residual_j(j_res: int, p: int) -> WeierstrassModel:
    """A curve with good reduction at p whose reduced j-invariant is j_res."""
    j = j_res % p
    if p == 3:
        # small search; the three residue classes are all realized
        for a2 in range(3):
            for a4 in range(3):
                for a6 in range(1, 4):
                    m = WeierstrassModel.from_list([0, a2, 0, a4, a6])
                    try:
                        iv = invariants(m)
                    except Exception:
                        continue
                    if valuation(iv.disc, 3) == 0 and residue(iv.j, 3) == j:
                        return m
        raise RuntimeError(f"no good-reduction model for j = {j} mod 3")
    if j == 0:
        return WeierstrassModel.from_list([0, 0, 0, 0, 1])
    if j == 1728 % p:
        return WeierstrassModel.from_list([0, 0, 0, 1, 0])
    k = j * pow((1728 - j) % p, -1, p) % p
    return WeierstrassModel.from_list([0, 0, 0, 3 * k % p, 2 * k % p])


def check_height_oracle(an: EntryAnalysis) -> CheckResult:
    """Dual supersingularity oracle: the formal-group height of a
    good-reduction model with the same residual j-invariant must agree with
    the Hasse-invariant classification, for both curves of the pair."""
    p = an.entry.p
    bad = []
    seen = []
    for tag, d in (("E", an.data_e), ("E'", an.data_ep)):
        red = d.reduction
        if red == "multiplicative" or red.endswith("multiplicative"):
            continue
        iv = invariants(d.minimal_model)
        j_res = residue(iv.j, p)
        hasse_ss = is_supersingular_j(j_res, p)
        if red.startswith("good"):
            height = formal_height(d.minimal_model, p)
        else:
            height = formal_height(_good_model_with_residual_j(j_res, p), p)
        series_ss = height == 2
        seen.append(f"{tag}: height {height}, Hasse ss={hasse_ss}")
        if series_ss != hasse_ss:
            bad.append(
                f"{tag}: formal height {height} disagrees with Hasse test "
                f"(supersingular={hasse_ss})"
            )
        claimed_ss = red in (GOOD_SUPERSINGULAR, ADDITIVE_POT_SUPERSINGULAR)
        if claimed_ss != hasse_ss:
            bad.append(f"{tag}: classification {red} inconsistent with Hasse test")
    if not seen:
        return CheckResult("height_oracle", "skip", "no potentially good curve in pair")
    if bad:
        return CheckResult("height_oracle", "fail", "; ".join(bad))
    return CheckResult("height_oracle", "pass", "; ".join(seen))


def check_formal_composition(an: EntryAnalysis, N) -> CheckResult:
    """The composite of the two formal homomorphisms equals the
    multiplication-by-p series, after the unimodular parameter change
    identifying the dual's codomain with the original minimal model."""
    p = an.entry.p
    order = min(N, p * p + 1)
    ok, detail = isogeny_series_conjugate_check(an.iso, an.dual, p, order)
    return CheckResult("formal_composition", "pass" if ok else "fail", detail)


@dataclass
class VerificationReport:
    entries: list = field(default_factory=list)  # EntryAnalysis or error dicts
    header: dict = field(default_factory=dict)

    def summary(self):
        total = passed = failed = skipped = errors = 0
        for item in self.entries:
            if isinstance(item, dict):
                errors += 1
                continue
            for c in item.checks:
                total += 1
                if c.status == "pass":
                    passed += 1
                elif c.status == "fail":
                    failed += 1
                else:
                    skipped += 1
        return {
            "entries": len(self.entries),
            "entry_errors": errors,
            "checks": total,
            "passed": passed,
            "failed": failed,
            "skipped": skipped,
        }

    def all_passed(self):
        s = self.summary()
        return s["failed"] == 0 and s["entry_errors"] == 0

    def to_document(self):
        records = []
        for item in self.entries:
            records.append(item if isinstance(item, dict) else item.to_record())
        return {
            "header": self.header,
            "entries": records,
            "summary": self.summary(),
        }

    def render(self):
        return json.dumps(self.to_document(), indent=2, sort_keys=False)


REPORT_HEADER_NOTE = (
    "Checks are performed over unramified p-adic fields only; ramified base "
    "fields enter solely through derived inequalities and are not instantiated."
)


def run_verification(corpus, precision=None, fail_fast=False) -> VerificationReport:
    """Run every check on every corpus entry, deterministically by label."""
    if isinstance(corpus, str) or (
        corpus and not isinstance(corpus[0], CorpusEntry)
    ):
        entries = load_corpus(corpus)
    else:
        entries = list(corpus)
    entries.sort(key=lambda e: e.label)
    report = VerificationReport(header={"note": REPORT_HEADER_NOTE})
    for entry in entries:
        try:
            report.entries.append(analyze_entry(entry, precision))
        except Exception as exc:
            report.entries.append(
                {"label": entry.label, "error": f"{type(exc).__name__}: {exc}"}
            )
            if fail_fast:
                break
        else:
            last = report.entries[-1]
            if fail_fast and any(c.status == "fail" for c in last.checks):
                break
    return report
