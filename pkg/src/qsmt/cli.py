"""Command-line front end: expansions, basis matrices, verification sweeps,
and the rank-two closed-form tables.

One canonical input grammar (also shown by ``--help``):

* weights are comma-separated simple-root coefficients (``--mu 1,1``);
* shapes are comma-separated column multiplicities for heights 1..n-1
  (``--lambda 3,4,2``, parentheses optional);
* tableaux are bracketed columns (``[[2,3],[1,2]]``), each column a strictly
  increasing list of entries in 1..n;
* monomials are bracketed exponent levels (``[[3],[6,3],[7,5,2]]``), level r
  listing its r exponents in printed order.

Exit codes are a stable contract: 0 success, 1 usage error, 2 verification
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .bases import (
    BasisMatrix,
    Check,
    Report,
    TheoremViolationError,
    _CheckAcc,
    alternative_linear_extension,
    canonical_basis_with_certificate,
    crystal_congruence_check,
    dual_smt,
    dual_to_canonical_matrix,
    kashiwara_tableau_matrix,
    smt_matrix,
    stability_check,
)
from .qlaurent import LaurentPoly, format_rational, membership, qint, qint_signed
from .repmod import (
    FLAVOR_DIVIDED,
    FLAVOR_KASHIWARA,
    ModuleVector,
    act_E,
    act_F,
    act_K,
    act_Kinv,
    alpha_weight,
    apply_monomial,
    closed_form_divided_F,
    divided_F,
    highest_weight_vector,
)
from .sl3 import (
    alternating_qbinom_identity,
    cross_validate,
    expansion_matrix_closed,
    expansion_matrix_inverse_closed,
    qpower_subset_sum_identity,
)
from .tableaux import (
    RootLatticeWeight,
    Shape,
    StandardMonomial,
    Tableau,
    enumerate_standard,
    enumerate_tableaux,
    is_standard,
    lambda_for,
    marked_step_properties,
    monomial_of,
    smallest_tableau,
    weight,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2

FORMATS = ("json", "csv", "pretty")
WHICH_BASIS = ("dual-smt", "canonical", "dual-to-canonical")
WHICH_TABLE = ("closed", "inverse")


class UsageError(Exception):
    """Bad invocation or malformed input encoding."""


# ---------------------------------------------------------------------------
# input grammar
# ---------------------------------------------------------------------------


def _parse_ints(text: str, what: str) -> tuple[int, ...]:
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if not s:
        return ()
    out = []
    for idx, piece in enumerate(s.split(","), start=1):
        piece = piece.strip()
        try:
            out.append(int(piece))
        except ValueError:
            raise UsageError(
                f"{what}: expected an integer at item {idx}, got {piece!r} in {text!r}"
            ) from None
    return tuple(out)


def parse_weight(n: int, text: str) -> RootLatticeWeight:
    coeffs = _parse_ints(text, "weight")
    if len(coeffs) != n - 1:
        raise UsageError(
            f"weight: need {n - 1} coefficients for n={n}, got {len(coeffs)}"
        )
    if any(b < 0 for b in coeffs):
        raise UsageError(f"weight: coefficients must be >= 0, got {text!r}")
    return RootLatticeWeight(coeffs)


def parse_shape(n: int, text: str) -> Shape:
    mults = _parse_ints(text, "shape")
    if len(mults) != n - 1:
        raise UsageError(
            f"shape: need {n - 1} column multiplicities for n={n}, got {len(mults)}"
        )
    try:
        return Shape(n, mults)
    except ValueError as e:
        raise UsageError(f"shape: {e}") from None


def _parse_nested(text: str, what: str) -> list:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(
            f"{what}: invalid bracket encoding at position {e.pos}: {e.msg}"
        ) from None
    if not isinstance(data, list):
        raise UsageError(f"{what}: expected a bracketed list, got {text!r}")
    return data


def parse_tableau(n: int, text: str) -> Tableau:
    cols = _parse_nested(text, "tableau")
    try:
        return Tableau.from_columns(n, cols)
    except (TypeError, ValueError) as e:
        raise UsageError(f"tableau: {e}") from None


def parse_monomial(n: int, text: str) -> StandardMonomial:
    levels = _parse_nested(text, "monomial")
    try:
        return StandardMonomial.from_lists(n, levels)
    except (TypeError, ValueError) as e:
        raise UsageError(f"monomial: {e}") from None


# ---------------------------------------------------------------------------
# run configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    """One parsed invocation: the command, its inputs, bounds, and plumbing."""

    command: str
    n: int
    fmt: str = "pretty"
    out: Optional[str] = None
    jobs: int = 1
    fail_fast: bool = False
    verbose: int = 0
    weight: Optional[RootLatticeWeight] = None
    shape: Optional[Shape] = None
    tableau: Optional[Tableau] = None
    monomial: Optional[StandardMonomial] = None
    flavor: str = FLAVOR_DIVIDED
    which: str = ""
    max_mu: int = 6
    max_boxes: int = 0
    max_cols: int = 6
    with_sl3: bool = False
    max_bk: int = 4
    sl3_b: int = 0
    sl3_k: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise UsageError(f"--n must be at least 2, got {self.n}")
        if self.fmt not in FORMATS:
            raise UsageError(f"--format must be one of {FORMATS}")
        if self.jobs < 1:
            raise UsageError("--jobs must be a positive integer")
        for name, bound in (
            ("--max-mu", self.max_mu),
            ("--max-cols", self.max_cols),
            ("--max-bk", self.max_bk),
        ):
            if bound < 1:
                raise UsageError(f"{name} must be a positive integer")
        if self.max_boxes < 0:
            raise UsageError("--max-boxes must be a positive integer")


def default_max_boxes(n: int) -> int:
    """Sweep default: 7 boxes through rank 3, 5 beyond (the shipped
    verification bounds)."""
    return 7 if n <= 3 else 5


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------


def _emit(cfg: RunConfig, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_lines(report: Report, verbose: int = 0) -> list[str]:
    lines = [f"{'PASS' if report.passed else 'FAIL'} {report.title}"]
    for c in report.checks:
        line = f"  {'PASS' if c.passed else 'FAIL'} {c.name}"
        if c.witness and (verbose or not c.passed):
            line += f" [{c.witness}]"
        lines.append(line)
    return lines


def _matrix_lines(name: str, m: BasisMatrix) -> list[str]:
    lines = [f"{name} at weight {m.weight} ({m.nrows} x {m.ncols})"]
    lines.append("  columns: " + ", ".join(str(x) for x in m.col_index))
    if m.row_index != m.col_index:
        lines.append("  rows:    " + ", ".join(str(x) for x in m.row_index))
    for row in m.entries:
        lines.append("  [" + ", ".join(format_rational(x) for x in row) + "]")
    return lines


def _csv_table(rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# expand
# ---------------------------------------------------------------------------


def cmd_expand(cfg: RunConfig) -> int:
    if (cfg.tableau is None) == (cfg.monomial is None):
        raise UsageError("expand: give exactly one of --tableau / --monomial")
    if cfg.tableau is not None:
        if not is_standard(cfg.tableau):
            raise UsageError(
                "expand: --tableau must be standard (rows non-increasing "
                "rightwards)"
            )
        mono = monomial_of(cfg.tableau)
        lam = cfg.shape if cfg.shape is not None else cfg.tableau.shape
    else:
        mono = cfg.monomial
        lam = cfg.shape if cfg.shape is not None else lambda_for(mono.weight())
    try:
        vec = apply_monomial(mono, cfg.flavor, highest_weight_vector(lam))
    except ValueError as e:
        raise UsageError(f"expand: {e}") from None

    terms = vec.terms()
    lead = [
        (t, x) for t, x in terms if is_standard(t) and monomial_of(t) == mono
    ]
    ordered = lead + [pair for pair in terms if pair not in lead]

    if cfg.fmt == "json":
        data = vec.to_json_dict()
        for entry, (_, x) in zip(data["terms"], terms):
            entry["in_m"] = membership(x).in_m
        payload = {
            "command": "expand",
            "flavor": cfg.flavor,
            "monomial": mono.to_lists(),
            "vector": data,
        }
        _emit(cfg, json.dumps(payload, indent=2))
    elif cfg.fmt == "csv":
        rows = [["tableau", "coeff"]]
        rows += [[json.dumps(t.to_lists()), format_rational(x)] for t, x in ordered]
        _emit(cfg, _csv_table(rows))
    else:
        lines = [f"F({mono}) [{cfg.flavor}] on the highest-weight vector of {lam}:"]
        for t, x in ordered:
            piece = f"  v{t}" if x.is_one() else f"  ({format_rational(x)}) * v{t}"
            if cfg.flavor == FLAVOR_KASHIWARA and membership(x).in_m:
                piece += "  [in_m]"
            lines.append(piece)
        _emit(cfg, "\n".join(lines))
    return EXIT_OK


# ---------------------------------------------------------------------------
# basis
# ---------------------------------------------------------------------------


def _emit_matrix_with_report(
    cfg: RunConfig, name: str, lam: Optional[Shape], m: BasisMatrix, report: Report
) -> None:
    if cfg.fmt == "json":
        payload = {
            "matrix": m.to_json_dict(cfg.n, lam, name),
            "report": report.to_json_dict(),
        }
        _emit(cfg, json.dumps(payload, indent=2))
    elif cfg.fmt == "csv":
        _emit(cfg, m.to_csv())
    else:
        lines = _matrix_lines(name, m)
        lines += _report_lines(report, cfg.verbose)
        _emit(cfg, "\n".join(lines))


def cmd_basis(cfg: RunConfig) -> int:
    mu = cfg.weight
    if mu is None:
        raise UsageError("basis: --mu is required")
    if all(b == 0 for b in mu.coefficients):
        raise UsageError("basis: the weight must be nonzero")
    lam = lambda_for(mu)
    try:
        if cfg.which == "dual-smt":
            d = dual_smt(mu)
            matrix, report, name = d.coords, d.report, "dual_smt"
        elif cfg.which == "canonical":
            matrix, report = canonical_basis_with_certificate(mu)
            name = "canonical"
        else:
            matrix, report = dual_to_canonical_matrix(mu)
            name = "dual_to_canonical"
    except TheoremViolationError as e:
        print("\n".join(_report_lines(e.report, verbose=1)), file=sys.stderr)
        return EXIT_VIOLATION
    _emit_matrix_with_report(cfg, name, lam, matrix, report)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verification sweeps
#
# Each suite enumerates small cases and runs one pure worker per case, so the
# sweep can fan out to a process pool; results are folded in submission order,
# keeping output deterministic.  The relation and agreement checks here are
# deliberately self-contained rather than shared with the library internals.
# ---------------------------------------------------------------------------


def shapes_up_to(n: int, max_boxes: int) -> list[Shape]:
    """All shapes of rank n with at most max_boxes boxes, empty included."""
    out: list[Shape] = []

    def rec(height: int, left: int, acc: list[int]) -> None:
        if height == n:
            out.append(Shape(n, tuple(acc)))
            return
        for m in range(left // height + 1):
            acc.append(m)
            rec(height + 1, left - m * height, acc)
            acc.pop()

    rec(1, max_boxes, [])
    out.sort(key=lambda s: (s.num_boxes, s.multiplicities))
    return out


def weights_up_to(n: int, max_mu: int) -> list[RootLatticeWeight]:
    """All weights with nonnegative coefficients summing to at most max_mu."""
    out: list[RootLatticeWeight] = []

    def rec(k: int, left: int, acc: list[int]) -> None:
        if k == n - 1:
            out.append(RootLatticeWeight(tuple(acc)))
            return
        for b in range(left + 1):
            acc.append(b)
            rec(k + 1, left - b, acc)
            acc.pop()

    rec(0, max_mu, [])
    out.sort(key=lambda w: (sum(w.coefficients), w.coefficients))
    return out


def _check_expansion_case(args: tuple[int, tuple[int, ...]]) -> tuple[bool, str]:
    n, mults = args
    lam = Shape(n, mults)
    mus = sorted({weight(t).coefficients for t in enumerate_tableaux(lam)})
    try:
        for coeffs in mus:
            mu = RootLatticeWeight(coeffs)
            smt_matrix(lam, mu)
            kashiwara_tableau_matrix(lam, mu)
    except TheoremViolationError as e:
        return False, f"shape {lam}: {e}"
    return True, ""


def _check_marked_case(args: tuple[int, tuple[int, ...]]) -> tuple[bool, str]:
    n, mults = args
    lam = Shape(n, mults)
    base = smallest_tableau(lam)
    for t in enumerate_standard(lam):
        if t == base:
            continue  # the smallest tableau admits no marked step
        r = marked_step_properties(t)
        if not r.passed:
            return False, f"shape {lam}, tableau {t}: {r.witness}"
    return True, ""


def _cartan(i: int, j: int) -> int:
    if i == j:
        return 2
    return -1 if abs(i - j) == 1 else 0


def _check_relations_case(args: tuple[int, tuple[int, ...]]) -> tuple[bool, str]:
    n, mults = args
    lam = Shape(n, mults)
    two = qint(2)
    for t in enumerate_tableaux(lam):
        v = ModuleVector.basis(t)
        for i in range(1, n):
            if act_Kinv(i, act_K(i, v)) != v:
                return False, f"K K^-1 != 1 at {t} in {lam}, i={i}"
            comm = act_E(i, act_F(i, v)) - act_F(i, act_E(i, v))
            if comm != v.scale(qint_signed(alpha_weight(i, t))):
                return False, f"[E_i, F_i] mismatch at {t} in {lam}, i={i}"
            for j in range(1, n):
                twisted = act_K(i, act_F(j, act_Kinv(i, v)))
                if twisted != act_F(j, v).scale(LaurentPoly({-_cartan(i, j): 1})):
                    return False, f"K-twist mismatch at {t} in {lam}, i={i}, j={j}"
                if i == j:
                    continue
                if act_E(i, act_F(j, v)) != act_F(j, act_E(i, v)):
                    return False, f"[E_i, F_j] != 0 at {t} in {lam}, i={i}, j={j}"
                if abs(i - j) == 1:
                    serre_f = (
                        act_F(i, act_F(i, act_F(j, v)))
                        - act_F(i, act_F(j, act_F(i, v))).scale(two)
                        + act_F(j, act_F(i, act_F(i, v)))
                    )
                    serre_e = (
                        act_E(i, act_E(i, act_E(j, v)))
                        - act_E(i, act_E(j, act_E(i, v))).scale(two)
                        + act_E(j, act_E(i, act_E(i, v)))
                    )
                    if serre_f or serre_e:
                        return False, f"Serre relation fails at {t} in {lam}, i={i}, j={j}"
                elif i < j:
                    if act_F(i, act_F(j, v)) != act_F(j, act_F(i, v)) or act_E(
                        i, act_E(j, v)
                    ) != act_E(j, act_E(i, v)):
                        return False, f"distant commute fails at {t} in {lam}, i={i}, j={j}"
    return True, ""


def _check_operator_case(args: tuple[int, tuple[int, ...]]) -> tuple[bool, str]:
    n, mults = args
    lam = Shape(n, mults)
    for y in enumerate_tableaux(lam):
        v = ModuleVector.basis(y)
        for i in range(1, n):
            movable = sum(1 for col in y.columns if i in col and i + 1 not in col)
            for k in range(movable + 2):
                if closed_form_divided_F(i, k, y) != divided_F(i, k, v):
                    return False, f"shape {lam}, y={y}, i={i}, k={k}"
    return True, ""


def _check_weight_case(args: tuple[int, tuple[int, ...]]) -> tuple[bool, str]:
    n, coeffs = args
    mu = RootLatticeWeight(coeffs)
    lam = lambda_for(mu)
    lam_up = Shape(n, tuple(m + 1 for m in lam.multiplicities))
    try:
        dual_smt(mu)
        stability_check(mu, lam, lam_up)
        dmat, _ = canonical_basis_with_certificate(mu)
        alt, _ = canonical_basis_with_certificate(
            mu, order=alternative_linear_extension(mu)
        )
        if alt.permuted(dmat.row_index, dmat.col_index) != dmat:
            return False, f"mu {mu}: canonical basis depends on the linear extension"
        dual_to_canonical_matrix(mu)
        crystal_congruence_check(mu)
    except TheoremViolationError as e:
        return False, f"mu {mu}: {e}"
    return True, ""


def _check_sl3_case(args: tuple[int, int]) -> tuple[bool, str]:
    b, k = args
    try:
        cross_validate(b, k)
    except TheoremViolationError as e:
        return False, f"(b, k) = ({b}, {k}): {e}"
    return True, ""


def _run_suite(
    title: str,
    runner: Callable,
    cases: Sequence,
    labels: Sequence[str],
    jobs: int,
    fail_fast: bool,
) -> Report:
    checks: list[Check] = []

    def fold(label: str, ok: bool, witness: str) -> bool:
        checks.append(Check(label, ok, witness))
        return fail_fast and not ok

    if jobs > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for label, (ok, witness) in zip(labels, pool.map(runner, cases)):
                if fold(label, ok, witness):
                    pool.shutdown(wait=False, cancel_futures=True)
                    break
    else:
        for label, case in zip(labels, cases):
            ok, witness = runner(case)
            if fold(label, ok, witness):
                break
    return Report(title, tuple(checks))


def verify_expansions(
    n: int, max_boxes: int, jobs: int = 1, fail_fast: bool = False
) -> Report:
    shapes = shapes_up_to(n, max_boxes)
    return _run_suite(
        f"expansion verifiers: n={n}, shapes with <= {max_boxes} boxes",
        _check_expansion_case,
        [(n, s.multiplicities) for s in shapes],
        [f"shape {s}" for s in shapes],
        jobs,
        fail_fast,
    )


def verify_marked_steps(
    n: int, max_boxes: int, jobs: int = 1, fail_fast: bool = False
) -> Report:
    shapes = shapes_up_to(n, max_boxes)
    return _run_suite(
        f"marked-step guarantees: n={n}, shapes with <= {max_boxes} boxes",
        _check_marked_case,
        [(n, s.multiplicities) for s in shapes],
        [f"shape {s}" for s in shapes],
        jobs,
        fail_fast,
    )


def verify_relations(
    n: int, max_cols: int = 6, jobs: int = 1, fail_fast: bool = False
) -> Report:
    shapes = [s for s in shapes_up_to(n, max_cols * (n - 1)) if s.num_columns <= max_cols]
    return _run_suite(
        f"defining relations: n={n}, shapes with <= {max_cols} columns",
        _check_relations_case,
        [(n, s.multiplicities) for s in shapes],
        [f"shape {s}" for s in shapes],
        jobs,
        fail_fast,
    )


def verify_operator_consistency(
    n: int, max_cols: int = 6, jobs: int = 1, fail_fast: bool = False
) -> Report:
    shapes = [s for s in shapes_up_to(n, max_cols * (n - 1)) if s.num_columns <= max_cols]
    return _run_suite(
        f"operator consistency: n={n}, shapes with <= {max_cols} columns",
        _check_operator_case,
        [(n, s.multiplicities) for s in shapes],
        [f"shape {s}" for s in shapes],
        jobs,
        fail_fast,
    )


def verify_weight_spaces(
    n: int, max_mu: int, jobs: int = 1, fail_fast: bool = False
) -> Report:
    mus = weights_up_to(n, max_mu)
    return _run_suite(
        f"weight-space bases: n={n}, |mu| <= {max_mu}",
        _check_weight_case,
        [(n, w.coefficients) for w in mus],
        [f"mu {w}" for w in mus],
        jobs,
        fail_fast,
    )


def verify_sl3(max_bk: int = 4, jobs: int = 1, fail_fast: bool = False) -> Report:
    cases = [(b, k) for b in range(max_bk + 1) for k in range(max_bk + 1)]
    report = _run_suite(
        f"rank-two closed forms: cross-validation for b, k <= {max_bk}",
        _check_sl3_case,
        cases,
        [f"(b, k) = {c}" for c in cases],
        jobs,
        fail_fast,
    )
    extra: list[Check] = []
    prod_acc = _CheckAcc("closed_matrix_times_inverse_is_identity")
    for b in range(7):
        for k in range(7):
            a = expansion_matrix_closed(b, k)
            inv = expansion_matrix_inverse_closed(b, k)
            prod_acc.check(
                a.matmul(inv).is_identity() and inv.matmul(a).is_identity(),
                f"(b, k) = ({b}, {k})",
            )
    extra.append(prod_acc.result())
    sub_acc = _CheckAcc("qpower_subset_sum_identity")
    for k in range(7):
        for s in range(k + 1):
            for b in range(-6, 7):
                sub_acc.check(
                    qpower_subset_sum_identity(b, k, s), f"b={b}, k={k}, s={s}"
                )
    extra.append(sub_acc.result())
    alt_acc = _CheckAcc("alternating_qbinom_identity")
    for m in range(7):
        alt_acc.check(alternating_qbinom_identity(m), f"m={m}")
    extra.append(alt_acc.result())
    return Report(report.title, report.checks + tuple(extra))


def cmd_verify(cfg: RunConfig) -> int:
    max_boxes = cfg.max_boxes or default_max_boxes(cfg.n)
    suites = [
        verify_expansions(cfg.n, max_boxes, cfg.jobs, cfg.fail_fast),
        verify_marked_steps(cfg.n, max_boxes, cfg.jobs, cfg.fail_fast),
        verify_relations(cfg.n, cfg.max_cols, cfg.jobs, cfg.fail_fast),
        verify_operator_consistency(cfg.n, cfg.max_cols, cfg.jobs, cfg.fail_fast),
        verify_weight_spaces(cfg.n, cfg.max_mu, cfg.jobs, cfg.fail_fast),
    ]
    if cfg.with_sl3:
        suites.append(verify_sl3(cfg.max_bk, cfg.jobs, cfg.fail_fast))
    passed = all(s.passed for s in suites)

    if cfg.fmt == "json":
        payload = {
            "command": "verify",
            "n": cfg.n,
            "passed": passed,
            "suites": [s.to_json_dict() for s in suites],
        }
        _emit(cfg, json.dumps(payload, indent=2))
    elif cfg.fmt == "csv":
        rows = [["suite", "check", "passed", "witness"]]
        for s in suites:
            for c in s.checks:
                rows.append([s.title, c.name, str(c.passed), c.witness])
        _emit(cfg, _csv_table(rows))
    else:
        lines = []
        for s in suites:
            if cfg.verbose:
                lines += _report_lines(s, cfg.verbose)
            else:
                mark = "PASS" if s.passed else "FAIL"
                lines.append(f"{mark} {s.title} ({len(s.checks)} checks)")
                lines += [f"  FAIL {c.name} [{c.witness}]" for c in s.failures()]
        lines.append(f"{'PASS' if passed else 'FAIL'} overall")
        _emit(cfg, "\n".join(lines))
    return EXIT_OK if passed else EXIT_VIOLATION


# ---------------------------------------------------------------------------
# sl3-table
# ---------------------------------------------------------------------------


def cmd_sl3_table(cfg: RunConfig) -> int:
    b, k = cfg.sl3_b, cfg.sl3_k
    if b < 0 or k < 0:
        raise UsageError("sl3-table: --b and --k must be >= 0")
    closed = expansion_matrix_closed(b, k)
    inverse = expansion_matrix_inverse_closed(b, k)
    ok = closed.matmul(inverse).is_identity()
    report = Report(
        f"closed-form table at b = {b}, k = {k}",
        (Check("closed_matrix_times_inverse_is_identity", ok, ""),),
    )
    chosen, name = (
        (closed, "sl3_closed") if cfg.which != "inverse" else (inverse, "sl3_inverse")
    )
    _emit_matrix_with_report(cfg, name, None, chosen, report)
    return EXIT_OK if ok else EXIT_VIOLATION


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; remap onto UsageError so
    the stable exit-code contract (1 = usage) holds."""

    def error(self, message):
        raise UsageError(message)


_GRAMMAR = """\
input grammar:
  weight    comma-separated simple-root coefficients      --mu 1,1
  shape     comma-separated column multiplicities         --lambda 3,4,2
  tableau   bracketed columns, entries 1..n increasing    --tableau [[2,3],[1,2]]
  monomial  bracketed exponent levels, printed order      --monomial [[3],[6,3],[7,5,2]]
exit codes: 0 success, 1 usage error, 2 verification failure
"""


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=3, help="rank; entries run 1..n")
    common.add_argument(
        "--format", dest="fmt", choices=FORMATS, default="pretty",
        help="emission format (default pretty)",
    )
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument(
        "--jobs", type=int, default=1, help="worker processes for sweeps"
    )
    common.add_argument(
        "--fail-fast", action="store_true", help="stop a sweep at its first failure"
    )
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = _Parser(
        prog="qsmt",
        description=(
            "Expansions, basis matrices, and verification sweeps for "
            "quantized standard monomial bases."
        ),
        epilog=_GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "expand", parents=[common], help="expand a monomial or tableau action",
        epilog=_GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--tableau", help="standard tableau in bracketed-columns form")
    p.add_argument("--monomial", help="standard monomial in bracketed-levels form")
    p.add_argument("--lambda", dest="lam", help="realizing shape (default: inferred)")
    p.add_argument(
        "--flavor", choices=(FLAVOR_DIVIDED, FLAVOR_KASHIWARA),
        default=FLAVOR_DIVIDED,
    )

    p = sub.add_parser(
        "basis", parents=[common], help="emit a weight-space basis matrix",
        epilog=_GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--mu", required=True, help="weight, comma-separated coefficients")
    p.add_argument("--which", choices=WHICH_BASIS, default="dual-smt")

    p = sub.add_parser(
        "verify", parents=[common], help="run the invariant suites within bounds",
        epilog=_GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--max-mu", type=int, default=6, help="weight-size bound")
    p.add_argument(
        "--max-boxes", type=int, default=0,
        help="shape-size bound (default: 7 through rank 3, else 5)",
    )
    p.add_argument(
        "--max-cols", type=int, default=6, help="column bound for operator checks"
    )
    p.add_argument(
        "--sl3", dest="with_sl3", action="store_true",
        help="include the rank-two closed-form suite",
    )
    p.add_argument("--max-bk", type=int, default=4, help="closed-form sweep bound")

    p = sub.add_parser(
        "sl3-table", parents=[common], help="emit a rank-two closed-form matrix",
        epilog=_GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--which", choices=WHICH_TABLE, default="closed")

    return parser


def _config_from(ns: argparse.Namespace) -> RunConfig:
    n = ns.n
    kwargs = dict(
        command=ns.command,
        n=n,
        fmt=ns.fmt,
        out=ns.out,
        jobs=ns.jobs,
        fail_fast=ns.fail_fast,
        verbose=ns.verbose,
    )
    if ns.command == "expand":
        if ns.tableau is not None:
            kwargs["tableau"] = parse_tableau(n, ns.tableau)
        if ns.monomial is not None:
            kwargs["monomial"] = parse_monomial(n, ns.monomial)
        if ns.lam is not None:
            kwargs["shape"] = parse_shape(n, ns.lam)
        kwargs["flavor"] = ns.flavor
    elif ns.command == "basis":
        kwargs["weight"] = parse_weight(n, ns.mu)
        kwargs["which"] = ns.which
    elif ns.command == "verify":
        kwargs.update(
            max_mu=ns.max_mu,
            max_boxes=ns.max_boxes,
            max_cols=ns.max_cols,
            with_sl3=ns.with_sl3,
            max_bk=ns.max_bk,
        )
    elif ns.command == "sl3-table":
        kwargs.update(sl3_b=ns.b, sl3_k=ns.k, which=ns.which)
    return RunConfig(**kwargs)


_COMMANDS = {
    "expand": cmd_expand,
    "basis": cmd_basis,
    "verify": cmd_verify,
    "sl3-table": cmd_sl3_table,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        cfg = _config_from(ns)
        return _COMMANDS[cfg.command](cfg)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except TheoremViolationError as e:
        print("\n".join(_report_lines(e.report, verbose=1)), file=sys.stderr)
        return EXIT_VIOLATION


def console_main() -> None:
    raise SystemExit(main())
