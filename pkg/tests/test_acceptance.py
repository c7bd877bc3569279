"""Acceptance gate: one test per shipped guarantee, each ending in a single
printed verdict line.

Everything is exact integer/Laurent arithmetic, so every comparison below is
equality — the only stated tolerance is the one-second budget on the worked
figure example.
"""

import time

from helpers import (
    NINE_COL_MONOMIAL,
    NINE_COL_STANDARD,
    SIXTEEN_COL_SPECIAL,
    divided_agreement_failures,
    relations_failures,
)
from qsmt.bases import (
    TheoremViolationError,
    alternative_linear_extension,
    canonical_basis_with_certificate,
    crystal_congruence_check,
    dual_smt,
    dual_to_canonical_matrix,
    kashiwara_monomial_matrix,
    kashiwara_tableau_matrix,
    smt_matrix,
    stability_check,
)
from qsmt.cli import (
    shapes_up_to,
    verify_expansions,
    verify_marked_steps,
    weights_up_to,
)
from qsmt.repmod import FLAVOR_DIVIDED, apply_monomial, divided_F, highest_weight_vector
from qsmt.sl3 import (
    alternating_qbinom_identity,
    cross_validate,
    expansion_matrix_closed,
    expansion_matrix_inverse_closed,
    qpower_subset_sum_identity,
)
from qsmt.tableaux import (
    RootLatticeWeight,
    Shape,
    StandardMonomial,
    enumerate_standard_monomials,
    lambda_for,
    monomial_of,
    tableau_of,
)


def _verdict(name: str, ok: bool, detail: str = "") -> None:
    tail = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}{tail}")
    assert ok, f"{name} failed{tail}"


def test_figure_fidelity_monomial_tableau_roundtrip():
    t0 = time.perf_counter()
    mono = monomial_of(NINE_COL_STANDARD)
    special = tableau_of(NINE_COL_MONOMIAL)
    elapsed = time.perf_counter() - t0
    ok = (
        mono == NINE_COL_MONOMIAL
        and special == SIXTEEN_COL_SPECIAL
        and elapsed < 1.0
    )
    _verdict("figure fidelity", ok, f"exact match in {elapsed * 1000:.1f} ms")


def test_expansion_sweep_both_flavors():
    r3 = verify_expansions(3, 7)
    r4 = verify_expansions(4, 5)
    violations = len(r3.failures()) + len(r4.failures())
    _verdict(
        "expansion verifiers over all shapes (n=3 <=7 boxes, n=4 <=5 boxes)",
        r3.passed and r4.passed,
        f"{len(r3.checks) + len(r4.checks)} shapes, {violations} violations",
    )


def test_marked_step_guarantees_sweep():
    reports = [verify_marked_steps(n, 7) for n in (2, 3)]
    shapes = sum(len(r.checks) for r in reports)
    _verdict(
        "marked-step guarantees (n<=3, <=7 boxes)",
        all(r.passed for r in reports),
        f"{shapes} shapes, zero violations",
    )


def test_dual_basis_stability_under_shape_growth():
    ok, detail = True, ""
    checked = 0
    try:
        for mu in weights_up_to(3, 6):
            lam = lambda_for(mu)
            lam_up = Shape(3, tuple(m + 1 for m in lam.multiplicities))
            stability_check(mu, lam, lam_up)
            checked += 1
        detail = f"{checked} weights, entrywise exact"
    except TheoremViolationError as e:
        ok, detail = False, str(e)
    _verdict("dual-coordinate stability under shape growth (n=3, |mu|<=6)", ok, detail)


def test_rank_two_closed_form_cross_validation():
    ok, detail = True, ""
    try:
        for b in range(5):
            for k in range(5):
                cross_validate(b, k)
        prod_ok = all(
            expansion_matrix_closed(b, k)
            .matmul(expansion_matrix_inverse_closed(b, k))
            .is_identity()
            for b in range(7)
            for k in range(7)
        )
        ok = prod_ok
        detail = "coefficients and inverse coordinates b,k<=4; product identity b,k<=6"
    except TheoremViolationError as e:
        ok, detail = False, str(e)
    _verdict("rank-two closed forms vs the general pipeline", ok, detail)


def test_transition_matrices_and_canonical_certification():
    ok, detail = True, ""
    anchor_ok = False
    checked = 0
    try:
        for mu in weights_up_to(3, 6):
            dmat, cert = canonical_basis_with_certificate(mu)
            alt, alt_cert = canonical_basis_with_certificate(
                mu, order=alternative_linear_extension(mu)
            )
            tmat, rep = dual_to_canonical_matrix(mu)
            ok = (
                ok
                and cert.passed
                and alt_cert.passed
                and alt.permuted(dmat.row_index, dmat.col_index) == dmat
                and rep.passed
            )
            if mu == RootLatticeWeight((1, 1)):
                anchor_ok = [
                    [str(x) for x in row] for row in tmat.entries
                ] == [["1", "q"], ["0", "1"]]
            checked += 1
        ok = ok and anchor_ok
        detail = f"{checked} weights; anchor [[1,q],[0,1]]"
    except TheoremViolationError as e:
        ok, detail = False, str(e)
    _verdict(
        "transition conditions and certified canonical bases (n=3, |mu|<=6)",
        ok,
        detail,
    )


def test_operator_consistency_relations_and_identities():
    agree_cases = agree_failures = rel_cases = 0
    rel_witness = []
    for n in (2, 3, 4):
        for lam in shapes_up_to(n, 6 * (n - 1)):
            if lam.num_columns > 6:
                continue
            cases, fails = divided_agreement_failures(lam)
            agree_cases += cases
            agree_failures += len(fails)
            cases, fails = relations_failures(lam)
            rel_cases += cases
            rel_witness += fails[:1]
    identities_ok = all(
        qpower_subset_sum_identity(b, k, s)
        for k in range(7)
        for s in range(k + 1)
        for b in range(-6, 7)
    ) and all(alternating_qbinom_identity(m) for m in range(7))
    ok = agree_failures == 0 and not rel_witness and identities_ok
    _verdict(
        "closed-form operator agreement, defining relations, q-binomial identities",
        ok,
        f"{agree_cases} agreement cases, {rel_cases} relation vectors"
        + (f"; first failure {rel_witness[0]}" if rel_witness else ""),
    )


def test_rank_one_degeneracy():
    ok, detail = True, ""
    try:
        for a in range(7):
            mu = RootLatticeWeight((a,))
            lam = lambda_for(mu)
            single = StandardMonomial.from_lists(2, [[a]])
            ok = ok and enumerate_standard_monomials(2, mu) == [single]
            v = highest_weight_vector(lam)
            ok = ok and apply_monomial(single, FLAVOR_DIVIDED, v) == divided_F(1, a, v)
            d = dual_smt(mu)
            dmat, cert = canonical_basis_with_certificate(mu)
            tmat, rep = dual_to_canonical_matrix(mu)
            ok = (
                ok
                and d.ns.is_identity()
                and d.coords.is_identity()
                and kashiwara_monomial_matrix(mu).is_identity()
                and dmat.is_identity()
                and cert.passed
                and tmat.is_identity()
                and rep.passed
                and smt_matrix(lam, mu).entries
                == kashiwara_tableau_matrix(lam, mu).entries
            )
            crystal_congruence_check(mu)
        detail = "a = 0..6: every matrix is the identity"
    except TheoremViolationError as e:
        ok, detail = False, str(e)
    _verdict("rank-one degeneracy collapses to divided powers", ok, detail)
