"""Closed forms for the rank-two expansion coefficients and their inverse.

At ``n = 3`` the standard monomials of weight ``k*alpha_1 + b*alpha_2`` are
exactly the three-factor family ``F1^(k-s) F2^(b) F1^(s)`` for
``0 <= s <= min(b, k)``.  This module states the expansion coefficients of
that family in closed form, assembles the triangular coefficient matrix and
its closed-form inverse, exposes the two quantum-binomial identities the
inversion rests on, and cross-validates everything against the general
weight-space pipeline run at ``n = 3``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .bases import BasisMatrix, Report, _CheckAcc, _require, dual_smt
from .qlaurent import ONE, ZERO, LaurentPoly, parse_rational, qbinom
from .tableaux import Comparison, RootLatticeWeight, StandardMonomial


@dataclass(frozen=True)
class SL3Monomial:
    """Exponent triple ``(a, b, c)`` of a monomial ``F1^(a) F2^(b) F1^(c)``.

    Standardness at ``n = 3`` is the single inequality ``b >= c``.
    """

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0 or self.c < 0:
            raise ValueError(f"negative exponent in {(self.a, self.b, self.c)}")
        if self.b < self.c:
            raise ValueError(f"need b >= c, got {(self.a, self.b, self.c)}")

    def weight(self) -> RootLatticeWeight:
        return RootLatticeWeight((self.a + self.c, self.b))

    def standard_monomial(self) -> StandardMonomial:
        """The same monomial as a two-level exponent array."""
        return StandardMonomial(3, ((self.a,), (self.b, self.c)))

    def to_lists(self) -> list[int]:
        return [self.a, self.b, self.c]

    def __str__(self):
        return f"({self.a},{self.b},{self.c})"


def sl3_compare(x: SL3Monomial, y: SL3Monomial) -> Comparison:
    """Total order on exponent triples: by ``c``, then ``a``, then ``b``.

    Restricted to the triples of one weight this is the order in which the
    general pipeline lists the standard monomials, so matrices indexed
    either way triangulate identically.
    """
    kx = (x.c, x.a, x.b)
    ky = (y.c, y.a, y.b)
    if kx == ky:
        return Comparison.EQUAL
    return Comparison.LESS if kx < ky else Comparison.GREATER


def monomial_family(b: int, k: int) -> tuple[SL3Monomial, ...]:
    """The standard triples of weight ``k*alpha_1 + b*alpha_2`` in order.

    Position ``s`` holds ``(k - s, b, s)``; there are ``min(b, k) + 1`` of
    them.
    """
    if b < 0 or k < 0:
        raise ValueError(f"need b, k >= 0, got b={b}, k={k}")
    return tuple(SL3Monomial(k - s, b, s) for s in range(min(b, k) + 1))


def expansion_coefficient_closed(b: int, k: int, s: int, t: int) -> LaurentPoly:
    """Coefficient of the tableau vector labelled by position ``t`` in the
    expansion of the position-``s`` monomial of the family ``(k-s, b, s)``:

        q^((s-t)(b-t)) * [k-t choose s-t]

    Defined for ``0 <= t <= s <= min(b, k)``; raises ValueError outside.
    """
    if not 0 <= t <= s <= min(b, k):
        raise ValueError(
            f"need 0 <= t <= s <= min(b, k), got b={b}, k={k}, s={s}, t={t}"
        )
    return qbinom(k - t, s - t).shift((s - t) * (b - t))


def _inverse_entry(b: int, k: int, s: int, t: int) -> LaurentPoly:
    coeff = qbinom(k - t, s - t).shift((s - t) * (b - s + 1))
    return coeff if (s - t) % 2 == 0 else -coeff


def expansion_matrix_closed(b: int, k: int) -> BasisMatrix:
    """Closed-form coefficient matrix of the weight-``(k, b)`` family.

    Row ``s`` and column ``t`` are both labelled by the family, and the
    ``(s, t)`` entry is ``expansion_coefficient_closed(b, k, s, t)`` for
    ``t <= s`` and zero above, so in this orientation the matrix is lower
    triangular.  The weight-space pipeline stores the transpose: there the
    column label is the monomial being expanded.
    """
    fam = monomial_family(b, k)
    entries = [
        [
            expansion_coefficient_closed(b, k, s, t) if t <= s else ZERO
            for t in range(len(fam))
        ]
        for s in range(len(fam))
    ]
    return BasisMatrix(RootLatticeWeight((k, b)), fam, fam, entries)


def expansion_matrix_inverse_closed(b: int, k: int) -> BasisMatrix:
    """Closed-form inverse of ``expansion_matrix_closed(b, k)``.

    The ``(s, t)`` entry is ``(-1)^(s-t) q^((s-t)(b-s+1)) [k-t choose s-t]``
    for ``t <= s`` and zero above.
    """
    fam = monomial_family(b, k)
    entries = [
        [_inverse_entry(b, k, s, t) if t <= s else ZERO for t in range(len(fam))]
        for s in range(len(fam))
    ]
    return BasisMatrix(RootLatticeWeight((k, b)), fam, fam, entries)


def qpower_subset_sum_identity(b: int, k: int, s: int) -> bool:
    """Check, by expanding the subset sum, that

        q^(s(b-k-1)) * sum_(1 <= i_1 < ... < i_s <= k) q^(2(i_1+...+i_s))
            == q^(sb) * [k choose s]

    ``b`` may be any integer; requires ``0 <= s <= k``.
    """
    if not 0 <= s <= k:
        raise ValueError(f"need 0 <= s <= k, got k={k}, s={s}")
    terms: dict[int, int] = {}
    for tup in combinations(range(1, k + 1), s):
        e = 2 * sum(tup)
        terms[e] = terms.get(e, 0) + 1
    lhs = LaurentPoly(terms).shift(s * (b - k - 1))
    rhs = qbinom(k, s).shift(s * b)
    return lhs == rhs


def alternating_qbinom_identity(m: int) -> bool:
    """Check that ``sum_j (-1)^j q^(j(m-1)) [m choose j]`` is 1 for
    ``m == 0`` and 0 for ``m > 0``.

    This is the telescoping step behind the closed-form inverse.
    """
    if m < 0:
        raise ValueError(f"need m >= 0, got m={m}")
    total = ZERO
    for j in range(m + 1):
        term = qbinom(m, j).shift(j * (m - 1))
        total = total + term if j % 2 == 0 else total - term
    return total == (ONE if m == 0 else ZERO)


def cross_validate(b: int, k: int) -> Report:
    """Replay the general pipeline at ``n = 3`` on the weight
    ``k*alpha_1 + b*alpha_2`` and compare entry by entry.

    Checks that the standard monomials of the weight are exactly the family
    ``(k-s, b, s)`` in order, that every computed expansion coefficient
    equals ``expansion_coefficient_closed``, and that every dual-coordinate
    entry equals the closed-form inverse.  Returns the passing report; a
    mismatch raises TheoremViolationError naming the offending ``(s, t)``.
    """
    fam = monomial_family(b, k)
    labels = [m.standard_monomial() for m in fam]
    d = dual_smt(RootLatticeWeight((k, b)))

    fam_acc = _CheckAcc("family_matches_weight_space")
    fam_acc.check(
        list(d.ns.row_index) == labels,
        f"pipeline lists {[str(m) for m in d.ns.row_index]}, "
        f"family is {[str(m) for m in labels]}",
    )
    ns_acc = _CheckAcc("expansion_coefficients_match_closed_form")
    co_acc = _CheckAcc("dual_coordinates_match_closed_form")
    if fam_acc.passed:
        for s in range(len(fam)):
            for t in range(len(fam)):
                lower = t <= s
                want_n = expansion_coefficient_closed(b, k, s, t) if lower else ZERO
                want_c = _inverse_entry(b, k, s, t) if lower else ZERO
                got_n = d.ns.entry(t, s)
                got_c = d.coords.entry(t, s)
                ns_acc.check(
                    got_n == want_n, f"(s, t) = ({s}, {t}): {got_n} vs {want_n}"
                )
                co_acc.check(
                    got_c == want_c, f"(s, t) = ({s}, {t}): {got_c} vs {want_c}"
                )
    report = Report(
        f"closed-form cross-validation at b = {b}, k = {k}",
        (fam_acc.result(), ns_acc.result(), co_acc.result()),
    )
    return _require(report)


def matrix_from_json_dict(data: dict) -> BasisMatrix:
    """Decode a matrix whose index entries are ``(a, b, c)`` triples."""
    weight = RootLatticeWeight(tuple(data["mu"]))
    col_index = tuple(SL3Monomial(*x) for x in data["index"])
    row_lists = data.get("row_index")
    row_index = (
        col_index if row_lists is None else tuple(SL3Monomial(*x) for x in row_lists)
    )
    entries = [[parse_rational(x) for x in row] for row in data["entries"]]
    return BasisMatrix(weight, row_index, col_index, entries)
