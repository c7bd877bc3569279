"""Shared fixtures and independent oracles for the test suite."""

from __future__ import annotations

from qsmt.qlaurent import LaurentPoly, qint, qint_signed
from qsmt.repmod import (
    ModuleVector,
    act_E,
    act_F,
    act_K,
    act_Kinv,
    alpha_weight,
    closed_form_divided_F,
    divided_F,
)
from qsmt.tableaux import Shape, StandardMonomial, Tableau, enumerate_tableaux

# The running worked example at n = 4, shape (3,4,2): a standard tableau,
# a non-standard variant differing in four columns, its exponent array, and
# the minimal special tableau carrying the same array (shape (8,6,2)).

NINE_COL_STANDARD = Tableau.from_columns(
    4, [[4], [4], [3], [3, 4], [3, 4], [2, 4], [2, 3], [2, 3, 4], [1, 3, 4]]
)

NINE_COL_NONSTANDARD = Tableau.from_columns(
    4, [[4], [4], [3], [3, 4], [3, 4], [2, 3], [2, 4], [2, 3, 4], [1, 2, 4]]
)

NINE_COL_MONOMIAL = StandardMonomial.from_lists(4, [[3], [6, 3], [7, 5, 2]])

SIXTEEN_COL_SPECIAL = Tableau.from_columns(
    4,
    [
        [4], [4], [3], [3], [3], [2], [2], [2],
        [1, 4], [1, 4], [1, 4], [1, 3], [1, 3], [1, 3],
        [1, 2, 4], [1, 2, 4],
    ],
)

SHAPE_342 = Shape(4, (3, 4, 2))


def small_shapes(n: int, max_boxes: int) -> list[Shape]:
    """All shapes of rank n with 1..max_boxes boxes, smallest first."""
    out = []

    def rec(level: int, left: int, acc: list[int]):
        if level == n - 1:
            if sum(acc) > 0:
                out.append(Shape(n, tuple(acc)))
            return
        weight_per = level + 1
        for m in range(left // weight_per + 1):
            acc.append(m)
            rec(level + 1, left - m * weight_per, acc)
            acc.pop()

    rec(0, max_boxes, [])
    out.sort(key=lambda s: (s.num_boxes, s.multiplicities))
    return out


# ---------------------------------------------------------------------------
# crystal bracket oracle
#
# Reimplements the q=0 tensor rule from scratch: write one sign per column
# (+ for a column containing c but not c+1, - for the reverse), cancel each
# + that is immediately followed, after earlier cancellations, by a -.  The
# lowering map bumps the leftmost surviving +, the raising map lowers the
# rightmost surviving -.  Used to cross-check the string-shifting operators
# modulo the maximal ideal.
# ---------------------------------------------------------------------------


def _surviving_signs(t: Tableau, c: int) -> tuple[list[int], list[int]]:
    open_plus: list[int] = []
    minus: list[int] = []
    for j, col in enumerate(t.columns):
        has_c = c in col
        has_c1 = (c + 1) in col
        if has_c and not has_c1:
            open_plus.append(j)
        elif has_c1 and not has_c:
            if open_plus:
                open_plus.pop()
            else:
                minus.append(j)
    return open_plus, minus


def _replace_column(t: Tableau, j: int, old: int, new: int) -> Tableau:
    col = tuple(sorted(new if e == old else e for e in t.columns[j]))
    return Tableau(t.shape, t.columns[:j] + (col,) + t.columns[j + 1 :])


def crystal_f_oracle(t: Tableau, c: int) -> Tableau | None:
    plus, _ = _surviving_signs(t, c)
    if not plus:
        return None
    return _replace_column(t, plus[0], c, c + 1)


def crystal_e_oracle(t: Tableau, c: int) -> Tableau | None:
    _, minus = _surviving_signs(t, c)
    if not minus:
        return None
    return _replace_column(t, minus[-1], c + 1, c)


# ---------------------------------------------------------------------------
# property sweeps shared between the unit tests and the acceptance gate
# ---------------------------------------------------------------------------


def cartan(i: int, j: int) -> int:
    if i == j:
        return 2
    return -1 if abs(i - j) == 1 else 0


def relations_failures(shape: Shape) -> tuple[int, list[str]]:
    """Check the defining relations on every basis vector of the module.

    Returns (number of vectors checked, failure descriptions).
    """
    n = shape.n
    roots = range(1, n)
    two = qint(2)
    checked = 0
    failures: list[str] = []

    def bad(tag, t, i, j=None):
        failures.append(f"{tag} fails at {t} (shape {shape}, i={i}, j={j})")

    for t in enumerate_tableaux(shape):
        checked += 1
        v = ModuleVector.basis(t)
        for i in roots:
            if act_Kinv(i, act_K(i, v)) != v:
                bad("K K^-1 = 1", t, i)
            comm = act_E(i, act_F(i, v)) - act_F(i, act_E(i, v))
            if comm != v.scale(qint_signed(alpha_weight(i, t))):
                bad("[E_i, F_i] = (K_i - K_i^-1)/(q - q^-1)", t, i)
            for j in roots:
                twisted = act_K(i, act_F(j, act_Kinv(i, v)))
                if twisted != act_F(j, v).scale(LaurentPoly({-cartan(i, j): 1})):
                    bad("K_i F_j K_i^-1 = q^-a(i,j) F_j", t, i, j)
                if i == j:
                    continue
                if act_E(i, act_F(j, v)) != act_F(j, act_E(i, v)):
                    bad("[E_i, F_j] = 0", t, i, j)
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
                        bad("quantum Serre (adjacent)", t, i, j)
                elif i < j:
                    if act_F(i, act_F(j, v)) != act_F(j, act_F(i, v)) or act_E(
                        i, act_E(j, v)
                    ) != act_E(j, act_E(i, v)):
                        bad("distant generators commute", t, i, j)
    return checked, failures


def divided_agreement_failures(shape: Shape) -> tuple[int, list[str]]:
    """Compare the subset closed form against literal divided powers.

    Covers every basis tableau of the shape, every root, and every power up
    to one past the count of movable columns.  Returns (cases, failures).
    """
    checked = 0
    failures: list[str] = []
    for y in enumerate_tableaux(shape):
        v = ModuleVector.basis(y)
        for i in range(1, shape.n):
            movable = sum(1 for col in y.columns if i in col and i + 1 not in col)
            for k in range(movable + 2):
                checked += 1
                if closed_form_divided_F(i, k, y) != divided_F(i, k, v):
                    failures.append(f"shape {shape}, y={y}, i={i}, k={k}")
    return checked, failures
