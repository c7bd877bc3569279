"""Tests for shapes, tableaux, monomials, the marked-entry construction,
the partial order, and the enumeration helpers."""

import pytest

from helpers import (
    NINE_COL_MONOMIAL,
    NINE_COL_NONSTANDARD,
    NINE_COL_STANDARD,
    SHAPE_342,
    SIXTEEN_COL_SPECIAL,
    small_shapes,
)
from qsmt.tableaux import (
    ColumnType,
    Comparison,
    MarkedStepReport,
    RootLatticeWeight,
    Shape,
    StandardMonomial,
    Tableau,
    column_type,
    compare,
    compare_monomials,
    embed,
    enumerate_standard,
    enumerate_standard_monomials,
    enumerate_tableaux,
    equivalent,
    factors_via_marked,
    format_rows,
    is_special,
    is_standard,
    lambda_for,
    marked_step,
    marked_step_properties,
    minimal_representative,
    monomial_of,
    smallest_tableau,
    tableau_of,
    weight,
)

W = RootLatticeWeight


# ---------------------------------------------------------------------------
# shapes and tableau validation
# ---------------------------------------------------------------------------


def test_shape_layout():
    assert SHAPE_342.heights() == (1, 1, 1, 2, 2, 2, 2, 3, 3)
    assert SHAPE_342.num_columns == 9
    assert SHAPE_342.num_boxes == 3 + 8 + 6
    assert list(SHAPE_342.block_range(2)) == [3, 4, 5, 6]
    assert SHAPE_342.row_length(1) == 9
    assert SHAPE_342.row_length(2) == 6
    assert SHAPE_342.row_length(3) == 2


def test_shape_validation():
    with pytest.raises(ValueError):
        Shape(3, (1,))
    with pytest.raises(ValueError):
        Shape(3, (1, -1))
    with pytest.raises(ValueError):
        Shape(1, ())


def test_tableau_validation():
    with pytest.raises(ValueError):
        Tableau(Shape(3, (1, 0)), ((1, 2),))
    with pytest.raises(ValueError):
        Tableau(Shape(3, (0, 1)), ((2, 2),))
    with pytest.raises(ValueError):
        Tableau(Shape(3, (1, 0)), ((4,),))
    with pytest.raises(ValueError):
        Tableau.from_columns(3, [[1, 2], [1]])


def test_rows_of_the_worked_example():
    assert NINE_COL_STANDARD.row(1) == (4, 4, 3, 3, 3, 2, 2, 2, 1)
    assert NINE_COL_STANDARD.row(2) == (4, 4, 4, 3, 3, 3)
    assert NINE_COL_STANDARD.row(3) == (4, 4)


def test_smallest_tableau():
    t = smallest_tableau(SHAPE_342)
    assert t.row(1) == (1,) * 9
    assert t.row(2) == (2,) * 6
    assert t.row(3) == (3,) * 2
    assert is_standard(t) and is_special(t)
    one_row = smallest_tableau(Shape(2, (4,)))
    assert one_row.row(1) == (1, 1, 1, 1)


def test_standard_and_special_predicates():
    assert is_standard(NINE_COL_STANDARD)
    assert not is_standard(NINE_COL_NONSTANDARD)
    assert not is_special(NINE_COL_STANDARD)
    assert is_standard(SIXTEEN_COL_SPECIAL)
    assert is_special(SIXTEEN_COL_SPECIAL)


def test_format_rows():
    assert format_rows(smallest_tableau(Shape(3, (1, 1)))) == "1 1\n  2"


# ---------------------------------------------------------------------------
# weights and monomials
# ---------------------------------------------------------------------------


def test_weight_of_worked_example():
    assert weight(NINE_COL_STANDARD) == W((8, 11, 7))
    assert weight(SIXTEEN_COL_SPECIAL) == W((8, 11, 7))


def test_weight_trivia():
    assert weight(smallest_tableau(SHAPE_342)).is_zero()
    assert weight(Tableau.from_columns(2, [[2]])) == W((1,))


def test_monomial_of_worked_example():
    assert monomial_of(NINE_COL_STANDARD) == NINE_COL_MONOMIAL
    assert NINE_COL_MONOMIAL.a(1, 1) == 3
    assert NINE_COL_MONOMIAL.a(2, 2) == 6
    assert NINE_COL_MONOMIAL.a(3, 1) == 2
    assert NINE_COL_MONOMIAL.weight() == W((8, 11, 7))


def test_monomial_of_trivia():
    assert monomial_of(smallest_tableau(SHAPE_342)).is_zero()
    assert monomial_of(Tableau.from_columns(2, [[2]])) == StandardMonomial(2, ((1,),))
    with pytest.raises(ValueError):
        monomial_of(NINE_COL_NONSTANDARD)


def test_monomial_validation():
    with pytest.raises(ValueError):
        StandardMonomial(3, ((1,), (0, 1)))  # level 2 increasing: not standard
    with pytest.raises(ValueError):
        StandardMonomial(3, ((1,),))
    with pytest.raises(ValueError):
        StandardMonomial(3, ((1,), (-1, -1)))


def test_monomial_factor_order():
    assert NINE_COL_MONOMIAL.factors() == [
        (1, 3), (2, 6), (1, 3), (3, 7), (2, 5), (1, 2)
    ]
    assert str(NINE_COL_MONOMIAL) == "F1^3 F2^6 F1^3 F3^7 F2^5 F1^2"
    assert StandardMonomial.zero(4).factors() == []


def test_tableau_of_worked_example():
    assert tableau_of(NINE_COL_MONOMIAL) == SIXTEEN_COL_SPECIAL


def test_tableau_of_trivia():
    t = tableau_of(StandardMonomial.zero(3))
    assert t.shape == Shape(3, (0, 0))
    assert t.columns == ()
    t2 = tableau_of(StandardMonomial(2, ((1,),)))
    assert t2 == Tableau.from_columns(2, [[2]])


@pytest.mark.parametrize("shape", [Shape(3, (2, 1)), Shape(3, (1, 2)), Shape(4, (1, 1, 1))])
def test_monomial_tableau_roundtrip(shape):
    for t in enumerate_standard(shape):
        if not is_special(t):
            continue
        back = tableau_of(monomial_of(t))
        assert equivalent(back, t)
        assert back == minimal_representative(t)


# ---------------------------------------------------------------------------
# marked steps
# ---------------------------------------------------------------------------


def test_marked_step_worked_example():
    c, k, tau = marked_step(NINE_COL_STANDARD)
    assert (c, k) == (1, 3)
    assert tau == Tableau.from_columns(
        4, [[4], [4], [3], [3, 4], [3, 4], [1, 4], [1, 3], [1, 3, 4], [1, 3, 4]]
    )


def test_marked_step_requires_off_minimal():
    with pytest.raises(ValueError):
        marked_step(smallest_tableau(Shape(3, (2, 1))))


def test_factor_sequences_agree_on_worked_example():
    assert factors_via_marked(NINE_COL_STANDARD) == NINE_COL_MONOMIAL.factors()


@pytest.mark.parametrize("shape", [Shape(3, (2, 1)), Shape(3, (0, 2)), Shape(4, (1, 0, 1))])
def test_factor_sequences_agree_exhaustively(shape):
    for t in enumerate_standard(shape):
        assert factors_via_marked(t) == monomial_of(t).factors()


def test_marked_step_properties_exhaustive_small():
    shape = Shape(3, (2, 1))
    seen = 0
    for t in enumerate_standard(shape):
        if t == smallest_tableau(shape):
            continue
        report = marked_step_properties(t)
        assert report.passed, report.witness
        seen += 1
    assert seen > 0


def test_marked_step_properties_worked_example():
    report = marked_step_properties(NINE_COL_STANDARD)
    assert isinstance(report, MarkedStepReport)
    assert report.passed, report.witness
    assert report.c == 1 and report.k == 3
    assert report.cases_checked > 0


# ---------------------------------------------------------------------------
# partial order and column types
# ---------------------------------------------------------------------------


def test_compare_basics():
    assert compare(NINE_COL_STANDARD, NINE_COL_STANDARD) is Comparison.EQUAL
    a = Tableau.from_columns(3, [[1], [1]])
    b = Tableau.from_columns(3, [[2], [1]])
    assert compare(a, b) is Comparison.LESS
    assert compare(b, a) is Comparison.GREATER
    with pytest.raises(ValueError):
        compare(a, Tableau.from_columns(3, [[1]]))


def test_compare_smallest_is_minimum():
    shape = Shape(3, (1, 1))
    small = smallest_tableau(shape)
    for t in enumerate_standard(shape):
        if t != small:
            assert compare(small, t) is Comparison.LESS


def test_compare_incomparable():
    x = Tableau.from_columns(4, [[1, 4]])
    y = Tableau.from_columns(4, [[2, 3]])
    assert compare(x, y) is Comparison.INCOMPARABLE


def test_compare_is_strict_partial_order():
    ts = enumerate_tableaux(Shape(3, (1, 1)))
    rel = {
        (i, j): compare(x, y)
        for i, x in enumerate(ts)
        for j, y in enumerate(ts)
    }
    for i in range(len(ts)):
        assert rel[i, i] is Comparison.EQUAL
        for j in range(len(ts)):
            if rel[i, j] is Comparison.LESS:
                assert rel[j, i] is Comparison.GREATER
            if rel[i, j] is Comparison.INCOMPARABLE:
                assert rel[j, i] is Comparison.INCOMPARABLE
            for k in range(len(ts)):
                if rel[i, j] is Comparison.LESS and rel[j, k] is Comparison.LESS:
                    assert rel[i, k] is Comparison.LESS, (ts[i], ts[j], ts[k])


def test_column_types():
    c = 2
    assert column_type((2,), c) is ColumnType.I
    assert column_type((2, 3), c) is ColumnType.II
    assert column_type((3,), c) is ColumnType.III
    assert column_type((1, 4), c) is ColumnType.II
    assert ColumnType.I.sl2_weight == 1
    assert ColumnType.II.sl2_weight == 0
    assert ColumnType.III.sl2_weight == -1


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def test_enumerate_single_box():
    ts = enumerate_standard(Shape(2, (1,)))
    assert [t.to_lists() for t in ts] == [[[1]], [[2]]]


def test_enumerate_weight_filter():
    shape = Shape(3, (1, 1))
    ts = enumerate_standard(shape, W((1, 1)))
    assert [t.to_lists() for t in ts] == [[[2], [1, 3]], [[3], [1, 2]]]
    monos = [monomial_of(t).to_lists() for t in ts]
    assert monos == [[[1], [1, 0]], [[0], [1, 1]]]
    # the remaining weight-(1,1) filling of this shape is not standard
    every = enumerate_tableaux(shape, W((1, 1)))
    assert [t.to_lists() for t in every] == [
        [[1], [2, 3]], [[2], [1, 3]], [[3], [1, 2]]
    ]


def test_enumerate_empty_when_capacity_exceeded():
    assert enumerate_standard(Shape(3, (1, 0)), W((0, 5))) == []


@pytest.mark.parametrize("shape", [Shape(3, (1, 1)), Shape(3, (2, 2))])
def test_enumeration_is_linear_extension(shape):
    for mu_class in {tuple(weight(t).coefficients) for t in enumerate_standard(shape)}:
        ts = enumerate_standard(shape, W(mu_class))
        for i, x in enumerate(ts):
            for j, y in enumerate(ts):
                if compare(x, y) is Comparison.LESS:
                    assert i < j


def test_enumerate_standard_monomials_small():
    ms = enumerate_standard_monomials(3, W((1, 1)))
    assert sorted(m.to_lists() for m in ms) == [[[0], [1, 1]], [[1], [1, 0]]]
    assert enumerate_standard_monomials(3, W((0, 0))) == [StandardMonomial.zero(3)]


@pytest.mark.parametrize("n,max_total", [(3, 5), (4, 4)])
def test_monomials_biject_with_tableaux_at_sufficient_shape(n, max_total):
    ell = n - 1

    def weights(total):
        if ell == 2:
            return [(i, total - i) for i in range(total + 1)]
        return [
            (i, j, total - i - j)
            for i in range(total + 1)
            for j in range(total + 1 - i)
        ]

    for total in range(max_total + 1):
        for bs in weights(total):
            mu = W(bs)
            lam = lambda_for(mu)
            standards = enumerate_standard(lam, mu)
            assert all(is_special(t) for t in standards)
            monos = enumerate_standard_monomials(n, mu)
            assert len(monos) == len(standards)
            assert {monomial_of(t) for t in standards} == set(monos)


# ---------------------------------------------------------------------------
# sufficient shapes, insertion, equivalence
# ---------------------------------------------------------------------------


def test_lambda_for():
    assert lambda_for(W((1, 1))) == Shape(3, (1, 1))
    assert lambda_for(W((0, 0, 0))) == Shape(4, (0, 0, 0))


def test_embed_examples():
    y = Tableau.from_columns(3, [[2]])
    lam = Shape(3, (1, 0))
    out = embed(y, lam, Shape(3, (2, 1)))
    assert out.to_lists() == [[2], [1], [1, 2]]
    assert weight(out) == weight(y)
    assert is_special(out)
    assert embed(y, lam, lam) == y
    small = smallest_tableau(Shape(3, (1, 1)))
    assert embed(small, small.shape, Shape(3, (2, 2))) == smallest_tableau(Shape(3, (2, 2)))
    with pytest.raises(ValueError):
        embed(y, lam, Shape(3, (0, 1)))


def test_embed_preserves_comparisons():
    lam = Shape(3, (1, 1))
    big = Shape(3, (2, 2))
    ts = enumerate_standard(lam, W((1, 1)))
    embedded = [embed(t, lam, big) for t in ts]
    for i, x in enumerate(ts):
        for j, y in enumerate(ts):
            assert compare(x, y) is compare(embedded[i], embedded[j])


def test_minimal_representative():
    t = SIXTEEN_COL_SPECIAL
    assert minimal_representative(t) == t  # no smallest columns present
    grown = embed(t, t.shape, Shape(4, (9, 7, 3)))
    assert minimal_representative(grown) == t
    assert equivalent(grown, t)
    small = smallest_tableau(Shape(3, (2, 1)))
    assert minimal_representative(small).shape == Shape(3, (0, 0))


def test_compare_monomials_transferred():
    a = StandardMonomial.from_lists(3, [[1], [1, 0]])
    b = StandardMonomial.from_lists(3, [[0], [1, 1]])
    assert compare_monomials(a, b) is Comparison.LESS
    assert compare_monomials(b, a) is Comparison.GREATER
    assert compare_monomials(a, a) is Comparison.EQUAL
    with pytest.raises(ValueError):
        compare_monomials(a, StandardMonomial.zero(3))


def test_compare_monomials_matches_tableau_order_at_lambda0():
    mu = W((2, 2))
    lam0 = lambda_for(mu)
    ts = enumerate_standard(lam0, mu)
    for x in ts:
        for y in ts:
            expected = compare(x, y)
            got = compare_monomials(monomial_of(x), monomial_of(y))
            assert got is expected


def test_small_shapes_helper():
    shapes = small_shapes(3, 4)
    assert Shape(3, (1, 0)) in shapes
    assert Shape(3, (0, 2)) in shapes
    assert all(0 < s.num_boxes <= 4 for s in shapes)
