"""Shapes, column-strict tableaux, and standard monomials.

Conventions fixed here once for the whole package:

- A shape is the multiplicity list (m_1, ..., m_l), l = n - 1.  Columns are
  stored left to right with the m_1 height-1 columns first, then the m_2
  height-2 columns, and so on: heights weakly increase rightwards.
- Row r spans exactly the columns of height >= r (a suffix of the columns).
  A tableau is standard when every row is non-increasing read rightwards,
  and special when every entry exceeding its row index is the last entry of
  its column.
- The exponent array of a standard monomial is stored level by level, each
  level in the printed order (a_r^r, a_{r-1}^r, ..., a_1^r).

All objects are immutable; every operation is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum
from itertools import combinations
from typing import Iterator, Optional, Sequence


class Comparison(Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


class ColumnType(IntEnum):
    """Column type relative to a simple-root index c.

    The numeric value is the sl2(c)-weight of the column basis vector:
    +1 when c appears without c+1, 0 when both or neither appear, -1 when
    c+1 appears without c.
    """

    I = 1
    II = 0
    III = -1

    @property
    def sl2_weight(self) -> int:
        return int(self)


@dataclass(frozen=True)
class Shape:
    """Multiplicities (m_1, ..., m_l) of column heights for rank n."""

    n: int
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("rank n must be at least 2")
        object.__setattr__(self, "multiplicities", tuple(int(m) for m in self.multiplicities))
        if len(self.multiplicities) != self.n - 1:
            raise ValueError(
                f"shape for n={self.n} needs {self.n - 1} multiplicities, "
                f"got {self.multiplicities}"
            )
        if any(m < 0 for m in self.multiplicities):
            raise ValueError(f"negative multiplicity in {self.multiplicities}")

    @property
    def ell(self) -> int:
        return self.n - 1

    @property
    def num_columns(self) -> int:
        return sum(self.multiplicities)

    @property
    def num_boxes(self) -> int:
        return sum((r + 1) * m for r, m in enumerate(self.multiplicities))

    def heights(self) -> tuple[int, ...]:
        """Column heights left to right."""
        out = []
        for r, m in enumerate(self.multiplicities, start=1):
            out.extend([r] * m)
        return tuple(out)

    def block_range(self, r: int) -> range:
        """0-based column indices of the height-r block."""
        start = sum(self.multiplicities[: r - 1])
        return range(start, start + self.multiplicities[r - 1])

    def row_length(self, r: int) -> int:
        """Number of columns of height >= r."""
        return sum(self.multiplicities[r - 1 :])

    def __str__(self):
        return "(" + ",".join(str(m) for m in self.multiplicities) + ")"


@dataclass(frozen=True)
class Tableau:
    """Column-strict filling of a shape with entries in 1..n."""

    shape: Shape
    columns: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "columns", tuple(tuple(int(e) for e in col) for col in self.columns)
        )
        heights = self.shape.heights()
        if len(self.columns) != len(heights):
            raise ValueError(
                f"expected {len(heights)} columns for shape {self.shape}, "
                f"got {len(self.columns)}"
            )
        n = self.shape.n
        for j, (col, h) in enumerate(zip(self.columns, heights)):
            if len(col) != h:
                raise ValueError(f"column {j} has height {len(col)}, expected {h}")
            if any(e < 1 or e > n for e in col):
                raise ValueError(f"column {j} entries out of range 1..{n}: {col}")
            if any(col[i] >= col[i + 1] for i in range(len(col) - 1)):
                raise ValueError(f"column {j} not strictly increasing: {col}")

    @classmethod
    def _unchecked(cls, shape: Shape, columns: tuple[tuple[int, ...], ...]) -> "Tableau":
        """Internal constructor skipping validation.

        Callers must guarantee that columns already fit the shape; used on
        hot paths that modify single entries of validated tableaux.
        """
        t = object.__new__(cls)
        object.__setattr__(t, "shape", shape)
        object.__setattr__(t, "columns", columns)
        return t

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.shape, self.columns))
            object.__setattr__(self, "_hash", h)
        return h

    @classmethod
    def from_columns(cls, n: int, columns: Sequence[Sequence[int]]) -> "Tableau":
        """Build from bracketed column lists, inferring the shape."""
        heights = [len(c) for c in columns]
        if any(heights[i] > heights[i + 1] for i in range(len(heights) - 1)):
            raise ValueError("column heights must be weakly increasing rightwards")
        mult = [0] * (n - 1)
        for h in heights:
            if not 1 <= h <= n - 1:
                raise ValueError(f"column height {h} out of range 1..{n - 1}")
            mult[h - 1] += 1
        return cls(Shape(n, tuple(mult)), tuple(tuple(c) for c in columns))

    def to_lists(self) -> list[list[int]]:
        return [list(c) for c in self.columns]

    def row(self, r: int) -> tuple[int, ...]:
        """Entries of row r, left to right (columns of height >= r)."""
        return tuple(col[r - 1] for col in self.columns if len(col) >= r)

    def rows(self) -> list[tuple[int, ...]]:
        return [self.row(r) for r in range(1, self.shape.ell + 1) if self.shape.row_length(r)]

    def boxes(self) -> Iterator[tuple[int, int, int]]:
        """Yield (column index, row index, entry); rows are 1-based."""
        for j, col in enumerate(self.columns):
            for i, e in enumerate(col, start=1):
                yield j, i, e

    def entry_sum(self) -> int:
        return sum(e for col in self.columns for e in col)

    def __str__(self):
        return str(self.to_lists())


def format_rows(t: Tableau) -> str:
    """Right-justified row display mirroring the shape layout."""
    width = len(str(t.shape.n))
    total = t.shape.num_columns
    lines = []
    for r in range(1, t.shape.ell + 1):
        row = t.row(r)
        if not row:
            continue
        pad = " " * ((width + 1) * (total - len(row)))
        lines.append(pad + " ".join(str(e).rjust(width) for e in row))
    return "\n".join(lines) if lines else "(empty)"


@dataclass(frozen=True)
class RootLatticeWeight:
    """Nonnegative combination sum b_k * alpha_k of the simple roots."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(b) for b in self.coefficients))
        if any(b < 0 for b in self.coefficients):
            raise ValueError(f"negative coefficient in weight {self.coefficients}")

    @property
    def total(self) -> int:
        return sum(self.coefficients)

    def is_zero(self) -> bool:
        return all(b == 0 for b in self.coefficients)

    def __str__(self):
        return "(" + ",".join(str(b) for b in self.coefficients) + ")"


@dataclass(frozen=True)
class StandardMonomial:
    """Triangular exponent array of a standard monomial.

    levels[r-1] holds level r in printed order (a_r^r, ..., a_1^r); the
    standardness inequalities say each stored level is weakly decreasing.
    The monomial denoted is F_1^{a^1_1} (F_2^{a^2_2} F_1^{a^2_1}) ... with
    operators applied to a vector in right-to-left reading order.
    """

    n: int
    levels: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "levels", tuple(tuple(int(a) for a in lv) for lv in self.levels)
        )
        if len(self.levels) != self.n - 1:
            raise ValueError(f"need {self.n - 1} levels for n={self.n}")
        for r, lv in enumerate(self.levels, start=1):
            if len(lv) != r:
                raise ValueError(f"level {r} must have {r} exponents, got {lv}")
            if any(a < 0 for a in lv):
                raise ValueError(f"negative exponent in level {r}: {lv}")
            if any(lv[i] < lv[i + 1] for i in range(len(lv) - 1)):
                raise ValueError(
                    f"level {r} violates standardness (must be weakly decreasing "
                    f"in printed order): {lv}"
                )

    @classmethod
    def zero(cls, n: int) -> "StandardMonomial":
        return cls(n, tuple((0,) * r for r in range(1, n)))

    @classmethod
    def from_lists(cls, n: int, levels: Sequence[Sequence[int]]) -> "StandardMonomial":
        return cls(n, tuple(tuple(lv) for lv in levels))

    def to_lists(self) -> list[list[int]]:
        return [list(lv) for lv in self.levels]

    def a(self, r: int, k: int) -> int:
        """Exponent a_k^r, 1 <= k <= r <= l."""
        return self.levels[r - 1][r - k]

    def is_zero(self) -> bool:
        return all(a == 0 for lv in self.levels for a in lv)

    def weight(self) -> RootLatticeWeight:
        ell = self.n - 1
        return RootLatticeWeight(
            tuple(sum(self.a(r, k) for r in range(k, ell + 1)) for k in range(1, ell + 1))
        )

    def factors(self) -> list[tuple[int, int]]:
        """(root index, exponent) pairs in printed order, zero powers skipped."""
        out = []
        for r in range(1, self.n):
            for k in range(r, 0, -1):
                a = self.a(r, k)
                if a:
                    out.append((k, a))
        return out

    def __str__(self):
        pieces = [f"F{k}^{a}" for k, a in self.factors()]
        return " ".join(pieces) if pieces else "1"


# ---------------------------------------------------------------------------
# basic constructions and predicates
# ---------------------------------------------------------------------------


def smallest_column(r: int) -> tuple[int, ...]:
    return tuple(range(1, r + 1))


def smallest_tableau(shape: Shape) -> Tableau:
    """The minimum filling: row r constantly r."""
    cols = []
    for r, m in enumerate(shape.multiplicities, start=1):
        cols.extend([smallest_column(r)] * m)
    return Tableau(shape, tuple(cols))


def is_standard(t: Tableau) -> bool:
    for r in range(1, t.shape.ell + 1):
        row = t.row(r)
        if any(row[i] < row[i + 1] for i in range(len(row) - 1)):
            return False
    return True


def is_special(t: Tableau) -> bool:
    for col in t.columns:
        for i, e in enumerate(col, start=1):
            if e > i and i != len(col):
                return False
    return True


def weight(t: Tableau) -> RootLatticeWeight:
    """Root-lattice weight: the box on row i with entry e contributes one
    to each coefficient b_k with i <= k <= e - 1."""
    ell = t.shape.ell
    b = [0] * ell
    for _, i, e in t.boxes():
        for k in range(i, e):
            b[k - 1] += 1
    return RootLatticeWeight(tuple(b))


def monomial_of(t: Tableau) -> StandardMonomial:
    """Exponent array with a_k^r = number of entries equal to r+1 on the
    top k rows; defined for standard tableaux."""
    if not is_standard(t):
        raise ValueError("monomial_of requires a standard tableau")
    ell = t.shape.ell
    # counts[r][k] = entries equal to r+1 on rows 1..k
    counts = [[0] * (ell + 1) for _ in range(ell + 1)]
    for _, i, e in t.boxes():
        if e >= 2:
            for k in range(i, ell + 1):
                counts[e - 1][k] += 1
    levels = tuple(
        tuple(counts[r][k] for k in range(r, 0, -1)) for r in range(1, ell + 1)
    )
    return StandardMonomial(t.shape.n, levels)


def tableau_of(a: StandardMonomial) -> Tableau:
    """The special standard tableau with exactly a_k^r - a_{k-1}^r entries
    equal to r+1 on row k, on the minimal shape carrying them."""
    ell = a.n - 1

    def diff(r, k):
        return a.a(r, k) - (a.a(r, k - 1) if k > 1 else 0)

    mult = []
    for j in range(1, ell + 1):
        if j == 1:
            mult.append(sum(a.a(r, 1) for r in range(1, ell + 1)))
        else:
            mult.append(sum(diff(r, j) for r in range(j, ell + 1)))
    shape = Shape(a.n, tuple(mult))

    rows = []
    for k in range(1, ell + 1):
        entries = []
        for r in range(k, ell + 1):
            entries.extend([r + 1] * diff(r, k))
        fill = shape.row_length(k) - len(entries)
        if fill < 0:
            raise ValueError(f"monomial {a} does not fit its computed shape")
        entries.extend([k] * fill)
        entries.sort(reverse=True)
        rows.append(entries)

    heights = shape.heights()
    total = shape.num_columns
    cols = []
    for j in range(total):
        h = heights[j]
        # row k starts at column total - row_length(k)
        col = tuple(rows[k - 1][j - (total - shape.row_length(k))] for k in range(1, h + 1))
        cols.append(col)
    t = Tableau(shape, tuple(cols))
    if not is_standard(t) or not is_special(t):
        raise ValueError(f"construction failed to produce a special standard tableau: {t}")
    if monomial_of(t) != a:
        raise ValueError(f"round trip failed for monomial {a}")
    return t


# ---------------------------------------------------------------------------
# the inductive construction: marked entries
# ---------------------------------------------------------------------------


def marked_step(t: Tableau) -> tuple[int, int, Tableau]:
    """One step of the inductive monomial construction.

    Returns (c, k, tau) where c is least such that c+1 occurs on some row
    r <= c, k is the number of such marked entries, and tau is t with every
    marked entry lowered from c+1 to c.
    """
    if not is_standard(t):
        raise ValueError("marked_step requires a standard tableau")
    c = None
    for _, i, e in t.boxes():
        if e > i and (c is None or e - 1 < c):
            c = e - 1
    if c is None:
        raise ValueError("the smallest tableau admits no marked step")
    new_cols = []
    k = 0
    for col in t.columns:
        new_col = list(col)
        for i, e in enumerate(col, start=1):
            if e == c + 1 and i <= c:
                new_col[i - 1] = c
                k += 1
        new_cols.append(tuple(new_col))
    tau = Tableau(t.shape, tuple(new_cols))
    if not is_standard(tau):
        raise ValueError(f"marked step broke standardness at c={c}: {tau}")
    return c, k, tau


def marked_columns(t: Tableau) -> tuple[int, tuple[int, ...]]:
    """(c, 0-based indices of columns carrying a marked entry)."""
    c = None
    for _, i, e in t.boxes():
        if e > i and (c is None or e - 1 < c):
            c = e - 1
    if c is None:
        raise ValueError("the smallest tableau has no marked columns")
    cols = tuple(
        j
        for j, col in enumerate(t.columns)
        if any(e == c + 1 and i <= c for i, e in enumerate(col, start=1))
    )
    return c, cols


def factors_via_marked(t: Tableau) -> list[tuple[int, int]]:
    """(c, k) factor sequence from iterating marked_step to the smallest
    tableau; agrees with StandardMonomial.factors() of monomial_of(t)."""
    out = []
    cur = t
    while cur != smallest_tableau(cur.shape):
        c, k, cur = marked_step(cur)
        out.append((c, k))
    return out


# ---------------------------------------------------------------------------
# partial order and column types
# ---------------------------------------------------------------------------


def compare_columns(x: tuple[int, ...], y: tuple[int, ...]) -> Comparison:
    if len(x) != len(y):
        raise ValueError("columns of different heights are not comparable")
    le = all(a <= b for a, b in zip(x, y))
    ge = all(a >= b for a, b in zip(x, y))
    if le and ge:
        return Comparison.EQUAL
    if le:
        return Comparison.LESS
    if ge:
        return Comparison.GREATER
    return Comparison.INCOMPARABLE


def compare(x: Tableau, y: Tableau) -> Comparison:
    """Order at the first differing column, componentwise on that column."""
    if x.shape != y.shape:
        raise ValueError("compare requires tableaux of one shape")
    for cx, cy in zip(x.columns, y.columns):
        if cx != cy:
            return compare_columns(cx, cy)
    return Comparison.EQUAL


def column_type(col: Sequence[int], c: int) -> ColumnType:
    has_c = c in col
    has_c1 = (c + 1) in col
    if has_c and not has_c1:
        return ColumnType.I
    if has_c1 and not has_c:
        return ColumnType.III
    return ColumnType.II


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def _column_weight(col: tuple[int, ...], ell: int) -> tuple[int, ...]:
    b = [0] * ell
    for i, e in enumerate(col, start=1):
        for k in range(i, e):
            b[k - 1] += 1
    return tuple(b)


def _fillings(
    shape: Shape, standard: bool, mu: Optional[RootLatticeWeight]
) -> Iterator[tuple[tuple[int, ...], ...]]:
    heights = shape.heights()
    n = shape.n
    ell = shape.ell
    cands = {
        h: [(col, _column_weight(col, ell)) for col in combinations(range(1, n + 1), h)]
        for h in set(heights)
    }
    target = mu.coefficients if mu is not None else None
    if target is not None and len(target) != ell:
        raise ValueError(f"weight has {len(target)} coefficients, expected {ell}")
    # componentwise upper bound on what columns j.. can still contribute
    max_rest = [(0,) * ell]
    for h in reversed(heights):
        top = tuple(max(w[k] for _, w in cands[h]) for k in range(ell))
        max_rest.append(tuple(a + b for a, b in zip(max_rest[-1], top)))
    max_rest.reverse()

    def extend(
        j: int, acc: list[tuple[int, ...]], b: tuple[int, ...]
    ) -> Iterator[tuple[tuple[int, ...], ...]]:
        if j == len(heights):
            if target is None or b == target:
                yield tuple(acc)
            return
        prev = acc[-1] if acc else None
        for col, w in cands[heights[j]]:
            if standard and prev is not None and any(
                col[i] > prev[i] for i in range(len(prev))
            ):
                continue
            if target is None:
                nb = b
            else:
                nb = tuple(a + c for a, c in zip(b, w))
                if any(
                    nb[k] > target[k] or nb[k] + max_rest[j + 1][k] < target[k]
                    for k in range(ell)
                ):
                    continue
            acc.append(col)
            yield from extend(j + 1, acc, nb)
            acc.pop()

    yield from extend(0, [], (0,) * ell)


def enumerate_tableaux(
    shape: Shape, mu: Optional[RootLatticeWeight] = None
) -> list[Tableau]:
    """All column-strict tableaux of the shape in column-lexicographic
    order, optionally filtered by weight."""
    return [Tableau(shape, cols) for cols in _fillings(shape, standard=False, mu=mu)]


def enumerate_standard(
    shape: Shape, mu: Optional[RootLatticeWeight] = None
) -> list[Tableau]:
    """All standard tableaux in column-lexicographic order (a linear
    extension of the partial order within each weight class)."""
    return [Tableau(shape, cols) for cols in _fillings(shape, standard=True, mu=mu)]


def enumerate_standard_monomials(n: int, mu: RootLatticeWeight) -> list[StandardMonomial]:
    """All standard monomials of the given weight, generated directly from
    the exponent inequalities (independent of any tableau enumeration)."""
    ell = n - 1
    if len(mu.coefficients) != ell:
        raise ValueError(f"weight has {len(mu.coefficients)} coefficients, expected {ell}")

    def level_choices(r: int, budget: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        # choose (a_r^r, ..., a_1^r), weakly decreasing, a_k^r <= budget[k-1]
        def rec(k: int, ceiling: Optional[int], acc: list[int]) -> Iterator[tuple[int, ...]]:
            if k == 0:
                yield tuple(acc)
                return
            hi = budget[k - 1] if ceiling is None else min(budget[k - 1], ceiling)
            for a in range(hi + 1):
                acc.append(a)
                yield from rec(k - 1, a, acc)
                acc.pop()

        yield from rec(r, None, [])

    def build(r: int, remaining: tuple[int, ...], acc: list[tuple[int, ...]]) -> Iterator[
        tuple[tuple[int, ...], ...]
    ]:
        if r > ell:
            if all(b == 0 for b in remaining):
                yield tuple(acc)
            return
        for lv_desc in level_choices(r, remaining):
            # lv_desc came out as (a_r^r, a_{r-1}^r, ..., a_1^r) already
            new_remaining = list(remaining)
            ok = True
            for idx, a in enumerate(lv_desc):
                k = r - idx
                new_remaining[k - 1] -= a
                if new_remaining[k - 1] < 0:
                    ok = False
                    break
            if not ok:
                continue
            # levels above r can only spend on coefficients b_k with k <= r_next
            acc.append(lv_desc)
            yield from build(r + 1, tuple(new_remaining), acc)
            acc.pop()

    out = []
    for levels in build(1, mu.coefficients, []):
        m = StandardMonomial(n, levels)
        if m.weight() == mu:
            out.append(m)
    return out


# ---------------------------------------------------------------------------
# shapes large enough for a weight; insertion and equivalence
# ---------------------------------------------------------------------------


def lambda_for(mu: RootLatticeWeight) -> Shape:
    """The minimal sufficient shape m_j = b_j for realizing weight mu."""
    return Shape(len(mu.coefficients) + 1, mu.coefficients)


def embed(y: Tableau, lam: Shape, lam_prime: Shape) -> Tableau:
    """Pad y from shape lam to lam_prime by appending smallest columns at
    the end of each height block."""
    if y.shape != lam:
        raise ValueError("tableau is not of the stated source shape")
    if lam.n != lam_prime.n:
        raise ValueError("shapes have different ranks")
    if any(a > b for a, b in zip(lam.multiplicities, lam_prime.multiplicities)):
        raise ValueError(f"target shape {lam_prime} is not componentwise >= {lam}")
    cols = []
    for r in range(1, lam.ell + 1):
        cols.extend(y.columns[j] for j in lam.block_range(r))
        cols.extend(
            [smallest_column(r)]
            * (lam_prime.multiplicities[r - 1] - lam.multiplicities[r - 1])
        )
    out = Tableau(lam_prime, tuple(cols))
    if is_standard(y) and not is_standard(out):
        raise ValueError(
            "smallest-column insertion breaks standardness for this tableau"
        )
    if weight(out) != weight(y):
        raise ValueError("insertion changed the weight; this is a bug")
    return out


def minimal_representative(t: Tableau) -> Tableau:
    """Delete every smallest column; the canonical member of the
    insertion/deletion equivalence class."""
    if not is_standard(t):
        raise ValueError("minimal_representative requires a standard tableau")
    mult = list(t.shape.multiplicities)
    keep = []
    for r in range(1, t.shape.ell + 1):
        small = smallest_column(r)
        block = [t.columns[j] for j in t.shape.block_range(r)]
        kept = [col for col in block if col != small]
        # in a standard tableau the smallest columns form a suffix of the block
        if block[: len(kept)] != kept:
            raise ValueError("smallest columns are not a block suffix; tableau not standard?")
        keep.extend(kept)
        mult[r - 1] = len(kept)
    return Tableau(Shape(t.shape.n, tuple(mult)), tuple(keep))


def equivalent(x: Tableau, y: Tableau) -> bool:
    """Same tableau up to inserting/deleting smallest single columns."""
    return minimal_representative(x) == minimal_representative(y)


def compare_monomials(x: StandardMonomial, y: StandardMonomial) -> Comparison:
    """Partial order transferred from tableaux of the minimal sufficient
    shape of the (common) weight."""
    if x.n != y.n:
        raise ValueError("monomials of different ranks are not comparable")
    if x.weight() != y.weight():
        raise ValueError("the transferred order only compares equal weights")
    if x == y:
        return Comparison.EQUAL
    lam0 = lambda_for(x.weight())
    tx = tableau_of(x)
    ty = tableau_of(y)
    return compare(embed(tx, tx.shape, lam0), embed(ty, ty.shape, lam0))


# ---------------------------------------------------------------------------
# executable checks for the marked-step properties
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MarkedStepReport:
    """Outcome of the three combinatorial guarantees of one marked step.

    residual_on_diagonal: after lowering, c+1 survives only on row c+1 (so
        no column of the result is of type III for c).
    left_of_marked_is_marked: any column of the result containing c that
        lies left of a marked column is of type I and itself marked.
    rewrites_stay_below: for every same-weight tableau y strictly below the
        lowered tableau, every legal raise/lower rewriting of y lands
        strictly below the original tableau.
    """

    c: int
    k: int
    residual_on_diagonal: bool
    left_of_marked_is_marked: bool
    rewrites_stay_below: bool
    cases_checked: int
    witness: Optional[str] = None

    @property
    def passed(self) -> bool:
        return (
            self.residual_on_diagonal
            and self.left_of_marked_is_marked
            and self.rewrites_stay_below
        )


def marked_step_properties(sigma: Tableau) -> MarkedStepReport:
    """Exhaustively verify the guarantees of marked_step on one tableau."""
    c, k, tau = marked_step(sigma)
    _, marked = marked_columns(sigma)

    witness = None

    # (residual) every surviving c+1 sits on row c+1; no type III column
    residual = True
    for j, i, e in tau.boxes():
        if e == c + 1 and i != c + 1:
            residual = False
            witness = f"entry c+1 on row {i} of column {j} after the step"
    if any(column_type(col, c) is ColumnType.III for col in tau.columns):
        residual = False
        witness = witness or "type III column after the step"

    # (left of marked) columns of tau containing c left of a marked column
    left_ok = True
    max_marked = max(marked) if marked else -1
    for j, col in enumerate(tau.columns):
        if c in col and j < max_marked:
            if column_type(col, c) is not ColumnType.I or j not in marked:
                left_ok = False
                witness = witness or f"column {j} contains c but is not marked type I"

    # (rewrites) raise/lower modifications of smaller tableaux stay below sigma
    rewrites_ok = True
    cases = 0
    mu = weight(tau)
    for y in enumerate_tableaux(tau.shape, mu):
        if compare(y, tau) is not Comparison.LESS:
            continue
        type1 = [j for j, col in enumerate(y.columns) if column_type(col, c) is ColumnType.I]
        type3 = [j for j, col in enumerate(y.columns) if column_type(col, c) is ColumnType.III]
        for kp in range(len(type3) + 1):
            for lowered in combinations(type3, kp):
                mid_cols = [
                    tuple(c if e == c + 1 else e for e in col) if j in lowered else col
                    for j, col in enumerate(y.columns)
                ]
                mid_type1 = type1 + list(lowered)
                if len(mid_type1) < k + kp:
                    continue
                for raised in combinations(sorted(mid_type1), k + kp):
                    x_cols = tuple(
                        tuple(c + 1 if e == c else e for e in col) if j in raised else col
                        for j, col in enumerate(mid_cols)
                    )
                    x = Tableau(tau.shape, x_cols)
                    cases += 1
                    if compare(x, sigma) is not Comparison.LESS:
                        rewrites_ok = False
                        witness = witness or (
                            f"rewriting of {y} via lower {lowered} raise {raised} "
                            f"gives {x} not below the input"
                        )
    return MarkedStepReport(
        c=c,
        k=k,
        residual_on_diagonal=residual,
        left_of_marked_is_marked=left_ok,
        rewrites_stay_below=rewrites_ok,
        cases_checked=cases,
        witness=witness,
    )
