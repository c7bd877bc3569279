"""Tensor-product modules with tableau-indexed bases.

A shape determines a tensor product of fundamental modules, one factor per
column; the tableaux of that shape index a basis.  This module implements the
generator actions F/E/K on that basis, divided powers, the closed-form
divided-power expansion over marked column subsets, the sl2-string
decomposition, and the string-shifting (Kashiwara) operators built from it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .qlaurent import (
    LaurentPoly,
    RationalQ,
    RQ_ONE,
    format_rational,
    parse_rational,
    qfactorial,
    qint,
)
from .tableaux import (
    ColumnType,
    RootLatticeWeight,
    Shape,
    StandardMonomial,
    Tableau,
    column_type,
    marked_step,
    monomial_of,
    smallest_tableau,
    weight,
)

FLAVOR_DIVIDED = "divided"
FLAVOR_KASHIWARA = "kashiwara"


def _coerce(x) -> RationalQ:
    if isinstance(x, RationalQ):
        return x
    if isinstance(x, LaurentPoly):
        return RationalQ.from_laurent(x)
    if isinstance(x, int):
        return RationalQ.from_int(x)
    raise TypeError(f"cannot use {type(x).__name__} as a coefficient")


class ModuleVector:
    """A finite combination of tableau basis vectors of a single shape.

    Coefficients are rational functions of q; zero coefficients are never
    stored.  Instances are immutable by convention: all operations return
    fresh vectors.
    """

    __slots__ = ("shape", "_terms")

    def __init__(self, shape: Shape, terms=None):
        clean: dict[Tableau, RationalQ] = {}
        for t, x in dict(terms or {}).items():
            if t.shape != shape:
                raise ValueError(f"tableau of shape {t.shape} in a {shape} vector")
            x = _coerce(x)
            if not x.is_zero():
                clean[t] = x
        self.shape = shape
        self._terms = clean

    @classmethod
    def _raw(cls, shape: Shape, terms: dict) -> "ModuleVector":
        """Internal constructor for already-coerced, shape-checked terms."""
        v = object.__new__(cls)
        v.shape = shape
        v._terms = {t: x for t, x in terms.items() if x}
        return v

    @classmethod
    def zero(cls, shape: Shape) -> "ModuleVector":
        return cls(shape, {})

    @classmethod
    def basis(cls, t: Tableau, coeff=RQ_ONE) -> "ModuleVector":
        return cls(t.shape, {t: coeff})

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, t: Tableau) -> RationalQ:
        return self._terms.get(t, RationalQ.from_int(0))

    def terms(self) -> list[tuple[Tableau, RationalQ]]:
        """Pairs (tableau, coefficient) in enumeration (column-lex) order."""
        return sorted(self._terms.items(), key=lambda item: item[0].columns)

    def support(self) -> list[Tableau]:
        return [t for t, _ in self.terms()]

    def weight_class(self) -> RootLatticeWeight | None:
        """The common weight of all support tableaux; None for the zero vector.

        Raises ValueError if the support mixes weights.
        """
        found = None
        for t in self._terms:
            w = weight(t)
            if found is None:
                found = w
            elif w != found:
                raise ValueError(f"vector mixes weights {found} and {w}")
        return found

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        if not isinstance(other, ModuleVector):
            return NotImplemented
        if self.shape != other.shape:
            raise ValueError("cannot add vectors of different shapes")
        out = dict(self._terms)
        for t, x in other._terms.items():
            prev = out.get(t)
            out[t] = x if prev is None else prev + x
        return ModuleVector._raw(self.shape, out)

    def __neg__(self) -> "ModuleVector":
        return ModuleVector._raw(self.shape, {t: -x for t, x in self._terms.items()})

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self + (-other)

    def scale(self, x) -> "ModuleVector":
        x = _coerce(x)
        return ModuleVector._raw(self.shape, {t: c * x for t, c in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self.shape == other.shape and self._terms == other._terms

    def __hash__(self):
        return hash((self.shape, frozenset(self._terms.items())))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for t, x in self.terms():
            head = f"v{t}"
            parts.append(head if x.is_one() else f"({x})*{head}")
        return " + ".join(parts)

    def __repr__(self):
        return f"ModuleVector({self.shape}, {self!s})"

    def to_json_dict(self) -> dict:
        return {
            "n": self.shape.n,
            "shape": list(self.shape.multiplicities),
            "terms": [
                {"tableau": t.to_lists(), "coeff": format_rational(x)}
                for t, x in self.terms()
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ModuleVector":
        shape = Shape(int(data["n"]), tuple(int(m) for m in data["shape"]))
        terms = {}
        for entry in data["terms"]:
            t = Tableau.from_columns(shape.n, entry["tableau"])
            terms[t] = parse_rational(entry["coeff"])
        return cls(shape, terms)


# ---------------------------------------------------------------------------
# generator actions
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _column_action(col: tuple[int, ...], c: int):
    """Single-column data for sl2(alpha_c): (sl2 weight, F image, E image).

    The images are the column with c raised to c+1 (type I) respectively c+1
    lowered to c (type III); None where the action vanishes.
    """
    kind = column_type(col, c)
    if kind is ColumnType.I:
        f_image = tuple(c + 1 if e == c else e for e in col)
        return 1, f_image, None
    if kind is ColumnType.III:
        e_image = tuple(c if e == c + 1 else e for e in col)
        return -1, None, e_image
    return 0, None, None


def _check_root(i: int, n: int):
    if not 1 <= i <= n - 1:
        raise ValueError(f"root index {i} out of range for rank {n}")


@lru_cache(maxsize=None)
def _qpower(e: int) -> RationalQ:
    return RationalQ.from_laurent(LaurentPoly({e: 1}))


def alpha_weight(i: int, t: Tableau) -> int:
    """K_i eigenvalue exponent of the basis vector at t."""
    _check_root(i, t.shape.n)
    return sum(_column_action(col, i)[0] for col in t.columns)


def act_F(i: int, v: ModuleVector) -> ModuleVector:
    """F_i acting on factor j picks up K_i on the factors left of j."""
    _check_root(i, v.shape.n)
    out: dict[Tableau, RationalQ] = {}
    for t, x in v._terms.items():
        cols = t.columns
        prefix = 0
        for j, col in enumerate(cols):
            w, f_image, _ = _column_action(col, i)
            if f_image is not None:
                s = Tableau._unchecked(v.shape, cols[:j] + (f_image,) + cols[j + 1 :])
                xs = x.shift(prefix)
                prev = out.get(s)
                out[s] = xs if prev is None else prev + xs
            prefix += w
    return ModuleVector._raw(v.shape, out)


def act_E(i: int, v: ModuleVector) -> ModuleVector:
    """E_i acting on factor j picks up K_i^-1 on the factors right of j."""
    _check_root(i, v.shape.n)
    out: dict[Tableau, RationalQ] = {}
    for t, x in v._terms.items():
        cols = t.columns
        total = sum(_column_action(col, i)[0] for col in cols)
        prefix = 0
        for j, col in enumerate(cols):
            w, _, e_image = _column_action(col, i)
            if e_image is not None:
                suffix = total - prefix - w
                s = Tableau._unchecked(v.shape, cols[:j] + (e_image,) + cols[j + 1 :])
                xs = x.shift(-suffix)
                prev = out.get(s)
                out[s] = xs if prev is None else prev + xs
            prefix += w
    return ModuleVector._raw(v.shape, out)


def act_K(i: int, v: ModuleVector) -> ModuleVector:
    _check_root(i, v.shape.n)
    return ModuleVector._raw(
        v.shape, {t: x.shift(alpha_weight(i, t)) for t, x in v._terms.items()}
    )


def act_Kinv(i: int, v: ModuleVector) -> ModuleVector:
    _check_root(i, v.shape.n)
    return ModuleVector._raw(
        v.shape, {t: x.shift(-alpha_weight(i, t)) for t, x in v._terms.items()}
    )


def highest_weight_vector(lam: Shape) -> ModuleVector:
    """The basis vector at the smallest tableau, with coefficient 1."""
    return ModuleVector.basis(smallest_tableau(lam))


# ---------------------------------------------------------------------------
# divided powers
# ---------------------------------------------------------------------------


def divided_F(i: int, k: int, v: ModuleVector) -> ModuleVector:
    """F_i^(k) = F_i^k / [k]!.

    On a vector with Laurent-polynomial coefficients the division is carried
    out exactly and raises InexactDivisionError on failure; once the input
    has a genuinely rational coefficient the whole vector divides in the
    field instead (F^k may then collapse to Laurent coefficients that owe
    nothing to [k]!).
    """
    if k < 0:
        raise ValueError(f"divided power needs k >= 0, got {k}")
    integral = all(x.is_laurent() for x in v._terms.values())
    out = v
    for _ in range(k):
        out = act_F(i, out)
    denom = qfactorial(k)
    if denom.is_one():
        return out
    if integral:
        scaled = {
            t: RationalQ.from_laurent(x.as_laurent().exact_div(denom))
            for t, x in out._terms.items()
        }
    else:
        inv = RationalQ.from_laurent(denom).inverse()
        scaled = {t: x * inv for t, x in out._terms.items()}
    return ModuleVector._raw(v.shape, scaled)


def closed_form_divided_F(i: int, k: int, y: Tableau) -> ModuleVector:
    """F_i^(k) v_y summed over k-subsets of the type-I columns of y.

    Each subset t_1 < ... < t_k contributes q^(r) v_(y with those columns
    raised), where r weights the type-I minus type-III column counts falling
    strictly between consecutive chosen positions.
    """
    _check_root(i, y.shape.n)
    if k < 0:
        raise ValueError(f"divided power needs k >= 0, got {k}")
    cols = y.columns
    actions = [_column_action(col, i) for col in cols]
    hit = [j for j, (_, f_image, _) in enumerate(actions) if f_image is not None]
    # prefix counts of type-I / type-III columns among the first j
    ones = [0]
    threes = [0]
    for w, _, _ in actions:
        ones.append(ones[-1] + (w == 1))
        threes.append(threes[-1] + (w == -1))
    out: dict[Tableau, RationalQ] = {}
    for subset in combinations(hit, k):
        r = 0
        prev = -1  # 0-based position before the first column
        for idx, pos in enumerate(subset):
            phi = ones[pos] - ones[prev + 1]
            eps = threes[pos] - threes[prev + 1]
            r += (k - idx) * (phi - eps)
            prev = pos
        new_cols = list(cols)
        for pos in subset:
            new_cols[pos] = actions[pos][1]
        s = Tableau._unchecked(y.shape, tuple(new_cols))
        xs = _qpower(r)
        prev_x = out.get(s)
        out[s] = xs if prev_x is None else prev_x + xs
    return ModuleVector._raw(y.shape, out)


# ---------------------------------------------------------------------------
# sl2 strings and the operators defined through them
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StringDecomposition:
    """A vector split along the sl2(alpha_i) isotypic pieces it meets.

    components holds pairs (r, v_r), ascending in r, where v_r is a highest
    weight vector for sl2(alpha_i) of weight r (K_i eigenvalue q^r, killed by
    E_i).  alpha_weight is the sl2 weight of the reassembled vector, so the
    component at r sits (r - alpha_weight)/2 steps down its string.
    """

    root_index: int
    shape: Shape
    alpha_weight: int
    components: tuple[tuple[int, ModuleVector], ...]

    def depth(self, r: int) -> int:
        """Number of divided-power steps from the top of the r-string."""
        s, rem = divmod(r - self.alpha_weight, 2)
        if rem or s < 0:
            raise ValueError(f"no string of weight {r} through weight {self.alpha_weight}")
        return s

    def reassemble(self) -> ModuleVector:
        out = ModuleVector.zero(self.shape)
        for r, vr in self.components:
            out = out + divided_F(self.root_index, self.depth(r), vr)
        return out


def string_decompose(i: int, v: ModuleVector) -> StringDecomposition:
    """Write v as a sum of divided powers applied to sl2(alpha_i) tops.

    Peels from the longest string down: the largest s with E_i^s v != 0
    locates the top component, which is recovered from E_i^s v by dividing
    out the product [r-s+1]...[r] and subtracted off via its divided power.
    """
    _check_root(i, v.shape.n)
    if v.is_zero():
        return StringDecomposition(i, v.shape, 0, ())
    v.weight_class()  # raises on mixed weights
    w = alpha_weight(i, next(iter(v._terms)))
    components = []
    rest = v
    prev_s = None
    while not rest.is_zero():
        chain = [rest]
        while chain[-1]:
            chain.append(act_E(i, chain[-1]))
        s = len(chain) - 2
        assert prev_s is None or s < prev_s, "string peeling failed to descend"
        prev_s = s
        r = w + 2 * s
        assert r >= 0, "negative highest string weight"
        denom = RQ_ONE
        for j in range(1, s + 1):
            denom = denom * RationalQ.from_laurent(qint(r - s + j))
        top = chain[s].scale(denom.inverse())
        assert act_E(i, top).is_zero()
        components.append((r, top))
        rest = rest - divided_F(i, s, top)
    components.sort(key=lambda item: item[0])
    return StringDecomposition(i, v.shape, w, tuple(components))


def kashiwara_F_power(i: int, k: int, v: ModuleVector) -> ModuleVector:
    """Shift every string component k further steps down its string."""
    if k < 0:
        raise ValueError(f"operator power needs k >= 0, got {k}")
    dec = string_decompose(i, v)
    out = ModuleVector.zero(v.shape)
    for r, vr in dec.components:
        out = out + divided_F(i, dec.depth(r) + k, vr)
    return out


def kashiwara_F(i: int, v: ModuleVector) -> ModuleVector:
    return kashiwara_F_power(i, 1, v)


def kashiwara_E(i: int, v: ModuleVector) -> ModuleVector:
    """Shift every string component one step up, dropping the tops."""
    dec = string_decompose(i, v)
    out = ModuleVector.zero(v.shape)
    for r, vr in dec.components:
        s = dec.depth(r)
        if s > 0:
            out = out + divided_F(i, s - 1, vr)
    return out


# ---------------------------------------------------------------------------
# monomials of operators
# ---------------------------------------------------------------------------


def _operator(flavor: str):
    if flavor == FLAVOR_DIVIDED:
        return divided_F
    if flavor == FLAVOR_KASHIWARA:
        return kashiwara_F_power
    raise ValueError(f"unknown flavor {flavor!r}")


def apply_monomial(monomial, flavor: str, v: ModuleVector) -> ModuleVector:
    """Apply a standard monomial of operators, rightmost factor first.

    monomial may be a StandardMonomial or a standard Tableau (converted via
    monomial_of).  flavor selects divided powers or the string-shifting
    operators.
    """
    op = _operator(flavor)
    if isinstance(monomial, Tableau):
        monomial = monomial_of(monomial)
    if not isinstance(monomial, StandardMonomial):
        raise TypeError(f"cannot read {type(monomial).__name__} as a monomial")
    out = v
    for root, mult in reversed(monomial.factors()):
        out = op(root, mult, out)
    return out


def apply_monomial_via_marked(sigma: Tableau, flavor: str, v: ModuleVector) -> ModuleVector:
    """Evaluate the monomial of sigma by walking marked steps.

    Each marked step contributes the outermost remaining factor, so the pairs
    are collected first and applied in reverse.  Agrees with apply_monomial
    on the monomial of sigma.
    """
    op = _operator(flavor)
    pairs = []
    t = sigma
    floor = smallest_tableau(sigma.shape)
    while t != floor:
        c, k, t = marked_step(t)
        pairs.append((c, k))
    out = v
    for root, mult in reversed(pairs):
        out = op(root, mult, out)
    return out
