"""Exact coefficient arithmetic over Z[q, q^-1] and its fraction field Q(q).

These two rings are the coefficient currency of the whole package: module
expansions, basis matrices and all verification predicates run on them.
``LaurentPoly`` holds integer-coefficient Laurent polynomials, ``RationalQ``
holds quotients in a canonical form from which regularity at q = 0 can be
read off directly: the denominator is a genuine polynomial with nonzero
constant term and positive leading coefficient, any power of q is migrated
into the numerator's exponent range, and the fraction is reduced (no common
polynomial factor, no common integer content).

Everything is immutable and every operation returns a fresh value, so values
can be shared freely across threads and processes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm


class InexactDivisionError(ArithmeticError):
    """A division that was required to be exact left a remainder."""


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------


class LaurentPoly:
    """Integer-coefficient Laurent polynomial in one variable q.

    >>> p = LaurentPoly({-2: 1, 0: 2, 1: 3})
    >>> str(p)
    'q^-2 + 2 + 3*q'
    >>> str(p.bar())
    '3*q^-1 + 2 + q^2'
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            data = {}
        elif isinstance(terms, dict):
            data = {int(e): int(c) for e, c in terms.items() if c != 0}
        else:
            data = {}
            for e, c in terms:
                if c:
                    data[e] = data.get(e, 0) + c
            data = {e: c for e, c in data.items() if c}
        self._terms = data
        self._hash = None

    # -- basic queries ------------------------------------------------------

    def terms(self):
        """Sorted (exponent, coefficient) pairs, ascending exponent."""
        return tuple(sorted(self._terms.items()))

    def coeff(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {0: 1}

    def __bool__(self) -> bool:
        return bool(self._terms)

    def valuation(self) -> int:
        """Lowest exponent with nonzero coefficient; errors on zero."""
        if not self._terms:
            raise ValueError("the zero polynomial has no valuation")
        return min(self._terms)

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("the zero polynomial has no degree")
        return max(self._terms)

    def leading_coeff(self) -> int:
        return self._terms[self.degree()]

    def content(self) -> int:
        """gcd of the integer coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self._terms.values():
            g = gcd(g, c)
        return g

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        data = dict(self._terms)
        for e, c in other._terms.items():
            s = data.get(e, 0) + c
            if s:
                data[e] = s
            else:
                data.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = data
        out._hash = None
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {e: -c for e, c in self._terms.items()}
        out._hash = None
        return out

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO
            out = LaurentPoly.__new__(LaurentPoly)
            out._terms = {e: c * other for e, c in self._terms.items()}
            out._hash = None
            return out
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        a, b = self._terms, other._terms
        if len(b) == 1:
            (e0, c0), = b.items()
            out = LaurentPoly.__new__(LaurentPoly)
            out._terms = {e + e0: c * c0 for e, c in a.items()}
            out._hash = None
            return out
        if len(a) == 1:
            return other * self
        data: dict[int, int] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                s = data.get(e, 0) + ca * cb
                data[e] = s
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {e: c for e, c in data.items() if c}
        out._hash = None
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers leave the Laurent ring basis form")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, e: int):
        """Multiply by q**e."""
        if e == 0 or not self._terms:
            return self
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {ex + e: c for ex, c in self._terms.items()}
        out._hash = None
        return out

    def bar(self):
        """The involution q -> q^-1."""
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {-e: c for e, c in self._terms.items()}
        out._hash = None
        return out

    def _dense(self):
        """(valuation, coefficient list lowest-first); nonzero only."""
        v = self.valuation()
        d = self.degree()
        lst = [0] * (d - v + 1)
        for e, c in self._terms.items():
            lst[e - v] = c
        return v, lst

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division in Z[q, q^-1]; raises InexactDivisionError otherwise."""
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly({0: int(other)})
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return ZERO
        va, la = self._dense()
        vb, lb = other._dense()
        if len(la) < len(lb):
            raise InexactDivisionError(f"({self}) / ({other})")
        quot = [0] * (len(la) - len(lb) + 1)
        rem = list(la)
        top = lb[-1]
        for i in range(len(quot) - 1, -1, -1):
            c = rem[i + len(lb) - 1]
            if c == 0:
                continue
            if c % top:
                raise InexactDivisionError(f"({self}) / ({other})")
            d = c // top
            quot[i] = d
            for j, bc in enumerate(lb):
                rem[i + j] -= d * bc
        if any(rem):
            raise InexactDivisionError(f"({self}) / ({other})")
        return LaurentPoly({va - vb + i: c for i, c in enumerate(quot) if c})

    # -- comparisons and hashing -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_laurent(self)

    def __repr__(self):
        return f"LaurentPoly({self._terms!r})"


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
Q = LaurentPoly({1: 1})


# ---------------------------------------------------------------------------
# balanced quantum integers
# ---------------------------------------------------------------------------


def qint(n: int) -> LaurentPoly:
    """Balanced quantum integer [n] = q^(n-1) + q^(n-3) + ... + q^(1-n).

    [0] = 0 and [1] = 1.  Defined for n >= 0.
    """
    if n < 0:
        raise ValueError("qint expects a nonnegative argument")
    return LaurentPoly({n - 1 - 2 * i: 1 for i in range(n)})


def qint_signed(n: int) -> LaurentPoly:
    """[n] extended to all integers by [-n] = -[n]."""
    if n >= 0:
        return qint(n)
    return -qint(-n)


def qfactorial(n: int) -> LaurentPoly:
    """[n]! = [1][2]...[n]; [0]! = 1."""
    if n < 0:
        raise ValueError("qfactorial expects a nonnegative argument")
    out = ONE
    for j in range(2, n + 1):
        out = out * qint(j)
    return out


def qbinom(n: int, k: int) -> LaurentPoly:
    """Quantum binomial coefficient [n choose k] = [n]! / ([k]! [n-k]!).

    Computed by exact division, which doubles as a check that the division
    really is exact.  Requires 0 <= k <= n.
    """
    if k < 0 or k > n:
        raise ValueError(f"qbinom requires 0 <= k <= n, got n={n}, k={k}")
    if k == 0 or k == n:
        return ONE
    k = min(k, n - k)
    numer = ONE
    for j in range(n - k + 1, n + 1):
        numer = numer * qint(j)
    return numer.exact_div(qfactorial(k))


# ---------------------------------------------------------------------------
# rational functions in q
# ---------------------------------------------------------------------------


def _frac_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """Remainder of dense polynomial division over Q; lists lowest-first."""
    r = list(a)
    db = len(b) - 1
    top = b[-1]
    while len(r) - 1 >= db and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < db or not r:
            break
        f = r[-1] / top
        shift = len(r) - 1 - db
        for j in range(db + 1):
            r[shift + j] -= f * b[j]
        r.pop()
    while r and r[-1] == 0:
        r.pop()
    return r


def _poly_gcd(a: list[int], b: list[int]) -> list[int]:
    """gcd in Z[q] of two nonzero dense polynomials, primitive with positive
    leading coefficient."""
    fa = [Fraction(c) for c in a]
    fb = [Fraction(c) for c in b]
    while fb:
        fa, fb = fb, _frac_rem(fa, fb)
    denom = lcm(*[f.denominator for f in fa]) if fa else 1
    ints = [int(f * denom) for f in fa]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


class RationalQ:
    """Element of Q(q) kept in canonical reduced form.

    The denominator is always a polynomial in q with nonzero constant term
    and positive leading coefficient; stray q powers live in the numerator's
    exponent range.  Canonical form makes ``==`` structural and lets the ring
    membership predicates read properties straight off the parts.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        if isinstance(num, int):
            num = LaurentPoly({0: num})
        if isinstance(den, int):
            den = LaurentPoly({0: den})
        if den.is_zero():
            raise ZeroDivisionError("denominator is zero")
        if num.is_zero():
            self.num = ZERO
            self.den = ONE
            return
        vd = den.valuation()
        if vd:
            num = num.shift(-vd)
            den = den.shift(-vd)
        if not den.is_one():
            vn = num.valuation()
            _, la = num.shift(-vn)._dense()
            _, lb = den._dense()
            g = _poly_gcd(la, lb)
            if len(g) > 1:
                gp = LaurentPoly({i: c for i, c in enumerate(g)})
                num = num.shift(-vn).exact_div(gp).shift(vn)
                den = den.exact_div(gp)
            cg = gcd(num.content(), den.content())
            if den.leading_coeff() < 0:
                cg = -cg
            if cg != 1:
                num = LaurentPoly({e: c // cg for e, c in num._terms.items()})
                den = LaurentPoly({e: c // cg for e, c in den._terms.items()})
        self.num = num
        self.den = den

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "RationalQ":
        """Wrap parts already known to be canonical (internal fast path)."""
        out = cls.__new__(cls)
        out.num = num
        out.den = den
        return out

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "RationalQ":
        return cls._raw(p, ONE)

    @classmethod
    def from_int(cls, n: int) -> "RationalQ":
        return cls._raw(LaurentPoly({0: n}), ONE)

    @classmethod
    def from_fraction_terms(cls, terms: dict[int, Fraction]) -> "RationalQ":
        """Build sum of f_e * q^e for rational f_e."""
        terms = {e: Fraction(f) for e, f in terms.items() if f != 0}
        if not terms:
            return RQ_ZERO
        denom = lcm(*[f.denominator for f in terms.values()])
        num = LaurentPoly({e: int(f * denom) for e, f in terms.items()})
        return cls(num, LaurentPoly({0: denom}))

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def as_laurent(self) -> LaurentPoly:
        if not self.den.is_one():
            raise InexactDivisionError(f"{self} is not a Laurent polynomial")
        return self.num

    def value_at_zero(self) -> Fraction:
        """Value at q = 0; errors when there is a pole."""
        if self.num.is_zero():
            return Fraction(0)
        if self.num.valuation() < 0:
            raise ZeroDivisionError(f"{self} has a pole at q = 0")
        return Fraction(self.num.coeff(0), self.den.coeff(0))

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _promote(x):
        if isinstance(x, RationalQ):
            return x
        if isinstance(x, LaurentPoly):
            return RationalQ._raw(x, ONE)
        if isinstance(x, int):
            return RationalQ._raw(LaurentPoly({0: x}), ONE)
        return None

    def __add__(self, other):
        o = self._promote(other)
        if o is None:
            return NotImplemented
        if self.den.is_one() and o.den.is_one():
            return RationalQ._raw(self.num + o.num, ONE)
        return RationalQ(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalQ._raw(-self.num, self.den)

    def __sub__(self, other):
        o = self._promote(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._promote(other)
        if o is None:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return RQ_ZERO
        if self.den.is_one() and o.den.is_one():
            return RationalQ._raw(self.num * o.num, ONE)
        return RationalQ(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._promote(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero in Q(q)")
        return RationalQ(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._promote(other)
        if o is None:
            return NotImplemented
        return o / self

    def inverse(self) -> "RationalQ":
        if self.num.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        return RationalQ(self.den, self.num)

    def shift(self, e: int) -> "RationalQ":
        """Multiply by q**e; canonical form is preserved."""
        return RationalQ._raw(self.num.shift(e), self.den)

    def bar(self) -> "RationalQ":
        return RationalQ(self.num.bar(), self.den.bar())

    def __eq__(self, other):
        o = self._promote(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.is_one():
            return format_laurent(self.num)
        return f"({format_laurent(self.num)})/({format_laurent(self.den)})"

    def __repr__(self):
        return f"RationalQ({self.num!r}, {self.den!r})"


RQ_ZERO = RationalQ._raw(ZERO, ONE)
RQ_ONE = RationalQ._raw(ONE, ONE)


def bar(x):
    """Bar involution q -> q^-1 on LaurentPoly or RationalQ."""
    return x.bar()


# ---------------------------------------------------------------------------
# membership predicates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Membership:
    """Ring memberships of one Q(q) element.

    in_A: regular at q = 0 (the local ring A).
    in_m: in A and vanishing at q = 0 (the maximal ideal).
    in_Zq: polynomial in q with integer coefficients.
    in_Nqq: Laurent polynomial with nonnegative integer coefficients.
    divisible_by_q: the quotient by q still lies in Z[q].
    bar_invariant: fixed by q -> q^-1.
    """

    in_A: bool
    in_m: bool
    in_Zq: bool
    in_Nqq: bool
    divisible_by_q: bool
    bar_invariant: bool


def membership(x) -> Membership:
    if isinstance(x, LaurentPoly):
        x = RationalQ.from_laurent(x)
    if x.is_zero():
        return Membership(True, True, True, True, True, True)
    laurent = x.den.is_one()
    val = x.num.valuation()
    in_a = val >= 0
    return Membership(
        in_A=in_a,
        in_m=in_a and val >= 1,
        in_Zq=laurent and val >= 0,
        in_Nqq=laurent and all(c > 0 for _, c in x.num.terms()),
        divisible_by_q=laurent and val >= 1,
        bar_invariant=x.bar() == x,
    )


# ---------------------------------------------------------------------------
# truncated power series at q = 0
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PowerSeriesTrunc:
    """Laurent expansion at q = 0 truncated at ``truncation_order``.

    ``coefficients[i]`` is the exact rational coefficient of
    q**(lowest_exponent + i); leading and trailing zeros are trimmed, and an
    expansion that vanishes to the requested order is stored with an empty
    coefficient tuple.
    """

    lowest_exponent: int
    coefficients: tuple[Fraction, ...]
    truncation_order: int

    def is_zero(self) -> bool:
        return not self.coefficients

    def coeff(self, exponent: int) -> Fraction:
        i = exponent - self.lowest_exponent
        if 0 <= i < len(self.coefficients):
            return self.coefficients[i]
        return Fraction(0)

    def terms(self):
        return tuple(
            (self.lowest_exponent + i, c)
            for i, c in enumerate(self.coefficients)
            if c != 0
        )


def series_at_zero(x, order: int) -> PowerSeriesTrunc:
    """Expand x in powers of q around 0 through exponent ``order``.

    The element is written q^v * P(q)/D(q) with D(0) != 0, and the series of
    P/D is produced by the usual convolution recurrence over exact fractions.
    """
    if isinstance(x, LaurentPoly):
        x = RationalQ.from_laurent(x)
    if x.is_zero():
        return PowerSeriesTrunc(0, (), order)
    vn = x.num.valuation()
    if vn > order:
        return PowerSeriesTrunc(0, (), order)
    _, pl = x.num.shift(-vn)._dense()
    _, dl = x.den._dense()
    need = order - vn
    coeffs: list[Fraction] = []
    d0 = Fraction(dl[0])
    for j in range(need + 1):
        s = Fraction(pl[j]) if j < len(pl) else Fraction(0)
        for i in range(1, min(j, len(dl) - 1) + 1):
            s -= dl[i] * coeffs[j - i]
        coeffs.append(s / d0)
    lo = 0
    while lo < len(coeffs) and coeffs[lo] == 0:
        lo += 1
    hi = len(coeffs)
    while hi > lo and coeffs[hi - 1] == 0:
        hi -= 1
    if lo == hi:
        return PowerSeriesTrunc(0, (), order)
    return PowerSeriesTrunc(vn + lo, tuple(coeffs[lo:hi]), order)


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------


def format_laurent(p: LaurentPoly) -> str:
    """Render ascending by exponent, e.g. ``q^-2 + 2 + 3*q``."""
    if p.is_zero():
        return "0"
    pieces = []
    for e, c in p.terms():
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            qp = "q" if e == 1 else f"q^{e}"
            body = qp if mag == 1 else f"{mag}*{qp}"
        pieces.append((c < 0, body))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


def parse_laurent(text: str) -> LaurentPoly:
    """Inverse of :func:`format_laurent`."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial text")
    parts: list[tuple[int, str]] = []
    sign = 1
    i = 0
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        i = 1
    start = i
    while i < len(s):
        if s[i] in "+-" and s[i - 1] != "^":
            parts.append((sign, s[start:i]))
            sign = -1 if s[i] == "-" else 1
            i += 1
            start = i
        else:
            i += 1
    parts.append((sign, s[start:]))
    data: dict[int, int] = {}
    for sg, body in parts:
        if not body:
            raise ValueError(f"bad polynomial text: {text!r}")
        if body.isdigit():
            c, e = int(body), 0
        else:
            head, _, tail = body.partition("q")
            if _ != "q":
                raise ValueError(f"bad term {body!r} in {text!r}")
            if head:
                if not head.endswith("*") or not head[:-1].isdigit():
                    raise ValueError(f"bad term {body!r} in {text!r}")
                c = int(head[:-1])
            else:
                c = 1
            if tail:
                if not tail.startswith("^"):
                    raise ValueError(f"bad term {body!r} in {text!r}")
                e = int(tail[1:])
            else:
                e = 1
        if c:
            data[e] = data.get(e, 0) + sg * c
    return LaurentPoly(data)


def format_rational(x: RationalQ) -> str:
    return str(x)

def parse_rational(text: str) -> RationalQ:
    """Inverse of ``str`` on RationalQ: plain Laurent text or ``(num)/(den)``."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")") and ")/(" in s:
        numtxt, _, dentxt = s[1:-1].partition(")/(")
        return RationalQ(parse_laurent(numtxt), parse_laurent(dentxt))
    return RationalQ.from_laurent(parse_laurent(s))
