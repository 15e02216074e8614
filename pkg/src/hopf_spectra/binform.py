"""Exact arithmetic on homogeneous binary forms over the rationals.

A form of degree d is stored as the coefficient tuple (c_0, ..., c_d) where
c_k multiplies s^k t^(d-k).  Multiplying two forms is a convolution of their
coefficient tuples, so most of the arithmetic reduces to univariate
polynomial arithmetic on the dehomogenization t = 1, with the declared degree
carrying the information about the root [1:0].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Sequence

from .linalg import bareiss_det

Rational = Fraction


def parse_rational(value) -> Fraction:
    """Read "p/q", "p", an int or a Fraction."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read a rational from {value!r}")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# univariate helpers on ascending coefficient lists (index k <-> s^k)
# ---------------------------------------------------------------------------

def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _upoly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _upoly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = _trim([Fraction(x) for x in a])
    if len(r) < len(b):
        return [], r
    lead = b[-1]
    q = [Fraction(0)] * (len(r) - len(b) + 1)
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        c = r[-1] / lead
        q[shift] = c
        for j, y in enumerate(b):
            r[shift + j] -= c * y
        r.pop()  # leading term cancels by construction
        _trim(r)
    return q, r


def _upoly_monic(a: list) -> list:
    a = _trim(list(a))
    if not a:
        return a
    lead = a[-1]
    return [x / lead for x in a]


def _primitive_int(a: Sequence) -> list[int]:
    """Integer multiple of a with content 1 (empty for the zero polynomial)."""
    a = _trim([Fraction(x) for x in a])
    if not a:
        return []
    den = 1
    for x in a:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in a]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints]


def _upoly_gcd(a: Sequence, b: Sequence) -> list:
    # primitive pseudo-remainder sequence: stays in Z and keeps coefficients small
    a, b = _primitive_int(a), _primitive_int(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r, lead = a[:], b[-1]
        while len(r) >= len(b):
            shift, c = len(r) - len(b), r[-1]
            r = [lead * x for x in r]
            for j, y in enumerate(b):
                r[shift + j] -= c * y
            r.pop()
            _trim(r)
        a, b = b, _primitive_int(r)
    return _upoly_monic([Fraction(x) for x in a])


def _upoly_deriv(a: Sequence) -> list:
    return _trim([k * a[k] for k in range(1, len(a))])


def _upoly_exact_div(a: Sequence, b: Sequence) -> list:
    q, r = _upoly_divmod(a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def _yun(f: list) -> list[tuple[int, list]]:
    """Yun's squarefree decomposition of a monic univariate polynomial."""
    parts = []
    fp = _upoly_deriv(f)
    a = _upoly_gcd(f, fp)
    b = _upoly_exact_div(f, a)
    c = _upoly_exact_div(fp, a)
    d = _trim([x - y for x, y in _zip_pad(c, _upoly_deriv(b))])
    k = 1
    while len(b) > 1:
        a = _upoly_gcd(b, d)
        if len(a) > 1:
            parts.append((k, a))
        b = _upoly_exact_div(b, a)
        c = _upoly_exact_div(d, a)
        d = _trim([x - y for x, y in _zip_pad(c, _upoly_deriv(b))])
        k += 1
    return parts


def _zip_pad(a: Sequence, b: Sequence):
    n = max(len(a), len(b))
    for i in range(n):
        yield (a[i] if i < len(a) else 0), (b[i] if i < len(b) else 0)


# ---------------------------------------------------------------------------
# points and forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class ProjPoint:
    """A point [x0:x1] of P^1(Q), stored primitive with first nonzero coordinate positive."""

    x0: int
    x1: int

    def __init__(self, x0, x1=None):
        if x1 is None:
            x0, x1 = x0
        x0, x1 = Fraction(x0), Fraction(x1)
        if x0 == 0 and x1 == 0:
            raise ValueError("[0:0] is not a projective point")
        scale = x0.denominator * x1.denominator
        a, b = int(x0 * scale), int(x1 * scale)
        g = gcd(a, b)
        a, b = a // g, b // g
        if a < 0 or (a == 0 and b < 0):
            a, b = -a, -b
        object.__setattr__(self, "x0", a)
        object.__setattr__(self, "x1", b)

    @classmethod
    def affine(cls, u) -> "ProjPoint":
        """The point [u:1]."""
        return cls(u, 1)

    def linear_form(self) -> "BinaryForm":
        """The degree-1 form x1*s - x0*t vanishing exactly at this point."""
        return BinaryForm(1, (-self.x0, self.x1))

    def to_json(self) -> list[int]:
        return [self.x0, self.x1]

    def __iter__(self):
        return iter((self.x0, self.x1))

    def __repr__(self) -> str:
        return f"[{self.x0}:{self.x1}]"


class BinaryForm:
    """Homogeneous form of declared degree d in (s, t) with rational coefficients.

    The declared degree is kept even when leading coefficients vanish, so
    that t-powers (roots at [1:0]) remain visible.  The zero form of any
    degree is allowed; ``bool(f)`` is False for it.
    """

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: Iterable = None):
        if degree < 0:
            raise ValueError("degree must be non-negative")
        coeffs = tuple(Fraction(c) if not isinstance(c, str) else parse_rational(c)
                       for c in (coeffs if coeffs is not None else [0] * (degree + 1)))
        if len(coeffs) != degree + 1:
            raise ValueError(f"degree {degree} form needs {degree + 1} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, key, value):
        raise AttributeError("BinaryForm is immutable")

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, degree: int) -> "BinaryForm":
        return cls(degree)

    @classmethod
    def constant(cls, c) -> "BinaryForm":
        return cls(0, (c,))

    @classmethod
    def from_roots(cls, points: Iterable[ProjPoint], scale=1) -> "BinaryForm":
        f = cls.constant(scale)
        for p in points:
            f = f * p.linear_form()
        return f

    @classmethod
    def _from_upoly(cls, a: Sequence, degree: int) -> "BinaryForm":
        a = list(a)
        if len(a) > degree + 1:
            raise ValueError("polynomial exceeds declared degree")
        return cls(degree, a + [Fraction(0)] * (degree + 1 - len(a)))

    # basic properties ---------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.degree, self.coeffs))

    def __repr__(self) -> str:
        return f"BinaryForm({self})"

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "*".join(
                part for part in (_power("s", k), _power("t", self.degree - k)) if part
            )
            if not mono:
                terms.append(format_rational(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{format_rational(c)}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def s_order(self) -> int:
        """Exponent of the largest power of s dividing the form."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        raise ValueError("zero form has no order")

    def t_order(self) -> int:
        """Exponent of the largest power of t dividing the form."""
        for k in range(self.degree, -1, -1):
            if self.coeffs[k] != 0:
                return self.degree - k
        raise ValueError("zero form has no order")

    def leading_coefficient(self) -> Fraction:
        """Coefficient of the highest power of s that occurs."""
        for c in reversed(self.coeffs):
            if c != 0:
                return c
        return Fraction(0)

    def monic(self) -> "BinaryForm":
        lead = self.leading_coefficient()
        if lead == 0:
            raise ValueError("zero form cannot be made monic")
        return self.scale(1 / lead)

    def primitive(self) -> "BinaryForm":
        """Integer multiple with coprime coefficients and positive leading coefficient."""
        if self.is_zero():
            return self
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for x in ints:
            g = gcd(g, x)
        if self.leading_coefficient() < 0:
            g = -g
        return BinaryForm(self.degree, [Fraction(x, g) for x in ints])

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.degree != other.degree:
            if other.is_zero():
                return self
            if self.is_zero():
                return other
            raise ValueError("cannot add forms of different degrees")
        return BinaryForm(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "BinaryForm":
        return BinaryForm(self.degree, [-c for c in self.coeffs])

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + (-other)

    def __mul__(self, other) -> "BinaryForm":
        if isinstance(other, BinaryForm):
            return BinaryForm(self.degree + other.degree, _upoly_mul(self.coeffs, other.coeffs))
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "BinaryForm":
        c = Fraction(c)
        return BinaryForm(self.degree, [c * x for x in self.coeffs])

    def __pow__(self, k: int) -> "BinaryForm":
        out = BinaryForm.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: "BinaryForm") -> tuple["BinaryForm", "BinaryForm"] | None:
        """Exact division test: (quotient, zero) if ``other`` divides ``self``, else None."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero form")
        if other.degree > self.degree:
            return None
        qdeg = self.degree - other.degree
        if self.is_zero():
            return BinaryForm.zero(qdeg), self
        q, r = _upoly_divmod(self.coeffs, other.coeffs)
        if r or len(_trim(list(q))) > qdeg + 1:
            return None
        return BinaryForm._from_upoly(_trim(list(q)), qdeg), BinaryForm.zero(self.degree)

    def exact_div(self, other: "BinaryForm") -> "BinaryForm":
        res = self.divmod(other)
        if res is None:
            raise ArithmeticError(f"{other} does not divide {self}")
        return res[0]

    def __floordiv__(self, other: "BinaryForm") -> "BinaryForm":
        return self.exact_div(other)

    def divides(self, other: "BinaryForm") -> bool:
        return other.divmod(self) is not None

    def diff_s(self) -> "BinaryForm":
        if self.degree == 0:
            return BinaryForm.zero(0)
        return BinaryForm(self.degree - 1, [k * self.coeffs[k] for k in range(1, self.degree + 1)])

    def diff_t(self) -> "BinaryForm":
        if self.degree == 0:
            return BinaryForm.zero(0)
        d = self.degree
        return BinaryForm(d - 1, [(d - k) * self.coeffs[k] for k in range(d)])

    def __call__(self, p) -> Fraction:
        return bf_eval(self, p)

    # serialization ------------------------------------------------------
    def to_json(self) -> dict:
        return {"degree": self.degree, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "BinaryForm":
        if not isinstance(data, dict) or "degree" not in data or "coeffs" not in data:
            raise ValueError("binary form must be an object with 'degree' and 'coeffs'")
        degree = data["degree"]
        if not isinstance(degree, int) or isinstance(degree, bool):
            raise ValueError("binary form degree must be an integer")
        return cls(degree, [parse_rational(c) for c in data["coeffs"]])


def _power(var: str, k: int) -> str:
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{k}"


S = BinaryForm(1, (0, 1))
T = BinaryForm(1, (1, 0))


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """f = unit * prod(f_k ** k) with pairwise coprime squarefree monic f_k."""

    parts: tuple[tuple[int, BinaryForm], ...]
    unit: Fraction

    def expand(self) -> BinaryForm:
        out = BinaryForm.constant(self.unit)
        for k, f in self.parts:
            out = out * f ** k
        return out

    def multiplicities(self) -> list[int]:
        """Root multiplicities over the algebraic closure, one entry per distinct root."""
        out = []
        for k, f in self.parts:
            out.extend([k] * f.degree)
        return out

    def is_squarefree(self) -> bool:
        return all(k == 1 for k, _ in self.parts)

    def weighted_degree(self) -> int:
        return sum(k * f.degree for k, f in self.parts)


# ---------------------------------------------------------------------------
# the operations
# ---------------------------------------------------------------------------

def bf_eval(f: BinaryForm, p) -> Fraction:
    """Evaluate f at the canonical representative of p."""
    if not isinstance(p, ProjPoint):
        p = ProjPoint(*p)
    s, t = p.x0, p.x1
    d = f.degree
    return sum((c * s ** k * t ** (d - k) for k, c in enumerate(f.coeffs) if c), Fraction(0))


def _split_st(f: BinaryForm) -> tuple[int, int, list]:
    """f = s^a t^b g(s, t) with g(0, 1) g(1, 0) != 0; returns (a, b, g(s, 1))."""
    a, b = f.s_order(), f.t_order()
    return a, b, list(f.coeffs[a:f.degree - b + 1])


def bf_gcd(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Monic gcd of two binary forms, including common powers of s and t."""
    if f.is_zero() and g.is_zero():
        raise ValueError("undefined gcd")
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    fa, fb, fu = _split_st(f)
    ga, gb, gu = _split_st(g)
    core = _upoly_gcd(fu, gu)
    a, b = min(fa, ga), min(fb, gb)
    h = BinaryForm._from_upoly(core, len(core) - 1)
    return (S ** a * T ** b * h).monic()


def sylvester_matrix(f: Sequence, g: Sequence) -> list[list]:
    """Homogeneous Sylvester matrix of two coefficient sequences.

    ``f`` and ``g`` list coefficients by ascending power of s (the BinaryForm
    layout); entries may live in any ring.  Rows hold coefficients by
    descending powers of s.
    """
    if isinstance(f, BinaryForm):
        f = f.coeffs
    if isinstance(g, BinaryForm):
        g = g.coeffs
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    zero = f[0] * 0
    fdesc, gdesc = list(f[::-1]), list(g[::-1])
    rows = []
    for i in range(n):
        rows.append([zero] * i + fdesc + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + gdesc + [zero] * (size - n - 1 - i))
    return rows


def bf_resultant(f: BinaryForm, g: BinaryForm) -> Fraction:
    """Sylvester resultant; zero exactly when f and g share a projective root."""
    if f.degree < 1 or g.degree < 1:
        raise ValueError("resultant needs forms of positive degree")
    rows = sylvester_matrix(f, g)
    # clear denominators row by row so elimination stays in the integers
    scale = Fraction(1)
    int_rows = []
    for row in rows:
        den = 1
        for c in row:
            den = den * c.denominator // gcd(den, c.denominator)
        scale *= den
        int_rows.append([int(c * den) for c in row])
    return Fraction(bareiss_det(int_rows)) / scale


def squarefree_decomposition(f: BinaryForm) -> SquarefreeDecomposition:
    """Yun decomposition of a binary form, with s and t powers split off first."""
    if f.degree < 1:
        raise ValueError("squarefree decomposition needs positive degree")
    if f.is_zero():
        raise ValueError("zero form has no squarefree decomposition")
    a, b, core = _split_st(f)
    unit = core[-1]
    parts: dict[int, BinaryForm] = {}
    if len(core) > 1:
        for k, piece in _yun(_upoly_monic(core)):
            parts[k] = BinaryForm._from_upoly(piece, len(piece) - 1)
    for k, lin in ((a, S), (b, T)):
        if k:
            parts[k] = (parts[k] * lin if k in parts else lin).monic()
    return SquarefreeDecomposition(tuple(sorted(parts.items(), key=lambda kv: kv[0])), unit)


def root_multiplicity_at(f: BinaryForm, p) -> int:
    """Largest k such that (x1*s - x0*t)^k divides f."""
    if f.is_zero():
        raise ValueError("zero form vanishes to infinite order")
    if not isinstance(p, ProjPoint):
        p = ProjPoint(*p)
    lin = p.linear_form()
    k = 0
    while f.degree >= 1 and bf_eval(f, p) == 0:
        f = f.exact_div(lin)
        k += 1
    return k


def taylor_coefficients(f: BinaryForm, p, count: int) -> list[Fraction]:
    """First ``count`` Taylor coefficients of f in the affine chart around p.

    Uses u = s/t when p = [x0:x1] has x1 != 0 and v = t/s at [1:0].
    """
    if not isinstance(p, ProjPoint):
        p = ProjPoint(*p)
    d = f.degree
    if p.x1 == 0:
        return [f.coeffs[d - j] if j <= d else Fraction(0) for j in range(count)]
    u = Fraction(p.x0, p.x1)
    return [
        sum((comb(k, j) * f.coeffs[k] * u ** (k - j) for k in range(j, d + 1)), Fraction(0))
        for j in range(count)
    ]


class IntegerForm:
    """Binary form with integer coefficients, for fraction-free elimination.

    Only what Bareiss elimination needs: ``*``, ``-``, exact ``//`` and a
    truthiness zero test.  Exact division is valid because every quotient
    formed during elimination is a minor, hence has integer coefficients.
    """

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: Sequence[int]):
        self.degree = degree
        self.coeffs = list(coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __neg__(self) -> "IntegerForm":
        return IntegerForm(self.degree, [-c for c in self.coeffs])

    def __mul__(self, other) -> "IntegerForm":
        if isinstance(other, int):
            return IntegerForm(self.degree, [c * other for c in self.coeffs])
        out = [0] * (self.degree + other.degree + 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return IntegerForm(self.degree + other.degree, out)

    def __sub__(self, other: "IntegerForm") -> "IntegerForm":
        if self.degree != other.degree:
            if not other:
                return self
            if not self:
                return -other
            raise ValueError("cannot subtract forms of different degrees")
        return IntegerForm(self.degree, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __floordiv__(self, other: "IntegerForm") -> "IntegerForm":
        qdeg = self.degree - other.degree
        r = _trim(list(self.coeffs))
        b = _trim(list(other.coeffs))
        if not b:
            raise ZeroDivisionError("division by the zero form")
        q = [0] * (qdeg + 1)
        lead = b[-1]
        while r:
            shift = len(r) - len(b)
            c, rem = divmod(r[-1], lead)
            if shift < 0 or rem or shift > qdeg:
                raise ArithmeticError("inexact division")
            q[shift] = c
            for j, y in enumerate(b):
                r[shift + j] -= c * y
            _trim(r)
        return IntegerForm(qdeg, q)

    def to_form(self) -> BinaryForm:
        return BinaryForm(self.degree, self.coeffs)
