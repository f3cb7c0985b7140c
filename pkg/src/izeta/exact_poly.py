"""Exact arithmetic over the rationals: sparse bivariate and dense univariate
polynomials, a parser for the textual polynomial grammar, gcds, squarefree
decompositions and resultants.

Coefficients are :class:`fractions.Fraction` throughout, so every value is
reduced with a positive denominator.

Conventions fixed here (everything downstream relies on them):

* Bivariate terms are ordered lexicographically with ``x > y``; the *leading*
  term is the lex-largest exponent pair.
* ``gcd_bivariate`` returns a polynomial with coprime integer coefficients and
  positive lex-leading coefficient (content 1).
* ``UnivariatePoly.gcd`` returns a monic polynomial (or zero).
* ``resultant(p, q) = lc(q)**deg(p) * prod(p(b) for b in roots(q))``, i.e. the
  determinant of the Sylvester matrix whose first ``deg p`` rows hold the
  coefficients of ``q``.  With this convention ``Res(v - a, v - b) = b - a``.
"""

from __future__ import annotations

import math
import sys
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Rational = Fraction


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise TypeError(f"cannot coerce {value!r} to an exact rational")
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class PolynomialError(ValueError):
    """Raised for ill-posed polynomial operations."""


class PolynomialSyntaxError(PolynomialError):
    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        pointer = " " * position + "^"
        super().__init__(f"{message} at position {position}\n  {text}\n  {pointer}")


# --------------------------------------------------------------------------
# univariate
# --------------------------------------------------------------------------


class UnivariatePoly:
    """Dense univariate polynomial, coefficients stored from degree 0 upwards.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c) -> "UnivariatePoly":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c=1) -> "UnivariatePoly":
        return cls([0] * degree + [c])

    @classmethod
    def linear_root(cls, root) -> "UnivariatePoly":
        """The monic polynomial ``v - root``."""
        return cls([-as_rational(root), 1])

    # -- basic queries ---------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, value):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def order_at_zero(self) -> int:
        if not self.coeffs:
            raise PolynomialError("undefined order of the zero polynomial")
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        raise AssertionError("unreachable")

    # -- arithmetic -------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, UnivariatePoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UnivariatePoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __neg__(self) -> "UnivariatePoly":
        return UnivariatePoly(-c for c in self.coeffs)

    def __add__(self, other) -> "UnivariatePoly":
        other = _as_univariate(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UnivariatePoly(self.coefficient(k) + other.coefficient(k) for k in range(n))

    __radd__ = __add__

    def __sub__(self, other) -> "UnivariatePoly":
        return self + (-_as_univariate(other))

    def __rsub__(self, other) -> "UnivariatePoly":
        return _as_univariate(other) - self

    def __mul__(self, other) -> "UnivariatePoly":
        other = _as_univariate(other)
        if not self.coeffs or not other.coeffs:
            return UnivariatePoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UnivariatePoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UnivariatePoly":
        result = UnivariatePoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "UnivariatePoly":
        c = as_rational(c)
        return UnivariatePoly(c * a for a in self.coeffs)

    def divmod(self, divisor: "UnivariatePoly") -> tuple["UnivariatePoly", "UnivariatePoly"]:
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = divisor.degree
        if len(rem) - 1 < dq:
            return UnivariatePoly(), self
        quot = [Fraction(0)] * (len(rem) - dq)
        inv = 1 / divisor.lc
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv
            if c:
                quot[k - dq] = c
                for j, b in enumerate(divisor.coeffs):
                    rem[k - dq + j] -= c * b
        return UnivariatePoly(quot), UnivariatePoly(rem[:dq])

    def __floordiv__(self, other) -> "UnivariatePoly":
        return self.divmod(_as_univariate(other))[0]

    def __mod__(self, other) -> "UnivariatePoly":
        return self.divmod(_as_univariate(other))[1]

    def divexact(self, other: "UnivariatePoly") -> "UnivariatePoly":
        q, r = self.divmod(other)
        if r:
            raise PolynomialError(f"{other} does not divide {self}")
        return q

    def monic(self) -> "UnivariatePoly":
        if not self.coeffs:
            return self
        return self.scale(1 / self.lc)

    def derivative(self) -> "UnivariatePoly":
        return UnivariatePoly(k * c for k, c in enumerate(self.coeffs) if k)

    def shift(self, c) -> "UnivariatePoly":
        """Return ``p(v + c)``."""
        c = as_rational(c)
        out = UnivariatePoly()
        for a in reversed(self.coeffs):
            out = out * UnivariatePoly([c, 1]) + a
        return out

    def gcd(self, other: "UnivariatePoly") -> "UnivariatePoly":
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def squarefree_part(self) -> "UnivariatePoly":
        if self.is_constant():
            return UnivariatePoly([1]) if self else self
        return self.divexact(self.gcd(self.derivative())).monic()

    def is_squarefree(self) -> bool:
        return self.gcd(self.derivative()).is_constant()

    def squarefree_decomposition(self) -> list[tuple["UnivariatePoly", int]]:
        """Yun's algorithm; returns monic squarefree factors with increasing exponents."""
        if self.is_zero():
            raise PolynomialError("squarefree decomposition of zero")
        if self.is_constant():
            return []
        out = []
        f = self.monic()
        df = f.derivative()
        a = f.gcd(df)
        b = f.divexact(a)
        c = df.divexact(a)
        d = c - b.derivative()
        k = 1
        while not b.is_constant():
            a = b.gcd(d)
            b = b.divexact(a)
            c = d.divexact(a)
            d = c - b.derivative()
            if not a.is_constant():
                out.append((a.monic(), k))
            k += 1
        return out

    def rational_roots(self) -> list[Fraction]:
        """Distinct rational roots, ascending."""
        if self.is_zero():
            raise PolynomialError("every rational is a root of the zero polynomial")
        p = self.squarefree_part() if not self.is_constant() else self
        roots: set[Fraction] = set()
        if p.degree <= 0:
            return []
        if p.coefficient(0) == 0:
            roots.add(Fraction(0))
            p = UnivariatePoly(p.coeffs[p.order_at_zero():])
        if p.degree <= 0:
            return sorted(roots)
        ints = _integer_coefficients(p.coeffs)
        for num in _divisors(abs(ints[0])):
            for den in _divisors(abs(ints[-1])):
                if math.gcd(num, den) != 1:
                    continue
                for sgn in (1, -1):
                    r = Fraction(sgn * num, den)
                    if p(r) == 0:
                        roots.add(r)
        return sorted(roots)

    def without_rational_roots(self) -> "UnivariatePoly":
        """Squarefree part with all rational roots divided out (monic)."""
        p = self.squarefree_part()
        for r in p.rational_roots():
            p = p.divexact(UnivariatePoly.linear_root(r))
        return p.monic()

    def distinct_root_count(self) -> int:
        """Number of distinct complex roots."""
        if self.is_zero():
            raise PolynomialError("the zero polynomial has infinitely many roots")
        return max(self.squarefree_part().degree, 0)

    def to_string(self, var: str = "v") -> str:
        terms = {(k, 0): c for k, c in enumerate(self.coeffs) if c}
        return _format_terms(terms, (var, "_"))

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"UnivariatePoly({self.to_string()!r})"


def _as_univariate(value) -> UnivariatePoly:
    if isinstance(value, UnivariatePoly):
        return value
    return UnivariatePoly([as_rational(value)])


def univariate_gcd(polys: Iterable[UnivariatePoly]) -> UnivariatePoly:
    g = UnivariatePoly()
    for p in polys:
        g = g.gcd(p)
        if g.degree == 0:
            break
    return g


def _integer_coefficients(coeffs: Sequence[Fraction]) -> list[int]:
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return [v // g for v in ints] if g else ints


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [0]
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


# --------------------------------------------------------------------------
# bivariate
# --------------------------------------------------------------------------

Exponent = tuple[int, int]


class BivariatePoly:
    """Sparse polynomial in two variables with rational coefficients.

    Stored as a mapping from exponent pairs ``(a, b)`` (meaning ``x^a y^b``)
    to nonzero :class:`Fraction` coefficients.  Instances are treated as
    immutable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: dict | Iterable | None = None):
        clean: dict[Exponent, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for (a, b), c in items:
                if a < 0 or b < 0:
                    raise PolynomialError(f"negative exponent ({a}, {b})")
                c = as_rational(c)
                if c:
                    key = (int(a), int(b))
                    s = clean.get(key, Fraction(0)) + c
                    if s:
                        clean[key] = s
                    else:
                        clean.pop(key, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exponent, Fraction]) -> "BivariatePoly":
        # caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c) -> "BivariatePoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, a: int, b: int, c=1) -> "BivariatePoly":
        return cls({(a, b): c})

    @classmethod
    def x(cls) -> "BivariatePoly":
        return cls.monomial(1, 0)

    @classmethod
    def y(cls) -> "BivariatePoly":
        return cls.monomial(0, 1)

    @classmethod
    def parse(cls, text: str) -> "BivariatePoly":
        return parse_polynomial(text)

    # -- queries --------------------------------------------------------
    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(sorted(self._terms.items(), reverse=True))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {(0, 0)}

    def constant_term(self) -> Fraction:
        return self._terms.get((0, 0), Fraction(0))

    def coefficient(self, a: int, b: int) -> Fraction:
        return self._terms.get((a, b), Fraction(0))

    def total_degree(self) -> int:
        return max((a + b for a, b in self._terms), default=-1)

    def degree_x(self) -> int:
        return max((a for a, _ in self._terms), default=-1)

    def degree_y(self) -> int:
        return max((b for _, b in self._terms), default=-1)

    def leading_exponent(self) -> Exponent:
        if not self._terms:
            raise PolynomialError("zero polynomial has no leading term")
        return max(self._terms)

    def leading_coefficient(self) -> Fraction:
        return self._terms[self.leading_exponent()]

    def order_at_origin(self) -> int:
        """Minimum total degree over the stored terms."""
        if not self._terms:
            raise PolynomialError("undefined order of the zero polynomial")
        return min(a + b for a, b in self._terms)

    def order_in_x(self) -> int:
        if not self._terms:
            raise PolynomialError("undefined order of the zero polynomial")
        return min(a for a, _ in self._terms)

    def order_in_y(self) -> int:
        if not self._terms:
            raise PolynomialError("undefined order of the zero polynomial")
        return min(b for _, b in self._terms)

    def initial_form(self) -> "BivariatePoly":
        """Lowest-degree homogeneous part."""
        m = self.order_at_origin()
        return BivariatePoly._raw({e: c for e, c in self._terms.items() if sum(e) == m})

    def __call__(self, x, y) -> Fraction:
        acc = Fraction(0)
        for (a, b), c in self._terms.items():
            acc += c * x**a * y**b
        return acc

    # -- arithmetic -----------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, BivariatePoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == BivariatePoly.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self) -> "BivariatePoly":
        return BivariatePoly._raw({e: -c for e, c in self._terms.items()})

    def __add__(self, other) -> "BivariatePoly":
        other = _as_bivariate(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return BivariatePoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "BivariatePoly":
        return self + (-_as_bivariate(other))

    def __rsub__(self, other) -> "BivariatePoly":
        return _as_bivariate(other) - self

    def __mul__(self, other) -> "BivariatePoly":
        other = _as_bivariate(other)
        out: dict[Exponent, Fraction] = {}
        for (a, b), c in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a + a2, b + b2)
                out[key] = out.get(key, 0) + c * c2
        return BivariatePoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BivariatePoly":
        if n < 0:
            raise PolynomialError("negative power")
        result = BivariatePoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "BivariatePoly":
        c = as_rational(c)
        if not c:
            return BivariatePoly()
        return BivariatePoly._raw({e: c * v for e, v in self._terms.items()})

    def monomial_content(self) -> Exponent:
        """Exponents of the largest monomial dividing ``self``."""
        return self.order_in_x(), self.order_in_y()

    def divide_monomial(self, a: int, b: int) -> "BivariatePoly":
        out = {}
        for (ea, eb), c in self._terms.items():
            if ea < a or eb < b:
                raise PolynomialError(f"x^{a}*y^{b} does not divide {self}")
            out[(ea - a, eb - b)] = c
        return BivariatePoly._raw(out)

    def divmod(self, divisor: "BivariatePoly") -> tuple["BivariatePoly", "BivariatePoly"]:
        """Division by a single polynomial in lex order.

        The remainder is zero exactly when ``divisor`` divides ``self``.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead = divisor.leading_exponent()
        inv = 1 / divisor._terms[lead]
        rem = dict(self._terms)
        quot: dict[Exponent, Fraction] = {}
        leftover: dict[Exponent, Fraction] = {}
        while rem:
            e = max(rem)
            c = rem.pop(e)
            if e[0] >= lead[0] and e[1] >= lead[1]:
                shift = (e[0] - lead[0], e[1] - lead[1])
                qc = c * inv
                quot[shift] = quot.get(shift, 0) + qc
                for (a, b), dc in divisor._terms.items():
                    if (a, b) == lead:
                        continue
                    key = (a + shift[0], b + shift[1])
                    s = rem.get(key, 0) - qc * dc
                    if s:
                        rem[key] = s
                    else:
                        rem.pop(key, None)
            else:
                leftover[e] = c
        return BivariatePoly(quot), BivariatePoly._raw(leftover)

    def divexact(self, divisor: "BivariatePoly") -> "BivariatePoly":
        q, r = self.divmod(divisor)
        if r:
            raise PolynomialError(f"{divisor} does not divide {self}")
        return q

    def divides(self, other: "BivariatePoly") -> bool:
        return not other.divmod(self)[1]

    def derivative_x(self) -> "BivariatePoly":
        return BivariatePoly._raw({(a - 1, b): a * c for (a, b), c in self._terms.items() if a})

    def derivative_y(self) -> "BivariatePoly":
        return BivariatePoly._raw({(a, b - 1): b * c for (a, b), c in self._terms.items() if b})

    def content(self) -> Fraction:
        """Positive rational c such that ``self / c`` has coprime integer coefficients."""
        if not self._terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self._terms.values():
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def normalized(self) -> "BivariatePoly":
        """Content 1, positive lex-leading coefficient."""
        if not self._terms:
            return self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        return self.scale(1 / c)

    # -- substitutions --------------------------------------------------
    def translate(self, a, b) -> "BivariatePoly":
        """Return ``p(x + a, y + b)``."""
        a, b = as_rational(a), as_rational(b)
        if a == 0 and b == 0:
            return self
        xs = _linear_powers(a, self.degree_x(), first=True)
        ys = _linear_powers(b, self.degree_y(), first=False)
        out = BivariatePoly()
        for (ea, eb), c in self._terms.items():
            out = out + (xs[ea] * ys[eb]).scale(c)
        return out

    def blowup_chart(self, kind: int) -> "BivariatePoly":
        """Pull back under ``(u, uv)`` (kind 1) or ``(uv, v)`` (kind 2)."""
        if kind == 1:
            return BivariatePoly._raw({(a + b, b): c for (a, b), c in self._terms.items()})
        if kind == 2:
            return BivariatePoly._raw({(a, a + b): c for (a, b), c in self._terms.items()})
        raise ValueError(f"unknown chart kind {kind}")

    def compose(self, X: "BivariatePoly", Y: "BivariatePoly") -> "BivariatePoly":
        """Return ``p(X(u, v), Y(u, v))``."""
        xp = [BivariatePoly.constant(1)]
        for _ in range(self.degree_x()):
            xp.append(xp[-1] * X)
        yp = [BivariatePoly.constant(1)]
        for _ in range(self.degree_y()):
            yp.append(yp[-1] * Y)
        out = BivariatePoly()
        for (a, b), c in self._terms.items():
            out = out + (xp[a] * yp[b]).scale(c)
        return out

    def restrict_x0(self) -> UnivariatePoly:
        """``p(0, v)`` as a univariate polynomial in the second variable."""
        coeffs: dict[int, Fraction] = {b: c for (a, b), c in self._terms.items() if a == 0}
        return UnivariatePoly(coeffs.get(k, 0) for k in range(max(coeffs, default=-1) + 1))

    def restrict_y0(self) -> UnivariatePoly:
        """``p(u, 0)`` as a univariate polynomial in the first variable."""
        coeffs: dict[int, Fraction] = {a: c for (a, b), c in self._terms.items() if b == 0}
        return UnivariatePoly(coeffs.get(k, 0) for k in range(max(coeffs, default=-1) + 1))

    def coefficients_in_y(self) -> list[UnivariatePoly]:
        """View as a polynomial in y; entry k is the coefficient of y^k (in x)."""
        by_b: dict[int, dict[int, Fraction]] = {}
        for (a, b), c in self._terms.items():
            by_b.setdefault(b, {})[a] = c
        out = []
        for k in range(self.degree_y() + 1):
            row = by_b.get(k, {})
            out.append(UnivariatePoly(row.get(j, 0) for j in range(max(row, default=-1) + 1)))
        return out

    @classmethod
    def from_coefficients_in_y(cls, coeffs: Sequence[UnivariatePoly]) -> "BivariatePoly":
        terms = {}
        for b, cu in enumerate(coeffs):
            for a, c in enumerate(cu.coeffs):
                if c:
                    terms[(a, b)] = c
        return cls._raw(terms)

    @classmethod
    def from_univariate_x(cls, p: UnivariatePoly) -> "BivariatePoly":
        return cls._raw({(a, 0): c for a, c in enumerate(p.coeffs) if c})

    # -- printing -------------------------------------------------------
    def to_string(self, names: tuple[str, str] = ("x", "y")) -> str:
        return _format_terms(self._terms, names)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"BivariatePoly({self.to_string()!r})"


def _as_bivariate(value) -> BivariatePoly:
    if isinstance(value, BivariatePoly):
        return value
    return BivariatePoly.constant(as_rational(value))


def _linear_powers(shift: Fraction, n: int, first: bool) -> list[BivariatePoly]:
    base = BivariatePoly({(1, 0) if first else (0, 1): 1, (0, 0): shift})
    out = [BivariatePoly.constant(1)]
    for _ in range(n):
        out.append(out[-1] * base)
    return out


def _format_terms(terms: dict[Exponent, Fraction], names: tuple[str, str]) -> str:
    if not terms:
        return "0"
    pieces = []
    for (a, b), c in sorted(terms.items(), reverse=True):
        mono = []
        if a:
            mono.append(names[0] if a == 1 else f"{names[0]}^{a}")
        if b:
            mono.append(names[1] if b == 1 else f"{names[1]}^{b}")
        mag = abs(c)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = "*".join(mono)
        else:
            body = format_rational(mag) + "*" + "*".join(mono)
        pieces.append(("-" if c < 0 else "+", body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# --------------------------------------------------------------------------
# gcd / squarefree
# --------------------------------------------------------------------------


def _content_in_x(coeffs: Sequence[UnivariatePoly]) -> UnivariatePoly:
    return univariate_gcd(coeffs)


def _primitive_y(coeffs: list[UnivariatePoly]) -> tuple[UnivariatePoly, list[UnivariatePoly]]:
    cont = _content_in_x(coeffs)
    return cont, [c.divexact(cont) for c in coeffs]


def _prem_y(a: list[UnivariatePoly], b: list[UnivariatePoly]) -> list[UnivariatePoly]:
    """Pseudo-remainder of a by b as polynomials in y over Q[x]."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [c * lb for c in a]
        for j, bc in enumerate(b):
            a[j + shift] = a[j + shift] - la * bc
        while a and a[-1].is_zero():
            a.pop()
    return a


def gcd_bivariate(p: BivariatePoly, q: BivariatePoly) -> BivariatePoly:
    """Greatest common divisor, normalized to content 1 and positive lex-leading coefficient."""
    if p.is_zero() and q.is_zero():
        raise PolynomialError("gcd(0, 0) is undefined")
    if p.is_zero():
        return q.normalized()
    if q.is_zero():
        return p.normalized()
    pa, qa = p.coefficients_in_y(), q.coefficients_in_y()
    cp, pa = _primitive_y(pa)
    cq, qa = _primitive_y(qa)
    cont = cp.gcd(cq)
    if len(pa) < len(qa):
        pa, qa = qa, pa
    while len(qa) > 1:
        r = _prem_y(pa, qa)
        if not r:
            break
        _, r = _primitive_y(r)
        pa, qa = qa, r
    else:
        # qa is a nonzero constant in y: primitive gcd is 1
        qa = [UnivariatePoly([1])]
    g = BivariatePoly.from_coefficients_in_y(qa) * BivariatePoly.from_univariate_x(cont)
    return g.normalized()


def gcd_many(polys: Iterable[BivariatePoly]) -> BivariatePoly:
    g = BivariatePoly()
    for p in polys:
        if p.is_zero():
            continue
        g = gcd_bivariate(g, p)
        if g.is_constant():
            break
    return g


def squarefree_decompose(p: BivariatePoly) -> list[tuple[BivariatePoly, int]]:
    """Squarefree layers of ``p``: pairwise coprime squarefree factors with
    strictly increasing exponents such that ``p = unit * prod(f**k)``.
    """
    if p.is_zero():
        raise PolynomialError("squarefree decomposition of zero")
    if p.is_constant():
        raise PolynomialError("squarefree decomposition of a constant")
    coeffs = p.coefficients_in_y()
    cont, prim = _primitive_y(coeffs)
    layers: dict[int, BivariatePoly] = {}
    for f, k in cont.squarefree_decomposition():
        layers[k] = BivariatePoly.from_univariate_x(f)
    pp = BivariatePoly.from_coefficients_in_y(prim)
    if pp.degree_y() > 0:
        for f, k in _yun_y(pp):
            layers[k] = layers[k] * f if k in layers else f
    return [(layers[k].normalized(), k) for k in sorted(layers)]


def _yun_y(f: BivariatePoly) -> list[tuple[BivariatePoly, int]]:
    # f primitive in y with positive y-degree, so d/dy detects every factor
    out = []
    df = f.derivative_y()
    a = gcd_bivariate(f, df)
    b = f.divexact(a)
    c = df.divexact(a)
    d = c - b.derivative_y()
    k = 1
    while not b.is_constant():
        a = gcd_bivariate(b, d) if not d.is_zero() else b.normalized()
        b = b.divexact(a)
        c = d.divexact(a)
        d = c - b.derivative_y()
        if not a.is_constant():
            out.append((a, k))
        k += 1
    return out


def squarefree_part(p: BivariatePoly) -> BivariatePoly:
    out = BivariatePoly.constant(1)
    for f, _ in squarefree_decompose(p):
        out = out * f
    return out.normalized()


# --------------------------------------------------------------------------
# resultants
# --------------------------------------------------------------------------


def _sylvester(p: Sequence, q: Sequence, zero) -> list[list]:
    """Sylvester matrix with the deg(p) rows of q's coefficients first.

    ``p`` and ``q`` are coefficient lists from the top degree down.
    """
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows = []
    for i in range(m):
        rows.append([zero] * i + list(q) + [zero] * (size - n - 1 - i))
    for i in range(n):
        rows.append([zero] * i + list(p) + [zero] * (size - m - 1 - i))
    return rows


def _det_fraction(mat: list[list[Fraction]]) -> Fraction:
    n = len(mat)
    if n == 0:
        return Fraction(1)
    m = [list(r) for r in mat]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        pv = m[col][col]
        det *= pv
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] / pv
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det


def resultant(p: UnivariatePoly, q: UnivariatePoly) -> Fraction:
    """``lc(q)**deg(p) * prod(p(b) for roots b of q)``."""
    if p.is_zero() and q.is_zero():
        raise PolynomialError("resultant of two zero polynomials")
    if p.is_zero() or q.is_zero():
        other = q if p.is_zero() else p
        return Fraction(1) if other.degree == 0 else Fraction(0)
    mat = _sylvester(list(reversed(p.coeffs)), list(reversed(q.coeffs)), Fraction(0))
    return _det_fraction(mat)


def _det_bareiss(mat: list[list[BivariatePoly]]) -> BivariatePoly:
    n = len(mat)
    if n == 0:
        return BivariatePoly.constant(1)
    m = [list(r) for r in mat]
    sign = 1
    prev = BivariatePoly.constant(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            piv = next((r for r in range(k + 1, n) if not m[r][k].is_zero()), None)
            if piv is None:
                return BivariatePoly()
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).divexact(prev)
            m[i][k] = BivariatePoly()
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def resultant_lifted(p: Sequence[BivariatePoly], q: Sequence[BivariatePoly]) -> BivariatePoly:
    """Resultant in an auxiliary variable of two polynomials whose coefficients
    are bivariate polynomials; ``p[k]`` is the coefficient of ``v**k``.

    The formal degrees are ``len(p) - 1`` and ``len(q) - 1``; the sign
    convention is the one of :func:`resultant`.
    """
    if not p or not q:
        raise PolynomialError("resultant needs nonempty coefficient lists")
    mat = _sylvester(list(reversed(list(p))), list(reversed(list(q))), BivariatePoly())
    return _det_bareiss(mat)


# --------------------------------------------------------------------------
# parsing
# --------------------------------------------------------------------------


class _Parser:
    # poly    := [sign] term (('+'|'-') term)*
    # term    := factor ('*' factor)*
    # factor  := base ('^' nat)?
    # base    := 'x' | 'y' | rational | '(' poly ')'
    # rational:= int ('/' nat)?

    def __init__(self, text: str, offset: int = 0, full_text: str | None = None):
        self.text = text
        self.pos = 0
        self.offset = offset
        self.full = full_text if full_text is not None else text

    def error(self, message: str, pos: int | None = None):
        raise PolynomialSyntaxError(message, self.full, self.offset + (self.pos if pos is None else pos))

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> BivariatePoly:
        self.skip()
        if self.pos >= len(self.text):
            self.error("empty polynomial")
        p = self.poly()
        if self.peek():
            self.error(f"unexpected character {self.peek()!r}")
        return p

    def poly(self) -> BivariatePoly:
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        acc = self.term().scale(sign)
        while self.peek() and self.peek() in "+-":
            op = self.text[self.pos]
            self.pos += 1
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> BivariatePoly:
        acc = self.factor()
        while self.peek() == "*":
            self.pos += 1
            acc = acc * self.factor()
        return acc

    def factor(self) -> BivariatePoly:
        base = self.base()
        if self.peek() == "^":
            self.pos += 1
            self.skip()
            start = self.pos
            n = self.nat()
            if n > sys.maxsize:
                self.error("exponent overflow", start)
            return base**n
        return base

    def nat(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a natural number")
        return int(self.text[start:self.pos])

    def base(self) -> BivariatePoly:
        ch = self.peek()
        if ch == "x":
            self.pos += 1
            return BivariatePoly.x()
        if ch == "y":
            self.pos += 1
            return BivariatePoly.y()
        if ch == "(":
            self.pos += 1
            inner = self.poly()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        if ch.isdigit():
            num = self.nat()
            if self.peek() == "/":
                self.pos += 1
                self.skip()
                start = self.pos
                den = self.nat()
                if den == 0:
                    self.error("zero denominator", start)
                return BivariatePoly.constant(Fraction(num, den))
            return BivariatePoly.constant(num)
        if not ch:
            self.error("unexpected end of input")
        self.error(f"unexpected character {ch!r}")
        raise AssertionError("unreachable")


def parse_polynomial(text: str) -> BivariatePoly:
    """Parse a polynomial in ``x`` and ``y`` with rational coefficients."""
    return _Parser(text).parse()


def parse_polynomial_list(text: str) -> list[BivariatePoly]:
    """Parse comma-separated polynomials (commas inside parentheses are not allowed)."""
    out = []
    start = 0
    for piece in text.split(","):
        out.append(_Parser(piece, offset=start, full_text=text).parse())
        start += len(piece) + 1
    return out
