"""Exact arithmetic in the field Q(q) of rational functions.

Scalars are fractions of integer-coefficient Laurent polynomials in q,
kept in a canonical reduced form so that equality is plain syntactic
comparison.  No floating point anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction


class ScalarError(Exception):
    """Raised for division by zero and bad specialization points."""


def _gcd_many(values):
    g = 0
    for v in values:
        g = math.gcd(g, abs(v))
    return g


class LaurentPoly:
    """Integer-coefficient Laurent polynomial in q.

    Stored as a map exponent -> nonzero integer coefficient; the zero
    polynomial is the empty map.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if v:
                    c[int(e)] = int(v)
        self.coeffs = c
        self._hash = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly({0: 1})

    @staticmethod
    def const(n: int) -> "LaurentPoly":
        return LaurentPoly({0: n})

    @staticmethod
    def q(k: int = 1) -> "LaurentPoly":
        return LaurentPoly({k: 1})

    # -- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def min_exp(self) -> int:
        return min(self.coeffs)

    def max_exp(self) -> int:
        return max(self.coeffs)

    def leading(self) -> int:
        """Coefficient of the highest power of q."""
        return self.coeffs[max(self.coeffs)]

    def content(self) -> int:
        return _gcd_many(self.coeffs.values())

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        c = dict(self.coeffs)
        for e, v in other.coeffs.items():
            w = c.get(e, 0) + v
            if w:
                c[e] = w
            else:
                c.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = c
        out._hash = None
        return out

    def __sub__(self, other):
        c = dict(self.coeffs)
        for e, v in other.coeffs.items():
            w = c.get(e, 0) - v
            if w:
                c[e] = w
            else:
                c.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = c
        out._hash = None
        return out

    def __neg__(self):
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = {e: -v for e, v in self.coeffs.items()}
        out._hash = None
        return out

    def __mul__(self, other):
        c = {}
        for e1, v1 in self.coeffs.items():
            for e2, v2 in other.coeffs.items():
                e = e1 + e2
                w = c.get(e, 0) + v1 * v2
                if w:
                    c[e] = w
                else:
                    c.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = c
        out._hash = None
        return out

    def scale(self, n: int) -> "LaurentPoly":
        if n == 0:
            return LaurentPoly()
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = {e: v * n for e, v in self.coeffs.items()}
        out._hash = None
        return out

    def shifted(self, k: int) -> "LaurentPoly":
        """Multiply by q^k."""
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = {e + k: v for e, v in self.coeffs.items()}
        out._hash = None
        return out

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.coeffs.items()))
        return self._hash

    def evaluate(self, q0: Fraction) -> Fraction:
        """Value at q = q0 (exact; q0 must be nonzero for negative exponents)."""
        total = Fraction(0)
        for e, v in self.coeffs.items():
            total += v * q0 ** e
        return total

    def __repr__(self):
        return f"LaurentPoly({self.coeffs!r})"

    def __str__(self):
        return render_poly(self)


_ZERO = LaurentPoly()
_ONE = LaurentPoly({0: 1})


# -- ordinary-polynomial helpers (exponents >= 0, used for gcd) ---------


def _to_frac_list(p: LaurentPoly):
    """Coefficient list [a_0, ..., a_d] over Fraction; requires min_exp >= 0."""
    d = p.max_exp()
    out = [Fraction(0)] * (d + 1)
    for e, v in p.coeffs.items():
        out[e] = Fraction(v)
    return out


def _trim(xs):
    while xs and xs[-1] == 0:
        xs.pop()
    return xs


def _frac_divmod(a, b):
    """Long division of Fraction coefficient lists; b nonzero."""
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] * inv
        if c:
            q[k] = c
            for i, bv in enumerate(b):
                a[k + i] -= c * bv
    return _trim(q), _trim(a)


def _primitive_int(xs):
    """Clear denominators and divide out the content; positive leading coeff."""
    if not xs:
        return []
    den = 1
    for v in xs:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in xs]
    g = _gcd_many(ints)
    ints = [v // g for v in ints]
    if ints[-1] < 0:
        ints = [-v for v in ints]
    return ints


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Gcd in Z[q] of two ordinary polynomials (min_exp >= 0), nonzero inputs.

    Returned with positive leading coefficient; includes the gcd of the
    integer contents, so that exact division by it stays in Z[q].
    """
    fa, fb = _to_frac_list(a), _to_frac_list(b)
    while fb:
        fa, fb = fb, _frac_divmod(fa, fb)[1]
    prim = _primitive_int(fa)
    cont = math.gcd(a.content(), b.content())
    return LaurentPoly({e: v * cont for e, v in enumerate(prim)})


def _div_exact(a: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Exact division of ordinary integer polynomials."""
    q, r = _frac_divmod(_to_frac_list(a), _to_frac_list(g))
    if r:
        raise ArithmeticError("inexact polynomial division")
    out = {}
    for e, v in enumerate(q):
        if v:
            if v.denominator != 1:
                raise ArithmeticError("non-integral quotient")
            out[e] = int(v)
    return LaurentPoly(out)


class LaurentFraction:
    """Element of Q(q): a reduced fraction of Laurent polynomials.

    Canonical form: numerator and denominator coprime in Z[q, q^-1], the
    denominator an ordinary polynomial with nonzero constant term and
    positive leading coefficient.  Equality and hashing are structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = _ONE):
        if den.is_zero():
            raise ScalarError("division by zero in Q(q)")
        self.num, self.den = self._reduce(num, den)
        self._hash = None

    @staticmethod
    def _reduce(num, den):
        if num.is_zero():
            return _ZERO, _ONE
        s = den.min_exp()
        if s:
            den = den.shifted(-s)
            num = num.shifted(-s)
        t = num.min_exp()
        core = num.shifted(-t) if t else num
        g = poly_gcd(core, den)
        if g != _ONE:
            core = _div_exact(core, g)
            den = _div_exact(den, g)
        if den.leading() < 0:
            core = -core
            den = -den
        return (core.shifted(t) if t else core), den

    # -- constructors --------------------------------------------------

    @staticmethod
    def zero() -> "LaurentFraction":
        return LaurentFraction(_ZERO)

    @staticmethod
    def one() -> "LaurentFraction":
        return LaurentFraction(_ONE)

    @staticmethod
    def from_int(n: int) -> "LaurentFraction":
        return LaurentFraction(LaurentPoly.const(n))

    @staticmethod
    def from_rational(r: Fraction) -> "LaurentFraction":
        return LaurentFraction(LaurentPoly.const(r.numerator),
                               LaurentPoly.const(r.denominator))

    # -- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num.coeffs)

    def is_one(self) -> bool:
        return self.num == _ONE and self.den == _ONE

    # -- field operations ----------------------------------------------

    def __add__(self, other):
        if self.den == other.den:
            return LaurentFraction(self.num + other.num, self.den)
        return LaurentFraction(self.num * other.den + other.num * self.den,
                               self.den * other.den)

    def __sub__(self, other):
        if self.den == other.den:
            return LaurentFraction(self.num - other.num, self.den)
        return LaurentFraction(self.num * other.den - other.num * self.den,
                               self.den * other.den)

    def __neg__(self):
        out = LaurentFraction.__new__(LaurentFraction)
        out.num = -self.num
        out.den = self.den
        out._hash = None
        return out

    def __mul__(self, other):
        return LaurentFraction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.num.is_zero():
            raise ScalarError("division by zero in Q(q)")
        return LaurentFraction(self.num * other.den, self.den * other.num)

    def inverse(self) -> "LaurentFraction":
        if self.num.is_zero():
            raise ScalarError("division by zero in Q(q)")
        return LaurentFraction(self.den, self.num)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = LaurentFraction.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        return (isinstance(other, LaurentFraction)
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def specialize(self, q0: Fraction) -> Fraction:
        """Exact evaluation at q = q0; q0 must avoid {-1, 0, 1}."""
        q0 = Fraction(q0)
        if q0 in (Fraction(-1), Fraction(0), Fraction(1)):
            raise ScalarError(f"bad specialization point q = {q0}")
        d = self.den.evaluate(q0)
        if d == 0:
            raise ScalarError(f"bad specialization point q = {q0}: denominator vanishes")
        return self.num.evaluate(q0) / d

    def __repr__(self):
        return f"LaurentFraction({self})"

    def __str__(self):
        return render(self)


ZERO = LaurentFraction.zero()
ONE = LaurentFraction.one()


def q_power(k: int) -> LaurentFraction:
    """The monomial q^k."""
    return LaurentFraction(LaurentPoly.q(k))


def q_int(n: int, d: int = 1) -> LaurentFraction:
    """The balanced q-integer [n] in q^d: q^{d(n-1)} + q^{d(n-3)} + ... + q^{-d(n-1)}."""
    if n < 0 or d < 1:
        raise ValueError("q_int requires n >= 0 and d >= 1")
    return LaurentFraction(LaurentPoly({d * (n - 1 - 2 * t): 1 for t in range(n)}))


def q_binom(n: int, k: int, d: int = 1) -> LaurentFraction:
    """Balanced q-binomial coefficient [n choose k] in q^d."""
    out = ONE
    for t in range(k):
        out = out * q_int(n - t, d) / q_int(t + 1, d)
    return out


# -- rendering -----------------------------------------------------------


def render_poly(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e in sorted(p.coeffs, reverse=True):
        v = p.coeffs[e]
        sign = "-" if v < 0 else "+"
        a = abs(v)
        if e == 0:
            body = str(a)
        else:
            qpart = "q" if e == 1 else f"q^{e}"
            body = qpart if a == 1 else f"{a}*{qpart}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = first_body if first_sign == "+" else "-" + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def render(x: LaurentFraction) -> str:
    """Canonical string form, e.g. "q^2 - 1 + q^-2" or "(q^2 - 1)/(q + 1)"."""
    if x.den == _ONE:
        return render_poly(x.num)
    return f"({render_poly(x.num)})/({render_poly(x.den)})"


# -- parsing --------------------------------------------------------------


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j])))
            i = j
        elif c in "+-*/^()q":
            tokens.append((c, None))
            i += 1
        else:
            raise ScalarError(f"unexpected character {c!r} in scalar expression")
    tokens.append(("end", None))
    return tokens


class _Parser:
    """Recursive-descent parser for the scalar grammar; evaluates in Q(q)."""

    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> LaurentFraction:
        value = self.expr()
        if self.peek() != "end":
            raise ScalarError("trailing input in scalar expression")
        return value

    def expr(self) -> LaurentFraction:
        negate = False
        if self.peek() in "+-":
            negate = self.next()[0] == "-"
        value = self.term()
        if negate:
            value = -value
        while self.peek() in "+-":
            op = self.next()[0]
            rhs = self.term()
            value = value - rhs if op == "-" else value + rhs
        return value

    def term(self) -> LaurentFraction:
        value = self.atom()
        while True:
            kind = self.peek()
            if kind in "*/":
                op = self.next()[0]
                rhs = self.atom()
                value = value / rhs if op == "/" else value * rhs
            elif kind in ("q", "(", "int"):
                # juxtaposition, e.g. "3q^2"
                value = value * self.atom()
            else:
                return value

    def atom(self) -> LaurentFraction:
        kind, payload = self.next()
        if kind == "int":
            return LaurentFraction.from_int(payload)
        if kind == "q":
            if self.peek() == "^":
                self.next()
                sign = 1
                if self.peek() == "-":
                    self.next()
                    sign = -1
                kind2, k = self.next()
                if kind2 != "int":
                    raise ScalarError("malformed exponent")
                return q_power(sign * k)
            return q_power(1)
        if kind == "(":
            value = self.expr()
            if self.next()[0] != ")":
                raise ScalarError("unbalanced parentheses")
            return value
        raise ScalarError(f"unexpected token {kind!r} in scalar expression")


def parse(text: str) -> LaurentFraction:
    """Parse the rendering grammar back into a LaurentFraction."""
    return _Parser(text).parse()
