"""Exact rationals and the polynomial rings QQ[L] and QQ[L][x].

``L`` stands for the deformation parameter lambda.  Rationals are plain
:class:`fractions.Fraction` values; the two polynomial classes are immutable,
dense (index = degree) and always trimmed.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC

Rational = Fraction


class NotDivisibleByX(ValueError):
    pass


def rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
            raise ValueError(f"not a rational: {value!r}")
        num, _, den = text.partition("/")
        if den and int(den) == 0:
            raise ZeroDivisionError("division by zero")
        return Fraction(int(num), int(den) if den else 1)
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def rat_div(a, b) -> Fraction:
    b = rational(b)
    if b == 0:
        raise ZeroDivisionError("division by zero")
    return rational(a) / b


def render_rational(q: Fraction) -> str:
    return str(q)


def _is_scalar(value) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def _monomial(var: str, k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return var
    return f"{var}^{k}"


def _render_terms(terms, var: str, compact: bool) -> str:
    """Render ``[(k, Fraction)]`` with nonzero coefficients, ascending in k."""
    if not terms:
        return "0"
    plus, minus = ("+", "-") if compact else (" + ", " - ")
    out = []
    for i, (k, c) in enumerate(terms):
        mag = abs(c)
        mono = _monomial(var, k)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((minus if c < 0 else plus) + body)
    return "".join(out)


class LambdaPoly:
    """Polynomial in L with rational coefficients."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=()):
        cs = [rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    @classmethod
    def _raw(cls, coeffs):
        # caller guarantees Fractions and no trailing zeros
        obj = cls.__new__(cls)
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "LambdaPoly":
        return cls((c,))

    @classmethod
    def coerce(cls, value) -> "LambdaPoly":
        if isinstance(value, LambdaPoly):
            return value
        if isinstance(value, str):
            return parse_lambda_poly(value)
        return cls.const(value)

    @property
    def degree(self) -> int:
        """Degree in L; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, LambdaPoly):
            return self.coeffs == other.coeffs
        if _is_scalar(other):
            return self.coeffs == LambdaPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("LambdaPoly", self.coeffs))
        return self._hash

    def __neg__(self):
        return LambdaPoly._raw(tuple(-c for c in self.coeffs))

    def __pos__(self):
        return self

    def __add__(self, other):
        if _is_scalar(other):
            other = LambdaPoly.const(other)
        elif not isinstance(other, LambdaPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return LambdaPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        if _is_scalar(other):
            other = LambdaPoly.const(other)
        elif not isinstance(other, LambdaPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if _is_scalar(other):
            return LambdaPoly.const(other) - self
        return NotImplemented

    def __mul__(self, other):
        if _is_scalar(other):
            if other == 0:
                return LAMBDA_ZERO
            other = Fraction(other)
            return LambdaPoly._raw(tuple(c * other for c in self.coeffs))
        if not isinstance(other, LambdaPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return LAMBDA_ZERO
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        # product of nonzero leading terms is nonzero over a field
        return LambdaPoly._raw(tuple(out))

    def __rmul__(self, other):
        if _is_scalar(other):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        """Division by a nonzero rational scalar only."""
        if _is_scalar(other):
            return self * rat_div(1, other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = LAMBDA_ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def eval(self, v) -> Fraction:
        """Horner evaluation at L = v."""
        v = rational(v)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    __call__ = eval

    def render(self, compact: bool = False) -> str:
        terms = [(k, c) for k, c in enumerate(self.coeffs) if c]
        return _render_terms(terms, "L", compact)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"LambdaPoly({self.render()!r})"


LAMBDA_ZERO = LambdaPoly()
LAMBDA_ONE = LambdaPoly((1,))
LAMBDA = LambdaPoly((0, 1))


def lpoly_eval(p: LambdaPoly, v) -> Fraction:
    return LambdaPoly.coerce(p).eval(v)


class XPoly:
    """Polynomial in x whose coefficients are :class:`LambdaPoly`."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=()):
        cs = [LambdaPoly.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[LambdaPoly, ...] = tuple(cs)
        self._hash = None

    @classmethod
    def _raw(cls, coeffs):
        obj = cls.__new__(cls)
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "XPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> "XPoly":
        return cls([0] * k + [c])

    @classmethod
    def coerce(cls, value) -> "XPoly":
        if isinstance(value, XPoly):
            return value
        if isinstance(value, str):
            return parse_xpoly(value)
        return cls.const(value)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> LambdaPoly:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else LAMBDA_ZERO

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, XPoly):
            return self.coeffs == other.coeffs
        if _is_scalar(other) or isinstance(other, LambdaPoly):
            return self == XPoly.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("XPoly", self.coeffs))
        return self._hash

    def __neg__(self):
        return XPoly._raw(tuple(-c for c in self.coeffs))

    def __pos__(self):
        return self

    @staticmethod
    def _lift(other):
        if isinstance(other, XPoly):
            return other
        if _is_scalar(other) or isinstance(other, LambdaPoly):
            return XPoly.const(other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return XPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if _is_scalar(other) or isinstance(other, LambdaPoly):
            return XPoly([c * other for c in self.coeffs])
        if not isinstance(other, XPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return XPOLY_ZERO
        out = [LAMBDA_ZERO] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = out[i + j] + ai * bj
        return XPoly._raw(tuple(out))

    def __rmul__(self, other):
        if _is_scalar(other) or isinstance(other, LambdaPoly):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if _is_scalar(other):
            return self * rat_div(1, other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = XPOLY_ONE
        for _ in range(k):
            result = result * self
        return result

    def derivative(self) -> "XPoly":
        return XPoly([c * k for k, c in enumerate(self.coeffs) if k])

    def antiderivative(self) -> "XPoly":
        """Antiderivative with zero constant term, i.e. the integral from 0 to x."""
        return XPoly([LAMBDA_ZERO] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def divide_by_x(self) -> "XPoly":
        if self.coefficient(0):
            raise NotDivisibleByX("not divisible by x")
        return XPoly._raw(self.coeffs[1:])

    def shift(self, k: int) -> "XPoly":
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return XPoly._raw((LAMBDA_ZERO,) * k + self.coeffs)

    def eval_x(self, x) -> LambdaPoly:
        """Evaluate at a rational (or LambdaPoly) value of x."""
        x = x if isinstance(x, LambdaPoly) else rational(x)
        acc = LAMBDA_ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    __call__ = eval_x

    def specialize(self, lam) -> "XPoly":
        """Substitute L = lam in every coefficient."""
        return XPoly([c.eval(lam) for c in self.coeffs])

    def map_coefficients(self, fn) -> "XPoly":
        return XPoly([fn(k, c) for k, c in enumerate(self.coeffs)])

    def render(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = _monomial("x", k)
            nterms = sum(1 for a in c.coeffs if a)
            if nterms > 1:
                body = f"({c.render(compact=True)})"
                negative = False
            else:
                lead = next(a for a in c.coeffs if a)
                negative = lead < 0
                body = (-c if negative else c).render(compact=True)
                if mono and body == "1":
                    body = ""
            text = f"{body}*{mono}" if body and mono else body or mono
            parts.append((negative, text))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for negative, text in parts[1:]:
            out += (" - " if negative else " + ") + text
        return out

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"XPoly({self.render()!r})"


XPOLY_ZERO = XPoly()
XPOLY_ONE = XPoly((1,))
X = XPoly((0, 1))


def xpoly_derivative(p: XPoly) -> XPoly:
    return p.derivative()


def xpoly_antiderivative_from_zero(p: XPoly) -> XPoly:
    return p.antiderivative()


def xpoly_divide_by_x(p: XPoly) -> XPoly:
    return p.divide_by_x()


_TERM = re.compile(r"(\d+(?:/\d+)?)?(?:\*?L(?:\^(\d+))?)?")


def _split_signed(text: str):
    """Split at top-level + and - into (sign, body) pairs."""
    pieces, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start:
            pieces.append(text[start:i])
            start = i
    pieces.append(text[start:])
    out = []
    for piece in pieces:
        sign = -1 if piece.startswith("-") else 1
        body = piece[1:] if piece[:1] in "+-" else piece
        if not body:
            raise ValueError(f"malformed polynomial: {text!r}")
        out.append((sign, body))
    return out


def parse_lambda_poly(text: str) -> LambdaPoly:
    """Inverse of :meth:`LambdaPoly.render` (either spacing)."""
    s = text.replace(" ", "")
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if s == "":
        raise ValueError("empty polynomial")
    acc = LAMBDA_ZERO
    for sign, body in _split_signed(s):
        m = _TERM.fullmatch(body)
        if not m or not body:
            raise ValueError(f"malformed term {body!r} in {text!r}")
        coeff = rational(m.group(1)) if m.group(1) else Fraction(1)
        if "L" in body:
            power = int(m.group(2)) if m.group(2) else 1
        else:
            power = 0
        acc = acc + LambdaPoly([0] * power + [sign * coeff])
    return acc


_XTERM = re.compile(r"(.*?)\*?x(?:\^(\d+))?")


def parse_xpoly(text: str) -> XPoly:
    """Inverse of :meth:`XPoly.render`."""
    s = text.replace(" ", "")
    if s == "":
        raise ValueError("empty polynomial")
    acc = XPOLY_ZERO
    for sign, body in _split_signed(s):
        m = _XTERM.fullmatch(body)
        if m:
            head, power = m.group(1), int(m.group(2)) if m.group(2) else 1
        else:
            head, power = body, 0
        coeff = parse_lambda_poly(head) if head else LAMBDA_ONE
        acc = acc + XPoly.monomial(power, coeff * sign)
    return acc
