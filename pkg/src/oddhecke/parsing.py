"""
Text grammars for polynomials, operators and NSym elements.

All three share one tokenizer and a small recursive-descent core::

    sum     := product (('+' | '-') product)*
    product := unary ('*' unary)*
    unary   := '-' unary | power
    power   := atom ('^' ['-'] INT)?

Atoms differ per grammar. Polynomials accept integers, ``a/b`` rationals,
``q t u alpha`` and ``x1 .. xn``. Operators accept function-style generators
such as ``eta(1)`` or ``r(1,3)``, bare names such as ``euler``, ``com(a,b)``,
``acom(a,b)`` and scalar atoms; ``*`` composes. NSym elements accept ``h[..]``
and ``e[..]`` literals and scalar atoms.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

from . import nsymq
from .errors import ParseError
from .scalars import ParamScalar
from .skewring import RingConfig, SkewPoly
from .verify import (GENERATORS, IDENTITY, OperatorExpr, anticommutator,
                     commutator, compose, gen, op_sum, scale)

PARAMETERS = ("q", "t", "u", "alpha")

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")

Token = Tuple[str, str, int]  # kind, text, position


def tokenize(text: str) -> List[Token]:
    out: List[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("int", m.group(1), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^()[],/":
                raise ParseError(f"unexpected character {ch!r}", start)
            out.append((ch, ch, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    """Shared precedence climbing; subclasses supply atoms and the algebra."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    # -- token helpers --------------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def take(self, kind: Optional[str] = None) -> Token:
        t = self.tok
        if kind is not None and t[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            got = "end of input" if t[0] == "end" else repr(t[1])
            raise ParseError(f"expected {want}, found {got}", t[2])
        self.i += 1
        return t

    def accept(self, kind: str) -> bool:
        if self.tok[0] == kind:
            self.i += 1
            return True
        return False

    def integer(self) -> int:
        return int(self.take("int")[1])

    def int_list(self, close: str) -> List[int]:
        vals = []
        if self.tok[0] == close:
            return vals
        vals.append(self.integer())
        while self.accept(","):
            vals.append(self.integer())
        return vals

    # -- grammar ----------------------------------------------------------------
    def parse(self):
        if self.tok[0] == "end":
            raise ParseError("empty expression", 0)
        value = self.sum()
        self.take("end")
        return value

    def sum(self):
        value = self.product()
        while self.tok[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.product()
            value = self.add(value, rhs) if op == "+" else self.add(value, self.negate(rhs))
        return value

    def product(self):
        value = self.unary()
        while self.accept("*"):
            value = self.mul(value, self.unary())
        return value

    def unary(self):
        if self.accept("-"):
            return self.negate(self.unary())
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self):
        start = self.tok[2]
        value = self.atom()
        if self.accept("^"):
            sign = -1 if self.accept("-") else 1
            value = self.raise_to(value, sign * self.integer(), start)
        return value

    def number(self) -> Fraction:
        num = self.integer()
        if self.accept("/"):
            pos = self.tok[2]
            den = self.integer()
            if den == 0:
                raise ParseError("division by zero", pos)
            return Fraction(num, den)
        return Fraction(num)

    # hooks
    def atom(self):
        raise NotImplementedError

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def negate(self, a):
        return -a

    def raise_to(self, value, k: int, pos: int):
        if k < 0:
            raise ParseError("negative exponent on a compound expression", pos)
        return value ** k


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------

class _PolyAtom:
    """A variable or parameter awaiting an optional exponent."""

    def __init__(self, make: Callable[[int], SkewPoly]):
        self.make = make


class PolyParser(_Parser):
    def __init__(self, text: str, ring: RingConfig):
        super().__init__(text)
        self.ring = ring

    def atom(self):
        kind, text, pos = self.tok
        if kind == "int":
            return self._const(self.number())
        if kind == "(":
            self.take()
            value = self.sum()
            self.take(")")
            return value
        if kind == "name":
            self.take()
            if text in PARAMETERS:
                return _PolyAtom(lambda k, n=text: SkewPoly.from_scalar(self.ring, self.ring.gen(n, k)))
            m = re.fullmatch(r"x(\d+)", text)
            if m:
                i = int(m.group(1))
                if not 1 <= i <= self.ring.n:
                    raise ParseError(f"variable {text} outside x1..x{self.ring.n}", pos)
                return _PolyAtom(lambda k, i=i: self.ring.x(i, k))
            raise ParseError(f"unknown symbol {text!r}", pos)
        raise ParseError(f"unexpected {'end of input' if kind == 'end' else repr(text)}", pos)

    def _const(self, c: Fraction) -> SkewPoly:
        return SkewPoly.from_scalar(self.ring, self.ring.scalar(c))

    def _value(self, v) -> SkewPoly:
        return v.make(1) if isinstance(v, _PolyAtom) else v

    def power(self):
        start = self.tok[2]
        value = self.atom()
        if self.accept("^"):
            sign = -1 if self.accept("-") else 1
            k = sign * self.integer()
            if isinstance(value, _PolyAtom):
                try:
                    return value.make(k)
                except (ValueError, ArithmeticError) as exc:
                    raise ParseError(str(exc), start) from None
            return self.raise_to(value, k, start)
        return self._value(value)


def parse_poly(text: str, ring: RingConfig) -> SkewPoly:
    """Parse a polynomial over ``ring``.

    >>> from oddhecke.skewring import RingConfig
    >>> str(parse_poly("x2*x1 + 3", RingConfig(2)))
    '-x1*x2 + 3'
    """
    return PolyParser(text, ring).parse()


# --------------------------------------------------------------------------
# scalars (used inside operator and NSym grammars)
# --------------------------------------------------------------------------

def _scalar_atom(parser: _Parser, modulus: Optional[int]):
    """Return a ParamScalar if the next atom is a number or parameter, else None."""
    kind, text, _ = parser.tok
    if kind == "int":
        return ParamScalar.const(parser.number(), modulus)
    if kind == "name" and text in PARAMETERS:
        parser.take()
        return ParamScalar.gen(text, 1, modulus)
    return None


# --------------------------------------------------------------------------
# operators
# --------------------------------------------------------------------------

def _as_op(v) -> OperatorExpr:
    return v if isinstance(v, OperatorExpr) else scale(v, IDENTITY)


class OperatorParser(_Parser):
    def __init__(self, text: str, ring: RingConfig):
        super().__init__(text)
        self.ring = ring

    def atom(self):
        c = _scalar_atom(self, self.ring.modulus)
        if c is not None:
            return c
        kind, text, pos = self.tok
        if kind == "(":
            self.take()
            value = self.sum()
            self.take(")")
            return value
        if kind != "name":
            raise ParseError(f"unexpected {'end of input' if kind == 'end' else repr(text)}", pos)
        self.take()
        if text in ("com", "acom"):
            self.take("(")
            a = _as_op(self.sum())
            self.take(",")
            b = _as_op(self.sum())
            self.take(")")
            return commutator(a, b) if text == "com" else anticommutator(a, b)
        if text == "mul":
            self.take("(")
            start = self.i
            depth = 0
            while not (self.tok[0] == ")" and depth == 0):
                if self.tok[0] == "end":
                    raise ParseError("unclosed mul(", self.tok[2])
                depth += {"(": 1, ")": -1}.get(self.tok[0], 0)
                self.take()
            lo = self.tokens[start][2]
            hi = self.tok[2]
            self.take(")")
            try:
                poly = parse_poly(self.text[lo:hi], self.ring)
            except ParseError as exc:
                raise ParseError(str(exc).rsplit(" (at", 1)[0], lo + exc.position) from None
            return gen("mul", poly=poly)
        if text not in GENERATORS:
            raise ParseError(f"unknown operator {text!r}", pos)
        args: List[int] = []
        if self.accept("("):
            args = self.int_list(")")
            self.take(")")
        arities = GENERATORS[text][0]
        if len(args) not in arities:
            raise ParseError(f"{text} takes {' or '.join(map(str, arities))} arguments, got {len(args)}", pos)
        for a in args:
            if not 1 <= a <= self.ring.n:
                raise ParseError(f"index {a} outside 1..{self.ring.n}", pos)
        return gen(text, *args)

    def add(self, a, b):
        if isinstance(a, ParamScalar) and isinstance(b, ParamScalar):
            return a + b
        return op_sum(_as_op(a), _as_op(b))

    def mul(self, a, b):
        if isinstance(a, ParamScalar) and isinstance(b, ParamScalar):
            return a * b
        if isinstance(a, ParamScalar):
            return scale(a, b)
        if isinstance(b, ParamScalar):
            return scale(b, a)
        return compose(a, b)

    def negate(self, a):
        return -a if isinstance(a, ParamScalar) else scale(-1, a)

    def raise_to(self, value, k, pos):
        if isinstance(value, ParamScalar):
            try:
                return value ** k
            except (ValueError, ArithmeticError) as exc:
                raise ParseError(str(exc), pos) from None
        if k < 0:
            raise ParseError("negative power of an operator", pos)
        if k == 0:
            return IDENTITY
        return compose(*([value] * k))

    def parse(self):
        return _as_op(super().parse())


def parse_operator(text: str, ring: RingConfig) -> OperatorExpr:
    """Parse an operator expression; ``*`` is composition (rightmost acts first)."""
    return OperatorParser(text, ring).parse()


# --------------------------------------------------------------------------
# NSym elements
# --------------------------------------------------------------------------

class NSymParser(_Parser):
    def __init__(self, text: str, modulus: Optional[int] = None):
        super().__init__(text)
        self.modulus = modulus

    def atom(self):
        c = _scalar_atom(self, self.modulus)
        if c is not None:
            return c
        kind, text, pos = self.tok
        if kind == "(":
            self.take()
            value = self.sum()
            self.take(")")
            return value
        if kind == "name" and text in ("h", "e"):
            self.take()
            self.take("[")
            parts = self.int_list("]")
            self.take("]")
            if text == "h":
                return nsymq.NSymElement.h(*parts, modulus=self.modulus)
            out = nsymq.NSymElement.one(self.modulus)
            for k in parts:
                out = out * nsymq.elementary_e(k, self.modulus)
            return out
        if kind == "name":
            raise ParseError(f"unknown symbol {text!r}; expected h[...] or e[...]", pos)
        raise ParseError(f"unexpected {'end of input' if kind == 'end' else repr(text)}", pos)

    def _elem(self, v) -> nsymq.NSymElement:
        return nsymq.NSymElement.one(self.modulus).scale(v) if isinstance(v, ParamScalar) else v

    def add(self, a, b):
        if isinstance(a, ParamScalar) and isinstance(b, ParamScalar):
            return a + b
        return self._elem(a) + self._elem(b)

    def mul(self, a, b):
        if isinstance(a, ParamScalar) and isinstance(b, ParamScalar):
            return a * b
        if isinstance(a, ParamScalar):
            return b.scale(a)
        if isinstance(b, ParamScalar):
            return a.scale(b)
        return a * b

    def raise_to(self, value, k, pos):
        if isinstance(value, ParamScalar):
            try:
                return value ** k
            except (ValueError, ArithmeticError) as exc:
                raise ParseError(str(exc), pos) from None
        return super().raise_to(value, k, pos)

    def parse(self):
        return self._elem(super().parse())


def parse_nsym(text: str, modulus: Optional[int] = None) -> nsymq.NSymElement:
    """Parse an NSym element such as ``h[1,2] - q*e[2]``.

    >>> str(parse_nsym("e[2]"))
    'q^-1*h[1,1] - q^-1*h[2]'
    """
    return NSymParser(text, modulus).parse()


__all__ = ["tokenize", "parse_poly", "parse_operator", "parse_nsym", "PARAMETERS"]
