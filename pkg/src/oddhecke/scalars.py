"""
Exact coefficient arithmetic.

A :class:`ParamScalar` is a finite sum of rational multiples of monomials
``q^a t^b u^c alpha^d`` with ``a, b`` integers and ``c, d >= 0``.  Optionally
the scalar lives in the cyclotomic quotient ``Q[q]/Phi_m(q)``, which makes ``q``
an exact primitive m-th root of unity.

>>> q = ParamScalar.gen("q")
>>> (q + 1) * (q - 1)
ParamScalar('-1 + q^2')
>>> q3 = ParamScalar.gen("q", modulus=3)
>>> q3 ** 3
ParamScalar('1')
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Dict, Iterable, Optional, Tuple, Union

from .errors import ModulusError, UnitError

# exponent quadruple (q, t, u, alpha)
SKey = Tuple[int, int, int, int]
Coef = Union[int, Fraction]

ZERO_KEY: SKey = (0, 0, 0, 0)
GEN_INDEX = {"q": 0, "t": 1, "u": 2, "alpha": 3}
GEN_NAMES = ("q", "t", "u", "alpha")


# --------------------------------------------------------------------------
# cyclotomic machinery
# --------------------------------------------------------------------------

def _poly_divmod(num: list, den: list) -> Tuple[list, list]:
    """Long division of integer polynomials (ascending coefficients, monic den)."""
    num = list(num)
    quot = [0] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1]
        if c == 0:
            continue
        if c % lead:
            raise ArithmeticError("non-integral cyclotomic division")
        c //= lead
        quot[shift] = c
        for j, d in enumerate(den):
            num[shift + j] -= c * d
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> Tuple[int, ...]:
    """Coefficients of the m-th cyclotomic polynomial, lowest degree first.

    >>> cyclotomic_poly(3)
    (1, 1, 1)
    >>> cyclotomic_poly(4)
    (1, 0, 1)
    """
    if m < 1:
        raise ValueError("cyclotomic index must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _poly_divmod(num, list(cyclotomic_poly(d)))
            assert not any(rem)
    return tuple(num)


@lru_cache(maxsize=None)
def _power_residues(m: int) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
    # residue of q^r mod Phi_m for r in 0..m-1 as ((degree, coef), ...)
    phi = list(cyclotomic_poly(m))
    out = []
    for r in range(m):
        mono = [0] * r + [1]
        if r < len(phi) - 1:
            rem = mono
        else:
            _, rem = _poly_divmod(mono, phi)
        out.append(tuple((d, c) for d, c in enumerate(rem) if c))
    return tuple(out)


def cyclotomic_degree(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


def reduce_terms(terms: Dict[SKey, Coef], modulus: Optional[int]) -> Dict[SKey, Coef]:
    """Canonical form: drop zeros, and reduce q-exponents mod Phi_m if set."""
    if modulus is None:
        return {k: c for k, c in terms.items() if c}
    res = _power_residues(modulus)
    out: Dict[SKey, Coef] = {}
    for (eq, et, eu, ea), c in terms.items():
        if not c:
            continue
        for d, rc in res[eq % modulus]:
            key = (d, et, eu, ea)
            out[key] = out.get(key, 0) + c * rc
    return {k: c for k, c in out.items() if c}


def _norm(c: Coef) -> Coef:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


# --------------------------------------------------------------------------
# ParamScalar
# --------------------------------------------------------------------------

class ParamScalar:
    """Immutable exact scalar in Q[q^{+-1}, t^{+-1}, u, alpha] (or a cyclotomic quotient)."""

    __slots__ = ("terms", "modulus", "_hash")

    def __init__(self, terms: Optional[Dict[SKey, Coef]] = None,
                 modulus: Optional[int] = None, *, canonical: bool = False):
        if modulus is not None and modulus < 1:
            raise ModulusError(f"invalid modulus {modulus}")
        terms = terms or {}
        if not canonical:
            for (eq, et, eu, ea) in terms:
                if eu < 0 or ea < 0:
                    raise UnitError("u and alpha only admit non-negative powers")
            terms = reduce_terms(terms, modulus)
        self.terms: Dict[SKey, Coef] = terms
        self.modulus = modulus
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c: Union[int, Rational, str], modulus: Optional[int] = None) -> "ParamScalar":
        c = _norm(Fraction(c)) if not isinstance(c, int) else c
        return cls({ZERO_KEY: c} if c else {}, modulus)

    @classmethod
    def gen(cls, name: str, power: int = 1, modulus: Optional[int] = None) -> "ParamScalar":
        key = [0, 0, 0, 0]
        key[GEN_INDEX[name]] = power
        return cls({tuple(key): 1}, modulus)

    @classmethod
    def monomial(cls, key: SKey, coef: Coef = 1, modulus: Optional[int] = None) -> "ParamScalar":
        return cls({tuple(key): coef}, modulus)

    def _coerce(self, other) -> "ParamScalar":
        if isinstance(other, ParamScalar):
            if other.modulus != self.modulus:
                raise ModulusError(
                    f"modulus mismatch: {self.modulus} vs {other.modulus}")
            return other
        if isinstance(other, (int, Rational)):
            return ParamScalar.const(other, self.modulus)
        return NotImplemented

    # -- ring operations --------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return ParamScalar(out, self.modulus, canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return ParamScalar({k: -c for k, c in self.terms.items()}, self.modulus, canonical=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[SKey, Coef] = {}
        for (a0, a1, a2, a3), c in self.terms.items():
            for (b0, b1, b2, b3), d in other.terms.items():
                k = (a0 + b0, a1 + b1, a2 + b2, a3 + b3)
                out[k] = out.get(k, 0) + c * d
        return ParamScalar(out, self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = ParamScalar.const(1, self.modulus)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "ParamScalar":
        """Multiplicative inverse of a unit; raises :class:`UnitError` otherwise."""
        if not self.terms:
            raise UnitError("zero is not invertible")
        if len(self.terms) == 1:
            (key, c), = self.terms.items()
            if key[2] or key[3]:
                raise UnitError(f"{self} is not a unit (u, alpha are not invertible)")
            inv = (-key[0], -key[1], 0, 0)
            return ParamScalar({inv: _norm(Fraction(1) / c)}, self.modulus)
        if self.modulus is not None and all(k[1:] == (0, 0, 0) for k in self.terms):
            return self._cyclotomic_inverse()
        raise UnitError(f"{self} is not a unit")

    def _cyclotomic_inverse(self) -> "ParamScalar":
        # extended Euclid in Q[q] against Phi_m
        m = self.modulus
        a = [Fraction(0)] * cyclotomic_degree(m)
        for (eq, *_), c in self.terms.items():
            a[eq] += c
        b = [Fraction(c) for c in cyclotomic_poly(m)]

        def trim(p):
            p = list(p)
            while p and p[-1] == 0:
                p.pop()
            return p

        def sub(p, r):
            n = max(len(p), len(r))
            return trim([(p[i] if i < len(p) else 0) - (r[i] if i < len(r) else 0)
                         for i in range(n)])

        def mul(p, r):
            if not p or not r:
                return []
            out = [Fraction(0)] * (len(p) + len(r) - 1)
            for i, x in enumerate(p):
                for j, y in enumerate(r):
                    out[i + j] += x * y
            return trim(out)

        def divmod_(p, r):
            p = trim(p)
            quot = [Fraction(0)] * max(len(p) - len(r) + 1, 0)
            while len(p) >= len(r) and p:
                c = p[-1] / r[-1]
                s = len(p) - len(r)
                quot[s] = c
                p = sub(p, [Fraction(0)] * s + [c * x for x in r])
            return trim(quot), p

        r0, r1 = trim(b), trim(a)
        s0, s1 = [], [Fraction(1)]
        while r1:
            qt, rem = divmod_(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, sub(s0, mul(qt, s1))
        if len(r0) != 1:
            raise UnitError(f"{self} is not invertible modulo Phi_{m}")
        inv = [c / r0[0] for c in s0]
        return ParamScalar({(d, 0, 0, 0): _norm(c) for d, c in enumerate(inv) if c}, m)

    # -- comparison / protocol -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            other = ParamScalar.const(other, self.modulus)
        if not isinstance(other, ParamScalar):
            return NotImplemented
        return self.modulus == other.modulus and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.modulus, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def with_modulus(self, modulus: Optional[int]) -> "ParamScalar":
        """Reinterpret the same terms in another specialization (reduces if needed)."""
        return ParamScalar(dict(self.terms), modulus)

    def q_coefficients(self) -> Dict[int, Coef]:
        """Coefficients of a pure polynomial in q; raises if t, u or alpha occur."""
        out = {}
        for (eq, et, eu, ea), c in self.terms.items():
            if et or eu or ea:
                raise ValueError(f"{self} involves parameters other than q")
            out[eq] = c
        return out

    def __str__(self):
        return render_scalar(self.terms)

    def __repr__(self):
        return f"ParamScalar({str(self)!r})"


def _key_order(key: SKey):
    # ascending total degree, then descending exponent tuple (t before u, 1 before t^-1 u)
    return (sum(key), tuple(-e for e in key))


def render_factors(key: SKey) -> list:
    out = []
    for name, e in zip(GEN_NAMES, key):
        if e == 1:
            out.append(name)
        elif e:
            out.append(f"{name}^{e}")
    return out


def _render_coef(c: Coef) -> str:
    c = _norm(c)
    return str(c)


def render_scalar(terms: Dict[SKey, Coef]) -> str:
    """Text form, e.g. ``1 + 2*q^2 + q^3``; the CLI parser reads it back."""
    if not terms:
        return "0"
    pieces = []
    for key in sorted(terms, key=_key_order):
        c = _norm(terms[key])
        neg = c < 0
        mag = -c if neg else c
        factors = render_factors(key)
        if mag == 1 and factors:
            body = "*".join(factors)
        else:
            body = "*".join([_render_coef(mag)] + factors)
        pieces.append((neg, body))
    return join_signed(pieces)


def join_signed(pieces: Iterable[Tuple[bool, str]]) -> str:
    out = ""
    for idx, (neg, body) in enumerate(pieces):
        if idx == 0:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out


def render_combination(pairs: Iterable[Tuple["ParamScalar", str]]) -> str:
    """Render ``sum c_i * b_i`` for scalars ``c_i`` and basis labels ``b_i`` ("" for 1)."""
    pairs = list(pairs)
    if not pairs:
        return "0"
    multi = len(pairs) > 1
    pieces = []
    for c, label in pairs:
        if len(c.terms) == 1:
            (key, v), = c.terms.items()
            v = _norm(v)
            neg = v < 0
            mag = -v if neg else v
            factors = render_factors(key)
            head = [] if (mag == 1 and (factors or label)) else [str(mag)]
            pieces.append((neg, "*".join(head + factors + ([label] if label else []))))
        else:
            inner = str(c)
            if label or multi:
                inner = f"({inner})"
            pieces.append((False, "*".join([inner] + ([label] if label else []))))
    return join_signed(pieces)


# --------------------------------------------------------------------------
# named constructors and q-binomials
# --------------------------------------------------------------------------

def scalar(c=1, modulus: Optional[int] = None) -> ParamScalar:
    return ParamScalar.const(c, modulus)


def q_gen(modulus: Optional[int] = None) -> ParamScalar:
    return ParamScalar.gen("q", 1, modulus)


def q_power(k: int, modulus: Optional[int] = None) -> ParamScalar:
    return ParamScalar.gen("q", k, modulus)


def scalar_arith(a: ParamScalar, b: ParamScalar, op: str) -> ParamScalar:
    """Dispatch ``add``/``sub``/``mul`` by name."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown scalar op {op!r}")


def scalar_invert_unit(a: ParamScalar) -> ParamScalar:
    return a.inverse()


@lru_cache(maxsize=None)
def _gaussian_coeffs(n: int, k: int) -> Tuple[int, ...]:
    # product formula prod_{i<k} (1 - q^{n-i}) / (1 - q^{i+1}); all divisions exact over Z
    poly = [1]
    for i in range(k):
        num = [1] + [0] * (n - i - 1) + [-1]
        prod = [0] * (len(poly) + len(num) - 1)
        for a, x in enumerate(poly):
            for b, y in enumerate(num):
                prod[a + b] += x * y
        den = [1] + [0] * i + [-1]
        # divide by (1 - q^{i+1}); make the divisor monic first
        quot, rem = _poly_divmod([-c for c in prod], [-c for c in den])
        assert not any(rem)
        poly = quot
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def gaussian_binomial(n: int, k: int, modulus: Optional[int] = None) -> ParamScalar:
    """The Gaussian binomial coefficient ``[n choose k]_q``; zero outside 0 <= k <= n.

    >>> str(gaussian_binomial(4, 2))
    '1 + q + 2*q^2 + q^3 + q^4'
    """
    if n < 0 or k < 0 or k > n:
        return ParamScalar({}, modulus)
    coeffs = _gaussian_coeffs(n, k)
    return ParamScalar({(d, 0, 0, 0): c for d, c in enumerate(coeffs) if c}, modulus)
