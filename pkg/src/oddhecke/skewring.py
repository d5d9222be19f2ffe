"""
Normal-form arithmetic in skew Laurent polynomial rings.

Two commutation modes share one implementation:

* ``odd``: ``x_j x_i = -x_i x_j`` for ``i != j`` (the skew polynomial ring);
* ``q``:   ``x_j x_i = q x_i x_j`` for ``i < j``.

Every element is stored in the normal order ``x_1^{e_1} ... x_n^{e_n}`` with a
flat sparse map ``(exponents, scalar key) -> rational``; see
:mod:`oddhecke.scalars` for the scalar key layout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import (ConfigMismatchError, DivisibilityError, IndexRangeError,
                     ModeError, ModulusError)
from .scalars import (Coef, ParamScalar, SKey, ZERO_KEY, _power_residues,
                      render_combination)

Exps = Tuple[int, ...]
TermKey = Tuple[Exps, SKey]

ODD = "odd"
QMODE = "q"


@dataclass(frozen=True)
class RingConfig:
    """Number of variables, commutation mode and optional cyclotomic modulus."""
    n: int
    mode: str = ODD
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a ring needs at least one variable")
        if self.mode not in (ODD, QMODE):
            raise ValueError(f"unknown commutation mode {self.mode!r}")
        if self.modulus is not None and self.modulus < 1:
            raise ModulusError(f"invalid modulus {self.modulus}")

    @property
    def is_odd(self) -> bool:
        return self.mode == ODD

    def check_index(self, *idx: int) -> None:
        for i in idx:
            if not 1 <= i <= self.n:
                raise IndexRangeError(f"index {i} outside 1..{self.n}")

    def scalar(self, c=1) -> ParamScalar:
        return ParamScalar.const(c, self.modulus)

    def gen(self, name: str, power: int = 1) -> ParamScalar:
        return ParamScalar.gen(name, power, self.modulus)

    # shorthand constructors
    def zero(self) -> "SkewPoly":
        return SkewPoly(self, {})

    def one(self) -> "SkewPoly":
        return SkewPoly.monomial(self, (0,) * self.n)

    def x(self, i: int, power: int = 1) -> "SkewPoly":
        self.check_index(i)
        e = [0] * self.n
        e[i - 1] = power
        return SkewPoly.monomial(self, tuple(e))


# --------------------------------------------------------------------------
# monomial kernels
# --------------------------------------------------------------------------

def mono_product_inversions(a: Exps, b: Exps) -> int:
    """Number of adjacent swaps (with multiplicity) to normal-order ``x^a x^b``."""
    inv = 0
    suffix = 0
    for i in range(len(a) - 1, -1, -1):
        inv += suffix * b[i]
        suffix += a[i]
    return inv


def word_inversions(word: Sequence[Tuple[int, int]]) -> int:
    """Weighted inversion count of a word of ``(variable, exponent)`` letters."""
    inv = 0
    for p in range(len(word)):
        vp, ep = word[p]
        for r in range(p + 1, len(word)):
            vr, er = word[r]
            if vp > vr:
                inv += ep * er
    return inv


def _commutation_key(config: RingConfig, inv: int) -> Tuple[int, SKey]:
    # (sign, scalar key) contributed by `inv` elementary swaps
    if config.mode == ODD:
        return (-1 if inv & 1 else 1), ZERO_KEY
    return 1, (inv, 0, 0, 0)


def _canon(config: RingConfig, terms: Dict[TermKey, Coef]) -> Dict[TermKey, Coef]:
    if config.modulus is None:
        return {k: c for k, c in terms.items() if c}
    m = config.modulus
    res = _power_residues(m)
    out: Dict[TermKey, Coef] = {}
    for (exps, (eq, et, eu, ea)), c in terms.items():
        if not c:
            continue
        for d, rc in res[eq % m]:
            key = (exps, (d, et, eu, ea))
            out[key] = out.get(key, 0) + c * rc
    return {k: c for k, c in out.items() if c}


def _addkey(a: SKey, b: SKey) -> SKey:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])


# --------------------------------------------------------------------------
# SkewPoly
# --------------------------------------------------------------------------

class SkewPoly:
    """Immutable normal-ordered element of the skew Laurent polynomial ring."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingConfig, terms: Dict[TermKey, Coef], *, canonical: bool = True):
        self.ring = ring
        self.terms = terms if canonical else _canon(ring, terms)
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def monomial(cls, ring: RingConfig, exps: Exps, coef=None) -> "SkewPoly":
        if len(exps) != ring.n:
            raise IndexRangeError(f"exponent vector {exps} does not have length {ring.n}")
        exps = tuple(exps)
        if coef is None:
            return cls(ring, {(exps, ZERO_KEY): 1})
        if not isinstance(coef, ParamScalar):
            coef = ring.scalar(coef)
        return cls(ring, {(exps, k): c for k, c in _scalar_terms(ring, coef).items()})

    @classmethod
    def from_scalar(cls, ring: RingConfig, c) -> "SkewPoly":
        return cls.monomial(ring, (0,) * ring.n, c)

    def _same(self, other: "SkewPoly") -> None:
        if other.ring != self.ring:
            raise ConfigMismatchError(f"{self.ring} vs {other.ring}")

    def _lift(self, other):
        if isinstance(other, SkewPoly):
            self._same(other)
            return other
        if isinstance(other, (int, Fraction, ParamScalar)):
            return SkewPoly.from_scalar(self.ring, other)
        return NotImplemented

    # -- linear structure -------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return SkewPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return SkewPoly(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "SkewPoly":
        """Multiply by a central scalar."""
        if isinstance(c, ParamScalar):
            if c.modulus != self.ring.modulus:
                raise ModulusError(f"modulus mismatch: {c.modulus} vs {self.ring.modulus}")
            sterms = c.terms
        else:
            sterms = {ZERO_KEY: c} if c else {}
        if len(sterms) == 1 and ZERO_KEY in sterms:
            f = sterms[ZERO_KEY]
            if not f:
                return self.ring.zero()
            return SkewPoly(self.ring, {k: c * f for k, c in self.terms.items()})
        out: Dict[TermKey, Coef] = {}
        for (exps, k), a in self.terms.items():
            for k2, b in sterms.items():
                key = (exps, _addkey(k, k2))
                out[key] = out.get(key, 0) + a * b
        if self.ring.modulus is not None:
            return SkewPoly(self.ring, out, canonical=False)
        return SkewPoly(self.ring, {k: v for k, v in out.items() if v})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ParamScalar)):
            return self.scale(other)
        if not isinstance(other, SkewPoly):
            return NotImplemented
        self._same(other)
        ring = self.ring
        out: Dict[TermKey, Coef] = {}
        for (a, ka), ca in self.terms.items():
            for (b, kb), cb in other.terms.items():
                sign, kc = _commutation_key(ring, mono_product_inversions(a, b))
                key = (tuple(x + y for x, y in zip(a, b)),
                       (ka[0] + kb[0] + kc[0], ka[1] + kb[1], ka[2] + kb[2], ka[3] + kb[3]))
                out[key] = out.get(key, 0) + sign * ca * cb
        return SkewPoly(ring, out, canonical=False)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, ParamScalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers only exist for monomials; use ring.x(i, -k)")
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ParamScalar)):
            other = SkewPoly.from_scalar(self.ring, other)
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- views ------------------------------------------------------------
    def coeffs(self) -> Dict[Exps, ParamScalar]:
        """Monomial -> scalar coefficient."""
        grouped: Dict[Exps, Dict[SKey, Coef]] = {}
        for (exps, k), c in self.terms.items():
            grouped.setdefault(exps, {})[k] = c
        return {e: ParamScalar(t, self.ring.modulus, canonical=True) for e, t in grouped.items()}

    def coefficient(self, exps: Exps) -> ParamScalar:
        t = {k: c for (e, k), c in self.terms.items() if e == tuple(exps)}
        return ParamScalar(t, self.ring.modulus, canonical=True)

    def monomials(self) -> List[Exps]:
        return sorted({e for e, _ in self.terms}, reverse=True)

    def degrees(self) -> set:
        return {sum(e) for e, _ in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def parity(self) -> int:
        """Parity of a homogeneous element (degree mod 2)."""
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError("parity is only defined for homogeneous elements")
        return (degs.pop() if degs else 0) % 2

    def homogeneous_components(self) -> Dict[int, "SkewPoly"]:
        comps: Dict[int, Dict[TermKey, Coef]] = {}
        for (e, k), c in self.terms.items():
            comps.setdefault(sum(e), {})[(e, k)] = c
        return {d: SkewPoly(self.ring, t) for d, t in comps.items()}

    def is_polynomial(self) -> bool:
        return all(x >= 0 for e, _ in self.terms for x in e)

    def map_scalars(self, fn: Callable[[ParamScalar], ParamScalar]) -> "SkewPoly":
        out = self.ring.zero()
        for e, c in self.coeffs().items():
            out = out + SkewPoly.monomial(self.ring, e, fn(c))
        return out

    def __str__(self):
        return render_poly(self)

    def __repr__(self):
        return f"SkewPoly({str(self)!r}, n={self.ring.n}, mode={self.ring.mode})"


def _scalar_terms(ring: RingConfig, c: ParamScalar) -> Dict[SKey, Coef]:
    if c.modulus != ring.modulus:
        raise ModulusError(f"modulus mismatch: {c.modulus} vs {ring.modulus}")
    return c.terms


def render_monomial(exps: Exps) -> str:
    parts = []
    for i, e in enumerate(exps, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def render_poly(f: SkewPoly) -> str:
    """Text form with monomials in descending lexicographic order."""
    coeffs = f.coeffs()
    return render_combination((coeffs[e], render_monomial(e)) for e in sorted(coeffs, reverse=True))


# --------------------------------------------------------------------------
# operations
# --------------------------------------------------------------------------

def normal_order(word: Sequence[Tuple[int, int]], config: RingConfig) -> SkewPoly:
    """Normal form of the product ``x_{v1}^{e1} x_{v2}^{e2} ...``.

    >>> str(normal_order([(2, 1), (1, 1)], RingConfig(2, "odd")))
    '-x1*x2'
    """
    exps = [0] * config.n
    for v, e in word:
        config.check_index(v)
        exps[v - 1] += e
    inv = word_inversions(word)
    sign, key = _commutation_key(config, inv)
    return SkewPoly(config, {(tuple(exps), key): sign}, canonical=False)


def multiply(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    return f * g


def iter_monomials(n: int, max_deg: int, min_deg: int = 0) -> Iterator[Exps]:
    """Exponent vectors of degree min_deg..max_deg, each degree in descending lex order."""
    for d in range(min_deg, max_deg + 1):
        yield from _compositions_desc(d, n)


def _compositions_desc(d: int, n: int) -> Iterator[Exps]:
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions_desc(d - first, n - 1):
            yield (first,) + rest


def apply_linear(f: SkewPoly, image: Callable[[Exps], SkewPoly]) -> SkewPoly:
    """Extend a monomial map linearly over the scalar coefficients of ``f``."""
    ring = f.ring
    out: Dict[TermKey, Coef] = {}
    needs_canon = False
    for (exps, k), c in f.terms.items():
        img = image(exps)
        if k == ZERO_KEY:
            for key, v in img.terms.items():
                val = out.get(key, 0) + c * v
                if val:
                    out[key] = val
                else:
                    del out[key]
        else:
            needs_canon = ring.modulus is not None
            for (e2, k2), v in img.terms.items():
                key = (e2, _addkey(k, k2))
                val = out.get(key, 0) + c * v
                if val:
                    out[key] = val
                else:
                    del out[key]
    return SkewPoly(ring, out, canonical=not needs_canon)


def _permute_word(config: RingConfig, exps: Exps, var_at: Sequence[int]) -> SkewPoly:
    # position p (0-based) holds variable var_at[p] (0-based) with exponent exps[p]
    word = [(var_at[p] + 1, e) for p, e in enumerate(exps) if e]
    return normal_order(word, config)


@lru_cache(maxsize=None)
def _s_image(config: RingConfig, i: int, k: int, exps: Exps, convention: str) -> SkewPoly:
    if convention == "exponent":
        e = list(exps)
        e[i - 1], e[k - 1] = e[k - 1], e[i - 1]
        return SkewPoly.monomial(config, tuple(e))
    var_at = list(range(config.n))
    var_at[i - 1], var_at[k - 1] = k - 1, i - 1
    return _permute_word(config, exps, var_at)


def transposition_s(i: int, k: int, f: SkewPoly, convention: str = "automorphism") -> SkewPoly:
    """The transposition exchanging ``x_i`` and ``x_k``.

    ``convention="automorphism"`` (default) is the algebra automorphism
    ``x_i <-> x_k``; a monomial picks up the sign of re-normal-ordering.
    ``convention="exponent"`` swaps exponent entries with no sign.
    """
    f.ring.check_index(i, k)
    if i == k:
        raise IndexRangeError("transposition needs two distinct indices")
    if convention not in ("automorphism", "exponent"):
        raise ValueError(f"unknown convention {convention!r}")
    return apply_linear(f, lambda e: _s_image(f.ring, i, k, e, convention))


@lru_cache(maxsize=None)
def _tau_image(config: RingConfig, i: int, exps: Exps) -> SkewPoly:
    return SkewPoly(config, {(exps, ZERO_KEY): -1 if exps[i - 1] & 1 else 1})


def shift_tau(i: int, f: SkewPoly) -> SkewPoly:
    """The automorphism ``x_i -> -x_i``."""
    f.ring.check_index(i)
    return apply_linear(f, lambda e: _tau_image(f.ring, i, e))


@lru_cache(maxsize=None)
def _sigma_image(config: RingConfig, i: int, exps: Exps, inverse: bool) -> SkewPoly:
    # generator images: x_j -> q^{w_j} x_{pi(j)}; on x_i, x_{i+1} the map is its own inverse
    qpow = 0
    for j, e in enumerate(exps, start=1):
        if j == i:
            w = 1
        elif j == i + 1:
            w = -1
        else:
            w = (1 if j > i + 1 else -1) * (-1 if inverse else 1)
        qpow += w * e
    var_at = list(range(config.n))
    var_at[i - 1], var_at[i] = i, i - 1
    base = _permute_word(config, exps, var_at)
    return base.scale(config.gen("q", qpow))


def braid_sigma(i: int, f: SkewPoly, inverse: bool = False) -> SkewPoly:
    """Braid group generator ``sigma_i`` (or its inverse) acting on the q-polynomial ring."""
    if f.ring.mode != QMODE:
        raise ModeError("sigma_i acts only on the q-commuting ring")
    f.ring.check_index(i, i + 1)
    return apply_linear(f, lambda e: _sigma_image(f.ring, i, e, inverse))


def right_multiply_power(f: SkewPoly, i: int, p: int) -> SkewPoly:
    return f * f.ring.x(i, p)


def exact_divide_binomial(f: SkewPoly, i: int, k: int) -> SkewPoly:
    """Quotient ``g`` with ``g (x_i^2 - x_k^2) = f``; raises on a nonzero remainder.

    Both squares are central in the odd ring, so the division is sign-free on
    exponent vectors: it is ordinary division by ``X - Y`` along each chain of
    monomials that differ by moving two units from the ``k``-th to the ``i``-th exponent.
    """
    ring = f.ring
    if ring.mode != ODD:
        raise ModeError("x_i^2 - x_k^2 is only central in the odd ring")
    ring.check_index(i, k)
    if i == k:
        raise IndexRangeError("binomial divisor needs two distinct indices")
    i0, k0 = i - 1, k - 1
    chains: Dict[tuple, Dict[int, Coef]] = {}
    for (exps, key), c in f.terms.items():
        ei, ek = exps[i0], exps[k0]
        rest = tuple(x for p, x in enumerate(exps) if p != i0 and p != k0)
        chains.setdefault((rest, ei & 1, ei + ek, key), {})[ei] = c
    out: Dict[TermKey, Coef] = {}
    for (rest, _, total, key), chain in chains.items():
        if sum(chain.values()) != 0:
            raise DivisibilityError(
                f"{render_poly(f)} is not divisible by x{i}^2 - x{k}^2")
        top, bottom = max(chain), min(chain)
        running = 0
        for b in range(top - 2, bottom - 1, -2):
            running += chain.get(b + 2, 0)
            if running:
                e = list(rest)
                lo, hi = sorted((i0, k0))
                e.insert(lo, None)
                e.insert(hi, None)
                e[i0] = b
                e[k0] = total - b - 2
                out[(tuple(e), key)] = running
    return SkewPoly(ring, out)


def exact_divide_central(f: SkewPoly, divisor: SkewPoly) -> SkewPoly:
    """Divide by a central ``x_i^2 - x_k^2`` (odd ring) or by a power ``x_i^p``.

    Raises :class:`DivisibilityError` when no polynomial quotient exists.
    """
    ring = f.ring
    f._same(divisor)
    coeffs = divisor.coeffs()
    if len(coeffs) == 1:
        (exps, c), = coeffs.items()
        nz = [p for p, e in enumerate(exps) if e]
        if c != ring.scalar(1) or len(nz) > 1:
            raise ValueError("monomial divisor must be a bare power x_i^p")
        if not nz:
            return f
        i, p = nz[0] + 1, exps[nz[0]]
        g = right_multiply_power(f, i, -p)
        if any(e[i - 1] < 0 for e, _ in g.terms) and f.is_polynomial():
            raise DivisibilityError(f"{render_poly(f)} is not divisible by x{i}^{p}")
        return g
    if len(coeffs) == 2:
        items = sorted(coeffs.items(), key=lambda kv: kv[1] == ring.scalar(-1))
        (ea, ca), (eb, cb) = items
        if ca == ring.scalar(1) and cb == ring.scalar(-1):
            ia = [p for p, e in enumerate(ea) if e]
            ib = [p for p, e in enumerate(eb) if e]
            if len(ia) == 1 and len(ib) == 1 and ea[ia[0]] == 2 and eb[ib[0]] == 2:
                return exact_divide_binomial(f, ia[0] + 1, ib[0] + 1)
    raise ValueError("divisor must be x_i^2 - x_k^2 or x_i^p")
