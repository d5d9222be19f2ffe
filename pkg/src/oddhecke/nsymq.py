"""
The free graded q-bialgebra on generators ``h_1, h_2, ...``.

Elements are finite combinations of words ``h_a = h_{a_1} ... h_{a_z}`` indexed
by compositions. The bilinear form is evaluated either by enumerating
non-negative integer matrices with prescribed margins (fast path) or by brute
force over double cosets of parabolic subgroups (oracle).
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, Iterable, Iterator, Optional, Sequence, Tuple

from .errors import ModulusError
from .kernels import double_coset_lengths
from .scalars import ParamScalar, gaussian_binomial, q_power, render_combination, scalar

Comp = Tuple[int, ...]

ORACLE_MAX_SIZE = 7


# --------------------------------------------------------------------------
# compositions
# --------------------------------------------------------------------------

class Composition(tuple):
    """A finite sequence of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"composition parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def head(self, k: int) -> Comp:
        """The first ``k`` parts."""
        return tuple(self[:k])

    def tail(self, k: int) -> Comp:
        """Everything after the first ``k`` parts."""
        return tuple(self[k:])

    def __repr__(self):
        return "h[" + ",".join(map(str, self)) + "]"


def compositions(n: int) -> Iterator[Comp]:
    """All compositions of ``n`` in lexicographic order (``()`` for n = 0)."""
    if n < 0:
        return
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def partial_sums(seq: Sequence[int]) -> Comp:
    out, acc = [], 0
    for v in seq:
        acc += v
        out.append(acc)
    return tuple(out)


def constant_sequence(value: int, length: int) -> Comp:
    return (value,) * length


def componentwise_sub(a: Sequence[int], b: Sequence[int]) -> Comp:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def componentwise_mul(a: Sequence[int], b: Sequence[int]) -> Comp:
    return tuple(x * y for x, y in zip(a, b, strict=True))


def binary_sequences(length: int, ones: int) -> Iterator[Comp]:
    """Every 0/1 sequence of the given length with exactly ``ones`` ones."""
    for pos in combinations(range(length), ones):
        bits = [0] * length
        for p in pos:
            bits[p] = 1
        yield tuple(bits)


def normalize_parts(parts: Sequence[int]) -> Optional[Comp]:
    """Drop zero parts (``h_0 = 1``); ``None`` when a negative part makes the word vanish."""
    if any(p < 0 for p in parts):
        return None
    return tuple(p for p in parts if p)


# --------------------------------------------------------------------------
# elements
# --------------------------------------------------------------------------

def _q(k: int, modulus: Optional[int]) -> ParamScalar:
    return q_power(k, modulus)


def _lift(c, modulus: Optional[int]) -> ParamScalar:
    if isinstance(c, ParamScalar):
        if c.modulus != modulus:
            raise ModulusError(f"scalar over modulus {c.modulus} used with modulus {modulus}")
        return c
    return scalar(c, modulus)


class NSymElement:
    """Finite linear combination of words ``h_a`` with ParamScalar coefficients."""

    __slots__ = ("terms", "modulus")

    def __init__(self, terms: Optional[Dict[Comp, ParamScalar]] = None,
                 modulus: Optional[int] = None):
        self.modulus = modulus
        self.terms: Dict[Comp, ParamScalar] = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def h(cls, *parts: int, modulus: Optional[int] = None) -> "NSymElement":
        comp = normalize_parts(parts)
        if comp is None:
            return cls({}, modulus)
        return cls({comp: scalar(1, modulus)}, modulus)

    @classmethod
    def word(cls, parts: Sequence[int], coef=1, modulus: Optional[int] = None) -> "NSymElement":
        comp = normalize_parts(parts)
        if comp is None:
            return cls({}, modulus)
        return cls({comp: _lift(coef, modulus)}, modulus)

    @classmethod
    def one(cls, modulus: Optional[int] = None) -> "NSymElement":
        return cls({(): scalar(1, modulus)}, modulus)

    @classmethod
    def zero(cls, modulus: Optional[int] = None) -> "NSymElement":
        return cls({}, modulus)

    def _check(self, other: "NSymElement") -> None:
        if other.modulus != self.modulus:
            raise ModulusError(f"moduli {self.modulus} and {other.modulus} differ")

    def __add__(self, other: "NSymElement") -> "NSymElement":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return NSymElement(out, self.modulus)

    def __neg__(self) -> "NSymElement":
        return NSymElement({k: -v for k, v in self.terms.items()}, self.modulus)

    def __sub__(self, other: "NSymElement") -> "NSymElement":
        return self + (-other)

    def scale(self, c) -> "NSymElement":
        c = _lift(c, self.modulus)
        return NSymElement({k: v * c for k, v in self.terms.items()}, self.modulus)

    def __mul__(self, other):
        if isinstance(other, NSymElement):
            return nsym_product(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "NSymElement":
        out = NSymElement.one(self.modulus)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, NSymElement):
            return NotImplemented
        return self.modulus == other.modulus and self.terms == other.terms

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.modulus))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {sum(k) for k in self.terms}

    def homogeneous_components(self) -> Dict[int, "NSymElement"]:
        out: Dict[int, Dict[Comp, ParamScalar]] = {}
        for k, v in self.terms.items():
            out.setdefault(sum(k), {})[k] = v
        return {d: NSymElement(t, self.modulus) for d, t in sorted(out.items())}

    def coefficient(self, comp: Sequence[int]) -> ParamScalar:
        return self.terms.get(tuple(comp), scalar(0, self.modulus))

    def with_modulus(self, modulus: Optional[int]) -> "NSymElement":
        return NSymElement({k: v.with_modulus(modulus) for k, v in self.terms.items()}, modulus)

    def __str__(self):
        keys = sorted(self.terms, key=lambda c: (sum(c), c))
        return render_combination((self.terms[c], "h[" + ",".join(map(str, c)) + "]" if c else "")
                                  for c in keys)

    def __repr__(self):
        return f"NSymElement({str(self)!r})"


def nsym_product(a: NSymElement, b: NSymElement) -> NSymElement:
    """Bilinear extension of word concatenation.

    >>> str(NSymElement.h(2) * NSymElement.h(3))
    'h[2,3]'
    """
    a._check(b)
    out: Dict[Comp, ParamScalar] = {}
    for ka, va in a.terms.items():
        for kb, vb in b.terms.items():
            k = ka + kb
            c = va * vb
            out[k] = out[k] + c if k in out else c
    return NSymElement(out, a.modulus)


# --------------------------------------------------------------------------
# twisted tensor square
# --------------------------------------------------------------------------

class TensorElement:
    """Element of the tensor square with ``(w x)(y z) = q^{deg x deg y} (wy zx)``."""

    __slots__ = ("terms", "modulus")

    def __init__(self, terms: Optional[Dict[Tuple[Comp, Comp], ParamScalar]] = None,
                 modulus: Optional[int] = None):
        self.modulus = modulus
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def pure(cls, left: NSymElement, right: NSymElement) -> "TensorElement":
        left._check(right)
        out: Dict[Tuple[Comp, Comp], ParamScalar] = {}
        for ka, va in left.terms.items():
            for kb, vb in right.terms.items():
                out[(ka, kb)] = va * vb
        return cls(out, left.modulus)

    def __add__(self, other: "TensorElement") -> "TensorElement":
        if other.modulus != self.modulus:
            raise ModulusError("tensor moduli differ")
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return TensorElement(out, self.modulus)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + TensorElement({k: -v for k, v in other.terms.items()}, other.modulus)

    def scale(self, c) -> "TensorElement":
        c = _lift(c, self.modulus)
        return TensorElement({k: v * c for k, v in self.terms.items()}, self.modulus)

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        if other.modulus != self.modulus:
            raise ModulusError("tensor moduli differ")
        out: Dict[Tuple[Comp, Comp], ParamScalar] = {}
        for (w, x), va in self.terms.items():
            for (y, z), vb in other.terms.items():
                k = (w + y, x + z)
                c = va * vb * _q(sum(x) * sum(y), self.modulus)
                out[k] = out[k] + c if k in out else c
        return TensorElement(out, self.modulus)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.modulus == other.modulus and self.terms == other.terms

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.modulus))

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        def label(c):
            return "h[" + ",".join(map(str, c)) + "]" if c else "1"
        keys = sorted(self.terms, key=lambda k: (sum(k[0]), k[0], k[1]))
        return render_combination((self.terms[k], f"{label(k[0])}#{label(k[1])}") for k in keys)

    def __repr__(self):
        return f"TensorElement({str(self)!r})"


@lru_cache(maxsize=None)
def _coproduct_word(comp: Comp, modulus: Optional[int]) -> TensorElement:
    out = TensorElement({((), ()): scalar(1, modulus)}, modulus)
    for part in comp:
        gen = TensorElement({(normalize_parts((k,)), normalize_parts((part - k,))): scalar(1, modulus)
                             for k in range(part + 1)}, modulus)
        out = out * gen
    return out


def coproduct(a: NSymElement) -> TensorElement:
    """Algebra map with ``h_n -> sum_k h_k # h_{n-k}``.

    >>> str(coproduct(NSymElement.h(1, 1)))
    '1#h[1,1] + (1 + q)*h[1]#h[1] + h[1,1]#1'
    """
    out = TensorElement({}, a.modulus)
    for comp, c in a.terms.items():
        out = out + _coproduct_word(comp, a.modulus).scale(c)
    return out


def counit(a: NSymElement) -> ParamScalar:
    return a.coefficient(())


def counit_sides(t: TensorElement) -> Tuple[NSymElement, NSymElement]:
    """``((eps # id) t, (id # eps) t)``."""
    left: Dict[Comp, ParamScalar] = {}
    right: Dict[Comp, ParamScalar] = {}
    for (a, b), c in t.terms.items():
        if a == ():
            left[b] = left[b] + c if b in left else c
        if b == ():
            right[a] = right[a] + c if a in right else c
    return NSymElement(left, t.modulus), NSymElement(right, t.modulus)


def coassociativity_sides(a: NSymElement) -> Tuple[Dict, Dict]:
    """``((Delta # id) Delta a, (id # Delta) Delta a)`` as maps on triples of words."""
    lhs: Dict[Tuple[Comp, Comp, Comp], ParamScalar] = {}
    rhs: Dict[Tuple[Comp, Comp, Comp], ParamScalar] = {}

    def bump(d, k, c):
        d[k] = d[k] + c if k in d else c

    for (x, y), c in coproduct(a).terms.items():
        for (x1, x2), c1 in _coproduct_word(x, a.modulus).terms.items():
            bump(lhs, (x1, x2, y), c * c1)
        for (y1, y2), c2 in _coproduct_word(y, a.modulus).terms.items():
            bump(rhs, (x, y1, y2), c * c2)
    return ({k: v for k, v in lhs.items() if v}, {k: v for k, v in rhs.items() if v})


# --------------------------------------------------------------------------
# bilinear form
# --------------------------------------------------------------------------

def _matrices(rows: Comp, cols: Comp) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    """Non-negative integer matrices with the given row and column sums."""
    ncols = len(cols)

    def fill_row(total, remaining, j):
        if j == ncols - 1:
            if total <= remaining[j]:
                yield (total,)
            return
        for v in range(min(total, remaining[j]), -1, -1):
            for rest in fill_row(total - v, remaining, j + 1):
                yield (v,) + rest

    def rec(i, remaining):
        if i == len(rows):
            if not any(remaining):
                yield ()
            return
        for row in fill_row(rows[i], remaining, 0):
            nxt = tuple(r - v for r, v in zip(remaining, row))
            for rest in rec(i + 1, nxt):
                yield (row,) + rest

    if not rows or not cols:
        if sum(rows) == sum(cols) == 0:
            yield ()
        return
    yield from rec(0, tuple(cols))


def matrix_crossings(mat: Sequence[Sequence[int]]) -> int:
    """``sum a_ij a_i'j'`` over ``i < i'`` and ``j > j'``."""
    total = 0
    ncols = len(mat[0]) if mat else 0
    above = [0] * ncols
    for row in mat:
        suffix = 0
        for j in range(ncols - 1, -1, -1):
            total += row[j] * suffix
            suffix += above[j]
        for j in range(ncols):
            above[j] += row[j]
    return total


@lru_cache(maxsize=None)
def _pairing_counts(lam: Comp, mu: Comp) -> Tuple[Tuple[int, int], ...]:
    if sum(lam) != sum(mu):
        return ()
    counts = Counter(matrix_crossings(m) for m in _matrices(lam, mu))
    return tuple(sorted(counts.items()))


@lru_cache(maxsize=None)
def _coset_counts(lam: Comp, mu: Comp) -> Tuple[Tuple[int, int], ...]:
    if sum(lam) != sum(mu):
        return ()
    if sum(lam) > ORACLE_MAX_SIZE:
        raise ValueError(f"coset oracle limited to size {ORACLE_MAX_SIZE}")
    hist = double_coset_lengths(lam, mu)
    return tuple((d, int(c)) for d, c in enumerate(hist) if c)


def _counts_to_scalar(counts, modulus: Optional[int]) -> ParamScalar:
    return ParamScalar({(d, 0, 0, 0): c for d, c in counts}, modulus)


def pairing_words(lam: Sequence[int], mu: Sequence[int], modulus: Optional[int] = None,
                  method: str = "matrix") -> ParamScalar:
    """``(h_lam, h_mu)`` for two compositions."""
    lam, mu = tuple(lam), tuple(mu)
    if method == "matrix":
        counts = _pairing_counts(lam, mu)
    elif method == "coset":
        counts = _coset_counts(lam, mu)
    else:
        raise ValueError(f"unknown pairing method {method!r}")
    return _counts_to_scalar(counts, modulus)


def pairing_coset_oracle(lam: Sequence[int], mu: Sequence[int],
                         modulus: Optional[int] = None) -> ParamScalar:
    """Sum of ``q^{l(w_C)}`` over double cosets, by exhaustive enumeration of S_n."""
    return pairing_words(lam, mu, modulus, method="coset")


def pairing(a: NSymElement, b: NSymElement, method: str = "matrix") -> ParamScalar:
    """Bilinear form; words of different degree pair to zero.

    >>> str(pairing(NSymElement.h(1, 2, 1), NSymElement.h(2, 2)))
    '1 + 2*q^2 + q^3'
    """
    a._check(b)
    total = scalar(0, a.modulus)
    for ka, va in a.terms.items():
        for kb, vb in b.terms.items():
            if sum(ka) == sum(kb):
                total = total + va * vb * pairing_words(ka, kb, a.modulus, method)
    return total


def tensor_pairing(a: TensorElement, b: TensorElement, method: str = "matrix") -> ParamScalar:
    """``(w # x, y # z) = (w, y)(x, z)`` extended bilinearly."""
    if a.modulus != b.modulus:
        raise ModulusError("tensor moduli differ")
    m = a.modulus
    total = scalar(0, m)
    for (w, x), va in a.terms.items():
        for (y, z), vb in b.terms.items():
            if sum(w) == sum(y) and sum(x) == sum(z):
                total = total + va * vb * pairing_words(w, y, m, method) * pairing_words(x, z, m, method)
    return total


# --------------------------------------------------------------------------
# elementary elements
# --------------------------------------------------------------------------

@lru_cache(maxsize=None)
def elementary_e(k: int, modulus: Optional[int] = None) -> NSymElement:
    """``e_k = q^{-C(k,2)} sum_a (-1)^{len(a)-k} h_a`` over compositions of ``k``.

    >>> str(elementary_e(2))
    'q^-1*h[1,1] - q^-1*h[2]'
    """
    if k < 0:
        return NSymElement.zero(modulus)
    pref = _q(-comb(k, 2), modulus)
    terms = {}
    for a in compositions(k):
        sign = 1 if (len(a) - k) % 2 == 0 else -1
        terms[a] = pref * sign
    return NSymElement(terms, modulus)


def elementary_word(parts: Sequence[int], modulus: Optional[int] = None) -> NSymElement:
    """``e_{a_1} ... e_{a_z}``."""
    out = NSymElement.one(modulus)
    for p in parts:
        out = out * elementary_e(p, modulus)
    return out


def elementary_recursion_residual(k: int, modulus: Optional[int] = None) -> NSymElement:
    """``sum_i (-1)^i q^{C(i,2)} e_i h_{k-i}``; zero for every k >= 1."""
    out = NSymElement.zero(modulus)
    for i in range(k + 1):
        term = elementary_e(i, modulus) * NSymElement.h(k - i, modulus=modulus)
        out = out + term.scale(_q(comb(i, 2), modulus) * (-1) ** i)
    return out


# --------------------------------------------------------------------------
# strand splitting counts
# --------------------------------------------------------------------------

def _tuples_with_sum(length: int, total: int) -> Iterator[Comp]:
    if length == 0:
        if total == 0:
            yield ()
        return
    if length == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _tuples_with_sum(length - 1, total - first):
            yield (first,) + rest


def split_weight_polynomial(n: int, k: int, modulus: Optional[int] = None) -> ParamScalar:
    """Sum over (k+1)-tuples ``a`` of non-negative integers with sum ``n - k`` of
    ``q^{k a_1 + (k-1) a_2 + ... + 1 a_k}``.

    >>> str(split_weight_polynomial(3, 1))
    '1 + q + q^2'
    """
    if k < 0 or k > n:
        return scalar(0, modulus)
    counts: Counter = Counter()
    for tup in _tuples_with_sum(k + 1, n - k):
        counts[sum((k - j) * a for j, a in enumerate(tup))] += 1
    return _counts_to_scalar(counts.items(), modulus)


# --------------------------------------------------------------------------
# insertion
# --------------------------------------------------------------------------
#
# (h_lam, e_k x)_{h_P} is linear in x, so each evaluator returns the element
# rho with (h_lam, e_k x)_{h_P} = (rho, x).

def _word_or_none(parts: Sequence[int]) -> Optional[Comp]:
    return normalize_parts(parts)


def _add_word(out: Dict[Comp, ParamScalar], parts: Sequence[int], c: ParamScalar) -> None:
    comp = _word_or_none(parts)
    if comp is None or not c:
        return
    out[comp] = out[comp] + c if comp in out else c


def insertion_recursive(lam: Sequence[int], k: int, prefix: Sequence[int] = (),
                        modulus: Optional[int] = None) -> NSymElement:
    """Peel the first part of ``lam``: a strand to ``e_k`` or not."""
    out: Dict[Comp, ParamScalar] = {}

    def rec(rest: Comp, k: int, pre: Comp, coef: int):
        if k < 0:
            return
        if not rest:
            if k == 0:
                _add_word(out, pre, _q(coef, modulus))
            return
        n, tail = rest[0], rest[1:]
        rec(tail, k - 1, pre + (n - 1,), coef + (k - 1) * (n - 1))
        rec(tail, k, pre + (n,), coef + k * n)

    rec(tuple(lam), k, tuple(prefix), 0)
    return NSymElement(out, modulus)


def insertion_explicit(lam: Sequence[int], k: int, m: int, prefix: Sequence[int] = (),
                       modulus: Optional[int] = None) -> NSymElement:
    """Resolve the first ``m`` parts at once by summing over 0/1 strand patterns,
    then finish the remaining parts recursively."""
    lam = tuple(lam)
    if not 0 <= m <= len(lam):
        raise ValueError(f"m = {m} outside 0..{len(lam)}")
    head, tail = lam[:m], lam[m:]
    total = NSymElement.zero(modulus)
    for ones in range(m + 1):
        for bits in binary_sequences(m, ones):
            left = componentwise_sub(head, bits)
            weight = componentwise_mul(left, componentwise_sub(constant_sequence(k, m), partial_sums(bits)))
            rest = insertion_recursive(tail, k - ones, tuple(prefix) + left, modulus)
            total = total + rest.scale(_q(sum(weight), modulus))
    return total


def insertion_closed(lam: Sequence[int], k: int, prefix: Sequence[int] = (),
                     modulus: Optional[int] = None) -> NSymElement:
    """Case formula: all parts but the last resolved by strand patterns, the last part
    connected to ``e_k`` by at most one strand."""
    lam = tuple(lam)
    z = len(lam)
    out: Dict[Comp, ParamScalar] = {}
    if k < 0 or k >= z + 1:
        return NSymElement(out, modulus)
    if z == 0:
        return insertion_recursive(lam, k, prefix, modulus)
    head, last = lam[:-1], lam[-1]
    # l = k - 1 ones: the last part sends one strand to e_k
    # l = k ones: the last part sends none (only possible when k < z)
    for ones, last_part in ((k - 1, last - 1), (k, last)):
        if ones < 0 or ones > z - 1:
            continue
        for bits in binary_sequences(z - 1, ones):
            left = componentwise_sub(head, bits)
            weight = componentwise_mul(left, componentwise_sub(constant_sequence(k, z - 1), partial_sums(bits)))
            _add_word(out, tuple(prefix) + left + (last_part,), _q(sum(weight), modulus))
    return NSymElement(out, modulus)


def insertion_direct(lam: Sequence[int], k: int, prefix: Sequence[int] = (),
                     modulus: Optional[int] = None) -> NSymElement:
    """Expand the coproduct of ``h_lam`` and keep the terms whose left factor pairs
    nontrivially with ``e_k`` (only ``h_{1^k}`` does)."""
    out: Dict[Comp, ParamScalar] = {}
    ek = elementary_e(k, modulus)
    for (left, right), c in _coproduct_word(tuple(lam), modulus).terms.items():
        if sum(left) != k:
            continue
        w = pairing(NSymElement({left: scalar(1, modulus)}, modulus), ek)
        _add_word(out, tuple(prefix) + right, c * w)
    return NSymElement(out, modulus)


INSERTION_METHODS = ("recursive", "explicit", "closed", "direct")


def insertion_element(lam: Sequence[int], k: int, prefix: Sequence[int] = (),
                      modulus: Optional[int] = None, method: str = "recursive",
                      m: Optional[int] = None) -> NSymElement:
    if method == "recursive":
        return insertion_recursive(lam, k, prefix, modulus)
    if method == "explicit":
        return insertion_explicit(lam, k, len(lam) if m is None else m, prefix, modulus)
    if method == "closed":
        return insertion_closed(lam, k, prefix, modulus)
    if method == "direct":
        return insertion_direct(lam, k, prefix, modulus)
    raise ValueError(f"unknown insertion method {method!r}")


def insertion_pairing(lam: Sequence[int], k: int, x: NSymElement, prefix: Sequence[int] = (),
                      method: str = "recursive", m: Optional[int] = None) -> ParamScalar:
    """``(h_lam, e_k x)`` with ``h_prefix`` prepended inside every resulting form."""
    return pairing(insertion_element(lam, k, prefix, x.modulus, method, m), x)


# --------------------------------------------------------------------------
# radical and roots of unity
# --------------------------------------------------------------------------

def radical_equiv(a: NSymElement, b: NSymElement, max_deg: int) -> bool:
    """True iff ``a - b`` pairs to zero with every word of each of its degrees."""
    diff = a - b
    for d, comp in diff.homogeneous_components().items():
        if d > max_deg:
            raise ValueError(f"degree {d} exceeds max_deg {max_deg}")
        for mu in compositions(d):
            if pairing(comp, NSymElement({mu: scalar(1, a.modulus)}, a.modulus)):
                return False
    return True


def radical_witness(a: NSymElement, max_deg: int) -> Optional[Tuple[Comp, ParamScalar]]:
    """First word pairing nontrivially with ``a``, or None if ``a`` is in the radical."""
    for d, comp in a.homogeneous_components().items():
        if d > max_deg:
            raise ValueError(f"degree {d} exceeds max_deg {max_deg}")
        for mu in compositions(d):
            v = pairing(comp, NSymElement({mu: scalar(1, a.modulus)}, a.modulus))
            if v:
                return mu, v
    return None


def centrality_pair(n: int, m: int, modulus: Optional[int]) -> Tuple[NSymElement, NSymElement]:
    """``(h_1^n h_m, h_m h_1^n)``."""
    word = (1,) * n
    return (NSymElement.word(word + (m,), modulus=modulus),
            NSymElement.word((m,) + word, modulus=modulus))


def is_central_power(n: int, m: int, modulus: int) -> bool:
    a, b = centrality_pair(n, m, modulus)
    return radical_equiv(a, b, n + m)


DEGREE_SIX_WORDS = {
    "v1": {(1, 1, 2, 1, 1): 1, (1, 2, 1, 1, 1): 1, (2, 1, 1, 1, 1): 1},
    "v2": {(1, 1, 2, 2): 1, (1, 2, 2, 1): -2, (2, 1, 1, 2): 3, (2, 2, 1, 1): 1},
    "v3": {(1, 1, 3, 1): 2, (1, 1, 4): -2, (1, 3, 1, 1): 2, (1, 4, 1): -2, (2, 2, 2): 3,
           (1, 1, 1, 3): 2, (4, 1, 1): -2},
}


def degree_six_vectors(modulus: Optional[int] = None) -> Dict[str, NSymElement]:
    out = {}
    for name, words in DEGREE_SIX_WORDS.items():
        acc = NSymElement.zero(modulus)
        for parts, c in words.items():
            acc = acc + elementary_word(parts, modulus).scale(c)
        out[name] = acc
    return out


def degree_six_relation(modulus: Optional[int] = 3) -> NSymElement:
    """``v1 + q^2 v2 + q v3`` in the e-basis."""
    v = degree_six_vectors(modulus)
    return v["v1"] + v["v2"].scale(_q(2, modulus)) + v["v3"].scale(_q(1, modulus))


def gaussian_split_check(n: int, k: int, modulus: Optional[int] = None) -> bool:
    return split_weight_polynomial(n, k, modulus) == gaussian_binomial(n, k, modulus)
