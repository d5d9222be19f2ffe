"""
q-divided difference operators on the q-commuting polynomial ring.

``del_i`` is fixed by ``del_i(x_i) = q``, ``del_i(x_{i+1}) = -1``,
``del_i(x_j) = 0`` otherwise, and the twisted Leibniz rule
``del_i(fg) = del_i(f) g + sigma_i(f) del_i(g)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable, List, Optional, Tuple

from .errors import IndexRangeError, ModeError
from .skewring import (QMODE, Exps, RingConfig, SkewPoly, apply_linear,
                       braid_sigma, iter_monomials)


@dataclass(frozen=True)
class QPolyContext:
    config: RingConfig

    def __post_init__(self):
        if self.config.mode != QMODE:
            raise ModeError("q operators need a q-mode ring")

    @classmethod
    def make(cls, n: int, modulus: Optional[int] = None) -> "QPolyContext":
        return cls(RingConfig(n, QMODE, modulus))

    @property
    def modulus(self) -> Optional[int]:
        return self.config.modulus


def _generator_image(ring: RingConfig, i: int, j: int) -> SkewPoly:
    if j == i:
        return SkewPoly.from_scalar(ring, ring.gen("q"))
    if j == i + 1:
        return SkewPoly.from_scalar(ring, -1)
    return ring.zero()


@lru_cache(maxsize=None)
def _qdel_image(ring: RingConfig, i: int, exps: Exps) -> SkewPoly:
    # peel the leftmost letter: x^e = x_j * x^{e - e_j} with j the first nonzero slot
    j = next((p for p, e in enumerate(exps) if e), None)
    if j is None:
        return ring.zero()
    if exps[j] < 0:
        raise ValueError("q-divided differences are defined on polynomials only")
    rest = list(exps)
    rest[j] -= 1
    rest = tuple(rest)
    xj = ring.x(j + 1)
    head = _generator_image(ring, i, j + 1)
    out = head * SkewPoly.monomial(ring, rest) if head else ring.zero()
    tail = _qdel_image(ring, i, rest)
    if tail:
        out = out + braid_sigma(i, xj) * tail
    return out


def q_divided_difference(i: int, f: SkewPoly) -> SkewPoly:
    """The q-divided difference ``del_i`` (1 <= i <= n-1).

    >>> from oddhecke.skewring import RingConfig
    >>> R = RingConfig(2, "q")
    >>> str(q_divided_difference(1, R.x(1, 2)))
    'q*x1 + q^2*x2'
    """
    ring = f.ring
    if ring.mode != QMODE:
        raise ModeError("q-divided differences act on the q-commuting ring")
    if not 1 <= i <= ring.n - 1:
        raise IndexRangeError(f"q-divided difference index {i} outside 1..{ring.n - 1}")
    return apply_linear(f, lambda e: _qdel_image(ring, i, e))


def qdel_power_closed_form(i: int, k: int, ring: RingConfig, which: str) -> SkewPoly:
    """Closed forms of ``del_i(x_i^k)`` (``which="i"``) and ``del_i(x_{i+1}^k)`` (``"i+1"``)."""
    out = ring.zero()
    for j in range(k):
        e = [0] * ring.n
        e[i - 1] = j
        e[i] = k - 1 - j
        if which == "i":
            c = ring.gen("q", j * k - 2 * j - j * j + k)
        elif which == "i+1":
            c = -ring.gen("q", -j)
        else:
            raise ValueError(which)
        out = out + SkewPoly.monomial(ring, tuple(e), c)
    return out


def elementary_qsym(k: int, twisted: bool, ctx: QPolyContext) -> SkewPoly:
    """(Twisted) elementary q-symmetric polynomial; twisting uses ``x~_j = q^{j-1} x_j``."""
    ring = ctx.config
    n = ring.n
    if k < 0 or k > n:
        return ring.zero()
    out = ring.zero()
    for idx in combinations(range(1, n + 1), k):
        e = [0] * n
        for j in idx:
            e[j - 1] = 1
        c = ring.gen("q", sum(j - 1 for j in idx)) if twisted else ring.scalar(1)
        out = out + SkewPoly.monomial(ring, tuple(e), c)
    return out


# --------------------------------------------------------------------------
# relation suite
# --------------------------------------------------------------------------

@dataclass
class QRelationResult:
    name: str
    passed: bool
    checked: int
    counterexample: Optional[Tuple[Exps, str]] = None


def _sweep(name: str, ring: RingConfig, max_deg: int,
           residual: Callable[[SkewPoly], SkewPoly]) -> QRelationResult:
    checked = 0
    for e in iter_monomials(ring.n, max_deg):
        checked += 1
        res = residual(SkewPoly.monomial(ring, e))
        if not res.is_zero():
            return QRelationResult(name, False, checked, (e, str(res)))
    return QRelationResult(name, True, checked)


RELATION_FAMILIES = (
    "del_i^2 = 0",
    "del_j del_i - q del_i del_j = 0 (j > i+1)",
    "x_j x_i = q x_i x_j (i < j)",
    "del_i x_j - q x_j del_i = 0 (j > i+1)",
    "q del_i x_j - x_j del_i = 0 (j < i)",
    "del_i x_i - q x_{i+1} del_i = q",
    "x_i del_i - q del_i x_{i+1} = q",
    "q-braid",
)

Residual = Callable[[SkewPoly], SkewPoly]


def qnilhecke_relations(ring: RingConfig) -> List[Tuple[int, str, Residual]]:
    """``(family, instance name, residual map)`` for every instance available at this n.

    A residual is zero on ``f`` iff the relation holds when applied to ``f``.
    """
    n = ring.n
    q = ring.gen("q")
    d = q_divided_difference
    x = ring.x
    rels: List[Tuple[int, str, Residual]] = []

    for i in range(1, n):
        rels.append((0, f"i={i}", lambda f, i=i: d(i, d(i, f))))
    for i in range(1, n):
        for j in range(i + 2, n):
            rels.append((1, f"i={i},j={j}",
                         lambda f, i=i, j=j: d(j, d(i, f)) - d(i, d(j, f)).scale(q)))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rels.append((2, f"i={i},j={j}",
                         lambda f, i=i, j=j: x(j) * (x(i) * f) - (x(i) * (x(j) * f)).scale(q)))
    for i in range(1, n):
        for j in range(i + 2, n + 1):
            rels.append((3, f"i={i},j={j}",
                         lambda f, i=i, j=j: d(i, x(j) * f) - (x(j) * d(i, f)).scale(q)))
        for j in range(1, i):
            rels.append((4, f"i={i},j={j}",
                         lambda f, i=i, j=j: d(i, x(j) * f).scale(q) - x(j) * d(i, f)))
        rels.append((5, f"i={i}",
                     lambda f, i=i: d(i, x(i) * f) - (x(i + 1) * d(i, f)).scale(q) - f.scale(q)))
        rels.append((6, f"i={i}",
                     lambda f, i=i: x(i) * d(i, f) - d(i, x(i + 1) * f).scale(q) - f.scale(q)))
    for i in range(1, n - 1):
        def braid(f, a=i, b=i + 1):
            g = h = f
            for k in (b, a, b, a, b, a):
                g = d(k, g)
            for k in (a, b, a, b, a, b):
                h = d(k, h)
            return g + h
        rels.append((7, f"i={i}", braid))
    return rels


def qnilhecke_suite(n: int, max_deg: int, ctx: Optional[QPolyContext] = None) -> List[QRelationResult]:
    """Check every q-nilHecke relation on all monomials of degree <= max_deg.

    Returns one result per relation family (eight in total); a family with no
    instance at this ``n`` passes vacuously with ``checked == 0``.
    """
    ring = ctx.config if ctx is not None else RingConfig(n, QMODE)
    if ring.n != n:
        raise ValueError("context and n disagree")
    results = [QRelationResult(fam, True, 0) for fam in RELATION_FAMILIES]
    for fam, inst, fn in qnilhecke_relations(ring):
        res = _sweep(inst, ring, max_deg, fn)
        out = results[fam]
        out.checked += res.checked
        if not res.passed and out.passed:
            out.passed = False
            out.counterexample = (res.counterexample[0], f"{inst}: {res.counterexample[1]}")
    return results
