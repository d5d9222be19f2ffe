"""
Operator expressions and exhaustive basis sweeps.

An identity between linear operators holds iff it holds on every basis
monomial, so each relation is encoded as an expression that must vanish and is
evaluated on all normal-ordered monomials up to a degree bound.
"""

from __future__ import annotations

import json
import multiprocessing
import os
import random
import time
from dataclasses import dataclass, field
from math import comb
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from . import nsymq, oddops, qops
from .errors import IndexRangeError, ModeError
from .scalars import ParamScalar, gaussian_binomial, q_power
from .skewring import (ODD, QMODE, Exps, RingConfig, SkewPoly, braid_sigma,
                       iter_monomials, shift_tau, transposition_s)

WORKERS_ENV = "ODDHECKE_WORKERS"


# --------------------------------------------------------------------------
# expressions
# --------------------------------------------------------------------------

# name -> (arity choices, allowed modes); arity 0 means no index arguments
GENERATORS: Dict[str, Tuple[Tuple[int, ...], Tuple[str, ...]]] = {
    "id": ((0,), (ODD, QMODE)),
    "parity": ((0,), (ODD, QMODE)),
    "x": ((1,), (ODD, QMODE)),
    "xinv": ((1,), (ODD, QMODE)),
    "xr": ((1,), (ODD, QMODE)),
    "mul": ((0,), (ODD, QMODE)),
    "tau": ((1,), (ODD, QMODE)),
    "s": ((1, 2), (ODD,)),
    "del": ((1, 2), (ODD,)),
    "r": ((1, 2), (ODD,)),
    "rx": ((1, 2), (ODD,)),
    "delta": ((1,), (ODD,)),
    "p": ((1,), (ODD,)),
    "eta": ((1,), (ODD,)),
    "D": ((1,), (ODD,)),
    "r2": ((0,), (ODD,)),
    "euler": ((0,), (ODD,)),
    "lap": ((0,), (ODD,)),
    "Y": ((1,), (ODD,)),
    "sigma": ((1,), (QMODE,)),
    "sigmainv": ((1,), (QMODE,)),
    "qdel": ((1,), (QMODE,)),
}


@dataclass(frozen=True)
class OperatorExpr:
    """Node of an operator expression.

    ``kind`` is one of ``gen``, ``compose``, ``sum``, ``scale``, ``com``,
    ``acom``. Composition reads right to left: ``compose(a, b)(f) = a(b(f))``.
    """
    kind: str
    name: str = ""
    args: Tuple[int, ...] = ()
    children: Tuple["OperatorExpr", ...] = ()
    coef: Any = None

    # -- algebra -------------------------------------------------------------
    def __add__(self, other: "OperatorExpr") -> "OperatorExpr":
        return op_sum(self, other)

    def __sub__(self, other: "OperatorExpr") -> "OperatorExpr":
        return op_sum(self, scale(-1, other))

    def __neg__(self) -> "OperatorExpr":
        return scale(-1, self)

    def __matmul__(self, other: "OperatorExpr") -> "OperatorExpr":
        return compose(self, other)

    def __rmul__(self, c) -> "OperatorExpr":
        return scale(c, self)

    def __str__(self):
        return render_expr(self)


def gen(name: str, *args: int, poly: Optional[SkewPoly] = None) -> OperatorExpr:
    if name not in GENERATORS:
        raise ValueError(f"unknown operator {name!r}")
    arities = GENERATORS[name][0]
    if len(args) not in arities:
        raise ValueError(f"{name} takes {' or '.join(map(str, arities))} index arguments, got {len(args)}")
    if name == "mul" and poly is None:
        raise ValueError("mul needs a polynomial")
    return OperatorExpr("gen", name, tuple(int(a) for a in args), coef=poly)


def compose(*ops: OperatorExpr) -> OperatorExpr:
    flat: List[OperatorExpr] = []
    for o in ops:
        flat.extend(o.children if o.kind == "compose" else (o,))
    return flat[0] if len(flat) == 1 else OperatorExpr("compose", children=tuple(flat))


def op_sum(*ops: OperatorExpr) -> OperatorExpr:
    flat: List[OperatorExpr] = []
    for o in ops:
        flat.extend(o.children if o.kind == "sum" else (o,))
    return flat[0] if len(flat) == 1 else OperatorExpr("sum", children=tuple(flat))


def scale(c, e: OperatorExpr) -> OperatorExpr:
    return OperatorExpr("scale", children=(e,), coef=c)


def commutator(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    return OperatorExpr("com", children=(a, b))


def anticommutator(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    return OperatorExpr("acom", children=(a, b))


IDENTITY = OperatorExpr("gen", "id")


def _render_coef(c) -> str:
    s = str(c)
    return s if (" " not in s and "/" not in s) else f"({s})"


def render_expr(e: OperatorExpr) -> str:
    if e.kind == "gen":
        if e.name == "mul":
            return f"mul({e.coef})"
        return e.name + (f"({','.join(map(str, e.args))})" if e.args else "")
    if e.kind == "compose":
        return "*".join(f"({render_expr(c)})" if c.kind == "sum" else render_expr(c) for c in e.children)
    if e.kind == "sum":
        out = render_expr(e.children[0])
        for c in e.children[1:]:
            if c.kind == "scale" and isinstance(c.coef, int) and c.coef < 0:
                inner = c.children[0]
                body = render_expr(inner) if inner.kind != "sum" else f"({render_expr(inner)})"
                out += f" - {body}" if c.coef == -1 else f" - {-c.coef}*{body}"
            else:
                out += " + " + render_expr(c)
        return out
    if e.kind == "scale":
        inner = e.children[0]
        body = render_expr(inner) if inner.kind not in ("sum",) else f"({render_expr(inner)})"
        if e.coef == -1:
            return f"-{body}"
        return f"{_render_coef(e.coef)}*{body}"
    if e.kind == "com":
        return f"com({render_expr(e.children[0])}, {render_expr(e.children[1])})"
    if e.kind == "acom":
        return f"acom({render_expr(e.children[0])}, {render_expr(e.children[1])})"
    raise ValueError(f"unknown node kind {e.kind!r}")


# --------------------------------------------------------------------------
# evaluation
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class EvalContext:
    """Ring plus odd-operator parameters (ignored in q mode)."""
    config: RingConfig
    odd: Optional[oddops.OddOpContext] = None
    coupling: str = "inverse"

    def __post_init__(self):
        if self.config.mode == ODD and self.odd is None:
            object.__setattr__(self, "odd", oddops.OddOpContext(self.config))

    @classmethod
    def make(cls, n: int, mode: str = ODD, modulus: Optional[int] = None,
             coupling: str = "inverse") -> "EvalContext":
        return cls(RingConfig(n, mode, modulus), coupling=coupling)


def _pair_args(args: Tuple[int, ...]) -> Tuple[int, int]:
    return (args[0], args[0] + 1) if len(args) == 1 else (args[0], args[1])


def _parity(f: SkewPoly) -> SkewPoly:
    out = f.ring.zero()
    for d, comp in f.homogeneous_components().items():
        out = out + (comp if d % 2 == 0 else -comp)
    return out


def _apply_generator(e: OperatorExpr, f: SkewPoly, ctx: EvalContext) -> SkewPoly:
    name, args = e.name, e.args
    ring = f.ring
    if ring.mode not in GENERATORS[name][1]:
        raise ModeError(f"{name} is not available in {ring.mode} mode")
    for a in args:
        if not 1 <= a <= ring.n:
            raise IndexRangeError(f"index {a} outside 1..{ring.n} in {render_expr(e)}")
    odd = ctx.odd
    if name == "id":
        return f
    if name == "parity":
        return _parity(f)
    if name == "x":
        return ring.x(args[0]) * f
    if name == "xinv":
        return ring.x(args[0], -1) * f
    if name == "xr":
        return f * ring.x(args[0])
    if name == "mul":
        return e.coef * f
    if name == "tau":
        return shift_tau(args[0], f)
    if name == "s":
        return transposition_s(*_pair_args(args), f, oddops.S_CONVENTION)
    if name == "del":
        return oddops.odd_divided_difference(*_pair_args(args), f)
    if name == "r":
        return oddops.r_op(*_pair_args(args), f)
    if name == "rx":
        return oddops.r_op(*_pair_args(args), f, method="explicit")
    if name == "delta":
        return oddops.delta_op(args[0], f)
    if name == "p":
        return oddops.p_op(args[0], f)
    if name == "eta":
        return oddops.eta_op(args[0], f, odd)
    if name == "D":
        return oddops.dvar_op(args[0], f, odd)
    if name == "r2":
        return oddops.r2_op(f, odd)
    if name == "euler":
        return oddops.euler_op(f, odd)
    if name == "lap":
        return oddops.laplacian_op(f, odd)
    if name == "Y":
        return oddops.cherednik_op(args[0], f, odd, ctx.coupling)
    if name == "sigma":
        return braid_sigma(args[0], f)
    if name == "sigmainv":
        return braid_sigma(args[0], f, inverse=True)
    if name == "qdel":
        return qops.q_divided_difference(args[0], f)
    raise ValueError(f"unknown operator {name!r}")


def eval_expr(e: OperatorExpr, f: SkewPoly, ctx: Optional[EvalContext] = None) -> SkewPoly:
    """Apply ``e`` to ``f``."""
    if ctx is None:
        ctx = EvalContext(f.ring)
    k = e.kind
    if k == "gen":
        return _apply_generator(e, f, ctx)
    if k == "compose":
        out = f
        for c in reversed(e.children):
            out = eval_expr(c, out, ctx)
        return out
    if k == "sum":
        out = f.ring.zero()
        for c in e.children:
            out = out + eval_expr(c, f, ctx)
        return out
    if k == "scale":
        coef = e.coef
        if not isinstance(coef, ParamScalar):
            coef = f.ring.scalar(coef)
        elif coef.modulus != f.ring.modulus:
            coef = coef.with_modulus(f.ring.modulus)
        return eval_expr(e.children[0], f, ctx).scale(coef)
    if k in ("com", "acom"):
        a, b = e.children
        ab = eval_expr(a, eval_expr(b, f, ctx), ctx)
        ba = eval_expr(b, eval_expr(a, f, ctx), ctx)
        return ab - ba if k == "com" else ab + ba
    raise ValueError(f"unknown node kind {k!r}")


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------

@dataclass
class RelationReport:
    name: str
    suite: str = ""
    params: Dict[str, Any] = field(default_factory=dict)
    basis_size: int = 0
    checked: int = 0
    passed: bool = True
    counterexample: Optional[Dict[str, str]] = None
    seconds: float = 0.0

    def to_dict(self, include_time: bool = True) -> Dict[str, Any]:
        d = {
            "suite": self.suite,
            "name": self.name,
            "params": self.params,
            "basis_size": self.basis_size,
            "checked": self.checked,
            "pass": self.passed,
            "counterexample": self.counterexample,
        }
        if include_time:
            d["seconds"] = round(self.seconds, 4)
        return d

    def to_json(self, include_time: bool = True) -> str:
        return json.dumps(self.to_dict(include_time), sort_keys=False)

    def to_text(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.params.items())
        head = (f"{'PASS' if self.passed else 'FAIL'}  {self.suite}: {self.name}"
                f"  [{params}; basis {self.basis_size}]  {self.seconds:.2f}s")
        if self.counterexample:
            ce = self.counterexample
            detail = ", ".join(f"{k}={v}" for k, v in ce.items())
            head += f"\n      counterexample: {detail}"
        return head


def _monomial_text(exps: Exps) -> str:
    from .skewring import render_monomial
    return render_monomial(exps) or "1"


# --------------------------------------------------------------------------
# sweeps
# --------------------------------------------------------------------------

Evaluator = Union[OperatorExpr, Callable[[SkewPoly], SkewPoly]]


@dataclass
class Relation:
    """A named family of instances, each an expression that must vanish."""
    name: str
    instances: List[Tuple[str, Evaluator]]


def _residual(ev: Evaluator, f: SkewPoly, ctx: EvalContext) -> SkewPoly:
    if isinstance(ev, OperatorExpr):
        return eval_expr(ev, f, ctx)
    return ev(f)


_FORK_STATE: Dict[str, Any] = {}


def _sweep_chunk(task):
    inst_index, start, stop = task
    ev, ctx, basis = _FORK_STATE["evs"][inst_index], _FORK_STATE["ctx"], _FORK_STATE["basis"]
    for pos in range(start, stop):
        res = _residual(ev, SkewPoly.monomial(ctx.config, basis[pos]), ctx)
        if not res.is_zero():
            return pos, str(res)
    return None


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def check_relation(rel: Relation, ctx: EvalContext, max_deg: int, suite: str = "",
                   workers: Optional[int] = None) -> RelationReport:
    """Sweep every instance of ``rel`` over all monomials of degree <= max_deg.

    Stops at the first nonzero residual; the counterexample reported is the
    first in (instance, degree, lex) order regardless of the worker count.
    """
    workers = default_workers() if workers is None else workers
    basis = list(iter_monomials(ctx.config.n, max_deg))
    t0 = time.perf_counter()
    report = RelationReport(rel.name, suite, {"n": ctx.config.n, "max_deg": max_deg,
                                              "mode": ctx.config.mode},
                            basis_size=len(basis) * len(rel.instances))
    if ctx.config.modulus is not None:
        report.params["modulus"] = ctx.config.modulus
    failure = None
    if workers > 1 and len(basis) > 1 and "fork" in multiprocessing.get_all_start_methods():
        failure = _parallel_sweep(rel, ctx, basis, workers, report)
    else:
        for idx, (label, ev) in enumerate(rel.instances):
            for pos, exps in enumerate(basis):
                report.checked += 1
                res = _residual(ev, SkewPoly.monomial(ctx.config, exps), ctx)
                if not res.is_zero():
                    failure = (idx, pos, str(res))
                    break
            if failure:
                break
    if failure:
        idx, pos, res = failure
        report.passed = False
        report.counterexample = {"instance": rel.instances[idx][0],
                                 "monomial": _monomial_text(basis[pos]),
                                 "residual": res}
    report.seconds = time.perf_counter() - t0
    return report


def _parallel_sweep(rel: Relation, ctx: EvalContext, basis, workers: int, report: RelationReport):
    _FORK_STATE.update(evs=[ev for _, ev in rel.instances], ctx=ctx, basis=basis)
    chunk = max(1, len(basis) // (workers * 4))
    mp = multiprocessing.get_context("fork")
    try:
        with mp.Pool(workers) as pool:
            for idx in range(len(rel.instances)):
                tasks = [(idx, s, min(s + chunk, len(basis))) for s in range(0, len(basis), chunk)]
                results = pool.map(_sweep_chunk, tasks)
                hits = [r for r in results if r is not None]
                if hits:
                    pos, res = min(hits)
                    report.checked += pos + 1
                    return idx, pos, res
                report.checked += len(basis)
    finally:
        _FORK_STATE.clear()
    return None


def check_zero(e: Evaluator, n: int, max_deg: int, mode: str = ODD,
               modulus: Optional[int] = None, name: Optional[str] = None,
               ctx: Optional[EvalContext] = None, workers: Optional[int] = None) -> RelationReport:
    """Sweep a single expression; pass iff it vanishes on every monomial of degree <= max_deg."""
    ctx = ctx or EvalContext.make(n, mode, modulus)
    label = name or (render_expr(e) if isinstance(e, OperatorExpr) else getattr(e, "__name__", "relation"))
    return check_relation(Relation(label, [(label, e)]), ctx, max_deg, workers=workers)


@dataclass
class Fact:
    """A relation that is not an operator sweep: a list of labelled exact checks.

    Each check returns ``None`` on success or a short description of the failure.
    """
    name: str
    checks: List[Tuple[str, Callable[[], Optional[str]]]]


def check_fact(fact: Fact, suite: str = "", params: Optional[Dict[str, Any]] = None) -> RelationReport:
    t0 = time.perf_counter()
    report = RelationReport(fact.name, suite, dict(params or {}), basis_size=len(fact.checks))
    for label, fn in fact.checks:
        report.checked += 1
        msg = fn()
        if msg is not None:
            report.passed = False
            report.counterexample = {"instance": label, "residual": msg}
            break
    report.seconds = time.perf_counter() - t0
    return report


# --------------------------------------------------------------------------
# odd relation families
# --------------------------------------------------------------------------

def _g(name, *args):
    return gen(name, *args)


def odd_nilhecke_relations(n: int) -> List[Relation]:
    d = lambda i: _g("del", i)
    x = lambda i: _g("x", i)
    rng = range(1, n)
    far = [(i, j) for i in rng for j in rng if j >= i + 2]
    return [
        Relation("del_i^2 = 0", [(f"i={i}", d(i) @ d(i)) for i in rng]),
        Relation("del_i del_j + del_j del_i = 0 (|i-j| >= 2)",
                 [(f"i={i},j={j}", anticommutator(d(i), d(j))) for i, j in far]),
        Relation("del_i del_{i+1} del_i = del_{i+1} del_i del_{i+1}",
                 [(f"i={i}", d(i) @ d(i + 1) @ d(i) - d(i + 1) @ d(i) @ d(i + 1)) for i in range(1, n - 1)]),
        Relation("x_i x_j + x_j x_i = 0 (i != j)",
                 [(f"i={i},j={j}", anticommutator(x(i), x(j))) for i in range(1, n + 1) for j in range(i + 1, n + 1)]),
        Relation("x_i del_i + del_i x_{i+1} = 1 = del_i x_i + x_{i+1} del_i",
                 [inst for i in rng for inst in (
                     (f"left i={i}", x(i) @ d(i) + d(i) @ x(i + 1) - IDENTITY),
                     (f"right i={i}", d(i) @ x(i) + x(i + 1) @ d(i) - IDENTITY))]),
        Relation("x_i del_j + del_j x_i = 0 (i != j, j+1)",
                 [(f"i={i},j={j}", anticommutator(x(i), d(j)))
                  for j in rng for i in range(1, n + 1) if i not in (j, j + 1)]),
    ]


def _transpose_pair(k: int, l: int, pair: Tuple[int, int]) -> Tuple[int, int]:
    sw = {k: l, l: k}
    return sw.get(pair[0], pair[0]), sw.get(pair[1], pair[1])


def r_relations(n: int) -> List[Relation]:
    r = lambda i, k=None: _g("r", i, i + 1 if k is None else k)
    s = lambda i, k=None: _g("s", i, i + 1 if k is None else k)
    x = lambda i: _g("x", i)
    tau = lambda i: _g("tau", i)
    xr = lambda i: _g("xr", i)
    rng = range(1, n)
    idx = range(1, n + 1)
    pairs = [(i, k) for i in idx for k in idx if i != k]
    far = [(i, j) for i in rng for j in rng if abs(i - j) >= 2]
    rels = [
        Relation("r_i^2 = 0", [(f"i={i}", r(i) @ r(i)) for i in rng]),
        Relation("r_i r_j + r_j r_i = 0 (|i-j| >= 2)",
                 [(f"i={i},j={j}", anticommutator(r(i), r(j))) for i, j in far if i < j]),
        Relation("r_i r_{i+1} r_i = r_{i+1} r_i r_{i+1}",
                 [(f"i={i}", r(i) @ r(i + 1) @ r(i) - r(i + 1) @ r(i) @ r(i + 1)) for i in range(1, n - 1)]),
        Relation("r_{i,k} = del_{i,k} s_{i,k} agrees with the closed form",
                 [(f"i={i},k={k}", r(i, k) - _g("rx", i, k)) for i, k in pairs]),
        Relation("r_{i,k} x_j = r_{i,k}(x_j) s_{i,k} - x_j r_{i,k}",
                 [(f"i={i},k={k},j={j}",
                   r(i, k) @ x(j) + x(j) @ r(i, k) - (s(i, k) if j in (i, k) else scale(0, IDENTITY)))
                  for i, k in pairs for j in idx]),
        Relation("r_i x_{i+1} + x_{i+1} r_i = r_i x_i + x_i r_i = s_i",
                 [inst for i in rng for inst in (
                     (f"x_{i + 1}, i={i}", anticommutator(r(i), x(i + 1)) - s(i)),
                     (f"x_{i}, i={i}", anticommutator(r(i), x(i)) - s(i)))]),
        Relation("r_j x_i + x_i r_j = 0 (i != j, j+1)",
                 [(f"i={i},j={j}", anticommutator(r(j), x(i))) for j in rng for i in idx if i not in (j, j + 1)]),
        Relation("r_{i,j} s_{k,l} = s_{k,l} r_{s_{k,l}(i,j)}",
                 [(f"i={i},j={j},k={k},l={l}",
                   r(i, j) @ s(k, l) - s(k, l) @ r(*_transpose_pair(k, l, (i, j))))
                  for i, j in pairs for k, l in pairs if k < l]),
        Relation("s_i r_{i,k} = r_{i+1,k} s_i (k != i+1)",
                 [(f"i={i},k={k}", s(i) @ r(i, k) - r(i + 1, k) @ s(i))
                  for i in rng for k in idx if k not in (i, i + 1)]),
        Relation("s_i r_i = r_i s_i", [(f"i={i}", s(i) @ r(i) - r(i) @ s(i)) for i in rng]),
        Relation("s_i r_{i+1} = r_{i,i+2} s_i",
                 [(f"i={i}", s(i) @ r(i + 1) - r(i, i + 2) @ s(i)) for i in range(1, n - 1)]),
        Relation("s_{i+1} r_i = r_{i,i+2} s_{i+1}",
                 [(f"i={i}", s(i + 1) @ r(i) - r(i, i + 2) @ s(i + 1)) for i in range(1, n - 1)]),
        Relation("s_i r_j = r_j s_i (|i-j| >= 2)",
                 [(f"i={i},j={j}", s(i) @ r(j) - r(j) @ s(i)) for i, j in far]),
        Relation("tau_i r_j = r_j tau_i (|i-j| >= 2)",
                 [(f"i={i},j={j}", tau(i) @ r(j) - r(j) @ tau(i))
                  for i in idx for j in rng if abs(i - j) >= 2]),
        Relation("s_{i,j} tau_k = tau_{s_{i,j}(k)} s_{i,j}",
                 [(f"i={i},j={j},k={k}", s(i, j) @ tau(k) - tau(_transpose_pair(i, j, (k, k))[0]) @ s(i, j))
                  for i, j in pairs if i < j for k in idx]),
        Relation("s_{i,k} x_i tau_i - s_{i,k} x_k tau_k = (-1)^{|f|} s_{i,k}(f) (x_k - x_i)",
                 [(f"i={i},k={k}",
                   s(i, k) @ x(i) @ tau(i) - s(i, k) @ x(k) @ tau(k)
                   - (xr(k) - xr(i)) @ s(i, k) @ _g("parity"))
                  for i, k in pairs]),
    ]
    return rels


def cybe_relations(n: int) -> List[Relation]:
    r = lambda i, k: _g("r", i, k)
    triples = [(a, b, c) for a in range(1, n + 1) for b in range(a + 1, n + 1) for c in range(b + 1, n + 1)]
    return [Relation("H_{a,b,c} = [r_ab, r_ac]_+ + [r_ac, r_bc]_+ + [r_ab, r_bc]_+ = 0",
                     [(f"a={a},b={b},c={c}",
                       anticommutator(r(a, b), r(a, c)) + anticommutator(r(a, c), r(b, c))
                       + anticommutator(r(a, b), r(b, c)))
                      for a, b, c in triples])]


def _b_op(i: int, n: int) -> OperatorExpr:
    return op_sum(*[_g("r", i, k) for k in range(1, n + 1) if k != i])


def double_sum_relation(n: int) -> Relation:
    return Relation("sum_i (sum_{k != i} r_{i,k})^2 = 0",
                    [("all", op_sum(*[_b_op(i, n) @ _b_op(i, n) for i in range(1, n + 1)]))])


def laplacian_relations(ctx: EvalContext) -> List[Relation]:
    n = ctx.config.n
    ring = ctx.config
    t = ctx.odd.t
    a = lambda i: _g("delta", i)
    tau = lambda i: _g("tau", i)
    pairs = [(i, k) for i in range(1, n + 1) for k in range(1, n + 1) if i != k]

    def prep(i, k):
        clear = gen("mul", poly=ring.x(i, 2) - ring.x(k, 2))
        lhs = clear @ _g("xinv", i) @ commutator(_g("r", i, k), tau(i))
        rhs = (_g("s", i, k) @ (tau(i) + tau(k))
               - _g("xinv", i) @ _g("x", k) @ _g("s", i, k) @ (tau(i) - tau(k))
               - scale(2, IDENTITY))
        return lhs - rhs

    laplacian = op_sum(*[_g("eta", i) @ _g("eta", i) for i in range(1, n + 1)])
    rhs = scale(t * t, op_sum(*[_g("xinv", i) @ _g("xinv", i) @ (IDENTITY - tau(i)) for i in range(1, n + 1)]))

    def u_terms(f: SkewPoly) -> SkewPoly:
        total = eval_expr(laplacian, f, ctx)
        return SkewPoly(ring, {k: c for k, c in total.terms.items() if k[1][2] != 0}, canonical=False)

    return [
        double_sum_relation(n),
        Relation("sum_i (A_i B_i + B_i A_i) = 0",
                 [("all", op_sum(*[anticommutator(a(i), _b_op(i, n)) for i in range(1, n + 1)]))]),
        Relation("(x_i^2 - x_k^2) x_i^{-1} [r_{i,k}, tau_i] = s_{i,k}(tau_i + tau_k)"
                 " - x_i^{-1} x_k s_{i,k}(tau_i - tau_k) - 2",
                 [(f"i={i},k={k}", prep(i, k)) for i, k in pairs]),
        Relation("sum_i eta_i^2: all u-dependent terms cancel", [("all", u_terms)]),
        Relation("sum_i eta_i^2 = t^2 sum_i x_i^{-2} (1 - tau_i)", [("all", laplacian - rhs)]),
    ]


def sl2_relations(n: int) -> List[Relation]:
    E, R2, L = _g("euler"), _g("r2"), _g("lap")
    return [
        Relation("[E, r^2] = 2 r^2", [("all", commutator(E, R2) - scale(2, R2))]),
        Relation("[E, Delta] = -2 Delta", [("all", commutator(E, L) + scale(2, L))]),
        Relation("[r^2, Delta] = E", [("all", commutator(R2, L) - E)]),
    ]


def cherednik_relations(n: int) -> List[Relation]:
    Y = lambda i: _g("Y", i)
    s = lambda i: _g("s", i, i + 1)
    rng = range(1, n)
    idx = range(1, n + 1)
    return [
        Relation("Y_i Y_j = Y_j Y_i",
                 [(f"i={i},j={j}", commutator(Y(i), Y(j))) for i in idx for j in idx if i < j]),
        Relation("s_i Y_i = Y_{i+1} s_i - 1",
                 [(f"i={i}", s(i) @ Y(i) - Y(i + 1) @ s(i) + IDENTITY) for i in rng]),
        Relation("s_i Y_{i+1} = Y_i s_i + 1",
                 [(f"i={i}", s(i) @ Y(i + 1) - Y(i) @ s(i) - IDENTITY) for i in rng]),
        Relation("s_i Y_j = Y_j s_i (j != i, i+1)",
                 [(f"i={i},j={j}", s(i) @ Y(j) - Y(j) @ s(i)) for i in rng for j in idx if j not in (i, i + 1)]),
    ]


def q_nilhecke_relations(n: int) -> List[Relation]:
    d = lambda i: _g("qdel", i)
    x = lambda i: _g("x", i)
    q = ParamScalar.gen("q")
    rng = range(1, n)
    idx = range(1, n + 1)
    return [
        Relation("del_i^2 = 0", [(f"i={i}", d(i) @ d(i)) for i in rng]),
        Relation("del_j del_i - q del_i del_j = 0 (j > i+1)",
                 [(f"i={i},j={j}", d(j) @ d(i) - scale(q, d(i) @ d(j))) for i in rng for j in rng if j > i + 1]),
        Relation("x_j x_i = q x_i x_j (i < j)",
                 [(f"i={i},j={j}", x(j) @ x(i) - scale(q, x(i) @ x(j))) for i in idx for j in idx if i < j]),
        Relation("del_i x_j - q x_j del_i = 0 (j > i+1)",
                 [(f"i={i},j={j}", d(i) @ x(j) - scale(q, x(j) @ d(i))) for i in rng for j in idx if j > i + 1]),
        Relation("q del_i x_j - x_j del_i = 0 (j < i)",
                 [(f"i={i},j={j}", scale(q, d(i) @ x(j)) - x(j) @ d(i)) for i in rng for j in idx if j < i]),
        Relation("del_i x_i - q x_{i+1} del_i = q",
                 [(f"i={i}", d(i) @ x(i) - scale(q, x(i + 1) @ d(i)) - scale(q, IDENTITY)) for i in rng]),
        Relation("x_i del_i - q del_i x_{i+1} = q",
                 [(f"i={i}", x(i) @ d(i) - scale(q, d(i) @ x(i + 1)) - scale(q, IDENTITY)) for i in rng]),
        Relation("del_i del_{i+1} del_i del_{i+1} del_i del_{i+1} + del_{i+1} del_i del_{i+1} del_i del_{i+1} del_i = 0",
                 [(f"i={i}", compose(*[d(i), d(i + 1)] * 3) + compose(*[d(i + 1), d(i)] * 3))
                  for i in range(1, n - 1)]),
    ]


# --------------------------------------------------------------------------
# non-sweep facts
# --------------------------------------------------------------------------

def _expect(got, want) -> Optional[str]:
    return None if got == want else f"got {got}, expected {want}"


def q_kernel_fact(n: int, modulus: Optional[int] = None) -> Fact:
    checks = []
    for m in range(2, n + 1):
        qctx = qops.QPolyContext.make(m, modulus)
        for k in range(0, m + 1):
            for i in range(1, m):
                def chk(i=i, k=k, qctx=qctx):
                    res = qops.q_divided_difference(i, qops.elementary_qsym(k, True, qctx))
                    return None if res.is_zero() else str(res)
                checks.append((f"n={m},i={i},k={k}", chk))
    return Fact("del_i(twisted e_k) = 0", checks)


def nsym_facts(max_size: int = 6) -> List[Fact]:
    H = nsymq.NSymElement.h
    comps = {d: list(nsymq.compositions(d)) for d in range(max_size + 1)}

    def oracle_checks():
        out = []
        for d in range(max_size + 1):
            for a in comps[d]:
                for b in comps[d]:
                    out.append((f"{a} {b}", lambda a=a, b=b: _expect(
                        nsymq.pairing_words(a, b), nsymq.pairing_coset_oracle(a, b))))
        return out

    def adjoint_checks():
        out = []
        for d in range(max_size + 1):
            for xc in comps[d]:
                def chk(xc=xc, d=d):
                    cop = nsymq.coproduct(H(*xc))
                    for d1 in range(d + 1):
                        for a in comps[d1]:
                            for b in comps[d - d1]:
                                lhs = nsymq.tensor_pairing(nsymq.TensorElement.pure(H(*a), H(*b)), cop)
                                rhs = nsymq.pairing(H(*a) * H(*b), H(*xc))
                                if lhs != rhs:
                                    return f"y1={a}, y2={b}: {lhs} != {rhs}"
                    return None
                out.append((f"x={xc}", chk))
        return out

    def indicator(nn, lam):
        want = 1 if lam == (1,) * nn else 0
        return _expect(nsymq.pairing(H(*lam), nsymq.elementary_e(nn)), nsymq.scalar(want))

    def delta_e(nn):
        rhs = nsymq.TensorElement({})
        for k in range(nn + 1):
            rhs = rhs + nsymq.TensorElement.pure(nsymq.elementary_e(k), nsymq.elementary_e(nn - k))
        return _expect(nsymq.coproduct(nsymq.elementary_e(nn)), rhs)

    printed_p72 = ParamScalar({(d, 0, 0, 0): c for d, c in
                               enumerate((1, 1, 2, 2, 3, 3, 3, 2, 2, 1, 1))})
    printed_pair = ParamScalar({(0, 0, 0, 0): 1, (2, 0, 0, 0): 2, (3, 0, 0, 0): 1})
    return [
        Fact("(h_121, h_22) = 1 + 2q^2 + q^3", [
            ("matrix", lambda: _expect(nsymq.pairing_words((1, 2, 1), (2, 2)), printed_pair)),
            ("coset", lambda: _expect(nsymq.pairing_coset_oracle((1, 2, 1), (2, 2)), printed_pair))]),
        Fact("matrix pairing = double-coset pairing", oracle_checks()),
        Fact("(e_n, e_n) = q^{-C(n,2)}",
             [(f"n={k}", lambda k=k: _expect(nsymq.pairing(nsymq.elementary_e(k), nsymq.elementary_e(k)),
                                             q_power(-comb(k, 2)))) for k in range(1, 6)]),
        Fact("(h_lam, e_n) = [lam = 1^n]",
             [(f"lam={lam}", lambda nn=nn, lam=lam: indicator(nn, lam))
              for nn in range(1, 6) for lam in nsymq.compositions(nn)]),
        Fact("sum_i (-1)^i q^{C(i,2)} e_i h_{k-i} = 0",
             [(f"k={k}", lambda k=k: None if nsymq.elementary_recursion_residual(k).is_zero()
               else str(nsymq.elementary_recursion_residual(k))) for k in range(1, 7)]),
        Fact("Delta(e_n) = sum_k e_k # e_{n-k}", [(f"n={k}", lambda k=k: delta_e(k)) for k in range(0, 6)]),
        Fact("(y1 # y2, Delta x) = (y1 y2, x)", adjoint_checks()),
        Fact("P(7,2) = printed polynomial = [7 choose 2]_q", [
            ("printed", lambda: _expect(nsymq.split_weight_polynomial(7, 2), printed_p72)),
            ("gaussian", lambda: _expect(nsymq.split_weight_polynomial(7, 2), gaussian_binomial(7, 2)))]),
    ]


def insertion_facts(max_lam: int = 4, max_x: int = 3) -> List[Fact]:
    H = nsymq.NSymElement.h
    q2 = q_power(2)

    def example(xc):
        x = H(*xc)
        want = nsymq.pairing(H(1, 1, 3), x) + q2 * nsymq.pairing(H(1, 2, 2), x)
        for method in nsymq.INSERTION_METHODS:
            got = nsymq.insertion_pairing((2, 3), 1, x, (1,), method)
            if got != want:
                return f"{method}: {got} != {want}"
        return None

    def agree(lam, k, prefix):
        base = nsymq.insertion_recursive(lam, k, prefix)
        variants = {"direct": nsymq.insertion_direct(lam, k, prefix),
                    "closed": nsymq.insertion_closed(lam, k, prefix)}
        for m in range(1, len(lam) + 1):
            variants[f"explicit m={m}"] = nsymq.insertion_explicit(lam, k, m, prefix)
        for name, val in variants.items():
            if val != base:
                return f"{name}: {val} != {base}"
        if not prefix:
            for d in range(max_x + 1):
                for xc in nsymq.compositions(d):
                    x = H(*xc)
                    direct = nsymq.pairing(H(*lam), nsymq.elementary_e(k) * x)
                    if direct != nsymq.pairing(base, x):
                        return f"pairing with x={xc}: {direct} != {nsymq.pairing(base, x)}"
        return None

    def split(n, m, k, reverse):
        P = nsymq.split_weight_polynomial
        ones = lambda c: (1,) * c
        if reverse:
            lhs = nsymq.insertion_recursive((m,) + ones(n), k)
            rhs = (nsymq.NSymElement.word((m,) + ones(n - k)).scale(P(n, k) * q_power(m * k))
                   + nsymq.NSymElement.word((m - 1,) + ones(n - k + 1)).scale(P(n, k - 1) * q_power((m - 1) * (k - 1))))
        else:
            lhs = nsymq.insertion_recursive(ones(n) + (m,), k)
            rhs = (nsymq.NSymElement.word(ones(n - k) + (m,)).scale(P(n, k))
                   + nsymq.NSymElement.word(ones(n - k + 1) + (m - 1,)).scale(P(n, k - 1) * q_power(n - k + 1)))
        for j in range(n + m + 1):
            x = H(j)
            if nsymq.pairing(lhs, x) != nsymq.pairing(rhs, x):
                return f"x=h_{j}: {nsymq.pairing(lhs, x)} != {nsymq.pairing(rhs, x)}"
        return None

    agree_checks = []
    for d in range(max_lam + 1):
        for lam in nsymq.compositions(d):
            for k in range(0, len(lam) + 2):
                for prefix in ((), (1,), (2, 1)):
                    agree_checks.append((f"lam={lam},k={k},prefix={prefix}",
                                         lambda lam=lam, k=k, prefix=prefix: agree(lam, k, prefix)))
    split_checks = [(f"{'reversed ' if rev else ''}n={n},m={m},k={k}",
                     lambda n=n, m=m, k=k, rev=rev: split(n, m, k, rev))
                    for rev in (False, True) for n in range(0, 5) for m in range(1, 4) for k in range(0, n + 2)]
    return [
        Fact("(h_2 h_3, e_1 x)_{h_1} = (h_113, x) + q^2 (h_122, x)",
             [(f"x=h{xc}", lambda xc=xc: example(xc)) for xc in ((5,), (4, 1), (3, 2))]),
        Fact("recursive = explicit (every m) = closed = coproduct expansion", agree_checks),
        Fact("(h_1^n h_m, e_k x) and (h_m h_1^n, e_k x) splitting", split_checks),
    ]


CENTRALITY_CASES = ((2, 1), (2, 2), (3, 1), (3, 2), (4, 2))


def roots_of_unity_facts(modulus: Optional[int] = None) -> List[Fact]:
    cases = [(n, m, n) for n, m in CENTRALITY_CASES]
    cases.append((4, 2, 2))
    if modulus is not None:
        cases = [(n, m, mod) for n, m, mod in cases if mod == modulus] or \
                [(modulus, m, modulus) for m in (1, 2)]

    def central(n, m, mod):
        a, b = nsymq.centrality_pair(n, m, mod)
        w = nsymq.radical_witness(a - b, n + m)
        return None if w is None else f"pairs nontrivially with h{w[0]}: {w[1]}"

    facts = [Fact("h_1^n h_m = h_m h_1^n modulo the radical when q^n = 1",
                  [(f"n={n},m={m},modulus={mod}", lambda n=n, m=m, mod=mod: central(n, m, mod))
                   for n, m, mod in cases])]
    if modulus in (None, 3):
        def deg6():
            w = nsymq.radical_witness(nsymq.degree_six_relation(3), 6)
            return None if w is None else f"pairs nontrivially with h{w[0]}: {w[1]}"
        facts.append(Fact("v1 + q^2 v2 + q v3 = 0 modulo the radical at q^3 = 1", [("modulus=3", deg6)]))
    return facts


def factorization_fact(ns: Sequence[int] = (1, 3, 5, 7)) -> Fact:
    def chk(n):
        rep = oddops.factorization_check(n)
        return None if rep.passed else rep.residual
    return Fact("x1^n - x2^n = (x1 + a x2) sum_k v_k a^k x1^{n-1-k} x2^k",
                [(f"n={n}", lambda n=n: chk(n)) for n in ns])


# --------------------------------------------------------------------------
# suites
# --------------------------------------------------------------------------

SUITE_DEFAULTS: Dict[str, Dict[str, Any]] = {
    "odd_nilhecke": {"n": 4, "max_deg": 6, "mode": ODD},
    "r_relations": {"n": 4, "max_deg": 6, "mode": ODD},
    "cybe": {"n": 4, "max_deg": 5, "mode": ODD},
    "laplacian": {"n": 3, "max_deg": 6, "mode": ODD},
    "sl2": {"n": 2, "max_deg": 5, "mode": ODD},
    "cherednik": {"n": 3, "max_deg": 4, "mode": ODD},
    "q_nilhecke": {"n": 4, "max_deg": 5, "mode": QMODE},
    "q_kernel": {"n": 4},
    "nsym_pairing": {"max_deg": 6},
    "insertion": {},
    "roots_of_unity": {},
    "factorization": {},
}

SUITES = tuple(SUITE_DEFAULTS)

_SWEEP_BUILDERS = {
    "odd_nilhecke": lambda ctx: odd_nilhecke_relations(ctx.config.n),
    "r_relations": lambda ctx: r_relations(ctx.config.n),
    "cybe": lambda ctx: cybe_relations(ctx.config.n),
    "laplacian": laplacian_relations,
    "sl2": lambda ctx: sl2_relations(ctx.config.n),
    "cherednik": lambda ctx: cherednik_relations(ctx.config.n),
    "q_nilhecke": lambda ctx: q_nilhecke_relations(ctx.config.n),
}


def suite_relations(name: str, n: int, mode: str = ODD, modulus: Optional[int] = None,
                    coupling: str = "inverse") -> Tuple[EvalContext, List[Relation]]:
    ctx = EvalContext.make(n, mode, modulus, coupling)
    return ctx, _SWEEP_BUILDERS[name](ctx)


def run_suite(name: str, n: Optional[int] = None, max_deg: Optional[int] = None,
              modulus: Optional[int] = None, workers: Optional[int] = None,
              coupling: str = "inverse") -> List[RelationReport]:
    """Run every relation of a named suite; reports come back in a fixed order."""
    if name not in SUITE_DEFAULTS:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    defaults = SUITE_DEFAULTS[name]
    n = defaults.get("n") if n is None else n
    max_deg = defaults.get("max_deg") if max_deg is None else max_deg
    if name in _SWEEP_BUILDERS:
        ctx, rels = suite_relations(name, n, defaults["mode"], modulus, coupling)
        return [check_relation(r, ctx, max_deg, suite=name, workers=workers) for r in rels]
    if name == "q_kernel":
        return [check_fact(q_kernel_fact(n, modulus), name, {"n": n, "modulus": modulus})]
    if name == "nsym_pairing":
        return [check_fact(f, name, {"max_deg": max_deg}) for f in nsym_facts(max_deg)]
    if name == "insertion":
        return [check_fact(f, name) for f in insertion_facts()]
    if name == "roots_of_unity":
        return [check_fact(f, name, {"modulus": modulus}) for f in roots_of_unity_facts(modulus)]
    if name == "factorization":
        return [check_fact(factorization_fact(), name)]
    raise AssertionError(name)


# --------------------------------------------------------------------------
# negative controls
# --------------------------------------------------------------------------

_INJECTIVE = ("id", "s", "tau", "x")


def perturb(rel: Relation, rng: random.Random, n: int) -> Relation:
    """Add a nonzero multiple of an injective operator to one instance of ``rel``.

    Injective perturbations cannot vanish on the whole basis, so a sound sweep
    must report every perturbed relation as failing.
    """
    label, ev = rng.choice([inst for inst in rel.instances if isinstance(inst[1], OperatorExpr)])
    delta = rng.choice([-3, -2, -1, 1, 2, 3])
    kind = rng.choice(_INJECTIVE)
    if kind == "id":
        extra = IDENTITY
    elif kind == "s":
        i, k = rng.sample(range(1, n + 1), 2)
        extra = gen("s", i, k)
    else:
        extra = gen(kind, rng.randint(1, n))
    new = ev + scale(delta, extra)
    sign = "+" if delta > 0 else "-"
    return Relation(f"{rel.name} {sign} {abs(delta)}*{render_expr(extra)}", [(label, new)])


def negative_controls(count: int = 50, seed: int = 0, n: int = 3, max_deg: int = 3,
                      workers: Optional[int] = None) -> List[RelationReport]:
    rng = random.Random(seed)
    ctx = EvalContext.make(n)
    pool = (odd_nilhecke_relations(n) + r_relations(n) + cybe_relations(n)
            + sl2_relations(n) + cherednik_relations(n))
    pool = [r for r in pool if any(isinstance(ev, OperatorExpr) for _, ev in r.instances)]
    reports = []
    for _ in range(count):
        rel = perturb(rng.choice(pool), rng, n)
        reports.append(check_relation(rel, ctx, max_deg, suite="negative_control", workers=workers))
    return reports


def reports_to_jsonl(reports: Sequence[RelationReport], include_time: bool = True) -> str:
    return "\n".join(r.to_json(include_time) for r in reports)


def reports_to_text(reports: Sequence[RelationReport]) -> str:
    return "\n".join(r.to_text() for r in reports)


__all__ = [
    "OperatorExpr", "gen", "compose", "op_sum", "scale", "commutator", "anticommutator", "IDENTITY",
    "EvalContext", "eval_expr", "RelationReport", "Relation", "Fact", "check_relation", "check_zero",
    "check_fact", "run_suite", "SUITES", "negative_controls", "perturb", "render_expr",
    "reports_to_jsonl", "reports_to_text",
]
