"""Standard-model semantics over the naturals.

`ev_desc` interprets function descriptions exactly by their defining
clauses: z and s are unary, cn is composition, pr is primitive recursion
on the last argument.  All values are arbitrary-precision ints.

Two performance layers sit behind the same contract:

* an *intrinsic* table mapping specific well-known description objects
  (registered by the coding module) to native implementations.  A pr loop
  runs its last argument's value many iterations, so e.g. division by
  bounded search is hopeless on large inputs; the intrinsic computes the
  identical function directly.  Agreement between the two paths on small
  inputs is part of the test suite.
* a memo table keyed by object identity and argument tuple, including
  every prefix of a pr loop, so recursive towers re-evaluate cheaply.

`pure=True` disables both layers for cross-checking.
"""

from __future__ import annotations

import enum
import sys
from typing import Callable, Iterable

from .syntax import (
    And,
    App,
    ArityMismatch,
    BForall,
    Bot,
    Cn,
    Eq,
    Exists,
    Formula,
    FuncDesc,
    Lt,
    Or,
    Pr,
    Proj,
    S,
    Sequent,
    Term,
    Top,
    UnboundVariable,
    Var,
    Z,
    Zero,
    arity,
)

sys.setrecursionlimit(max(sys.getrecursionlimit(), 40000))

Env = dict[str, int]

DEFAULT_FUEL = 1000


class Truth(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"


TRUE, FALSE, UNKNOWN = Truth.TRUE, Truth.FALSE, Truth.UNKNOWN


# Intrinsic fast paths, keyed by description identity; the table also pins
# the descriptions so ids stay valid.
_INTRINSICS: dict[int, Callable[..., int]] = {}
_INTRINSIC_PINS: dict[int, FuncDesc] = {}

_MEMO: dict[tuple[int, tuple[int, ...]], int] = {}
_MEMO_PINS: dict[int, FuncDesc] = {}
_MEMO_LIMIT = 1 << 21


def register_intrinsic(d: FuncDesc, fn: Callable[..., int]) -> FuncDesc:
    _INTRINSICS[id(d)] = fn
    _INTRINSIC_PINS[id(d)] = d
    return d


def clear_memo() -> None:
    _MEMO.clear()
    _MEMO_PINS.clear()


class suppress_intrinsics:
    """Temporarily drop the fast paths for the given descriptions, so
    their combinator structure is exercised (their sub-descriptions keep
    theirs).  The memo is cleared on entry and exit."""

    def __init__(self, *descs: FuncDesc):
        self.ids = [id(d) for d in descs]
        self.saved: dict[int, Callable[..., int]] = {}

    def __enter__(self):
        clear_memo()
        for i in self.ids:
            if i in _INTRINSICS:
                self.saved[i] = _INTRINSICS.pop(i)
        return self

    def __exit__(self, *exc):
        _INTRINSICS.update(self.saved)
        clear_memo()
        return False


def ev_desc(d: FuncDesc, args: Iterable[int], pure: bool = False) -> int:
    """Evaluate a description on a tuple of naturals."""
    args = tuple(args)
    if len(args) != arity(d):
        raise ArityMismatch(f"description of arity {arity(d)} applied to {len(args)} arguments")
    if any(a < 0 for a in args):
        raise ValueError("descriptions act on naturals only")
    if pure:
        return _ev_pure(d, args)
    return _ev(d, args)


def _ev(d: FuncDesc, args: tuple[int, ...]) -> int:
    fn = _INTRINSICS.get(id(d))
    if fn is not None:
        return fn(*args)
    match d:
        case Z():
            return 0
        case S():
            return args[0] + 1
        case Proj(k=k):
            return args[k - 1]
        case Cn(h=h, gs=gs):
            key = (id(d), args)
            hit = _MEMO.get(key)
            if hit is not None:
                return hit
            val = _ev(h, tuple(_ev(g, args) for g in gs))
            _memo_put(key, val, d)
            return val
        case Pr(g=g, h=h):
            xs, y = args[:-1], args[-1]
            key = (id(d), args)
            hit = _MEMO.get(key)
            if hit is not None:
                return hit
            # Resume from the deepest memoized prefix of this loop: acc holds
            # the value at index `at`, and the step counter equals that index.
            at = 0
            acc = None
            z = y - 1
            floor = max(0, y - 2048)
            while z >= floor:
                prior = _MEMO.get((id(d), xs + (z,)))
                if prior is not None:
                    at = z
                    acc = prior
                    break
                z -= 1
            if acc is None:
                acc = _ev(g, xs)
                _memo_put((id(d), xs + (0,)), acc, d)
            for z in range(at, y):
                acc = _ev(h, xs + (z, acc))
                _memo_put((id(d), xs + (z + 1,)), acc, d)
            return acc
    raise ArityMismatch(f"not a description: {d!r}")


def _memo_put(key, val, d) -> None:
    if len(_MEMO) >= _MEMO_LIMIT:
        clear_memo()
    _MEMO[key] = val
    _MEMO_PINS[key[0]] = d


def _ev_pure(d: FuncDesc, args: tuple[int, ...]) -> int:
    match d:
        case Z():
            return 0
        case S():
            return args[0] + 1
        case Proj(k=k):
            return args[k - 1]
        case Cn(h=h, gs=gs):
            return _ev_pure(h, tuple(_ev_pure(g, args) for g in gs))
        case Pr(g=g, h=h):
            xs, y = args[:-1], args[-1]
            acc = _ev_pure(g, xs)
            for z in range(y):
                acc = _ev_pure(h, xs + (z, acc))
            return acc
    raise ArityMismatch(f"not a description: {d!r}")


def ev_term(t: Term, env: Env, pure: bool = False) -> int:
    match t:
        case Zero():
            return 0
        case Var(name=v):
            if v not in env:
                raise UnboundVariable(v)
            return env[v]
        case App(f=f, args=args):
            return ev_desc(f, (ev_term(a, env, pure) for a in args), pure=pure)
    raise TypeError(f"not a term: {t!r}")


def _and3(a: Truth, b: Truth) -> Truth:
    if a is FALSE or b is FALSE:
        return FALSE
    if a is UNKNOWN or b is UNKNOWN:
        return UNKNOWN
    return TRUE


def _or3(a: Truth, b: Truth) -> Truth:
    if a is TRUE or b is TRUE:
        return TRUE
    if a is UNKNOWN or b is UNKNOWN:
        return UNKNOWN
    return FALSE


def ev_formula(f: Formula, env: Env, fuel: int = DEFAULT_FUEL) -> Truth:
    """Three-valued truth in the standard model.

    Existentials search witnesses in [0, fuel] and are fail-safe: they
    report TRUE on a witness and UNKNOWN otherwise, never FALSE, since
    truth of a sigma-1 formula is only semi-decidable.  Everything
    without an existential is decided exactly.
    """
    match f:
        case Top():
            return TRUE
        case Bot():
            return FALSE
        case Eq(left=a, right=b):
            return TRUE if ev_term(a, env) == ev_term(b, env) else FALSE
        case Lt(left=a, right=b):
            return TRUE if ev_term(a, env) < ev_term(b, env) else FALSE
        case And(left=a, right=b):
            va = ev_formula(a, env, fuel)
            if va is FALSE:
                return FALSE
            return _and3(va, ev_formula(b, env, fuel))
        case Or(left=a, right=b):
            va = ev_formula(a, env, fuel)
            if va is TRUE:
                return TRUE
            return _or3(va, ev_formula(b, env, fuel))
        case BForall(var=v, bound=t, body=b):
            bound = ev_term(t, env)
            out = TRUE
            inner = dict(env)
            for z in range(bound):
                inner[v] = z
                out = _and3(out, ev_formula(b, inner, fuel))
                if out is FALSE:
                    return FALSE
            return out
        case Exists(var=v, body=b):
            inner = dict(env)
            for w in range(fuel + 1):
                inner[v] = w
                if ev_formula(b, inner, fuel) is TRUE:
                    return TRUE
            return UNKNOWN
    raise TypeError(f"not a formula: {f!r}")


def find_witness(f: Formula, env: Env, fuel: int = DEFAULT_FUEL):
    """Witness tree making f true, or None.

    Shapes mirror the extraction module's witness discipline: atoms give
    None, conjunctions pairs, disjunctions (tag, sub), existentials
    (value, sub), bounded foralls lists of subs.
    """
    match f:
        case Top():
            return ()
        case Bot():
            return None
        case Eq() | Lt():
            return () if ev_formula(f, env, fuel) is TRUE else None
        case And(left=a, right=b):
            wa = find_witness(a, env, fuel)
            if wa is None:
                return None
            wb = find_witness(b, env, fuel)
            if wb is None:
                return None
            return ("pair", wa, wb)
        case Or(left=a, right=b):
            wa = find_witness(a, env, fuel)
            if wa is not None:
                return ("inl", wa)
            wb = find_witness(b, env, fuel)
            if wb is not None:
                return ("inr", wb)
            return None
        case BForall(var=v, bound=t, body=b):
            bound = ev_term(t, env)
            subs = []
            inner = dict(env)
            for z in range(bound):
                inner[v] = z
                w = find_witness(b, inner, fuel)
                if w is None:
                    return None
                subs.append(w)
            return ("list", subs)
        case Exists(var=v, body=b):
            inner = dict(env)
            for value in range(fuel + 1):
                inner[v] = value
                w = find_witness(b, inner, fuel)
                if w is not None:
                    return ("ex", value, w)
            return None
    raise TypeError(f"not a formula: {f!r}")


class CheckResult(enum.Enum):
    OK = "ok"
    COUNTEREXAMPLE = "counterexample"
    UNKNOWN = "unknown"


def check_sequent_instance(sq: Sequent, env: Env, fuel: int = DEFAULT_FUEL) -> CheckResult:
    """Soundness probe of one sequent at one environment."""
    lhs = ev_formula(sq.lhs, env, fuel)
    if lhs is FALSE:
        return CheckResult.OK
    rhs = ev_formula(sq.rhs, env, fuel)
    if rhs is TRUE:
        return CheckResult.OK
    if lhs is TRUE and rhs is FALSE:
        return CheckResult.COUNTEREXAMPLE
    return CheckResult.UNKNOWN
