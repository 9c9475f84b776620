"""Closed-term computation proofs and the closed-sentence prover.

`compute_closed` turns a closed term into its value together with a
kernel proof that the term equals the corresponding numeral, by
unfolding the defining axioms of each description.  `prove_closed`
extends this to closed formulas: witnesses for existentials are found
by minimal search against the evaluator, bounded universals are proved
by splitting z < k into the k numeral cases, disjunctions pick the
first true side.  Failure raises `NotTrue` (for refuted or unverifiable
sentences within the fuel).
"""

from __future__ import annotations

from .dsl import (
    rectx,
    Thm,
    and_i,
    bot_e,
    ball_bind,
    chain,
    cong,
    cut,
    disj_implies,
    ex_i,
    from_top,
    ident,
    or_e,
    or_i1,
    or_i2,
    refl,
    rw_exact,
    rw_lhs,
    strengthen,
    sym,
    trans,
)
from . import lemmas as L
from .lemmas import add, ax_cn_i, ax_pr_succ_i, ax_pr_zero_i, ax_proj_i, lt_def, lt_intro
from .semantics import TRUE, ev_formula, ev_term
from .syntax import (
    And,
    App,
    BForall,
    Bot,
    Cn,
    Eq,
    Exists,
    Formula,
    Lt,
    Or,
    Pr,
    Proj,
    S,
    Term,
    Top,
    Var,
    Z,
    Zero,
    free_vars,
    num,
    numeral_value,
    s,
    substitute,
    term_vars,
)


class NotTrue(Exception):
    """The sentence could not be verified true within the fuel."""


class NotClosed(Exception):
    pass


_COMPUTE_CACHE: dict[tuple[int, tuple[int, ...]], tuple[int, Thm]] = {}
_CACHE_PINS: list = []


def compute_closed(t: Term) -> tuple[int, Thm]:
    """Value of a closed term plus TOP |- t = numeral(value)."""
    if term_vars(t):
        raise NotClosed(f"term {t!r} has free variables")
    match t:
        case Zero():
            return 0, refl(Zero(), ())
        case App(f=S(), args=(a,)):
            v, p = compute_closed(a)
            return v + 1, cong(p, s(Var("H")), "H")
        case App(f=f, args=args):
            vals = []
            eq = refl(t, ())
            cur_args = list(args)
            for i, a in enumerate(args):
                v, p = compute_closed(a)
                vals.append(v)
                if a != num(v):
                    tmpl_args = [
                        num(vals[j]) if j < i else (Var("H") if j == i else cur_args[j])
                        for j in range(len(args))
                    ]
                    eq = trans(eq, cong(p, App(f, tuple(tmpl_args)), "H"))
            vals = tuple(vals)
            v, p = _apply_at_numerals(f, vals)
            return v, trans(eq, p)
    raise NotClosed(f"not a term: {t!r}")


def _apply_at_numerals(f, vals: tuple[int, ...]) -> tuple[int, Thm]:
    """TOP |- f(numerals) = numeral(result)."""
    key = (id(f), vals)
    hit = _COMPUTE_CACHE.get(key)
    if hit is not None:
        return hit
    nums = tuple(num(v) for v in vals)
    match f:
        case Z():
            out = 0, L.inst(_ax_z_generic(), [nums[0]], ())
        case S():
            out = vals[0] + 1, refl(s(nums[0]), ())
        case Proj(n=n, k=k):
            out = vals[k - 1], ax_proj_i(n, k, nums, ())
        case Cn(h=h, gs=gs):
            eq = ax_cn_i(f, nums, ())
            ws = []
            inner = [App(g, nums) for g in gs]
            for i, g in enumerate(gs):
                w, p = _apply_at_numerals(g, vals)
                ws.append(w)
                tmpl_args = [
                    num(ws[j]) if j < i else (Var("H") if j == i else inner[j])
                    for j in range(len(gs))
                ]
                eq = trans(eq, cong(p, App(h, tuple(tmpl_args)), "H"))
            w, p = _apply_at_numerals(h, tuple(ws))
            out = w, trans(eq, p)
        case Pr(g=g, h=h):
            y = vals[-1]
            if y == 0:
                eq = ax_pr_zero_i(f, nums[:-1], ())
                w, p = _apply_at_numerals(g, vals[:-1])
                out = w, trans(eq, p)
            else:
                eq = ax_pr_succ_i(f, nums[:-1], num(y - 1), ())
                w0, p0 = _apply_at_numerals(f, vals[:-1] + (y - 1,))
                hargs = nums[:-1] + (num(y - 1), Var("H"))
                eq = trans(eq, cong(p0, App(h, hargs), "H"))
                w, p = _apply_at_numerals(h, vals[:-1] + (y - 1, w0))
                out = w, trans(eq, p)
        case _:
            raise NotClosed(f"not a description: {f!r}")
    _COMPUTE_CACHE[key] = out
    _CACHE_PINS.append(f)
    return out


from functools import lru_cache


@lru_cache(maxsize=None)
def _ax_z_generic() -> Thm:
    from .dsl import rule

    return rule("ax-z", [], "x")


# ---------------------------------------------------------------------------
# Numeral case splits


@lru_cache(maxsize=None)
def split_cases(k: int) -> Thm:
    """z < numeral(k) |-_z  z = 0 or (z = 1 or ... or z = k-1), for k >= 1."""
    z = Var("z")
    if k < 1:
        raise ValueError("split_cases needs a positive bound")
    if k == 1:
        # z < 1 |- z = 0: via z < s 0 -> z < 0 or z = 0, kill the left
        sc = L.inst(L.lem_lt_succ_cases(), [z, Zero()], ("z",))
        start = cut(ident(Lt(z, num(1)), ("z",)), sc)
        dead = cut(L.inst(L.lem_lt_zero(), [z], ("z",)), bot_e(Eq(z, Zero()), ("z",)))
        return cut(start, or_e(dead, ident(Eq(z, Zero()), ("z",))))
    target = _split_disjunction(k)
    sc = L.inst(L.lem_lt_succ_cases(), [z, num(k - 1)], ("z",))
    start = cut(ident(Lt(z, num(k)), ("z",)), sc)
    rec = cut(split_cases(k - 1), disj_implies(_split_disjunction(k - 1), target, ("z",)))
    last = disj_implies(Eq(z, num(k - 1)), target, ("z",))
    return cut(start, or_e(rec, last))


def _split_disjunction(k: int) -> Formula:
    z = Var("z")
    out: Formula = Eq(z, num(k - 1))
    for i in range(k - 2, -1, -1):
        out = Or(Eq(z, num(i)), out)
    return out


# ---------------------------------------------------------------------------
# The closed prover


def prove_closed(f: Formula, fuel: int = 1000) -> Thm:
    """Kernel proof of TOP |- f for a true closed formula."""
    if free_vars(f):
        raise NotClosed(f"formula {f!r} has free variables")
    match f:
        case Top():
            return ident(Top(), ())
        case Bot():
            raise NotTrue("bot is not provable")
        case Eq(left=a, right=b):
            va, pa = compute_closed(a)
            vb, pb = compute_closed(b)
            if va != vb:
                raise NotTrue(f"{f!r} is false: {va} != {vb}")
            return trans(pa, sym(pb))
        case Lt(left=a, right=b):
            va, pa = compute_closed(a)
            vb, pb = compute_closed(b)
            if va >= vb:
                raise NotTrue(f"{f!r} is false: {va} >= {vb}")
            k = vb - va - 1
            wterm = add(a, s(num(k)))
            _, pw = compute_closed(wterm)
            weq = trans(pw, sym(pb))  # a + s k = b
            e = ex_i(weq, lt_def(a, b, "zw"), num(k))
            return cut(e, lt_intro(a, b, "zw", ()))
        case And(left=a, right=b):
            return and_i(prove_closed(a, fuel), prove_closed(b, fuel))
        case Or(left=a, right=b):
            try:
                return or_i1(prove_closed(a, fuel), b)
            except NotTrue:
                return or_i2(prove_closed(b, fuel), a)
        case Exists(var=y, body=body):
            witness = None
            for n in range(fuel + 1):
                if ev_formula(body, {y: n}, fuel) is TRUE:
                    witness = n
                    break
            if witness is None:
                raise NotTrue(f"no witness for {f!r} within fuel {fuel}")
            sub_proof = prove_closed(substitute(body, {y: num(witness)}), fuel)
            return ex_i(sub_proof, f, num(witness))
        case BForall(var=z, bound=t, body=body):
            k, pk = compute_closed(t)
            if k == 0:
                dead = cut(
                    L.inst(L.lem_lt_zero(), [Var(z)], (z,)),
                    bot_e(body, (z,)),
                )
                inner = strengthen(dead, And(Top(), Lt(Var(z), Zero())))
            else:
                branches = []
                for i in range(k):
                    instp = prove_closed(substitute(body, {z: num(i)}), fuel)
                    hyp = Eq(Var(z), num(i))
                    eq = sym(ident(hyp, (z,)))  # numeral = z
                    target = from_top(rectx(instp, (z,)), hyp)
                    branches.append(rw_exact(target, eq, body, z))
                tree = branches[-1]
                for b in reversed(branches[:-1]):
                    tree = or_e(b, tree)
                split = cut(split_cases(k), tree)  # z < k |- body
                inner = strengthen(split, And(Top(), Lt(Var(z), num(k))))
            if t != num(k):
                inner = rw_lhs(inner, pk, positions=None)
            return ball_bind(inner, z)
    raise NotClosed(f"not a formula: {f!r}")
