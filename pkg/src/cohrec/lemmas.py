"""Derived arithmetic lemmas, each a cached kernel theorem.

Generic lemmas are proved once over canonical variable names and
instantiated by substitution (`inst`).  The axiom-instance helpers at
the top unfold defining equations of specific descriptions at specific
argument terms, which is where most equational reasoning starts.
"""

from __future__ import annotations

from functools import lru_cache

from .coding import ADD
from .dsl import (
    Thm,
    and_i,
    ax_top,
    by_cases,
    case_shape,
    chain,
    cong,
    conj_implies,
    cut,
    ex_i,
    ex_unpack,
    from_top,
    ident,
    ind_l,
    ind_r,
    or_i1,
    or_i2,
    refl,
    rectx,
    rule,
    rw,
    rw_lhs,
    sel,
    strengthen,
    sub,
    sym,
    trans,
    unpack_shape,
)
from .syntax import (
    And,
    App,
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
    Zero,
    arity,
    s,
)


def add(a: Term, b: Term) -> Term:
    return App(ADD, (a, b))


def inst(lemma: Thm, terms, ctx) -> Thm:
    """Instantiate a generic lemma's context variables by terms."""
    return sub(lemma, tuple(terms), tuple(ctx))


# -- axiom instances ----------------------------------------------------------


def ax_proj_i(n: int, k: int, args, ctx) -> Thm:
    names = tuple(f"v{i}" for i in range(1, n + 1))
    return sub(rule("ax-proj", [], n, k, names), tuple(args), tuple(ctx))


def ax_cn_i(d: Cn, args, ctx) -> Thm:
    names = tuple(f"v{i}" for i in range(1, arity(d) + 1))
    return sub(rule("ax-cn", [], d, names), tuple(args), tuple(ctx))


def ax_pr_zero_i(d: Pr, args, ctx) -> Thm:
    names = tuple(f"v{i}" for i in range(1, arity(d.g) + 1))
    return sub(rule("ax-pr-zero", [], d, names), tuple(args), tuple(ctx))


def ax_pr_succ_i(d: Pr, args, ytm: Term, ctx) -> Thm:
    names = tuple(f"v{i}" for i in range(1, arity(d.g) + 1))
    base = rule("ax-pr-succ", [], d, names, "y0")
    return sub(base, tuple(args) + (ytm,), tuple(ctx))


def ax_succ_zero_i(t: Term, ctx) -> Thm:
    return sub(rule("ax-succ-zero", [], "x"), [t], tuple(ctx))


def ax_succ_inj_i(a: Term, b: Term, ctx) -> Thm:
    return sub(rule("ax-succ-inj", [], "x", "y"), [a, b], tuple(ctx))


def ax_seq_i(name: str, args, ctx) -> Thm:
    from .kernel import SEQ_AXIOM_ARITY

    names = tuple(f"v{i}" for i in range(1, SEQ_AXIOM_ARITY[name] + 1))
    return sub(rule("ax-seq", [], name, names), tuple(args), tuple(ctx))


def lt_elim(a: Term, b: Term, z: str, ctx) -> Thm:
    """a < b |- ex z (a + s z = b)."""
    return sub(rule("ax-lt-elim", [], "x", "y", z), [a, b], tuple(ctx))


def lt_intro(a: Term, b: Term, z: str, ctx) -> Thm:
    """ex z (a + s z = b) |- a < b."""
    return sub(rule("ax-lt-intro", [], "x", "y", z), [a, b], tuple(ctx))


def lt_def(a: Term, b: Term, z: str) -> Formula:
    return Exists(z, Eq(add(a, s(Var(z))), b))


# -- unfolding addition -------------------------------------------------------


def add_zero(t: Term, ctx) -> Thm:
    """TOP |- t + 0 = t."""
    base = trans(rule("ax-pr-zero", [], ADD, ("x",)), rule("ax-proj", [], 1, 1, ("x",)))
    return sub(base, [t], tuple(ctx))


@lru_cache(maxsize=None)
def _add_succ_generic() -> Thm:
    # TOP |-_{x,y} x + s y = s (x + y)
    x, y = Var("x"), Var("y")
    a1 = ax_pr_succ_i(ADD, [x], y, ("x", "y"))  # x + s y = h(x, y, x + y)
    a2 = ax_cn_i(ADD.h, [x, y, add(x, y)], ("x", "y"))  # h(...) = s(proj33(...))
    a3 = cong(ax_proj_i(3, 3, [x, y, add(x, y)], ("x", "y")), s(Var("H")), "H")
    return chain(a1, a2, a3)


def add_succ(t: Term, u: Term, ctx) -> Thm:
    """TOP |- t + s u = s (t + u)."""
    return inst(_add_succ_generic(), [t, u], ctx)


# -- the lemma corpus ---------------------------------------------------------


@lru_cache(maxsize=None)
def lem_add_zero_left() -> Thm:
    """TOP |-_x 0 + x = x."""
    zero = Zero()
    x = Var("x")
    phi = Eq(add(zero, x), x)
    base = add_zero(zero, ())
    e1 = from_top(add_succ(zero, x, ("x",)), phi)  # 0 + s x = s (0 + x)
    e2 = cong(ident(phi, ("x",)), s(Var("H")), "H")  # s (0 + x) = s x
    step = strengthen(trans(e1, e2), And(Top(), phi))
    return ind_r(base, step, "x")


@lru_cache(maxsize=None)
def lem_add_succ_left() -> Thm:
    """TOP |-_{x,y} s x + y = s (x + y), by induction on y."""
    x, y = Var("x"), Var("y")
    phi = Eq(add(s(x), y), s(add(x, y)))
    base = trans(
        add_zero(s(x), ("x",)),
        cong(sym(add_zero(x, ("x",))), s(Var("H")), "H"),
    )
    e1 = from_top(add_succ(s(x), y, ("x", "y")), phi)  # s x + s y = s (s x + y)
    e2 = cong(ident(phi, ("x", "y")), s(Var("H")), "H")  # = s s (x + y)
    e3 = from_top(cong(sym(add_succ(x, y, ("x", "y"))), s(Var("H")), "H"), phi)  # = s (x + s y)
    step = strengthen(chain(e1, e2, e3), And(Top(), phi))
    return ind_r(base, step, "y")


@lru_cache(maxsize=None)
def lem_add_comm() -> Thm:
    """TOP |-_{x,y} x + y = y + x, by induction on y."""
    x, y = Var("x"), Var("y")
    phi = Eq(add(x, y), add(y, x))
    base = trans(add_zero(x, ("x",)), sym(inst(lem_add_zero_left(), [x], ("x",))))
    e1 = from_top(add_succ(x, y, ("x", "y")), phi)  # x + s y = s (x + y)
    e2 = cong(ident(phi, ("x", "y")), s(Var("H")), "H")  # = s (y + x)
    e3 = from_top(sym(inst(lem_add_succ_left(), [y, x], ("x", "y"))), phi)  # = s y + x
    step = strengthen(chain(e1, e2, e3), And(Top(), phi))
    return ind_r(base, step, "y")


@lru_cache(maxsize=None)
def lem_add_assoc() -> Thm:
    """TOP |-_{x,y,z} (x + y) + z = x + (y + z), by induction on z."""
    x, y, z = Var("x"), Var("y"), Var("z")
    ctx = ("x", "y", "z")
    phi = Eq(add(add(x, y), z), add(x, add(y, z)))
    base = trans(
        add_zero(add(x, y), ("x", "y")),
        cong(sym(add_zero(y, ("x", "y"))), add(x, Var("H")), "H"),
    )
    e1 = from_top(add_succ(add(x, y), z, ctx), phi)  # (x+y) + s z = s ((x+y) + z)
    e2 = cong(ident(phi, ctx), s(Var("H")), "H")  # = s (x + (y+z))
    e3 = from_top(sym(add_succ(x, add(y, z), ctx)), phi)  # = x + s (y+z)
    e4 = from_top(cong(sym(add_succ(y, z, ctx)), add(x, Var("H")), "H"), phi)  # = x + (y + s z)
    step = strengthen(chain(e1, e2, e3, e4), And(Top(), phi))
    return ind_r(base, step, "z")


@lru_cache(maxsize=None)
def lem_succ_dichotomy() -> Thm:
    """TOP |-_x x = 0 or ex y (x = s y)."""
    x = Var("x")
    exf = Exists("y", Eq(x, s(Var("y"))))
    phi = Or(Eq(x, Zero()), exf)
    base = or_i1(refl(Zero(), ()), Exists("y", Eq(Zero(), s(Var("y")))))
    tgt_ex = Exists("y", Eq(s(x), s(Var("y"))))
    hyp_l = Eq(x, Zero())
    left = or_i2(
        ex_i(cong(ident(hyp_l, ("x",)), s(Var("H")), "H"), tgt_ex, Zero()),
        Eq(s(x), Zero()),
    )
    hyp_r = exf
    scrut = ident(hyp_r, ("x",))
    shape = unpack_shape(scrut, "v")
    inner = ex_i(
        cong(sel(ident(shape, ("x", "v")), Eq(x, s(Var("v")))), s(Var("H")), "H"),
        tgt_ex,
        s(Var("v")),
    )
    right = or_i2(ex_unpack(scrut, inner, "v"), Eq(s(x), Zero()))
    scr = ident(phi, ("x",))
    c1, c2 = case_shape(scr)
    split = by_cases(scr, strengthen(left, c1), strengthen(right, c2))
    step = strengthen(split, And(Top(), phi))
    return ind_r(base, step, "x")


@lru_cache(maxsize=None)
def lem_add_fixpoint() -> Thm:
    """x + y = x |-_{y,x} y = 0, by left induction on x."""
    y, x = Var("y"), Var("x")
    phi = Eq(y, Zero())
    base = rw_lhs(ident(phi, ("y",)), inst(lem_add_zero_left(), [y], ("y",)), {0})
    inj = ax_succ_inj_i(add(x, y), x, ("y", "x"))  # s (x+y) = s x |- x + y = x
    stepcore = or_i2(inj, phi)
    step = rw_lhs(stepcore, inst(lem_add_succ_left(), [x, y], ("y", "x")), {0})
    return ind_l(base, step, "x")


@lru_cache(maxsize=None)
def _lt_zero_core() -> Thm:
    """x + s z = 0 |-_{x,z} bot."""
    x, z = Var("x"), Var("z")
    dead = ax_succ_zero_i(add(x, z), ("x", "z"))  # s (x+z) = 0 |- bot
    return rw_lhs(dead, add_succ(x, z, ("x", "z")), {0})


@lru_cache(maxsize=None)
def lem_lt_zero() -> Thm:
    """x < 0 |-_x bot."""
    x = Var("x")
    scrut = cut(ident(Lt(x, Zero()), ("x",)), lt_elim(x, Zero(), "z", ("x",)))
    shape = unpack_shape(scrut, "z")
    core = inst(_lt_zero_core(), [x, Var("z")], ("x", "z"))
    return ex_unpack(scrut, strengthen(core, shape), "z")


@lru_cache(maxsize=None)
def lem_zero_lt_succ() -> Thm:
    """TOP |-_x 0 < s x."""
    x = Var("x")
    w = trans(
        add_succ(Zero(), x, ("x",)),
        cong(inst(lem_add_zero_left(), [x], ("x",)), s(Var("H")), "H"),
    )
    e = ex_i(w, lt_def(Zero(), s(x), "z"), x)
    return cut(e, lt_intro(Zero(), s(x), "z", ("x",)))


@lru_cache(maxsize=None)
def lem_lt_succ_self() -> Thm:
    """TOP |-_x x < s x."""
    x = Var("x")
    w = trans(add_succ(x, Zero(), ("x",)), cong(add_zero(x, ("x",)), s(Var("H")), "H"))
    e = ex_i(w, lt_def(x, s(x), "z"), Zero())
    return cut(e, lt_intro(x, s(x), "z", ("x",)))


@lru_cache(maxsize=None)
def lem_lt_succ_mono() -> Thm:
    """x < y |-_{x,y} s x < s y."""
    x, y = Var("x"), Var("y")
    scrut = cut(ident(Lt(x, y), ("x", "y")), lt_elim(x, y, "z", ("x", "y")))
    shape = unpack_shape(scrut, "z")
    z = Var("z")
    hyp = Eq(add(x, s(z)), y)
    core = sel(ident(shape, ("x", "y", "z")), hyp)
    weq = trans(
        from_top(inst(lem_add_succ_left(), [x, s(z)], ("x", "y", "z")), shape),
        cong(core, s(Var("H")), "H"),
    )  # s x + s z = s (x + s z) = s y
    e = ex_i(weq, lt_def(s(x), s(y), "z1"), z)
    got = cut(e, lt_intro(s(x), s(y), "z1", ("x", "y", "z")))
    return ex_unpack(scrut, got, "z")


@lru_cache(maxsize=None)
def lem_lt_s_weak() -> Thm:
    """x < y |-_{x,y} x < s y."""
    x, y = Var("x"), Var("y")
    scrut = cut(ident(Lt(x, y), ("x", "y")), lt_elim(x, y, "z", ("x", "y")))
    shape = unpack_shape(scrut, "z")
    z = Var("z")
    hyp = Eq(add(x, s(z)), y)
    core = sel(ident(shape, ("x", "y", "z")), hyp)
    weq = trans(
        from_top(add_succ(x, s(z), ("x", "y", "z")), shape),
        cong(core, s(Var("H")), "H"),
    )  # x + s s z = s (x + s z) = s y
    e = ex_i(weq, lt_def(x, s(y), "z1"), s(z))
    got = cut(e, lt_intro(x, s(y), "z1", ("x", "y", "z")))
    return ex_unpack(scrut, got, "z")


@lru_cache(maxsize=None)
def lem_lt_irrefl() -> Thm:
    """x < x |-_x bot."""
    x = Var("x")
    scrut = cut(ident(Lt(x, x), ("x",)), lt_elim(x, x, "z", ("x",)))
    shape = unpack_shape(scrut, "z")
    z = Var("z")
    core = sel(ident(shape, ("x", "z")), Eq(add(x, s(z)), x))
    fix = inst(lem_add_fixpoint(), [s(z), x], ("x", "z"))
    dead = cut(core, fix, ax_succ_zero_i(z, ("x", "z")))
    return ex_unpack(scrut, dead, "z")


@lru_cache(maxsize=None)
def lem_lt_antisym() -> Thm:
    """x < y and y < x |-_{x,y} bot."""
    x, y = Var("x"), Var("y")
    ctx = ("x", "y")
    gam = And(Lt(x, y), Lt(y, x))
    s1 = cut(sel(ident(gam, ctx), Lt(x, y)), lt_elim(x, y, "z", ctx))
    sh1 = unpack_shape(s1, "z")
    ctx_z = ctx + ("z",)
    s2 = cut(sel(ident(sh1, ctx_z), Lt(y, x)), lt_elim(y, x, "w", ctx_z))
    sh2 = unpack_shape(s2, "w")
    ctx_zw = ctx_z + ("w",)
    z, w = Var("z"), Var("w")
    both = ident(sh2, ctx_zw)
    e_h1 = sel(both, Eq(add(x, s(z)), y))
    e_h2 = sel(both, Eq(add(y, s(w)), x))
    eq1 = from_top(sym(inst(lem_add_assoc(), [y, s(w), s(z)], ctx_zw)), sh2)
    eq2 = cong(e_h2, add(Var("H"), s(z)), "H")
    full = chain(eq1, eq2, e_h1)  # y + (s w + s z) = y
    fix = inst(lem_add_fixpoint(), [add(s(w), s(z)), y], ctx_zw)
    got = cut(full, fix)  # |- s w + s z = 0
    dead = rw_lhs(
        ax_succ_zero_i(add(w, s(z)), ctx_zw),
        inst(lem_add_succ_left(), [w, s(z)], ctx_zw),
        {0},
    )
    core = cut(got, dead)
    inner = ex_unpack(s2, core, "w")
    return ex_unpack(s1, inner, "z")


@lru_cache(maxsize=None)
def lem_lt_eq_bot() -> Thm:
    """x < y and x = y |-_{x,y} bot."""
    x, y = Var("x"), Var("y")
    ctx = ("x", "y")
    gam = And(Lt(x, y), Eq(x, y))
    s1 = cut(sel(ident(gam, ctx), Lt(x, y)), lt_elim(x, y, "z", ctx))
    sh1 = unpack_shape(s1, "z")
    ctx_z = ctx + ("z",)
    z = Var("z")
    both = ident(sh1, ctx_z)
    h1 = sel(both, Eq(add(x, s(z)), y))
    h2 = sel(both, Eq(x, y))
    full = trans(h1, sym(h2))  # x + s z = x
    fix = inst(lem_add_fixpoint(), [s(z), x], ctx_z)
    dead = cut(full, fix, ax_succ_zero_i(z, ctx_z))
    return ex_unpack(s1, dead, "z")


@lru_cache(maxsize=None)
def lem_lt_succ_cases() -> Thm:
    """x < s y |-_{x,y} x < y or x = y."""
    x, y = Var("x"), Var("y")
    ctx = ("x", "y")
    tgt = Or(Lt(x, y), Eq(x, y))
    scrut = cut(ident(Lt(x, s(y)), ctx), lt_elim(x, s(y), "z", ctx))
    sh = unpack_shape(scrut, "z")
    ctx_z = ctx + ("z",)
    z = Var("z")
    core = sel(ident(sh, ctx_z), Eq(add(x, s(z)), s(y)))
    inj = rw_lhs(
        ax_succ_inj_i(add(x, z), y, ctx_z),
        add_succ(x, z, ctx_z),
        {0},
    )  # x + s z = s y |- x + z = y
    xzy = cut(core, inj)  # sh |- x + z = y
    dich = from_top(rectx(inst(lem_succ_dichotomy(), [z], ("z",)), ctx_z), sh)
    c1, c2 = case_shape(dich)
    # z = 0: x = x + 0 = x + z = y
    b1_hx = strengthen(xzy, c1)
    b1_hz = sel(ident(c1, ctx_z), Eq(z, Zero()))
    b1_eq = trans(from_top(sym(add_zero(x, ctx_z)), c1), rw(b1_hx, b1_hz, positions={0}))
    b1 = or_i2(b1_eq, Lt(x, y))
    # z = s u: x + s u = y, so x < y
    scrut2 = sel(ident(c2, ctx_z), Exists("y1", Eq(z, s(Var("y1")))))
    sh2 = unpack_shape(scrut2, "u")
    ctxu = ctx_z + ("u",)
    u = Var("u")
    hz = sel(ident(sh2, ctxu), Eq(z, s(u)))
    hxy = strengthen(rectx(xzy, ctxu), sh2)
    got = rw_lhs_eq(hxy, hz)
    e = ex_i(got, lt_def(x, y, "z1"), u)
    b2 = ex_unpack(scrut2, or_i1(cut(e, lt_intro(x, y, "z1", ctxu)), Eq(x, y)), "u")
    split = by_cases(dich, b1, b2)
    return ex_unpack(scrut, split, "z")


def rw_lhs_eq(target: Thm, eq: Thm) -> Thm:
    """Rewrite the first occurrence of eq's left side in target's
    succedent to its right side."""
    return rw(target, eq, positions={0})


@lru_cache(maxsize=None)
def lem_trichotomy() -> Thm:
    """TOP |-_{x,y} x < y or (x = y or y < x), by induction on y."""
    x, y = Var("x"), Var("y")
    phi = Or(Lt(x, y), Or(Eq(x, y), Lt(y, x)))
    base = _tri_base(x)
    step = _tri_step(x, y, phi)
    return ind_r(base, step, "y")


def _tri_base(x) -> Thm:
    phi0 = Or(Lt(x, Zero()), Or(Eq(x, Zero()), Lt(Zero(), x)))
    dich = inst(lem_succ_dichotomy(), [x], ("x",))
    c1, c2 = case_shape(dich)
    b1 = or_i2(
        or_i1(sel(ident(c1, ("x",)), Eq(x, Zero())), Lt(Zero(), x)),
        Lt(x, Zero()),
    )
    scrut2 = sel(ident(c2, ("x",)), Exists("y", Eq(x, s(Var("y")))))
    sh2 = unpack_shape(scrut2, "v")
    v = Var("v")
    zl = from_top(rectx(inst(lem_zero_lt_succ(), [v], ("v",)), ("x", "v")), sh2)  # 0 < s v
    zl = rw(zl, sym(sel(ident(sh2, ("x", "v")), Eq(x, s(v)))))  # 0 < x
    b2 = ex_unpack(scrut2, or_i2(or_i2(zl, Eq(x, Zero())), Lt(x, Zero())), "v")
    return by_cases(dich, b1, b2)


def _tri_step(x, y, phi) -> Thm:
    ctx = ("x", "y")
    rest = Or(Eq(x, s(y)), Lt(s(y), x))
    hyp_lt = Lt(x, y)
    b_lt = or_i1(cut(ident(hyp_lt, ctx), inst(lem_lt_s_weak(), [x, y], ctx)), rest)
    hyp_eq = Eq(x, y)
    lt_self = from_top(rectx(inst(lem_lt_succ_self(), [y], ("y",)), ctx), hyp_eq)  # y < s y
    b_eq = or_i1(rw(lt_self, sym(ident(hyp_eq, ctx)), positions={0}), rest)
    b_gt = _tri_gt_branch(x, y, ctx)
    scrut = ident(phi, ctx)
    c1, c2 = case_shape(scrut)
    left = strengthen(b_lt, c1)
    inner_scrut = sel(ident(c2, ctx), Or(hyp_eq, Lt(y, x)))
    i1, i2 = case_shape(inner_scrut)
    right = by_cases(inner_scrut, strengthen(b_eq, i1), strengthen(b_gt, i2))
    split = by_cases(scrut, left, right)
    return strengthen(split, And(Top(), phi))


def _tri_gt_branch(x, y, ctx) -> Thm:
    """y < x |- x < s y or (x = s y or s y < x)."""
    scrut = cut(ident(Lt(y, x), ctx), lt_elim(y, x, "z", ctx))
    sh = unpack_shape(scrut, "z")
    ctx_z = ctx + ("z",)
    z = Var("z")
    hyp = Eq(add(y, s(z)), x)  # y + s z = x
    dich = from_top(rectx(inst(lem_succ_dichotomy(), [z], ("z",)), ctx_z), sh)
    c1, c2 = case_shape(dich)
    # z = 0: x = y + s 0 = s (y + 0) = s y, middle disjunct
    h1 = strengthen(sel(ident(sh, ctx_z), hyp), c1)
    hz = sel(ident(c1, ctx_z), Eq(z, Zero()))
    e = chain(
        sym(rw(h1, hz, positions={0})),  # x = y + s 0
        from_top(add_succ(y, Zero(), ctx_z), c1),  # = s (y + 0)
        cong(from_top(add_zero(y, ctx_z), c1), s(Var("H")), "H"),  # = s y
    )
    b1 = or_i2(or_i1(e, Lt(s(y), x)), Lt(x, s(y)))
    # z = s u: s y + s u = x, last disjunct
    scrut2 = sel(ident(c2, ctx_z), Exists("y1", Eq(z, s(Var("y1")))))
    sh2 = unpack_shape(scrut2, "u")
    ctxu = ctx_z + ("u",)
    u = Var("u")
    hz2 = sel(ident(sh2, ctxu), Eq(z, s(u)))
    h2 = strengthen(rectx(sel(ident(sh, ctx_z), hyp), ctxu), sh2)
    got = rw_hyp_subst(h2, hz2)
    e2 = chain(
        from_top(inst(lem_add_succ_left(), [y, s(u)], ctxu), sh2),  # s y + s u = s (y + s u)
        from_top(sym(add_succ(y, s(u), ctxu)), sh2),  # = y + s s u
        got,  # = x
    )
    exi = ex_i(e2, lt_def(s(y), x, "z1"), u)
    ltyx = cut(exi, lt_intro(s(y), x, "z1", ctxu))
    b2 = ex_unpack(scrut2, or_i2(or_i2(ltyx, Eq(x, s(y))), Lt(x, s(y))), "u")
    return ex_unpack(scrut, by_cases(dich, b1, b2), "z")


def sym_hyp(t: Thm) -> Thm:
    return sym(t)


def rw_hyp_subst(target: Thm, eq: Thm) -> Thm:
    """Rewrite eq's left side to its right side everywhere in the
    succedent of target."""
    return rw(target, eq)
