"""The internal recursor: iteration of a provably functional step.

`rec_formula` builds the formula asserting that y is the n-th iterate
of theta starting from gamma's value: there is a coded list of length
n+1 whose head is gamma's output, whose consecutive entries are related
by theta, and whose last entry is y.

`rec_obligations` generates the kernel proofs making this a morphism
from (domain x N) to the codomain: respect for domain and codomain,
uniqueness of value, totality by induction, the zero-case triangle, the
successor-case square, and uniqueness of the mediating morphism against
any candidate with the same triangle and square, via the disjunctive
invariant n < i or sigma(x, i, (l)_i), proved by right induction on i.

Both generators are schematic in the supplied functional formulas.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import coding
from .coding import APPEND1, DROPLAST, IDX, LH, MONUS, PRED, SINGLETON
from .dsl import (
    Thm,
    and_i,
    and_l,
    and_r,
    ball_bind,
    ball_elim_at,
    bot_e,
    by_cases,
    case_shape,
    chain,
    cong,
    conj_implies,
    cut,
    ex_i,
    ex_mono,
    ex_unpack,
    from_top,
    ident,
    ind_r,
    or_e,
    or_i1,
    or_i2,
    rectx,
    refl,
    rule,
    rw,
    rw_exact,
    rw_lhs,
    sel,
    strengthen,
    sub,
    sym,
    trans,
    unpack_shape,
)
from .kernel import CheckedSequent, check_proof
from . import lemmas as L
from .lemmas import ax_cn_i, ax_pr_succ_i, ax_pr_zero_i, ax_proj_i, ax_seq_i, inst
from .syntax import (
    And,
    App,
    BForall,
    Bot,
    Eq,
    Exists,
    Formula,
    Lt,
    Or,
    Proj,
    Sequent,
    Term,
    Top,
    Var,
    Zero,
    alpha_eq,
    free_vars,
    num,
    s,
    substitute,
)


class ContextShape(Exception):
    """Functional formulas here carry single-variable contexts."""


@dataclass(frozen=True)
class FunctionalFormula:
    """A provably functional formula between single-variable objects.

    The three theorems are the functionality conditions: the graph
    respects domain and codomain, every point has a value, and values
    are unique.
    """

    formula: Formula
    xvar: str
    yvar: str
    domain: Formula
    codomain: Formula
    p_domcod: CheckedSequent
    p_total: CheckedSequent
    p_unique: CheckedSequent

    def at(self, xt: Term, yt: Term) -> Formula:
        return substitute(self.formula, {self.xvar: xt, self.yvar: yt})

    def dom_at(self, t: Term) -> Formula:
        return substitute(self.domain, {self.xvar: t})

    def cod_at(self, t: Term) -> Formula:
        return substitute(self.codomain, {self.yvar: t})


def functional(formula: Formula, xvar: str, yvar: str, domain: Formula, codomain: Formula,
               domcod: Thm, total: Thm, unique: Thm) -> FunctionalFormula:
    """Validate the three functionality proofs and bundle them."""
    zv = "z0" if yvar != "z0" else "z1"
    want_domcod = Sequent((xvar, yvar), formula,
                          And(domain, substitute(codomain, {yvar: Var(yvar)})))
    want_total = Sequent((xvar,), domain, Exists(yvar, formula))
    want_unique = Sequent(
        (xvar, yvar, zv),
        And(formula, substitute(formula, {yvar: Var(zv)})),
        Eq(Var(yvar), Var(zv)),
    )
    for thm, want, tag in ((domcod, want_domcod, "domain/codomain"),
                           (total, want_total, "totality"),
                           (unique, want_unique, "uniqueness")):
        from .syntax import sequent_alpha_eq

        if not sequent_alpha_eq(thm.seq, want):
            raise ContextShape(f"{tag} proof concludes {thm.seq!r}, wanted {want!r}")
    return FunctionalFormula(
        formula, xvar, yvar, domain, codomain,
        check_proof(domcod.proof), check_proof(total.proof), check_proof(unique.proof),
    )


def lh_t(t: Term) -> Term:
    return App(LH, (t,))


def idx_t(t: Term, i: Term) -> Term:
    return App(IDX, (t, i))


def sg_t(t: Term) -> Term:
    return App(SINGLETON, (t,))


def cat_t(l: Term, v: Term) -> Term:
    return App(APPEND1, (l, v))


def dl_t(l: Term) -> Term:
    return App(DROPLAST, (l,))


def rec_matrix(gamma: FunctionalFormula, theta: FunctionalFormula,
               x: Term, l: Term, n: Term, y: Term, u: str = "u") -> Formula:
    """The body under the list quantifier of the recursor formula."""
    step = theta.at(idx_t(l, Var(u)), idx_t(l, s(Var(u))))
    return And(
        Eq(lh_t(l), s(n)),
        And(
            gamma.at(x, idx_t(l, Zero())),
            And(BForall(u, n, step), Eq(idx_t(l, n), y)),
        ),
    )


def rec_formula(gamma: FunctionalFormula, theta: FunctionalFormula,
                x: str = "x", n: str = "n", y: str = "y",
                l: str = "l", u: str = "u") -> Formula:
    """y is the n-th theta-iterate of gamma's value at x."""
    for ff, tag in ((gamma, "gamma"), (theta, "theta")):
        if len(free_vars(ff.formula) - {ff.xvar, ff.yvar}) > 0:
            raise ContextShape(f"{tag} formula has stray free variables")
    if {x, n, y, l, u} & (free_vars(gamma.formula) | free_vars(theta.formula)) - {gamma.xvar, gamma.yvar, theta.xvar, theta.yvar}:
        raise ContextShape("recursor variable names collide with the supplied formulas")
    return Exists(l, rec_matrix(gamma, theta, Var(x), Var(l), Var(n), Var(y), u))


# ---------------------------------------------------------------------------
# Small arithmetic bridges used throughout the obligations


def _pred_unfold(t: Term, ctx) -> Thm:
    """TOP |- pred(t) = t - 1 style helper: pred(s t) = t."""
    p2 = PRED.h if False else None
    # PRED = Cn(P2, [p11, p11]); P2 = Pr(zero, proj(3,2))
    inner = PRED.gs[0]
    c1 = ax_cn_i(PRED, [s(t)], ctx)  # pred(s t) = P2(proj(s t), proj(s t))
    pj = ax_proj_i(1, 1, [s(t)], ctx)  # proj(s t) = s t
    p2d = PRED.h
    c2 = cong(pj, App(p2d, (Var("H"), App(inner, (s(t),)))), "H")
    c3 = cong(pj, App(p2d, (s(t), Var("H"))), "H")
    c4 = ax_pr_succ_i(p2d, [s(t)], t, ctx)  # P2(s t, s t') = proj(3,2)(...)
    c5 = ax_proj_i(3, 2, [s(t), t, App(p2d, (s(t), t))], ctx)
    return chain(c1, c2, c3, c4, c5)


def monus_one(t: Term, ctx) -> Thm:
    """TOP |- s(t) - 1 = t, unfolding the truncated subtraction."""
    one = num(1)
    e1 = ax_pr_succ_i(MONUS, [s(t)], Zero(), ctx)  # s t - s 0 = h(s t, 0, s t - 0)
    base = ax_pr_zero_i(MONUS, [s(t)], ctx)  # s t - 0 = proj(s t)
    base = trans(base, ax_proj_i(1, 1, [s(t)], ctx))  # = s t
    h = MONUS.h  # Cn(PRED, [proj(3,3)])
    sub0 = App(MONUS, (s(t), Zero()))
    e2 = ax_cn_i(h, [s(t), Zero(), sub0], ctx)  # h(...) = pred(proj33(...))
    e3 = cong(ax_proj_i(3, 3, [s(t), Zero(), sub0], ctx), App(PRED, (Var("H"),)), "H")
    e4 = cong(base, App(PRED, (Var("H"),)), "H")  # pred(s t - 0) = pred(s t)
    e5 = _pred_unfold(t, ctx)  # pred(s t) = t
    return chain(e1, e2, e3, e4, e5)


def _lt_from_eq(lt_thm: Thm, eq: Thm, positions=None) -> Thm:
    """Rewrite inside an inequality using an equation over the same
    antecedent."""
    return rw(lt_thm, eq, positions=positions)


def by_cases3(scrut: Thm, b1: Thm, b2: Thm, b3: Thm) -> Thm:
    """Case split over a or (b or c)."""
    c1, c23 = case_shape(scrut)
    inner_scrut = sel(ident(c23, scrut.ctx), scrut.rhs.right)
    i1, i2 = case_shape(inner_scrut)
    right = by_cases(inner_scrut, strengthen(b2, i1), strengthen(b3, i2))
    return by_cases(scrut, strengthen(b1, c1), right)


# ---------------------------------------------------------------------------
# Obligation groups.  All generators share the variable conventions
# x, n, y (result context), z (second value), l, k (lists), u (the
# bounded quantifier), i (induction counter), m (predecessor).


class _Gen:
    """Shared context for one (gamma, theta) instance."""

    def __init__(self, gamma: FunctionalFormula, theta: FunctionalFormula):
        self.g = gamma
        self.t = theta
        self.rec = rec_formula(gamma, theta)

    # -- helpers ------------------------------------------------------------

    def rec_at(self, x: Term, n: Term, y: Term) -> Formula:
        return substitute(self.rec, {"x": x, "n": n, "y": y})

    def matrix(self, x: Term, l: Term, n: Term, y: Term) -> Formula:
        return rec_matrix(self.g, self.t, x, l, n, y)

    def gamma_unique(self, x: Term, a: Term, b: Term, ctx) -> Thm:
        base = Thm(self.g.p_unique.proof, self.g.p_unique.sequent)
        return sub(base, [x, a, b], tuple(ctx))

    def theta_unique(self, x: Term, a: Term, b: Term, ctx) -> Thm:
        base = Thm(self.t.p_unique.proof, self.t.p_unique.sequent)
        return sub(base, [x, a, b], tuple(ctx))

    def gamma_domcod(self, x: Term, yv: Term, ctx) -> Thm:
        base = Thm(self.g.p_domcod.proof, self.g.p_domcod.sequent)
        return sub(base, [x, yv], tuple(ctx))

    def theta_domcod(self, x: Term, yv: Term, ctx) -> Thm:
        base = Thm(self.t.p_domcod.proof, self.t.p_domcod.sequent)
        return sub(base, [x, yv], tuple(ctx))

    def gamma_total(self, x: Term, ctx) -> Thm:
        base = Thm(self.g.p_total.proof, self.g.p_total.sequent)
        return sub(base, [x], tuple(ctx))

    def theta_total(self, x: Term, ctx) -> Thm:
        base = Thm(self.t.p_total.proof, self.t.p_total.sequent)
        return sub(base, [x], tuple(ctx))

    def theta_elim(self, bundle_thm: Thm, l: Term, n: Term, at: Term) -> Thm:
        """From a theorem whose succedent is the bounded-forall conjunct,
        conclude ... and at < n |- theta((l)_at, (l)_s at)."""
        return ball_elim_at(bundle_thm, at)

    # -- group 1: domain and codomain ----------------------------------------

    def dom_cod(self) -> Thm:
        g, t = self.g, self.t
        x, n, y, l = Var("x"), Var("n"), Var("y"), Var("l")
        ctx = ("x", "n", "y")
        scrut = ident(self.rec, ctx)
        sh = unpack_shape(scrut, "l")
        ctx_l = ctx + ("l",)
        bundle = ident(sh, ctx_l)
        gam0 = sel(bundle, g.at(x, idx_t(l, Zero())))
        dom = sel(cut(gam0, self.gamma_domcod(x, idx_t(l, Zero()), ctx_l)), g.dom_at(x))
        # codomain by case distinction on n
        dich = from_top(rectx(inst(L.lem_succ_dichotomy(), [n], ("n",)), ctx_l), sh)
        c1, c2 = case_shape(dich)
        # n = 0
        b1 = self._domcod_zero(c1, x, n, y, l, ctx_l)
        b2 = self._domcod_succ(c2, x, n, y, l, ctx_l)
        cod = by_cases(dich, b1, b2)
        out = ex_unpack(scrut, and_i(dom, cod), "l")
        return out

    def _domcod_zero(self, ante: Formula, x, n, y, l, ctx_l) -> Thm:
        g = self.g
        both = ident(ante, ctx_l)
        hn = sel(both, Eq(n, Zero()))
        heq = sel(both, Eq(idx_t(l, n), y))
        gam0 = sel(both, g.at(x, idx_t(l, Zero())))
        codv = sel(cut(gam0, self.gamma_domcod(x, idx_t(l, Zero()), ctx_l)),
                   g.cod_at(idx_t(l, Zero())))
        # (l)_n = y with n = 0 gives (l)_0 = y; rewrite into the codomain
        heq0 = rw_lhs_term(heq, hn)  # (l)_0 = y
        return rw_exact(codv, heq0, g.cod_at(Var("H0")), "H0")

    def _domcod_succ(self, ante: Formula, x, n, y, l, ctx_l) -> Thm:
        g, t = self.g, self.t
        both = ident(ante, ctx_l)
        hex = sel(both, Exists("y1", Eq(n, s(Var("y1")))))
        sh2 = unpack_shape(hex, "m")
        ctx_m = ctx_l + ("m",)
        m = Var("m")
        both2 = ident(sh2, ctx_m)
        hn = sel(both2, Eq(n, s(m)))
        ballc = sel(both2, BForall("u", n, t.at(idx_t(l, Var("u")), idx_t(l, s(Var("u"))))))
        # m < n from m < s m and n = s m
        mlt = from_top(rectx(inst(L.lem_lt_succ_self(), [m], ("m",)), ctx_m), sh2)
        mlt = rw(mlt, sym(hn), positions={0})  # m < n
        elim = ball_elim_at(ballc, m)
        got = cut(and_i(ident(sh2, ctx_m), mlt), elim)  # theta((l)_m, (l)_s m)
        codv = sel(cut(got, self.theta_domcod(idx_t(l, m), idx_t(l, s(m)), ctx_m)),
                   t.cod_at(idx_t(l, s(m))))
        heq = sel(both2, Eq(idx_t(l, n), y))
        # rewrite s m to n, then (l)_n to y
        codn = rw_exact(codv, sym(hn), t.cod_at(idx_t(l, Var("H0"))), "H0")
        out = rw_exact(codn, heq, t.cod_at(Var("H0")), "H0")
        return ex_unpack(hex, out, "m")

    # -- group 2: uniqueness of value ----------------------------------------

    def unique(self) -> Thm:
        g, t = self.g, self.t
        x, n, y, z, l, k = (Var(v) for v in ("x", "n", "y", "z", "l", "k"))
        ctx = ("x", "n", "y", "z")
        lhs = And(self.rec_at(x, n, y), self.rec_at(x, n, Var("z")))
        s1 = sel(ident(lhs, ctx), self.rec_at(x, n, y))
        sh1 = unpack_shape(s1, "l")
        ctx_l = ctx + ("l",)
        s2 = sel(ident(sh1, ctx_l), self.rec_at(x, n, z))
        sh2 = unpack_shape(s2, "k")
        ctx_k = ctx_l + ("k",)
        bundle = ident(sh2, ctx_k)
        invariant = Or(Lt(n, Var("i")), Eq(idx_t(l, Var("i")), idx_t(k, Var("i"))))
        base = self._uniq_base(sh2, ctx_k, x, l, k)
        step = self._uniq_step(sh2, ctx_k, x, n, l, k, invariant)
        indr = ind_r(base, step, "i")
        at_n = sub(indr, [Var(v) for v in ctx_k] + [n], ctx_k)
        # kill n < n
        dead = cut(rectx(inst(L.lem_lt_irrefl(), [n], ("n",)), ctx_k),
                   bot_e(Eq(idx_t(l, n), idx_t(k, n)), ctx_k))
        lkn = cut(and_i(bundle, at_n),
                  cut(distrib_thm(sh2, Lt(n, n), Eq(idx_t(l, n), idx_t(k, n)), ctx_k),
                      or_e(strengthen(dead, And(sh2, Lt(n, n))),
                           sel(ident(And(sh2, Eq(idx_t(l, n), idx_t(k, n))), ctx_k),
                               Eq(idx_t(l, n), idx_t(k, n))))))
        heql = sel(bundle, Eq(idx_t(l, n), y))
        heqk = sel(bundle, Eq(idx_t(k, n), z))
        out = chain(sym(heql), lkn, heqk)  # y = (l)_n = (k)_n = z
        inner = ex_unpack(s2, out, "k")
        return ex_unpack(s1, inner, "l")

    def _uniq_base(self, gam_ante: Formula, ctx_k, x, l, k) -> Thm:
        g = self.g
        bundle = ident(gam_ante, ctx_k)
        gl = sel(bundle, g.at(x, idx_t(l, Zero())))
        gk = sel(bundle, g.at(x, idx_t(k, Zero())))
        uq = self.gamma_unique(x, idx_t(l, Zero()), idx_t(k, Zero()), ctx_k)
        eq0 = cut(and_i(gl, gk), uq)
        # rewrite the index 0 to the bound variable i at position... the
        # invariant at i = 0 is Or(n < 0, (l)_0 = (k)_0); inject right.
        return or_i2(eq0, Lt(Var("n"), Zero()))

    def _uniq_step(self, gam_ante: Formula, ctx_k, x, n, l, k, invariant: Formula) -> Thm:
        t = self.t
        ctx_i = ctx_k + ("i",)
        i = Var("i")
        full = And(gam_ante, invariant)
        scrut = sel(ident(full, ctx_i), invariant)
        c1, c2 = case_shape(scrut)
        tgt = substitute(invariant, {"i": s(i)})
        # n < i: weaken to n < s i
        b1 = or_i1(cut(sel(ident(c1, ctx_i), Lt(n, i)),
                       rectx(inst(L.lem_lt_s_weak(), [n, i], ("n", "i")), ctx_i)),
                   tgt.right)
        # (l)_i = (k)_i: compare s i against n
        b2 = self._uniq_step_eq(c2, ctx_i, x, n, l, k, i, tgt)
        return by_cases(scrut, b1, b2)

    def _uniq_step_eq(self, ante: Formula, ctx_i, x, n, l, k, i, tgt) -> Thm:
        t = self.t
        tri = from_top(rectx(inst(L.lem_trichotomy(), [s(i), n], ("x", "y")), ctx_i), ante)
        heq = sel(ident(ante, ctx_i), Eq(idx_t(l, i), idx_t(k, i)))

        def core(extra: Formula, iltn: Thm) -> Thm:
            # under And(ante, extra) with a proof of i < n, conclude tgt
            full = And(ante, extra)
            both = ident(full, ctx_i)
            ball_l = sel(both, BForall("u", n, t.at(idx_t(l, Var("u")), idx_t(l, s(Var("u"))))))
            ball_k = sel(both, BForall("u", n, t.at(idx_t(k, Var("u")), idx_t(k, s(Var("u"))))))
            th_l = cut(and_i(both, iltn), ball_elim_at(ball_l, i))
            th_k = cut(and_i(both, iltn), ball_elim_at(ball_k, i))
            heq2 = strengthen(heq, full)
            # theta((k)_i, (k)_si) becomes theta((l)_i, (k)_si)
            th_k2 = rw_exact(th_k, sym(heq2), t.at(Var("H0"), idx_t(k, s(i))), "H0")
            uq = self.theta_unique(idx_t(l, i), idx_t(l, s(i)), idx_t(k, s(i)), ctx_i)
            eq_si = cut(and_i(th_l, th_k2), uq)
            return or_i2(eq_si, Lt(n, s(i)))

        # s i < n gives i < n by transitivity with i < s i
        case_lt = core(
            Lt(s(i), n),
            cut(
                and_i(
                    from_top(rectx(inst(L.lem_lt_succ_self(), [i], ("i",)), ctx_i),
                             And(ante, Lt(s(i), n))),
                    sel(ident(And(ante, Lt(s(i), n)), ctx_i), Lt(s(i), n)),
                ),
                rectx(inst(lem_lt_trans(), [i, s(i), n], ("a", "b", "c")), ctx_i),
            ),
        )
        # s i = n rewrites i < s i to i < n
        case_eq = core(
            Eq(s(i), n),
            rw(
                from_top(rectx(inst(L.lem_lt_succ_self(), [i], ("i",)), ctx_i),
                         And(ante, Eq(s(i), n))),
                sel(ident(And(ante, Eq(s(i), n)), ctx_i), Eq(s(i), n)),
                positions={0},
            ),
        )
        case_gt = or_i1(sel(ident(And(ante, Lt(n, s(i))), ctx_i), Lt(n, s(i))), tgt.right)
        return by_cases3(tri, case_lt, case_eq, case_gt)

    # -- group 3: totality ----------------------------------------------------

    def total(self) -> Thm:
        g = self.g
        x, n = Var("x"), Var("n")
        strong = Exists("y", And(self.rec_at(x, n, Var("y")), g.cod_at(Var("y"))))
        base = self._total_base(x)
        step = self._total_step(x, n, strong)
        indr = ind_r(base, step, "n")
        # weaken the invariant to the plain existential
        inner = and_l(self.rec_at(x, n, Var("y")), g.cod_at(Var("y")), ("x", "n", "y"))
        drop = ex_mono(inner, "y")
        return cut(indr, drop)

    def _total_base(self, x) -> Thm:
        g, t = self.g, self.t
        scrut = self.gamma_total(x, ("x",))  # dom |- ex yv gamma(x, yv)
        yv = g.yvar
        sh = unpack_shape(scrut, "y0")
        ctx0 = ("x", "y0")
        y0 = Var("y0")
        gam = sel(ident(sh, ctx0), g.at(x, y0))
        lterm = sg_t(y0)
        # lh(sg y0) = s 0
        f_len = ax_seq_i("sg-len", [y0], ctx0)
        # gamma(x, (sg y0)_0) from gamma(x, y0)
        sgat = ax_seq_i("sg-at", [y0], ctx0)  # idx(sg y0, 0) = y0
        f_gam = rw_exact(gam, sym(from_top(sgat, sh)), g.at(x, Var("H0")), "H0")
        # vacuous bounded forall
        stepf = t.at(idx_t(lterm, Var("u")), idx_t(lterm, s(Var("u"))))
        dead = cut(rectx(inst(L.lem_lt_zero(), [Var("u")], ("u",)), ctx0 + ("u",)),
                   bot_e(stepf, ctx0 + ("u",)))
        f_ball = ball_bind(strengthen(dead, And(sh, Lt(Var("u"), Zero()))), "u")
        # (sg y0)_0 = y0
        f_eq = from_top(sgat, sh)
        f_cod = sel(cut(gam, self.gamma_domcod(x, y0, ctx0)), g.cod_at(y0))
        matrix = and_i(from_top(f_len, sh), and_i(f_gam, and_i(f_ball, f_eq)))
        recm = ex_i(matrix, substitute(self.rec, {"x": x, "n": Zero(), "y": y0}), lterm)
        packed = ex_i(
            and_i(recm, f_cod),
            Exists("y", And(self.rec_at(x, Zero(), Var("y")), g.cod_at(Var("y")))),
            y0,
        )
        return ex_unpack(scrut, packed, "y0")

    def _total_step(self, x, n, strong: Formula) -> Thm:
        g, t = self.g, self.t
        ctx = ("x", "n")
        psi = g.dom_at(x)
        hyp = And(psi, strong)
        scrut = sel(ident(hyp, ctx), strong)
        sh = unpack_shape(scrut, "y")
        ctx_y = ctx + ("y",)
        y = Var("y")
        reccy = sel(ident(sh, ctx_y), self.rec_at(x, n, y))
        sh_l = unpack_shape(reccy, "l")
        ctx_l = ctx_y + ("l",)
        l = Var("l")
        inner = self._total_step_core(sh_l, ctx_l, x, n, y, l)
        tgt = substitute(strong, {"n": s(n)})
        got = ex_unpack(reccy, inner, "l")
        return strengthen(ex_unpack(scrut, got, "y"), And(psi, strong))

    def _total_step_core(self, ante: Formula, ctx_l, x, n, y, l) -> Thm:
        g, t = self.g, self.t
        both = ident(ante, ctx_l)
        cod_y = sel(both, g.cod_at(y))
        th_total = cut(cod_y, self.theta_total(y, ctx_l))  # ex yt theta(y, yt)
        sh_z = unpack_shape(th_total, "z0")
        ctx_z = ctx_l + ("z0",)
        z0 = Var("z0")
        both2 = ident(sh_z, ctx_z)
        theta_yz = sel(both2, t.at(y, z0))
        lterm = cat_t(l, z0)
        h_len = sel(both2, Eq(lh_t(l), s(n)))
        cat_len = from_top(ax_seq_i("cat-len", [l, z0], ctx_z), sh_z)  # lh(cat) = s lh l
        f_len = trans(cat_len, cong(h_len, s(Var("H0")), "H0"))  # = s s n
        f_gam = self._step_gamma(sh_z, ctx_z, x, n, l, z0, both2, h_len)
        f_ball = self._step_ball(sh_z, ctx_z, x, n, y, l, z0, h_len)
        f_eq = self._cat_new_at(sh_z, ctx_z, l, z0, h_len)  # (cat)_s n = z0
        matrix = and_i(f_len, and_i(f_gam, and_i(f_ball, f_eq)))
        recm = ex_i(matrix, substitute(self.rec, {"x": x, "n": s(n), "y": z0}), lterm)
        cod_z = sel(cut(theta_yz, self.theta_domcod(y, z0, ctx_z)), t.cod_at(z0))
        packed = ex_i(
            and_i(recm, cod_z),
            Exists("y", And(self.rec_at(x, s(n), Var("y")), g.cod_at(Var("y")))),
            z0,
        )
        return ex_unpack(th_total, packed, "z0")

    def _step_gamma(self, ante, ctx, x, n, l, z0, both, h_len) -> Thm:
        g = self.g
        gam = sel(both, g.at(x, idx_t(l, Zero())))
        old = self._cat_old_at(ante, ctx, l, z0, Zero(), self._zero_lt(ante, ctx, n, h_len))
        return rw_exact(gam, sym(old), g.at(x, Var("H0")), "H0")

    def _zero_lt(self, ante, ctx, n, h_len) -> Thm:
        # ante |- 0 < lh l, from lh l = s n
        zl = from_top(rectx(inst(L.lem_zero_lt_succ(), [n], ("n",)), ctx), ante)
        return rw(zl, sym(h_len), positions={0}) if False else rw_exact(
            zl, sym(h_len), Lt(Zero(), Var("H0")), "H0"
        )

    def _cat_old_at(self, ante, ctx, l, z0, at: Term, lt_proof: Thm) -> Thm:
        """ante |- (cat l z0)_at = (l)_at given ante |- at < lh l."""
        ax = ax_seq_i("cat-old", [l, z0, at], ctx)  # at < lh l |- ...
        return cut(and_i(ident(ante, ctx), lt_proof),
                   cut(conj_shape(ante, Lt(at, lh_t(l)), ctx), ax))

    def _cat_new_at(self, ante, ctx, l, z0, h_len) -> Thm:
        """ante |- (cat l z0)_{s n} = z0 given lh l = s n."""
        ax = from_top(ax_seq_i("cat-new", [l, z0], ctx), ante)  # (cat)_{lh l} = z0
        return rw_exact(ax, h_len, Eq(idx_t(cat_t(l, z0), Var("H0")), z0), "H0")

    def _step_ball(self, ante, ctx, x, n, y, l, z0, h_len) -> Thm:
        t = self.t
        u = Var("u")
        ctx_u = ctx + ("u",)
        lterm = cat_t(l, z0)
        body = t.at(idx_t(lterm, u), idx_t(lterm, s(u)))
        big = And(ante, Lt(u, s(n)))
        both = ident(big, ctx_u)
        cases = cut(sel(both, Lt(u, s(n))),
                    rectx(inst(L.lem_lt_succ_cases(), [u, n], ("x", "y")), ctx_u))
        c1, c2 = case_shape(cases)
        b1 = self._step_ball_old(c1, ctx_u, n, l, z0, u)
        b2 = self._step_ball_new(c2, ctx_u, n, y, l, z0, u)
        inner = by_cases(cases, b1, b2)
        return ball_bind(inner, "u")

    def _step_ball_old(self, ante, ctx_u, n, l, z0, u) -> Thm:
        # u < n: read both entries through cat-old
        t = self.t
        both = ident(ante, ctx_u)
        h_len = sel(both, Eq(lh_t(l), s(n)))
        ball_old = sel(both, BForall("u", n, t.at(idx_t(l, Var("u")), idx_t(l, s(Var("u"))))))
        ultn = sel(both, Lt(u, n))
        th = cut(and_i(both, ultn), ball_elim_at(ball_old, u))
        # u < lh l and s u < lh l
        u_lt = rw_exact(cut(ultn, rectx(inst(L.lem_lt_s_weak(), [u, n], ("x", "y")), ctx_u)),
                        sym(h_len), Lt(u, Var("H0")), "H0")
        su_lt = rw_exact(cut(ultn, rectx(inst(L.lem_lt_succ_mono(), [u, n], ("x", "y")), ctx_u)),
                         sym(h_len), Lt(s(u), Var("H0")), "H0")
        old_u = self._cat_old_at(ante, ctx_u, l, z0, u, u_lt)
        old_su = self._cat_old_at(ante, ctx_u, l, z0, s(u), su_lt)
        th1 = rw_exact(th, sym(old_u), t.at(Var("H0"), idx_t(l, s(u))), "H0")
        return rw_exact(th1, sym(old_su), t.at(idx_t(cat_t(l, z0), u), Var("H0")), "H0")

    def _step_ball_new(self, ante, ctx_u, n, y, l, z0, u) -> Thm:
        # u = n: the appended link
        t = self.t
        both = ident(ante, ctx_u)
        h_len = sel(both, Eq(lh_t(l), s(n)))
        hu = sel(both, Eq(u, n))
        h_val = sel(both, Eq(idx_t(l, n), y))
        theta_yz = sel(both, t.at(y, z0))
        n_lt = rw_exact(from_top(rectx(inst(L.lem_lt_succ_self(), [n], ("n",)), ctx_u), ante),
                        sym(h_len), Lt(n, Var("H0")), "H0")
        old_n = self._cat_old_at(ante, ctx_u, l, z0, n, n_lt)  # (cat)_n = (l)_n
        new_sn = self._cat_new_at(ante, ctx_u, l, z0, h_len)  # (cat)_{s n} = z0
        # theta(y, z0) -> theta((l)_n, z0) -> theta((cat)_n, z0) -> theta((cat)_n, (cat)_{s n})
        th = rw_exact(theta_yz, sym(h_val), t.at(Var("H0"), z0), "H0")
        th = rw_exact(th, sym(old_n), t.at(Var("H0"), z0), "H0")
        th = rw_exact(th, sym(new_sn), t.at(idx_t(cat_t(l, z0), n), Var("H0")), "H0")
        # substitute u for n via u = n
        tmpl = t.at(idx_t(cat_t(l, z0), Var("H0")), idx_t(cat_t(l, z0), s(Var("H0"))))
        return rw_exact(th, sym(hu), tmpl, "H0")

    # -- groups 4 and 5: triangle and square ----------------------------------

    def triangle_intro(self) -> Thm:
        """gamma(x, y) |- rec(x, 0, y)."""
        g, t = self.g, self.t
        x, y = Var("x"), Var("y")
        ctx = ("x", "y")
        gam = ident(g.at(x, y), ctx)
        lterm = sg_t(y)
        sgat = ax_seq_i("sg-at", [y], ctx)
        f_len = from_top(ax_seq_i("sg-len", [y], ctx), g.at(x, y))
        f_gam = rw_exact(gam, sym(from_top(sgat, g.at(x, y))), g.at(x, Var("H0")), "H0")
        stepf = t.at(idx_t(lterm, Var("u")), idx_t(lterm, s(Var("u"))))
        dead = cut(rectx(inst(L.lem_lt_zero(), [Var("u")], ("u",)), ctx + ("u",)),
                   bot_e(stepf, ctx + ("u",)))
        f_ball = ball_bind(strengthen(dead, And(g.at(x, y), Lt(Var("u"), Zero()))), "u")
        f_eq = from_top(sgat, g.at(x, y))
        matrix = and_i(f_len, and_i(f_gam, and_i(f_ball, f_eq)))
        return ex_i(matrix, self.rec_at(x, Zero(), y), lterm)

    def triangle_elim(self) -> Thm:
        """rec(x, 0, y) |- gamma(x, y)."""
        g = self.g
        x, y, l = Var("x"), Var("y"), Var("l")
        ctx = ("x", "y")
        scrut = ident(self.rec_at(x, Zero(), y), ctx)
        sh = unpack_shape(scrut, "l")
        ctx_l = ctx + ("l",)
        both = ident(sh, ctx_l)
        gam0 = sel(both, g.at(x, idx_t(l, Zero())))
        heq = sel(both, Eq(idx_t(l, Zero()), y))
        out = rw_exact(gam0, heq, g.at(x, Var("H0")), "H0")
        return ex_unpack(scrut, out, "l")

    def square_intro(self) -> Thm:
        """ex z (rec(x, n, z) and theta(z, y)) |- rec(x, s n, y)."""
        g, t = self.g, self.t
        x, n, y, z, l = (Var(v) for v in ("x", "n", "y", "z", "l"))
        ctx = ("x", "n", "y")
        src = Exists("z", And(self.rec_at(x, n, Var("z")), t.at(Var("z"), y)))
        scrut = ident(src, ctx)
        sh = unpack_shape(scrut, "z")
        ctx_z = ctx + ("z",)
        recz = sel(ident(sh, ctx_z), self.rec_at(x, n, z))
        sh_l = unpack_shape(recz, "l")
        ctx_l = ctx_z + ("l",)
        both = ident(sh_l, ctx_l)
        h_len = sel(both, Eq(lh_t(l), s(n)))
        theta_zy = sel(both, t.at(z, y))
        h_val = sel(both, Eq(idx_t(l, n), z))
        lterm = cat_t(l, y)
        cat_len = from_top(ax_seq_i("cat-len", [l, y], ctx_l), sh_l)
        f_len = trans(cat_len, cong(h_len, s(Var("H0")), "H0"))
        f_gam = self._step_gamma(sh_l, ctx_l, x, n, l, y, both, h_len)
        f_ball = self._square_ball(sh_l, ctx_l, n, y, z, l, h_len)
        f_eq = self._cat_new_at(sh_l, ctx_l, l, y, h_len)
        matrix = and_i(f_len, and_i(f_gam, and_i(f_ball, f_eq)))
        recm = ex_i(matrix, self.rec_at(x, s(n), y), lterm)
        return ex_unpack(scrut, ex_unpack(recz, recm, "l"), "z")

    def _square_ball(self, ante, ctx_l, n, y, z, l, h_len) -> Thm:
        t = self.t
        u = Var("u")
        ctx_u = ctx_l + ("u",)
        lterm = cat_t(l, y)
        big = And(ante, Lt(u, s(n)))
        both = ident(big, ctx_u)
        cases = cut(sel(both, Lt(u, s(n))),
                    rectx(inst(L.lem_lt_succ_cases(), [u, n], ("x", "y")), ctx_u))
        c1, c2 = case_shape(cases)
        b1 = self._step_ball_old(c1, ctx_u, n, l, y, u)
        b2 = self._square_ball_new(c2, ctx_u, n, y, z, l, u)
        inner = by_cases(cases, b1, b2)
        return ball_bind(inner, "u")

    def _square_ball_new(self, ante, ctx_u, n, y, z, l, u) -> Thm:
        t = self.t
        both = ident(ante, ctx_u)
        h_len = sel(both, Eq(lh_t(l), s(n)))
        hu = sel(both, Eq(u, n))
        h_val = sel(both, Eq(idx_t(l, n), z))
        theta_zy = sel(both, t.at(z, y))
        n_lt = rw_exact(from_top(rectx(inst(L.lem_lt_succ_self(), [n], ("n",)), ctx_u), ante),
                        sym(h_len), Lt(n, Var("H0")), "H0")
        old_n = self._cat_old_at(ante, ctx_u, l, y, n, n_lt)
        new_sn = self._cat_new_at(ante, ctx_u, l, y, h_len)
        th = rw_exact(theta_zy, sym(h_val), t.at(Var("H0"), y), "H0")
        th = rw_exact(th, sym(old_n), t.at(Var("H0"), y), "H0")
        th = rw_exact(th, sym(new_sn), t.at(idx_t(cat_t(l, y), n), Var("H0")), "H0")
        tmpl = t.at(idx_t(cat_t(l, y), Var("H0")), idx_t(cat_t(l, y), s(Var("H0"))))
        return rw_exact(th, sym(hu), tmpl, "H0")

    def square_elim(self) -> Thm:
        """rec(x, s n, y) |- ex z (rec(x, n, z) and theta(z, y))."""
        g, t = self.g, self.t
        x, n, y, l = (Var(v) for v in ("x", "n", "y", "l"))
        ctx = ("x", "n", "y")
        tgt = Exists("z", And(self.rec_at(x, n, Var("z")), t.at(Var("z"), y)))
        scrut = ident(self.rec_at(x, s(n), y), ctx)
        sh = unpack_shape(scrut, "l")
        ctx_l = ctx + ("l",)
        both = ident(sh, ctx_l)
        h_len = sel(both, Eq(lh_t(l), s(s(n))))  # lh l = s s n
        gam0 = sel(both, g.at(x, idx_t(l, Zero())))
        ball = sel(both, BForall("u", s(n), t.at(idx_t(l, Var("u")), idx_t(l, s(Var("u"))))))
        h_val = sel(both, Eq(idx_t(l, s(n)), y))
        l2 = dl_t(l)
        # lh(dl l) = lh l - 1 = s s n - 1 = s n
        dl_len = from_top(ax_seq_i("dl-len", [l], ctx_l), sh)
        dl_len = rw_exact(dl_len, h_len, Eq(lh_t(l2), App(MONUS, (Var("H0"), num(1)))), "H0")
        dl_len = trans(dl_len, from_top(monus_one(s(n), ctx_l), sh))
        # entry reads through dl-at: need s i < lh l, i.e. s i < s s n
        def dl_at(at: Term, lt_thm: Thm) -> Thm:
            ax = ax_seq_i("dl-at", [l, at], ctx_l)
            return cut(and_i(both, lt_thm), cut(conj_shape(sh, Lt(s(at), lh_t(l)), ctx_l), ax))

        def lt_into_lh(lt_thm: Thm) -> Thm:
            return rw_exact(lt_thm, sym(h_len), Lt(lt_thm.rhs.left, Var("H0")), "H0")

        zero_s = from_top(rectx(inst(L.lem_zero_lt_succ(), [n], ("n",)), ctx_l), sh)
        zero_ss = cut(zero_s, rectx(inst(L.lem_lt_succ_mono(), [Zero(), s(n)], ("x", "y")), ctx_l))
        gam_dl = rw_exact(gam0, sym(dl_at(Zero(), lt_into_lh(zero_ss))),
                          g.at(x, Var("H0")), "H0")
        # bounded forall over the shortened list
        f_ball = self._sq_elim_ball(sh, ctx_l, n, l, ball, h_len, dl_at, lt_into_lh)
        # (dl l)_n = (l)_n, the witness value
        n_lt_ss = cut(from_top(rectx(inst(L.lem_lt_succ_self(), [s(n)], ("x",)), ctx_l), sh),
                      ident(Lt(s(n), s(s(n))), ctx_l))
        dl_n = dl_at(n, lt_into_lh(n_lt_ss))  # (dl l)_n = (l)_n
        f_eqw = dl_n
        # theta((l)_n, y) from the forall at u := n and (l)_{s n} = y
        n_lt_sn = from_top(rectx(inst(L.lem_lt_succ_self(), [n], ("n",)), ctx_l), sh)
        th = cut(and_i(both, n_lt_sn), ball_elim_at(ball, n))
        th = rw_exact(th, h_val, t.at(idx_t(l, n), Var("H0")), "H0")  # theta((l)_n, y)
        th = rw_exact(th, sym(dl_n), t.at(Var("H0"), y), "H0")  # theta((dl l)_n, y)
        matrix = and_i(dl_len, and_i(gam_dl, and_i(f_ball, f_eqw)))
        recm = ex_i(matrix, self.rec_at(x, n, idx_t(l, n)), l2)
        # pack with theta((l)_n, y)... the existential witness is (l)_n
        th_val = rw_exact(cut(and_i(both, n_lt_sn), ball_elim_at(ball, n)),
                          h_val, t.at(idx_t(l, n), Var("H0")), "H0")
        packed = ex_i(and_i(recm, th_val), tgt, idx_t(l, n))
        return ex_unpack(scrut, packed, "l")

    def _sq_elim_ball(self, ante, ctx_l, n, l, ball_thm, h_len, dl_at, lt_into_lh) -> Thm:
        t = self.t
        u = Var("u")
        ctx_u = ctx_l + ("u",)
        l2 = dl_t(l)
        big = And(ante, Lt(u, n))
        both = ident(big, ctx_u)
        ultn = sel(both, Lt(u, n))
        # theta((l)_u, (l)_s u) from the outer forall, u < s n
        u_lt_sn = cut(ultn, rectx(inst(L.lem_lt_s_weak(), [u, n], ("x", "y")), ctx_u))
        th = cut(and_i(both, u_lt_sn), ball_elim_at(strengthen(ball_thm, big), u))
        # reads: s u < lh l needs s u < s s n from u < n twice mono'd
        su_lt = cut(ultn, rectx(inst(L.lem_lt_succ_mono(), [u, n], ("x", "y")), ctx_u))
        ssu_lt = cut(su_lt, rectx(inst(L.lem_lt_succ_mono(), [s(u), s(n)], ("x", "y")), ctx_u))
        su_lt_sn = cut(su_lt, rectx(inst(L.lem_lt_s_weak(), [s(u), s(n)], ("x", "y")), ctx_u))

        def dl_at_u(at: Term, lt_thm: Thm) -> Thm:
            ax = ax_seq_i("dl-at", [l, at], ctx_u)
            return cut(and_i(both, lt_thm),
                       cut(conj_shape(big, Lt(s(at), lh_t(l)), ctx_u), ax))

        lt_u = rw_exact(su_lt_sn, sym(strengthen(h_len, big)), Lt(s(u), Var("H0")), "H0")
        lt_su = rw_exact(ssu_lt, sym(strengthen(h_len, big)), Lt(s(s(u)), Var("H0")), "H0")
        e_u = dl_at_u(u, lt_u)
        e_su = dl_at_u(s(u), lt_su)
        th = rw_exact(th, sym(e_u), t.at(Var("H0"), idx_t(l, s(u))), "H0")
        th = rw_exact(th, sym(e_su), t.at(idx_t(l2, u), Var("H0")), "H0")
        return ball_bind(th, "u")


def conj_shape(base: Formula, extra: Formula, ctx) -> Thm:
    """And(base, extra) |- extra, then usable against axioms expecting
    exactly `extra` as antecedent."""
    return sel(ident(And(base, extra), ctx), extra)


def distrib_thm(gam: Formula, a: Formula, b: Formula, ctx) -> Thm:
    from .dsl import distrib

    return distrib(gam, a, b, ctx)


def lem_lt_trans():
    """a < b and b < c |- a < c, derived once."""
    return _lem_lt_trans()


from functools import lru_cache


@lru_cache(maxsize=None)
def _lem_lt_trans() -> Thm:
    a, b, c = Var("a"), Var("b"), Var("c")
    ctx = ("a", "b", "c")
    gam = And(Lt(a, b), Lt(b, c))
    s1 = cut(sel(ident(gam, ctx), Lt(a, b)), L.lt_elim(a, b, "u", ctx))
    sh1 = unpack_shape(s1, "u")
    ctx_u = ctx + ("u",)
    s2 = cut(sel(ident(sh1, ctx_u), Lt(b, c)), L.lt_elim(b, c, "v", ctx_u))
    sh2 = unpack_shape(s2, "v")
    ctx_uv = ctx_u + ("v",)
    u, v = Var("u"), Var("v")
    both = ident(sh2, ctx_uv)
    h1 = sel(both, Eq(L.add(a, s(u)), b))
    h2 = sel(both, Eq(L.add(b, s(v)), c))
    # a + s(u + s v) = a + (s u + s v) = (a + s u) + s v = b + s v = c
    e1 = from_top(
        cong(sym(inst(L.lem_add_succ_left(), [u, s(v)], ctx_uv)), L.add(a, Var("H")), "H"),
        sh2,
    )
    e2 = from_top(sym(inst(L.lem_add_assoc(), [a, s(u), s(v)], ctx_uv)), sh2)
    e3 = cong(h1, L.add(Var("H"), s(v)), "H")
    full = chain(e1, e2, e3, h2)
    e = ex_i(full, L.lt_def(a, c, "w"), L.add(u, s(v)))
    got = cut(e, L.lt_intro(a, c, "w", ctx_uv))
    return ex_unpack(s1, ex_unpack(s2, got, "v"), "u")


def rw_lhs_term(thm: Thm, eq: Thm) -> Thm:
    """Rewrite all occurrences of eq's left side to its right side in the
    succedent of thm (they share an antecedent)."""
    return rw(thm, eq)


# ---------------------------------------------------------------------------
# Ready-made functional formulas


def identity_functional() -> FunctionalFormula:
    """y = x from x = x to y = y."""
    x, y = Var("x"), Var("y")
    form = Eq(y, x)
    dom = Eq(x, x)
    cod = Eq(y, y)
    domcod = and_i(from_top(refl(x, ("x", "y")), form), from_top(refl(y, ("x", "y")), form))
    total = ex_i(ident(dom, ("x",)), Exists("y", form), x)
    z0 = Var("z0")
    uniq = trans(
        sel(ident(And(form, Eq(z0, x)), ("x", "y", "z0")), form),
        sym(sel(ident(And(form, Eq(z0, x)), ("x", "y", "z0")), Eq(z0, x))),
    )
    return functional(form, "x", "y", dom, cod, domcod, total, uniq)


def successor_functional() -> FunctionalFormula:
    """y = s x from x = x to y = y."""
    x, y = Var("x"), Var("y")
    form = Eq(y, s(x))
    dom = Eq(x, x)
    cod = Eq(y, y)
    domcod = and_i(from_top(refl(x, ("x", "y")), form), from_top(refl(y, ("x", "y")), form))
    total = ex_i(from_top(refl(s(x), ("x",)), dom), Exists("y", form), s(x))
    z0 = Var("z0")
    gam = And(form, Eq(z0, s(x)))
    uniq = trans(
        sel(ident(gam, ("x", "y", "z0")), form),
        sym(sel(ident(gam, ("x", "y", "z0")), Eq(z0, s(x)))),
    )
    return functional(form, "x", "y", dom, cod, domcod, total, uniq)


def constant_zero_functional() -> FunctionalFormula:
    """y = 0 from x = x to y = y."""
    x, y = Var("x"), Var("y")
    form = Eq(y, Zero())
    dom = Eq(x, x)
    cod = Eq(y, y)
    domcod = and_i(from_top(refl(x, ("x", "y")), form), from_top(refl(y, ("x", "y")), form))
    total = ex_i(from_top(refl(Zero(), ("x",)), dom), Exists("y", form), Zero())
    z0 = Var("z0")
    gam = And(form, Eq(z0, Zero()))
    uniq = trans(
        sel(ident(gam, ("x", "y", "z0")), form),
        sym(sel(ident(gam, ("x", "y", "z0")), Eq(z0, Zero()))),
    )
    return functional(form, "x", "y", dom, cod, domcod, total, uniq)


def rec_obligations(gamma: FunctionalFormula, theta: FunctionalFormula) -> dict[str, Thm]:
    """The six obligation groups for the recursor of (gamma, theta)."""
    gen = _Gen(gamma, theta)
    out = {
        "dom_cod": gen.dom_cod(),
        "unique": gen.unique(),
        "total": gen.total(),
        "triangle_intro": gen.triangle_intro(),
        "triangle_elim": gen.triangle_elim(),
        "square_intro": gen.square_intro(),
        "square_elim": gen.square_elim(),
    }
    med = mediating_uniqueness(gamma, theta)
    out["mediating_fwd"] = med[0]
    out["mediating_bwd"] = med[1]
    return out


def mediating_uniqueness(gamma, theta):
    raise NotImplementedError
