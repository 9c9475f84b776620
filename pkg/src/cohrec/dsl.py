"""Proof construction combinators.

Untrusted convenience layer: every step goes through `kernel.apply_rule`
immediately, so a `Thm` always carries a kernel-computed sequent and a
serializable proof tree.  The kernel re-checks everything from scratch
when the finished tree is handed to `check_proof`.

The workhorses are `rw` (rewrite occurrences of a term in the succedent
using a proved equation, via the equality double rule), `conj_implies` /
`disj_implies` (provable monotone restructuring of and/or trees), and
the unpack helpers for existentials and case splits.
"""

from __future__ import annotations

from .kernel import Proof, apply_rule
from .syntax import (
    And,
    App,
    BForall,
    Bot,
    Eq,
    Exists,
    Formula,
    FuncDesc,
    Lt,
    Or,
    Sequent,
    Term,
    Top,
    Var,
    Zero,
    alpha_eq,
    free_vars,
    fresh_name,
    num,
    s,
    substitute,
    term_vars,
)


class Thm:
    """A proof tree with its kernel-computed conclusion."""

    __slots__ = ("proof", "seq")

    def __init__(self, proof: Proof, seq: Sequent):
        self.proof = proof
        self.seq = seq

    def __repr__(self):
        return f"<thm {self.seq!r}>"

    @property
    def ctx(self):
        return self.seq.ctx

    @property
    def lhs(self):
        return self.seq.lhs

    @property
    def rhs(self):
        return self.seq.rhs


def rule(name: str, children: list[Thm], *params) -> Thm:
    seq = apply_rule(name, [c.seq for c in children], tuple(params))
    return Thm(Proof(name, tuple(params), tuple(c.proof for c in children)), seq)


# -- one-liners for the axioms ------------------------------------------------


def ident(phi: Formula, ctx) -> Thm:
    return rule("id", [], tuple(ctx), phi)


def ax_top(phi: Formula, ctx) -> Thm:
    return rule("ax-top", [], tuple(ctx), phi)


def bot_e(phi: Formula, ctx) -> Thm:
    return rule("ax-bot", [], tuple(ctx), phi)


def and_l(phi, psi, ctx) -> Thm:
    return rule("ax-and-l", [], tuple(ctx), phi, psi)


def and_r(phi, psi, ctx) -> Thm:
    return rule("ax-and-r", [], tuple(ctx), phi, psi)


def and_i(a: Thm, b: Thm) -> Thm:
    return rule("and-intro", [a, b])


def or_ax_l(phi, psi, ctx) -> Thm:
    return rule("ax-or-l", [], tuple(ctx), phi, psi)


def or_ax_r(phi, psi, ctx) -> Thm:
    return rule("ax-or-r", [], tuple(ctx), phi, psi)


def or_e(a: Thm, b: Thm) -> Thm:
    return rule("or-elim", [a, b])


def cut(*thms: Thm) -> Thm:
    out = thms[0]
    for t in thms[1:]:
        out = rule("cut", [out, t])
    return out


def sub(t: Thm, terms, new_ctx) -> Thm:
    return rule("sub", [t], tuple(terms), tuple(new_ctx))


def rectx(t: Thm, new_ctx, mapping: dict[str, Term] | None = None) -> Thm:
    """Context change: weakening, contraction, permutation or renaming in
    one substitution step.  `mapping` sends old context variables to
    terms over the new context (identity by default)."""
    mapping = mapping or {}
    terms = [mapping.get(v, Var(v)) for v in t.ctx]
    return sub(t, terms, tuple(new_ctx))


def ex_bind(t: Thm, y: str) -> Thm:
    return rule("ex-bind", [t], y)


def ex_free(t: Thm, v: str) -> Thm:
    return rule("ex-free", [t], v)


def ball_bind(t: Thm, z: str) -> Thm:
    return rule("ball-bind", [t], z)


def ball_free(t: Thm, v: str) -> Thm:
    return rule("ball-free", [t], v)


def distrib(phi, psi, chi, ctx) -> Thm:
    return rule("ax-distrib", [], tuple(ctx), phi, psi, chi)


def frobenius(phi, y, psi, ctx) -> Thm:
    return rule("ax-frobenius", [], tuple(ctx), phi, y, psi)


def ind_r(base: Thm, step: Thm, y: str) -> Thm:
    return rule("ind-r", [base, step], y)


def ind_l(base: Thm, step: Thm, y: str) -> Thm:
    return rule("ind-l", [base, step], y)


# -- equality toolkit ---------------------------------------------------------


def refl(t: Term, ctx) -> Thm:
    base = rule("ax-eq-refl", [], "x")
    return sub(base, [t], tuple(ctx))


def _subst_lemma(c_formula: Formula, w: str, w2: str, ctx) -> Thm:
    """C(w) and w = w2  |-  C(w2), generically over ctx + (w, w2)."""
    full = tuple(ctx) + (w, w2)
    prem = ident(c_formula, tuple(ctx) + (w,))
    return rule(
        "eq-down",
        [prem],
        w,
        w2,
        c_formula,
        substitute(c_formula, {w: Var(w2)}),
        full,
    )


def _holes(f: Formula, target: Term, hole: Term, positions, blocked: set[str]):
    """Replace occurrences of `target` (counted left to right) by `hole`,
    skipping any subformula binding a variable of the target or hole."""
    counter = [0]

    def goterm(t: Term) -> Term:
        if t == target:
            i = counter[0]
            counter[0] += 1
            if positions is None or i in positions:
                return hole
            return t
        match t:
            case App(f=f0, args=args):
                return App(f0, tuple(goterm(a) for a in args))
        return t

    def go(g: Formula) -> Formula:
        match g:
            case Top() | Bot():
                return g
            case Eq(left=a, right=b):
                return Eq(goterm(a), goterm(b))
            case Lt(left=a, right=b):
                return Lt(goterm(a), goterm(b))
            case And(left=a, right=b):
                return And(go(a), go(b))
            case Or(left=a, right=b):
                return Or(go(a), go(b))
            case Exists(var=v, body=b):
                if v in blocked:
                    return g
                return Exists(v, go(b))
            case BForall(var=v, bound=t, body=b):
                t2 = goterm(t)
                if v in blocked:
                    return BForall(v, t2, b)
                return BForall(v, t2, go(b))
        raise TypeError(f"not a formula: {g!r}")

    return go(f), counter[0]


def _match_eq(eq: Thm) -> tuple[Term, Term]:
    match eq.rhs:
        case Eq(left=t, right=u):
            return t, u
    raise ValueError(f"not an equation: {eq.rhs!r}")


def _align_eq(eq: Thm, target: Thm) -> Thm:
    """Bring the equation under the target's context and antecedent."""
    if eq.ctx != target.ctx:
        eq = rectx(eq, target.ctx)
    if alpha_eq(eq.lhs, target.lhs):
        return eq
    if isinstance(eq.lhs, Top):
        return cut(ax_top(target.lhs, target.ctx), eq)
    raise ValueError(f"equation antecedent {eq.lhs!r} does not match {target.lhs!r}")


def _rw_core(target: Thm, eq: Thm, c_formula: Formula, w: str) -> Thm:
    """Conclude A |- C[u] from target A |- C[t] and eq A |- t = u, where
    c_formula is C with the hole variable w."""
    t, u = _match_eq(eq)
    w2 = fresh_name(w, free_vars(c_formula) | set(target.ctx) | term_vars(t) | term_vars(u) | {w})
    lem = _subst_lemma(c_formula, w, w2, target.ctx)
    inst = sub(lem, [Var(v) for v in target.ctx] + [t, u], target.ctx)
    return cut(and_i(target, eq), inst)


def rw_exact(target: Thm, eq: Thm, c_formula: Formula, w: str) -> Thm:
    """Rewrite with an explicit template: target proves A |- C[t], eq
    proves t = u, and c_formula is C with hole variable w; concludes
    A |- C[u]."""
    eq = _align_eq(eq, target)
    if w in target.ctx:
        t, u = _match_eq(eq)
        w2 = fresh_name(w, set(target.ctx) | free_vars(c_formula) | term_vars(t) | term_vars(u))
        c_formula = substitute(c_formula, {w: Var(w2)})
        w = w2
    return _rw_core(target, eq, c_formula, w)


def ball_elim_at(thm: Thm, at: Term, v: str | None = None) -> Thm:
    """From G |- ball z < t body conclude G and at < t |- body[at/z]."""
    match thm.rhs:
        case BForall(var=z):
            pass
        case _:
            raise ValueError(f"not a bounded universal: {thm.rhs!r}")
    v = v or fresh_name(z, set(thm.ctx) | free_vars(thm.rhs) | term_vars(at))
    opened = ball_free(thm, v)
    return sub(opened, [Var(x) for x in thm.ctx] + [at], thm.ctx)


def rw(target: Thm, eq: Thm, positions: set[int] | None = None, backwards: bool = False) -> Thm:
    """Rewrite t to u in the succedent of `target`, where `eq` proves
    t = u (u = t with backwards=True) under an antecedent that is Top or
    alpha-equal to the target's.  `positions` selects occurrences counted
    left to right; all by default."""
    if backwards:
        eq = sym(eq)
    t, u = _match_eq(eq)
    eq = _align_eq(eq, target)
    blocked = term_vars(t) | term_vars(u)
    avoid = free_vars(target.rhs) | set(target.ctx) | blocked
    w = fresh_name("w", avoid)
    c_formula, found = _holes(target.rhs, t, Var(w), positions, blocked)
    if not found:
        raise ValueError(f"term {t!r} does not occur in {target.rhs!r}")
    return _rw_core(target, eq, c_formula, w)


def rw_lhs(thm: Thm, eq: Thm, positions: set[int] | None = None) -> Thm:
    """Strengthen the antecedent: from A |- chi and an equation t = u
    (over Top or the new antecedent), conclude A[u -> t] |- chi, the
    selected occurrences of u in A replaced by t."""
    t, u = _match_eq(eq)
    blocked = term_vars(t) | term_vars(u)
    avoid = free_vars(thm.lhs) | set(thm.ctx) | blocked
    w = fresh_name("w", avoid)
    c_formula, found = _holes(thm.lhs, u, Var(w), positions, blocked)
    if not found:
        raise ValueError(f"term {u!r} does not occur in {thm.lhs!r}")
    new_lhs = substitute(c_formula, {w: t})
    if eq.ctx != thm.ctx:
        eq = rectx(eq, thm.ctx)
    if not alpha_eq(eq.lhs, new_lhs):
        if isinstance(eq.lhs, Top):
            eq = cut(ax_top(new_lhs, thm.ctx), eq)
        else:
            raise ValueError(f"equation antecedent {eq.lhs!r} unusable for {new_lhs!r}")
    w2 = fresh_name(w, avoid | {w})
    lem = _subst_lemma(c_formula, w, w2, thm.ctx)
    inst = sub(lem, [Var(v) for v in thm.ctx] + [t, u], thm.ctx)
    bridged = cut(and_i(ident(new_lhs, thm.ctx), eq), inst)
    return cut(bridged, thm)


def sym(eq: Thm) -> Thm:
    """From A |- t = u derive A |- u = t."""
    t, u = _match_eq(eq)
    base = refl(t, eq.ctx)
    if not alpha_eq(base.lhs, eq.lhs):
        base = cut(ax_top(eq.lhs, eq.ctx), base)
    w = fresh_name("w", set(eq.ctx) | term_vars(t) | term_vars(u))
    return _rw_core(base, eq, Eq(Var(w), t), w)


def trans(a: Thm, b: Thm) -> Thm:
    """From A |- t = u and A |- u = v derive A |- t = v."""
    t, u = _match_eq(a)
    u2, v = _match_eq(b)
    if not alpha_eq(Eq(u, u), Eq(u2, u2)):
        raise ValueError(f"equations do not chain: {a.rhs!r} then {b.rhs!r}")
    b = _align_eq(b, a)
    w = fresh_name("w", set(a.ctx) | term_vars(t) | term_vars(u) | term_vars(v))
    return _rw_core(a, b, Eq(t, Var(w)), w)


def chain(*eqs: Thm) -> Thm:
    out = eqs[0]
    for e in eqs[1:]:
        out = trans(out, e)
    return out


def subst_hole(template: Term, hole: str, value: Term) -> Term:
    match template:
        case Var(name=v) if v == hole:
            return value
        case App(f=f, args=args):
            return App(f, tuple(subst_hole(a, hole, value) for a in args))
    return template


def cong(eq: Thm, template: Term, hole: str) -> Thm:
    """From A |- t = u derive A |- template[t/hole] = template[u/hole]."""
    t, u = _match_eq(eq)
    left = subst_hole(template, hole, t)
    base = refl(left, eq.ctx)
    if not alpha_eq(base.lhs, eq.lhs):
        base = cut(ax_top(eq.lhs, eq.ctx), base)
    w = fresh_name(hole, set(eq.ctx) | term_vars(template) | term_vars(t) | term_vars(u))
    c_formula = Eq(left, subst_hole(template, hole, Var(w)))
    return _rw_core(base, eq, c_formula, w)


# -- conjunction / disjunction restructuring ----------------------------------


def _conj_leaves(f: Formula) -> list[Formula]:
    match f:
        case And(left=a, right=b):
            return _conj_leaves(a) + _conj_leaves(b)
    return [f]


def _leaf_proof(src: Formula, leaf: Formula, ctx) -> Thm | None:
    """src |- leaf when leaf is an and-leaf of src (or Top)."""
    if alpha_eq(src, leaf):
        return ident(src, ctx)
    if isinstance(leaf, Top):
        return ax_top(src, ctx)
    match src:
        case And(left=a, right=b):
            left = _leaf_proof(a, leaf, ctx)
            if left is not None:
                return cut(and_l(a, b, ctx), left)
            right = _leaf_proof(b, leaf, ctx)
            if right is not None:
                return cut(and_r(a, b, ctx), right)
    return None


def conj_implies(src: Formula, dst: Formula, ctx) -> Thm:
    """src |- dst whenever every and-leaf of dst appears in src (Top is
    always available)."""

    def build(d: Formula) -> Thm:
        match d:
            case And(left=a, right=b):
                return and_i(build(a), build(b))
        got = _leaf_proof(src, d, ctx)
        if got is None:
            raise ValueError(f"conjunct {d!r} not available in {src!r}")
        return got

    return build(dst)


def sel(t: Thm, leaf: Formula) -> Thm:
    """Project one and-leaf out of the succedent of t."""
    return cut(t, conj_implies(t.rhs, leaf, t.ctx))


def disj_implies(src: Formula, dst: Formula, ctx) -> Thm:
    """src |- dst whenever every or-leaf of src appears as an or-leaf of
    dst (Bot leaves are dismissed)."""

    def inject(leaf: Formula) -> Thm:
        if isinstance(leaf, Bot):
            return bot_e(dst, ctx)

        def find(d: Formula) -> Thm | None:
            if alpha_eq(d, leaf):
                return ident(leaf, ctx)
            match d:
                case Or(left=a, right=b):
                    got = find(a)
                    if got is not None:
                        return cut(got, or_ax_l(a, b, ctx))
                    got = find(b)
                    if got is not None:
                        return cut(got, or_ax_r(a, b, ctx))
            return None

        got = find(dst)
        if got is None:
            raise ValueError(f"disjunct {leaf!r} not available in {dst!r}")
        return got

    def build(sf: Formula) -> Thm:
        match sf:
            case Or(left=a, right=b):
                return or_e(build(a), build(b))
        return inject(sf)

    return build(src)


def or_i1(t: Thm, psi: Formula) -> Thm:
    return cut(t, or_ax_l(t.rhs, psi, t.ctx))


def or_i2(t: Thm, phi: Formula) -> Thm:
    return cut(t, or_ax_r(phi, t.rhs, t.ctx))


# -- case analysis and existentials -------------------------------------------


def by_cases(scrut: Thm, br1: Thm, br2: Thm) -> Thm:
    """From G |- phi or psi and branches G and phi |- chi, G and psi |- chi
    conclude G |- chi."""
    match scrut.rhs:
        case Or(left=phi, right=psi):
            pass
        case _:
            raise ValueError(f"not a disjunction: {scrut.rhs!r}")
    gam = scrut.lhs
    start = and_i(ident(gam, scrut.ctx), scrut)
    dist = distrib(gam, phi, psi, scrut.ctx)
    return cut(start, dist, or_e(br1, br2))


def case_shape(scrut: Thm) -> tuple[Formula, Formula]:
    """The branch antecedents `by_cases` expects for this scrutinee."""
    match scrut.rhs:
        case Or(left=phi, right=psi):
            return And(scrut.lhs, phi), And(scrut.lhs, psi)
    raise ValueError(f"not a disjunction: {scrut.rhs!r}")


def ex_i(pf: Thm, exform: Formula, witness: Term) -> Thm:
    """From A |- phi[witness/y] conclude A |- ex y phi."""
    match exform:
        case Exists(var=y, body=body):
            pass
        case _:
            raise ValueError(f"not an existential: {exform!r}")
    v = fresh_name(y, set(pf.ctx) | free_vars(exform))
    opened = ex_free(ident(exform, pf.ctx), v)
    inst = sub(opened, [Var(x) for x in pf.ctx] + [witness], pf.ctx)
    if not alpha_eq(inst.lhs, pf.rhs):
        raise ValueError(f"witness instance {inst.lhs!r} does not match {pf.rhs!r}")
    return cut(pf, inst)


def ex_mono(pf: Thm, y: str) -> Thm:
    """From phi |-_{ctx,y} psi conclude ex y phi |-_{ctx - y} psi', the
    succedent rebound under ex y."""
    target = Exists(y, pf.rhs)
    outer = tuple(v for v in pf.ctx if v != y)
    intro = ex_free(ident(target, outer), y)  # psi[y] |- ex y psi over outer+(y,)
    if intro.ctx != pf.ctx:
        intro = rectx(intro, pf.ctx)
    return ex_bind(cut(pf, intro), y)


def unpack_shape(scrut: Thm, v: str) -> Formula:
    """Branch antecedent for `ex_unpack`: scrutinee antecedent conjoined
    with the opened existential body."""
    match scrut.rhs:
        case Exists(var=y, body=body):
            opened = substitute(body, {y: Var(v)}) if v != y else body
            return And(scrut.lhs, opened)
    raise ValueError(f"not an existential: {scrut.rhs!r}")


def ex_unpack(scrut: Thm, br: Thm, v: str) -> Thm:
    """From G |- ex y phi and G and phi[v/y] |-_{ctx+(v,)} chi (with v not
    free in chi) conclude G |- chi."""
    match scrut.rhs:
        case Exists(var=y, body=body):
            pass
        case _:
            raise ValueError(f"not an existential: {scrut.rhs!r}")
    gam = scrut.lhs
    frob = frobenius(gam, v, substitute(body, {y: Var(v)}) if v != y else body, scrut.ctx)
    start = and_i(ident(gam, scrut.ctx), scrut)
    closed = ex_bind(br, v)
    return cut(start, frob, closed)


# -- miscellaneous ------------------------------------------------------------


def strengthen(t: Thm, big: Formula) -> Thm:
    """From phi |- psi obtain big |- psi when phi's conjuncts all occur
    in big."""
    return cut(conj_implies(big, t.lhs, t.ctx), t)


def from_top(t: Thm, lhs: Formula) -> Thm:
    """From TOP |- psi derive lhs |- psi."""
    if not isinstance(t.lhs, Top):
        raise ValueError(f"antecedent is not top: {t.lhs!r}")
    return cut(ax_top(lhs, t.ctx), t)
