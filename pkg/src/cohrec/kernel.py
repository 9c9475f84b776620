"""LCF-style proof kernel for coherent arithmetic.

A `Proof` is a tree of rule applications; `apply_rule` computes the one
conclusion each rule instance admits, raising on any side-condition
breach, and `check_proof` is the only mint for `CheckedSequent` values.

The rule set: structural rules (identity, substitution, cut), the
connective axioms and rules of coherent logic, the existential and
equality double rules, distributivity and Frobenius, the bounded
universal quantifier double rule, right and left induction, and the
axiom schemas of the arithmetic theory: defining equations for every
function description, successor axioms, the order axiom, and a small
definitional family for the sequence toolkit (singleton, append,
droplast read through lh and entry access).

The displayed distributivity conclusion uses the standard form
(phi and psi) or (phi and chi).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import coding
from .syntax import (
    And,
    App,
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
    Var,
    Z,
    Zero,
    alpha_eq,
    arity,
    free_vars,
    num,
    s,
    substitute,
    term_vars,
)


class KernelError(Exception):
    """Base for proof-checking failures; `path` locates the tree node."""

    def __init__(self, msg: str, path: tuple[int, ...] = ()):
        self.path = path
        super().__init__(msg)

    def at(self, path: tuple[int, ...]) -> "KernelError":
        err = type(self)(self.args[0], path)
        return err

    def __str__(self):
        loc = "/".join(map(str, self.path)) if self.path else "root"
        return f"[{loc}] {self.args[0]}"


class UnknownRule(KernelError):
    pass


class WrongPremiseShape(KernelError):
    pass


class SideConditionViolation(KernelError):
    pass


class ContextMismatch(KernelError):
    pass


@dataclass(frozen=True)
class Proof:
    rule: str
    params: tuple
    children: tuple["Proof", ...] = ()


_MINT = object()


class CheckedSequent:
    """A sequent together with the kernel's stamp; only `check_proof`
    constructs these."""

    __slots__ = ("sequent", "proof")

    def __init__(self, sequent: Sequent, proof: Proof, token=None):
        if token is not _MINT:
            raise SideConditionViolation("CheckedSequent values are minted by check_proof only")
        object.__setattr__(self, "sequent", sequent)
        object.__setattr__(self, "proof", proof)

    def __setattr__(self, *a):
        raise AttributeError("CheckedSequent is immutable")

    def __repr__(self):
        return f"<checked {self.sequent!r}>"


def _need_ctx(ctx) -> tuple[str, ...]:
    ctx = tuple(ctx)
    if len(set(ctx)) != len(ctx):
        raise ContextMismatch(f"context variables not distinct: {ctx}")
    return ctx


def _seq(ctx, lhs: Formula, rhs: Formula) -> Sequent:
    try:
        return Sequent(tuple(ctx), lhs, rhs)
    except ValueError as e:
        raise SideConditionViolation(str(e)) from None


def _same_ctx(premises: list[Sequent]) -> tuple[str, ...]:
    ctxs = {p.ctx for p in premises}
    if len(ctxs) != 1:
        raise ContextMismatch(f"premise contexts differ: {sorted(ctxs)}")
    return premises[0].ctx


def _distinct_vars(*vs: str):
    if len(set(vs)) != len(vs):
        raise SideConditionViolation(f"variables must be distinct: {vs}")


def _fresh_in(v: str, ctx: tuple[str, ...]):
    if v in ctx:
        raise SideConditionViolation(f"variable {v!r} already occurs in context {ctx}")


def _app(d: FuncDesc, *args: Term) -> Term:
    return App(d, tuple(args))


def _vterms(vs) -> tuple[Term, ...]:
    return tuple(Var(v) for v in vs)


def _seq_axiom(name: str, vs: tuple[str, ...]) -> Sequent:
    lh, idx = coding.LH, coding.IDX
    sg, a1, dl = coding.SINGLETON, coding.APPEND1, coding.DROPLAST
    if name == "sg-len":
        (z,) = vs
        return _seq(vs, Top(), Eq(_app(lh, _app(sg, Var(z))), num(1)))
    if name == "sg-at":
        (z,) = vs
        return _seq(vs, Top(), Eq(_app(idx, _app(sg, Var(z)), Zero()), Var(z)))
    if name == "cat-len":
        l, v = vs
        cat = _app(a1, Var(l), Var(v))
        return _seq(vs, Top(), Eq(_app(lh, cat), s(_app(lh, Var(l)))))
    if name == "cat-old":
        l, v, i = vs
        cat = _app(a1, Var(l), Var(v))
        return _seq(
            vs,
            Lt(Var(i), _app(lh, Var(l))),
            Eq(_app(idx, cat, Var(i)), _app(idx, Var(l), Var(i))),
        )
    if name == "cat-new":
        l, v = vs
        cat = _app(a1, Var(l), Var(v))
        return _seq(vs, Top(), Eq(_app(idx, cat, _app(lh, Var(l))), Var(v)))
    if name == "dl-len":
        (l,) = vs
        return _seq(
            vs,
            Top(),
            Eq(_app(lh, _app(dl, Var(l))), _app(coding.MONUS, _app(lh, Var(l)), num(1))),
        )
    if name == "dl-at":
        l, i = vs
        return _seq(
            vs,
            Lt(s(Var(i)), _app(lh, Var(l))),
            Eq(_app(idx, _app(dl, Var(l)), Var(i)), _app(idx, Var(l), Var(i))),
        )
    raise UnknownRule(f"unknown sequence axiom {name!r}")


SEQ_AXIOM_ARITY = {
    "sg-len": 1,
    "sg-at": 1,
    "cat-len": 2,
    "cat-old": 3,
    "cat-new": 2,
    "dl-len": 1,
    "dl-at": 2,
}


def apply_rule(rule: str, premises: list[Sequent], params: tuple) -> Sequent:
    """Conclusion of one rule application; deterministic in its inputs."""
    n = len(premises)

    def want(k: int):
        if n != k:
            raise WrongPremiseShape(f"rule {rule} takes {k} premises, got {n}")

    match rule:
        # -- structural ---------------------------------------------------
        case "id":
            want(0)
            ctx, phi = params
            return _seq(_need_ctx(ctx), phi, phi)
        case "sub":
            want(1)
            terms, new_ctx = params
            prem = premises[0]
            new_ctx = _need_ctx(new_ctx)
            if len(terms) != len(prem.ctx):
                raise WrongPremiseShape(
                    f"substitution provides {len(terms)} terms for context {prem.ctx}"
                )
            loose = set().union(*[term_vars(t) for t in terms]) if terms else set()
            if not loose <= set(new_ctx):
                raise SideConditionViolation(
                    f"substituted terms mention {sorted(loose - set(new_ctx))} outside {new_ctx}"
                )
            sub = dict(zip(prem.ctx, terms))
            return _seq(new_ctx, substitute(prem.lhs, sub), substitute(prem.rhs, sub))
        case "cut":
            want(2)
            a, b = premises
            if a.ctx != b.ctx:
                raise ContextMismatch(f"cut contexts differ: {a.ctx} vs {b.ctx}")
            if not alpha_eq(a.rhs, b.lhs):
                raise WrongPremiseShape(
                    f"cut premises disagree on the middle formula: {a.rhs!r} vs {b.lhs!r}"
                )
            return _seq(a.ctx, a.lhs, b.rhs)

        # -- conjunction --------------------------------------------------
        case "ax-top":
            want(0)
            ctx, phi = params
            return _seq(_need_ctx(ctx), phi, Top())
        case "ax-and-l":
            want(0)
            ctx, phi, psi = params
            return _seq(_need_ctx(ctx), And(phi, psi), phi)
        case "ax-and-r":
            want(0)
            ctx, phi, psi = params
            return _seq(_need_ctx(ctx), And(phi, psi), psi)
        case "and-intro":
            want(2)
            ctx = _same_ctx(premises)
            a, b = premises
            if not alpha_eq(a.lhs, b.lhs):
                raise WrongPremiseShape("conjunction introduction needs equal antecedents")
            return _seq(ctx, a.lhs, And(a.rhs, b.rhs))

        # -- disjunction --------------------------------------------------
        case "ax-bot":
            want(0)
            ctx, phi = params
            return _seq(_need_ctx(ctx), Bot(), phi)
        case "ax-or-l":
            want(0)
            ctx, phi, psi = params
            return _seq(_need_ctx(ctx), phi, Or(phi, psi))
        case "ax-or-r":
            want(0)
            ctx, phi, psi = params
            return _seq(_need_ctx(ctx), psi, Or(phi, psi))
        case "or-elim":
            want(2)
            ctx = _same_ctx(premises)
            a, b = premises
            if not alpha_eq(a.rhs, b.rhs):
                raise WrongPremiseShape("disjunction elimination needs equal succedents")
            return _seq(ctx, Or(a.lhs, b.lhs), a.rhs)

        # -- existential double rule ---------------------------------------
        case "ex-bind":
            want(1)
            (y,) = params
            prem = premises[0]
            if y not in prem.ctx:
                raise ContextMismatch(f"existential variable {y!r} missing from {prem.ctx}")
            if y in free_vars(prem.rhs):
                raise SideConditionViolation(
                    f"variable {y!r} occurs free in the succedent {prem.rhs!r}"
                )
            ctx = tuple(v for v in prem.ctx if v != y)
            return _seq(ctx, Exists(y, prem.lhs), prem.rhs)
        case "ex-free":
            want(1)
            (v,) = params
            prem = premises[0]
            match prem.lhs:
                case Exists(var=y, body=body):
                    _fresh_in(v, prem.ctx)
                    opened = substitute(body, {y: Var(v)}) if v != y else body
                    return _seq(prem.ctx + (v,), opened, prem.rhs)
            raise WrongPremiseShape(f"premise antecedent is not existential: {prem.lhs!r}")

        # -- distributivity and Frobenius ----------------------------------
        case "ax-distrib":
            want(0)
            ctx, phi, psi, chi = params
            return _seq(
                _need_ctx(ctx),
                And(phi, Or(psi, chi)),
                Or(And(phi, psi), And(phi, chi)),
            )
        case "ax-frobenius":
            want(0)
            ctx, phi, y, psi = params
            ctx = _need_ctx(ctx)
            _fresh_in(y, ctx)
            if y in free_vars(phi):
                raise SideConditionViolation(f"Frobenius variable {y!r} occurs in {phi!r}")
            return _seq(ctx, And(phi, Exists(y, psi)), Exists(y, And(phi, psi)))

        # -- equality -------------------------------------------------------
        case "ax-eq-refl":
            want(0)
            (x,) = params
            return _seq((x,), Top(), Eq(Var(x), Var(x)))
        case "eq-down":
            want(1)
            y, z, phi, psi, ctx = params
            ctx = _need_ctx(ctx)
            _distinct_vars(y, z)
            if y not in ctx or z not in ctx:
                raise ContextMismatch(f"equality variables {y!r},{z!r} must be in {ctx}")
            prem_ctx = tuple(v for v in ctx if v != z)
            ren = {z: Var(y)}
            expected = _seq(prem_ctx, substitute(phi, ren), substitute(psi, ren))
            if not _match(premises[0], expected):
                raise WrongPremiseShape(
                    f"equality rule premise {premises[0]!r} does not match {expected!r}"
                )
            return _seq(ctx, And(phi, Eq(Var(y), Var(z))), psi)
        case "eq-up":
            want(1)
            prem = premises[0]
            match prem.lhs:
                case And(left=phi, right=Eq(left=Var(name=y), right=Var(name=z))):
                    _distinct_vars(y, z)
                    if y not in prem.ctx or z not in prem.ctx:
                        raise ContextMismatch(f"equality variables must be in {prem.ctx}")
                    ren = {z: Var(y)}
                    ctx = tuple(v for v in prem.ctx if v != z)
                    return _seq(ctx, substitute(phi, ren), substitute(prem.rhs, ren))
            raise WrongPremiseShape(
                f"premise antecedent is not of the form phi and y = z: {prem.lhs!r}"
            )

        # -- bounded universal double rule ----------------------------------
        case "ball-bind":
            want(1)
            (z,) = params
            prem = premises[0]
            match prem.lhs:
                case And(left=psi, right=Lt(left=Var(name=z2), right=t)) if z2 == z:
                    if z not in prem.ctx:
                        raise ContextMismatch(f"bound variable {z!r} missing from {prem.ctx}")
                    if z in free_vars(psi):
                        raise SideConditionViolation(
                            f"bound variable {z!r} occurs free in {psi!r}"
                        )
                    if z in term_vars(t):
                        raise SideConditionViolation(f"bound variable {z!r} occurs in bound {t!r}")
                    ctx = tuple(v for v in prem.ctx if v != z)
                    return _seq(ctx, psi, BForall(z, t, prem.rhs))
            raise WrongPremiseShape(
                f"premise antecedent is not of the form psi and {z} < t: {prem.lhs!r}"
            )
        case "ball-free":
            want(1)
            (v,) = params
            prem = premises[0]
            match prem.rhs:
                case BForall(var=z, bound=t, body=body):
                    _fresh_in(v, prem.ctx)
                    opened = substitute(body, {z: Var(v)}) if v != z else body
                    return _seq(prem.ctx + (v,), And(prem.lhs, Lt(Var(v), t)), opened)
            raise WrongPremiseShape(f"premise succedent is not bounded-universal: {prem.rhs!r}")

        # -- induction ------------------------------------------------------
        case "ind-r":
            want(2)
            (y,) = params
            base, step = premises
            if step.ctx != base.ctx + (y,):
                raise ContextMismatch(
                    f"induction step context {step.ctx} must extend {base.ctx} by {y!r}"
                )
            match step.lhs:
                case And(left=psi, right=phi):
                    if not alpha_eq(psi, base.lhs):
                        raise WrongPremiseShape(
                            "step antecedent must conjoin the base antecedent with the invariant"
                        )
                    if not alpha_eq(base.rhs, substitute(phi, {y: Zero()})):
                        raise WrongPremiseShape("base succedent is not the invariant at zero")
                    if not alpha_eq(step.rhs, substitute(phi, {y: s(Var(y))})):
                        raise WrongPremiseShape("step succedent is not the invariant at successor")
                    return _seq(step.ctx, psi, phi)
            raise WrongPremiseShape(f"step antecedent is not a conjunction: {step.lhs!r}")
        case "ind-l":
            want(2)
            (y,) = params
            base, step = premises
            if step.ctx != base.ctx + (y,):
                raise ContextMismatch(
                    f"induction step context {step.ctx} must extend {base.ctx} by {y!r}"
                )
            match step.rhs:
                case Or(left=phi, right=psi):
                    if y in free_vars(phi):
                        raise SideConditionViolation(
                            f"induction target {phi!r} mentions the variable {y!r}"
                        )
                    if not alpha_eq(phi, base.rhs):
                        raise WrongPremiseShape("step succedent must rejoin the base succedent")
                    if not alpha_eq(base.lhs, substitute(psi, {y: Zero()})):
                        raise WrongPremiseShape("base antecedent is not the predicate at zero")
                    if not alpha_eq(step.lhs, substitute(psi, {y: s(Var(y))})):
                        raise WrongPremiseShape("step antecedent is not the predicate at successor")
                    return _seq(step.ctx, psi, phi)
            raise WrongPremiseShape(f"step succedent is not a disjunction: {step.rhs!r}")

        # -- arithmetic axioms ----------------------------------------------
        case "ax-z":
            want(0)
            (x,) = params
            return _seq((x,), Top(), Eq(_app(Z(), Var(x)), Zero()))
        case "ax-proj":
            want(0)
            nn, k, vs = params
            vs = _need_ctx(vs)
            if len(vs) != nn or not 1 <= k <= nn:
                raise SideConditionViolation(f"projection axiom needs {nn} variables, index {k}")
            return _seq(vs, Top(), Eq(_app(Proj(nn, k), *_vterms(vs)), Var(vs[k - 1])))
        case "ax-succ-zero":
            want(0)
            (x,) = params
            return _seq((x,), Eq(s(Var(x)), Zero()), Bot())
        case "ax-succ-inj":
            want(0)
            x, y = params
            _distinct_vars(x, y)
            return _seq((x, y), Eq(s(Var(x)), s(Var(y))), Eq(Var(x), Var(y)))
        case "ax-cn":
            want(0)
            d, vs = params
            vs = _need_ctx(vs)
            match d:
                case Cn(h=h, gs=gs):
                    if len(vs) != arity(d):
                        raise SideConditionViolation(
                            f"composition axiom needs {arity(d)} variables, got {len(vs)}"
                        )
                    args = _vterms(vs)
                    inner = tuple(_app(g, *args) for g in gs)
                    return _seq(vs, Top(), Eq(_app(d, *args), _app(h, *inner)))
            raise SideConditionViolation(f"not a composition description: {d!r}")
        case "ax-pr-zero":
            want(0)
            d, vs = params
            vs = _need_ctx(vs)
            match d:
                case Pr(g=g):
                    if len(vs) != arity(g):
                        raise SideConditionViolation(
                            f"recursion base axiom needs {arity(g)} variables, got {len(vs)}"
                        )
                    args = _vterms(vs)
                    return _seq(vs, Top(), Eq(_app(d, *args, Zero()), _app(g, *args)))
            raise SideConditionViolation(f"not a recursion description: {d!r}")
        case "ax-pr-succ":
            want(0)
            d, vs, y = params
            vs = _need_ctx(vs)
            match d:
                case Pr(g=g, h=h):
                    if len(vs) != arity(g):
                        raise SideConditionViolation(
                            f"recursion step axiom needs {arity(g)} variables, got {len(vs)}"
                        )
                    _fresh_in(y, vs)
                    args = _vterms(vs)
                    yv = Var(y)
                    return _seq(
                        vs + (y,),
                        Top(),
                        Eq(_app(d, *args, s(yv)), _app(h, *args, yv, _app(d, *args, yv))),
                    )
            raise SideConditionViolation(f"not a recursion description: {d!r}")
        case "ax-lt-intro" | "ax-lt-elim":
            want(0)
            x, y, z = params
            _distinct_vars(x, y, z)
            exf = Exists(z, Eq(_app(coding.ADD, Var(x), s(Var(z))), Var(y)))
            if rule == "ax-lt-intro":
                return _seq((x, y), exf, Lt(Var(x), Var(y)))
            return _seq((x, y), Lt(Var(x), Var(y)), exf)
        case "ax-seq":
            want(0)
            name, vs = params
            vs = _need_ctx(vs)
            if SEQ_AXIOM_ARITY.get(name) != len(vs):
                raise SideConditionViolation(
                    f"sequence axiom {name!r} takes {SEQ_AXIOM_ARITY.get(name)} variables"
                )
            return _seq_axiom(name, vs)

    raise UnknownRule(f"unknown rule {rule!r}")


def _match(got: Sequent, expected: Sequent) -> bool:
    return got.ctx == expected.ctx and alpha_eq(got.lhs, expected.lhs) and alpha_eq(
        got.rhs, expected.rhs
    )


def check_proof(p: Proof) -> CheckedSequent:
    """Re-derive every node; the root conclusion is stamped on success."""
    return CheckedSequent(_check(p, ()), p, _MINT)


def _check(p: Proof, path: tuple[int, ...]) -> Sequent:
    if not isinstance(p, Proof):
        raise WrongPremiseShape(f"not a proof node: {p!r}", path)
    premises = [_check(c, path + (i,)) for i, c in enumerate(p.children)]
    try:
        return apply_rule(p.rule, premises, p.params)
    except KernelError as e:
        if e.path:
            raise
        raise e.at(path) from None


# ---------------------------------------------------------------------------
# Proof scripts: s-expression serialization.  One file holds one named
# theorem: (theorem NAME SEQUENT PROOF).

from .syntax import (  # noqa: E402
    DescPrinter,
    desc_from_sexpr,
    desc_to_sexpr,
    formula_from_sexpr,
    formula_to_sexpr,
    read_sexprs,
    sequent_from_sexpr,
    sequent_to_sexpr,
    term_from_sexpr,
    term_to_sexpr,
    ParseError,
)

# Parameter signatures for (de)serialization, one entry per rule.
RULE_PARAMS: dict[str, tuple[str, ...]] = {
    "id": ("ctx", "formula"),
    "sub": ("terms", "ctx"),
    "cut": (),
    "ax-top": ("ctx", "formula"),
    "ax-and-l": ("ctx", "formula", "formula"),
    "ax-and-r": ("ctx", "formula", "formula"),
    "and-intro": (),
    "ax-bot": ("ctx", "formula"),
    "ax-or-l": ("ctx", "formula", "formula"),
    "ax-or-r": ("ctx", "formula", "formula"),
    "or-elim": (),
    "ex-bind": ("var",),
    "ex-free": ("var",),
    "ax-distrib": ("ctx", "formula", "formula", "formula"),
    "ax-frobenius": ("ctx", "formula", "var", "formula"),
    "ax-eq-refl": ("var",),
    "eq-down": ("var", "var", "formula", "formula", "ctx"),
    "eq-up": (),
    "ball-bind": ("var",),
    "ball-free": ("var",),
    "ind-r": ("var",),
    "ind-l": ("var",),
    "ax-z": ("var",),
    "ax-proj": ("int", "int", "ctx"),
    "ax-succ-zero": ("var",),
    "ax-succ-inj": ("var", "var"),
    "ax-cn": ("desc", "ctx"),
    "ax-pr-zero": ("desc", "ctx"),
    "ax-pr-succ": ("desc", "ctx", "var"),
    "ax-lt-intro": ("var", "var", "var"),
    "ax-lt-elim": ("var", "var", "var"),
    "ax-seq": ("name", "ctx"),
}


def _param_to_sexpr(kind: str, value, printer: DescPrinter) -> str:
    if kind == "var" or kind == "name":
        return str(value)
    if kind == "int":
        return str(value)
    if kind == "ctx":
        return "(ctx " + " ".join(value) + ")" if value else "(ctx)"
    if kind == "terms":
        return "(terms " + " ".join(term_to_sexpr(t, printer) for t in value) + ")" if value else "(terms)"
    if kind == "formula":
        return "(formula " + formula_to_sexpr(value, printer) + ")"
    if kind == "desc":
        return "(desc " + desc_to_sexpr(value, printer) + ")"
    raise ValueError(f"unknown parameter kind {kind}")


def _param_from_sexpr(kind: str, node, names) -> object:
    if kind in ("var", "name"):
        return str(node)
    if kind == "int":
        return int(node)
    if kind == "ctx":
        _expect_head(node, "ctx")
        return tuple(str(v) for v in node[1:])
    if kind == "terms":
        _expect_head(node, "terms")
        return tuple(term_from_sexpr(t, names) for t in node[1:])
    if kind == "formula":
        _expect_head(node, "formula")
        return formula_from_sexpr(node[1], names)
    if kind == "desc":
        _expect_head(node, "desc")
        return desc_from_sexpr(node[1], names)
    raise ValueError(f"unknown parameter kind {kind}")


def _expect_head(node, head: str):
    if not isinstance(node, list) or not node or node[0] != head:
        raise ParseError(f"expected ({head} ...), got {node!r}")


def proof_to_sexpr(p: Proof, printer: DescPrinter | None = None, indent: int = 0) -> str:
    printer = printer or DescPrinter(coding.DESC_NAMES)
    kinds = RULE_PARAMS.get(p.rule)
    if kinds is None:
        raise UnknownRule(f"unknown rule {p.rule!r}")
    pad = " " * indent
    parts = [p.rule] + [_param_to_sexpr(k, v, printer) for k, v in zip(kinds, p.params)]
    head = " ".join(parts)
    if not p.children:
        return f"{pad}({head})"
    body = "\n".join(proof_to_sexpr(c, printer, indent + 1) for c in p.children)
    return f"{pad}({head}\n{body})"


def proof_from_sexpr(node, names=None) -> Proof:
    names = names if names is not None else coding.DESC_NAMES
    if not isinstance(node, list) or not node:
        raise ParseError(f"expected a proof node, got {node!r}")
    rule = str(node[0])
    kinds = RULE_PARAMS.get(rule)
    if kinds is None:
        raise _perr(node[0], f"unknown rule {rule!r}")
    nparams = len(kinds)
    raw_params = node[1 : 1 + nparams]
    if len(raw_params) != nparams:
        raise _perr(node[0], f"rule {rule} takes {nparams} parameters")
    params = tuple(_param_from_sexpr(k, v, names) for k, v in zip(kinds, raw_params))
    children = tuple(proof_from_sexpr(c, names) for c in node[1 + nparams :])
    return Proof(rule, params, children)


def _perr(atom, msg):
    line = getattr(atom, "line", 0)
    col = getattr(atom, "col", 0)
    return ParseError(msg, line, col)


def theorem_to_script(name: str, p: Proof, sequent: Sequent | None = None) -> str:
    printer = DescPrinter(coding.DESC_NAMES)
    if sequent is None:
        sequent = check_proof(p).sequent
    return (
        f"(theorem {name}\n {sequent_to_sexpr(sequent, printer)}\n"
        + proof_to_sexpr(p, printer, 1)
        + ")\n"
    )


def theorem_from_script(text: str) -> tuple[str, Sequent, Proof]:
    forms = read_sexprs(text)
    if len(forms) != 1:
        raise ParseError(f"a proof script holds exactly one theorem, found {len(forms)} forms")
    node = forms[0]
    if not isinstance(node, list) or len(node) != 4 or node[0] != "theorem":
        raise ParseError("expected (theorem NAME SEQUENT PROOF)")
    name = str(node[1])
    sq = sequent_from_sexpr(node[2], coding.DESC_NAMES)
    proof = proof_from_sexpr(node[3])
    return name, sq, proof
