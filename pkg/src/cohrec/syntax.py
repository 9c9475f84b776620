"""Abstract syntax: function descriptions, terms, coherent formulas, sequents.

Function descriptions (`FuncDesc`) are the closed combinator trees z, s,
proj, cn, pr describing primitive recursive functions.  Terms apply
descriptions to variables and zero; formulas are the coherent fragment
(top, bot, =, <, and, or, exists) extended with bounded universal
quantification `ball z < t. phi` where the bound t never contains z.

Everything here is immutable and pure.  The textual s-expression syntax
(shared with the CLI and the proof-script format) is implemented at the
bottom of this module.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class ArityMismatch(Exception):
    """A composite description violates an arity side condition."""


class UnboundVariable(Exception):
    pass


class ParseError(Exception):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {msg}" if line else msg)
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# Function descriptions


class FuncDesc:
    __slots__ = ()

    def __repr__(self) -> str:
        return desc_to_sexpr(self)


@dataclass(frozen=True, repr=False)
class Z(FuncDesc):
    """Constant zero; unary."""


@dataclass(frozen=True, repr=False)
class S(FuncDesc):
    """Successor; unary."""


@dataclass(frozen=True, repr=False)
class Proj(FuncDesc):
    n: int
    k: int


@dataclass(frozen=True, repr=False)
class Cn(FuncDesc):
    h: FuncDesc
    gs: tuple[FuncDesc, ...]


@dataclass(frozen=True, repr=False)
class Pr(FuncDesc):
    g: FuncDesc
    h: FuncDesc


# Arity computation is on the hot path for construction-time validation of
# large combinator trees, so results are cached per object identity.  The
# cache pins its keys alive, which is fine: descriptions are built once and
# reused for the lifetime of the process.
_ARITY_CACHE: dict[int, int] = {}
_ARITY_PINS: dict[int, FuncDesc] = {}


def arity(d: FuncDesc) -> int:
    """Arity of a description, validating all well-formedness clauses."""
    cached = _ARITY_CACHE.get(id(d))
    if cached is not None:
        return cached
    match d:
        case Z() | S():
            a = 1
        case Proj(n=n, k=k):
            if not (isinstance(n, int) and isinstance(k, int) and 1 <= k <= n):
                raise ArityMismatch(f"proj index out of range: (proj {n} {k})")
            a = n
        case Cn(h=h, gs=gs):
            if not gs:
                raise ArityMismatch("cn needs at least one inner description")
            if arity(h) != len(gs):
                raise ArityMismatch(
                    f"cn outer arity {arity(h)} != number of inner descriptions {len(gs)}"
                )
            inner = {arity(g) for g in gs}
            if len(inner) != 1:
                raise ArityMismatch(f"cn inner descriptions disagree on arity: {sorted(inner)}")
            a = inner.pop()
        case Pr(g=g, h=h):
            if arity(h) != arity(g) + 2:
                raise ArityMismatch(
                    f"pr step arity {arity(h)} != base arity {arity(g)} + 2"
                )
            a = arity(g) + 1
        case _:
            raise ArityMismatch(f"not a description: {d!r}")
    _ARITY_CACHE[id(d)] = a
    _ARITY_PINS[id(d)] = d
    return a


# ---------------------------------------------------------------------------
# Terms


class Term:
    __slots__ = ()

    def __repr__(self) -> str:
        return term_to_sexpr(self)


@dataclass(frozen=True, repr=False)
class Var(Term):
    name: str


@dataclass(frozen=True, repr=False)
class Zero(Term):
    pass


@dataclass(frozen=True, repr=False)
class App(Term):
    f: FuncDesc
    args: tuple[Term, ...]

    def __post_init__(self):
        if arity(self.f) != len(self.args):
            raise ArityMismatch(
                f"application of {len(self.args)} arguments to description of arity {arity(self.f)}"
            )


def s(t: Term) -> Term:
    return App(S(), (t,))


def num(n: int) -> Term:
    """The numeral for n: an n-fold successor tower over zero."""
    t: Term = Zero()
    for _ in range(n):
        t = s(t)
    return t


def numeral_value(t: Term) -> int | None:
    """Inverse of `num`, or None if t is not a pure numeral."""
    n = 0
    while True:
        match t:
            case Zero():
                return n
            case App(f=S(), args=(inner,)):
                n += 1
                t = inner
            case _:
                return None


def term_vars(t: Term) -> set[str]:
    match t:
        case Var(name=v):
            return {v}
        case Zero():
            return set()
        case App(args=args):
            out: set[str] = set()
            for a in args:
                out |= term_vars(a)
            return out
    raise TypeError(f"not a term: {t!r}")


def term_subst(t: Term, sub: dict[str, Term]) -> Term:
    match t:
        case Var(name=v):
            return sub.get(v, t)
        case Zero():
            return t
        case App(f=f, args=args):
            return App(f, tuple(term_subst(a, sub) for a in args))
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# Formulas


class Formula:
    __slots__ = ()

    def __repr__(self) -> str:
        return formula_to_sexpr(self)


@dataclass(frozen=True, repr=False)
class Top(Formula):
    pass


@dataclass(frozen=True, repr=False)
class Bot(Formula):
    pass


@dataclass(frozen=True, repr=False)
class Eq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True, repr=False)
class Lt(Formula):
    left: Term
    right: Term


@dataclass(frozen=True, repr=False)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, repr=False)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, repr=False)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True, repr=False)
class BForall(Formula):
    """Bounded universal quantifier: for all var < bound, body holds.

    The bound term may never contain the bound variable.
    """

    var: str
    bound: Term
    body: Formula

    def __post_init__(self):
        if self.var in term_vars(self.bound):
            raise ValueError(f"bound term of ball contains its own variable {self.var!r}")


def free_vars(f: Formula) -> set[str]:
    match f:
        case Top() | Bot():
            return set()
        case Eq(left=a, right=b) | Lt(left=a, right=b):
            return term_vars(a) | term_vars(b)
        case And(left=a, right=b) | Or(left=a, right=b):
            return free_vars(a) | free_vars(b)
        case Exists(var=v, body=b):
            return free_vars(b) - {v}
        case BForall(var=v, bound=t, body=b):
            return (free_vars(b) - {v}) | term_vars(t)
    raise TypeError(f"not a formula: {f!r}")


def fresh_name(base: str, avoid: set[str]) -> str:
    """Deterministic fresh variable: strip digits from base, then count up."""
    stem = base.rstrip("0123456789") or "v"
    if stem not in avoid:
        return stem
    i = 1
    while f"{stem}{i}" in avoid:
        i += 1
    return f"{stem}{i}"


def substitute(f: Formula, sub: dict[str, Term]) -> Formula:
    """Capture-avoiding simultaneous substitution of terms for free variables."""
    sub = {v: t for v, t in sub.items() if t != Var(v)}
    if not sub:
        return f
    match f:
        case Top() | Bot():
            return f
        case Eq(left=a, right=b):
            return Eq(term_subst(a, sub), term_subst(b, sub))
        case Lt(left=a, right=b):
            return Lt(term_subst(a, sub), term_subst(b, sub))
        case And(left=a, right=b):
            return And(substitute(a, sub), substitute(b, sub))
        case Or(left=a, right=b):
            return Or(substitute(a, sub), substitute(b, sub))
        case Exists(var=v, body=b):
            inner = {k: t for k, t in sub.items() if k != v}
            captured = any(v in term_vars(t) for k, t in inner.items() if k in free_vars(b))
            if captured:
                avoid = free_vars(b) | {v}
                for t in inner.values():
                    avoid |= term_vars(t)
                v2 = fresh_name(v, avoid)
                b = substitute(b, {v: Var(v2)})
                v = v2
            return Exists(v, substitute(b, inner))
        case BForall(var=v, bound=t0, body=b):
            t1 = term_subst(t0, sub)
            inner = {k: t for k, t in sub.items() if k != v}
            captured = v in term_vars(t1) or any(
                v in term_vars(t) for k, t in inner.items() if k in free_vars(b)
            )
            if captured:
                avoid = free_vars(b) | term_vars(t1) | {v}
                for t in inner.values():
                    avoid |= term_vars(t)
                v2 = fresh_name(v, avoid)
                b = substitute(b, {v: Var(v2)})
                v = v2
            return BForall(v, t1, substitute(b, inner))
    raise TypeError(f"not a formula: {f!r}")


def alpha_eq(f: Formula, g: Formula) -> bool:
    """Equality up to consistent renaming of bound variables."""
    return _alpha(f, g, {}, {}, 0)


def _alpha(f: Formula, g: Formula, env1: dict[str, int], env2: dict[str, int], depth: int) -> bool:
    if type(f) is not type(g):
        return False
    match f, g:
        case (Top(), Top()) | (Bot(), Bot()):
            return True
        case (Eq(left=a1, right=b1), Eq(left=a2, right=b2)) | (
            Lt(left=a1, right=b1),
            Lt(left=a2, right=b2),
        ):
            return _alpha_term(a1, a2, env1, env2) and _alpha_term(b1, b2, env1, env2)
        case (And(left=a1, right=b1), And(left=a2, right=b2)) | (
            Or(left=a1, right=b1),
            Or(left=a2, right=b2),
        ):
            return _alpha(a1, a2, env1, env2, depth) and _alpha(b1, b2, env1, env2, depth)
        case (Exists(var=v1, body=b1), Exists(var=v2, body=b2)):
            e1 = dict(env1)
            e2 = dict(env2)
            e1[v1] = depth
            e2[v2] = depth
            return _alpha(b1, b2, e1, e2, depth + 1)
        case (BForall(var=v1, bound=t1, body=b1), BForall(var=v2, bound=t2, body=b2)):
            if not _alpha_term(t1, t2, env1, env2):
                return False
            e1 = dict(env1)
            e2 = dict(env2)
            e1[v1] = depth
            e2[v2] = depth
            return _alpha(b1, b2, e1, e2, depth + 1)
    return False


def _alpha_term(t: Term, u: Term, env1: dict[str, int], env2: dict[str, int]) -> bool:
    match t, u:
        case (Var(name=a), Var(name=b)):
            d1 = env1.get(a)
            d2 = env2.get(b)
            if d1 is None and d2 is None:
                return a == b
            return d1 == d2
        case (Zero(), Zero()):
            return True
        case (App(f=f1, args=a1), App(f=f2, args=a2)):
            if f1 != f2 or len(a1) != len(a2):
                return False
            return all(_alpha_term(x, y, env1, env2) for x, y in zip(a1, a2))
    return False


# ---------------------------------------------------------------------------
# Sequents


@dataclass(frozen=True, repr=False)
class Sequent:
    ctx: tuple[str, ...]
    lhs: Formula
    rhs: Formula

    def __post_init__(self):
        if len(set(self.ctx)) != len(self.ctx):
            raise ValueError(f"context variables not distinct: {self.ctx}")
        loose = (free_vars(self.lhs) | free_vars(self.rhs)) - set(self.ctx)
        if loose:
            raise ValueError(f"free variables {sorted(loose)} escape context {self.ctx}")

    def __repr__(self) -> str:
        return sequent_to_sexpr(self)


def sequent_alpha_eq(a: Sequent, b: Sequent) -> bool:
    """Sequent identity: alpha equivalence plus positional context renaming."""
    if len(a.ctx) != len(b.ctx):
        return False
    if a.ctx != b.ctx:
        ren = {v: Var(w) for v, w in zip(a.ctx, b.ctx)}
        a = Sequent(b.ctx, substitute(a.lhs, ren), substitute(a.rhs, ren))
    return alpha_eq(a.lhs, b.lhs) and alpha_eq(a.rhs, b.rhs)


# ---------------------------------------------------------------------------
# S-expression reader

_ATOM_END = {"(", ")", " ", "\t", "\n", "\r", ";"}


def tokenize(text: str) -> list[tuple[str, int, int]]:
    toks = []
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == ";":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c in "()":
            toks.append((c, line, col))
            i += 1
            col += 1
            continue
        j = i
        while j < n and text[j] not in _ATOM_END:
            j += 1
        toks.append((text[i:j], line, col))
        col += j - i
        i = j
    return toks


def read_sexprs(text: str):
    """Parse all top-level s-expressions into nested lists of atom strings."""
    toks = tokenize(text)
    pos = 0

    def read():
        nonlocal pos
        if pos >= len(toks):
            raise ParseError("unexpected end of input")
        tok, line, col = toks[pos]
        pos += 1
        if tok == "(":
            items = []
            while True:
                if pos >= len(toks):
                    raise ParseError("unclosed parenthesis", line, col)
                if toks[pos][0] == ")":
                    pos += 1
                    return items
                items.append(read())
        if tok == ")":
            raise ParseError("unexpected )", line, col)
        return Atom(tok, line, col)

    out = []
    while pos < len(toks):
        out.append(read())
    return out


class Atom(str):
    line: int
    col: int

    def __new__(cls, value: str, line: int = 0, col: int = 0):
        self = super().__new__(cls, value)
        self.line = line
        self.col = col
        return self


def _err(node, msg: str) -> ParseError:
    if isinstance(node, Atom):
        return ParseError(msg, node.line, node.col)
    for item in node if isinstance(node, list) else []:
        return _err(item, msg)
    return ParseError(msg)


# ---------------------------------------------------------------------------
# S-expression builders: descriptions, terms, formulas, sequents

DescNames = dict[str, FuncDesc]


def desc_from_sexpr(node, names: DescNames | None = None) -> FuncDesc:
    names = names or {}
    if isinstance(node, str):
        if node == "z":
            return Z()
        if node == "s":
            return S()
        if node in names:
            return names[node]
        raise _err(node, f"unknown description name {node!r}")
    if not node:
        raise _err(node, "empty description")
    head = node[0]
    if head == "proj":
        if len(node) != 3:
            raise _err(node, "proj takes two indices")
        return Proj(_int(node[1]), _int(node[2]))
    if head == "cn":
        if len(node) < 3:
            raise _err(node, "cn takes an outer and at least one inner description")
        return Cn(desc_from_sexpr(node[1], names), tuple(desc_from_sexpr(x, names) for x in node[2:]))
    if head == "pr":
        if len(node) != 3:
            raise _err(node, "pr takes a base and a step description")
        return Pr(desc_from_sexpr(node[1], names), desc_from_sexpr(node[2], names))
    raise _err(node, f"unknown description form {head!r}")


def _int(node) -> int:
    try:
        return int(node)
    except (TypeError, ValueError):
        raise _err(node, f"expected an integer, got {node!r}") from None


def term_from_sexpr(node, names: DescNames | None = None) -> Term:
    names = names or {}
    if isinstance(node, str):
        if node.isdigit():
            return num(int(node))
        return Var(str(node))
    if not node:
        raise _err(node, "empty term")
    head = node[0]
    if head == "s":
        if len(node) != 2:
            raise _err(node, "s takes one argument")
        return s(term_from_sexpr(node[1], names))
    if head == "app":
        if len(node) < 3:
            raise _err(node, "app takes a description and arguments")
        f = desc_from_sexpr(node[1], names)
        return App(f, tuple(term_from_sexpr(x, names) for x in node[2:]))
    if isinstance(head, str) and head in names:
        return App(names[head], tuple(term_from_sexpr(x, names) for x in node[1:]))
    raise _err(node, f"unknown term form {head!r}")


def formula_from_sexpr(node, names: DescNames | None = None) -> Formula:
    names = names or {}
    if isinstance(node, str):
        if node == "top":
            return Top()
        if node == "bot":
            return Bot()
        raise _err(node, f"unknown formula atom {node!r}")
    if not node:
        raise _err(node, "empty formula")
    head = node[0]
    if head == "=":
        return Eq(term_from_sexpr(node[1], names), term_from_sexpr(node[2], names))
    if head == "<":
        return Lt(term_from_sexpr(node[1], names), term_from_sexpr(node[2], names))
    if head == "and":
        return And(formula_from_sexpr(node[1], names), formula_from_sexpr(node[2], names))
    if head == "or":
        return Or(formula_from_sexpr(node[1], names), formula_from_sexpr(node[2], names))
    if head == "ex":
        return Exists(str(node[1]), formula_from_sexpr(node[2], names))
    if head == "ball":
        return BForall(str(node[1]), term_from_sexpr(node[2], names), formula_from_sexpr(node[3], names))
    raise _err(node, f"unknown formula form {head!r}")


def sequent_from_sexpr(node, names: DescNames | None = None) -> Sequent:
    if not isinstance(node, list) or len(node) != 4 or node[0] != "seq":
        raise _err(node, "expected (seq (vars...) lhs rhs)")
    ctx = tuple(str(v) for v in node[1])
    return Sequent(ctx, formula_from_sexpr(node[2], names), formula_from_sexpr(node[3], names))


# ---------------------------------------------------------------------------
# Printers.  `names` maps descriptions back to their short names; lookups
# are cached by identity since the same description objects recur heavily.


class DescPrinter:
    def __init__(self, names: dict[str, FuncDesc] | None = None):
        self.by_name = names or {}
        self._cache: dict[int, str | None] = {}

    def name_of(self, d: FuncDesc) -> str | None:
        hit = self._cache.get(id(d), False)
        if hit is not False:
            return hit
        found = None
        for name, known in self.by_name.items():
            if type(known) is type(d) and known == d:
                found = name
                break
        self._cache[id(d)] = found
        return found

    def print(self, d: FuncDesc) -> str:
        name = self.name_of(d)
        if name is not None:
            return name
        match d:
            case Z():
                return "z"
            case S():
                return "s"
            case Proj(n=n, k=k):
                return f"(proj {n} {k})"
            case Cn(h=h, gs=gs):
                inner = " ".join(self.print(g) for g in gs)
                return f"(cn {self.print(h)} {inner})"
            case Pr(g=g, h=h):
                return f"(pr {self.print(g)} {self.print(h)})"
        raise TypeError(f"not a description: {d!r}")


_PLAIN = DescPrinter()


def desc_to_sexpr(d: FuncDesc, printer: DescPrinter | None = None) -> str:
    return (printer or _PLAIN).print(d)


def term_to_sexpr(t: Term, printer: DescPrinter | None = None) -> str:
    n = numeral_value(t)
    if n is not None:
        return str(n)
    match t:
        case Var(name=v):
            return v
        case Zero():
            return "0"
        case App(f=S(), args=(a,)):
            return f"(s {term_to_sexpr(a, printer)})"
        case App(f=f, args=args):
            inner = " ".join(term_to_sexpr(a, printer) for a in args)
            p = printer or _PLAIN
            name = p.name_of(f)
            if name is not None:
                return f"({name} {inner})"
            return f"(app {p.print(f)} {inner})"
    raise TypeError(f"not a term: {t!r}")


def formula_to_sexpr(f: Formula, printer: DescPrinter | None = None) -> str:
    match f:
        case Top():
            return "top"
        case Bot():
            return "bot"
        case Eq(left=a, right=b):
            return f"(= {term_to_sexpr(a, printer)} {term_to_sexpr(b, printer)})"
        case Lt(left=a, right=b):
            return f"(< {term_to_sexpr(a, printer)} {term_to_sexpr(b, printer)})"
        case And(left=a, right=b):
            return f"(and {formula_to_sexpr(a, printer)} {formula_to_sexpr(b, printer)})"
        case Or(left=a, right=b):
            return f"(or {formula_to_sexpr(a, printer)} {formula_to_sexpr(b, printer)})"
        case Exists(var=v, body=b):
            return f"(ex {v} {formula_to_sexpr(b, printer)})"
        case BForall(var=v, bound=t, body=b):
            return f"(ball {v} {term_to_sexpr(t, printer)} {formula_to_sexpr(b, printer)})"
    raise TypeError(f"not a formula: {f!r}")


def sequent_to_sexpr(sq: Sequent, printer: DescPrinter | None = None) -> str:
    ctx = " ".join(sq.ctx)
    return f"(seq ({ctx}) {formula_to_sexpr(sq.lhs, printer)} {formula_to_sexpr(sq.rhs, printer)})"
