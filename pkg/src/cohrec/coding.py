"""Goedel coding toolkit.

Meta-level reference functions (plain Python on ints) sit next to
function-description builders computing the same things inside the
primitive recursive term language:

* Cantor pairing and its inverses, the beta function, lh and entry
  access for length-prefixed sequence codes;
* a list toolkit (append one element, singleton, concat, droplast)
  built on an incremental Chinese-remainder construction whose loops
  are all bounded by list lengths and value sizes, never by code
  magnitudes, so descriptions stay evaluable at desk scale;
* characters of quantifier-free formulas (value 0 means the formula
  holds), and a course-of-values recursion combinator.

Descriptions built here are module-level singletons; the semantics
module holds intrinsic fast paths for them, keyed by object identity.
"""

from __future__ import annotations

import math
from functools import lru_cache

from . import semantics
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
    Term,
    Top,
    Var,
    Z,
    Zero,
    arity,
    free_vars,
    term_vars,
)


class NotDelta0(Exception):
    """Raised when a formula with an (unbounded) existential reaches the
    quantifier-free compiler."""


# ---------------------------------------------------------------------------
# Meta-level reference functions


def tri_meta(n: int) -> int:
    return n * (n + 1) // 2


def pair_meta(a: int, b: int) -> int:
    return tri_meta(a + b) + a


def _diag(c: int) -> int:
    return (math.isqrt(8 * c + 1) - 1) // 2


def fst_meta(c: int) -> int:
    return c - tri_meta(_diag(c))


def snd_meta(c: int) -> int:
    return _diag(c) - fst_meta(c)


def rem_meta(a: int, b: int) -> int:
    return a % b if b else a


def beta_meta(x: int, i: int) -> int:
    return rem_meta(fst_meta(x), 1 + snd_meta(x) * (i + 1))


def lh_meta(x: int) -> int:
    return beta_meta(x, 0)


def idx_meta(x: int, i: int) -> int:
    return beta_meta(x, i + 1)


def decode_list(c: int) -> list[int]:
    return [idx_meta(c, i) for i in range(lh_meta(c))]


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int] | None:
    """Combine two congruences; None when inconsistent."""
    g = math.gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    lcm = m1 // g * m2
    t = ((r2 - r1) // g * pow(m1 // g, -1, m2 // g)) % (m2 // g) if m2 != g else 0
    return (r1 + m1 * t) % lcm, lcm


def encode_list(xs: list[int]) -> int:
    """Least code c with lh(c) = len(xs) and (c)_i = xs[i].

    Searches bases b in increasing order, taking for each the minimal
    consistent residue value; stops once no larger base can beat the
    best code found.
    """
    seq = [len(xs)] + list(xs)
    best = None
    b = 0
    while True:
        if best is not None and tri_meta(b) >= best:
            break
        acc: tuple[int, int] | None = (0, 1)
        for i, v in enumerate(seq):
            m = 1 + b * (i + 1)
            if v >= m:
                acc = None
                break
            acc = _crt_pair(acc[0], acc[1], v, m)
            if acc is None:
                break
        if acc is not None:
            c = pair_meta(acc[0], b)
            if best is None or c < best:
                best = c
        b += 1
    return best


@lru_cache(maxsize=None)
def prl_meta(n: int) -> int:
    """Product of the primes up to n (1 when none)."""
    out = 1
    for p in range(2, n + 1):
        if all(p % d for d in range(2, math.isqrt(p) + 1)):
            out *= p
    return out


def pow2ceil_meta(x: int) -> int:
    c = 1
    while c < x:
        c *= 2
    return c


def append1_meta(l: int, v: int) -> int:
    """Append v to the coded list l.

    Mirrors the APPEND1 description exactly: same base choice, same
    branch condition, same Chinese-remainder updates, so the two compute
    the identical function.
    """
    a, b0 = fst_meta(l), snd_meta(l)
    length = lh_meta(l)
    maxe = max([0] + [idx_meta(l, i) for i in range(length)])
    cap = pow2ceil_meta(max(length + 3, maxe + 1, v + 1))
    b = prl_meta(cap)
    moduli = [1 + b * (i + 1) for i in range(length + 2)]
    if b0 == b:
        p1 = math.prod(moduli[: length + 1])
        m_last = moduli[length + 1]
        d1 = (v - a) % m_last
        a1 = a + p1 * (d1 * pow(p1 % m_last, -1, m_last) % m_last)
        m0 = moduli[0]
        p2 = p1 // m0 * m_last
        d2 = (length + 1 - a1) % m0
        a2 = a1 + p2 * (d2 * pow(p2 % m0, -1, m0) % m0)
        return pair_meta(a2 % (p1 * m_last), b)
    seq = [length + 1] + [idx_meta(l, i) for i in range(length)] + [v]
    acc, prod = 0, 1
    for i, t in enumerate(seq):
        m = moduli[i]
        d = (t - acc) % m
        acc += prod * (d * pow(prod % m, -1, m) % m)
        prod *= m
    return pair_meta(acc, b)


def encode_list_fast(xs: list[int]) -> int:
    """A (generally non-minimal) code built by repeated appending."""
    c = 0
    for v in xs:
        c = append1_meta(c, v)
    return c


# ---------------------------------------------------------------------------
# Combinator helpers


def C(h: FuncDesc, *gs: FuncDesc) -> FuncDesc:
    d = Cn(h, tuple(gs))
    arity(d)
    return d


def proj(n: int, k: int) -> FuncDesc:
    return Proj(n, k)


def const(value: int, n: int) -> FuncDesc:
    d: FuncDesc = C(Z(), Proj(n, 1))
    for _ in range(value):
        d = C(S(), d)
    return d


def identity1() -> FuncDesc:
    return Proj(1, 1)


def unary_rec(base: FuncDesc, step: FuncDesc) -> FuncDesc:
    """Unary f with f(0) given by `base` (arity 1, argument ignored) and
    f(n+1) = step(dummy, n, f(n)).  Encodes the missing nullary base case
    through a dummy parameter."""
    pr = Pr(base, step)
    return C(pr, Proj(1, 1), Proj(1, 1))


ID1 = identity1()
ZD = Z()
SD = S()

ADD = Pr(Proj(1, 1), C(S(), Proj(3, 3)))
MUL = Pr(C(Z(), Proj(1, 1)), C(ADD, Proj(3, 3), Proj(3, 1)))
PRED = unary_rec(C(Z(), Proj(1, 1)), Proj(3, 2))
MONUS = Pr(Proj(1, 1), C(PRED, Proj(3, 3)))
TRI = unary_rec(C(Z(), Proj(1, 1)), C(ADD, Proj(3, 3), C(S(), Proj(3, 2))))
POW2 = unary_rec(C(S(), C(Z(), Proj(1, 1))), C(ADD, Proj(3, 3), Proj(3, 3)))
FACT = unary_rec(C(S(), C(Z(), Proj(1, 1))), C(MUL, Proj(3, 3), C(S(), Proj(3, 2))))
MAX = C(ADD, Proj(2, 1), C(MONUS, Proj(2, 2), Proj(2, 1)))


def sig_of(d: FuncDesc, n: int) -> FuncDesc:
    """min(1, d): 0 stays 0, everything positive becomes 1."""
    one = const(1, n)
    return C(MONUS, one, C(MONUS, one, d))


def eq01_of(a: FuncDesc, b: FuncDesc, n: int) -> FuncDesc:
    """1 when a = b, else 0."""
    diff = C(ADD, C(MONUS, a, b), C(MONUS, b, a))
    return C(MONUS, const(1, n), sig_of(diff, n))


def select01(flag: FuncDesc, when0: FuncDesc, when1: FuncDesc) -> FuncDesc:
    """when0 if flag = 0 else when1; flag must be 0/1.  Both branches are
    evaluated (the language is strict), so keep the untaken side cheap."""
    n = arity(flag)
    notf = C(MONUS, const(1, n), flag)
    return C(ADD, C(MUL, when0, notf), C(MUL, when1, flag))


def mu(char: FuncDesc) -> FuncDesc:
    """Bounded minimisation from a character: for char of arity k+1,
    returns mu of arity k+1 with

        mu(xs, 0)   = 0
        mu(xs, z+1) = mu(xs, z) + char(xs, mu(xs, z))

    so mu(xs, y) is the least z < y with char(xs, z) = 0, and y itself
    when there is none (for 0/1-valued characters)."""
    k = arity(char) - 1
    if k == 0:
        inner = mu(C(char, Proj(2, 2)))
        return C(inner, Proj(1, 1), Proj(1, 1))
    params = [Proj(k + 2, i) for i in range(1, k + 1)]
    acc = Proj(k + 2, k + 2)
    step = C(ADD, acc, C(char, *params, acc))
    base = C(Z(), Proj(k, 1)) if k >= 1 else None
    return Pr(base, step)


# Pairing, beta and division built from mu; intrinsics registered below.

_TROOT_CHAR = C(MONUS, const(1, 2), C(MONUS, C(TRI, C(S(), Proj(2, 2))), Proj(2, 1)))
TROOT = C(mu(_TROOT_CHAR), Proj(1, 1), C(S(), Proj(1, 1)))
FST = C(MONUS, Proj(1, 1), C(TRI, TROOT))
SND = C(MONUS, TROOT, FST)
PRI = C(ADD, C(TRI, C(ADD, Proj(2, 1), Proj(2, 2))), Proj(2, 1))

_DIV_CHAR = C(
    MONUS,
    const(1, 3),
    C(MONUS, C(MUL, Proj(3, 2), C(S(), Proj(3, 3))), Proj(3, 1)),
)
DIV = C(mu(_DIV_CHAR), Proj(2, 1), Proj(2, 2), C(S(), Proj(2, 1)))
REM = C(MONUS, Proj(2, 1), C(MUL, Proj(2, 2), DIV))

BETA = C(REM, C(FST, Proj(2, 1)), C(S(), C(MUL, C(SND, Proj(2, 1)), C(S(), Proj(2, 2)))))
LH = C(BETA, Proj(1, 1), C(Z(), Proj(1, 1)))
IDX = C(BETA, Proj(2, 1), C(S(), Proj(2, 2)))

# Primorial: product of primes up to n.  A number p > 1 is prime when no
# d with 2 <= d < p divides it; the divisor scan is a bounded product.
_NODIV_CHAR = sig_of(
    C(
        ADD,
        C(MONUS, const(2, 2), Proj(2, 2)),  # positive when d <= 1
        sig_of(C(REM, Proj(2, 1), Proj(2, 2)), 2),  # 1 when d does not divide p
    ),
    2,
)
# product over d < p of the 0/1 flags above; equals 1 iff no proper divisor
_NODIV = Pr(const(1, 1), C(MUL, Proj(3, 3), C(_NODIV_CHAR, Proj(3, 1), Proj(3, 2))))
_HASNODIV = C(_NODIV, Proj(1, 1), Proj(1, 1))
_ISPRIME = C(
    MUL,
    C(MONUS, const(1, 1), C(MONUS, const(2, 1), Proj(1, 1))),  # 1 when p >= 2
    _HASNODIV,
)
PRL = unary_rec(
    const(1, 1),
    C(
        MUL,
        Proj(3, 3),
        C(MAX, const(1, 3), C(MUL, C(_ISPRIME, C(S(), Proj(3, 2))), C(S(), Proj(3, 2)))),
    ),
)

# Least power of two >= x, via bounded search on the exponent.
_P2_CHAR = C(MONUS, const(1, 2), C(MONUS, C(S(), C(POW2, Proj(2, 2))), Proj(2, 1)))
_P2EXP = C(mu(_P2_CHAR), Proj(1, 1), C(ADD, Proj(1, 1), const(2, 1)))
POW2CEIL = C(POW2, _P2EXP)


def _wire(n: int, *idx: int) -> list[FuncDesc]:
    return [Proj(n, i) for i in idx]


def _build_euclid() -> FuncDesc:
    """EUCLID_INV(u, m, nsteps): the inverse of u modulo m, provided
    gcd(u, m) = 1 and nsteps >= twice the bit length of m.

    State is a packed quadruple (r0, r1, t0, t1) of the remainder pair
    and the u-coefficients modulo m; one extra iteration past
    termination is a fixpoint, so overshooting nsteps is harmless.
    """
    n = 4  # params u, m of the loop body plus counter and state
    # step: arity 4 = (u, m, k, st)
    st = Proj(4, 4)
    m = Proj(4, 2)
    r0 = C(FST, C(FST, st))
    r1 = C(SND, C(FST, st))
    t0 = C(FST, C(SND, st))
    t1 = C(SND, C(SND, st))
    live = sig_of(r1, 4)
    q = C(DIV, r0, C(MAX, r1, const(1, 4)))
    r2 = C(MONUS, r0, C(MUL, q, r1))
    qt = C(REM, C(MUL, q, t1), m)
    t2 = C(REM, C(ADD, t0, C(MONUS, m, qt)), m)
    packed = C(PRI, C(PRI, r1, r2), C(PRI, t1, t2))
    step = select01(live, st, packed)
    base = C(PRI, C(PRI, Proj(2, 2), Proj(2, 1)), C(PRI, C(Z(), Proj(2, 1)), C(S(), C(Z(), Proj(2, 1)))))
    loop = Pr(base, step)
    return C(FST, C(SND, C(loop, Proj(3, 1), Proj(3, 2), Proj(3, 3))))


EUCLID_INV = _build_euclid()

# Product of the moduli 1 + b(i+1) for i < k: PROD(b, k).
PROD_MODULI = Pr(
    const(1, 1),
    C(MUL, Proj(3, 3), C(S(), C(MUL, Proj(3, 1), C(S(), Proj(3, 2))))),
)

# Maximum entry of a coded list.
_MAXE_FOLD = Pr(const(0, 1), C(MAX, Proj(3, 3), C(IDX, Proj(3, 1), Proj(3, 2))))
MAX_ENTRY = C(_MAXE_FOLD, Proj(1, 1), LH)


def _build_append1() -> FuncDesc:
    """APPEND1(l, v): the code of decode(l) + [v].

    The base b is the primorial of a power-of-two capacity derived from
    the new length and the largest value, which keeps b stable across
    consecutive appends.  When l already carries that base, only the
    length slot and the fresh entry are recomputed (two modular updates);
    otherwise the whole sequence is re-encoded.  Both branches sit in one
    strict term, so the loop counts of the untaken branch are gated down
    to zero by the branch flag.
    """
    l, v = Proj(2, 1), Proj(2, 2)
    a = C(FST, l)
    b0 = C(SND, l)
    ln = C(LH, l)
    maxe = C(MAX_ENTRY, l)
    x = C(MAX, C(MAX, C(ADD, ln, const(3, 2)), C(S(), maxe)), C(S(), v))
    cap = C(POW2CEIL, x)
    b = C(PRL, cap)
    vflag = eq01_of(b0, b, 2)
    nsteps = C(ADD, C(MUL, cap, const(3, 2)), C(ADD, C(MUL, ln, const(2, 2)), const(24, 2)))

    # Incremental branch: fix entry slot ln+1, then the length slot.
    p1 = C(PROD_MODULI, b, C(S(), ln))
    m_last = C(S(), C(MUL, b, C(ADD, ln, const(2, 2))))
    gated = C(MUL, nsteps, vflag)
    inv1 = C(EUCLID_INV, C(REM, p1, m_last), m_last, gated)
    d1 = C(REM, C(ADD, v, C(MONUS, m_last, C(REM, a, m_last))), m_last)
    a1 = C(ADD, a, C(MUL, p1, C(REM, C(MUL, d1, inv1), m_last)))
    m0 = C(S(), b)
    p2 = C(MUL, C(DIV, p1, m0), m_last)
    inv2 = C(EUCLID_INV, C(REM, p2, m0), m0, gated)
    d2 = C(REM, C(ADD, C(S(), ln), C(MONUS, m0, C(REM, a1, m0))), m0)
    a2 = C(ADD, a1, C(MUL, p2, C(REM, C(MUL, d2, inv2), m0)))
    a_inc = C(REM, a2, C(MUL, p1, m_last))

    # Re-encode branch: full Chinese-remainder fold over the sequence
    # (new length, old entries, new value).  Params (l, v, b, nsteps),
    # counter i, state pair(acc, prod).
    st = Proj(6, 6)
    i = Proj(6, 5)
    bb = Proj(6, 3)
    ll = Proj(6, 1)
    acc = C(FST, st)
    prod = C(SND, st)
    e_first = eq01_of(i, C(Z(), i), 6)
    e_last = eq01_of(i, C(S(), C(LH, ll)), 6)
    mid = C(MUL, C(MONUS, const(1, 6), e_first), C(MONUS, const(1, 6), e_last))
    sigma = C(
        ADD,
        C(ADD, C(MUL, e_first, C(S(), C(LH, ll))), C(MUL, e_last, Proj(6, 2))),
        C(MUL, mid, C(BETA, ll, i)),
    )
    mm = C(S(), C(MUL, bb, C(S(), i)))
    inv = C(EUCLID_INV, C(REM, prod, mm), mm, Proj(6, 4))
    delta = C(REM, C(ADD, sigma, C(MONUS, mm, C(REM, acc, mm))), mm)
    acc2 = C(ADD, acc, C(MUL, prod, C(REM, C(MUL, delta, inv), mm)))
    re_step = C(PRI, acc2, C(MUL, prod, mm))
    re_base = C(PRI, C(Z(), Proj(4, 1)), C(S(), C(Z(), Proj(4, 1))))
    re_loop = Pr(re_base, re_step)
    re_count = C(MUL, C(ADD, ln, const(2, 2)), C(MONUS, const(1, 2), vflag))
    a_re = C(FST, C(re_loop, l, v, b, nsteps, re_count))

    return C(PRI, select01(vflag, a_re, a_inc), b)


APPEND1 = _build_append1()
SINGLETON = C(APPEND1, C(Z(), Proj(1, 1)), Proj(1, 1))

# concat(l1, l2): fold append1 over the entries of l2.
_CONCAT_STEP = C(APPEND1, Proj(4, 4), C(IDX, Proj(4, 2), Proj(4, 3)))
_CONCAT_LOOP = Pr(Proj(2, 1), _CONCAT_STEP)
CONCAT = C(_CONCAT_LOOP, Proj(2, 1), Proj(2, 2), C(LH, Proj(2, 2)))

# droplast(l): rebuild from the first lh(l) - 1 entries.
_REBUILD_STEP = C(APPEND1, Proj(3, 3), C(IDX, Proj(3, 1), Proj(3, 2)))
_REBUILD_LOOP = Pr(C(Z(), Proj(1, 1)), _REBUILD_STEP)
DROPLAST = C(_REBUILD_LOOP, Proj(1, 1), C(MONUS, C(LH, Proj(1, 1)), const(1, 1)))


def concat_meta(l1: int, l2: int) -> int:
    c = l1
    for i in range(lh_meta(l2)):
        c = append1_meta(c, idx_meta(l2, i))
    return c


def singleton_meta(v: int) -> int:
    return append1_meta(0, v)


def droplast_meta(l: int) -> int:
    c = 0
    for i in range(max(0, lh_meta(l) - 1)):
        c = append1_meta(c, idx_meta(l, i))
    return c


# ---------------------------------------------------------------------------
# Intrinsic registration

semantics.register_intrinsic(ADD, lambda a, b: a + b)
semantics.register_intrinsic(MUL, lambda a, b: a * b)
semantics.register_intrinsic(PRED, lambda a: a - 1 if a else 0)
semantics.register_intrinsic(MONUS, lambda a, b: a - b if a >= b else 0)
semantics.register_intrinsic(TRI, tri_meta)
semantics.register_intrinsic(TROOT, _diag)
semantics.register_intrinsic(FST, fst_meta)
semantics.register_intrinsic(SND, snd_meta)
semantics.register_intrinsic(PRI, pair_meta)
semantics.register_intrinsic(DIV, lambda a, b: a // b if b else a + 1)
semantics.register_intrinsic(REM, rem_meta)
semantics.register_intrinsic(BETA, beta_meta)
semantics.register_intrinsic(LH, lh_meta)
semantics.register_intrinsic(IDX, idx_meta)
semantics.register_intrinsic(MAX, max)
semantics.register_intrinsic(POW2, lambda e: 1 << e)
semantics.register_intrinsic(FACT, math.factorial)
semantics.register_intrinsic(PRL, prl_meta)
semantics.register_intrinsic(POW2CEIL, pow2ceil_meta)
semantics.register_intrinsic(APPEND1, append1_meta)


def godel_descs() -> dict[str, FuncDesc]:
    """The named description family of the coding toolkit."""
    return {
        "pri": PRI,
        "fst": FST,
        "snd": SND,
        "rem": REM,
        "beta": BETA,
        "lh": LH,
        "idx": IDX,
        "concat": CONCAT,
        "singleton": SINGLETON,
        "droplast": DROPLAST,
    }


GODEL_META = {
    "pri": pair_meta,
    "fst": fst_meta,
    "snd": snd_meta,
    "rem": rem_meta,
    "beta": beta_meta,
    "lh": lh_meta,
    "idx": idx_meta,
    "concat": concat_meta,
    "singleton": singleton_meta,
    "droplast": droplast_meta,
}


DESC_NAMES: dict[str, FuncDesc] = {
    "add": ADD,
    "mul": MUL,
    "pred": PRED,
    "monus": MONUS,
    "tri": TRI,
    "max": MAX,
    "pow2": POW2,
    "fact": FACT,
    "prl": PRL,
    "div": DIV,
    "append1": APPEND1,
    **godel_descs(),
}

# Default reprs print the short names for the toolkit descriptions.
from . import syntax as _syntax

_syntax._PLAIN.by_name = DESC_NAMES


# ---------------------------------------------------------------------------
# Terms to descriptions


def term_desc(t: Term, ctx: tuple[str, ...]) -> FuncDesc:
    """Compile a term over an ordered context into a description.

    An empty context yields an arity-1 description ignoring its argument
    (the language has no nullary descriptions)."""
    n = max(1, len(ctx))
    match t:
        case Zero():
            return const(0, n)
        case Var(name=v):
            if v not in ctx:
                raise ValueError(f"term variable {v!r} not in context {ctx}")
            return Proj(n, ctx.index(v) + 1)
        case App(f=f, args=args):
            return C(f, *[term_desc(a, ctx) for a in args])
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# Characters of quantifier-free formulas


def _bounded_exists(f: Formula) -> tuple[str, Term, Formula] | None:
    """Recognize the bounded-existential pattern ex z (z < t and body)."""
    match f:
        case Exists(var=z, body=And(left=Lt(left=Var(name=z2), right=t), right=body)):
            if z == z2 and z not in term_vars(t):
                return z, t, body
    return None


def compile_delta0(f: Formula, ctx: tuple[str, ...] | None = None) -> FuncDesc:
    """Character of a formula without unbounded existentials.

    The result has one argument per context variable (at least one), and
    evaluates to 0 exactly when the formula holds there, 1 otherwise.
    Bounded existentials written as `ex z (z < t and phi)` with z not in
    t are accepted alongside bounded universals.
    """
    if ctx is None:
        ctx = tuple(sorted(free_vars(f)))
    n = max(1, len(ctx))
    match f:
        case Top():
            return const(0, n)
        case Bot():
            return const(1, n)
        case Eq(left=a, right=b):
            da, db = term_desc(a, ctx), term_desc(b, ctx)
            return sig_of(C(ADD, C(MONUS, da, db), C(MONUS, db, da)), n)
        case Lt(left=a, right=b):
            da, db = term_desc(a, ctx), term_desc(b, ctx)
            return C(MONUS, const(1, n), C(MONUS, db, da))
        case And(left=a, right=b):
            return sig_of(C(ADD, compile_delta0(a, ctx), compile_delta0(b, ctx)), n)
        case Or(left=a, right=b):
            return C(MUL, compile_delta0(a, ctx), compile_delta0(b, ctx))
        case BForall(var=z, bound=t, body=body):
            inner = compile_delta0(body, ctx + (z,))
            # capped sum of the body characters below the bound
            k = len(ctx)
            params = [Proj(k + 2, i) for i in range(1, k + 1)]
            probe = C(inner, *params, Proj(k + 2, k + 1)) if k else C(inner, Proj(2, 1))
            step = sig_of(C(ADD, Proj(k + 2, k + 2), probe), k + 2)
            loop = Pr(const(0, max(1, k)), step)
            bound = term_desc(t, ctx)
            outer = [Proj(n, i) for i in range(1, len(ctx) + 1)] or [Proj(1, 1)]
            return C(loop, *outer, bound) if k else C(loop, Proj(1, 1), bound)
        case Exists():
            be = _bounded_exists(f)
            if be is None:
                raise NotDelta0(f"unbounded existential in {f!r}")
            z, t, body = be
            inner = compile_delta0(body, ctx + (z,))
            k = len(ctx)
            params = [Proj(k + 2, i) for i in range(1, k + 1)]
            probe = C(inner, *params, Proj(k + 2, k + 1)) if k else C(inner, Proj(2, 1))
            step = C(MUL, Proj(k + 2, k + 2), probe)
            loop = Pr(const(1, max(1, k)), step)
            bound = term_desc(t, ctx)
            outer = [Proj(n, i) for i in range(1, len(ctx) + 1)] or [Proj(1, 1)]
            return C(loop, *outer, bound) if k else C(loop, Proj(1, 1), bound)
    raise NotDelta0(f"cannot build a character for {f!r}")


def delta0_complement(f: Formula) -> Formula:
    """Structural complement of a quantifier-free formula; bounded
    universals flip to bounded existentials and vice versa."""
    match f:
        case Top():
            return Bot()
        case Bot():
            return Top()
        case Eq(left=a, right=b):
            return Or(Lt(a, b), Lt(b, a))
        case Lt(left=a, right=b):
            return Or(Eq(a, b), Lt(b, a))
        case And(left=a, right=b):
            return Or(delta0_complement(a), delta0_complement(b))
        case Or(left=a, right=b):
            return And(delta0_complement(a), delta0_complement(b))
        case BForall(var=z, bound=t, body=body):
            return Exists(z, And(Lt(Var(z), t), delta0_complement(body)))
        case Exists():
            be = _bounded_exists(f)
            if be is None:
                raise NotDelta0(f"unbounded existential in {f!r}")
            z, t, body = be
            return BForall(z, t, delta0_complement(body))
    raise NotDelta0(f"no structural complement for {f!r}")


# ---------------------------------------------------------------------------
# Course-of-values recursion


def cv_rec(step: FuncDesc) -> FuncDesc:
    """From step of arity k+2 (parameters, index, history code) build f of
    arity k+1 with

        f(xs, n) = step(xs, n, code of [f(xs,0), ..., f(xs,n-1)])

    The history is maintained as a coded list grown by APPEND1, starting
    from the empty code 0."""
    k = arity(step) - 2
    if k < 0:
        raise ArityMismatch("cv_rec step needs arity >= 2")
    if k == 0:
        inner = cv_rec(C(step, Proj(3, 2), Proj(3, 3)))
        return C(inner, Proj(1, 1), Proj(1, 1))
    m = k + 2  # history step arity: params, counter, acc
    params = [Proj(m, i) for i in range(1, k + 1)]
    hstep = C(APPEND1, Proj(m, m), C(step, *params, Proj(m, k + 1), Proj(m, m)))
    hist = Pr(const(0, k), hstep)
    outer = [Proj(k + 1, i) for i in range(1, k + 2)]
    return C(step, *outer, C(hist, *outer))
