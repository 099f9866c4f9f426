"""Signatures, terms and quantifier-free formulas over Σₙ / Σₛⁿ.

Only equality is available as a predicate and at most one function
symbol ``s`` is present, mapping the first sort to itself.  Terms are
kept in the normal form ``(variable, depth)`` meaning ``s^depth(variable)``.

Concrete syntax::

    formula := disj
    disj    := conj ('|' conj)*
    conj    := lit ('&' lit)*
    lit     := '!' lit | atom | '(' formula ')' | 'true' | 'false'
    atom    := term ('=' | '!=') term
    term    := var | 's(' term ')' | 's^' NAT '(' var ')'
    var     := IDENT ':' IDENT
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .errors import EvalError, ParseError, SortError

FN = "s"


@dataclass(frozen=True)
class Signature:
    sorts: Tuple[str, ...]
    has_unary_fn: bool = False

    def __post_init__(self):
        sorts = tuple(self.sorts)
        object.__setattr__(self, "sorts", sorts)
        if not sorts:
            raise SortError("a signature needs at least one sort")
        if len(set(sorts)) != len(sorts):
            raise SortError(f"duplicate sort names in {sorts}")
        for s in sorts:
            if not s or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", s):
                raise SortError(f"bad sort name {s!r}")

    @property
    def fn_sort(self):
        """The sort carrying ``s`` (always the first one), or None."""
        return self.sorts[0] if self.has_unary_fn else None

    def index(self, sort):
        return self.sorts.index(sort)

    def __str__(self):
        core = f"Σ{len(self.sorts)}" if not self.has_unary_fn else f"Σs^{len(self.sorts)}"
        return f"{core}({', '.join(self.sorts)})"


def sigma_n(n=1):
    """Empty signature with sorts s1..sn."""
    return Signature(tuple(f"s{i}" for i in range(1, n + 1)), False)


def sigma_s(n=1):
    """Sorts s1..sn plus a unary s on s1."""
    return Signature(tuple(f"s{i}" for i in range(1, n + 1)), True)


@dataclass(frozen=True, order=True)
class Var:
    name: str
    sort: str

    def __str__(self):
        return f"{self.name}:{self.sort}"


@dataclass(frozen=True, order=True)
class Term:
    var: Var
    depth: int = 0

    @property
    def sort(self):
        return self.var.sort

    def __str__(self):
        if self.depth == 0:
            return str(self.var)
        if self.depth == 1:
            return f"s({self.var})"
        return f"s^{self.depth}({self.var})"


class Formula:
    """Base class of formula nodes."""

    __slots__ = ()

    def __and__(self, other):
        return conj([self, other])

    def __or__(self, other):
        return disj([self, other])

    def __invert__(self):
        return Not(self)

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Eq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Neq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    args: Tuple[Formula, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Or(Formula):
    args: Tuple[Formula, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


TRUE = And(())
FALSE = Or(())


def conj(parts):
    """Conjunction with the obvious unit/singleton normalization."""
    parts = tuple(parts)
    if len(parts) == 1:
        return parts[0]
    return And(parts)


def disj(parts):
    parts = tuple(parts)
    if len(parts) == 1:
        return parts[0]
    return Or(parts)


def var(name, sort="s1"):
    return Var(name, sort)


def term(v, depth=0):
    if isinstance(v, Term):
        return Term(v.var, v.depth + depth)
    return Term(v, depth)


def eq(a, b):
    return Eq(term(a), term(b))


def neq(a, b):
    return Neq(term(a), term(b))


def distinct(vs):
    """Pairwise disequality of the given variables (or terms)."""
    vs = list(vs)
    return conj([neq(vs[i], vs[j]) for i in range(len(vs)) for j in range(i + 1, len(vs))])


# ---------------------------------------------------------------- printing


def _atom_text(a):
    op = "=" if isinstance(a, Eq) else "!="
    return f"{a.left} {op} {a.right}"


def to_text(phi):
    """Canonical concrete syntax; ``parse_formula`` inverts it."""
    if isinstance(phi, (Eq, Neq)):
        return _atom_text(phi)
    if isinstance(phi, Not):
        inner = phi.arg
        if isinstance(inner, (Eq, Neq, Not)) or inner == TRUE or inner == FALSE:
            return "!" + to_text(inner)
        return "!(" + to_text(inner) + ")"
    if isinstance(phi, And):
        if not phi.args:
            return "true"
        parts = []
        for a in phi.args:
            t = to_text(a)
            if isinstance(a, (And, Or)) and a.args:
                t = f"({t})"
            parts.append(t)
        return " & ".join(parts)
    if isinstance(phi, Or):
        if not phi.args:
            return "false"
        parts = []
        for a in phi.args:
            t = to_text(a)
            if isinstance(a, Or) and a.args:
                t = f"({t})"
            parts.append(t)
        return " | ".join(parts)
    raise TypeError(f"not a formula: {phi!r}")


# ----------------------------------------------------------------- parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<neq>!=)|(?P<pow>s\^)|(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<sym>[():=!&|]))"
)


def _tokenize(text):
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        val = m.group(kind)
        start = m.start(kind)
        toks.append((kind, val, start))
        pos = m.end()
    toks.append(("eof", "", n))
    return toks


class _Parser:
    def __init__(self, text, sig):
        self.text = text
        self.sig = sig
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, val):
        t = self.next()
        if t[1] != val:
            raise ParseError(f"expected {val!r}, found {t[1] or 'end of input'!r}", t[2])
        return t

    def formula(self):
        parts = [self.conj()]
        while self.peek()[1] == "|":
            self.next()
            parts.append(self.conj())
        return disj(parts)

    def conj(self):
        parts = [self.lit()]
        while self.peek()[1] == "&":
            self.next()
            parts.append(self.lit())
        return conj(parts)

    def lit(self):
        kind, val, pos = self.peek()
        if val == "!" and kind == "sym":
            self.next()
            return Not(self.lit())
        if val == "(":
            self.next()
            f = self.formula()
            self.expect(")")
            return f
        if kind == "ident" and val in ("true", "false") and self.peek(1)[1] != ":":
            self.next()
            return TRUE if val == "true" else FALSE
        return self.atom()

    def atom(self):
        left = self.term()
        kind, val, pos = self.next()
        if val not in ("=", "!="):
            raise ParseError(f"expected '=' or '!=', found {val or 'end of input'!r}", pos)
        right = self.term()
        if left.sort != right.sort:
            raise SortError(
                f"sort mismatch in atom at position {pos}: {left} is {left.sort}, {right} is {right.sort}"
            )
        return Eq(left, right) if val == "=" else Neq(left, right)

    def _fn_check(self, pos):
        if not self.sig.has_unary_fn:
            raise SortError(f"s not in signature (position {pos})")

    def term(self):
        kind, val, pos = self.peek()
        if kind == "pow":
            self.next()
            self._fn_check(pos)
            k = self.next()
            if k[0] != "num":
                raise ParseError("expected exponent after 's^'", k[2])
            self.expect("(")
            v = self.var()
            self.expect(")")
            return self._apply(Term(v, 0), int(k[1]), pos)
        if kind == "ident" and val == FN and self.peek(1)[1] == "(":
            self.next()
            self._fn_check(pos)
            self.expect("(")
            inner = self.term()
            self.expect(")")
            return self._apply(inner, 1, pos)
        return Term(self.var(), 0)

    def _apply(self, t, k, pos):
        if k and t.sort != self.sig.fn_sort:
            raise SortError(f"s applied to {t.var} of sort {t.sort}; s acts on {self.sig.fn_sort} (position {pos})")
        return Term(t.var, t.depth + k)

    def var(self):
        kind, val, pos = self.next()
        if kind != "ident":
            raise ParseError(f"expected a variable, found {val or 'end of input'!r}", pos)
        self.expect(":")
        skind, sval, spos = self.next()
        if skind != "ident":
            raise ParseError("expected a sort name after ':'", spos)
        if sval not in self.sig.sorts:
            raise SortError(f"unknown sort {sval!r} (position {spos})")
        return Var(val, sval)


def parse_formula(text, sig):
    """Parse ``text`` over ``sig``; raises ParseError / SortError."""
    p = _Parser(text, sig)
    if p.peek()[0] == "eof":
        raise ParseError("empty formula", 0)
    f = p.formula()
    kind, val, pos = p.peek()
    if kind != "eof":
        raise ParseError(f"unexpected trailing input {val!r}", pos)
    return f


# ---------------------------------------------------------- traversal utils


def atoms(phi):
    """Yield every Eq/Neq node of ``phi`` (left to right)."""
    stack = [phi]
    out = []
    while stack:
        f = stack.pop()
        if isinstance(f, (Eq, Neq)):
            out.append(f)
        elif isinstance(f, Not):
            stack.append(f.arg)
        else:
            stack.extend(reversed(f.args))
    return out


def terms(phi):
    ts = set()
    for a in atoms(phi):
        ts.add(a.left)
        ts.add(a.right)
    return ts


def variables(phi):
    """Sorted tuple of the variables of ``phi``."""
    return tuple(sorted({t.var for t in terms(phi)}, key=lambda v: (v.sort, v.name)))


def vars_of_sort(phi, sort):
    return tuple(v for v in variables(phi) if v.sort == sort)


def max_depths(phi):
    """Map each variable to the largest s-depth it occurs under."""
    out = {}
    for t in terms(phi):
        out[t.var] = max(out.get(t.var, 0), t.depth)
    return out


def uses_fn(phi):
    return any(t.depth > 0 for t in terms(phi))


def map_atoms(phi, fn: Callable[[Formula], Formula]):
    """Rebuild ``phi`` replacing each atom ``a`` with ``fn(a)``."""
    if isinstance(phi, (Eq, Neq)):
        return fn(phi)
    if isinstance(phi, Not):
        return Not(map_atoms(phi.arg, fn))
    if isinstance(phi, And):
        return And(tuple(map_atoms(a, fn) for a in phi.args))
    if isinstance(phi, Or):
        return Or(tuple(map_atoms(a, fn) for a in phi.args))
    raise TypeError(f"not a formula: {phi!r}")


def simplify(phi):
    """Fold the constants true/false and flatten nested connectives."""
    if isinstance(phi, (Eq, Neq)):
        return phi
    if isinstance(phi, Not):
        a = simplify(phi.arg)
        if a == TRUE:
            return FALSE
        if a == FALSE:
            return TRUE
        if isinstance(a, Not):
            return a.arg
        return Not(a)
    if isinstance(phi, And):
        out = []
        for a in phi.args:
            a = simplify(a)
            if a == FALSE:
                return FALSE
            if isinstance(a, And):
                out.extend(a.args)
            else:
                out.append(a)
        return conj(out) if out else TRUE
    if isinstance(phi, Or):
        out = []
        for a in phi.args:
            a = simplify(a)
            if a == TRUE:
                return TRUE
            if isinstance(a, Or):
                out.extend(a.args)
            else:
                out.append(a)
        return disj(out) if out else FALSE
    raise TypeError(f"not a formula: {phi!r}")


def erase_unary(phi):
    """Replace every ``s^k(x)`` by ``x`` (the theory then reads s as identity)."""

    def strip(a):
        l, r = Term(a.left.var), Term(a.right.var)
        return Eq(l, r) if isinstance(a, Eq) else Neq(l, r)

    return map_atoms(phi, strip)


def check_signature(phi, sig):
    for t in terms(phi):
        if t.sort not in sig.sorts:
            raise SortError(f"unknown sort {t.sort!r} in {t}")
        if t.depth and not sig.has_unary_fn:
            raise SortError("s not in signature")
        if t.depth and t.sort != sig.fn_sort:
            raise SortError(f"s applied to {t.var} of sort {t.sort}")


# ------------------------------------------------------------ interpretations


@dataclass(frozen=True)
class Interpretation:
    """A finite structure: per-sort domain sizes (elements are 0..n-1),
    an optional table for ``s`` on the first sort, and a valuation."""

    signature: Signature
    domains: Mapping[str, int]
    fn: Optional[Tuple[int, ...]]
    valuation: Mapping[Var, int]

    def __post_init__(self):
        sig = self.signature
        object.__setattr__(self, "domains", dict(self.domains))
        object.__setattr__(self, "valuation", dict(self.valuation))
        for s in sig.sorts:
            if self.domains.get(s, 0) < 1:
                raise EvalError(f"domain of sort {s} must be non-empty")
        if sig.has_unary_fn:
            if self.fn is None:
                raise EvalError("signature has s but no function table was given")
            n = self.domains[sig.fn_sort]
            fn = tuple(self.fn)
            if len(fn) != n or any(not (0 <= b < n) for b in fn):
                raise EvalError("function table must be total and closed on the first sort")
            object.__setattr__(self, "fn", fn)
        elif self.fn is not None:
            raise EvalError("function table given for a signature without s")
        for v, e in self.valuation.items():
            if v.sort not in self.domains:
                raise EvalError(f"variable {v} has a sort outside the signature")
            if not (0 <= e < self.domains[v.sort]):
                raise EvalError(f"value {e} of {v} outside its domain")

    def size(self, sort):
        return self.domains[sort]

    def value(self, t: Term):
        try:
            e = self.valuation[t.var]
        except KeyError:
            raise EvalError(f"unvalued variable {t.var}") from None
        if t.depth:
            if self.fn is None:
                raise EvalError("formula uses s but the interpretation has no table")
            for _ in range(t.depth):
                e = self.fn[e]
        return e


def evaluate(phi, interp: Interpretation):
    """Tarskian truth of ``phi`` in ``interp``."""
    if isinstance(phi, Eq):
        return interp.value(phi.left) == interp.value(phi.right)
    if isinstance(phi, Neq):
        return interp.value(phi.left) != interp.value(phi.right)
    if isinstance(phi, Not):
        return not evaluate(phi.arg, interp)
    if isinstance(phi, And):
        return all(evaluate(a, interp) for a in phi.args)
    if isinstance(phi, Or):
        return any(evaluate(a, interp) for a in phi.args)
    raise TypeError(f"not a formula: {phi!r}")


# ``eval`` is the name used throughout the docs; keep both spellings.
eval_formula = evaluate


def induced_partition(interp: Interpretation, vs: Iterable[Var]):
    """Group variables by (sort, value)."""
    from .partitions import Partition

    groups: Dict[Tuple[str, int], list] = {}
    for v in vs:
        groups.setdefault((v.sort, interp.value(Term(v))), []).append(v)
    return Partition.from_blocks(groups.values())


# ---------------------------------------------------------------- flattening


def fresh_name(base: Var, j: int):
    return f"__y_{base.name}_{j}"


@dataclass(frozen=True)
class FlattenResult:
    """Result of replacing s-terms of the first sort with chain variables.

    ``chains[z]`` lists ``y_{z,0..L}``, where ``y_{z,0}`` is ``z`` itself.
    ``origin`` maps each chain variable to the term it stands for.
    """

    flat: Formula
    chains: Mapping[Var, Tuple[Var, ...]]
    origin: Mapping[Var, Term]
    extra_depth: int

    @property
    def fresh_vars(self):
        return tuple(y for ch in self.chains.values() for y in ch)

    def index(self):
        """Map chain variable -> (base, j)."""
        return {y: (z, j) for z, ch in self.chains.items() for j, y in enumerate(ch)}


def flatten_unary(phi, sig: Signature, extra_depth=1):
    """Rewrite ``s^j(z_i) = s^q(z_p)`` to ``y_{i,j} = y_{p,q}``.

    Chains run up to ``M_i + extra_depth`` where ``M_i`` is the largest
    depth of ``z_i`` in ``phi``.  Over an empty signature ``phi`` is
    returned unchanged with no chains.
    """
    if extra_depth < 1:
        raise ValueError("extra_depth must be at least 1")
    if not sig.has_unary_fn:
        return FlattenResult(phi, {}, {}, extra_depth)
    depths = max_depths(phi)
    bases = sorted((v for v in depths if v.sort == sig.fn_sort), key=lambda v: v.name)
    taken = {v.name for v in depths}
    chains = {}
    origin = {}
    for z in bases:
        ch = [z]
        origin[z] = Term(z, 0)
        for j in range(1, depths[z] + extra_depth + 1):
            name = fresh_name(z, j)
            if name in taken:
                raise SortError(f"variable name {name} clashes with a flattening variable")
            y = Var(name, z.sort)
            ch.append(y)
            origin[y] = Term(z, j)
        chains[z] = tuple(ch)

    def sub(t: Term):
        if t.depth == 0:
            return t
        return Term(chains[t.var][t.depth], 0)

    def rewrite(a):
        l, r = sub(a.left), sub(a.right)
        return Eq(l, r) if isinstance(a, Eq) else Neq(l, r)

    return FlattenResult(map_atoms(phi, rewrite), chains, origin, extra_depth)


def chain_extension(interp: Interpretation, fl: FlattenResult):
    """The interpretation that values ``y_{i,j}`` as ``s^j(z_i)``."""
    val = dict(interp.valuation)
    for z, ch in fl.chains.items():
        e = interp.value(Term(z))
        for j, y in enumerate(ch):
            if j:
                e = interp.fn[e]
            val[y] = e
    return Interpretation(interp.signature, interp.domains, interp.fn, val)
