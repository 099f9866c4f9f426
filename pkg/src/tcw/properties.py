"""Property checkers: SI, SM, CV, FM, SF, FW, SW, CF.

Every checker returns a three-valued Verdict.  Positive answers come from
structural arguments on the spectrum (exact for SI and FM over empty
signatures) or, for FW/SW, from bounded witness validation.  Negative
answers always carry a concrete counterexample that the generic engine
confirms on a restricted copy of the theory.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .cardinality import INF, CardSet, Piece, Spectrum, cardset_contains, finite, fmt_tuple, inf_only
from .corpus import cv_cubes, distinct_probe, formula_corpus, pigeonhole_cube
from .errors import BudgetExceeded, OracleExhausted, WitnessError
from .logic import Eq, Formula, Neq, Not, Term, conj, disj, to_text, variables
from .minmod import minmod
from .oracle import _piece_points, default_bound
from .partitions import ShapeTag, node_limit
from .theories import TheoryDef
from .verdict import Verdict, proved, refuted, unknown
from .witness import build_witness, validate_witness

PROPERTIES = ("SI", "SM", "CV", "FM", "SF", "FW", "SW", "CF")

NAMES = {
    "SI": "stably infinite",
    "SM": "smooth",
    "CV": "convex",
    "FM": "finite model property",
    "SF": "stably finite",
    "FW": "finitely witnessable",
    "SW": "strongly finitely witnessable",
    "CF": "computable minimal model function",
}


# ---------------------------------------------------------------- restrictions


def _only(v):
    """Restrict a cardset to exactly v (None if v is not a member)."""

    def f(cs: CardSet):
        if v == INF:
            return inf_only() if cs.include_inf else None
        return finite([v]) if cardset_contains(cs, v) else None

    return f


def _finite_upto(cap=INF):
    def f(cs: CardSet):
        if cap == INF:
            if cs.sup_finite is None:
                return None
            return replace(cs, include_inf=False)
        vals = cs.members_upto(cap)
        return finite(vals) if vals else None

    return f


def _infinite(cs: CardSet):
    return inf_only() if cs.include_inf else None


def restrict(T: TheoryDef, rules: Dict[int, Callable], label="") -> Optional[TheoryDef]:
    """Copy of T whose pieces keep only the cardinalities allowed by
    ``rules[sort_index]``; None when nothing is left.  May raise
    OracleExhausted while deciding membership."""
    pieces = []
    for p in T.spectrum.expanded():
        cards = list(p.cards)
        alive = True
        groups = [[i] for i in range(len(cards)) if i not in p.tie]
        if p.tie:
            groups.append(list(p.tie))
        for g in groups:
            cs = p.card(g[0])
            for i in g:
                if i in rules and cs is not None:
                    cs = rules[i](cs)
            if cs is None:
                alive = False
                break
            for i in g:
                cards[i] = cs
        if alive:
            pieces.append(Piece(tuple(cards), p.tie, p.tag, False))
    if not pieces:
        return None
    return TheoryDef(
        name=f"{T.name}|{label}",
        signature=T.signature,
        spectrum=Spectrum(T.sorts, tuple(pieces)),
        oracles=T.oracles,
    )


# ---------------------------------------------------------------- tags


def _kind(tag: ShapeTag):
    if tag.kind == "identity":
        return ("cycle_eq", 1)
    return (tag.kind, tag.k) if tag.kind else None


_KIND_IMPLIES = {
    ("cycle_eq", 1): {("cycle_eq", 1), ("cycle_eq", 2), ("cycle_or", 1), ("cycle_or", 2)},
    ("cycle_eq", 2): {("cycle_eq", 2), ("cycle_or", 1), ("cycle_or", 2)},
    ("cycle_or", 1): {("cycle_or", 1), ("cycle_or", 2)},
    ("cycle_or", 2): {("cycle_or", 2)},
}


def tag_implies(a: ShapeTag, b: ShapeTag):
    """Does every function meeting ``a`` also meet ``b``?"""
    if b.free or a == b:
        return True
    if b.nofix and not a.nofix:
        return False
    if b.kind == "identity":
        return a.kind == "identity"
    kb = _kind(b)
    if kb is None:
        return True
    ka = _kind(a)
    return ka is not None and kb in _KIND_IMPLIES[ka]


def _extendable(tag: ShapeTag):
    """Can any model be enlarged by any number of elements?"""
    return not (tag.nofix and tag.kind)


def _finite_good(cs: CardSet, tag: ShapeTag):
    """Any finite chain configuration extends to some finite member."""
    if not cs.finite_unbounded:
        return False
    if tag.nofix and tag.kind == "cycle_eq":
        return cs.kind == "from" or (cs.kind == "seq" and cs.scale % 2 == 0)
    return True


# ---------------------------------------------------------------- context


def _corner(piece: Piece, i):
    cs = piece.card(i)
    if cs.include_inf or cs.finite_unbounded:
        return INF
    return cs.sup_finite


@dataclass
class _Ctx:
    T: TheoryDef
    bound: int
    S: Tuple[str, ...]
    sat_cache: Dict = field(default_factory=dict)
    verdicts: Dict[str, Verdict] = field(default_factory=dict)
    exhausted: bool = False

    @property
    def sig(self):
        return self.T.signature

    @property
    def s_idx(self):
        return self.T.spectrum.index(self.S)

    @property
    def pieces(self):
        return self.T.spectrum.expanded()

    def restricted(self, key, rules):
        ck = ("theory", key)
        if ck not in self.sat_cache:
            try:
                self.sat_cache[ck] = ("ok", restrict(self.T, rules, str(key)))
            except OracleExhausted:
                self.exhausted = True
                self.sat_cache[ck] = ("exhausted", None)
        return self.sat_cache[ck]

    def sat(self, key, rules, phi):
        """Satisfiability of phi in T restricted by ``rules``; None if a
        sequence oracle ran out."""
        if key is None:
            T = self.T
        else:
            st, T = self.restricted(key, rules)
            if st == "exhausted":
                return None
            if T is None:
                return False
        ck = (key, phi)
        if ck not in self.sat_cache:
            try:
                self.sat_cache[ck] = bool(minmod(T, None, phi))
            except OracleExhausted:
                self.exhausted = True
                self.sat_cache[ck] = None
        return self.sat_cache[ck]

    def corpus(self):
        return formula_corpus(self.sig)

    def demand_probes(self, limit=None):
        """Distinct-variable probes of every demand vector up to the bound."""
        top = limit or self.bound
        n = len(self.sig.sorts)
        if n > 1:
            top = min(top, 4)
        return [distinct_probe(self.sig, c) for c in itertools.product(range(1, top + 1), repeat=n)]


def _formula_cex(phi, detail):
    return {"formula": to_text(phi), "detail": detail}


# ---------------------------------------------------------------- SI / FM


def _cover_check(ctx: _Ctx, mode: str):
    """Exact corner test over empty signatures.  Returns (ok, demand)."""
    S = set(ctx.s_idx)
    n = len(ctx.T.sorts)
    qcorners = []
    for q in ctx.pieces:
        c = []
        usable = True
        for i in range(n):
            group = list(q.tie) if i in q.tie else [i]
            touches_s = any(j in S for j in group)
            cs = q.card(i)
            if mode == "SI":
                if touches_s and not cs.include_inf:
                    usable = False
                c.append(INF if touches_s else _corner(q, i))
            else:
                if touches_s:
                    if cs.sup_finite is None:
                        usable = False
                    c.append(cs.sup_finite)
                else:
                    c.append(_corner(q, i))
        if usable:
            qcorners.append(c)
    finite_vals = [v for c in qcorners for v in c if v not in (INF, None)]
    big = max(finite_vals + [1]) + 1
    for p in ctx.pieces:
        pc = [_corner(p, i) for i in range(n)]
        if mode == "SI":
            pc = [1 if i in S else v for i, v in enumerate(pc)]
        if any(all(a <= b for a, b in zip(pc, qc)) for qc in qcorners):
            continue
        return False, tuple(big if v == INF else v for v in pc)
    return True, None


def _tag_cover(ctx: _Ctx, mode: str):
    """Sufficient test with a function symbol (the fn sort is in S)."""
    S = set(ctx.s_idx)
    if 0 not in S:
        return False
    for p in ctx.pieces:
        if mode == "FM" and not any(p.card(i).include_inf for i in S):
            continue
        ok = False
        for q in ctx.pieces:
            if not tag_implies(p.tag, q.tag):
                continue
            cs = q.card(0)
            if mode == "SI" and cs.include_inf:
                ok = True
            if mode == "FM" and _finite_good(cs, q.tag):
                ok = True
            if ok:
                break
        if not ok:
            return False
    return True


def _refute_by_restriction(ctx: _Ctx, key, rules, probes, what):
    for phi in probes:
        if ctx.sat(None, None, phi) and ctx.sat(key, rules, phi) is False:
            return refuted(f"{to_text(phi)} is satisfiable but has no model {what}", _formula_cex(phi, what))
    return None


def check_si(ctx: _Ctx) -> Verdict:
    rules = {i: _infinite for i in ctx.s_idx}
    what = "with every sort in S infinite"
    if not ctx.sig.has_unary_fn:
        ok, d = _cover_check(ctx, "SI")
        if ok:
            return proved("every realizable demand is met by a piece with Inf on S")
        phi = distinct_probe(ctx.sig, d)
        v = _refute_by_restriction(ctx, "inf_S", rules, [phi], what)
        if v:
            return v
        return unknown(f"demand {fmt_tuple(d)} escapes every infinite piece, but the engine could not confirm it")
    if _tag_cover(ctx, "SI"):
        return proved("every piece pads into an infinite piece with a weaker tag")
    v = _refute_by_restriction(ctx, "inf_S", rules, ctx.corpus(), what)
    return v or unknown("no counterexample in the corpus and no structural proof")


def check_fm(ctx: _Ctx) -> Verdict:
    rules = {i: _finite_upto() for i in ctx.s_idx}
    what = "with every sort in S finite"
    if not ctx.sig.has_unary_fn:
        ok, d = _cover_check(ctx, "FM")
        if ok:
            return proved("every realizable demand is met by finite members")
        phi = distinct_probe(ctx.sig, d)
        v = _refute_by_restriction(ctx, "fin_S", rules, [phi], what)
        if v:
            return v
        return unknown(f"demand {fmt_tuple(d)} escapes every finite point, but the engine could not confirm it")
    if _tag_cover(ctx, "FM"):
        return proved("every piece with Inf has unbounded finite members compatible with its tag")
    v = _refute_by_restriction(ctx, "fin_S", rules, ctx.corpus(), what)
    return v or unknown("no counterexample in the corpus and no structural proof")


# ---------------------------------------------------------------- SM


def _grid_points(ctx: _Ctx, limit=None):
    out = []
    for p in ctx.pieces:
        pts, _ = _piece_points(p, limit or ctx.bound)
        out.extend(pts)
    return sorted(set(out))


def check_sm(ctx: _Ctx) -> Verdict:
    S = ctx.s_idx
    if all(all(p.card(i).upward_closed for i in S) and _extendable(p.tag) for p in ctx.pieces):
        return proved("every piece is upward closed on S and its tag allows growth")
    limit, exact = ctx.bound, False
    if not ctx.sig.has_unary_fn and len(S) == len(ctx.T.sorts):
        consts = _constants(ctx)
        if consts is not None:
            # memberships are constant above the largest constant
            limit, exact = max(ctx.bound, max(consts) + 1), True
    vals = list(range(1, limit + 1)) + [INF]
    for p in _grid_points(ctx, limit):
        if ctx.sig.has_unary_fn:
            probes = ctx.corpus()
        else:
            probes = [distinct_probe(ctx.sig, [1 if v == INF else v for v in p])]
        at_p = {i: _only(v) for i, v in enumerate(p)}
        for phi in probes:
            if not ctx.sat(("at", p), at_p, phi):
                continue
            for kappa in itertools.product(*[[v for v in vals if v >= p[i]] for i in S]):
                if all(k == p[i] for k, i in zip(kappa, S)):
                    continue
                rules = {i: _only(k) for k, i in zip(kappa, S)}
                if ctx.sat(("exact", kappa), rules, phi) is False:
                    return refuted(
                        f"{to_text(phi)} has a model of size {fmt_tuple(p)} but none with S-sizes {fmt_tuple(kappa)}",
                        {"formula": to_text(phi), "sizes": p, "target": kappa},
                    )
    if exact:
        return proved(f"no gap up to {limit}, and memberships do not change above it")
    return unknown(f"no counterexample up to bound {ctx.bound}")


def _constants(ctx: _Ctx):
    """Every explicit value and threshold in the spectrum, or None when some
    piece uses a sequence."""
    out = [1]
    for p in ctx.pieces:
        for cs in p.cards:
            if cs.kind == "seq":
                return None
            out.extend(cs.values)
            if cs.kind == "from":
                out.append(cs.min)
    return out


# ---------------------------------------------------------------- SF


def check_sf(ctx: _Ctx) -> Verdict:
    fm = ctx.verdicts.get("FM") or check_fm(ctx)
    if fm.refuted:
        return refuted("no finite model at all for " + (fm.counterexample or {}).get("formula", "some formula"), fm.counterexample)
    if len(ctx.T.sorts) == 1:
        if fm.proved:
            return proved("one sort: follows from the finite model property")
        return unknown("one sort: same status as the finite model property")
    S = ctx.s_idx
    good = True
    for p in ctx.pieces:
        for i in S:
            cs = p.card(i)
            if cs.include_inf and not _finite_good(cs, p.tag if i == 0 else ShapeTag()):
                good = False
    if good:
        return proved("every Inf coordinate on S can be replaced by a finite member in the same piece")
    for p in _grid_points(ctx):
        inf_s = [i for i in S if p[i] == INF]
        if not inf_s:
            continue
        at_p = {i: _only(v) for i, v in enumerate(p)}
        rules = {i: _finite_upto(p[i]) for i in S}
        fills = range(1, ctx.bound + 1)
        for fill in fills:
            if ctx.sig.has_unary_fn:
                probes = ctx.corpus()
            else:
                probes = [distinct_probe(ctx.sig, [fill if v == INF else v for v in p])]
            for phi in probes:
                if ctx.sat(("at", p), at_p, phi) and ctx.sat(("below", p), rules, phi) is False:
                    return refuted(
                        f"{to_text(phi)} has a model of size {fmt_tuple(p)} but none finite and smaller on S",
                        {"formula": to_text(phi), "sizes": p},
                    )
    return unknown(f"no counterexample up to bound {ctx.bound}")


# ---------------------------------------------------------------- CV


def _degenerate(ctx: _Ctx, i):
    return all(_corner(p, i) == 1 for p in ctx.pieces)


def check_cv(ctx: _Ctx) -> Verdict:
    n = len(ctx.T.sorts)
    if not ctx.sig.has_unary_fn:
        for q in ctx.pieces:
            if all(_degenerate(ctx, i) or _corner(q, i) == INF for i in range(n)):
                return proved("a piece unbounded on every non-trivial sort realizes the finest arrangement of any cube")
    cubes = list(cv_cubes(ctx.sig))
    for i, s in enumerate(ctx.T.sorts):
        caps = [_corner(p, i) for p in ctx.pieces]
        if INF not in caps and max(caps) > 1:
            cubes.append(pigeonhole_cube(ctx.sig, s, max(caps) + 1))
    for cube in cubes:
        if not ctx.sat(None, None, cube):
            continue
        vs = variables(cube)
        pairs = [Eq(Term(a), Term(b)) for a, b in itertools.combinations(vs, 2) if a.sort == b.sort]
        open_ = []
        for e in pairs:
            r = ctx.sat(None, None, conj([cube, Not(e)]))
            if r is None:
                open_ = None
                break
            if r:
                open_.append(e)
        if not open_:
            continue
        r = ctx.sat(None, None, conj([cube] + [Not(e) for e in open_]))
        if r is False:
            return refuted(
                f"{to_text(cube)} entails {to_text(disj(open_))} but none of the disjuncts",
                {"cube": cube, "disjuncts": tuple(open_), "formula": to_text(cube)},
            )
    if ctx.sig.has_unary_fn:
        return unknown("no counterexample among the corpus cubes")
    return unknown("no piece is unbounded everywhere and no counterexample among the corpus cubes")


# ---------------------------------------------------------------- CF


def check_cf(ctx: _Ctx) -> Verdict:
    deps = ctx.T.noncomputable_deps
    if not deps:
        return proved("every cardinality set is decidable, so the generic engine computes minmod")
    return unknown(f"pieces rely on {', '.join(deps)}, known only on a finite prefix")


# ---------------------------------------------------------------- FW / SW


# per engine call during witness validation; larger searches count as undecided
WITNESS_NODE_LIMIT = 200_000


def witness_probes(ctx: _Ctx):
    corpus = ctx.corpus()
    if ctx.sig.has_unary_fn:
        # every fresh variable brings an s-chain, so keep these small
        picked = list(corpus[:8])
    else:
        picked = list(corpus[:18]) + list(corpus[-8:])
    # five distinct variables reach past short sequence prefixes; this does
    # not depend on the bound, only validation does
    top = 5 if not ctx.sig.has_unary_fn else 2
    if len(ctx.T.sorts) > 1:
        top = 3
    for k in range(2, top + 1):
        picked.append(distinct_probe(ctx.sig, [k] * len(ctx.T.sorts)))
    seen, out = set(), []
    for f in picked:
        if f not in seen:
            seen.add(f)
            out.append(f)
    return out


def _try_recipe(ctx: _Ctx, recipe, strong):
    decided = 0
    undecided = []
    for phi in witness_probes(ctx):
        try:
            wit = build_witness(ctx.T, phi, recipe, ctx.S)
        except OracleExhausted as e:
            ctx.exhausted = True
            return refuted(
                f"recipe {recipe} needs {e.oracle}({e.index}), beyond the known prefix, for {to_text(phi)}",
                _formula_cex(phi, "witness construction exhausted the sequence oracle"),
                bounded=True,
            )
        except WitnessError as e:
            return refuted(f"recipe {recipe}: {e}", _formula_cex(phi, str(e)), bounded=True)
        try:
            with node_limit(WITNESS_NODE_LIMIT):
                v = validate_witness(ctx.T, wit, phi, ctx.bound, strong, ctx.S)
        except (OracleExhausted, BudgetExceeded) as e:
            undecided.append(f"{to_text(phi)}: {e}")
            continue
        if v.refuted:
            cex = {"formula": to_text(phi), "witness": to_text(wit), "detail": v.detail}
            return refuted(f"recipe {recipe} on {to_text(phi)}: {v.detail}", cex, bounded=True)
        if v.unknown:
            undecided.append(f"{to_text(phi)}: {v.detail}")
        else:
            decided += 1
    if decided == 0:
        return unknown(f"recipe {recipe}: nothing decided at bound {ctx.bound}")
    note = f" ({len(undecided)} undecided)" if undecided else ""
    return proved(f"recipe {recipe} validated on {decided} probes at bound {ctx.bound}{note}", bounded=True)


def _recipes_verdict(ctx: _Ctx, strong):
    recipes = list(dict.fromkeys(("generic", "distinct") + tuple(ctx.T.recipes)))
    results = [(r, _try_recipe(ctx, r, strong)) for r in recipes]
    for r, v in results:
        if v.proved:
            return v
    if all(v.refuted for _, v in results):
        return results[0][1]
    return unknown("; ".join(f"{r}: {v.short()}" for r, v in results))


def check_fw(ctx: _Ctx) -> Verdict:
    fm = ctx.verdicts.get("FM") or check_fm(ctx)
    if fm.refuted:
        return refuted("a finite witness would give a finite model: " + fm.detail, fm.counterexample)
    return _recipes_verdict(ctx, False)


def check_sw(ctx: _Ctx) -> Verdict:
    for dep in ("FM", "SF"):
        v = ctx.verdicts.get(dep)
        if v is not None and v.refuted:
            return refuted(f"{NAMES[dep]} fails: {v.detail}", v.counterexample)
    v = _recipes_verdict(ctx, True)
    si, sm = ctx.verdicts.get("SI"), ctx.verdicts.get("SM")
    derived = len(ctx.T.sorts) == 1 and si is not None and sm is not None and si.proved and sm.refuted
    if derived:
        if v.refuted:
            return replace(v, bounded=False, detail=v.detail + "; also stably infinite but not smooth over one sort")
        if v.unknown:
            return refuted("stably infinite but not smooth over one sort", sm.counterexample)
    return v


CHECKERS = {
    "SI": check_si,
    "SM": check_sm,
    "CV": check_cv,
    "FM": check_fm,
    "SF": check_sf,
    "FW": check_fw,
    "SW": check_sw,
    "CF": check_cf,
}

# checkers that reuse other verdicts
_DEPS = {"SF": ("FM",), "FW": ("FM",), "SW": ("SI", "SM", "FM", "SF")}


def _context(T, S=None, bound=None):
    return _Ctx(T, bound or default_bound(T), tuple(T.sorts) if S is None else tuple(S))


def _run(ctx: _Ctx, prop):
    if prop not in ctx.verdicts:
        for dep in _DEPS.get(prop, ()):
            _run(ctx, dep)
        ctx.verdicts[prop] = CHECKERS[prop](ctx)
    return ctx.verdicts[prop]


def check_property(T: TheoryDef, prop: str, S=None, bound=None) -> Verdict:
    prop = prop.upper()
    if prop not in CHECKERS:
        raise ValueError(f"unknown property {prop!r}; choose from {', '.join(PROPERTIES)}")
    return _run(_context(T, S, bound), prop)


# ---------------------------------------------------------------- profiles


@dataclass(frozen=True)
class Rule:
    label: str
    scope: str  # empty1 | empty | empty_sigma2 | one | all
    combo: Tuple[Tuple[str, str], ...]  # (property, sign) that may not all hold


def _rule(label, scope, text):
    combo = []
    for part in text.split():
        sign = "-" if part.startswith("!") else "+"
        combo.append((part.lstrip("!"), sign))
    return Rule(label, scope, tuple(combo))


IMPOSSIBLE = (
    _rule("SM => CF", "empty", "SM !CF"),
    _rule("not (!FM and !CF)", "empty1", "!FM !CF"),
    _rule("CF and FM => FW", "all", "CF FM !FW"),
    _rule("not (CV and !SI and !FM and !CF)", "empty_sigma2", "CV !SI !FM !CF"),
    _rule("not (!SI and !FW)", "empty1", "!SI !FW"),
    _rule("not (!SI and !SW and CV)", "empty1", "!SI !SW CV"),
    _rule("not (!SI and !CF)", "empty1", "!SI !CF"),
    _rule("SI => CV", "empty", "SI !CV"),
    _rule("SM and FM => FW", "empty", "SM !FW FM"),
    _rule("SM and SF => SW", "empty", "SM !SW SF"),
    _rule("not (!SI and CV and FM and !SF)", "empty_sigma2", "!SI CV FM !SF"),
    _rule("SM and FW => SW", "one", "SM FW !SW"),
    _rule("SI and SW => SM", "one", "SI !SM SW"),
    _rule("FM => SF", "one", "FM !SF"),
    _rule("SM => SI", "all", "SM !SI"),
    _rule("SF => FM", "all", "!FM SF"),
    _rule("FW => FM", "all", "FW !FM"),
    _rule("SW => SF", "all", "SW !SF"),
    _rule("SW => FW", "all", "SW !FW"),
)


def rule_applies(rule: Rule, sig):
    empty = not sig.has_unary_fn
    n = len(sig.sorts)
    return {
        "all": True,
        "one": n == 1,
        "empty": empty,
        "empty1": empty and n == 1,
        "empty_sigma2": empty and n == 2,
    }[rule.scope]


def violations(signs: Dict[str, str], sig) -> List[str]:
    """Impossible combinations present among the definite verdicts."""
    out = []
    for r in IMPOSSIBLE:
        if rule_applies(r, sig) and all(signs.get(p) == s for p, s in r.combo):
            out.append(r.label)
    return out


@dataclass
class Profile:
    theory: TheoryDef
    bound: int
    verdicts: Dict[str, Verdict]
    violations: List[str]
    exhausted: bool = False

    @property
    def signs(self):
        return {p: v.sign for p, v in self.verdicts.items()}

    def mismatches(self):
        """Expected-profile entries that disagree with the computed signs."""
        exp = self.theory.expected_profile
        return {p: (e, self.signs.get(p)) for p, e in exp.items() if self.signs.get(p) != e}

    def row(self):
        return " ".join(f"{p}{self.signs[p]}" for p in PROPERTIES)


def property_profile(T: TheoryDef, bound=None) -> Profile:
    ctx = _context(T, None, bound)
    for p in PROPERTIES:
        _run(ctx, p)
    verdicts = {p: ctx.verdicts[p] for p in PROPERTIES}
    signs = {p: v.sign for p, v in verdicts.items()}
    return Profile(T, ctx.bound, verdicts, violations(signs, T.signature), ctx.exhausted)
