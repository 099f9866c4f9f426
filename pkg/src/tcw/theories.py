"""Theory definitions, the shipped catalog, sequence oracles, tag
feasibility and the three theory operators."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .cardinality import (
    INF,
    CardSet,
    Piece,
    SequenceOracle,
    Spectrum,
    computable_oracle,
    from_,
)
from .errors import TheoryError
from .logic import Signature
from .partitions import FREE, IDENTITY, ShapeTag, parse_tag

# One admissible f: f(1) = 1 and every block 1..2^k holds 2^(k-1) ones.
DEFAULT_F_PREFIX = (1, 0, 0, 1, 1, 0, 0, 1)
BB_TABLE = (0, 1, 4)

OPERATORS = ("add_sort", "add_fn_id", "add_fn_or")


# ---------------------------------------------------------------- oracles


def check_f_prefix(f):
    f = tuple(int(b) for b in f)
    if not f or f[0] != 1:
        raise TheoryError("f must start with f(1) = 1")
    if any(b not in (0, 1) for b in f):
        raise TheoryError("f takes values in {0, 1}")
    k = 1
    while 2**k <= len(f):
        ones = sum(f[: 2**k])
        if ones != 2 ** (k - 1):
            raise TheoryError(f"f violates block balance on 1..{2**k}: {ones} ones, expected {2**(k-1)}")
        k += 1
    return f


def sequence_oracle_g(prefix_len=8, f_prefix=DEFAULT_F_PREFIX):
    """g(n) = n + f(1) + ... + f(n) on 1..prefix_len; later values are unknown."""
    if prefix_len < 2:
        raise TheoryError("the g prefix needs at least two values")
    f = check_f_prefix(f_prefix)
    if prefix_len > len(f):
        raise TheoryError(f"f prefix has {len(f)} entries, {prefix_len} requested")
    table = []
    acc = 0
    for n in range(1, prefix_len + 1):
        acc += f[n - 1]
        table.append(n + acc)
    return SequenceOracle("g", tuple(table), start=1)


def sequence_oracle_bb(extension=None):
    """Busy beaver values 0, 1, 4 at indices 0..2, plus an optional extension."""
    ext = tuple(int(v) for v in (extension or ()))
    if ext and ext[0] <= BB_TABLE[-1]:
        raise TheoryError("bb extension must continue strictly above 4")
    return SequenceOracle("bb", BB_TABLE + ext, start=0)


def even_oracle():
    return computable_oracle("even", lambda n: 2 * n, start=1)


def odd_oracle():
    return computable_oracle("odd", lambda n: 2 * n + 1, start=1)


def make_oracle(name, spec: Mapping):
    builtin = spec.get("builtin", name)
    if "table" in spec:
        return SequenceOracle(name, tuple(spec["table"]), int(spec.get("start", 0)))
    if builtin == "g":
        return sequence_oracle_g(int(spec.get("prefix_len", 8)), tuple(spec.get("f_prefix", DEFAULT_F_PREFIX)))
    if builtin == "bb":
        return sequence_oracle_bb(spec.get("extension"))
    if builtin == "even":
        return even_oracle()
    if builtin == "odd":
        return odd_oracle()
    raise TheoryError(f"unknown sequence oracle {builtin!r}")


# ---------------------------------------------------------------- feasibility


def feasible_extension(tag, used: int, total, two_cycle=False):
    """Can the successor map on ``used`` chain classes extend to a total
    function on ``total`` elements that satisfies ``tag``?

    ``two_cycle`` says whether the chain classes already contain a 2-cycle.
    """
    tag = parse_tag(tag)
    if total == INF:
        return True
    if total < used or total < 1:
        return False
    if not tag.nofix:
        return True
    if total < 2:
        return False
    r = total - used
    if tag.kind == "cycle_eq":
        return r % 2 == 0
    if tag.kind == "cycle_or":
        return r != 1 or two_cycle
    return True


def realizable_size(tag, c):
    """Is there any function on c elements satisfying the tag?"""
    return feasible_extension(tag, 0, c)


# ---------------------------------------------------------------- theories


@dataclass(frozen=True, eq=False)
class TheoryDef:
    name: str
    signature: Signature
    spectrum: Spectrum
    oracle_deps: Tuple[str, ...] = ()
    lemma: str = ""
    recipes: Tuple[str, ...] = ("generic",)
    expected: Tuple[Tuple[str, str], ...] = ()
    derived_from: Optional[Tuple[str, "TheoryDef"]] = None
    oracles: Tuple[SequenceOracle, ...] = ()
    # smallest bound at which the expected row is observable
    min_bound: int = 0

    def __post_init__(self):
        if tuple(self.spectrum.sorts) != tuple(self.signature.sorts):
            raise TheoryError("spectrum sorts must equal signature sorts")
        if not self.signature.has_unary_fn:
            for p in self.spectrum.pieces:
                if not p.tag.free or p.trivial:
                    raise TheoryError("shape tags need a function symbol")

    @property
    def sorts(self):
        return self.signature.sorts

    @property
    def expected_profile(self):
        return dict(self.expected)

    @property
    def noncomputable_deps(self):
        """Oracles without a computable tail that some piece relies on."""
        out = []
        for p in self.spectrum.pieces:
            for cs in p.cards:
                if cs.kind == "seq" and not cs.oracle.monotone_tail and cs.oracle.name not in out:
                    out.append(cs.oracle.name)
        return tuple(out)

    def describe(self):
        lines = [f"{self.name} over {self.signature}"]
        for p in self.spectrum.pieces:
            lines.append("  " + p.describe(self.sorts))
        return "\n".join(lines)


# ---------------------------------------------------------------- catalog files


def _subst(obj, params: Mapping[str, int]):
    if isinstance(obj, str) and obj.startswith("$"):
        key = obj[1:]
        if key not in params:
            raise TheoryError(f"unbound parameter {obj}")
        return params[key]
    if isinstance(obj, list):
        return [_subst(x, params) for x in obj]
    if isinstance(obj, dict):
        return {k: _subst(v, params) for k, v in obj.items()}
    return obj


def _cardset(d: Mapping, oracles: Mapping[str, SequenceOracle]):
    kind = d.get("kind", "finite")
    inf = bool(d.get("inf", False))
    if kind == "finite":
        if "range" in d:
            lo, hi = d["range"]
            vals = tuple(range(int(lo), int(hi) + 1))
        else:
            vals = tuple(int(v) for v in d.get("values", ()))
        return CardSet("finite", vals, include_inf=inf)
    if kind == "from":
        return CardSet("from", min=int(d["min"]), include_inf=inf)
    if kind == "seq":
        name = d["oracle"]
        if name not in oracles:
            raise TheoryError(f"piece uses undeclared oracle {name!r}")
        return CardSet(
            "seq",
            oracle=oracles[name],
            start=int(d.get("start", 1)),
            scale=int(d.get("scale", 1)),
            include_inf=inf,
        )
    raise TheoryError(f"unknown cardset kind {kind!r}")


_OPS = {"<": lambda a, b: a < b, "<=": lambda a, b: a <= b, ">": lambda a, b: a > b, ">=": lambda a, b: a >= b}


def theory_from_dict(doc: Mapping, params: Sequence[int] = (), name=None):
    """Build a TheoryDef from a parsed catalog document."""
    names = list(doc.get("params", []))
    if len(params) != len(names):
        raise TheoryError(f"{doc.get('name')} takes {len(names)} parameter(s) {names}, got {len(params)}")
    env = {k: int(v) for k, v in zip(names, params)}
    for k, v in env.items():
        if v < int(doc.get("param_min", {}).get(k, 1)):
            raise TheoryError(f"parameter {k}={v} out of range")
    for a, op, b in doc.get("constraints", []):
        av, bv = env.get(a[1:], a) if isinstance(a, str) else a, env.get(b[1:], b) if isinstance(b, str) else b
        if not _OPS[op](int(av), int(bv)):
            raise TheoryError(f"parameters violate {a} {op} {b}")
    doc = _subst(dict(doc), env)
    sorts = tuple(doc["sorts"])
    sig = Signature(sorts, bool(doc.get("unary", False)))
    oracles = {k: make_oracle(k, v or {}) for k, v in doc.get("oracles", {}).items()}
    pieces = []
    for pd in doc["pieces"]:
        cards_doc = pd["cards"]
        tie = tuple(sorts.index(s) for s in pd.get("diagonal", []))
        cards = []
        for i, s in enumerate(sorts):
            key = s
            if s not in cards_doc and tie and i in tie:
                key = "diagonal"
            if key not in cards_doc:
                raise TheoryError(f"piece does not constrain sort {s}")
            cards.append(_cardset(cards_doc[key], oracles))
        pieces.append(Piece(tuple(cards), tie, parse_tag(pd.get("tag")), bool(pd.get("trivial_model", False))))
    label = name or doc["name"] + "".join(f"_{v}" for v in params)
    th = TheoryDef(
        name=label,
        signature=sig,
        spectrum=Spectrum(sorts, tuple(pieces)),
        oracle_deps=tuple(oracles),
        lemma=str(doc.get("lemma", "")),
        recipes=tuple(doc.get("recipes", ("generic",))),
        expected=tuple(sorted(doc.get("expected", {}).items())),
        oracles=tuple(oracles.values()),
        min_bound=int(doc.get("min_bound", 0)),
    )
    return th


def catalog_dir():
    return resources.files("tcw") / "catalog"


def catalog_names():
    return sorted(p.name[:-5] for p in catalog_dir().iterdir() if p.name.endswith(".json") and p.name != "index.json")


def _read_doc(name):
    p = catalog_dir() / f"{name}.json"
    if not p.is_file():
        return None
    return json.loads(p.read_text(encoding="utf-8"))


def catalog_lookup(name: str, params: Sequence[int] = ()):
    """Load a catalog theory by name, e.g. ``catalog_lookup('T_geq', [3])``."""
    for kind in OPERATORS:
        if name.startswith(kind + "_"):
            return apply_operator(kind, catalog_lookup(name[len(kind) + 1 :], params))
    doc = _read_doc(name)
    if doc is None:
        raise TheoryError(f"unknown theory {name!r}; known: {', '.join(catalog_names())}")
    return theory_from_dict(doc, params)


def resolve_theory(ref: str):
    """Resolve a command-line reference: a JSON file path, ``catalog/NAME``,
    or a bare catalog name whose trailing ``_<number>`` parts are parameters."""
    p = Path(ref)
    if p.suffix == ".json" and p.is_file():
        doc = json.loads(p.read_text(encoding="utf-8"))
        return theory_from_dict(doc, doc.get("default_params", []))
    if ref.startswith("catalog/"):
        ref = ref[len("catalog/") :]
    prefix = ""
    for kind in OPERATORS:
        if ref.startswith(kind + "_"):
            return apply_operator(kind, resolve_theory(ref[len(kind) + 1 :]))
    if _read_doc(ref) is not None:
        doc = _read_doc(ref)
        if doc.get("params"):
            return theory_from_dict(doc, doc.get("default_params", []))
        return theory_from_dict(doc)
    m = re.fullmatch(r"(.*?)((?:_\d+)+)", ref)
    if m and _read_doc(m.group(1)) is not None:
        params = [int(x) for x in m.group(2).split("_")[1:]]
        return catalog_lookup(m.group(1), params)
    raise TheoryError(f"cannot resolve theory {prefix}{ref!r}; known: {', '.join(catalog_names())}")


def catalog_index():
    """Instances checked by ``verify-catalog``."""
    doc = json.loads((catalog_dir() / "index.json").read_text(encoding="utf-8"))
    return list(doc["verify"])


# ---------------------------------------------------------------- operators


def apply_operator(kind: str, T: TheoryDef) -> TheoryDef:
    """add_sort: append an unconstrained sort; add_fn_id: add s as the
    identity; add_fn_or: add s with s(s(x)) = s(x) or s(s(x)) = x."""
    if kind == "add_sort":
        if len(T.sorts) != 1:
            raise TheoryError("add_sort needs a one-sorted theory")
        new = "s2" if "s2" not in T.sorts else T.sorts[0] + "_2"
        sig = Signature(T.sorts + (new,), T.signature.has_unary_fn)
        pieces = tuple(replace(p, cards=p.cards + (from_(1),)) for p in T.spectrum.pieces)
    elif kind in ("add_fn_id", "add_fn_or"):
        if T.signature.has_unary_fn:
            raise TheoryError(f"{kind} needs a theory over an empty signature")
        sig = Signature(T.sorts, True)
        tag = IDENTITY if kind == "add_fn_id" else ShapeTag("cycle_or", 1)
        pieces = tuple(replace(p, tag=tag) for p in T.spectrum.pieces)
    else:
        raise TheoryError(f"unknown operator {kind!r}; choose from {', '.join(OPERATORS)}")
    return TheoryDef(
        name=f"{kind}({T.name})",
        signature=sig,
        spectrum=Spectrum(sig.sorts, pieces),
        oracle_deps=T.oracle_deps,
        lemma=T.lemma,
        recipes=("generic",),
        derived_from=(kind, T),
        oracles=T.oracles,
    )
