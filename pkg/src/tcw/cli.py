"""The ``tcw`` command.

Exit codes: 0 positive verdict or success, 1 negative verdict (UNSAT,
Refuted, mismatch), 2 Unknown at the bound, 3 input error, 4 oracle
exhausted or work budget exceeded.
"""
from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .cardinality import fmt_tuples
from .errors import BudgetExceeded, OracleExhausted, TcwError, WitnessError
from .logic import Signature, flatten_unary, parse_formula, to_text, variables
from .minmod import is_sat, minmod, minmod_transfer_for
from .oracle import default_bound, oracle_minmod, oracle_sat
from .properties import PROPERTIES, check_property, property_profile
from .report import catalog_table, plot_profiles, profile_record, profile_text, structured_block, verdict_record
from .theories import OPERATORS, apply_operator, catalog_index, resolve_theory
from .witness import RECIPES, build_witness, validate_witness

EXIT_OK, EXIT_NEG, EXIT_UNKNOWN, EXIT_INPUT, EXIT_EXHAUSTED = 0, 1, 2, 3, 4


class InputError(TcwError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would read as "Unknown"
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def _sorts(text: Optional[str], T=None):
    if text is None:
        return None
    out = tuple(s.strip() for s in text.split(",") if s.strip())
    if not out:
        raise InputError("--sorts needs at least one sort")
    if T is not None:
        bad = [s for s in out if s not in T.sorts]
        if bad:
            raise InputError(f"unknown sort(s) {', '.join(bad)} for {T.name}; sorts are {', '.join(T.sorts)}")
    return out


def _theory(args):
    if not args.theory:
        raise InputError("--theory is required")
    return resolve_theory(args.theory)


def _formula(args, sig):
    if args.formula is None:
        raise InputError("--formula is required")
    return parse_formula(args.formula, sig)


def _exit_for(v):
    return {"+": EXIT_OK, "-": EXIT_NEG}.get(v.sign, EXIT_UNKNOWN)


class _Out:
    """Collects plain lines and the structured payload."""

    def __init__(self, json_like: bool):
        self.json_like = json_like
        self.payload = {}

    def line(self, text=""):
        print(text)

    def finish(self):
        if self.json_like:
            print(structured_block(self.payload))


# ---------------------------------------------------------------- commands


def cmd_parse(args, out: _Out):
    if args.theory:
        sig = resolve_theory(args.theory).signature
    else:
        sig = Signature(_sorts(args.sorts) or ("s1",), args.unary)
    phi = _formula(args, sig)
    vs = variables(phi)
    out.line(to_text(phi))
    out.line("signature: " + str(sig))
    out.line("variables: " + ", ".join(str(v) for v in vs))
    out.payload.update({"formula": to_text(phi), "signature": str(sig), "variables": [str(v) for v in vs]})
    if sig.has_unary_fn:
        fl = flatten_unary(phi, sig)
        out.line("flattened: " + to_text(fl.flat))
        out.payload["flattened"] = to_text(fl.flat)
    return EXIT_OK


def cmd_sat(args, out: _Out):
    T = _theory(args)
    phi = _formula(args, T.signature)
    if args.method == "oracle":
        bound = args.bound or default_bound(T)
        res = oracle_sat(T, phi, bound)
    else:
        bound = None
        res = is_sat(T, phi)
    text = {True: "SAT", False: "UNSAT", None: "UNKNOWN"}[res]
    out.line(text)
    out.payload.update({"theory": T.name, "formula": to_text(phi), "result": text, "method": args.method, "bound": bound})
    return {True: EXIT_OK, False: EXIT_NEG, None: EXIT_UNKNOWN}[res]


def cmd_minmod(args, out: _Out):
    T = _theory(args)
    S = _sorts(args.sorts, T)
    phi = _formula(args, T.signature)
    complete = True
    bound = None
    if args.method == "oracle":
        bound = args.bound or default_bound(T)
        mins, complete = oracle_minmod(T, phi, S, bound)
    elif args.method == "transfer":
        mins = minmod_transfer_for(T, phi, S)
    else:
        mins = minmod(T, S, phi)
    out.line(fmt_tuples(mins))
    if not complete:
        out.line(f"note: bound {bound} is not known to be large enough for this formula")
    out.payload.update(
        {
            "theory": T.name,
            "sorts": list(S or T.sorts),
            "formula": to_text(phi),
            "method": args.method,
            "bound": bound,
            "minmod": [list(t) for t in mins],
            "complete": complete,
        }
    )
    if not complete and not mins:
        return EXIT_UNKNOWN
    return EXIT_OK if mins else EXIT_NEG


def cmd_witness(args, out: _Out):
    T = _theory(args)
    S = _sorts(args.sorts, T)
    phi = _formula(args, T.signature)
    out.payload.update({"theory": T.name, "formula": to_text(phi), "recipe": args.recipe})
    try:
        wit = build_witness(T, phi, args.recipe, S)
    except WitnessError as e:
        out.line(f"no witness: {e}")
        out.payload["error"] = str(e)
        return EXIT_NEG
    out.line("witness: " + to_text(wit))
    out.payload["witness"] = to_text(wit)
    if not (args.validate or args.strong):
        return EXIT_OK
    bound = args.bound or default_bound(T)
    v = validate_witness(T, wit, phi, bound, strong=args.strong, S=S)
    mode = "strong" if args.strong else "plain"
    out.line(f"{mode} validation at bound {bound}: {v}")
    out.payload["validation"] = dict(verdict_record(v), mode=mode, bound=bound)
    return _exit_for(v)


def cmd_check(args, out: _Out):
    T = _theory(args)
    S = _sorts(args.sorts, T)
    prop = args.property.upper()
    if prop not in PROPERTIES:
        raise InputError(f"unknown property {args.property!r}; choose from {', '.join(PROPERTIES)}")
    v = check_property(T, prop, S, args.bound)
    out.line(f"{prop} {T.name}: {v}")
    out.payload.update({"theory": T.name, "property": prop, "sorts": list(S or T.sorts), "verdict": verdict_record(v)})
    return _exit_for(v)


def cmd_profile(args, out: _Out):
    T = _theory(args)
    P = property_profile(T, args.bound)
    out.line(profile_text(P))
    out.payload.update(profile_record(P))
    if args.figure:
        plot_profiles([P], args.figure, f"{T.name}, bound {P.bound}")
        out.line(f"figure: {args.figure}")
        out.payload["figure"] = args.figure
    return EXIT_NEG if P.violations else EXIT_OK


def cmd_operator(args, out: _Out):
    if args.kind not in OPERATORS:
        raise InputError(f"unknown operator {args.kind!r}; choose from {', '.join(OPERATORS)}")
    base = _theory(args)
    T = apply_operator(args.kind, base)
    out.line(T.describe())
    out.payload.update({"operator": args.kind, "base": base.name, "theory": T.name, "description": T.describe()})
    if args.formula is None:
        return EXIT_OK
    S = _sorts(args.sorts, T)
    phi = parse_formula(args.formula, T.signature)
    direct, via = minmod(T, S, phi), minmod_transfer_for(T, phi, S)
    out.line("minmod (direct):   " + fmt_tuples(direct))
    out.line("minmod (transfer): " + fmt_tuples(via))
    same = sorted(direct) == sorted(via)
    out.line("agree" if same else "DISAGREE")
    out.payload.update({"formula": to_text(phi), "direct": [list(t) for t in direct], "transfer": [list(t) for t in via], "agree": same})
    return EXIT_OK if same else EXIT_NEG


def verify_catalog(names: Optional[List[str]] = None, bound: Optional[int] = None):
    """Profiles of the catalog instances.  A theory's ``min_bound`` raises
    the bound when its expected row needs more room to show."""
    out = []
    for name in names or catalog_index():
        T = resolve_theory(name)
        b = max(bound or default_bound(T), T.min_bound)
        out.append(property_profile(T, b))
    return out


def cmd_verify_catalog(args, out: _Out):
    names = [n.strip() for n in args.theories.split(",")] if args.theories else None
    profiles = verify_catalog(names, args.bound)
    out.line(catalog_table(profiles))
    bad = [P.theory.name for P in profiles if P.mismatches() or P.violations]
    out.line("")
    out.line(f"{len(profiles) - len(bad)}/{len(profiles)} theories match" + (f"; failing: {', '.join(bad)}" if bad else ""))
    out.payload.update({"profiles": [profile_record(P) for P in profiles], "failing": bad})
    if args.figure:
        plot_profiles(profiles, args.figure, "catalog profiles")
        out.line(f"figure: {args.figure}")
        out.payload["figure"] = args.figure
    return EXIT_NEG if bad else EXIT_OK


# ---------------------------------------------------------------- wiring


def build_parser():
    p = _Parser(prog="tcw", description="Theory-combination workbench: minimal models, witnesses and property checks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, formula=True, sorts=True):
        sp.add_argument("--theory", help="catalog/NAME, a catalog name, or a JSON theory file")
        if formula:
            sp.add_argument("--formula", help='e.g. "x:s1 != s(x:s1)"')
        if sorts:
            sp.add_argument("--sorts", help="comma-separated sorts S, default all")
        sp.add_argument("--bound", type=int, help="enumeration bound (default 6, or 4 with s)")
        sp.add_argument("--json-like", action="store_true", help="append a machine-readable block")

    sp = sub.add_parser("parse", help="parse and echo a formula")
    common(sp)
    sp.add_argument("--unary", action="store_true", help="signature has the function symbol s")
    sp.set_defaults(fn=cmd_parse)

    sp = sub.add_parser("sat", help="satisfiability in a theory")
    common(sp, sorts=False)
    sp.add_argument("--method", choices=("generic", "oracle"), default="generic")
    sp.set_defaults(fn=cmd_sat)

    sp = sub.add_parser("minmod", help="minimal model cardinalities")
    common(sp)
    sp.add_argument("--method", choices=("generic", "transfer", "oracle"), default="generic")
    sp.set_defaults(fn=cmd_minmod)

    sp = sub.add_parser("witness", help="build and optionally validate a witness")
    common(sp)
    sp.add_argument("--recipe", choices=RECIPES, default="generic")
    sp.add_argument("--validate", action="store_true")
    sp.add_argument("--strong", action="store_true", help="strong validation (implies --validate)")
    sp.set_defaults(fn=cmd_witness)

    sp = sub.add_parser("check", help="check one property")
    common(sp, formula=False)
    sp.add_argument("--property", required=True, help=", ".join(PROPERTIES))
    sp.set_defaults(fn=cmd_check)

    sp = sub.add_parser("profile", help="all eight properties of a theory")
    common(sp, formula=False, sorts=False)
    sp.add_argument("--figure", help="write a heatmap to this file")
    sp.set_defaults(fn=cmd_profile)

    sp = sub.add_parser("operator", help="apply a theory operator")
    common(sp)
    sp.add_argument("--kind", required=True, help=", ".join(OPERATORS))
    sp.set_defaults(fn=cmd_operator)

    sp = sub.add_parser("verify-catalog", help="profile the catalog against expected rows")
    sp.add_argument("--bound", type=int, help="bound floor; a theory may ask for more")
    sp.add_argument("--theories", help="comma-separated subset of the catalog")
    sp.add_argument("--figure", help="write a heatmap to this file")
    sp.add_argument("--json-like", action="store_true", help="append a machine-readable block")
    sp.set_defaults(fn=cmd_verify_catalog)
    return p


def run_command(argv: Optional[List[str]] = None) -> int:
    out = _Out(False)
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "bound", None) is not None and args.bound < 1:
            raise InputError("--bound must be positive")
        out.json_like = args.json_like
        code = args.fn(args, out)
    except (OracleExhausted, BudgetExceeded) as e:
        print(f"exhausted: {e}", file=sys.stderr)
        out.payload["error"] = str(e)
        code = EXIT_EXHAUSTED
    except (TcwError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        out.payload["error"] = str(e)
        code = EXIT_INPUT
    out.payload["exit_code"] = code
    out.finish()
    return code


def main(argv: Optional[List[str]] = None):
    sys.exit(run_command(argv))


if __name__ == "__main__":
    main()
