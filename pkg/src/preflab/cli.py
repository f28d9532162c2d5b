"""Command-line front end.

Every subcommand prints one JSON report (or writes it with ``--out``) and
exits 0 when all expected claims matched, 1 on a mismatch and 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Optional

from . import __version__, suites
from .conditions.booth import BoothPair
from .conditions.choice import ChoiceFunction, ConditionId
from .conditions.engine import check
from .errors import InputError, RepresentationRejected
from .gallery import SearchExhausted, gallery
from .instances import instance_to_json, load_instance, payload_to_json, save_instance
from .logic import Language, parse_formula, theory_from
from .represent import ConstructionFailed, represent, represent_booth, represent_nondp, verify_representation
from .represent.booth import oracle_agreement, preorder_violation
from .structures import BoothStructure, PrefStructure, RankedStructure, consequence, lam, mu, segment_points
from .universe import DomainFamily, fmt

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def jsonable(v):
    """Sets become sorted arrays; tuples become arrays; everything else passes through."""
    if isinstance(v, (set, frozenset)):
        items = list(v)
        if all(isinstance(x, str) for x in items):
            return fmt(v)
        return sorted((jsonable(x) for x in items), key=lambda x: json.dumps(x, sort_keys=True))
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    return v


def emit(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def parse_report(text: str) -> dict:
    return json.loads(text)


def _conditions(text: Optional[str]) -> list:
    if not text:
        return []
    return [str(ConditionId.parse(c)) for c in text.split(",") if c.strip()]


def _claims(inst, subject, family, opts) -> list:
    rows = []
    for cond, want in inst.expected:
        v = check(cond, subject, family, **opts)
        rows.append({"claim": str(cond), "expected": want, "actual": v.holds, "ok": v.holds == want})
    return rows


def _choice_of(inst, use_hat=False) -> ChoiceFunction:
    p, fam = inst.payload, inst.family
    if isinstance(p, ChoiceFunction):
        if use_hat:
            raise InputError("--hat applies to structure payloads; a choice function is taken as given")
        return p
    if isinstance(p, (PrefStructure, RankedStructure)):
        if use_hat:
            from .universe import hat
            return ChoiceFunction(fam, {X: hat(fam, mu(p, X)) for X in fam.members}, validate=False)
        return ChoiceFunction.from_structure(p, fam)
    raise InputError(f"cannot read a choice function off a {inst.payload_kind} payload")


# subcommands; each returns (items, claims, extra) where claims decide the exit code


def cmd_check(a):
    inst = load_instance(a.instance)
    opts = {"variant": a.variant, "scope": a.scope}
    conds = _conditions(a.conditions) or [str(c) for c, _ in inst.expected]
    if not conds:
        raise InputError("no conditions given and the instance lists no expected claims")
    items = [check(c, inst.payload, inst.family, **opts).to_dict() for c in conds]
    return items, _claims(inst, inst.payload, inst.family, opts), {}


def cmd_represent(a):
    inst = load_instance(a.instance)
    cf = _choice_of(inst, use_hat=a.hat and inst.payload_kind != "choice_function")
    item = {"flavor": a.flavor, "pipeline": "hat" if a.hat else "exact"}
    try:
        if a.hat:
            structure, rep = represent_nondp(cf, a.flavor)
        else:
            structure = represent(cf, a.flavor)
            rep = verify_representation(structure, cf, "exact")
        item.update(outcome="represented", structure=payload_to_json(structure), verification=rep.to_dict())
        claims = [{"claim": "verification", "expected": True, "actual": rep.ok, "ok": rep.ok}]
    except RepresentationRejected as e:
        item.update(outcome="rejected", verdict=e.verdict.to_dict())
        claims = [{"claim": "representable", "expected": True, "actual": False, "ok": False}]
    except ConstructionFailed as e:
        item.update(outcome="construction_failed", detail=str(e))
        claims = [{"claim": "construction", "expected": True, "actual": False, "ok": False}]
    return [item], claims + _claims(inst, inst.payload, inst.family, {}), {}


def _language(universe, variables: Optional[str]) -> Language:
    names = list(universe.points)
    vs = [v.strip() for v in variables.split(",")] if variables else None
    lang = Language.from_model_names(names, vs)
    if set(lang.model_names) != set(names):
        raise InputError("the universe is not the model space of a language (names like TF, FT, ...)")
    return lang


def cmd_booth(a):
    inst = load_instance(a.instance)
    if not isinstance(inst.payload, BoothStructure):
        raise InputError("booth needs a booth payload")
    lang = _language(inst.universe, a.variables)
    bp = BoothPair.from_structure(inst.payload, DomainFamily.power(lang.universe))
    item = {"variables": list(lang.variables)}
    try:
        structure, state, rep = represent_booth(bp, lang)
    except RepresentationRejected as e:
        item.update(outcome="rejected", verdict=e.verdict.to_dict())
        return [item], [{"claim": "representable", "expected": True, "actual": False, "ok": False}], {}
    agree = oracle_agreement(state, bp)
    bad_order = preorder_violation(state, bp)
    transcripts_ok = all(t.invariants_hold for t in state.transcripts)
    item.update(outcome="represented", structure=payload_to_json(structure), verification=rep.to_dict(),
                oracle=jsonable(agree), preorder_violation=jsonable(bad_order),
                transcripts=len(state.transcripts), transcript_invariants=transcripts_ok)
    claims = [
        {"claim": "round trip", "expected": True, "actual": rep.ok, "ok": rep.ok},
        {"claim": "oracle agreement", "expected": True, "actual": agree["agree"], "ok": agree["agree"]},
        {"claim": "order respects selections", "expected": True, "actual": bad_order is None,
         "ok": bad_order is None},
        {"claim": "transcript invariants", "expected": True, "actual": transcripts_ok, "ok": transcripts_ok},
    ]
    return [item], claims + _claims(inst, inst.payload, inst.family, {}), {}


def _params(pairs) -> dict:
    out = {}
    for p in pairs or []:
        k, sep, v = p.partition("=")
        if not sep or not k:
            raise InputError(f"--param expects key=value, got {p!r}")
        out[k.strip()] = v.strip()
    return out


def cmd_gallery(a):
    try:
        inst = gallery(a.name, _params(a.param))
    except SearchExhausted as e:
        item = {"name": a.name, "outcome": "exhausted", "search": jsonable(e.report)}
        return [item], [{"claim": "instance found", "expected": True, "actual": False, "ok": False}], {}
    rows = inst.verify()
    claims = [{k: jsonable(r[k]) for k in ("claim", "expected", "actual", "ok")} for r in rows]
    item = {"name": inst.name, "params": jsonable(inst.params), "options": inst.options,
            "instance": instance_to_json(inst.data())}
    if inst.search is not None:
        item["search"] = jsonable(inst.search)
    if a.out:
        save_instance(inst.data(), a.out)
    return [item], claims, {}


def cmd_sweep(a):
    laws = suites.select(names=a.law, suites=a.suite, conditions=_conditions(a.conditions) or None)
    if not laws:
        raise InputError("no law matches the given filters")
    rep = suites.run(laws, max_points=a.max_points, max_family=a.max_family,
                     max_functions=a.max_functions, copy_sample=a.copy_sample, choice_points=a.choice_points)
    d = rep.to_dict(timing=False)
    claims = [{"claim": r.law.name, "expected": True, "actual": r.ok, "ok": r.ok} for r in rep.results]
    return d["laws"], claims, {"sources": d["sources"]}


def _mise_rows(structure, X):
    return sorted((fmt(segment_points(structure, seg)) for seg in lam(structure, X)), key=lambda s: (len(s), s))


def cmd_limit(a):
    inst = load_instance(a.instance)
    s = inst.payload
    if not isinstance(s, (PrefStructure, RankedStructure)):
        raise InputError("limit needs a pref_structure or ranked payload")
    lang = _language(inst.universe, a.variables)
    parts = [t for t in (a.theory or "").split(";") if t.strip()]
    T = theory_from([parse_formula(t) for t in parts], lang)
    phi = parse_formula(a.formula)
    MT = T.models
    item = {
        "theory": parts, "formula": a.formula, "variables": list(lang.variables),
        "models": fmt(MT), "minimal_models": fmt(mu(s, MT)), "segments": _mise_rows(s, MT),
        "minimal": consequence(s, T, phi, "minimal", lang),
        "limit": consequence(s, T, phi, "limit", lang),
    }
    return [item], _claims(inst, inst.payload, inst.family, {"variant": "limit"}), {}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="preflab", description="Check, represent and sweep preferential choice functions.")
    p.add_argument("--version", action="version", version=f"preflab {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        if name == "gallery":
            sp.add_argument("--out", help="save the instance file here (the report goes to stdout)")
        else:
            sp.add_argument("--out", help="write the JSON report here instead of stdout")
        sp.set_defaults(fn=fn)
        return sp

    sp = add("check", cmd_check, "evaluate conditions on an instance")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--conditions", help="comma-separated ids, e.g. MU_CUM,MU_CUM_ALPHA:1")
    sp.add_argument("--variant", choices=("minimal", "limit"), default="minimal")
    sp.add_argument("--scope", choices=("formulas", "theories"), default="theories")

    sp = add("represent", cmd_represent, "build and verify a representing structure")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--flavor", required=True, choices=("general", "smooth", "smooth_transitive", "ranked"))
    sp.add_argument("--hat", action="store_true", help="represent up to hat via the derived selections")

    sp = add("booth", cmd_booth, "reconstruct a Booth structure from its (mu+, mu-) pair")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--variables", help="comma-separated variable names (default p1,p2,...)")

    sp = add("gallery", cmd_gallery, "build a named counterexample and re-verify its claims")
    sp.add_argument("--name", required=True)
    sp.add_argument("--param", action="append", metavar="K=V")

    sp = add("sweep", cmd_sweep, "run the invariant suites over exhaustive small instances")
    sp.add_argument("--max-points", type=int, default=3)
    sp.add_argument("--max-family", type=int, default=8)
    sp.add_argument("--conditions", help="only laws that involve these condition ids")
    sp.add_argument("--suite", action="append", help="restrict to a suite (repeatable)")
    sp.add_argument("--law", action="append", help="restrict to a law by name (repeatable)")
    sp.add_argument("--max-functions", type=int, default=suites.MAX_FUNCTIONS_PER_FAMILY)
    sp.add_argument("--copy-sample", type=int, default=200)
    sp.add_argument("--choice-points", type=int, default=3, help="largest universe for enumerated choice functions")

    sp = add("limit", cmd_limit, "minimal and limit consequence side by side")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--theory", default="", help="formulas separated by ';' (empty: no premises)")
    sp.add_argument("--formula", required=True)
    sp.add_argument("--variables", help="comma-separated variable names (default p1,p2,...)")
    return p


def run(argv) -> tuple:
    """(exit code, report dict). Input errors give exit 2 and a report with ``error`` set."""
    argv = list(argv)
    t0 = time.perf_counter()
    try:
        a = build_parser().parse_args(argv)
        if getattr(a, "fn", None) is None:
            raise InputError("missing subcommand")
        if a.command == "sweep" and not 1 <= a.max_points <= 4:
            raise InputError("--max-points must lie in 1..4")
        items, claims, extra = a.fn(a)
    except InputError as e:
        return EXIT_INPUT, {"command": argv, "error": str(e), "ok": False, "exit": EXIT_INPUT}
    ok = all(c["ok"] for c in claims)
    code = EXIT_OK if ok else EXIT_MISMATCH
    report = {"command": argv, "items": jsonable(items), "claims": claims, **extra, "ok": ok, "exit": code,
              "timing": {"seconds": round(time.perf_counter() - t0, 3)}}
    return code, report


def _out_path(argv):
    for i, x in enumerate(argv):
        if x == "--out" and i + 1 < len(argv):
            return argv[i + 1]
        if x.startswith("--out="):
            return x.split("=", 1)[1]
    return None


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    if any(x in ("-h", "--help", "--version") for x in argv):
        try:
            build_parser().parse_args(argv)
        except InputError as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_INPUT
        except SystemExit as e:
            return e.code or EXIT_OK
        return EXIT_OK
    code, report = run(argv)
    if code == EXIT_INPUT:
        print(f"error: {report['error']}", file=sys.stderr)
    text = emit(report)
    out = _out_path(argv)
    if out and code != EXIT_INPUT and argv[0] != "gallery":
        try:
            Path(out).write_text(text)
        except OSError as e:
            print(f"error: cannot write {out}: {e.strerror}", file=sys.stderr)
            return EXIT_INPUT
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
