"""Command-line front door: load files, dispatch to the engines, and emit
structured reports.

Reports go to stdout as canonical JSON (no timing, so reruns are
byte-identical); a one-line human summary with wall time goes to stderr.
Exit 0 means a verdict was computed (even a failing one), 1 means an
input problem, 2 means an internal theorem check was violated.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import files, reports
from .atypes import close, make_atype, quotient
from .errors import (ParseError, QuasivarError, ScopeError, SortError,
                     TheoremViolation, ValidationError)
from .gba import (as_gba, enumerate_ideals, enumerate_subgroups,
                  gba_nullstellensatz, ideal_radical, validate_gba)
from .geometry import (Scope, check_duality_instance, check_gcim,
                       check_nullstellensatz, coordinate_algebra,
                       is_geometrically_closed_hom, is_immersion,
                       morphism_witness_terms)
from .morley import (check_star_transfer, is_strict, morleyize_signature,
                     morleyize_theory, search_pec_gc_gap, star_expand,
                     star_prime_bijection)
from .radical import (Context, is_prime, is_radical, present, radical,
                      represent)
from .structures import enumerate_homs, make_hom, product
from .syntax import (classify_sentence, parse_atom, parse_sentence,
                     parse_term, print_sentence)


class _Parser(argparse.ArgumentParser):
    # input problems exit 1, not argparse's default 2
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _split(csv: str):
    return [p for p in (csv or "").split(",") if p]


def _load_class(args):
    paths = _split(args.klass)
    return [files.load_structure(p) for p in paths], paths


def _context(args, fallback_sig=None):
    K, paths = _load_class(args)
    sig = K[0].sig if K else fallback_sig
    return Context(K, args.size_bound, args.depth, signature=sig), paths


def _scope(args):
    return Scope(args.premise_bound, args.depth,
                 getattr(args, "max_vars", 2) or 2)


def _same_structure(A, B):
    return (A.sig == B.sig and A.carriers == B.carriers
            and A.functions == B.functions and A.relations == B.relations
            and A.constants == B.constants)


def _load_atype(args):
    pi = files.load_atype(args.atype)
    inputs = [args.atype]
    if getattr(args, "structure", None):
        A = files.load_structure(args.structure)
        if not _same_structure(A, pi.base):
            raise ValidationError("--structure differs from the a-type's "
                                  "base structure")
        inputs.append(args.structure)
    return pi, inputs


def _parse_map(text: str) -> dict:
    out = {}
    for piece in _split(text):
        if "=" not in piece:
            raise ParseError(f"map entry {piece!r} needs the form elem=image")
        k, v = piece.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _sig_ref(out_path: str, struct_path: str) -> str:
    sig_abs = files.sigfile_of_structure(struct_path)
    return os.path.relpath(sig_abs, os.path.dirname(os.path.abspath(out_path))
                           or ".")


# --- handlers; each returns (report, summary) ---

def _cmd_parse(args):
    sig = files.load_signature(args.sig)
    s = parse_sentence(args.sentence, sig)
    canon = print_sentence(s)
    if parse_sentence(canon, sig) != s:
        raise TheoremViolation("canonical sentence text did not round-trip")
    report = reports.make_report("parse", [args.sig], {}, {
        "sentence": args.sentence, "canonical": canon, "verdict": "parsed"})
    return report, f"parsed: {canon}"


def _cmd_classify(args):
    sig = files.load_signature(args.sig)
    s = parse_sentence(args.sentence, sig)
    tag = classify_sentence(s)
    report = reports.make_report("classify", [args.sig], {}, {
        "sentence": print_sentence(s), "verdict": tag})
    return report, f"classified: {tag}"


def _cmd_eval(args):
    A = files.load_structure(args.structure)
    s = parse_sentence(args.sentence, A.sig, params=A.param_sorts())
    holds = A.satisfies(s)
    report = reports.make_report("eval", [args.structure], {}, {
        "structure": A.name, "sentence": print_sentence(s),
        "verdict": bool(holds)})
    return report, f"{A.name} {'satisfies' if holds else 'fails'} the sentence"


def _cmd_homs(args):
    S = files.load_structure(args.source)
    T = files.load_structure(args.target)
    hs = enumerate_homs(S, T, mode=args.mode)
    report = reports.make_report("homs", [args.source, args.target], {}, {
        "mode": args.mode, "n": len(hs), "maps": [h.as_dict() for h in hs],
        "verdict": "enumerated"})
    return report, f"{len(hs)} {args.mode}s from {S.name} to {T.name}"


def _cmd_product(args):
    paths = _split(args.structures)
    if not paths:
        raise ValidationError("--structures needs at least one file")
    factors = [files.load_structure(p) for p in paths]
    P = product(factors, name=args.name)
    files.save_structure(P, args.out, _sig_ref(args.out, paths[0]))
    report = reports.make_report("product", paths, {}, {
        "structure": P, "written": args.out,
        "digest": reports.file_digest(args.out), "verdict": "written"})
    return report, f"wrote {args.out} ({P.name}, {sum(len(c) for c in P.carriers.values())} elements)"


def _cmd_quotient(args):
    pi, inputs = _load_atype(args)
    qr = quotient(pi)
    body = {"structure": qr.quotient, "projection": qr.projection,
            "class_map": qr.class_map, "verdict": "computed"}
    if args.out:
        ref = _sig_ref(args.out, files.structfile_of_atype(args.atype))
        files.save_structure(qr.quotient, args.out, ref)
        body["written"] = args.out
        body["digest"] = reports.file_digest(args.out)
    report = reports.make_report("quotient", inputs, {}, body)
    return report, f"quotient has {sum(len(c) for c in qr.quotient.carriers.values())} elements"


def _cmd_close(args):
    pi, inputs = _load_atype(args)
    c = close(pi)
    report = reports.make_report("close", inputs, {}, {
        "closed": c, "verdict": "closed"})
    n = reports.closed_view(c)["n_classes"]
    return report, f"closure has {n} classes"


def _cmd_radical(args):
    pi, inputs = _load_atype(args)
    ctx, kpaths = _context(args, fallback_sig=pi.base.sig)
    r = radical(pi, ctx, embeddings_only=args.embeddings_only)
    scope = {"size_bound": ctx.size_bound, "depth": ctx.depth}
    report = reports.make_report("radical", inputs + kpaths, scope, {
        "radical": r.radical, "exactness": r.exactness,
        "degenerate": r.degenerate, "n_primes": len(r.primes_used),
        "verdict": "computed"})
    return report, (f"radical from {len(r.primes_used)} primes "
                    f"({r.exactness}{', degenerate' if r.degenerate else ''})")


def _decision_cmd(name, engine):
    def handler(args):
        pi, inputs = _load_atype(args)
        ctx, kpaths = _context(args, fallback_sig=pi.base.sig)
        d = engine(pi, ctx)
        scope = {"size_bound": ctx.size_bound, "depth": ctx.depth}
        report = reports.make_report(name, inputs + kpaths, scope, {
            "verdict": d.value, "status": d.status, "detail": d.detail,
            "witness": d.witness})
        return report, f"{name.replace('-', ' ')}: {d.value} ({d.status})"
    return handler


def _cmd_represent(args):
    A = files.load_structure(args.structure)
    ctx, kpaths = _context(args, fallback_sig=A.sig)
    body = represent(A, ctx)
    body["verdict"] = bool(body["embedding"] and body["subdirect"])
    scope = {"size_bound": ctx.size_bound, "depth": ctx.depth}
    report = reports.make_report("represent", [args.structure] + kpaths,
                                 scope, body)
    return report, (f"subdirect representation "
                    f"{'holds' if body['verdict'] else 'fails'} "
                    f"({body['n_primes']} primes)")


def _cmd_present(args):
    sig = files.load_signature(args.sig)
    variables = files._parse_vars(args.vars, sig) if args.vars else ()
    atoms = [parse_atom(a, sig, variables=variables) for a in args.atom or []]
    ctx, kpaths = _context(args, fallback_sig=sig)
    body = present(variables, atoms, ctx)
    body["verdict"] = body["status"]
    scope = {"size_bound": ctx.size_bound, "depth": ctx.depth}
    report = reports.make_report("present", [args.sig] + kpaths, scope, body)
    return report, f"presentation status: {body['status']}"


def _cmd_points(args):
    V = files.load_variety(args.variety)
    report = reports.make_report("points", [args.variety], {}, {
        "variety": V.name,
        "variables": [f"{v.name}:{v.sort}" for v in V.variables],
        "n_points": len(V.points), "points": [list(p) for p in V.points],
        "verdict": "enumerated"})
    return report, f"{len(V.points)} rational points"


def _cmd_nullstellensatz(args):
    pi, inputs = _load_atype(args)
    ctx, kpaths = _context(args, fallback_sig=pi.base.sig)
    body = check_nullstellensatz(pi, ctx)
    report = reports.make_report("nullstellensatz", inputs + kpaths,
                                 body.get("scope", {}), body)
    return report, f"nullstellensatz: {body['verdict']}"


def _hom_check_cmd(name, engine):
    def handler(args):
        S = files.load_structure(args.source)
        T = files.load_structure(args.target)
        f = make_hom(S, T, _parse_map(args.map))
        body = engine(f, _scope(args))
        report = reports.make_report(name, [args.source, args.target],
                                     body.get("scope", {}), body)
        return report, f"{name}: {body['verdict']}"
    return handler


def _cmd_witness_terms(args):
    ctx, kpaths = _context(args)
    m = files.load_morphism(args.morphism, ctx)
    body = morphism_witness_terms(m, ctx, depth=args.term_depth
                                  if args.term_depth is not None
                                  else ctx.depth)
    body["verdict"] = "found" if body.get("found") else "not-found"
    scope = {"size_bound": ctx.size_bound, "depth": ctx.depth}
    report = reports.make_report("witness-terms", [args.morphism] + kpaths,
                                 scope, body)
    return report, f"witness terms: {body['verdict']}"


def _cmd_coordinate_algebra(args):
    V = files.load_variety(args.variety)
    ctx, kpaths = _context(args, fallback_sig=V.ambient.sig)
    body = coordinate_algebra(V, ctx)
    body["verdict"] = body["status"]
    scope = {"size_bound": ctx.size_bound, "depth": ctx.depth}
    report = reports.make_report("coordinate-algebra",
                                 [args.variety] + kpaths, scope, body)
    return report, f"coordinate algebra status: {body['status']}"


def _cmd_duality_check(args):
    A = files.load_structure(args.structure)
    ctx, kpaths = _context(args, fallback_sig=A.sig)
    sample_paths = _split(args.samples)
    samples = [files.load_atype(p) for p in sample_paths]
    for p, s in zip(sample_paths, samples):
        if not _same_structure(s.base, A):
            raise ValidationError(f"sample {p} is not over --structure")
    body = check_duality_instance(A, ctx, samples)
    scope = {"size_bound": ctx.size_bound, "depth": ctx.depth}
    report = reports.make_report("duality-check",
                                 [args.structure] + sample_paths + kpaths,
                                 scope, body)
    return report, f"duality: {body['verdict']}"


def _cmd_morleyize(args):
    given = [x for x in (args.sig, args.theory, args.structure) if x]
    if len(given) != 1:
        raise ValidationError("give exactly one of --sig, --theory, "
                              "--structure")
    src = given[0]
    out_dir = args.out_dir or os.path.dirname(os.path.abspath(src))
    stem = os.path.splitext(os.path.basename(src))[0]
    written = []

    def emit(path):
        written.append({"file": path, "digest": reports.file_digest(path)})

    sig_out = os.path.join(out_dir, f"{stem}-star.sig")
    if args.sig:
        star = morleyize_signature(files.load_signature(args.sig))
        files.save_signature(star.sig, sig_out)
        emit(sig_out)
    elif args.structure:
        A = files.load_structure(args.structure)
        star = morleyize_signature(A.sig)
        files.save_signature(star.sig, sig_out)
        emit(sig_out)
        struct_out = os.path.join(out_dir, f"{stem}-star.struct")
        files.save_structure(star_expand(A, star), struct_out,
                             f"{stem}-star.sig")
        emit(struct_out)
    else:
        T = files.load_theory(args.theory)
        st = morleyize_theory(T)
        files.save_signature(st.star.sig, sig_out)
        emit(sig_out)
        thy_out = os.path.join(out_dir, f"{stem}-star.thy")
        files.save_theory(st.theory, thy_out, f"{stem}-star.sig")
        emit(thy_out)
    report = reports.make_report("morleyize", [src], {}, {
        "written": written, "verdict": "emitted"})
    return report, "emitted " + ", ".join(w["file"] for w in written)


def _cmd_strict(args):
    if args.theory:
        subject = files.load_theory(args.theory)
        inputs = [args.theory]
        scope = {}
        ctx = None
    elif args.klass:
        if args.size_bound is None or args.depth is None:
            raise ValidationError("--size-bound and --depth are required "
                                  "with --class")
        ctx, kpaths = _context(args)
        subject = ctx
        inputs = kpaths
        scope = {"size_bound": ctx.size_bound, "depth": ctx.depth}
    else:
        raise ValidationError("give --theory or --class")
    body = is_strict(subject)
    body["verdict"] = bool(body["strict"])
    report = reports.make_report("strict", inputs, scope, body)
    return report, f"strict: {body['verdict']}"


def _cmd_star_transfer(args):
    A = files.load_structure(args.structure)
    ctx, kpaths = _context(args, fallback_sig=A.sig)
    scope = _scope(args) if args.premise_bound is not None else None
    body = check_star_transfer(A, ctx, scope)
    rep_scope = {"size_bound": ctx.size_bound, "depth": ctx.depth}
    if scope is not None:
        rep_scope["premise_bound"] = scope.max_premise
    report = reports.make_report("star-transfer", [args.structure] + kpaths,
                                 rep_scope, body)
    return report, f"star transfer: {body['verdict']}"


def _cmd_star_bijection(args):
    pi, inputs = _load_atype(args)
    ctx, kpaths = _context(args, fallback_sig=pi.base.sig)
    body = star_prime_bijection(pi, ctx, depth=args.star_depth)
    scope = {"size_bound": ctx.size_bound, "depth": ctx.depth}
    report = reports.make_report("star-bijection", inputs + kpaths, scope,
                                 body)
    return report, (f"star bijection: {body['verdict']} "
                    f"({body['n_strongly_prime']} primes)")


def _cmd_gba_validate(args):
    A = files.load_structure(args.structure)
    body = validate_gba(A, args.star, args.inv, args.unit)
    body["verdict"] = bool(body["valid"])
    report = reports.make_report("gba-validate", [args.structure], {}, body)
    return report, f"group-based algebra: {body['verdict']}"


def _cmd_gba_ideals(args):
    A = files.load_structure(args.structure)
    G = as_gba(A, args.star, args.inv, args.unit)
    ideals = enumerate_ideals(G)
    body = {"n_subgroups": len(enumerate_subgroups(G)),
            "n_ideals": len(ideals),
            "ideals": [sorted(i) for i in ideals],
            "verdict": "enumerated"}
    report = reports.make_report("gba-ideals", [args.structure], {}, body)
    return report, f"{len(ideals)} ideals"


def _cmd_gba_radical(args):
    A = files.load_structure(args.structure)
    G = as_gba(A, args.star, args.inv, args.unit)
    ctx, kpaths = _context(args, fallback_sig=A.sig)
    body = ideal_radical(set(_split(args.ideal)) or {G.e}, G, ctx)
    scope = {"size_bound": ctx.size_bound, "depth": ctx.depth}
    report = reports.make_report("gba-radical", [args.structure] + kpaths,
                                 scope, body)
    return report, (f"radical {body['radical']} from "
                    f"{len(body['primes'])} primes")


def _cmd_gba_nullstellensatz(args):
    A = files.load_structure(args.structure)
    G = as_gba(A, args.star, args.inv, args.unit)
    variables = files._parse_vars(args.vars, A.sig) if args.vars else None
    gens = [parse_term(g, A.sig, variables=variables or (),
                       params=A.param_sorts()) for g in args.gen or []]
    ctx, kpaths = _context(args, fallback_sig=A.sig)
    body = gba_nullstellensatz(gens, G, ctx, variables=variables)
    report = reports.make_report("gba-nullstellensatz",
                                 [args.structure] + kpaths,
                                 body.get("scope", {}), body)
    return report, f"nullstellensatz (ideal form): {body['verdict']}"


def _cmd_star_search(args):
    paths = _split(args.candidates)
    candidates = [files.load_structure(p) for p in paths]
    ctx, kpaths = _context(args)
    body = search_pec_gc_gap(candidates, ctx, _scope(args))
    scope = {"size_bound": ctx.size_bound, "depth": ctx.depth,
             "premise_bound": args.premise_bound}
    report = reports.make_report("star-search", paths + kpaths, scope, body)
    return report, f"search: {body['verdict']} (settles nothing either way)"


# --- parser assembly ---

def _add_class(p, required=False):
    p.add_argument("--class", dest="klass", default="", required=required,
                   help="comma-separated structure files for K")
    p.add_argument("--size-bound", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)


def _add_gba_names(p):
    p.add_argument("--star", default=None)
    p.add_argument("--inv", default=None)
    p.add_argument("--unit", default=None)


def build_parser() -> _Parser:
    parser = _Parser(prog="quasivar")
    parser.add_argument("--jobs", type=int, default=None,
                        help="engine parallelism (output independent of N)")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("parse")
    p.add_argument("--sig", required=True)
    p.add_argument("--sentence", required=True)
    p.set_defaults(handler=_cmd_parse)

    p = sub.add_parser("classify")
    p.add_argument("--sig", required=True)
    p.add_argument("--sentence", required=True)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("eval")
    p.add_argument("--structure", required=True)
    p.add_argument("--sentence", required=True)
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("homs")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--mode", choices=["hom", "embedding"], default="hom")
    p.set_defaults(handler=_cmd_homs)

    p = sub.add_parser("product")
    p.add_argument("--structures", required=True)
    p.add_argument("--name", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=_cmd_product)

    p = sub.add_parser("quotient")
    p.add_argument("--atype", required=True)
    p.add_argument("--structure", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_quotient)

    p = sub.add_parser("close")
    p.add_argument("--atype", required=True)
    p.add_argument("--structure", default=None)
    p.set_defaults(handler=_cmd_close)

    p = sub.add_parser("radical")
    p.add_argument("--atype", required=True)
    p.add_argument("--structure", default=None)
    p.add_argument("--embeddings-only", action="store_true")
    _add_class(p)
    p.set_defaults(handler=_cmd_radical)

    for name, engine in [("is-prime", is_prime), ("is-radical", is_radical)]:
        p = sub.add_parser(name)
        p.add_argument("--atype", required=True)
        p.add_argument("--structure", default=None)
        _add_class(p)
        p.set_defaults(handler=_decision_cmd(name, engine))

    p = sub.add_parser("represent")
    p.add_argument("--structure", required=True)
    _add_class(p)
    p.set_defaults(handler=_cmd_represent)

    p = sub.add_parser("present")
    p.add_argument("--sig", required=True)
    p.add_argument("--vars", default="")
    p.add_argument("--atom", action="append", default=[])
    _add_class(p)
    p.set_defaults(handler=_cmd_present)

    p = sub.add_parser("points")
    p.add_argument("--variety", required=True)
    p.set_defaults(handler=_cmd_points)

    p = sub.add_parser("nullstellensatz")
    p.add_argument("--atype", required=True)
    p.add_argument("--structure", default=None)
    _add_class(p)
    p.set_defaults(handler=_cmd_nullstellensatz)

    for name, engine in [("gc-check", is_geometrically_closed_hom),
                         ("immersion-check", is_immersion),
                         ("gcim-check", check_gcim)]:
        p = sub.add_parser(name)
        p.add_argument("--source", required=True)
        p.add_argument("--target", required=True)
        p.add_argument("--map", required=True,
                       help="comma-separated elem=image pairs")
        p.add_argument("--premise-bound", type=int, required=True)
        p.add_argument("--depth", type=int, required=True)
        p.add_argument("--max-vars", type=int, default=2)
        p.set_defaults(handler=_hom_check_cmd(name, engine))

    p = sub.add_parser("witness-terms")
    p.add_argument("--morphism", required=True)
    p.add_argument("--term-depth", type=int, default=None)
    _add_class(p, required=True)
    p.set_defaults(handler=_cmd_witness_terms)

    p = sub.add_parser("coordinate-algebra")
    p.add_argument("--variety", required=True)
    _add_class(p)
    p.set_defaults(handler=_cmd_coordinate_algebra)

    p = sub.add_parser("duality-check")
    p.add_argument("--structure", required=True)
    p.add_argument("--samples", required=True,
                   help="comma-separated a-type files over --structure")
    _add_class(p)
    p.set_defaults(handler=_cmd_duality_check)

    p = sub.add_parser("morleyize")
    p.add_argument("--sig", default=None)
    p.add_argument("--theory", default=None)
    p.add_argument("--structure", default=None)
    p.add_argument("--out-dir", default=None)
    p.set_defaults(handler=_cmd_morleyize)

    p = sub.add_parser("strict")
    p.add_argument("--theory", default=None)
    p.add_argument("--class", dest="klass", default="")
    p.add_argument("--size-bound", type=int, default=None)
    p.add_argument("--depth", type=int, default=None)
    p.set_defaults(handler=_cmd_strict)

    p = sub.add_parser("star-transfer")
    p.add_argument("--structure", required=True)
    p.add_argument("--premise-bound", type=int, default=None)
    p.add_argument("--max-vars", type=int, default=2)
    _add_class(p, required=True)
    p.set_defaults(handler=_cmd_star_transfer)

    p = sub.add_parser("star-bijection")
    p.add_argument("--atype", required=True)
    p.add_argument("--structure", default=None)
    p.add_argument("--star-depth", type=int, default=None)
    _add_class(p, required=True)
    p.set_defaults(handler=_cmd_star_bijection)

    p = sub.add_parser("gba-validate")
    p.add_argument("--structure", required=True)
    _add_gba_names(p)
    p.set_defaults(handler=_cmd_gba_validate)

    p = sub.add_parser("gba-ideals")
    p.add_argument("--structure", required=True)
    _add_gba_names(p)
    p.set_defaults(handler=_cmd_gba_ideals)

    p = sub.add_parser("gba-radical")
    p.add_argument("--structure", required=True)
    p.add_argument("--ideal", required=True,
                   help="comma-separated elements")
    _add_gba_names(p)
    _add_class(p)
    p.set_defaults(handler=_cmd_gba_radical)

    p = sub.add_parser("gba-nullstellensatz")
    p.add_argument("--structure", required=True)
    p.add_argument("--gen", action="append", default=[],
                   help="generator term, repeatable")
    p.add_argument("--vars", default="")
    _add_gba_names(p)
    _add_class(p)
    p.set_defaults(handler=_cmd_gba_nullstellensatz)

    p = sub.add_parser("star-search")
    p.add_argument("--candidates", required=True,
                   help="comma-separated structure files to search")
    p.add_argument("--premise-bound", type=int, required=True)
    p.add_argument("--max-vars", type=int, default=2)
    _add_class(p, required=True)
    p.set_defaults(handler=_cmd_star_search)

    return parser


def _resolve_jobs(args) -> int:
    raw = args.jobs if args.jobs is not None else os.environ.get(
        "QUASIVAR_JOBS", "1")
    try:
        jobs = int(raw)
    except (TypeError, ValueError):
        raise ValidationError(f"--jobs must be an integer, got {raw!r}")
    if jobs < 1:
        raise ValidationError("--jobs must be at least 1")
    return jobs


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.monotonic()
    try:
        _resolve_jobs(args)
        report, summary = args.handler(args)
    except TheoremViolation as exc:
        sys.stderr.write(f"theorem violation: {exc}\n")
        return 2
    except (ParseError, SortError, ValidationError, ScopeError,
            QuasivarError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    sys.stdout.write(reports.render_report(report))
    dt = time.monotonic() - t0
    sys.stderr.write(f"{summary} [{dt:.3f}s]\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
