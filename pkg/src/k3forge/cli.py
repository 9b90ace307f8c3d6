"""Command-line interface.

Exit codes: 0 success / all pass, 1 computation failure, 2 verification
mismatch, 64 usage error, 65 malformed input file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import corpus, fibration, ns, repro
from .niemeier import niemeier as build_niemeier, verify_catalog
from .lattice import (
    EmbeddingMatrix,
    Lattice,
    balanced_mod2,
    discriminant_form,
    is_primitive,
    orthogonal_complement,
    overlattices,
    root_type,
)
from .weierstrass import WeierstrassCurve, fiber_configuration, height


def _out(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=1, default=str))
    else:
        print(text)


def _load_gram(arg: str):
    try:
        data = json.loads(arg)
        return [list(map(int, row)) for row in data]
    except Exception as exc:
        raise SystemExit(_usage_error(f"cannot parse Gram matrix: {exc}"))


def _usage_error(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    sys.exit(64)


def _load_json_file(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except Exception as exc:
        print(f"error: malformed input file {path}: {exc}", file=sys.stderr)
        sys.exit(65)


def _fq_payload(fq) -> dict:
    from .lattice import _unit_elements

    gens = _unit_elements(fq.orders)
    return {
        "orders": list(fq.orders),
        "q": [str(balanced_mod2(fq.q(g))) for g in gens],
        "b": [[str(fq.b(g, h)) for h in gens] for g in gens],
    }


def cmd_lattice(args) -> int:
    lat = Lattice(_load_gram(args.gram))
    if args.action == "discform":
        fq = discriminant_form(lat)
        payload = _fq_payload(fq)
        _out(args, payload, json.dumps(payload))
        return 0
    if args.action == "roots":
        rt = root_type(lat)
        payload = {"roots": rt.names, "rank": rt.rank}
        _out(args, payload, f"roots: {'+'.join(rt.names) or '(none)'}")
        return 0
    if args.action == "overlattices":
        out = []
        for lattice, sub in overlattices(lat):
            out.append({"index": len(sub), "det": lattice.det(),
                        "roots": root_type(lattice).names if lattice.is_negative_definite() else None})
        _out(args, {"overlattices": out}, json.dumps(out))
        return 0
    vecs = [list(map(int, r)) for r in json.loads(args.vectors)]
    emb = EmbeddingMatrix(vecs, lat)
    if args.action == "primitive":
        ok = is_primitive(emb)
        _out(args, {"primitive": ok}, str(ok).lower())
        return 0
    if args.action == "orth":
        comp = orthogonal_complement(lat, emb)
        payload = {"gram": comp.gram, "det": comp.det(),
                   "roots": root_type(comp).names if comp.rank and comp.is_negative_definite() else []}
        _out(args, payload, json.dumps(payload))
        return 0
    _usage_error(f"unknown lattice action {args.action}")


def cmd_niemeier(args) -> int:
    if args.action == "build":
        nl = build_niemeier(args.name)
        payload = {"name": nl.name, "components": [f"{f}{n}" for f, n in nl.components],
                   "glue_order": nl.glue_order(), "det": nl.lattice.det(),
                   "gram": nl.lattice.gram}
        _out(args, payload, f"{nl.name}: det {payload['det']}, glue order {payload['glue_order']}")
        return 0
    reports = verify_catalog()
    bad = [r for r in reports if not r["ok"]]
    _out(args, {"reports": reports},
         "\n".join(f"[{'pass' if r['ok'] else 'FAIL'}] {r['name']} det={r['det']} glue={r['glue_order']}"
                   for r in reports))
    return 2 if bad else 0


def cmd_frame(args) -> int:
    if args.action == "table":
        report = repro.run_suite(args.table, jobs=args.jobs)
        _out(args, report, repro.render_text(report))
        return 0 if report["ok"] else 2
    recipe = _load_json_file(args.recipe)
    fr = fibration.frame_from_recipe(recipe)
    payload = fr.to_json()
    _out(args, payload, json.dumps(payload))
    return 0


def _curve_from_args(args) -> WeierstrassCurve:
    obj = _load_json_file(args.curve)
    try:
        return corpus.curve_from_json(obj)
    except Exception as exc:
        print(f"error: malformed curve file: {exc}", file=sys.stderr)
        sys.exit(65)


def cmd_ell(args) -> int:
    if args.action == "invariants":
        E = _curve_from_args(args)
        c4, c6 = E.c_invariants()
        payload = {"c4": repr(c4), "c6": repr(c6), "disc": repr(E.discriminant()),
                   "j": repr(E.j_invariant())}
        _out(args, payload, json.dumps(payload))
        return 0
    if args.action == "fibers":
        E = _curve_from_args(args)
        config = fiber_configuration(E)
        payload = {"fibers": config.to_json(), "euler": config.euler_sum()}
        _out(args, payload,
             ", ".join(f"{k}({pl.label()})x{pl.degree}" if pl.degree > 1 else f"{k}({pl.label()})"
                       for pl, k in config.fibers) + f"  [euler {config.euler_sum()}]")
        return 0 if config.euler_sum() == 24 else 2
    if args.action == "height":
        E, obj = corpus.load_curve(args.id) if args.id else (None, None)
        if E is None:
            E = _curve_from_args(args)
            obj = _load_json_file(args.curve)
        results = []
        for sec in obj.get("sections", []):
            P = corpus.section_from_json(E, sec)
            overrides = {k: Fraction(v) for k, v in sec.get("overrides", {}).items()}
            results.append({"name": sec.get("name"), "height": str(height(E, P, overrides))})
        _out(args, {"heights": results}, json.dumps(results))
        return 0
    if args.action == "isogeny3":
        from .isogeny import three_isogeny, three_isogeny_residual_is_zero
        from .poly import parse_poly

        obj = _load_json_file(args.curve)
        field = corpus.field_from_json(obj.get("field", {}))
        A = parse_poly(str(obj["A"]), field)
        B = parse_poly(str(obj["B"]), field)
        iso = three_isogeny(A, B)
        ok = three_isogeny_residual_is_zero(A, B)
        payload = {"image": iso.image.to_json(), "normalized": iso.normalized.to_json(),
                   "residual_zero": ok}
        _out(args, payload, f"residual zero: {ok}")
        return 0 if ok else 1
    if args.action == "isogeny2":
        from .isogeny import two_isogeny, two_isogeny_residual_is_zero
        from .poly import parse_poly

        obj = _load_json_file(args.curve)
        field = corpus.field_from_json(obj.get("field", {}))
        a = parse_poly(str(obj["a2"]), field)
        b = parse_poly(str(obj["a4"]), field)
        _, image = two_isogeny(a, b)
        ok = two_isogeny_residual_is_zero(a, b)
        payload = {"image": image.to_json(), "residual_zero": ok}
        _out(args, payload, f"residual zero: {ok}")
        return 0 if ok else 1
    if args.action == "verify-map":
        from .isogeny import verify_transformation

        obj = _load_json_file(args.curve)
        field = corpus.field_from_json(obj.get("field", {}))
        src = WeierstrassCurve.from_strings(field, obj["src"])
        dst = WeierstrassCurve.from_strings(field, obj["dst"])
        ok = verify_transformation(src, dst, obj["subst"])
        _out(args, {"match": ok}, str(ok).lower())
        return 0 if ok else 2
    _usage_error(f"unknown ell action {args.action}")


def cmd_ns(args) -> int:
    if args.action == "gram":
        obj = _load_json_file(args.desc)
        gram = ns.gram_from_description(obj["description"] if "description" in obj else obj)
        from .linalg import det_bareiss

        payload = {"gram": gram, "det": det_bareiss(gram)}
        _out(args, payload, json.dumps(payload))
        return 0
    if args.action == "match":
        if args.id:
            report = ns.verify_ns(args.id)
            _out(args, report, json.dumps(report, default=str))
            return 0 if report["status"] == "pass" else 2
        gram = _load_gram(args.gram)
        cand, wit = ns.find_candidate(gram)
        payload = {"candidate": cand, "witness": wit}
        _out(args, payload, f"candidate: {cand}")
        return 0 if cand else 2
    _usage_error(f"unknown ns action {args.action}")


def cmd_repro(args) -> int:
    suite = getattr(args, "suite_flag", None) or args.suite
    if not suite:
        _usage_error("repro needs a suite id")
    report = repro.run_suite(suite, jobs=args.jobs)
    _out(args, report, repro.render_text(report))
    return 0 if report["ok"] else 2


def main(argv=None) -> int:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="JSON output")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    common.add_argument("--data", default=argparse.SUPPRESS,
                        help="override the bundled data directory")
    parser = argparse.ArgumentParser(prog="k3forge", parents=[common],
                                     description="Exact lattice and elliptic-fibration toolkit")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("lattice", parents=[common])
    p.add_argument("action", choices=["discform", "orth", "primitive", "roots", "overlattices"])
    p.add_argument("--gram", required=True)
    p.add_argument("--vectors")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("niemeier", parents=[common])
    p.add_argument("action", choices=["build", "verify"])
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_niemeier)

    p = sub.add_parser("frame", parents=[common])
    p.add_argument("action", choices=["compute", "table"])
    p.add_argument("--recipe")
    p.add_argument("--table")
    p.set_defaults(func=cmd_frame)

    p = sub.add_parser("ell", parents=[common])
    p.add_argument("action",
                   choices=["invariants", "fibers", "isogeny2", "isogeny3", "height", "verify-map"])
    p.add_argument("curve", nargs="?")
    p.add_argument("--id", help="bundled corpus id instead of a file")
    p.set_defaults(func=cmd_ell)

    p = sub.add_parser("ns", parents=[common])
    p.add_argument("action", choices=["gram", "match"])
    p.add_argument("--desc")
    p.add_argument("--gram")
    p.add_argument("--id")
    p.set_defaults(func=cmd_ns)

    p = sub.add_parser("repro", parents=[common])
    p.add_argument("suite", nargs="?",
                   choices=repro.available_suites() + list(repro.SUITE_ALIASES))
    p.add_argument("--suite", dest="suite_flag",
                   choices=repro.available_suites() + list(repro.SUITE_ALIASES))
    p.set_defaults(func=cmd_repro)

    args = parser.parse_args(argv)
    args.json = getattr(args, "json", False)
    args.jobs = getattr(args, "jobs", 1)
    args.data = getattr(args, "data", None)
    if args.data:
        os.environ["K3FORGE_DATA"] = args.data
    if not getattr(args, "command", None):
        parser.print_usage(sys.stderr)
        return 64
    try:
        return args.func(args)
    except SystemExit:
        raise
    except (ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
