"""Command-line entry point.

Every subcommand reads a JSON document (``--input``, a path or inline JSON),
writes a schema-validated JSON report (``--output`` or stdout) and exits
0 on success, 2 when ``--expect`` names a different verdict or a suite fails,
and 1 on unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import crossmap, gammatop, jsonio, lebesgue, raster, suites, svg
from .exactset import ValidationError, as_rational, fmt

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2


class Outcome:
    def __init__(self, verdict: str, certificate=None, witness=None, replay_log=None, details=None):
        self.verdict = verdict
        self.certificate = certificate
        self.witness = witness
        self.replay_log = replay_log or []
        self.details = details or {}
        self.failed = False


def _need_input(args):
    if args.input is None:
        raise jsonio.InputError(f"{args.command_name} requires --input")
    return jsonio.read_json(args.input)


def cmd_gamma_open(args) -> Outcome:
    s = jsonio.setdesc_from(_need_input(args))
    fail = gammatop.gamma_failure(s, args.mode)
    if fail is None:
        return Outcome("open", details={"mode": args.mode})
    return Outcome("not_open", witness={"point": fail.point.to_json(), "reason": fail.reason},
                   details={"mode": args.mode})


def cmd_gamma_compact(args) -> Outcome:
    k = jsonio.setdesc_from(_need_input(args))
    res = gammatop.is_gamma_compact(k)
    if isinstance(res, gammatop.Refusal):
        return Outcome("not_compact", witness=res.to_json())
    replay = gammatop.replay_cover(k, res.cross_cover)
    out = Outcome("compact", certificate=res.to_json(), replay_log=replay.log,
                  details={"cover_size": len(res.cross_cover), "replay_ok": replay.ok})
    out.failed = not replay.ok
    return out


def cmd_gamma_limit(args) -> Outcome:
    seq = jsonio.seqspec_from(_need_input(args))
    res = gammatop.gamma_limit(seq)
    ok = gammatop.recheck_gamma_limit(seq, res)
    out = Outcome(res.verdict, certificate=res.to_json() if res.converges else None,
                  witness=None if res.converges else res.witness,
                  replay_log=[{"check": "definition", "ok": ok}])
    out.failed = not ok
    return out


def cmd_gamma_discrete(args) -> Outcome:
    doc = _need_input(args)
    pts = jsonio.points_from(doc) if isinstance(doc, dict) and "points" in doc else jsonio.seqspec_from(doc)
    res = gammatop.verify_gamma_discrete(pts)
    body = res.to_json()
    if res.certified:
        return Outcome("discrete", certificate=body)
    return Outcome("not_discrete", witness=body)


def cmd_coincide(args) -> Outcome:
    A, B, p = jsonio.coincide_from(_need_input(args))
    try:
        res = gammatop.local_coincidence_neighborhood(A, B, p)
    except gammatop.PreconditionError as exc:
        raise jsonio.InputError(str(exc)) from exc
    out = Outcome("verified" if res.verified else "unverified", certificate=res.to_json())
    out.failed = not res.verified
    return out


def cmd_raster(args) -> Outcome:
    doc = _need_input(args)
    if isinstance(doc, dict) and "set" in doc:
        s, punctures = jsonio.punctured_from(doc)
    else:
        s, punctures = jsonio.setdesc_from(doc), []
    g = raster.puncture(raster.rasterize(s, args.n), punctures)
    connected, comps = raster.is_connected(g)
    if args.svg:
        Path(args.svg).write_text(svg.components_svg(comps.labels, comps.count, title=f"N={args.n}"))
    return Outcome("connected" if connected else "disconnected",
                   details={"n": args.n, "components": comps.count, "cells": g.cell_count,
                            "backend": raster.kernels.BACKEND,
                            "punctured_cells": g.provenance.get("punctured_cells", [])})


def _levels(text: str | None) -> list[Fraction]:
    if not text:
        return []
    return [as_rational(v) for v in text.split(",") if v.strip()]


def cmd_crossmap_classify(args) -> Outcome:
    f, A, B = jsonio.gridfn_from(_need_input(args))
    res = crossmap.classify_cross_mapping(f, A, B)
    body = res.to_json()
    if res.kind == crossmap.VIOLATION:
        return Outcome(res.kind, witness=body, details={"violation": res.violation})
    ok = crossmap.verify_collapse(f, res)
    out = Outcome(res.kind, certificate=body, replay_log=[{"check": "image_scan", "ok": ok}])
    out.failed = not ok
    return out


def cmd_crossmap_enumerate(args) -> Outcome:
    A, B = _levels(args.a), _levels(args.b)
    try:
        maps = crossmap.enumerate_cross_mappings(args.n, A, B)
        if args.count_only:
            total = sum(1 for _ in maps)
            return Outcome("enumerated", details={"n": args.n, "count": total})
        tally = {crossmap.ROW: 0, crossmap.COLUMN: 0, crossmap.VIOLATION: 0}
        violations, unverified, total = [], 0, 0
        for f in maps:
            total += 1
            res = crossmap.classify_cross_mapping(f, A, B)
            tally[res.kind] += 1
            if res.kind == crossmap.VIOLATION:
                if res.violation == "dichotomy" and len(violations) < 10:
                    violations.append({"map": f.to_json(), "classification": res.to_json()})
            elif not crossmap.verify_collapse(f, res):
                unverified += 1
    except crossmap.EnumerationOverflow as exc:
        raise jsonio.InputError(str(exc)) from exc
    except ValueError as exc:
        raise jsonio.InputError(str(exc)) from exc
    verdict = "dichotomy_violation" if violations else "dichotomy_holds"
    out = Outcome(verdict, witness=violations or None,
                  replay_log=[{"check": "image_scan", "unverified": unverified}],
                  details={"n": args.n, "A": [fmt(a) for a in A], "B": [fmt(b) for b in B],
                           "count": total, "tally": tally})
    out.failed = unverified > 0
    return out


def cmd_lebesgue_refute(args) -> Outcome:
    cand, probes = jsonio.candidate_from(_need_input(args))
    try:
        w = lebesgue.refute_pointwise_identity(cand, probes)
    except lebesgue.InsufficientEvidence as exc:
        return Outcome("insufficient_evidence", details={"reason": str(exc)})
    ok = lebesgue.replay_refutation(w)
    out = Outcome("refuted", witness=w.to_json(), replay_log=[{"check": "gamma_limit_replay", "ok": ok}])
    out.failed = not ok
    return out


def cmd_lebesgue_approx(args) -> Outcome:
    try:
        f = lebesgue.get_oracle(args.oracle)
        model = lebesgue.UltraModel(args.depth)
        levels = [args.level] if args.level is not None else list(range(1, args.depth + 1))
        for n in levels:
            if not 1 <= n <= args.depth:
                raise lebesgue.DepthError(f"level {n} outside 1..{args.depth}")
    except (ValueError, ValidationError) as exc:
        raise jsonio.InputError(str(exc)) from exc
    rng = random.Random(args.seed)
    xs = ["0" * args.depth, "1" * args.depth] + [model.random_point(rng) for _ in range(30)]
    ys = [Fraction(k, 63) for k in range(64)]
    report = lebesgue.verify_pointwise_convergence(f, model, levels, [(x, y) for x in xs for y in ys])
    body = report.to_json()
    if args.svg:
        bound = None
        if f.lipschitz is not None:
            bound = [f.lipschitz * Fraction(1, 2 ** n) for n in levels]
        Path(args.svg).write_text(svg.error_curves_svg(levels, {f.name: [report.max_error(n) for n in levels]}, bound))
    approx = lebesgue.baire1_approximate(f, levels[-1], model)
    cert = {"level": levels[-1], "table_size": len(approx.table)}
    if len(approx.table) <= 64:
        cert["table"] = approx.table_json()
    return Outcome("bounds_hold" if report.ok else "bounds_fail", certificate=cert, details=body)


def cmd_suite(args) -> Outcome:
    try:
        rep = suites.run_suite(args.name, args.seed).to_json()
    except ValueError as exc:
        raise jsonio.InputError(str(exc)) from exc
    out = Outcome("passed" if rep["passed"] else "failed", details=rep)
    out.failed = not rep["passed"]
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="input JSON file or inline JSON document")
    common.add_argument("--output", help="report path (default: stdout)")
    common.add_argument("--expect", help="expected verdict; mismatch exits with status 2")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized work (default 0)")

    p = argparse.ArgumentParser(prog="crosstopo", description="Verifier for cross-topology results on the unit square.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, parent=sub):
        sp = parent.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=fn, command_name=name)
        return sp

    sp = add("gamma-open", cmd_gamma_open, "decide gamma-openness of a set description")
    sp.add_argument("--mode", choices=[gammatop.DIRECT, gammatop.COMPLEMENT], default=gammatop.DIRECT)
    add("gamma-compact", cmd_gamma_compact, "decide gamma-compactness and emit a cross cover")
    add("gamma-limit", cmd_gamma_limit, "gamma-limit of a closed-form sequence")
    add("gamma-discrete", cmd_gamma_discrete, "certify a sequence or finite point set is gamma-discrete")
    add("coincide", cmd_coincide, "local window where a finite cross agrees with one cross")
    sp = add("raster", cmd_raster, "rasterize a set and count 4-connected components")
    sp.add_argument("--n", type=int, default=64, help="grid resolution (default 64)")
    sp.add_argument("--svg", help="write an SVG component map")

    cm = sub.add_parser("crossmap", help="raster cross-mappings").add_subparsers(dest="action", required=True)
    add("classify", cmd_crossmap_classify, "classify one grid map", cm).set_defaults(command_name="crossmap classify")
    sp = add("enumerate", cmd_crossmap_enumerate, "enumerate all cross-mappings", cm)
    sp.set_defaults(command_name="crossmap enumerate")
    sp.add_argument("--n", type=int, default=2, help="grid resolution, at most 4 (default 2)")
    sp.add_argument("--a", help="comma-separated column levels A")
    sp.add_argument("--b", help="comma-separated row levels B")
    sp.add_argument("--count-only", action="store_true", help="only count, skip classification")

    lb = sub.add_parser("lebesgue", help="approximation and refutation").add_subparsers(dest="action", required=True)
    add("refute", cmd_lebesgue_refute, "refute pointwise convergence to the identity", lb).set_defaults(
        command_name="lebesgue refute")
    sp = add("approx", cmd_lebesgue_approx, "cylinder approximants of a built-in oracle", lb)
    sp.set_defaults(command_name="lebesgue approx")
    sp.add_argument("--oracle", default="builtin:lipschitz", help="builtin:constant|depth1|lipschitz")
    sp.add_argument("--depth", type=int, default=12, help="ultrametric depth D (default 12)")
    sp.add_argument("--level", type=int, help="single approximation level (default: all 1..D)")
    sp.add_argument("--svg", help="write an SVG of the error curves")

    sp = add("suite", cmd_suite, "run a bundled acceptance suite")
    sp.add_argument("name", help=", ".join(suites.SUITES))
    return p


def make_report(args, out: Outcome) -> dict:
    report = {
        "schema_version": jsonio.SCHEMA_VERSION,
        "command": args.command_name,
        "verdict": out.verdict,
        "replay_log": out.replay_log,
        "details": out.details,
        "expect": args.expect,
        "expect_matched": None if args.expect is None else args.expect == out.verdict,
    }
    if out.certificate is not None:
        report["certificate"] = out.certificate
    if out.witness is not None:
        report["witness"] = out.witness
    jsonio.validate_report(report)
    return report


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except (jsonio.InputError, ValidationError) as exc:
        print(f"crosstopo: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = make_report(args, out)
    text = jsonio.dumps(report)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    if args.expect is not None:
        return EXIT_OK if report["expect_matched"] else EXIT_MISMATCH
    return EXIT_MISMATCH if out.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
