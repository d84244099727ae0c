"""Command-line front end.

Exit codes: 0 success / verdict true, 1 verdict false (for example a
chain that replays but is not minimally linked), 2 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from importlib import resources

from .constructions import (FamilyParams, build_linked_points, family_witness,
                            hypersurface_section, stable_shape_check)
from .ideals import Ideal, hilbert
from .linkage import (LinkError, RegularSequenceError, chain_verify,
                      find_reg_seq, is_regular_sequence, link,
                      min_reg_seq_degrees, monomial_licci_scan,
                      socle_degree_bound_check, standard_form)
from .reports import Report, betti_entries, digest_inputs, emit_report
from .resolutions import free_resolution
from .rings import ParseError, PolynomialRing
from .scripts import (ChainScriptError, load_chain_script, parse_chain_script,
                      parse_field)

FIXTURES = {
    "ex2.2": "ex2.2.chain",
    "ex2.3": "ex2.3.chain",
    "thm2.4": "thm2.4.chain",
    "cor3.3-n28": "cor3.3-n28.json",
    "prop3.4": "prop3.4.json",
}


def _fixture_text(name: str) -> str:
    return resources.files("liaison.fixtures").joinpath(name).read_text()


class CliError(Exception):
    pass


def _load_ring(path, field_override=None) -> PolynomialRing:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        import re
        m = re.fullmatch(r"ring\s+(.+?)\s+over\s+(\S+)", line)
        if not m:
            raise CliError(f"{path}:{lineno}: expected 'ring <vars> over <field>'")
        variables = [v for v in re.split(r"[,\s]+", m.group(1)) if v]
        field = parse_field(field_override) if field_override else parse_field(m.group(2))
        return PolynomialRing(variables, field)
    raise CliError(f"{path}: empty ring file")


def _load_ideal(path, ring) -> Ideal:
    gens = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            for chunk in line.split(";"):
                chunk = chunk.strip()
                if not chunk:
                    continue
                try:
                    gens.append(ring.parse(chunk))
                except ParseError as exc:
                    raise CliError(f"{path}:{lineno}: {exc}") from None
    return Ideal(gens, ring)


def _ideal_strings(I: Ideal) -> list:
    return [str(g) for g in I.groebner_basis()]


def _need(args, *names):
    for n in names:
        if getattr(args, n.replace("-", "_"), None) is None:
            raise CliError(f"--{n} is required for this command")


def _ring_and_ideal(args):
    _need(args, "ring", "ideal")
    ring = _load_ring(args.ring, args.field)
    return ring, _load_ideal(args.ideal, ring)


# ---------------------------------------------------------------------------
# subcommand implementations: each returns (exit_code, results dict)

def _cmd_gb(args):
    ring, I = _ring_and_ideal(args)
    return 0, {"groebner_basis": _ideal_strings(I)}


def _cmd_hilbert(args):
    ring, I = _ring_and_ideal(args)
    H = hilbert(I, args.max_degree)
    return 0, {"hvector": list(H.hvector), "degree": H.degree,
               "dimension": H.dimension,
               "hilbert_function": list(H.hilbert_function)}


def _cmd_betti(args):
    ring, I = _ring_and_ideal(args)
    res = free_resolution(I)
    B = res.betti()
    return 0, {"betti": betti_entries(B),
               "regularity": B.regularity(),
               "projective_dimension": B.proj_dim(),
               "is_cohen_macaulay": (res.length() + 1) == I.height()}


def _cmd_height(args):
    ring, I = _ring_and_ideal(args)
    return 0, {"height": I.height(), "dimension": I.krull_dim()}


def _cmd_mindeg(args):
    ring, I = _ring_and_ideal(args)
    return 0, {"min_reg_seq_degrees": list(min_reg_seq_degrees(I))}


def _cmd_link(args):
    ring, I = _ring_and_ideal(args)
    if args.seq:
        forms = [ring.parse(c) for c in args.seq.split(";") if c.strip()]
        cert = is_regular_sequence(forms)
    elif args.degrees:
        degrees = tuple(int(x) for x in args.degrees.split(","))
        cert = find_reg_seq(I, degrees, args.seed or 0)
    else:
        raise CliError("link needs --seq or --degrees")
    step = link(I, cert, check_back=True)
    results = {"sequence": [str(f) for f in cert.forms],
               "groebner_basis": _ideal_strings(step.target),
               "minimal": step.minimal,
               "min_reg_seq_degrees": list(step.minimal_degrees),
               "back_verified": step.back_verified}
    return (0 if step.minimal else 1), results


def _chain_results(chain):
    steps = []
    for k, s in enumerate(chain.steps, 1):
        steps.append({"index": k, "degrees": list(s.degrees()),
                      "minimal": s.minimal, "back_verified": s.back_verified,
                      "minimal_degrees": list(s.minimal_degrees),
                      "target": _ideal_strings(s.target)})
    return {"steps": steps,
            "terminal": _ideal_strings(chain.terminal),
            "terminal_is_ci": chain.terminal_is_ci,
            "all_minimal": chain.all_minimal(),
            "verdict": ("minimally homogeneously linked chain"
                        if chain.all_minimal() and chain.terminal_is_ci
                        else "chain verified, but not minimally linked"
                        if chain.terminal_is_ci else
                        "chain verified; terminal is not a complete intersection")}


def _run_chain_file(path=None, text=None):
    script = load_chain_script(path) if path else parse_chain_script(text)
    I = Ideal(script.ideal_gens, script.ring)
    chain = chain_verify(I, script.step_sequences(), script.step_seeds())
    return chain


def _cmd_chain_verify(args):
    _need(args, "chain")
    chain = _run_chain_file(path=args.chain)
    results = _chain_results(chain)
    ok = chain.all_minimal() and chain.terminal_is_ci
    return (0 if ok else 1), results


def _cmd_monomial_scan(args):
    ring, I = _ring_and_ideal(args)
    sf = standard_form(I)
    scan = monomial_licci_scan(I)
    results = {"standard_form_pure_powers": list(sf.pure_powers),
               "generators": [str(g) for g in sf.sharp.groebner_basis()],
               "verdict": scan.verdict,
               "scan_trace": [_ideal_strings(t) for t in scan.trace],
               "fixpoint_sharp": (_ideal_strings(scan.fixpoint_sharp)
                                  if scan.fixpoint_sharp is not None else []),
               "fixpoint_sharp_height": scan.fixpoint_sharp_height}
    return (0 if scan.verdict != "inconclusive" else 1), results


def _parse_params(text) -> FamilyParams:
    values = [int(x) for x in text.split(",")]
    if len(values) != 4:
        raise CliError("--params expects four comma-separated integers")
    return FamilyParams(*values)


def _cmd_construct(args):
    _need(args, "params")
    params = _parse_params(args.params)
    fam = build_linked_points(params, seed=args.seed or 0, dim=args.dim)
    inv = fam.invariants()
    results = {"invariants": {
        "height": inv["height"], "degree": inv["degree"],
        "min_reg_seq_degrees": list(inv["min_reg_seq_degrees"]),
        "hvector": list(inv["hvector"]),
        "is_cohen_macaulay": inv["is_cohen_macaulay"],
        "stable_shape": inv["stable_shape"]},
        "betti": betti_entries(fam.star.minimal_table),
        "generators": [str(g) for g in fam.I.min_gens()],
        "steps": [{"index": k, "degrees": list(s.degrees()),
                   "minimal": s.minimal, "back_verified": s.back_verified}
                  for k, s in enumerate(fam.chain.steps, 1)],
        "terminal": _ideal_strings(fam.I1)}
    ok = (inv["height"] == 3 and inv["is_cohen_macaulay"]
          and inv["stable_shape"]
          and all(s.back_verified for s in fam.chain.steps))
    return (0 if ok else 1), results


def _cmd_socle_check(args):
    _need(args, "degrees")
    ring, I = _ring_and_ideal(args)
    degrees = tuple(int(x) for x in args.degrees.split(","))
    check = socle_degree_bound_check(I, degrees)
    results = {"verdict": "passes" if check.passes else "violates",
               "degree_sum": check.degree_sum, "socle_bound": check.bound,
               "margin": check.margin, "strict_required": check.strict_required}
    return (0 if check.passes else 1), results


def _cmd_star_check(args):
    _need(args, "params")
    ring, I = _ring_and_ideal(args)
    params = _parse_params(args.params)
    star = stable_shape_check(I, params, seed=args.seed or 0)
    results = {"verdict": "holds" if star.holds else "fails",
               "checks": {"height": star.height_ok,
                          "regular_sequence": star.reg_seq_ok,
                          "resolution_shape": star.shape_ok},
               "betti": betti_entries(star.minimal_table)}
    return (0 if star.holds else 1), results


def _cmd_hyp_section(args):
    _need(args, "params")
    params = _parse_params(args.params)
    fam = build_linked_points(params, seed=args.seed or 0, dim=args.dim)
    witness = family_witness(fam) if fam.points else None
    lift = hypersurface_section(fam.I, fam.chain, degree=args.degree,
                                seed=(args.seed or 0) + 1, witness=witness)
    results = {"lift_degree": lift.degree,
               "lift_form_terms": len(lift.form.terms),
               "min_reg_seq_degrees": list(lift.mindegs),
               "height": lift.ideal.height(),
               "steps": [{"index": k, "degrees": list(s.sequence_degrees),
                          "minimal": False, "back_verified": s.verified,
                          "method": s.method}
                         for k, s in enumerate(lift.steps, 1)]}
    return (0 if lift.all_verified() else 1), results


# ---------------------------------------------------------------------------
# reproduce targets with frozen expectations

def _reproduce_ex22():
    text = _fixture_text("ex2.2.chain")
    script = parse_chain_script(text)
    I = Ideal(script.ideal_gens, script.ring)
    H = hilbert(I, 8)
    B = free_resolution(I).betti()
    scan = monomial_licci_scan(I)
    expected_betti = {(0, 3): 2, (0, 4): 2, (0, 6): 3, (1, 5): 3, (1, 7): 5,
                      (1, 8): 2, (2, 8): 2, (2, 9): 2}
    fix = Ideal([script.ring.parse(s) for s in ("x*z", "y^4*z", "x*y^4")],
                script.ring)
    ok = (H.hvector == (1, 3, 6, 8, 7, 6, 2)
          and B == expected_betti
          and scan.verdict == "not-licci"
          and scan.fixpoint_sharp == fix
          and scan.fixpoint_sharp_height == 2)
    results = {"hvector": list(H.hvector), "betti": betti_entries(B),
               "verdict": scan.verdict,
               "fixpoint_sharp": _ideal_strings(scan.fixpoint_sharp),
               "fixpoint_sharp_height": scan.fixpoint_sharp_height,
               "checks": {"expected_values_reproduced": ok}}
    return (0 if ok else 1), results


def _reproduce_chain(fixture, expect_all_minimal):
    chain = _run_chain_file(text=_fixture_text(fixture))
    results = _chain_results(chain)
    ok = chain.terminal_is_ci and chain.all_back_verified()
    results["checks"] = {"replay_complete": ok,
                         "all_minimal": chain.all_minimal(),
                         "expected_all_minimal": expect_all_minimal}
    code = 0 if (ok and chain.all_minimal()) else 1
    if not ok:
        code = 1
    return code, results


def _reproduce_cor33():
    cfg = json.loads(_fixture_text("cor3.3-n28.json"))
    params = FamilyParams(*cfg["params"])
    fam = build_linked_points(params, seed=cfg["seed"], dim=cfg["dim"])
    inv = fam.invariants()
    want = cfg["expect"]
    ok = (inv["degree"] == want["degree"] and inv["height"] == want["height"]
          and list(inv["min_reg_seq_degrees"]) == want["min_reg_seq_degrees"]
          and inv["is_cohen_macaulay"] and inv["stable_shape"]
          and all(s.back_verified for s in fam.chain.steps))
    results = {"invariants": {k: (list(v) if isinstance(v, tuple) else v)
                              for k, v in inv.items() if k != "betti"},
               "betti": betti_entries(fam.star.minimal_table),
               "checks": {"expected_values_reproduced": ok}}
    return (0 if ok else 1), results


def _reproduce_prop34():
    cfg = json.loads(_fixture_text("prop3.4.json"))
    params = FamilyParams(*cfg["params"])
    fam = build_linked_points(params, seed=cfg["seed"], dim=cfg["dim"])
    witness = family_witness(fam)
    lift = hypersurface_section(fam.I, fam.chain, degree=cfg["degree"],
                                seed=cfg["lift_seed"], witness=witness)
    prefix = cfg["expect"]["lift_mindegs_prefix"]
    ok = (lift.all_verified()
          and list(lift.mindegs[:len(prefix)]) == prefix
          and lift.mindegs[-1] == lift.degree)
    results = {"lift_degree": lift.degree,
               "min_reg_seq_degrees": list(lift.mindegs),
               "height": lift.ideal.height(),
               "steps": [{"index": k, "degrees": list(s.sequence_degrees),
                          "minimal": False, "back_verified": s.verified,
                          "method": s.method}
                         for k, s in enumerate(lift.steps, 1)],
               "checks": {"expected_values_reproduced": ok}}
    return (0 if ok else 1), results


def _cmd_reproduce(args):
    target = args.target
    if target not in FIXTURES:
        raise CliError(f"unknown reproduce target {target!r}; "
                       f"choose from {', '.join(sorted(FIXTURES))}")
    if target == "ex2.2":
        return _reproduce_ex22()
    if target == "ex2.3":
        return _reproduce_chain("ex2.3.chain", expect_all_minimal=True)
    if target == "thm2.4":
        return _reproduce_chain("thm2.4.chain", expect_all_minimal=False)
    if target == "cor3.3-n28":
        return _reproduce_cor33()
    return _reproduce_prop34()


_COMMANDS = {
    "gb": _cmd_gb,
    "hilbert": _cmd_hilbert,
    "betti": _cmd_betti,
    "height": _cmd_height,
    "mindeg": _cmd_mindeg,
    "link": _cmd_link,
    "chain-verify": _cmd_chain_verify,
    "monomial-scan": _cmd_monomial_scan,
    "construct-thm32": _cmd_construct,
    "socle-check": _cmd_socle_check,
    "star-check": _cmd_star_check,
    "hyp-section": _cmd_hyp_section,
    "reproduce": _cmd_reproduce,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liaison",
        description="exact linkage computations for homogeneous ideals")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--ring", help="ring file: 'ring x y z over QQ'")
        p.add_argument("--ideal", help="ideal file: one polynomial per line")
        p.add_argument("--chain", help="chain script file")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--field", help="override the ring field: QQ or GF:p")
        p.add_argument("--out", help="also write the report to this file")
        p.add_argument("--format", choices=("text", "json"), default="text")
        if name == "reproduce":
            p.add_argument("target", choices=sorted(FIXTURES))
        if name == "hilbert":
            p.add_argument("--max-degree", type=int, default=None)
        if name == "link":
            p.add_argument("--seq", help="semicolon-separated forms")
            p.add_argument("--degrees", help="comma-separated degree tuple")
        if name == "socle-check":
            p.add_argument("--degrees", help="comma-separated degree tuple")
        if name in ("construct-thm32", "star-check", "hyp-section"):
            p.add_argument("--params", help="a1,a2,a3,a4")
            p.add_argument("--dim", type=int, default=3)
        if name == "hyp-section":
            p.add_argument("--degree", type=int, default=None)
    return parser


def _inputs_digest(args) -> str:
    chunks = []
    for attr in ("ring", "ideal", "chain"):
        path = getattr(args, attr, None)
        if path:
            try:
                with open(path, "rb") as fh:
                    chunks.append(fh.read())
            except OSError as exc:
                raise CliError(f"cannot read {path}: {exc}") from None
    for attr in ("params", "seq", "degrees", "target"):
        value = getattr(args, attr, None)
        if value is not None:
            chunks.append(f"{attr}={value}")
    return digest_inputs(*chunks) if chunks else ""


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        digest = _inputs_digest(args)
        code, results = _COMMANDS[args.command](args)
    except (CliError, ChainScriptError, ParseError, LinkError,
            RegularSequenceError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = Report(command=args.command, inputs_digest=digest,
                    seed=args.seed, timing_seconds=time.perf_counter() - started,
                    results=results)
    rendered = emit_report(report, "json" if args.format == "json" else "text")
    print(rendered)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(emit_report(report, "json") if args.out.endswith(".json")
                     else rendered)
            fh.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
