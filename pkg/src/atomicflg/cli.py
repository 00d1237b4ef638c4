"""Command-line interface.

Exit codes: 0 success, 1 a yes/no question answered "no" (or a violation
found), 2 bad input or usage, 3 an internal invariant failed.
"""
from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from fractions import Fraction

from .analysis import optimum_placement, poa_certificate
from .classes import class_set
from .client_eq import (FavoringPolicy, GreedyPolicy, RoundedPolicy, assignment_loads,
                        enumerate_equilibria, favoring_profile, greedy_weighted_equilibrium,
                        rounded_profile)
from .errors import FlgError, InputError, InvariantError
from .formats import (approx, instance_from_dict, parse_dimacs, profile_rows, render_json,
                      render_tsv, scalar_str, serialize_instance, to_dot)
from .game import (ClientProfile, UniformPolicy, check_permutation, check_placement,
                   facility_loads, verify_client_equilibrium)
from .instances import (NAMED_INSTANCES, _PLACEMENTS, gen_paper_instance, random_cnf,
                        random_instance, reduce_sat)
from .reproduce import CHECKS, run_check
from .scalar import parse_scalar
from .spe import build_certificate, find_spe, k_approx_spe, spe_exists, verify_spe

__all__ = ["run_cli", "main"]

log = logging.getLogger(__name__)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _scalar_arg(text):
    try:
        return parse_scalar(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("--dot", action="store_true", help="print the host graph in DOT instead")
    common.add_argument("--alpha", type=_scalar_arg, default=None,
                        help="approximation factor (exact scalar string)")
    common.add_argument("--pi", default=None, help="comma-separated facility ids, most favored first")
    common.add_argument("--guard-clients", type=int, default=8)
    common.add_argument("--guard-fpps", type=int, default=200)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--placement", default=None,
                        help="comma-separated vertex ids, one per facility")
    common.add_argument("--policy", choices=("rounded", "favoring", "greedy", "uniform"), default=None)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="atomicflg", description="Facility location games with atomic clients.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text, instance=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if instance:
            p.add_argument("instance", help="instance JSON file, or - for stdin")
        return p

    add("classes", "class set of a placement")
    add("rounded", "rounded client equilibrium (unit weights)")
    add("favoring", "pi-favoring client equilibrium (unit weights)")
    add("greedy", "greedy pure client equilibrium")
    add("enumerate-eq", "all client equilibria of a placement (micro instances)")
    add("find-spe", "improving-move dynamic to an SPE (unit weights)")
    add("verify", "check an SPE certificate generated by a policy")
    add("k-approx", "k-approximate SPE construction")
    add("spe-exists", "exact (approximate) SPE existence decision")
    add("opt", "welfare-optimal placement")
    add("poa", "welfare ratio of an SPE against the optimum")
    gen = add("gen", "generate an instance document", instance=False)
    gen.add_argument("--family", required=True, choices=sorted(NAMED_INSTANCES) + ["random"])
    gen.add_argument("--k", type=int, default=None)
    gen.add_argument("--n", type=int, default=6)
    gen.add_argument("--eps", type=_scalar_arg, default=Fraction(1, 100))
    gen.add_argument("--density", type=float, default=0.3)
    gen.add_argument("--weighted", action="store_true")
    red = add("reduce-sat", "build the SAT reduction instance", instance=False)
    red.add_argument("cnf", nargs="?", help="DIMACS CNF file (omit with --random)")
    red.add_argument("--random", action="store_true", help="use a random formula")
    red.add_argument("--m", type=int, default=2)
    red.add_argument("--t", type=int, default=4)
    red.add_argument("--eps", type=_scalar_arg, default=Fraction(1, 100))
    chk = add("paper-check", "run a named reproduction", instance=False)
    chk.add_argument("name", choices=sorted(CHECKS))
    return parser


# --------------------------------------------------------------------------
# helpers


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load(args):
    text = _read(args.instance)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.instance}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    inst = instance_from_dict(doc)
    placement = doc.get("placement") if isinstance(doc, dict) else None
    return inst, placement


def _vertex(inst, token):
    token = token.strip()
    if token in inst.graph.names:
        return inst.graph.names.index(token)
    raise InputError(f"unknown vertex {token!r}")


def _placement(args, inst, doc_placement):
    if args.placement is not None:
        tokens = args.placement.split(",")
    elif doc_placement is not None:
        if not isinstance(doc_placement, list):
            raise InputError("$.placement: expected a list of vertex ids")
        tokens = [str(x) for x in doc_placement]
    else:
        raise InputError("this command needs --placement (or a placement field in the document)")
    return check_placement(inst, [_vertex(inst, t) for t in tokens])


def _pi(args, inst):
    if args.pi is None:
        return tuple(range(inst.k))
    try:
        pi = [int(x) for x in args.pi.split(",")]
    except ValueError:
        raise InputError(f"--pi must be comma-separated facility ids, got {args.pi!r}") from None
    return check_permutation(pi, inst.k)


def _names(inst, s):
    return [inst.graph.names[v] for v in s]


def _load_rows(inst, s, loads):
    return [{"facility": f, "location": inst.graph.names[s[f]], "load": scalar_str(x),
             "load_approx": approx(x)} for f, x in enumerate(loads)]


def _profile_doc(inst, s, sigma):
    report = facility_loads(inst, s, sigma)
    bad = verify_client_equilibrium(inst, s, sigma)
    return {
        "placement": _names(inst, s),
        "loads": _load_rows(inst, s, report.load),
        "sorted_loads": [scalar_str(x) for x in report.sorted],
        "participation": scalar_str(report.participation),
        "equilibrium": "ok" if bad is None else f"violation {tuple(bad)}",
        "profile": profile_rows(inst, sigma),
    }


def _policy(args, inst):
    name = args.policy or ("rounded" if inst.unweighted else "greedy")
    if name == "rounded":
        return RoundedPolicy(inst)
    if name == "favoring":
        return FavoringPolicy(inst, _pi(args, inst))
    if name == "greedy":
        return GreedyPolicy(inst)
    return UniformPolicy(inst)


def _witness_text(inst, w):
    if w is None:
        return None
    if hasattr(w, "factor"):
        factor = "unbounded" if w.factor is None else str(w.factor)
        return (f"facility {w.facility} moves to {inst.graph.names[w.vertex]}: load {w.old} -> {w.new} "
                f"(factor {factor})")
    v = w.violation
    return (f"profile at {_names(inst, w.placement)}: client {inst.graph.names[v.client]} uses "
            f"facility {v.facility} but facility {v.better} is less loaded")


def _cert_summary(inst, cert):
    return {"base": _names(inst, cert.base), "policy": cert.policy, "profiles": len(cert.profiles)}


# --------------------------------------------------------------------------
# commands


def cmd_classes(args, inst, dp):
    s = _placement(args, inst, dp)
    cs = class_set(inst, s)
    rows = [{"class": i + 1, "facilities": sorted(c.facilities),
             "clients": [inst.graph.names[v] for v in sorted(c.clients)],
             "avg_load": scalar_str(c.avg_load), "avg_load_approx": approx(c.avg_load)}
            for i, c in enumerate(cs.classes)]
    return 0, {"placement": _names(inst, s), "classes": rows}, (s, cs)


def cmd_rounded(args, inst, dp):
    s = _placement(args, inst, dp)
    sigma = ClientProfile.from_assignment(inst, rounded_profile(inst, s))
    return 0, _profile_doc(inst, s, sigma), (s, None)


def cmd_favoring(args, inst, dp):
    s = _placement(args, inst, dp)
    pi = _pi(args, inst)
    sigma = ClientProfile.from_assignment(inst, favoring_profile(inst, s, pi))
    return 0, {"pi": list(pi), **_profile_doc(inst, s, sigma)}, (s, None)


def cmd_greedy(args, inst, dp):
    s = _placement(args, inst, dp)
    sigma = ClientProfile.from_assignment(inst, greedy_weighted_equilibrium(inst, s))
    return 0, _profile_doc(inst, s, sigma), (s, None)


def cmd_enumerate_eq(args, inst, dp):
    s = _placement(args, inst, dp)
    polys = enumerate_equilibria(inst, s, guard_clients=args.guard_clients)
    rows = []
    for i, poly in enumerate(polys):
        support = "; ".join(f"{inst.graph.names[v]}:" + "|".join(str(f) for f in sorted(fs))
                            for v, fs in sorted(poly.pattern.items()))
        row = {"index": i, "support": support}
        for f in range(inst.k):
            lo, hi = poly.load_range(inst, f)
            row[f"load{f}"] = scalar_str(lo) if lo == hi else f"{lo}..{hi}"
        rows.append(row)
    return 0, {"placement": _names(inst, s), "count": len(polys), "equilibria": rows}, (s, None)


def cmd_find_spe(args, inst, dp):
    s, cert, trace = find_spe(inst)
    log.info("find_spe: %d iterations", trace.iterations)
    steps = [{"step": i + 1, "facility": st.mover, "from": inst.graph.names[st.source],
              "to": inst.graph.names[st.target], "sorted_after": [scalar_str(x) for x in st.sort_after],
              "pi": list(st.pi)} for i, st in enumerate(trace.steps)]
    verdict = verify_spe(inst, cert, 1)
    doc = {"placement": _names(inst, s), "iterations": trace.iterations,
           "loads": _load_rows(inst, s, cert.loads(inst, s)), "certificate": _cert_summary(inst, cert),
           "verdict": "ok" if verdict is None else _witness_text(inst, verdict), "steps": steps}
    return (0 if verdict is None else 1), doc, (s, None)


def cmd_verify(args, inst, dp):
    s = _placement(args, inst, dp)
    alpha = args.alpha if args.alpha is not None else 1
    cert = build_certificate(inst, s, _policy(args, inst))
    w = verify_spe(inst, cert, alpha)
    doc = {"placement": _names(inst, s), "alpha": scalar_str(alpha), "certificate": _cert_summary(inst, cert),
           "loads": _load_rows(inst, s, cert.loads(inst, s)),
           "verdict": "ok" if w is None else "violation", "witness": _witness_text(inst, w)}
    return (0 if w is None else 1), doc, (s, None)


def cmd_k_approx(args, inst, dp):
    s, cert = k_approx_spe(inst)
    w = verify_spe(inst, cert, inst.k)
    doc = {"placement": _names(inst, s), "alpha": inst.k, "certificate": _cert_summary(inst, cert),
           "loads": _load_rows(inst, s, cert.loads(inst, s)),
           "verdict": "ok" if w is None else "violation", "witness": _witness_text(inst, w)}
    return (0 if w is None else 1), doc, (s, None)


def cmd_spe_exists(args, inst, dp):
    alpha = args.alpha if args.alpha is not None else 1
    d = spe_exists(inst, alpha, guard_fpps=args.guard_fpps, guard_clients=args.guard_clients)
    doc = {"alpha": scalar_str(alpha), "verdict": "exists" if d.exists else "none"}
    if d.exists:
        doc["placement"] = _names(inst, d.placement)
        doc["loads"] = _load_rows(inst, d.placement, d.certificate.loads(inst, d.placement))
    doc["rejected"] = [{"placement": _names(inst, r.placement), "required": [scalar_str(x) for x in r.required],
                        "patterns": r.patterns} for r in d.reports]
    return (0 if d.exists else 1), doc, (d.placement, None)


def cmd_opt(args, inst, dp):
    s, w = optimum_placement(inst)
    return 0, {"placement": _names(inst, s), "weight": scalar_str(w), "weight_approx": approx(w)}, (s, None)


def cmd_poa(args, inst, dp):
    if args.placement is not None or args.policy is not None:
        s = _placement(args, inst, dp)
        cert = build_certificate(inst, s, _policy(args, inst))
    elif inst.unweighted:
        _, cert, _ = find_spe(inst)
    else:
        d = spe_exists(inst, 1, guard_fpps=args.guard_fpps, guard_clients=args.guard_clients)
        if not d.exists:
            return 1, {"verdict": "no SPE to evaluate"}, (None, None)
        cert = d.certificate
    w = verify_spe(inst, cert, 1)
    if w is not None:
        return 1, {"verdict": "not an SPE", "witness": _witness_text(inst, w)}, (cert.base, None)
    rep = poa_certificate(inst, cert)
    doc = {"spe_placement": _names(inst, cert.base), "state_weight": scalar_str(rep.state_weight),
           "opt_placement": _names(inst, rep.opt_placement), "opt_weight": scalar_str(rep.opt_weight),
           "ratio": scalar_str(rep.ratio), "ratio_approx": approx(rep.ratio)}
    return 0, doc, (cert.base, None)


def cmd_gen(args):
    if args.family == "random":
        rng = random.Random(args.seed)
        inst = random_instance(rng, args.n, args.k or 2, args.density, weighted=args.weighted)
        return inst, None
    kwargs = {"eps": args.eps}
    if args.alpha is not None:
        kwargs["alpha"] = args.alpha
    if args.k is not None:
        kwargs["k"] = args.k
    inst = gen_paper_instance(args.family, **kwargs)
    placement = _PLACEMENTS.get(args.family)
    if args.family == "fig8":
        placement = tuple(inst.graph.names[:inst.k])
    return inst, placement


def cmd_reduce_sat(args):
    if args.random:
        formula = random_cnf(random.Random(args.seed), args.m, args.t)
    elif args.cnf:
        formula = parse_dimacs(_read(args.cnf))
    else:
        raise InputError("reduce-sat needs a DIMACS file or --random")
    alpha = args.alpha if args.alpha is not None else Fraction(5, 4)
    return reduce_sat(formula, alpha, args.eps)


def _emit(args, doc):
    sys.stdout.write(render_tsv(doc) if args.format == "tsv" else render_json(doc))


def _instance_out(args, inst, placement):
    if args.dot:
        s = None if placement is None else [inst.graph.vertex(x) for x in placement]
        sys.stdout.write(to_dot(inst, s))
        return
    text = serialize_instance(inst)
    if placement is not None:
        doc = json.loads(text)
        doc["placement"] = list(placement)
        text = json.dumps(doc, indent=2) + "\n"
    sys.stdout.write(text)


COMMANDS = {
    "classes": cmd_classes, "rounded": cmd_rounded, "favoring": cmd_favoring, "greedy": cmd_greedy,
    "enumerate-eq": cmd_enumerate_eq, "find-spe": cmd_find_spe, "verify": cmd_verify,
    "k-approx": cmd_k_approx, "spe-exists": cmd_spe_exists, "opt": cmd_opt, "poa": cmd_poa,
}


def _dispatch(args) -> int:
    if args.command == "gen":
        _instance_out(args, *cmd_gen(args))
        return 0
    if args.command == "reduce-sat":
        _instance_out(args, cmd_reduce_sat(args), None)
        return 0
    if args.command == "paper-check":
        rows = run_check(args.name)
        ok = all(r.ok for r in rows)
        doc = {"check": args.name, "result": "match" if ok else "mismatch",
               "rows": [{"item": r.label, "expected": r.expected, "computed": r.computed,
                         "match": "yes" if r.ok else "NO"} for r in rows]}
        _emit(args, doc)
        return 0 if ok else 1
    inst, dp = _load(args)
    code, doc, (s, cs) = COMMANDS[args.command](args, inst, dp)
    if args.dot:
        sys.stdout.write(to_dot(inst, s, cs))
    else:
        _emit(args, {"command": args.command, **doc})
    return code


def run_cli(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if args.verbose:
        logging.basicConfig(level=logging.INFO, stream=sys.stderr, format="%(name)s: %(message)s")
    try:
        return _dispatch(args)
    except InvariantError as exc:
        sys.stderr.write(f"internal invariant failed: {exc}\n")
        return 3
    except (FlgError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def main():
    sys.exit(run_cli())
