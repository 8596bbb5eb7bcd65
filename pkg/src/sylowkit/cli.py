"""Batch command-line front end.

Exit codes: 0 when every check passes, 1 when any check fails (the report
carries the witness), 2 on usage or resource errors.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .corpus import NAME_GRAMMAR, corpus_names, group_by_name
from .errors import (
    FormulaSyntaxError, PreconditionError, ResourceLimit, SylowKitError, UnboundVariable,
)
from .escalation import check_involution_dichotomy, find_conjugator
from .folang import DEFAULT_BUDGET, builtin_sentences, evaluate, load_formula_file, quantifier_depth
from .groups import centralizer_dimension, find_subgroup_conjugator
from .padic import find_odd_witness, valuation_parity_certificate
from .platonov import (
    nonconjugacy_certificate, order8_impossibility, platonov_generator,
    primes_3_mod_4, q8_embedding_refutation,
)
from .sylow import all_sylow_p, is_prime, verify_sylow_theorems

SCHEMA_VERSION = 1
DEFAULT_SEED = 20240101
RNG_NAME = "python-random-mt19937/v1"


@dataclass
class RunReport:
    command: str
    parameters: dict
    seed: int
    checks: list = field(default_factory=list)
    wall_time: float = 0.0

    def add(self, name: str, passed: bool, evidence=None) -> None:
        self.checks.append({"name": name, "status": "pass" if passed else "fail",
                            "evidence": evidence})

    def add_error(self, name: str, error: Exception) -> None:
        self.checks.append({"name": name, "status": "error",
                            "evidence": {"error": type(error).__name__, "message": str(error)}})

    @property
    def ok(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "schema_version": SCHEMA_VERSION,
            "tool": f"sylowkit {__version__}",
            "command": self.command,
            "parameters": self.parameters,
            "seed": self.seed,
            "rng": RNG_NAME,
            "passed": self.ok,
            "checks": self.checks,
        }
        if timing:
            d["wall_time"] = self.wall_time
        return d

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            line = f"[{c['status'].upper():5}] {c['name']}"
            if c["status"] != "pass" and c["evidence"] is not None:
                line += "\n        " + json.dumps(c["evidence"], sort_keys=True)
            lines.append(line)
        passed = sum(c["status"] == "pass" for c in self.checks)
        lines.append(f"{self.command}: {passed}/{len(self.checks)} checks passed "
                     f"in {self.wall_time:.2f}s (seed {self.seed})")
        return "\n".join(lines)


# -- commands ----------------------------------------------------------------

def _groups_from(args) -> list[str]:
    if getattr(args, "group", None):
        return [args.group]
    return corpus_names(args.max_order)


def cmd_dichotomy(args, report: RunReport) -> None:
    sentence = builtin_sentences()["dichotomy"]
    for name in _groups_from(args):
        G = group_by_name(name)
        direct = check_involution_dichotomy(G)
        fo = evaluate(G, sentence, "dichotomy", budget=args.budget)
        evidence = direct.to_dict(G)
        evidence["first_order_truth"] = fo.truth
        report.add(f"dichotomy {name}", direct.ok and fo.truth, evidence)


def cmd_conjugator(args, report: RunReport) -> None:
    if args.p != 2:
        raise PreconditionError("intersection escalation is only defined for p = 2")
    G = group_by_name(args.group)
    sylows = all_sylow_p(G, 2)
    pairs = [(P, Q) for P in sylows for Q in sylows if P != Q]
    if not args.all_pairs:
        pairs = pairs[:1]
    if not pairs:
        report.add(f"{G.label}: unique Sylow 2-subgroup", True, {"count": len(sylows)})
    for P, Q in pairs:
        label = f"{G.label} pair {sylows.index(P)}->{sylows.index(Q)}"
        trace = find_conjugator(G, P, Q)
        oracle = find_subgroup_conjugator(G, P, Q)
        ok = trace.verify() and trace.is_monotone() and oracle is not None
        evidence = trace.to_dict() if (args.all_pairs is False or not ok) else {
            "conjugator": G.name(trace.conjugator), "rounds": trace.rounds}
        report.add(label, ok, evidence)


def cmd_sylow(args, report: RunReport) -> None:
    G = group_by_name(args.group)
    if not is_prime(args.p):
        raise PreconditionError(f"{args.p} is not prime")
    rep = verify_sylow_theorems(G, args.p)
    subs = all_sylow_p(G, args.p)
    evidence = rep.to_dict()
    evidence["subgroups"] = [[G.name(x) for x in S.elements] for S in subs]
    report.add(f"Sylow {args.p}-subgroups of {G.label}", rep.ok and len(subs) == rep.count, evidence)


def _prime_list(args) -> list[int]:
    if args.primes:
        try:
            return [int(x) for x in args.primes.split(",") if x.strip()]
        except ValueError as exc:
            raise PreconditionError(f"bad prime list {args.primes!r}") from exc
    return primes_3_mod_4(args.count)


def cmd_platonov(args, report: RunReport) -> None:
    primes = _prime_list(args)
    for p in primes:
        gen = platonov_generator(p)
        report.add(f"generator p={p}", gen.order == 4, gen.to_dict())
    if args.pairs == "all":
        pairs = list(itertools.combinations(primes, 2))
    elif args.pairs == "consecutive":
        pairs = list(zip(primes, primes[1:]))
    else:
        pairs = []
    for p_i, p_j in pairs:
        cert = nonconjugacy_certificate(p_i, p_j, samples=args.samples, seed=args.seed)
        ok = cert.passed and cert.verify() and cert.diamond_matches()
        evidence = cert.to_dict() if (args.full or not ok) else {
            "case1": cert.case1["final"]["text"], "case2": cert.case2["final"]["text"],
            "refutations": {k: v["passed"] for k, v in cert.refutations.items()},
            "sampled_conjugators": cert.sampling["sampled"],
        }
        report.add(f"non-conjugacy p_i={p_i} p_j={p_j}", ok, evidence)


def cmd_valuation_lemma(args, report: RunReport) -> None:
    p = args.p
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if p % 4 == 3:
        cert = valuation_parity_certificate(p, args.samples, args.seed)
        report.add(f"v_{p}(a^2+b^2) even on {args.samples} samples",
                   cert.even_count == args.samples, cert.to_dict())
    else:
        witness = find_odd_witness(p, args.samples, args.seed)
        report.add(f"odd-valuation witness for p={p} (hypothesis is necessary)",
                   witness is not None, None if witness is None else witness.to_dict())


def cmd_sl2q(args, report: RunReport) -> None:
    o8 = order8_impossibility(args.samples, args.seed)
    report.add("no element of order 8 in SL2(Q)", o8["passed"], o8)
    q8 = q8_embedding_refutation(args.samples, args.seed)
    report.add("Q8 does not embed in SL2(Q)", q8["passed"], q8)
    survey = o8["finite_order_survey"]
    report.add("finite orders are {1,2,3,4,6}",
               set(survey["orders"]) <= {"1", "2", "3", "4", "6"}, survey)
    report.add("only involution is -I",
               set(survey["involution_classes"]) <= {"identity", "central involution"},
               survey["involution_classes"])


def cmd_fo_check(args, report: RunReport) -> None:
    G = group_by_name(args.group)
    if args.builtin:
        sentences = builtin_sentences()
        if args.builtin not in sentences:
            raise PreconditionError(f"unknown builtin {args.builtin!r}; "
                                    f"choose from {', '.join(sentences)}")
        f, name = sentences[args.builtin], args.builtin
    else:
        f, name = load_formula_file(args.formula_file), args.formula_file
    res = evaluate(G, f, name, budget=args.budget)
    report.add(f"{name} holds in {G.label}", res.truth, res.to_dict())


def cmd_centralizer_dim(args, report: RunReport) -> None:
    G = group_by_name(args.group)
    cd = centralizer_dimension(G)
    report.add(f"centralizer dimension of {G.label}", True, {"value": cd})
    sentences = builtin_sentences()
    for c in (cd - 1, cd):
        key = f"cdim_le({c})"
        if key not in sentences or G.order ** quantifier_depth(sentences[key]) > args.budget:
            continue
        res = evaluate(G, sentences[key], key, budget=args.budget)
        report.add(f"{key} agrees with the chain search", res.truth == (cd <= c), res.to_dict())


COMMANDS = {
    "dichotomy": cmd_dichotomy,
    "conjugator": cmd_conjugator,
    "sylow": cmd_sylow,
    "platonov": cmd_platonov,
    "valuation-lemma": cmd_valuation_lemma,
    "sl2q-properties": cmd_sl2q,
    "fo-check": cmd_fo_check,
    "centralizer-dim": cmd_centralizer_dim,
}


GLOBAL_DEFAULTS = {"json": False, "seed": DEFAULT_SEED, "budget": DEFAULT_BUDGET, "timing": False}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print the report as one JSON object")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS,
                        help="first-order evaluation budget (assignments)")
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                        help="include wall time in JSON (breaks byte-identical reruns)")

    parser = argparse.ArgumentParser(
        prog="sylowkit", parents=[common],
        description="Verification runs for Sylow 2-subgroup conjugacy and SL2(Q) examples.",
        epilog=f"group names: {NAME_GRAMMAR}")
    parser.add_argument("--version", action="version", version=f"sylowkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dichotomy", parents=[common], help="involution dichotomy on groups")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--max-order", type=int)
    g.add_argument("--group")

    p = sub.add_parser("conjugator", parents=[common], help="conjugate Sylow 2-subgroups")
    p.add_argument("--group", required=True)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--all-pairs", action="store_true")

    p = sub.add_parser("sylow", parents=[common], help="Sylow p-subgroups and the Sylow theorems")
    p.add_argument("--group", required=True)
    p.add_argument("--p", type=int, required=True)

    p = sub.add_parser("platonov", parents=[common], help="order-4 subgroups of SL2(Q)")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--primes", help="comma-separated primes congruent to 3 mod 4")
    g.add_argument("--count", type=int, help="use the first K such primes")
    p.add_argument("--pairs", choices=("none", "consecutive", "all"), default="consecutive")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--full", action="store_true", help="include full derivations")

    p = sub.add_parser("valuation-lemma", parents=[common], help="parity of v_p(a^2+b^2)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--samples", type=int, default=10 ** 4)

    p = sub.add_parser("sl2q-properties", parents=[common], help="finite-order facts in SL2(Q)")
    p.add_argument("--samples", type=int, default=1000)

    p = sub.add_parser("fo-check", parents=[common], help="evaluate a first-order sentence")
    p.add_argument("--group", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--builtin")
    g.add_argument("--formula-file")

    p = sub.add_parser("centralizer-dim", parents=[common], help="centralizer dimension")
    p.add_argument("--group", required=True)
    return parser


def run(argv: Optional[list] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    # global flags may sit before or after the subcommand, so defaults are filled in here
    for key, value in GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    params = {k: v for k, v in sorted(vars(args).items())
              if k not in ("command", "json", "seed", "timing")}
    report = RunReport(args.command, params, args.seed)
    start = time.perf_counter()
    try:
        COMMANDS[args.command](args, report)
    except (PreconditionError, ResourceLimit, FormulaSyntaxError, UnboundVariable) as exc:
        msg = f"sylowkit {args.command}: {type(exc).__name__}: {exc}"
        if "group factor" in str(exc) or "group name" in str(exc):
            msg += f"\ncorpus grammar: {NAME_GRAMMAR}"
        print(msg, file=stderr)
        return 2
    except OSError as exc:
        print(f"sylowkit {args.command}: {exc}", file=stderr)
        return 2
    except SylowKitError as exc:
        report.add_error(args.command, exc)
    report.wall_time = time.perf_counter() - start
    if args.json:
        print(json.dumps(report.to_dict(args.timing), sort_keys=True, indent=2), file=stdout)
    else:
        print(report.to_text(), file=stdout)
    return 0 if report.ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
