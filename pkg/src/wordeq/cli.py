"""Command-line front end; every analysis is a subcommand with text or JSON output.

Exit codes: 0 success, 1 malformed input, 2 a guaranteed identity failed
(which indicates an implementation bug, not bad data).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .covers import (
    balance_profile,
    chain_bound,
    chain_bound_corollary,
    chain_check,
    cover_pair,
    graph_components,
)
from .equations import (
    coefficient_matrix,
    parse_system,
    q_polynomial,
    rank_polymatrix,
    residual,
)
from .errors import InputFormatError, TheoremCheckError
from .genpoly import minor_t
from .oracle import (
    EnumerationBudget,
    enumerate_solutions,
    independence_check,
    power_identity_check,
    rank_annotate,
)
from .polynomials import encode_poly, encode_ratfun, fine_wilf_check
from .transforms import factorize_solution
from .words import (
    LengthType,
    commute_check,
    parse_morphism,
    parse_word,
    primitive_root,
)


class _ArgumentError(Exception):
    def __init__(self, message):
        super().__init__(message)


class _Parser(argparse.ArgumentParser):
    """argparse variant that reports usage problems as input errors (exit 1)."""

    def error(self, message):
        raise _ArgumentError(message)


def _read(path: str) -> str:
    p = Path(path)
    if not p.exists():
        raise InputFormatError(f"no such file: {path}")
    return p.read_text()


def _parse_lengths(text: str) -> LengthType:
    try:
        return LengthType(tuple(int(p) for p in text.split(",")))
    except ValueError as exc:
        raise InputFormatError(f"bad length vector {text!r}: {exc}") from None


def _parse_alphabet(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise InputFormatError(f"bad alphabet {text!r}") from None


def _budget(args) -> EnumerationBudget:
    return EnumerationBudget(
        alphabet=_parse_alphabet(args.alphabet), max_total_length=args.max_total
    )


def _add_budget_args(parser):
    parser.add_argument("--alphabet", default="1,2", help="comma-separated letters")
    parser.add_argument("--max-total", type=int, default=10, help="total image length bound")


def _load_pair(path: str):
    eqs, names = parse_system(_read(path))
    if len(eqs) != 2:
        raise InputFormatError(f"{path}: expected exactly two equations, found {len(eqs)}")
    return eqs[0], eqs[1], names


def _load_single(path: str):
    eqs, names = parse_system(_read(path))
    if len(eqs) != 1:
        raise InputFormatError(f"{path}: expected exactly one equation, found {len(eqs)}")
    return eqs[0], names


def _morphism_json(h, names):
    return {names[i]: h.images[i].to_text() for i in range(h.n)}


def build_parser() -> argparse.ArgumentParser:
    # --json is accepted both before and after the subcommand; the
    # trailing copy suppresses its default so it cannot shadow a leading one
    json_flag = argparse.ArgumentParser(add_help=False)
    json_flag.add_argument(
        "--json", action="store_true", default=argparse.SUPPRESS,
        help="machine-readable report",
    )
    root = _Parser(prog="wordeq", description=__doc__)
    root.add_argument("--json", action="store_true", help="machine-readable report")
    sub = root.add_subparsers(dest="command", required=True)

    def leaf(group, name, **kwargs):
        return group.add_parser(name, parents=[json_flag], **kwargs)

    p = leaf(sub, "encode", help="polynomial encoding of a word")
    p.add_argument("word")

    p = leaf(sub, "ratfun", help="reduced rational encoding of a nonempty word")
    p.add_argument("word")

    p = leaf(sub, "primroot", help="primitive root of a nonempty word")
    p.add_argument("word")

    p = leaf(sub, "commute", help="whether two words share a primitive root")
    p.add_argument("u")
    p.add_argument("v")

    p = leaf(sub, "finewilf", help="periodicity agreement test for two words")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("len", type=int)

    eq = sub.add_parser("eq", help="single-equation analyses").add_subparsers(
        dest="subcommand", required=True
    )
    p = leaf(eq, "coeffs", help="coefficient polynomials at a length type")
    p.add_argument("eqfile")
    p.add_argument("--lengths", required=True)
    p = leaf(eq, "rank", help="rank of the coefficient matrix of a system")
    p.add_argument("systemfile")
    p.add_argument("--lengths", required=True)
    p = leaf(eq, "verify", help="test a morphism against an equation")
    p.add_argument("eqfile")
    p.add_argument("morphismfile")

    pair = sub.add_parser("pair", help="two-equation analyses").add_subparsers(
        dest="subcommand", required=True
    )
    p = leaf(pair, "minor", help="2x2 minor of the symbolic coefficient matrix")
    p.add_argument("pairfile")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-l", type=int, required=True)
    p = leaf(pair, "cover", help="hyperplane cover of maximal-rank length types")
    p.add_argument("pairfile")
    p.add_argument("--full-pairing", action="store_true")
    p.add_argument("-k", type=int, default=None)
    p.add_argument("-l", type=int, default=None)

    system = sub.add_parser("system", help="system analyses").add_subparsers(
        dest="subcommand", required=True
    )
    p = leaf(system, "graph", help="components of the leading-unknown graph")
    p.add_argument("systemfile")
    p = leaf(system, "enumerate", help="exhaustive solutions within a budget")
    p.add_argument("systemfile")
    _add_budget_args(p)
    p.add_argument("--rank", type=int, default=None)
    p.add_argument("--lengths", default=None)
    p.add_argument("--jsonl", action="store_true", help="print one JSON line per solution")
    p = leaf(system, "independent", help="leave-one-out independence probe")
    p.add_argument("systemfile")
    _add_budget_args(p)

    chain = sub.add_parser("chain", help="chain-length analyses").add_subparsers(
        dest="subcommand", required=True
    )
    p = leaf(chain, "bound", help="chain bound from occurrence counts")
    p.add_argument("eqfile")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-l", type=int, required=True)
    p = leaf(chain, "check", help="strict descent of prefix solution sets")
    p.add_argument("systemfile")
    _add_budget_args(p)

    p = leaf(sub, "powerid", help="power identity certificate")
    p.add_argument("specfile")
    p.add_argument("--indices", required=True)

    p = leaf(sub, "factorize", help="factor a solution into elementary steps")
    p.add_argument("eqfile")
    p.add_argument("morphismfile")

    return root


def _parse_powerid_spec(text: str):
    parts = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise InputFormatError(f"line {lineno}: expected 'key: words', got {raw!r}")
        key, _, rest = line.partition(":")
        key = key.strip()
        if key not in ("s", "t", "u", "v"):
            raise InputFormatError(f"line {lineno}: unknown key {key!r}")
        words = [parse_word(w) for w in rest.split(",")] if rest.strip() else []
        parts[key] = words
    missing = [k for k in ("s", "t", "u", "v") if k not in parts]
    if missing:
        raise InputFormatError(f"power identity file lacks keys {missing}")
    return parts


def _dispatch(args) -> dict:
    cmd = args.command
    results: dict = {}
    checks: list[dict] = []
    inputs: dict = {}

    if cmd == "encode":
        w = parse_word(args.word)
        inputs["word"] = w.to_text()
        results["polynomial"] = encode_poly(w).to_text()
    elif cmd == "ratfun":
        w = parse_word(args.word)
        if not w.letters:
            raise InputFormatError("the rational encoding needs a nonempty word")
        inputs["word"] = w.to_text()
        results["rational_function"] = encode_ratfun(w).to_text()
    elif cmd == "primroot":
        w = parse_word(args.word)
        if not w.letters:
            raise InputFormatError("the primitive root needs a nonempty word")
        inputs["word"] = w.to_text()
        root = primitive_root(w)
        results["primitive_root"] = root.to_text()
        results["exponent"] = len(w) // len(root)
    elif cmd == "commute":
        u, v = parse_word(args.u), parse_word(args.v)
        if not u.letters or not v.letters:
            raise InputFormatError("commutation needs nonempty words")
        inputs["u"], inputs["v"] = u.to_text(), v.to_text()
        agree = commute_check(u, v)
        results["commute"] = agree
        results["ratfun_equal"] = encode_ratfun(u) == encode_ratfun(v)
        checks.append(
            {
                "name": "root and rational encodings agree",
                "passed": results["commute"] == results["ratfun_equal"],
            }
        )
        if results["commute"] != results["ratfun_equal"]:
            raise TheoremCheckError("commutation criteria disagree", report=results)
    elif cmd == "finewilf":
        u, v = parse_word(args.u), parse_word(args.v)
        if not u.letters or not v.letters:
            raise InputFormatError("the periodicity test needs nonempty words")
        inputs.update({"u": u.to_text(), "v": v.to_text(), "len": args.len})
        verdict = fine_wilf_check(u, v, args.len)
        results.update(
            {
                "bound": verdict.bound,
                "agreement": verdict.agreement,
                "premise_holds": verdict.premise_holds,
                "roots_equal": verdict.roots_equal,
            }
        )
    elif cmd == "eq" and args.subcommand == "coeffs":
        eq, names = _load_single(args.eqfile)
        lt = _parse_lengths(args.lengths)
        inputs["equation"] = eq.to_text(names)
        inputs["lengths"] = list(lt)
        results["coefficients"] = {
            names[x - 1]: q_polynomial(eq, x, lt).to_text() for x in range(1, eq.n + 1)
        }
    elif cmd == "eq" and args.subcommand == "rank":
        eqs, names = parse_system(_read(args.systemfile))
        lt = _parse_lengths(args.lengths)
        inputs["system"] = [e.to_text(names) for e in eqs]
        inputs["lengths"] = list(lt)
        matrix = coefficient_matrix(eqs, lt)
        results["rank"] = rank_polymatrix(matrix)
        results["matrix"] = [[p.to_text() for p in row] for row in matrix.entries]
    elif cmd == "eq" and args.subcommand == "verify":
        eq, names = _load_single(args.eqfile)
        h = parse_morphism(_read(args.morphismfile), names=names, n=eq.n)
        inputs["equation"] = eq.to_text(names)
        inputs["morphism"] = _morphism_json(h, names)
        res = residual(eq, h)
        solves = eq.holds_for(h)
        results["residual"] = res.to_text()
        results["solves"] = solves
        results["length_type"] = list(h.length_type())
        checks.append({"name": "zero residual iff solution", "passed": res.is_zero == solves})
        if res.is_zero != solves:
            raise TheoremCheckError("residual and direct verdicts disagree", report=results)
    elif cmd == "pair" and args.subcommand == "minor":
        eq1, eq2, names = _load_pair(args.pairfile)
        inputs["equations"] = [eq1.to_text(names), eq2.to_text(names)]
        inputs["k"], inputs["l"] = args.k, args.l
        t = minor_t(eq1, eq2, args.k, args.l)
        results["minor"] = t.to_text()
        results["term_count"] = t.term_count
    elif cmd == "pair" and args.subcommand == "cover":
        eq1, eq2, names = _load_pair(args.pairfile)
        inputs["equations"] = [eq1.to_text(names), eq2.to_text(names)]
        kl = None
        if (args.k is None) != (args.l is None):
            raise InputFormatError("give both -k and -l or neither")
        if args.k is not None:
            kl = (args.k, args.l)
        cover = cover_pair(eq1, eq2, kl=kl, full_pairing=args.full_pairing)
        results.update(cover.to_report())
        if not args.full_pairing:
            checks.append(
                {"name": "plane count within bound", "passed": len(cover.planes) <= cover.bound}
            )
    elif cmd == "system" and args.subcommand == "graph":
        eqs, names = parse_system(_read(args.systemfile))
        inputs["system"] = [e.to_text(names) for e in eqs]
        results["components"] = graph_components(eqs)
        results["edges"] = [[names[e.lhs[0] - 1], names[e.rhs[0] - 1]] for e in eqs]
    elif cmd == "system" and args.subcommand == "enumerate":
        eqs, names = parse_system(_read(args.systemfile))
        budget = _budget(args)
        inputs["system"] = [e.to_text(names) for e in eqs]
        inputs["budget"] = budget.describe()
        sols = enumerate_solutions(eqs, budget)
        sols = rank_annotate(sols)
        if args.lengths is not None:
            sols = sols.of_length_type(_parse_lengths(args.lengths))
            inputs["lengths"] = args.lengths
        if args.rank is not None:
            sols = sols.of_rank(args.rank)
            inputs["rank"] = args.rank
        results["candidates_visited"] = sols.candidates_visited
        results["solution_count"] = len(sols.solutions)
        results["solutions"] = [
            {
                "images": [w.to_text() for w in h.images],
                "length_type": list(h.length_type()),
                "rank": sols.ranks[i],
            }
            for i, h in enumerate(sols.solutions)
        ]
        if args.jsonl:
            results["jsonl"] = sols.to_json_lines()
    elif cmd == "system" and args.subcommand == "independent":
        eqs, names = parse_system(_read(args.systemfile))
        budget = _budget(args)
        inputs["system"] = [e.to_text(names) for e in eqs]
        inputs["budget"] = budget.describe()
        results.update(independence_check(eqs, budget))
    elif cmd == "chain" and args.subcommand == "bound":
        eq, names = _load_single(args.eqfile)
        inputs["equation"] = eq.to_text(names)
        inputs["k"], inputs["l"] = args.k, args.l
        results["bound"] = chain_bound(eq, args.k, args.l)
        results["three_unknown_chain_bound"] = chain_bound_corollary(eq, args.k, args.l)
        results["balance_profile"] = list(balance_profile(eq))
    elif cmd == "chain" and args.subcommand == "check":
        eqs, names = parse_system(_read(args.systemfile))
        budget = _budget(args)
        inputs["system"] = [e.to_text(names) for e in eqs]
        inputs["budget"] = budget.describe()
        results.update(chain_check(eqs, budget))
    elif cmd == "powerid":
        parts = _parse_powerid_spec(_read(args.specfile))
        try:
            indices = {int(p) for p in args.indices.split(",")}
        except ValueError:
            raise InputFormatError(f"bad index set {args.indices!r}") from None
        inputs["spec"] = {k: [w.to_text() for w in ws] for k, ws in parts.items()}
        inputs["indices"] = sorted(indices)
        results.update(
            power_identity_check(parts["s"], parts["t"], parts["u"], parts["v"], indices)
        )
    elif cmd == "factorize":
        eq, names = _load_single(args.eqfile)
        h = parse_morphism(_read(args.morphismfile), names=names, n=eq.n)
        inputs["equation"] = eq.to_text(names)
        inputs["morphism"] = _morphism_json(h, names)
        try:
            fact = factorize_solution(eq, h)
        except ValueError as exc:
            raise InputFormatError(str(exc)) from None
        results["script"] = fact.to_text(names)
        results["erased"] = fact.s
        results["singular_steps"] = fact.t
        results["rank_bound"] = fact.rank_bound
        checks.append({"name": "recomposition matches", "passed": fact.recompose() == h})
    else:  # pragma: no cover - argparse enforces the command set
        raise InputFormatError(f"unknown command {cmd!r}")

    return {"inputs": inputs, "results": results, "checks": checks}


def _human_lines(report: dict) -> list[str]:
    lines = [f"command: {report['command']}"]
    for key, value in report["inputs"].items():
        lines.append(f"  {key}: {value}")
    lines.append("results:")

    def emit(prefix, value):
        if isinstance(value, dict):
            lines.append(f"{prefix}:")
            for k, v in value.items():
                emit(f"{prefix}  {k}", v)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{prefix}: [{len(value)} entries]")
            for v in value[:20]:
                lines.append(f"{prefix}  - {json.dumps(v)}")
            if len(value) > 20:
                lines.append(f"{prefix}    ... {len(value) - 20} more")
        else:
            lines.append(f"{prefix}: {value}")

    for key, value in report["results"].items():
        emit(f"  {key}", value)
    for check in report["checks"]:
        mark = "ok" if check["passed"] else "FAILED"
        lines.append(f"check [{mark}] {check['name']}")
    lines.append(f"elapsed_ms: {report['elapsed_ms']}")
    return lines


def run(argv) -> int:
    """Entry point used by tests; returns the process exit code."""
    parser = build_parser()
    started = time.perf_counter()
    try:
        args = parser.parse_args(argv)
        body = _dispatch(args)
    except _ArgumentError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except TheoremCheckError as exc:
        print(f"theorem check failed: {exc}", file=sys.stderr)
        return 2
    except (InputFormatError, OSError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    elapsed = round((time.perf_counter() - started) * 1000.0, 3)
    command = " ".join(
        [args.command] + ([args.subcommand] if getattr(args, "subcommand", None) else [])
    )
    report = {
        "command": command,
        "inputs": body["inputs"],
        "results": body["results"],
        "checks": body["checks"],
        "elapsed_ms": elapsed,
    }
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(_human_lines(report)))
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
