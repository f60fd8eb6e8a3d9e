"""Command line front end.

Exit codes: 0 success, 1 usage, 2 parse error, 3 resource cap exceeded,
4 oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import oracle
from .aft import (
    Approximator,
    Precision,
    Stats,
    compare_precision,
    exact_stable_fixpoints,
    kripke_kleene,
    well_founded,
)
from .dnf import DEFAULT_K, parse_prefix_dnf
from .errors import ProgramSyntaxError, ResourceCapError
from .generate import SHAPES, gen_random_program, gen_sigma2_program
from .lp import (
    NormalProgram,
    classify_ek,
    fitting_approximator,
    normalize,
    supported_models,
    tp,
    ultimate_lp,
)
from .program import Program, parse

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_CAP, EXIT_MISMATCH = 0, 1, 2, 3, 4

PAIR_METHODS = ("kk", "wf", "ultimate-kk", "ultimate-wf")
MODEL_METHODS = ("stable", "supported", "ultimate-stable")
METHODS = ("kk", "wf", "stable", "supported", "ultimate-kk", "ultimate-wf", "ultimate-stable")


@dataclass
class Caps:
    taut_vars: int = 20
    enum_atoms: int = 20
    pair_sweep: int = 12


@dataclass
class SemanticsResult:
    method: str
    atoms: list[str]
    lower: list[str] | None = None
    upper: list[str] | None = None
    truth: dict[str, str] | None = None
    models: list[list[str]] | None = None
    stats: dict[str, float] = field(default_factory=dict)
    results: list["SemanticsResult"] | None = None

    def to_dict(self) -> dict:
        out = {
            "method": self.method,
            "atoms": self.atoms,
            "lower": self.lower,
            "upper": self.upper,
            "truth": self.truth,
            "models": self.models,
            "stats": self.stats,
        }
        if self.results is not None:
            out["results"] = [r.to_dict() for r in self.results]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "SemanticsResult":
        results = data.get("results")
        return cls(
            method=data["method"],
            atoms=list(data["atoms"]),
            lower=data.get("lower"),
            upper=data.get("upper"),
            truth=data.get("truth"),
            models=data.get("models"),
            stats=dict(data.get("stats") or {}),
            results=None if results is None else [cls.from_dict(r) for r in results],
        )

    def to_text(self) -> str:
        if self.results is not None:
            return "\n".join(r.to_text() for r in self.results)
        lines = [f"method: {self.method}"]
        if self.truth is not None:
            lines += [f"{a}: {v}" for a, v in self.truth.items()]
        if self.models is not None:
            lines.append("models: [" + ", ".join("[" + ", ".join(m) + "]" for m in self.models) + "]")
        return "\n".join(lines) + "\n"


def _truth(atoms: list[str], lower: list[str], upper: list[str]) -> dict[str, str]:
    lo, hi = set(lower), set(upper)
    return {a: "true" if a in lo else "unknown" if a in hi else "false" for a in atoms}


def approximator_for(NP: NormalProgram, method: str, caps: Caps) -> Approximator:
    if method.startswith("ultimate"):
        return ultimate_lp(NP, cap=caps.taut_vars)
    return fitting_approximator(NP)


def solve(NP: NormalProgram, method: str, caps: Caps, timing: bool = True) -> SemanticsResult:
    if method == "all":
        results = [solve(NP, m, caps, timing) for m in METHODS]
        return SemanticsResult("all", list(NP.universe), results=results,
                               stats={k: sum(r.stats[k] for r in results) for k in results[0].stats})
    stats = Stats()
    start = time.perf_counter()
    A = approximator_for(NP, method, caps).counted(stats)
    result = SemanticsResult(method, list(NP.universe))
    if method in PAIR_METHODS:
        p = (well_founded if method.endswith("wf") else kripke_kleene)(A, stats)
        result.lower, result.upper = list(NP.atoms(p.lower)), list(NP.atoms(p.upper))
        result.truth = _truth(result.atoms, result.lower, result.upper)
    else:
        candidates = supported_models(NP, caps.enum_atoms)
        stats.iterations = len(candidates)
        models = candidates if method == "supported" else exact_stable_fixpoints(A, candidates=candidates)
        result.models = sorted(list(NP.atoms(m)) for m in models)
    elapsed = (time.perf_counter() - start) * 1000 if timing else 0.0
    result.stats = {"iterations": stats.iterations, "evaluations": stats.evaluations, "elapsed_ms": round(elapsed, 3)}
    return result


def _same_outcome(a: SemanticsResult, b: SemanticsResult) -> bool:
    return (a.lower, a.upper, a.models) == (b.lower, b.upper, b.models)


def compare(P: Program, Q: Program, caps: Caps) -> dict:
    universe = set(P.universe) | set(Q.universe)
    NP, NQ = normalize(P.with_atoms(universe)), normalize(Q.with_atoms(universe))
    if len(NP.universe) > caps.enum_atoms:
        raise ResourceCapError(f"{len(NP.universe)} atoms exceed the enumeration cap {caps.enum_atoms}",
                               caps.enum_atoms, len(NP.universe))
    tp_equal = all(tp(NP, I) == tp(NQ, I) for I in NP.lattice.elements)
    equal = {m: _same_outcome(solve(NP, m, caps, False), solve(NQ, m, caps, False)) for m in METHODS}
    return {
        "atoms": list(NP.universe),
        "tp_equal": tp_equal,
        "equal": equal,
        "ultimate_equal": all(v for m, v in equal.items() if m.startswith("ultimate")),
        "standard_equal": all(v for m, v in equal.items() if not m.startswith("ultimate")),
    }


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def compare_text(report: dict) -> str:
    lines = [f"tp-equal: {_yes(report['tp_equal'])}"]
    lines += [f"{m} equal: {_yes(v)}" for m, v in report["equal"].items()]
    lines.append(f"ultimate semantics equal: {_yes(report['ultimate_equal'])}")
    lines.append(f"standard semantics equal: {_yes(report['standard_equal'])}")
    return "\n".join(lines) + "\n"


def oracle_checks(NP: NormalProgram, caps: Caps) -> list[tuple[str, str | None]]:
    """Run every fast-path-versus-oracle comparison; ``(name, witness or None)``."""
    if len(NP.universe) > caps.pair_sweep:
        raise ResourceCapError(f"{len(NP.universe)} atoms exceed the pair sweep cap {caps.pair_sweep}",
                               caps.pair_sweep, len(NP.universe))
    atoms = NP.atoms
    fitting = fitting_approximator(NP)
    ultimate = ultimate_lp(NP, cap=caps.taut_vars)
    checks: list[tuple[str, str | None]] = []

    witness = None
    for I, J in NP.lattice.consistent_pairs():
        fast = ultimate.apply(I, J)
        slow = oracle.brute_ultimate(NP, I, J, cap=caps.taut_vars)
        if fast != tuple(slow):
            witness = (f"pair ({list(atoms(I))}, {list(atoms(J))}): ultimate_lp gives "
                       f"({list(atoms(fast[0]))}, {list(atoms(fast[1]))}), brute force gives "
                       f"({list(atoms(slow.lower))}, {list(atoms(slow.upper))})")
            break
    checks.append(("ultimate-vs-brute", witness))

    def model_check(name, fast, slow):
        fast, slow = set(fast), set(slow)
        if fast == slow:
            return name, None
        extra = sorted(list(atoms(m)) for m in fast - slow)
        missing = sorted(list(atoms(m)) for m in slow - fast)
        return name, f"fast path extra {extra}, missing {missing}"

    candidates = supported_models(NP, caps.enum_atoms)
    checks.append(model_check("supported-vs-brute", candidates, oracle.brute_supported_models(NP, caps.enum_atoms)))
    for A in (fitting, ultimate):
        checks.append(model_check(f"{A.name}-stable-vs-brute", exact_stable_fixpoints(A, candidates=candidates),
                                  oracle.brute_exact_stable(A, caps.enum_atoms)))
    checks.append(model_check("fitting-stable-vs-reduct", exact_stable_fixpoints(fitting, candidates=candidates),
                              oracle.brute_gl_stable_models(NP, caps.enum_atoms)))

    wf, ref = well_founded(fitting), oracle.brute_well_founded(NP)
    checks.append(("fitting-wf-vs-alternating", None if wf == ref else
                   f"well_founded gives ({list(atoms(wf.lower))}, {list(atoms(wf.upper))}), alternating "
                   f"fixpoint gives ({list(atoms(ref.lower))}, {list(atoms(ref.upper))})"))

    verdict = compare_precision(fitting, ultimate, cap=3 ** caps.pair_sweep)
    checks.append(("fitting-below-ultimate",
                   None if verdict in (Precision.LESS, Precision.EQUAL) else f"verdict {verdict.value}"))
    return checks


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


PHI_HELP = """\
phi is a DNF in prefix syntax:
  dnf  := or(conj, ...) | conj | false
  conj := and(lit, ...) | true | lit
  lit  := atom | not(atom)
example: --phi 'or(and(x1,y1),and(not(x1),not(y1)))' --xs x1
"""


def build_parser() -> argparse.ArgumentParser:
    caps = argparse.ArgumentParser(add_help=False)
    caps.add_argument("--max-taut-vars", type=int, default=20, help="atoms enumerated by a tautology check")
    caps.add_argument("--max-enum-atoms", type=int, default=20, help="atoms for model enumeration")
    caps.add_argument("--max-pair-sweep", type=int, default=12, help="atoms for full consistent-pair sweeps")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")

    parser = _Parser(prog="aftlp", description="Standard and ultimate semantics of normal logic programs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", parents=[caps, fmt], help="compute a semantics")
    p.add_argument("file", type=Path)
    p.add_argument("--method", choices=(*METHODS, "all"), default="all")
    p.add_argument("--no-timing", action="store_true", help="report elapsed_ms as 0 for reproducible output")

    p = sub.add_parser("compare", parents=[caps, fmt], help="compare two programs")
    p.add_argument("file_a", type=Path)
    p.add_argument("file_b", type=Path)

    p = sub.add_parser("oracle-check", parents=[caps], help="cross-check fast paths against brute force")
    p.add_argument("file", type=Path, nargs="?")
    p.add_argument("--random", type=int, metavar="N", help="check N random programs instead of a file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-atoms", type=int, default=6)

    p = sub.add_parser("classify", parents=[fmt], help="E_k membership")
    p.add_argument("file", type=Path)
    p.add_argument("--k", type=int, default=DEFAULT_K)

    p = sub.add_parser("gen", help="generate programs")
    gen = p.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    g = gen.add_parser("sigma2", help="exists-forall gadget program", epilog=PHI_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    g.add_argument("--phi", required=True)
    g.add_argument("--xs", required=True, help="comma separated existential atoms")
    g.add_argument("--ys", help="comma separated universal atoms (default: the other atoms of phi)")
    g = gen.add_parser("random", help="random program")
    g.add_argument("--atoms", type=int, default=5)
    g.add_argument("--rules", type=int, default=8)
    g.add_argument("--max-body", type=int, default=3)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--shape", choices=SHAPES, default="general")
    return parser


def _load(path: Path) -> Program:
    return parse(path.read_text(encoding="utf-8"))


def _split(text: str | None) -> list[str]:
    return [s.strip() for s in (text or "").split(",") if s.strip()]


def _run(args, out) -> int:
    caps = Caps(getattr(args, "max_taut_vars", 20), getattr(args, "max_enum_atoms", 20),
                getattr(args, "max_pair_sweep", 12))
    if args.command == "solve":
        result = solve(normalize(_load(args.file)), args.method, caps, timing=not args.no_timing)
        out.write(json.dumps(result.to_dict(), indent=2) + "\n" if args.format == "json" else result.to_text())
        return EXIT_OK

    if args.command == "compare":
        report = compare(_load(args.file_a), _load(args.file_b), caps)
        out.write(json.dumps(report, indent=2) + "\n" if args.format == "json" else compare_text(report))
        return EXIT_OK

    if args.command == "oracle-check":
        if (args.file is None) == (args.random is None):
            raise _UsageError("give either a program file or --random N")
        if args.file is not None:
            batch = [(str(args.file), _load(args.file))]
        else:
            rng = random.Random(args.seed)
            batch = []
            for i in range(args.random):
                n = rng.randint(1, args.max_atoms)
                P = gen_random_program(n, rng.randint(0, 2 * n), 3, rng.randrange(2 ** 31))
                batch.append((f"random #{i}", P))
        failed = 0
        for label, P in batch:
            for name, witness in oracle_checks(normalize(P), caps):
                if witness is not None:
                    failed += 1
                    out.write(f"FAIL {label} {name}: {witness}\n")
                elif args.file is not None:
                    out.write(f"PASS {name}\n")
        out.write(f"{'FAIL' if failed else 'PASS'}: {len(batch)} program(s), {failed} mismatch(es)\n")
        return EXIT_MISMATCH if failed else EXIT_OK

    if args.command == "classify":
        report = classify_ek(_load(args.file), args.k)
        if args.format == "json":
            out.write(json.dumps({"k": report.k, "conditions": report.conditions, "member": report.member,
                                  "violations": report.violations}, indent=2) + "\n")
            return EXIT_OK
        out.write(f"k: {report.k}\n")
        for atom, cond in report.conditions.items():
            out.write(f"{atom}: {'condition ' + str(cond) if cond else 'none'}\n")
        if report.member:
            out.write("member: yes (ultimate well-founded model computable in polynomial time)\n")
        else:
            out.write(f"member: no (violating atoms: {', '.join(report.violations)})\n")
        return EXIT_OK

    if args.command == "gen":
        if args.kind == "sigma2":
            phi = parse_prefix_dnf(args.phi)
            xs = _split(args.xs)
            ys = _split(args.ys) if args.ys is not None else sorted(phi.atoms() - set(xs))
            out.write(gen_sigma2_program(phi, xs, ys).to_text())
        else:
            out.write(gen_random_program(args.atoms, args.rules, args.max_body, args.seed, args.shape).to_text())
        return EXIT_OK
    raise _UsageError(f"unknown command {args.command}")


class _UsageError(Exception):
    pass


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args, out)
    except ProgramSyntaxError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceCapError as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (_UsageError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
