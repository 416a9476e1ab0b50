"""Command-line front end.

Subcommands: eval, measure, check-axioms, gowers, regularity, hypergraph,
ap-encode, limit, density, furstenberg.  Global flags on every subcommand:
--budget (work units; the AML_BUDGET environment variable overrides the
default), --threads, --seed, --format {text,records}, --trace.

Output formats: "text" is human-oriented; "records" prints one key=value
pair per line (indexed keys for list items), deterministic for fixed inputs
and seed regardless of thread count.  All reported comparisons are exact
rationals; decimal renderings are display-only and labeled approx.

Exit codes: 0 success, 1 a checked property failed, 2 parse error (arguments
or input files), 3 semantic error (unbound variable, out-of-range binding,
mismatched signature), 4 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import axioms, gowers, limits, regularity
from .parser import ParseError, parse_formula, parse_structure
from .semantics import Budget, BudgetExceeded, EvalError, Evaluator, extension
from .structures import FiniteStructure, VFlag, measure
from .syntax import Meas, Not, free_vars

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_SEMANTIC = 3
EXIT_BUDGET = 4

DEFAULT_BUDGET = 10 ** 7

_FLAG_DISPLAY = {VFlag.PLUS: "⊕", VFlag.MINUS: "⊖", VFlag.DOT: "⊙"}


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read_file(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e}", EXIT_PARSE) from None


def _formula_arg(text: str) -> str:
    """A formula argument is literal text, or @path to read it from a file."""
    if text.startswith("@"):
        return _read_file(text[1:])
    return text


def _parse_rational(text: str, what: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise CliError(f"bad {what} {text!r}: expected a rational like 2/3",
                       EXIT_PARSE) from None


def _parse_int_list(text: str, what: str) -> list[int]:
    try:
        return [int(w) for w in text.replace(",", " ").split()]
    except ValueError:
        raise CliError(f"bad {what} {text!r}: expected integers", EXIT_PARSE) from None


def _parse_rational_list(text: str, what: str) -> list[Fraction]:
    try:
        return [Fraction(w) for w in text.replace(",", " ").split()]
    except (ValueError, ZeroDivisionError):
        raise CliError(f"bad {what} {text!r}: expected rationals", EXIT_PARSE) from None


def _element_set(args_e: str, what: str = "--E") -> set[int]:
    """An integer-set argument: inline integers, or a path to a file of them."""
    stripped = args_e.strip()
    head = stripped.replace(",", " ").split()
    if head and all(w.lstrip("-").isdigit() for w in head):
        return set(_parse_int_list(stripped, what))
    return set(_parse_int_list(_read_file(stripped), what))


class _Out:
    """Collects text lines and key=value records; prints one of them."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []
        self.records: list[tuple[str, object]] = []

    def text(self, line: str) -> None:
        self.lines.append(line)

    def record(self, key: str, value) -> None:
        if isinstance(value, bool):
            value = "true" if value else "false"
        self.records.append((key, value))

    def flush(self) -> None:
        if self.fmt == "records":
            for key, value in self.records:
                print(f"{key}={value}")
        else:
            for line in self.lines:
                print(line)


def _load_structure(path: str) -> FiniteStructure:
    return parse_structure(_read_file(path))


def _parse_bindings(text: str | None, m: FiniteStructure) -> dict[str, int]:
    if not text:
        return {}
    val: dict[str, int] = {}
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        name, eq, value = piece.partition("=")
        if not eq:
            raise CliError(f"bad binding {piece!r}: expected name=element", EXIT_PARSE)
        try:
            elem = int(value)
        except ValueError:
            raise CliError(f"bad binding value {value!r}", EXIT_PARSE) from None
        if not 0 <= elem < m.n:
            raise CliError(f"binding {name}={elem} outside universe 0..{m.n - 1}",
                           EXIT_SEMANTIC)
        val[name.strip()] = elem
    return val


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_eval(args, out: _Out) -> int:
    m = _load_structure(args.structure)
    phi = parse_formula(_formula_arg(args.formula), m.signature())
    val = _parse_bindings(args.bind, m)
    trace: list = []
    ev = Evaluator(m, budget=Budget(args.budget), trace=trace)
    missing = free_vars(phi) - set(val)
    if missing:
        raise EvalError(f"unbound variables: {', '.join(sorted(missing))}")
    verdict = ev.eval(phi, val)
    out.record("verdict", verdict)
    root = phi.body if isinstance(phi, Not) else phi
    summary = "true" if verdict else "false"
    if isinstance(root, Meas) and trace:
        top = trace[-1]
        summary += (f" (mu = {top.mu}, {top.cmp.value} {top.threshold}, "
                    f"flag {_FLAG_DISPLAY[top.flag]})")
        out.record("mu", top.mu)
        out.record("cmp", top.cmp.value)
        out.record("threshold", top.threshold)
        out.record("flag", top.flag.value)
    out.text(summary)
    if args.trace:
        for i, entry in enumerate(trace):
            line = (f"m[{','.join(entry.vars)}] {entry.cmp.value} {entry.threshold}: "
                    f"count {entry.count}, mu = {entry.mu}, flag "
                    f"{_FLAG_DISPLAY[entry.flag]} -> {str(entry.verdict).lower()}")
            out.text(f"  trace {i}: {line}")
            out.record(f"trace.{i}", line)
    return EXIT_OK


def _cmd_measure(args, out: _Out) -> int:
    m = _load_structure(args.structure)
    phi = parse_formula(_formula_arg(args.formula), m.signature())
    xs = tuple(args.vars.replace(",", " ").split()) if args.vars \
        else tuple(sorted(free_vars(phi)))
    if not xs:
        raise CliError("formula is closed; nothing to measure over "
                       "(use eval instead)", EXIT_SEMANTIC)
    ext = extension(m, phi, xs, budget=Budget(args.budget))
    mu = measure(ext)
    out.text(f"mu = {mu} (count {len(ext)} of {m.n ** len(xs)})")
    out.record("mu", mu)
    out.record("count", len(ext))
    out.record("tuples", m.n ** len(xs))
    return EXIT_OK


def _parse_schemes(text: str) -> tuple[str, ...]:
    chosen: list[str] = []
    for name in text.split(","):
        name = name.strip()
        if not name:
            continue
        if name in axioms.GROUPS:
            chosen.extend(axioms.GROUPS[name])
        elif name in axioms.ALL_SCHEMES:
            chosen.append(name)
        else:
            raise CliError(
                f"unknown scheme {name!r}: expected group "
                f"{'/'.join(axioms.GROUPS)} or scheme id", EXIT_PARSE)
    if not chosen:
        raise CliError("empty scheme selection", EXIT_PARSE)
    return tuple(chosen)


def _cmd_check_axioms(args, out: _Out) -> int:
    schemes = _parse_schemes(args.schemes)
    ms = [_load_structure(path) for path in args.structures]
    budget = Budget(args.budget)
    share = [args.count // len(ms)] * len(ms)
    for i in range(args.count % len(ms)):
        share[i] += 1
    held = total = 0
    failures: list[str] = []
    for which, m in enumerate(ms):
        if not share[which]:
            continue
        instances = axioms.generate_instances(args.seed + which, share[which],
                                              schemes=schemes, sig=m.signature())
        report = axioms.check_soundness(m, instances, budget=budget,
                                        threads=args.threads)
        total += len(instances)
        held += sum(1 for r in report.results if r.holds)
        failures.extend(f"{f.instance.scheme} on {args.structures[which]}"
                        for f in report.failures)
    out.text(f"{held}/{total} hold")
    out.record("held", held)
    out.record("total", total)
    for i, f in enumerate(failures[:20]):
        out.text(f"  FAILED: {f}")
        out.record(f"failure.{i}", f)
    return EXIT_OK if held == len(instances) else EXIT_FAIL


def _load_group(spec: str) -> gowers.AbelianGroup:
    """A group argument: z<n> for the cyclic group, or a file whose content
    is "group <n>" followed by n*n addition-table entries."""
    low = spec.strip().lower()
    if low.startswith("z") and low[1:].isdigit():
        return gowers.AbelianGroup.cyclic(int(low[1:]))
    words = _read_file(spec).split()
    if len(words) < 2 or words[0] != "group":
        raise CliError(f"group file {spec!r} must start with 'group <n>'", EXIT_PARSE)
    try:
        n = int(words[1])
        entries = [int(w) for w in words[2:]]
    except ValueError:
        raise CliError(f"bad group table in {spec!r}", EXIT_PARSE) from None
    if len(entries) != n * n:
        raise CliError(f"group table needs {n * n} entries, got {len(entries)}",
                       EXIT_PARSE)
    try:
        return gowers.AbelianGroup.from_table(
            [entries[i * n:(i + 1) * n] for i in range(n)])
    except gowers.GowersError as e:
        raise CliError(str(e), EXIT_SEMANTIC) from None


def _cmd_gowers(args, out: _Out) -> int:
    group = _load_group(args.group)
    values = _parse_rational_list(args.g, "--g")
    if len(values) != group.n:
        raise CliError(f"--g needs {group.n} values for this group", EXIT_SEMANTIC)
    g = gowers.GridFunction(group.n, 1, tuple(values), ())
    k = args.k
    power = gowers.gowers_norm_pow(group, g, k)
    power_subst = gowers.gowers_norm_pow_subst(group, g, k)
    agree = power == power_subst
    approx = gowers.decimal_root(power, 1 << k) if power >= 0 else "undefined"
    out.text(f"U^{k} power = {power}" + ("" if agree else
                                         f"  [MISMATCH: substituted form {power_subst}]"))
    out.text(f"norm approx {approx}")
    out.record("power", power)
    out.record("power_subst", power_subst)
    out.record("agree", agree)
    out.record("approx", approx)
    return EXIT_OK if agree else EXIT_FAIL


def _cmd_regularity(args, out: _Out) -> int:
    g = regularity.parse_graph(_read_file(args.graph))
    eps = _parse_rational(args.eps, "--eps")
    res = regularity.regularity_partition(g, eps, k_min=args.kmin,
                                          k_max=args.kmax, exact_cap=args.cap)
    parts = res.partition.parts
    out.text(f"partition of {g.n} vertices into {len(parts)} parts "
             f"(status: {res.status})")
    for i, p in enumerate(parts):
        out.text(f"  part {i}: {' '.join(map(str, p))}")
        out.record(f"part.{i}", " ".join(map(str, p)))
    rel = "<=" if res.irregular_mass <= res.mass_bound else ">"
    out.text(f"irregular mass {res.irregular_mass}/{g.n * g.n} {rel} {eps}")
    out.text(f"energy log: {' -> '.join(str(e) for e in res.energy_log)}")
    out.record("status", res.status)
    out.record("parts", len(parts))
    out.record("mass", res.irregular_mass)
    out.record("bound", res.mass_bound)
    for i, e in enumerate(res.energy_log):
        out.record(f"energy.{i}", e)
    return EXIT_OK if res.status == "regular" else EXIT_FAIL


def _cmd_hypergraph(args, out: _Out) -> int:
    host = regularity.parse_hypergraph(_read_file(args.host))
    pattern = regularity.parse_hypergraph(_read_file(args.pattern))
    copies = regularity.count_copies(pattern, host, budget=args.budget)
    out.text(f"copies = {copies}")
    out.record("copies", copies)
    if args.remove:
        eps = _parse_rational(args.eps, "--eps") if args.eps else None
        res = regularity.remove_copies(pattern, host, eps, budget=args.budget)
        out.text(f"removed {len(res.removed)} edges ({res.method}); "
                 f"copies after = {res.copies_after}")
        for i, e in enumerate(sorted(res.removed, key=sorted)):
            out.record(f"removed.{i}", " ".join(map(str, sorted(e))))
        out.record("method", res.method)
        out.record("copies_after", res.copies_after)
        if res.within_bound is not None:
            out.text(f"within eps*n^k bound: {res.within_bound}")
            out.record("within_bound", res.within_bound)
    return EXIT_OK


def _cmd_ap_encode(args, out: _Out) -> int:
    elements = _element_set(args.A, "--A")
    enc = regularity.ap_encode(elements, args.n, args.k, budget=args.budget)
    out.text(f"hypergraph: {enc.hypergraph.n} vertices, "
             f"{len(enc.hypergraph.edges)} edges, parts "
             f"{'/'.join(str(len(p)) for p in enc.parts)}")
    out.text(f"copies with nonzero difference = {enc.copy_ap_count}; "
             f"direct AP count = {enc.direct_ap_count}; "
             f"{'verified' if enc.verified else 'MISMATCH'}")
    out.record("vertices", enc.hypergraph.n)
    out.record("edges", len(enc.hypergraph.edges))
    out.record("copies_nontrivial", enc.copy_ap_count)
    out.record("copies_trivial", enc.trivial_copies)
    out.record("direct", enc.direct_ap_count)
    out.record("verified", enc.verified)
    return EXIT_OK if enc.verified else EXIT_FAIL


def _cmd_limit(args, out: _Out) -> int:
    base = os.path.dirname(os.path.abspath(args.family))

    def loader(path: str) -> str:
        return _read_file(path if os.path.isabs(path) else os.path.join(base, path))

    try:
        family = limits.parse_family(_read_file(args.family), loader=loader)
    except limits.LimitError as e:
        raise CliError(str(e), EXIT_PARSE) from None
    if bool(args.sentence) == bool(args.phi):
        raise CliError("need exactly one of --sentence (truth profile) or "
                       "--phi with --target (limit measure)", EXIT_PARSE)
    budget = Budget(args.budget)
    if args.sentence:
        sigma = parse_formula(_formula_arg(args.sentence), family.signature)
        prof = limits.truth_profile(family, sigma, slack=args.slack, budget=budget)
        out.text(prof.describe())
        out.record("verdict", prof.verdict)
        if prof.from_index is not None:
            out.record("from", prof.from_index)
        for i, v in zip(family.indices(), prof.values):
            out.record(f"value.{i}", v)
            if args.trace:
                out.text(f"  index {i}: {str(v).lower()}")
        return EXIT_OK
    if args.target is None:
        raise CliError("--phi needs --target", EXIT_PARSE)
    phi = parse_formula(_formula_arg(args.phi), family.signature)
    xs = tuple(args.vars.replace(",", " ").split()) if args.vars \
        else tuple(sorted(free_vars(phi)))
    target = _parse_rational(args.target, "--target")
    lm = limits.limit_measure(family, phi, xs, target, budget=budget)
    out.text(lm.describe().replace("flag +", "flag ⊕")
             .replace("flag -", "flag ⊖").replace("flag .", "flag ⊙"))
    out.record("verdict", lm.verdict)
    if lm.verdict == "converged":
        out.record("limit", lm.limit)
        out.record("flag", lm.flag.value)
        out.record("lt", lm.lt_holds)
        out.record("le", lm.le_holds)
    else:
        out.record("note", lm.note)
    for i, v in zip(family.indices(), lm.values):
        out.record(f"mu.{i}", v)
        if args.trace:
            out.text(f"  index {i}: mu = {v}")
    return EXIT_OK


def _cmd_density(args, out: _Out) -> int:
    elements = _element_set(args.E)
    d = limits.banach_density(elements, args.N, args.Lmin)
    out.text(f"banach density = {d}")
    out.record("density", d)
    return EXIT_OK


def _cmd_furstenberg(args, out: _Out) -> int:
    elements = _element_set(args.E)
    shifts = set(_parse_int_list(args.U, "--U"))
    cyc, plain, bound = limits.furstenberg_check(elements, args.N, shifts)
    ok = abs(cyc - plain) <= bound
    out.text(f"cyclic density = {cyc}, plain density = {plain}, "
             f"wraparound bound = {bound}")
    out.text(f"|cyclic - plain| <= bound: {ok}")
    out.record("cyclic", cyc)
    out.record("plain", plain)
    out.record("bound", bound)
    out.record("within_bound", ok)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# Argument wiring


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    env_budget = os.environ.get("AML_BUDGET")
    default_budget = DEFAULT_BUDGET
    if env_budget is not None:
        try:
            default_budget = int(env_budget)
        except ValueError:
            default_budget = -1  # validated after parsing, to report cleanly
    common.add_argument("--budget", type=int, default=default_budget,
                        help="enumeration budget in work units "
                             "(default %(default)s; env AML_BUDGET overrides)")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "records"), default="text")
    common.add_argument("--trace", action="store_true",
                        help="print per-step details (measure subevaluations, "
                             "per-index values)")

    top = argparse.ArgumentParser(prog="aml", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common],
                       help="evaluate a formula in a structure")
    p.add_argument("structure")
    p.add_argument("formula", help="formula text, or @path to a file")
    p.add_argument("--bind", help="valuation, e.g. x=0,y=2")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("measure", parents=[common],
                       help="measure a formula's extension")
    p.add_argument("structure")
    p.add_argument("formula")
    p.add_argument("--vars", help="tuple variables, e.g. x,y "
                                  "(default: sorted free variables)")
    p.set_defaults(func=_cmd_measure)

    p = sub.add_parser("check-axioms", parents=[common],
                       help="seeded soundness run over structures")
    p.add_argument("structures", nargs="+")
    p.add_argument("--schemes", default="AML,I,F,F+")
    p.add_argument("--count", type=int, default=100)
    p.set_defaults(func=_cmd_check_axioms)

    p = sub.add_parser("gowers", parents=[common],
                       help="uniformity norm power of a group function")
    p.add_argument("group", help="z<n> for a cyclic group, or a group file")
    p.add_argument("--g", required=True, help="function values, e.g. 1,-1")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=_cmd_gowers)

    p = sub.add_parser("regularity", parents=[common],
                       help="energy-increment regularity partition")
    p.add_argument("graph")
    p.add_argument("--eps", required=True)
    p.add_argument("--kmin", type=int, default=1)
    p.add_argument("--kmax", type=int, default=64)
    p.add_argument("--cap", type=int, default=15,
                   help="exact regularity part-size cap")
    p.set_defaults(func=_cmd_regularity)

    p = sub.add_parser("hypergraph", parents=[common],
                       help="pattern copy counting and removal")
    p.add_argument("host")
    p.add_argument("--pattern", required=True)
    p.add_argument("--remove", action="store_true")
    p.add_argument("--eps", help="report whether removal fits eps * n^k")
    p.set_defaults(func=_cmd_hypergraph)

    p = sub.add_parser("ap-encode", parents=[common],
                       help="arithmetic-progression hypergraph encoding")
    p.add_argument("--A", required=True, help="set elements, or a file path")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=_cmd_ap_encode)

    p = sub.add_parser("limit", parents=[common],
                       help="truth profile or limit measure along a family")
    p.add_argument("family", help="family spec file")
    p.add_argument("--sentence", help="closed formula for a truth profile")
    p.add_argument("--phi", help="formula for a limit measure")
    p.add_argument("--vars", help="tuple variables for --phi")
    p.add_argument("--target", help="target rational for --phi")
    p.add_argument("--slack", type=int, default=5)
    p.set_defaults(func=_cmd_limit)

    p = sub.add_parser("density", parents=[common],
                       help="best-window (Banach) density")
    p.add_argument("--E", required=True, help="set elements, or a file path")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--Lmin", type=int, default=1)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("furstenberg", parents=[common],
                       help="cyclic vs plain shift-intersection densities")
    p.add_argument("--E", required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--U", required=True, help="shift set, e.g. 0,2")
    p.set_defaults(func=_cmd_furstenberg)

    return top


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.budget <= 0:
        print("error: budget must be a positive integer "
              "(check --budget / AML_BUDGET)", file=sys.stderr)
        return EXIT_PARSE
    out = _Out(args.format)
    try:
        code = args.func(args, out)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as e:
        print(f"budget error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except EvalError as e:
        print(f"semantic error: {e}", file=sys.stderr)
        return EXIT_SEMANTIC
    except (gowers.GowersError, regularity.RegularityError, limits.LimitError,
            axioms.SideConditionError, ValueError) as e:
        print(f"semantic error: {e}", file=sys.stderr)
        return EXIT_SEMANTIC
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
