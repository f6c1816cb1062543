"""The ``tropgr`` command.

Exit codes: 0 for success and positive verdicts, 1 for negative verdicts,
2 for unreadable or invalid input. Polynomials given with ``-f`` live on the
chart of the anchor ij, where u_ij = 1.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

from .config import CliConfig
from .errors import ParseError, TropGrError
from .exact import format_ext
from .plucker import TropPoint, format_pair, load_metric, parse_pair, validate_point, vanishing_set, is_saturated

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


class Output:
    """Collects either a JSON document or text lines, printed once at the end."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.lines: list[str] = []
        self.data: object = None

    def emit(self, data: object, lines: Sequence[str]) -> None:
        self.data = data
        self.lines = list(lines)

    def render(self) -> str:
        if self.as_json:
            return json.dumps(self.data, indent=2) + "\n"
        return "".join(line + "\n" for line in self.lines)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _metric(cfg: CliConfig) -> TropPoint:
    return load_metric(_read(cfg.inputs[0]))


def _anchor(cfg: CliConfig, x: TropPoint):
    return parse_pair(cfg.ij) if cfg.ij else x.anchor


# subcommands ------------------------------------------------------------------------


def cmd_check_metric(cfg: CliConfig, out: Output) -> int:
    x = _metric(cfg)
    v = validate_point(x)
    J = vanishing_set(x)
    saturated = v.ok and (not J or is_saturated(J, x.anchor, x.n))
    data = {
        "valid": v.ok,
        "witness": list(v.witness) if v.witness else None,
        "J": sorted(format_pair(p) for p in J),
        "saturated": saturated,
    }
    if v.ok:
        lines = [f"valid tropical Pluecker vector (n={x.n}, J={data['J']}, saturated={saturated})"]
    else:
        lines = [f"invalid: four-point condition fails on quartet {','.join(map(str, v.witness))}"]
    out.emit(data, lines)
    return EXIT_OK if v.ok and saturated else EXIT_NEGATIVE


def cmd_tree_infer(cfg: CliConfig, out: Output) -> int:
    from .newick import format_newick
    from .trees import infer_type, neighbor_joining

    x = _metric(cfg)
    v = validate_point(x)
    if not v.ok:
        out.emit({"valid": False, "witness": list(v.witness)}, [f"invalid point: quartet {v.witness} fails"])
        return EXIT_NEGATIVE
    T, J = infer_type(x)
    data = {"T": T.code, "J": sorted(format_pair(p) for p in J), "newick": None}
    lines = [f"type {T.code}", f"J = {data['J']}"]
    if not J:
        data["newick"] = format_newick(neighbor_joining(x))
        lines.append(data["newick"])
    out.emit(data, lines)
    return EXIT_OK


def cmd_metric_from_tree(cfg: CliConfig, out: Output) -> int:
    from .newick import parse_newick
    from .trees import metric_from_tree

    x = metric_from_tree(parse_newick(_read(cfg.inputs[0])))
    out.emit(x.to_json(), x.dumps().splitlines())
    return EXIT_OK


def cmd_section_eval(cfg: CliConfig, out: Output) -> int:
    from .grammar import parse_poly
    from .section import section_point

    x = _metric(cfg)
    if cfg.poly is None:
        raise ParseError("section eval needs -f <polynomial>", 0)
    f = parse_poly(cfg.poly, x.n)
    sigma = section_point(x, _anchor(cfg, x))
    value = sigma.log_eval(f)
    out.emit({"value": format_ext(value), **sigma.describe()}, [format_ext(value)])
    return EXIT_OK


def cmd_section_verify(cfg: CliConfig, out: Output) -> int:
    from .section import section_point, verify_section

    x = _metric(cfg)
    sigma = section_point(x, _anchor(cfg, x), check=False)
    report = verify_section(sigma)
    data = {
        "ok": report.ok,
        "checked": report.checked,
        "failures": [
            {"pair": format_pair(p), "got": format_ext(g), "expected": format_ext(w)} for p, g, w in report.failures
        ],
        **sigma.describe(),
    }
    out.emit(data, report.lines())
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def cmd_section_glue(cfg: CliConfig, out: Output) -> int:
    from .section import gluing_report

    x = _metric(cfg)
    if not cfg.ij or not cfg.pq:
        raise ParseError("section glue needs --ij and --pq", 0)
    rep = gluing_report(x, parse_pair(cfg.ij), parse_pair(cfg.pq), cfg.seed)
    lines = [f"gluing {'holds' if rep.ok else 'fails'} on {rep.checked} test functions"] + rep.mismatches
    out.emit({"ok": rep.ok, "checked": rep.checked, "mismatches": rep.mismatches}, lines)
    return EXIT_OK if rep.ok else EXIT_NEGATIVE


def cmd_initial_ideal(cfg: CliConfig, out: Output) -> int:
    from .degeneration import initial_degeneration

    x = _metric(cfg)
    res = initial_degeneration(x)
    if res.verdict == "unit":
        out.emit({"verdict": "unit", "reason": res.reason, "generators": ["1"]}, [f"unit ideal: {res.reason}"])
        return EXIT_NEGATIVE
    cert = res.certificate
    gens = [str(g) for g in cert.generators]
    data = {
        "ij": format_pair(cert.ij),
        "J": sorted(format_pair(p) for p in cert.J),
        "I": sorted(format_pair(p) for p in cert.I),
        "generators": gens,
    }
    out.emit(data, gens or ["(0)"])
    return EXIT_OK


def cmd_multiplicity(cfg: CliConfig, out: Output) -> int:
    from .degeneration import initial_degeneration

    x = _metric(cfg)
    res = initial_degeneration(x)
    if res.verdict == "unit":
        out.emit({"verdict": "unit", "reason": res.reason, "m": 0}, [f"empty initial degeneration: {res.reason}"])
        return EXIT_NEGATIVE
    data = res.certificate.to_json()
    out.emit(data, [f"m = {data['m']}", f"basis: {' '.join(data['basis'])}"] + [g["generator"] for g in data["generators"]])
    return EXIT_OK


def cmd_gr24_catalog(cfg: CliConfig, out: Output) -> int:
    from .degeneration import gr24_catalog

    entries = [e.to_json() for e in gr24_catalog()]
    lines = []
    for e in entries:
        gens = "; ".join(e["generators"]) or "(0)"
        lines.append(f"{e['case']}: J={{{','.join(e['J'])}}} I={{{','.join(e['I'])}}} -> {gens}")
    out.emit(entries, lines)
    return EXIT_OK


def cmd_fan(cfg: CliConfig, out: Output) -> int:
    from .quotient import split_complex

    sc = split_complex(cfg.n or 5)
    data = sc.to_json()
    lines = [f"{k}: {json.dumps(v)}" for k, v in sc.checks.items()]
    out.emit(data, lines)
    if "petersen" in sc.checks and not sc.checks["petersen"]:
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_fiber_check(cfg: CliConfig, out: Output) -> int:
    from .section import sample_fiber_and_check_max

    rep = sample_fiber_and_check_max(cfg.n or 6, cfg.seed, cfg.polys, cfg.count)
    data = {
        "n": rep.n,
        "seed": rep.seed,
        "matrices": rep.matrices,
        "polynomials": rep.polynomials,
        "strict": rep.strict,
        "ok": rep.ok,
        "failures": rep.failures,
    }
    lines = [
        f"{rep.matrices} matrices, {rep.polynomials} polynomials: "
        f"{'maximality holds' if rep.ok else 'maximality fails'} ({rep.strict} strict inequalities)"
    ] + rep.failures
    out.emit(data, lines)
    return EXIT_OK if rep.ok else EXIT_NEGATIVE


def cmd_descent_check(cfg: CliConfig, out: Output) -> int:
    from .quotient import descent_report, shift_by_lineality

    x = _metric(cfg)
    if cfg.lam is None:
        raise ParseError("descent-check needs --lambda q1,...,qn", 0)
    lam = []
    for k, part in enumerate(cfg.lam.split(",")):
        try:
            lam.append(Fraction(part.strip()))
        except (ValueError, ZeroDivisionError):
            offset = len(",".join(cfg.lam.split(",")[:k]).encode()) + (1 if k else 0)
            raise ParseError(f"bad rational {part.strip()!r} in --lambda", offset) from None
    if len(lam) != x.n:
        raise ParseError(f"--lambda needs {x.n} entries, got {len(lam)}", len(cfg.lam.encode()))
    rep = descent_report(x, shift_by_lineality(x, lam))
    rows = [{"monomial": m, "x": format_ext(a), "shifted": format_ext(b)} for m, a, b in rep.values]
    lines = [f"descent {'holds' if rep.ok else 'fails'}"] + [
        f"{m}: {format_ext(a)} vs {format_ext(b)}" for m, a, b in rep.values
    ]
    out.emit({"ok": rep.ok, "values": rows}, lines)
    return EXIT_OK if rep.ok else EXIT_NEGATIVE


# parser -------------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true", help="machine-readable output")
    g.add_argument("--text", action="store_false", dest="json", help="human-readable output (default)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tropgr", description="Exact computations on the tropical Grassmannian TGr(2,n).")
    sub = parser.add_subparsers(dest="command", required=True)

    def leaf(subparsers, name: str, handler: Callable, help: str, metric: bool = True, path_name: str = "metric"):
        p = subparsers.add_parser(name, help=help)
        if metric:
            p.add_argument(path_name, help="input file, or - for stdin")
        _add_common(p)
        p.set_defaults(handler=handler)
        return p

    leaf(sub, "check-metric", cmd_check_metric, "validate a tropical Pluecker vector")

    tree = sub.add_parser("tree", help="tree types of metrics")
    tree_sub = tree.add_subparsers(dest="action", required=True)
    leaf(tree_sub, "infer", cmd_tree_infer, "tree type and vanishing set of a metric")

    metric = sub.add_parser("metric", help="metrics from trees")
    metric_sub = metric.add_subparsers(dest="action", required=True)
    leaf(metric_sub, "from-tree", cmd_metric_from_tree, "tree metric of a Newick file", path_name="tree")

    section = sub.add_parser("section", help="the section seminorm")
    section_sub = section.add_subparsers(dest="action", required=True)
    p = leaf(section_sub, "eval", cmd_section_eval, "log sigma(x)(f)")
    p.add_argument("-f", dest="poly", required=True, help="polynomial, e.g. 'u_2_4 - 2*u_1_3'")
    p.add_argument("--ij", help="anchor pair i,j")
    p = leaf(section_sub, "verify", cmd_section_verify, "check log sigma(u_kl) = x_kl - x_ij")
    p.add_argument("--ij", help="anchor pair i,j")
    p = leaf(section_sub, "glue", cmd_section_glue, "compare two anchor charts")
    p.add_argument("--ij", required=True)
    p.add_argument("--pq", required=True)
    p.add_argument("--seed", type=int, default=0)

    leaf(sub, "initial-ideal", cmd_initial_ideal, "generators of the initial ideal")
    leaf(sub, "multiplicity", cmd_multiplicity, "multiplicity-one certificate")
    leaf(sub, "gr24-catalog", cmd_gr24_catalog, "initial degenerations of Gr(2,4)", metric=False)
    p = leaf(sub, "fan", cmd_fan, "split complex of TGr(2,n) modulo lineality", metric=False)
    p.add_argument("--n", type=int, default=5)
    p = leaf(sub, "fiber-check", cmd_fiber_check, "maximality of sigma on random fibers", metric=False)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--polys", type=int, default=20)
    p = leaf(sub, "descent-check", cmd_descent_check, "invariance under the cut-metric lattice")
    p.add_argument("--lambda", dest="lam", required=True, help="comma-separated rationals q1,...,qn")
    return parser


def parse_config(argv: Sequence[str]) -> tuple[CliConfig, Callable]:
    ns = build_parser().parse_args(argv)
    inputs = [v for k in ("metric", "tree") if (v := getattr(ns, k, None)) is not None]
    cfg = CliConfig(
        command=ns.command,
        action=getattr(ns, "action", None),
        inputs=inputs,
        ij=getattr(ns, "ij", None),
        pq=getattr(ns, "pq", None),
        seed=getattr(ns, "seed", 0),
        count=getattr(ns, "count", 100),
        polys=getattr(ns, "polys", 20),
        n=getattr(ns, "n", None),
        poly=getattr(ns, "poly", None),
        lam=getattr(ns, "lam", None),
        json=ns.json,
    )
    return cfg, ns.handler


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        cfg, handler = parse_config(list(sys.argv[1:] if argv is None else argv))
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    out = Output(cfg.json)
    try:
        code = handler(cfg, out)
    except ParseError as exc:
        stderr.write(f"tropgr: parse error: {exc.message} at byte {exc.offset}\n")
        return EXIT_INPUT
    except OSError as exc:
        stderr.write(f"tropgr: cannot read input: {exc.strerror}: {exc.filename}\n")
        return EXIT_INPUT
    except (TropGrError, ValueError) as exc:
        stderr.write(f"tropgr: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT
    stdout.write(out.render())
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
