"""Command line front end: one verification suite per subcommand.

Every invocation parses flags (optionally merged with a JSON config file)
into a RunConfig, dispatches to exactly one suite, and emits one report.
Reports are deterministic byte for byte in the RunConfig: suite payloads are
assembled single-threaded from functions whose outputs are canonically
ordered, and the worker-thread count only parallelizes independent places.

Exit codes: 0 all claims hold, 1 a verification claim failed (the report and
the last stdout line name it), 2 malformed input or configuration, 3 a size
cap or search budget was exceeded before an answer was certified.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
import tempfile
from dataclasses import dataclass

from .closure import hesse_normal_form
from .cubic import TernaryCubic
from .errors import (
    BudgetExceeded,
    CapExceeded,
    ConfigError,
    FlexlabError,
    GoldenMismatch,
    InconclusiveBeyondHeight,
    InternalContractViolation,
    LemmaViolated,
)
from .fields import function_field, parse_element, parse_field
from .golden import verify_all, verify_example_3_4
from .localglobal import CurveOverK, local_flex_scan, local_torsion_scan
from .modgroups import (
    construct_lemma_6_2,
    search_counterexample_subgroups,
    subgroups_up_to_conjugacy,
    verify_lemma_2_1,
    verify_sl2_fixed_point,
)

PASS, FAIL, BAD_CONFIG, OVER_BUDGET = 0, 1, 2, 3

_FAIL_ERRORS = (LemmaViolated, GoldenMismatch, InternalContractViolation)
_BUDGET_ERRORS = (CapExceeded, BudgetExceeded, InconclusiveBeyondHeight)

_SL2_LEVELS = (2, 3, 4, 5, 6, 7, 8, 9, 12)
_GOLDEN_COLUMNS = ("label", "equation", "n_cube", "n_all", "supersingular",
                   "flexes")


@dataclass(frozen=True)
class RunConfig:
    """One fully-resolved invocation: the suite plus every parameter that can
    influence the report payload.  The output path is deliberately excluded,
    so the same logical run written to two destinations is byte-identical."""

    suite: str
    params: tuple          # sorted (name, value) pairs
    fmt: str = "json"
    seed: int = 0
    threads: int | None = None

    def to_json(self) -> dict:
        out = {"suite": self.suite, "format": self.fmt, "seed": self.seed,
               "threads": self.threads}
        out.update(dict(self.params))
        return out


# ---------------------------------------------------------------------------
# Suites.  Each returns (payload, failures, summary_lines).


def _parse_cubic(ns):
    if not ns.poly:
        raise ConfigError("--poly is required")
    if not ns.field:
        raise ConfigError("--field is required")
    return TernaryCubic.parse(ns.poly, parse_field(ns.field))


def _suite_census(ns):
    report = subgroups_up_to_conjugacy(ns.ambient, cap=ns.cap)
    failures = []
    for row in report.rows:
        if row.elementwise and not row.common_fixed:
            failures.append(
                f"census {ns.ambient}: the class of order {row.subgroup.order}"
                " fixes vectors elementwise but shares no fixed vector")
    data = report.to_json()
    data["num_classes"] = report.num_classes
    return data, failures, [f"census {ns.ambient}: {report.num_classes} classes"]


def _suite_sl2_verify(ns):
    levels = _int_list(ns.levels) if ns.levels else list(_SL2_LEVELS)
    if ns.include_15 and 15 not in levels:
        levels.append(15)
    rows, lines = [], []
    for n in levels:
        report = verify_sl2_fixed_point(n, cap=ns.cap)
        rows.append({"n": n, "num_classes": report.num_classes,
                     "verdict": report.verdict})
        lines.append(f"sl2({n}): {report.num_classes} classes, no violation")
    return {"levels": rows}, [], lines


def _suite_cex_search(ns):
    outcome = search_counterexample_subgroups(ns.n, mode=ns.mode,
                                              budget=ns.budget)
    data = outcome.to_json()
    data["classes_scanned"] = outcome.classes_scanned
    return data, [], [f"sl2({ns.n}) search: {outcome.verdict} "
                      f"({outcome.classes_scanned} candidate classes)"]


def _suite_lemma62(ns):
    a, b, c = _int_list(ns.abc, want=3)
    report = construct_lemma_6_2(a, b, c)
    return report.to_json(), [], [
        f"sl2({report.n}) construction: {report.verdict}, group order "
        f"{report.group.order}"]


def _suite_hessian(ns):
    C = _parse_cubic(ns)
    H = C.hessian()
    data = {"poly": str(C), "field": str(C.field), "hessian": str(H)}
    return data, [], [str(H)]


def _suite_flexes(ns):
    C = _parse_cubic(ns)
    report = C.flex_closure_report()
    data = report.to_json()
    data["splitting_degree"] = report.splitting_degree
    return data, [], [
        f"{report.n_rat} rational flexes, {report.n_alg} over the closure "
        f"(splitting degree {report.splitting_degree})"]


def _suite_example34(ns):
    rows = [verify_example_3_4(ns.which)] if ns.which else verify_all()
    data = {"rows": [r.to_json() for r in rows]}
    lines = [f"{r.label}: n_cube={r.n_cube} n_all={r.n_all}"
             + (" supersingular" if r.supersingular else "")
             for r in rows]
    lines.append(f"golden table: {len(rows)} row(s) verified")
    return data, [], lines


def _suite_normal_form(ns):
    C = _parse_cubic(ns)
    result = hesse_normal_form(C)
    if result.reachable:
        line = f"reachable: lambda = {result.lam} ({result.case})"
    else:
        line = f"unreachable: {result.reason}"
    return result.to_json(), [], [line]


def _suite_scan_flexes(ns):
    X = CurveOverK.cubic_from_form(ns.poly, ns.p, label=ns.label or "C")
    report = local_flex_scan(X, ns.degree_bound)
    failures = []
    if ns.p != 3 and not report.agree:
        failures.append(
            f"flex scan {X.label}/F_{ns.p}(T): local flexes at every good "
            f"place must match a global flex away from characteristic 3")
    return report.to_json(), failures, [_scan_line(report)]


def _suite_scan_torsion(ns):
    k = function_field(ns.p, var="T")
    names = ("a1", "a2", "a3", "a4", "a6")
    coeffs = tuple(_parse_coeff(getattr(ns, name), k) for name in names)
    X = CurveOverK.weierstrass(ns.p, coeffs, label=ns.label or "E")
    report = local_torsion_scan(X, ns.n, ns.degree_bound)
    failures = []
    if report.hypothesis_met and report.locals_everywhere \
            and not report.global_verdict:
        failures.append(
            f"torsion scan {X.label}/F_{ns.p}(T), n={ns.n}: points of exact "
            f"order n at every good place must lift to a global point when "
            f"the prime-to-p part of n divides p - 1")
    return report.to_json(), failures, [_scan_line(report)]


def _suite_golden_check(ns):
    lines = []
    census = verify_lemma_2_1()
    lines.append(f"census aff3: {census.num_classes} classes, "
                 f"elementwise fixing always shares a vector")
    rows = verify_all()
    lines.append(f"golden table: {len(rows)} rows verified")
    searches = []
    for n in (4, 9, 6):
        outcome = search_counterexample_subgroups(n)
        searches.append(outcome.to_json())
        lines.append(f"sl2({n}) search: {outcome.verdict}")
    construction = construct_lemma_6_2(3, 5, 7)
    lines.append(f"sl2({construction.n}) construction: {construction.verdict}")
    data = {
        "census": {"ambient": "aff3", "num_classes": census.num_classes,
                   "verdict": census.verdict},
        "golden_table": [r.to_json() for r in rows],
        "searches": searches,
        "construction": construction.to_json(),
    }
    return data, [], lines


_SUITES = {
    "census": _suite_census,
    "sl2-verify": _suite_sl2_verify,
    "cex-search": _suite_cex_search,
    "lemma62": _suite_lemma62,
    "hessian": _suite_hessian,
    "flexes": _suite_flexes,
    "example34": _suite_example34,
    "normal-form": _suite_normal_form,
    "scan-flexes": _suite_scan_flexes,
    "scan-torsion": _suite_scan_torsion,
    "golden-check": _suite_golden_check,
}

_TSV_SUITES = {"example34", "golden-check"}


def _scan_line(report) -> str:
    return (f"{report.curve}: locals {'yes' if report.locals_everywhere else 'no'}"
            f", global {'yes' if report.global_verdict else 'no'}"
            f", {'agree' if report.agree else 'DISAGREE'}")


def _int_list(text, want: int | None = None):
    try:
        values = [int(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"expected comma-separated integers, got {text!r}")
    if want is not None and len(values) != want:
        raise ConfigError(f"expected {want} comma-separated integers, "
                          f"got {text!r}")
    return values


def _parse_coeff(text, k):
    if text is None:
        return k.zero
    if isinstance(text, int):
        return k(text)
    return parse_element(str(text), k)


# ---------------------------------------------------------------------------
# Report assembly and atomic output


def _render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    rows = report["result"].get("rows") or report["result"].get("golden_table")
    out = ["\t".join(_GOLDEN_COLUMNS)]
    for row in rows:
        cells = [str(row[c]) if c != "flexes" else ";".join(row[c])
                 for c in _GOLDEN_COLUMNS]
        out.append("\t".join(cells))
    return "\n".join(out) + "\n"


def _write_atomic(path: str, text: str):
    target = os.path.abspath(path)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target),
                               prefix=".flexlab-report-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        with contextlib.suppress(OSError):
            os.unlink(tmp)
        raise


def _emit(config: RunConfig, payload, failures, lines, out_path):
    report = {
        "tool": "flexlab",
        "config": config.to_json(),
        "result": payload,
        "failures": list(failures),
        "ok": not failures,
    }
    text = _render(report, config.fmt)
    if out_path:
        _write_atomic(out_path, text)
        for line in lines:
            print(line)
        print(f"report written to {out_path}")
    else:
        sys.stdout.write(text)
        for line in lines:
            print(line, file=sys.stderr)
    for claim in failures:
        print(f"FAIL: {claim}")
    return FAIL if failures else PASS


# ---------------------------------------------------------------------------
# Argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flexlab",
        description="Verification suites for plane-cubic flexes, their "
                    "Galois monodromy, and fixed vectors of matrix groups.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report to this path "
                                      "(atomically); default prints to stdout")
    common.add_argument("--format", dest="fmt", choices=("json", "tsv"),
                        default="json",
                        help="report format; tsv mirrors the five-curve table")
    common.add_argument("--seed", type=int, default=0,
                        help="recorded in the report; suites are deterministic")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads for independent places "
                             "(default: FLEXLAB_THREADS or 1)")
    common.add_argument("--config", help="JSON file of flag defaults, "
                                         "overridden by explicit flags")

    sub = parser.add_subparsers(dest="suite", metavar="SUITE")
    sub.required = True

    def add(name, helptext, configure, parent=sub):
        sp = parent.add_parser(name, parents=[common], help=helptext)
        configure(sp)
        return sp

    def census_args(sp):
        sp.add_argument("--ambient", default="aff3",
                        help="aff3, s3, sl2(n) or gl2(n)")
        sp.add_argument("--cap", type=int, default=3000,
                        help="largest ambient order to enumerate")

    def sl2_args(sp):
        sp.add_argument("--levels", default=None,
                        help=f"comma-separated moduli (default "
                             f"{','.join(map(str, _SL2_LEVELS))})")
        sp.add_argument("--include-15", action="store_true",
                        help="also verify the large composite level 15")
        sp.add_argument("--cap", type=int, default=3000)

    def cex_args(sp):
        sp.add_argument("--n", type=int, required=True, help="SL2 modulus")
        sp.add_argument("--mode", default="nonzero-vector",
                        choices=("any-vector", "nonzero-vector",
                                 "primitive-vector"))
        sp.add_argument("--budget", type=int, default=3000,
                        help="largest ambient order to search exhaustively")

    def lemma62_args(sp):
        sp.add_argument("--abc", default="3,5,7",
                        help="three pairwise coprime odd factors >= 3")

    def poly_args(sp):
        sp.add_argument("--poly", help="ternary cubic form, e.g. X^3+Y^3+Z^3")
        sp.add_argument("--field", help="F2, F9, F2[a]/(a^2+a+1), F5(T)")

    def which_args(sp):
        sp.add_argument("--which", type=int, choices=(1, 2, 3, 4, 5),
                        default=None, help="verify a single row (default all)")

    def scan_common(sp):
        sp.add_argument("--p", type=int, required=True,
                        help="characteristic of the base F_p(T)")
        sp.add_argument("--degree-bound", type=int, default=3,
                        help="scan places of degree up to this bound")
        sp.add_argument("--label", default=None, help="curve name in reports")

    def scan_flex_args(sp):
        sp.add_argument("--poly", required=True,
                        help="cubic form over F_p(T), e.g. X^3+Y^3+T*Z^3")
        scan_common(sp)

    def scan_torsion_args(sp):
        for name in ("a1", "a2", "a3"):
            sp.add_argument(f"--{name}", default=None,
                            help=f"Weierstrass {name} in F_p[T] (default 0)")
        sp.add_argument("--a4", default=0, help="Weierstrass a4 in F_p[T]")
        sp.add_argument("--a6", default=0, help="Weierstrass a6 in F_p[T]")
        sp.add_argument("--n", type=int, required=True,
                        help="look for points of exact order n")
        scan_common(sp)

    add("census", "conjugacy-class census with fixed-vector verdicts",
        census_args)
    add("sl2-verify", "fixed-vector lemma over a list of SL2 moduli", sl2_args)
    add("cex-search", "exhaustive counterexample search in one SL2(Z/n)",
        cex_args)
    add("lemma62", "order-4 scalar counterexample group mod a*b*c",
        lemma62_args)
    add("hessian", "Hessian determinant of a ternary cubic", poly_args)
    add("flexes", "rational flexes and their closure orbits", poly_args)
    add("example34", "verify the bundled five-curve golden table", which_args)
    add("normal-form", "diagonal + lambda*XYZ normal form search", poly_args)
    add("golden-check", "the full bundled evidence: census, golden table, "
        "searches, construction", lambda sp: None)

    scan = sub.add_parser("scan", help="local-global scans over F_p(T)")
    scan_sub = scan.add_subparsers(dest="scan_kind", metavar="KIND")
    scan_sub.required = True
    add("flexes", "flex scan: local verdicts, monodromy, global search",
        scan_flex_args, parent=scan_sub)
    add("torsion", "torsion scan for points of exact order n",
        scan_torsion_args, parent=scan_sub)

    groups = sub.add_parser("groups", help="namespace for the matrix-group "
                                           "suites")
    groups_sub = groups.add_subparsers(dest="group_suite", metavar="SUITE")
    groups_sub.required = True
    add("census", "alias of the top-level census", census_args,
        parent=groups_sub)
    add("sl2-verify", "alias of the top-level sl2-verify", sl2_args,
        parent=groups_sub)
    add("cex-search", "alias of the top-level cex-search", cex_args,
        parent=groups_sub)
    add("lemma62", "alias of the top-level lemma62", lemma62_args,
        parent=groups_sub)
    return parser


def _apply_config_file(ns: argparse.Namespace, argv):
    path = ns.config
    if not path:
        return
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as e:
        raise ConfigError(f"cannot read config file {path!r}: {e}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"config file {path!r} is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path!r} must hold a JSON object")
    explicit = set()
    for token in argv:
        if token.startswith("--"):
            explicit.add(token[2:].split("=", 1)[0])
    for key, value in data.items():
        dest = "fmt" if key == "format" else key.replace("-", "_")
        if not hasattr(ns, dest):
            raise ConfigError(f"config key {key!r} does not apply to the "
                              f"{ns.suite} suite")
        if key not in explicit:
            setattr(ns, dest, value)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
        # nested subcommands land with suite="scan"/"groups"; flatten them
        if ns.suite == "scan":
            ns.suite = f"scan-{ns.scan_kind}"
        elif ns.suite == "groups":
            ns.suite = ns.group_suite
        _apply_config_file(ns, argv)
        suite = _SUITES[ns.suite]
        if ns.fmt == "tsv" and ns.suite not in _TSV_SUITES:
            raise ConfigError("the tsv mirror exists for the five-curve "
                              "table only (example34, golden-check)")
        if ns.threads is not None:
            if ns.threads < 1:
                raise ConfigError("--threads must be at least 1")
            os.environ["FLEXLAB_THREADS"] = str(ns.threads)
        skip = {"suite", "scan_kind", "group_suite", "out", "fmt", "seed",
                "threads", "config"}
        params = tuple(sorted((k, v) for k, v in vars(ns).items()
                              if k not in skip))
        config = RunConfig(suite=ns.suite, params=params, fmt=ns.fmt,
                           seed=ns.seed, threads=ns.threads)
        payload, failures, lines = suite(ns)
        return _emit(config, payload, failures, lines, ns.out)
    except _FAIL_ERRORS as e:
        print(f"FAIL: {e}")
        return FAIL
    except _BUDGET_ERRORS as e:
        print(f"over budget: {e}")
        return OVER_BUDGET
    except FlexlabError as e:
        print(f"config error: {e}")
        return BAD_CONFIG


if __name__ == "__main__":
    sys.exit(main())
