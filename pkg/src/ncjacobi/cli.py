"""Batch command line: ``ncjacobi <command> [flags] < input.json``.

Exit codes: 0 success, 1 a verification check failed, 2 malformed input or
unknown name, 3 mathematically invalid request.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from fractions import Fraction

from .convolve import convolve, power, probe
from .errors import DomainError, SchemaError
from .exact import DEFAULT_ORDER, format_rational, parse_rational
from .measures import Flavor, JacobiParams, MeasurePair, MomentSequence
from .meixner import FAMILIES, build_family
from .transforms import jacobi_to_moments, moments_to_cumulants, moments_to_jacobi, pair_to_two_state_cumulants
from .verify import SUITES, Report, run_suite

EXIT_OK, EXIT_CHECK_FAILED, EXIT_SCHEMA, EXIT_DOMAIN = 0, 1, 2, 3


# ---------------------------------------------------------------------------
# JSON measure schema


def _rational(x, field: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise SchemaError(f"expected a 'p/q' string, got {x!r}", field)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x, field)
    raise SchemaError(f"expected a 'p/q' string, got {type(x).__name__}", field)


def _rationals(xs, field: str) -> tuple[Fraction, ...]:
    if not isinstance(xs, list):
        raise SchemaError("expected an array", field)
    return tuple(_rational(x, f"{field}[{i}]") for i, x in enumerate(xs))


def parse_measure(obj, where: str = "input"):
    """Decode one schema object into a MomentSequence, JacobiParams or MeasurePair."""
    if not isinstance(obj, dict):
        raise SchemaError("expected a JSON object", where)
    keys = set(obj)
    if keys == {"tilde", "base"}:
        tilde, base = parse_measure(obj["tilde"], f"{where}.tilde"), parse_measure(obj["base"], f"{where}.base")
        if type(tilde) is not type(base):
            raise SchemaError("tilde and base must use the same representation", where)
        return tilde, base
    if "moments" in keys:
        if not keys <= {"order", "moments"}:
            raise SchemaError(f"unexpected keys {sorted(keys - {'order', 'moments'})}", where)
        s = _rationals(obj["moments"], f"{where}.moments")
        if "order" in obj:
            order = obj["order"]
            if not isinstance(order, int) or isinstance(order, bool) or order < 0:
                raise SchemaError("order must be a non-negative integer", f"{where}.order")
            if order != len(s) - 1:
                raise SchemaError(f"order {order} but {len(s)} moments given", f"{where}.order")
        if not s or s[0] != 1:
            raise SchemaError("moments must start with s_0 = 1", f"{where}.moments[0]")
        return MomentSequence(s)
    if {"beta", "gamma"} <= keys:
        if not keys <= {"beta", "gamma", "terminated", "degenerate"}:
            raise SchemaError(f"unexpected keys {sorted(keys - {'beta', 'gamma', 'terminated', 'degenerate'})}", where)
        term = obj.get("terminated", False)
        if not isinstance(term, bool):
            raise SchemaError("terminated must be a boolean", f"{where}.terminated")
        beta, gamma = _rationals(obj["beta"], f"{where}.beta"), _rationals(obj["gamma"], f"{where}.gamma")
        if term and (not gamma or gamma[-1] != 0):
            raise SchemaError("terminated rows must end with gamma = 0", f"{where}.gamma")
        return JacobiParams(beta, gamma)
    raise SchemaError("expected {order, moments}, {beta, gamma, terminated} or {tilde, base}", where)


def supported_order(j: JacobiParams) -> int:
    """Largest order whose moments are determined by the given rows."""
    return min(2 * len(j.beta) - 1, 2 * len(j.gamma) + 1)


def to_moments(x, order: int | None):
    """Moments of a decoded measure; ``order`` truncates moment input and sets the order of Jacobi input."""
    if isinstance(x, tuple):
        return MeasurePair(to_moments(x[0], order), to_moments(x[1], order))
    if isinstance(x, JacobiParams):
        if order is None:
            order = DEFAULT_ORDER if x.terminated else min(DEFAULT_ORDER, supported_order(x))
        return jacobi_to_moments(x, order)
    return x if order is None or order == x.order else x.truncate(order)


def moments_json(x) -> dict:
    if isinstance(x, MeasurePair):
        return {"tilde": moments_json(x.tilde), "base": moments_json(x.base)}
    return {"order": x.order, "moments": [format_rational(v) for v in x.s]}


def jacobi_json(x) -> dict:
    if isinstance(x, tuple):
        return {"tilde": jacobi_json(x[0]), "base": jacobi_json(x[1])}
    out = {"beta": [format_rational(v) for v in x.beta], "gamma": [format_rational(v) for v in x.gamma], "terminated": x.terminated}
    if x.degenerate:
        out["degenerate"] = True
    return out


# ---------------------------------------------------------------------------
# output


def _csv_rows(doc) -> list[list[str]]:
    """Flatten an output document into ``component, index, field, value`` style rows."""
    if isinstance(doc, list):  # verification report
        rows = [["check", "status", "witness"]]
        for c in doc:
            rows.append([c["check"], c["status"], json.dumps(c["witness"], sort_keys=True) if "witness" in c else ""])
        return rows
    if "tilde" in doc:
        t, b = _csv_rows(doc["tilde"]), _csv_rows(doc["base"])
        return [["component"] + t[0]] + [["tilde"] + r for r in t[1:]] + [["base"] + r for r in b[1:]]
    if "moments" in doc:
        return [["m", "moment"]] + [[str(m), v] for m, v in enumerate(doc["moments"])]
    if "beta" in doc:
        n = max(len(doc["beta"]), len(doc["gamma"]))
        pad = lambda xs, k: xs[k] if k < len(xs) else ""  # noqa: E731
        return [["n", "beta", "gamma"]] + [[str(k), pad(doc["beta"], k), pad(doc["gamma"], k)] for k in range(n)]
    if "cumulants" in doc:
        return [["n", "cumulant"]] + [[str(k), v] for k, v in enumerate(doc["cumulants"], start=1)]
    raise AssertionError(doc)


def emit(doc, fmt: str, out):
    if fmt == "json":
        out.write(json.dumps(doc) + "\n")
        return
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(_csv_rows(doc))
    out.write(buf.getvalue())


def warn_if_not_positive(result, what: str, err):
    if not probe(result):
        err.write(f"WARN: {what} fails the Hankel positivity probe\n")


# ---------------------------------------------------------------------------
# commands


def _read_input(args, stdin):
    text = open(args.infile).read() if args.infile else stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON ({e.msg} at line {e.lineno} column {e.colno})", "input") from None


def _same_shape(x, template):
    """Render ``x`` (moments) in the representation of ``template``."""
    if isinstance(template, tuple) and isinstance(template[0], JacobiParams):
        return jacobi_json((moments_to_jacobi(x.tilde), moments_to_jacobi(x.base)))
    if isinstance(template, JacobiParams):
        return jacobi_json(moments_to_jacobi(x))
    return moments_json(x)


def cmd_moments(args, stdin, out, err):
    x = parse_measure(_read_input(args, stdin))
    return moments_json(to_moments(x, args.order))


def cmd_jacobi(args, stdin, out, err):
    x = parse_measure(_read_input(args, stdin))
    s = to_moments(x, args.order)
    if isinstance(s, MeasurePair):
        return jacobi_json((moments_to_jacobi(s.tilde), moments_to_jacobi(s.base)))
    return jacobi_json(moments_to_jacobi(s))


def cmd_cumulants(args, stdin, out, err):
    flavor = Flavor.parse(args.flavor)
    s = to_moments(parse_measure(_read_input(args, stdin)), args.order)
    if flavor is Flavor.TWO_STATE_FREE:
        if not isinstance(s, MeasurePair):
            raise SchemaError("cfree cumulants need a {tilde, base} pair", "input")
        vals = pair_to_two_state_cumulants(s).R
    else:
        if isinstance(s, MeasurePair):
            raise SchemaError(f"{flavor.value} cumulants need a single measure", "input")
        vals = moments_to_cumulants(s, flavor).r
    return {"flavor": flavor.value, "order": len(vals) - 1, "cumulants": [format_rational(v) for v in vals[1:]]}


def cmd_convolve(args, stdin, out, err):
    flavor = Flavor.parse(args.flavor)
    doc = _read_input(args, stdin)
    if not isinstance(doc, list) or len(doc) != 2:
        raise SchemaError("convolve expects a JSON array of two measures", "input")
    a, b = (parse_measure(d, f"input[{i}]") for i, d in enumerate(doc))
    sa, sb = to_moments(a, args.order), to_moments(b, args.order)
    res = convolve(sa, sb, flavor)
    warn_if_not_positive(res, f"{flavor.value} convolution", err)
    return _same_shape(res, a)


def cmd_power(args, stdin, out, err):
    flavor = Flavor.parse(args.flavor)
    t = parse_rational(args.t, "--t")
    x = parse_measure(_read_input(args, stdin))
    res = power(to_moments(x, args.order), t, flavor, check_positivity=False)
    warn_if_not_positive(res, f"{flavor.value} power t={format_rational(t)}", err)
    return _same_shape(res, x)


def _parse_params(text: str) -> dict[str, Fraction]:
    params = {}
    for item in filter(None, (p.strip() for p in (text or "").split(","))):
        if "=" not in item:
            raise SchemaError(f"expected key=value, got {item!r}", "--params")
        k, v = (s.strip() for s in item.split("=", 1))
        params[k] = parse_rational(v, f"--params {k}")
    return params


def cmd_family(args, stdin, out, err):
    if args.name not in FAMILIES:
        raise KeyError(f"unknown family {args.name!r}; choose from {', '.join(FAMILIES)}")
    order = DEFAULT_ORDER if args.order is None else args.order
    t = parse_rational(args.t, "--t")
    j = build_family(args.name, _parse_params(args.params), t, order // 2 + 1, args.override_positivity)
    if args.override_positivity:
        warn_if_not_positive(to_moments(j, order), f"family {args.name} at t={format_rational(t)}", err)
    return jacobi_json(j)


def cmd_verify(args, stdin, out, err):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    report = Report()
    for name in names:
        report.extend(run_suite(name, args.seed))
    args._status = EXIT_OK if report.ok else EXIT_CHECK_FAILED
    return report.to_json()


COMMANDS = {
    "moments": (cmd_moments, "moments of a measure (Jacobi input is expanded to --order)"),
    "jacobi": (cmd_jacobi, "Jacobi parameters of a moment sequence"),
    "cumulants": (cmd_cumulants, "cumulants of the chosen --flavor"),
    "convolve": (cmd_convolve, "convolve a JSON array of two measures"),
    "power": (cmd_power, "convolution power --t of one measure"),
    "family": (cmd_family, "Jacobi rows of a named family at --t"),
    "verify": (cmd_verify, "run a verification suite"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncjacobi", description="Exact moments, Jacobi parameters and cumulants.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--order", type=int, default=None, help=f"truncation order (default: input order; for Jacobi rows {DEFAULT_ORDER} or as far as the rows reach)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--in", dest="infile", default=None, help="read input from FILE instead of stdin")
        if name in ("cumulants", "convolve", "power"):
            p.add_argument("--flavor", default="free", choices=[f.value for f in Flavor])
        if name in ("power", "family"):
            p.add_argument("--t", default="1", help="rational parameter, e.g. 3 or 1/2")
        if name == "family":
            p.add_argument("--name", required=True, help=", ".join(FAMILIES))
            p.add_argument("--params", default="", help="comma separated key=p/q pairs")
            p.add_argument("--override-positivity", action="store_true", help="allow quasi-definite parameters")
        if name == "verify":
            p.add_argument("--suite", default="all", help=", ".join(["all", *SUITES]))
    return parser


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin, stdout, stderr = stdin or sys.stdin, stdout or sys.stdout, stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_SCHEMA
    if args.order is not None and args.order < 0:
        stderr.write("error: --order must be non-negative\n")
        return EXIT_SCHEMA
    if args.command == "verify" and args.suite != "all" and args.suite not in SUITES:
        stderr.write(f"error: unknown suite {args.suite!r}; choose from {', '.join(SUITES)}\n")
        return EXIT_SCHEMA
    args._status = EXIT_OK
    handler = COMMANDS[args.command][0]
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            doc = handler(args, stdin, stdout, stderr)
    except SchemaError as e:
        stderr.write(f"error: {e}\n")
        return EXIT_SCHEMA
    except DomainError as e:
        stderr.write(f"error: {e}\n")
        return EXIT_DOMAIN
    except (KeyError, ValueError, OSError) as e:
        stderr.write(f"error: {e.args[0] if e.args else e}\n")
        return EXIT_SCHEMA
    emit(doc, args.format, stdout)
    return args._status


if __name__ == "__main__":
    sys.exit(main())
