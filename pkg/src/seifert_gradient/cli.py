"""
Command-line front end.

    seifert-gradient classify "SFS[g=0; b=-1; (2,1),(3,1),(7,1)]"
    seifert-gradient gradient "SFS[g=2; b=1;]" --family prop-circle:i=2..100 --format csv
    seifert-gradient decide @manifolds.txt --family parametric:l=1,m=i

A manifold argument starting with ``@`` names a file with one notation per
line.  Errors go to stderr as a JSON object and set a non-zero exit status.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import __version__
from .classification import classify, has_finite_pi1
from .covers import (
    CoverValidationError,
    FamilyError,
    descriptor_from_json,
    materialize,
    parse_family,
)
from .gradient import (
    GradientError,
    decide_zero_gradient,
    gradient_sequence,
    negative_report,
    strong_gradient_report,
)
from .heegaard import (
    chi_h_interval,
    chi_sh_interval,
    genus_bounds,
    lemma_genus_interval,
    vertical_genus,
)
from .seifert_core import (
    NotationError,
    SeifertError,
    SeifertInvariants,
    base_orbifold,
    euler_number,
    format_sfs,
    orbifold_euler_characteristic,
    parse_sfs,
)
from .serialize import (
    SCHEMA_VERSION,
    classification_to_json,
    dumps,
    family_to_csv,
    family_to_json,
    genus_to_json,
    rational_to_json,
    report_to_csv,
    report_to_json,
)

COLOR_ENV = "SEIFERT_GRADIENT_COLOR"


class UsageError(Exception):
    pass


# exit status per error class; most specific class first
ERROR_CODES = (
    (UsageError, 2),
    (NotationError, 3),
    (CoverValidationError, 5),
    (FamilyError, 6),
    (GradientError, 7),
    (SeifertError, 4),
    (OSError, 8),
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_manifold(text: str) -> SeifertInvariants:
    return parse_sfs(text)


def _read_manifolds(arg: str) -> tuple[list[SeifertInvariants], bool]:
    if not arg.startswith("@"):
        return [parse_manifold(arg)], False
    lines = Path(arg[1:]).read_text().splitlines()
    return [parse_manifold(s) for s in lines if s.strip() and not s.lstrip().startswith("#")], True


def _color(word: str) -> str:
    if os.environ.get(COLOR_ENV, "").lower() not in ("1", "always", "yes"):
        return word
    code = {"Zero": "32", "Positive": "33", "Negative": "31"}.get(word, "35")
    return f"\033[{code}m{word}\033[0m"


def _kv_table(rows) -> str:
    width = max(len(k) for k, _ in rows)
    return "".join(f"{k:<{width}}  {v}\n" for k, v in rows)


def _kv_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("key", "value"))
    w.writerows(rows)
    return buf.getvalue()


def _flat(obj) -> str:
    if isinstance(obj, dict) and set(obj) == {"num", "den"}:
        return obj["num"] if obj["den"] == "1" else f"{obj['num']}/{obj['den']}"
    if isinstance(obj, (dict, list)):
        return json.dumps(obj, sort_keys=True)
    return str(obj)


# -- commands -----------------------------------------------------------------


def cmd_classify(M, args):
    data = classification_to_json(classify(M))
    rows = [(k, _flat(v)) for k, v in data.items() if k != "schema"]
    rows = [(k, _color(v) if k == "gradient_sign" else v) for k, v in rows]
    return data, rows, None


def cmd_invariants(M, args):
    O = base_orbifold(M)
    data = {
        "schema": f"seifert-gradient/invariants/v{SCHEMA_VERSION}",
        "manifold": format_sfs(M),
        "base_genus": M.base_genus,
        "b": M.b,
        "exceptional": [list(p) for p in M.exceptional],
        "k": M.k,
        "cone_orders": list(O.cone_orders),
        "orbifold_euler_characteristic": rational_to_json(orbifold_euler_characteristic(M)),
        "euler_number": rational_to_json(euler_number(M)),
    }
    return data, [(k, _flat(v)) for k, v in data.items() if k != "schema"], None


def cmd_genus(M, args):
    finite = has_finite_pi1(M)
    genus = lemma_genus_interval(M) if finite else genus_bounds(M)
    chi_h = None if finite else chi_h_interval(M)
    chi_sh = None if finite else chi_sh_interval(M)
    data = genus_to_json(M, genus, vertical_genus(M), chi_h, chi_sh, finite)
    return data, [(k, _flat(v)) for k, v in data.items() if k != "schema"], None


def _family(M, args):
    if not args.family:
        raise UsageError("--family is required")
    return parse_family(args.family, base=M)


def cmd_family(M, args):
    family = _family(M, args)
    indexed = materialize(M, family)
    data = family_to_json(M, family, indexed)
    rows = [
        (f"i={c['i']}", f"{c['sfs'] or '?'}  d={c['d']} m={c['m']} l={c['l']}")
        for c in data["covers"]
    ]
    return data, rows, family_to_csv(indexed)


def _report_output(report):
    data = report_to_json(report)
    rows = [
        ("base", data["base"]),
        ("family", data["family"] or ""),
        ("verdict", _color(data["verdict"])),
        ("inf_upper_bound", _flat(data["inf_upper_bound"])),
        ("inf_lower_bound", _flat(data["inf_lower_bound"])),
        ("terms", str(len(data["terms"]))),
    ]
    rows += [(f"certificate[{n}]", line) for n, line in enumerate(data["certificate"])]
    return data, rows, report_to_csv(report)


def _load_cover(M, arg):
    if arg is None:
        return None
    raw = Path(arg[1:]).read_text() if arg.startswith("@") else arg
    return descriptor_from_json(json.loads(raw), M)


def cmd_gradient(M, args):
    family = _family(M, args)
    through = _load_cover(M, args.through)
    if args.strong:
        return _report_output(strong_gradient_report(M, through, family))
    if has_finite_pi1(M):
        return _report_output(negative_report(M))
    return _report_output(gradient_sequence(M, family, through=through))


def cmd_decide(M, args):
    return _report_output(decide_zero_gradient(M, _family(M, args)))


COMMANDS = {
    "classify": (cmd_classify, "geometry, finiteness of pi_1, virtual fibering, gradient sign"),
    "invariants": (cmd_invariants, "normalized invariants, chi(O) and e(M)"),
    "genus": (cmd_genus, "Heegaard genus interval and chi_- intervals"),
    "family": (cmd_family, "materialize a family of covers"),
    "gradient": (cmd_gradient, "gradient terms and infimum bounds for a family"),
    "decide": (cmd_decide, "zero-gradient decision by unboundedness of fiber degrees"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="seifert-gradient", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument(
        "--version", action="version",
        version=f"seifert-gradient {__version__} (schema v{SCHEMA_VERSION})",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("manifold", help="SFS[...] notation, or @file with one per line")
        p.add_argument("--format", choices=("table", "json", "csv"), default="table")
        if name in ("family", "gradient", "decide"):
            p.add_argument("--family", help="e.g. prop-circle:i=2..100, parametric:l=1,m=i")
        if name == "gradient":
            p.add_argument("--through", help="JSON cover {sfs,d,m,l} of the manifold, or @file")
            p.add_argument("--strong", action="store_true",
                           help="use strongly irreducible Heegaard surfaces")
    return parser


def _error_code(exc) -> tuple[str, int]:
    for cls, code in ERROR_CODES:
        if isinstance(exc, cls):
            return type(exc).__name__, code
    return type(exc).__name__, 1


def _emit_error(exc, stderr) -> int:
    name, code = _error_code(exc)
    payload = {"error": name, "code": code, "message": str(exc)}
    if isinstance(exc, NotationError):
        payload["position"] = exc.position
    if isinstance(exc, CoverValidationError):
        payload["invariant"] = exc.invariant
    stderr.write(json.dumps(payload) + "\n")
    return code


def run(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        func = COMMANDS[args.command][0]
        manifolds, batch = _read_manifolds(args.manifold)
        outputs = [func(M, args) for M in manifolds]
    except SystemExit as exc:  # --version / --help
        return int(exc.code or 0)
    except (UsageError, SeifertError, OSError, json.JSONDecodeError) as exc:
        if isinstance(exc, json.JSONDecodeError):
            exc = FamilyError(f"invalid JSON: {exc}")
        return _emit_error(exc, stderr)

    if args.format == "json":
        docs = [data for data, _, _ in outputs]
        stdout.write(dumps(docs if batch else docs[0]))
    elif args.format == "csv":
        for data, rows, table_csv in outputs:
            stdout.write(table_csv if table_csv is not None else _kv_csv(rows))
    else:
        stdout.write("\n".join(_kv_table(rows) for _, rows, _ in outputs))
    return 0


def main(argv=None) -> None:
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
