"""Command-line frontend: analyze, verify-paper, fuzz.

Exit codes: 0 success, 2 when a theorem verdict is violated (analyze and
fuzz), 1 on errors and on verify-paper mismatches.  Reports carry no
floats and no timestamps, and every random draw is seeded, so a fixed
request yields byte-identical output across runs.
"""

from __future__ import annotations

import argparse
import json
import sys

from .analysis import AnalysisSession
from .corpus import CorpusConfig, run_corpus
from .errors import ParseError, RRCalcError
from .golden import run_all_golden
from .limits import Limits
from .request import parse_request
from .theorems import has_violation, run_checks


def _limits_from_args(args) -> Limits:
    overrides = {}
    if args.nmax is not None:
        overrides["n_max"] = args.nmax
        overrides["rd_n_max"] = args.nmax
    if args.window is not None:
        overrides["window"] = args.window
    if args.samples is not None:
        overrides["samples"] = args.samples
    if args.floor is not None:
        overrides["floor"] = args.floor
    base = Limits()
    return Limits(**{**base.to_dict(), **overrides})


def _emit(doc: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(doc, indent=2))
        out.write("\n")
    elif fmt == "csv":
        out.write(_to_csv(doc))
    else:
        out.write(_to_text(doc))


def _flatten(prefix: str, value, rows) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(value, list):
        rows.append((prefix, json.dumps(value)))
    else:
        rows.append((prefix, value))


def _to_csv(doc: dict) -> str:
    rows: list = []
    _flatten("", doc, rows)
    lines = ["section,key,value"]
    for key, value in rows:
        section, _, rest = key.partition(".")
        text = json.dumps(value) if not isinstance(value, str) else value
        text = text.replace('"', '""')
        lines.append(f'{section},{rest},"{text}"')
    return "\n".join(lines) + "\n"


def _to_text(doc: dict) -> str:
    lines = []
    ring = doc["ring"]
    lines.append(f"ring Q[{','.join(ring['variables'])}]  (dimension {ring['dimension']})")
    lines.append("ideal " + ", ".join(doc["ideal"]["generators"]))
    h = doc["hilbert"]
    lines.append(f"hilbert e = {h['e']}, anchor = {h['anchor']}, postulation = {h['postulation']}")
    rr = doc.get("ratliff_rush")
    if rr:
        lines.append(
            f"ratliff-rush rho = {rr['rho']} (colon route {rr['rho_x']}), "
            f"omega = {rr['omega']}, rho mod x = {rr['rho_quotient']}"
        )
        if rr.get("superficial"):
            lines.append(f"superficial element: {rr['superficial']['element']}")
        qh = rr.get("quotient_hilbert")
        if qh:
            lines.append(
                f"quotient hilbert e = {qh['e']}, postulation = {qh['postulation']}"
            )
    reds = doc.get("reductions")
    if reds:
        lines.append(
            f"reductions rd_min = {reds['rd_min']} ({reds['verdict']}), "
            f"histogram = {reds['histogram']}"
        )
    for verdict in doc.get("theorems", []):
        lines.append(
            f"theorem {verdict['theorem']}: {verdict['hypothesis']} / {verdict['conclusion']}"
        )
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    limits = _limits_from_args(args)
    try:
        text = open(args.file, encoding="utf-8").read() if args.file != "-" else sys.stdin.read()
        request = parse_request(text)
        with_omega = {"auto": None, "on": True, "off": False}[args.omega]
        session = AnalysisSession(
            request.main_ideal,
            limits,
            seed=args.seed,
            element=request.element,
            with_omega=with_omega,
        )
        verdicts = run_checks(session)
        doc = session.document(theorems=verdicts)
    except ParseError as exc:
        _emit_error(exc, args)
        return 1
    except RRCalcError as exc:
        _emit_error(exc, args)
        return 1
    _emit(doc, args.format, sys.stdout)
    return 2 if has_violation(verdicts) else 0


def _emit_error(exc: Exception, args) -> None:
    doc = {"error": {"type": type(exc).__name__, "message": str(exc)}}
    if getattr(args, "format", "json") == "json":
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write(f"error: {type(exc).__name__}: {exc}\n")


def cmd_verify_paper(args) -> int:
    results = run_all_golden()
    if args.format == "json":
        sys.stdout.write(json.dumps(results, indent=2) + "\n")
    else:
        for res in results:
            status = "PASS" if res["ok"] else "FAIL"
            sys.stdout.write(f"{status}  {res['name']}\n")
            if res["error"]:
                sys.stdout.write(f"      error: {res['error']}\n")
            for key, entry in res["fields"].items():
                if not entry["ok"]:
                    sys.stdout.write(
                        f"      {key}: expected {entry['expected']}, got {entry['got']}\n"
                    )
            for key, note in res.get("notes", {}).items():
                sys.stdout.write(f"      note [{key}]: {note}\n")
        passed = sum(1 for r in results if r["ok"])
        sys.stdout.write(f"{passed}/{len(results)} pass\n")
    return 0 if all(r["ok"] for r in results) else 1


def cmd_fuzz(args) -> int:
    data = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            data = json.load(fh)
    for key in ("count", "seed", "samples", "window", "floor", "jobs"):
        value = getattr(args, key)
        if value is not None:
            data[key] = value
    if args.nmax is not None:
        data["n_max"] = args.nmax
    if args.out_dir is not None:
        data["out_dir"] = args.out_dir
    try:
        config = CorpusConfig.from_dict(data)
        report = run_corpus(config)
    except (RRCalcError, ValueError) as exc:
        sys.stdout.write(json.dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}) + "\n")
        return 1
    sys.stdout.write(json.dumps(report, indent=2) + "\n")
    return 2 if report["summary"]["violations"] else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rrcalc",
        description=(
            "Exact Hilbert-Samuel / Ratliff-Rush / reduction-number analysis "
            "of m-primary ideals over Q"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--nmax", type=int, default=None, help="chain/scan horizon")
        p.add_argument("--window", type=int, default=None, help="stabilization window")
        p.add_argument("--samples", type=int, default=None, help="reduction samples")
        p.add_argument("--seed", type=int, default=0, help="master seed")
        p.add_argument("--floor", type=int, default=None, help="postulation scan floor")

    p_analyze = sub.add_parser("analyze", help="analyze one ideal from an input file")
    p_analyze.add_argument("file", help="input file ('-' for stdin)")
    common(p_analyze)
    p_analyze.add_argument(
        "--format", choices=("json", "csv", "text"), default="json"
    )
    p_analyze.add_argument(
        "--omega", choices=("auto", "on", "off"), default="auto",
        help="compute the surjectivity index (auto: only for d = 2)",
    )
    p_analyze.set_defaults(func=cmd_analyze)

    p_verify = sub.add_parser("verify-paper", help="re-run the six pinned examples")
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    p_verify.set_defaults(func=cmd_verify_paper)

    p_fuzz = sub.add_parser("fuzz", help="run a seeded random-ideal corpus")
    p_fuzz.add_argument("config", nargs="?", default=None, help="JSON config file")
    p_fuzz.add_argument("--count", type=int, default=None)
    p_fuzz.add_argument("--seed", type=int, default=None)
    p_fuzz.add_argument("--nmax", type=int, default=None)
    p_fuzz.add_argument("--window", type=int, default=None)
    p_fuzz.add_argument("--samples", type=int, default=None)
    p_fuzz.add_argument("--floor", type=int, default=None)
    p_fuzz.add_argument("--jobs", type=int, default=None)
    p_fuzz.add_argument("--out-dir", default=None, help="directory for violation repros")
    p_fuzz.set_defaults(func=cmd_fuzz)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
