"""Batch command-line front end.

    python -m thompsonf gen x 5
    python -m thompsonf eval --marking std.json --word "B A b a"
    python -m thompsonf girth --marking x0,x1 --max 10
    python -m thompsonf converge --family xn --R 6 --n 4..10 --format csv

Exit status: 0 success, 1 a verification failed, 2 usage error, 3 a
resource cap was hit.  All numbers are printed exactly.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from typing import Sequence

from .constructions import ResourceCapExceeded, construct_witnesses_multi, girth_chain, girth_marking, verify_fact
from .dyadic import parse as parse_dyadic
from .limits import get_family, threshold_table, verify_limit_convergence
from .metric import certify_girth, marked_distance_bound, shortest_relator
from .normalform import homeo_to_normalform, homeo_to_word, word_to_normalform
from .plhomeo import PLMap, generator, support
from .words import Marking, Word, evaluate, standard_marking

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- argument helpers ----------------------------------------------------------


def _n_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?", text)
    if not m:
        raise UsageError(f"bad range {text!r}; expected LO..HI")
    lo = int(m.group(1))
    hi = lo if m.group(2) is None else int(m.group(2))
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _read_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _load_marking(spec: str | None) -> Marking:
    """A JSON file (or ``-``), or a shorthand list of generators like ``x0,x1,x3``."""
    if spec is None or spec == "std":
        return standard_marking(0, 1)
    if re.fullmatch(r"x\d+(,x\d+)*", spec):
        return standard_marking(*(int(t[1:]) for t in spec.split(",")))
    try:
        return Marking.from_data(_read_json(spec))
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read marking {spec!r}: {exc}") from None


def _load_map(spec: str) -> PLMap:
    m = re.fullmatch(r"x(\d+)", spec)
    if m:
        return generator(int(m.group(1)))
    try:
        return PLMap.from_dict(_read_json(spec))
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read map {spec!r}: {exc}") from None


def _word(text: str | None) -> Word:
    if text is None:
        raise UsageError("--word is required")
    return Word.parse(text)


def _map_record(f: PLMap) -> dict:
    out = f.to_dict()
    out["support"] = support(f).to_list()
    return out


# -- output ----------------------------------------------------------------


def _emit(data, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(data, indent=2) + "\n")
        return
    rows = list(_flatten(data))
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["key", "value"])
        writer.writerows(rows)
    else:
        width = max((len(k) for k, _ in rows), default=0)
        for k, v in rows:
            out.write(f"{k.ljust(width)}  {v}\n")


def _flatten(data, prefix=""):
    if isinstance(data, dict):
        for k, v in data.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(data, list) and data and isinstance(data[0], (dict, list)) and not _is_pair(data[0]):
        for i, v in enumerate(data):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, _scalar(data)


def _is_pair(x) -> bool:
    return isinstance(x, list) and len(x) == 2 and all(isinstance(t, str) for t in x)


def _scalar(v) -> str:
    if isinstance(v, list):
        return " ".join(f"[{v_[0]}, {v_[1]}]" if _is_pair(v_) else _scalar(v_) for v_ in v)
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


# -- subcommands ---------------------------------------------------------------


def cmd_gen(args, out) -> int:
    if args.kind != "x":
        raise UsageError("gen expects 'x N'")
    if args.index < 0:
        raise UsageError("generator index must be non-negative")
    record = {"name": f"x{args.index}"}
    record.update(_map_record(generator(args.index)))
    _emit(record, args.format, out)
    return EXIT_OK


def cmd_eval(args, out) -> int:
    m = _load_marking(args.marking)
    w = _word(args.word)
    f = evaluate(w, m)
    record = {"word": str(w), "length": len(w), "is_identity": f.is_identity()}
    record.update(_map_record(f))
    _emit(record, args.format, out)
    return EXIT_OK


def cmd_nf(args, out) -> int:
    if args.word is not None:
        w = _word(args.word)
        m = _load_marking(args.marking)
        f = evaluate(w, m)
        via_homeo = homeo_to_normalform(f)
        record = {"word": str(w), "normal_form": str(via_homeo)}
        agree = True
        if m == standard_marking(0, 1):
            via_rewrite = word_to_normalform(w)
            agree = via_rewrite == via_homeo
            record["rewriting_normal_form"] = str(via_rewrite)
            record["routes_agree"] = agree
    elif args.map is not None:
        f = _load_map(args.map)
        nf = homeo_to_normalform(f)
        record = {"normal_form": str(nf)}
        agree = True
    else:
        raise UsageError("nf needs --word or --map")
    w_out = homeo_to_word(f)
    record["word_in_a_b"] = str(w_out)
    round_trip = evaluate(w_out, standard_marking(0, 1)) == f
    record["round_trip"] = round_trip
    _emit(record, args.format, out)
    return EXIT_OK if agree and round_trip else EXIT_FAIL


def cmd_support(args, out) -> int:
    if args.map is not None:
        f = _load_map(args.map)
        record = {}
    else:
        w = _word(args.word)
        f = evaluate(w, _load_marking(args.marking))
        record = {"word": str(w)}
    record["support"] = support(f).to_list()
    _emit(record, args.format, out)
    return EXIT_OK


def cmd_girth(args, out) -> int:
    m = _load_marking(args.marking)
    bound = args.max or 10
    found = shortest_relator(m, bound, jobs=args.jobs)
    record = {
        "marking": m.name or args.marking or "std",
        "rank": m.rank,
        "max": bound,
        "shortest_relator": None if found is None else str(found[0]),
        "girth": None if found is None else found[1],
        "no_relator_up_to": bound if found is None else found[1] - 1,
    }
    status = EXIT_OK
    if args.expect_free is not None:
        ok = found is None or found[1] > args.expect_free
        record["expect_no_relator_up_to"] = args.expect_free
        record["status"] = "PASS" if ok else "FAIL"
        status = EXIT_OK if ok else EXIT_FAIL
    _emit(record, args.format, out)
    return status


def cmd_construct(args, out) -> int:
    if args.mode is not None:
        m = args.m or args.max
        if m is None:
            raise UsageError("construct --mode needs --m")
        gm = girth_marking(args.l, m, args.mode, max_words=args.max_words, cap_breakpoints=args.cap_breakpoints)
        cert = certify_girth(gm, m, jobs=args.jobs)
        chain = girth_chain(gm)
        ok = cert.certified and all(link.holds for link in chain if link.derived)
        record = {
            "l": args.l,
            "m": m,
            "mode": args.mode,
            "epsilon": str(gm.epsilon),
            "words_certified": len(gm.witnesses.certificates),
            "breakpoints": [len(f) for f in gm.maps],
            "girth_certificate": cert.to_dict(),
            "chain_links": len(chain),
            "chain_holds": all(link.holds for link in chain if link.derived),
            "status": "PASS" if ok else "FAIL",
        }
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(gm.to_json() + "\n")
            record["marking_file"] = args.output
        _emit(record, args.format, out)
        return EXIT_OK if ok else EXIT_FAIL
    if not args.word:
        raise UsageError("construct needs --word (repeatable) or --mode")
    words = [Word.parse(t) for t in args.word]
    eps = parse_dyadic(args.epsilon)
    k = args.k or max(2, max(w.max_gen() for w in words) + 1)
    wit = construct_witnesses_multi(words, eps, k, cap_breakpoints=args.cap_breakpoints)
    _emit(wit.to_dict(), args.format, out)
    return EXIT_OK


def cmd_converge(args, out) -> int:
    try:
        family = get_family(args.family)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.n is None:
        raise UsageError("converge needs --n LO..HI")
    lo, hi = _n_range(args.n)
    if lo < 1:
        raise UsageError("n must start at 1 or later")
    ranges = {}
    if args.i is not None:
        ranges["i"] = _n_range(args.i)
    if family.kind == "power":
        for key in ("j", "k"):
            value = getattr(args, key)
            if value is not None:
                ranges[key] = _n_range(value)
    if args.thresholds:
        out.write(threshold_table(family, ranges, (lo, hi)))
        return EXIT_OK
    report = verify_limit_convergence(family, ranges, args.R, (lo, hi))
    if args.format == "csv":
        out.write(report.to_csv())
    elif args.format == "text":
        out.write(report.to_text() + "\n")
    else:
        out.write(report.to_json() + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_distance(args, out) -> int:
    if not args.marking or len(args.marking) != 2:
        raise UsageError("distance needs exactly two --marking arguments")
    m1, m2 = (_load_marking(s) for s in args.marking)
    if m1.rank != m2.rank:
        raise UsageError("markings must have equal rank")
    bound = marked_distance_bound(m1, m2, args.R, jobs=args.jobs)
    _emit(bound.to_dict(), args.format, out)
    return EXIT_OK


def cmd_fact(args, out) -> int:
    top = args.max or 6
    rows = []
    ok = True
    for m in range(1, top + 1):
        res = verify_fact(m)
        ok &= res.holds
        rows.append(
            {
                "m": m,
                "holds": res.holds,
                "classes_checked": res.classes_checked,
                "counterexample": None if res.counterexample is None else str(res.counterexample),
            }
        )
    _emit({"status": "PASS" if ok else "FAIL", "results": rows}, args.format, out)
    return EXIT_OK if ok else EXIT_FAIL


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--jobs", type=_positive, default=1)
    common.add_argument("--cap-breakpoints", type=_positive, default=None)

    parser = _Parser(prog="thompsonf", description="Exact computations in Thompson's group F.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="a standard generator x_n")
    p.add_argument("kind")
    p.add_argument("index", type=int)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("eval", parents=[common], help="evaluate a word in a marking")
    p.add_argument("--marking")
    p.add_argument("--word")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("nf", parents=[common], help="normal form of a word or map")
    p.add_argument("--marking")
    p.add_argument("--word")
    p.add_argument("--map")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("support", parents=[common], help="support of a word or map")
    p.add_argument("--marking")
    p.add_argument("--word")
    p.add_argument("--map")
    p.set_defaults(func=cmd_support)

    p = sub.add_parser("girth", parents=[common], help="shortest relator search")
    p.add_argument("--marking")
    p.add_argument("--max", type=_positive)
    p.add_argument("--expect-free", type=_positive, help="FAIL if a relator of this length or less exists")
    p.set_defaults(func=cmd_girth)

    p = sub.add_parser("construct", parents=[common], help="witness tuples and large-girth markings")
    p.add_argument("--word", action="append")
    p.add_argument("--epsilon", default="1/64")
    p.add_argument("--k", type=_positive)
    p.add_argument("--mode", choices=("faithful", "targeted"))
    p.add_argument("--l", type=int, default=3)
    p.add_argument("--m", type=_positive)
    p.add_argument("--max", type=_positive)
    p.add_argument("--max-words", type=_positive, default=50_000)
    p.add_argument("--output", help="write the marking JSON here")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("converge", parents=[common], help="limit-group convergence harness")
    p.add_argument("--family", required=True)
    p.add_argument("--R", type=_positive, default=4)
    p.add_argument("--n")
    p.add_argument("--i")
    p.add_argument("--j")
    p.add_argument("--k")
    p.add_argument("--thresholds", action="store_true", help="print the threshold CSV table only")
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("distance", parents=[common], help="bound the distance between two markings")
    p.add_argument("--marking", action="append")
    p.add_argument("--R", type=_positive, default=6)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("fact", parents=[common], help="check the free-group fact for m = 1..max")
    p.add_argument("--max", type=_positive)
    p.set_defaults(func=cmd_fact)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except ResourceCapExceeded as exc:
        err.write(f"cap exceeded: {exc}\n")
        return EXIT_CAP
    except ValueError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


def run_capture(argv: Sequence[str]) -> tuple[int, str, str]:
    """Run and return (exit code, stdout, stderr) as strings."""
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def main() -> None:
    sys.exit(run())
