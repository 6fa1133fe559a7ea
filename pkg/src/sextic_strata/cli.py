"""Command-line surface.

Subcommands: classify, sample, dual, det, cohomology, kron check,
kron window, verify.  Structured JSON (schema-versioned) is the default
output; --human renders text.  Exit codes: 0 success, 1 malformed input,
2 contract violation (off-table profile / non-injective matrix, with the
offending data in the report), 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    BudgetExceededError,
    InvalidPresentationError,
    NotInjectiveError,
    NotSquareError,
    ProfileNotInTable,
    RejectionBudgetExceeded,
    SexticStrataError,
)
from .fields import parse_field
from .kronecker import KroneckerModule, is_semistable, polarization_window_42
from .presentation import (
    Presentation,
    dumps,
    fitting_determinant,
    h0,
    h1,
    hilbert_polynomial,
    load,
    dual as dual_presentation,
)
from .sampler import SampleRequest, sample
from .strata import StratumLabel, classification_report
from .verify import DEFAULT_SEED, SUITES, run_suite

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_CONTRACT = 2
EXIT_BUDGET = 3


def _emit(doc: dict, human: bool) -> None:
    if human:
        print(_render(doc))
    else:
        print(json.dumps(doc, sort_keys=True, separators=(",", ":")))


def _render(doc: dict, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for key, value in doc.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_render(value, indent + 1))
        else:
            lines.append(f"{pad}{key}: {value}")
    return "\n".join(lines)


def _load_presentation(path: str) -> Presentation:
    try:
        return load(path)
    except FileNotFoundError:
        raise
    except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise InvalidPresentationError([f"malformed presentation file: {exc}"]) from exc


def cmd_classify(args) -> int:
    P = _load_presentation(args.file)
    try:
        report = classification_report(P)
    except (ProfileNotInTable, NotInjectiveError, NotSquareError) as exc:
        doc = {
            "schema_version": 1,
            "kind": "classification_error",
            "error": type(exc).__name__,
            "message": str(exc),
        }
        if isinstance(exc, ProfileNotInTable):
            doc["profile"] = list(exc.profile)
        _emit(doc, args.human)
        return EXIT_CONTRACT
    _emit(report, args.human)
    return EXIT_OK


def cmd_sample(args) -> int:
    field = parse_field(args.field)
    label = StratumLabel(args.stratum)
    req = SampleRequest(label, field, args.seed, max_rejects=args.max_rejects)
    P = sample(req)
    text = dumps(P)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        _emit({"schema_version": 1, "kind": "sample", "written": args.out,
               "metadata": P.metadata}, args.human)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_dual(args) -> int:
    P = _load_presentation(args.file)
    G = dual_presentation(P)
    text = dumps(G)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        _emit({"schema_version": 1, "kind": "dual", "written": args.out}, args.human)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_det(args) -> int:
    P = _load_presentation(args.file)
    det = fitting_determinant(P)
    _emit(
        {
            "schema_version": 1,
            "kind": "determinant",
            "degree": det.degree,
            "form": det.to_encoding(),
            "pretty": det.pretty(),
        },
        args.human,
    )
    return EXIT_OK


def cmd_cohomology(args) -> int:
    P = _load_presentation(args.file)
    hp = hilbert_polynomial(P)
    rows = []
    for t in range(args.tmin, args.tmax + 1):
        a, b = h0(P, t), h1(P, t)
        rows.append({"t": t, "h0": a, "h1": b, "chi": a - b})
    _emit(
        {
            "schema_version": 1,
            "kind": "cohomology_table",
            "hilbert": hp.as_list(),
            "rows": rows,
        },
        args.human,
    )
    return EXIT_OK


def cmd_kron_check(args) -> int:
    P = _load_presentation(args.file)
    K = KroneckerModule(P.matrix)
    res = is_semistable(K, mode=args.mode)
    doc = {
        "schema_version": 1,
        "kind": "kronecker_check",
        "mode": res.mode,
        "verdict": res.verdict,
        "checked": res.checked,
        "budget": res.budget,
    }
    if res.witness is not None:
        doc["witness"] = res.witness.report(P.field)
    _emit(doc, args.human)
    return EXIT_OK


def cmd_kron_window(args) -> int:
    rep = polarization_window_42(args.grid)
    doc = {"schema_version": 1, "kind": "polarization_windows"}
    doc.update(rep.as_dict())
    _emit(doc, args.human)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_suite(
        args.suite,
        seed=args.seed,
        samples_per_stratum=args.samples,
        oracle_matrices=args.oracle_matrices,
    )
    for r in results:
        print(r.line())
    ok = all(r.passed for r in results)
    print(f"{'OK' if ok else 'FAILED'}: {sum(r.passed for r in results)}/{len(results)} criteria passed")
    return EXIT_OK if ok else EXIT_CONTRACT


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="sextic-strata",
        description="Exact classification of degree-6 Euler-characteristic-1 plane sheaf presentations.",
    )
    ap.add_argument("--human", action="store_true", help="render reports as text instead of JSON")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a presentation file into its stratum")
    p.add_argument("file")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("sample", help="sample a presentation of a stratum")
    p.add_argument("--stratum", required=True, choices=[l.value for l in StratumLabel])
    p.add_argument("--field", default="p:101", help="'p:<prime>' or 'rational'")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-rejects", type=int, default=1000)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_sample)

    p = sub.add_parser("dual", help="dual presentation (twists t -> -2-t, transpose)")
    p.add_argument("file")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_dual)

    p = sub.add_parser("det", help="determinant of the presentation matrix")
    p.add_argument("file")
    p.set_defaults(fn=cmd_det)

    p = sub.add_parser("cohomology", help="table of h0, h1, chi over a twist range")
    p.add_argument("file")
    p.add_argument("--tmin", type=int, default=-3)
    p.add_argument("--tmax", type=int, default=3)
    p.set_defaults(fn=cmd_cohomology)

    kron = sub.add_parser("kron", help="Kronecker module operations")
    ksub = kron.add_subparsers(dest="kron_command", required=True)
    p = ksub.add_parser("check", help="semistability of an all-linear matrix")
    p.add_argument("file")
    p.add_argument("--mode", choices=["exact_smallfield", "randomized"], default="exact_smallfield")
    p.set_defaults(fn=cmd_kron_check)
    p = ksub.add_parser("window", help="polarization window sweep")
    p.add_argument("--grid", type=int, default=700)
    p.set_defaults(fn=cmd_kron_window)

    p = sub.add_parser("verify", help="run acceptance suites")
    p.add_argument("--suite", choices=sorted(SUITES), default="all")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--samples", type=int, default=200, help="samples per stratum")
    p.add_argument("--oracle-matrices", type=int, default=1000)
    p.set_defaults(fn=cmd_verify)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (BudgetExceededError, RejectionBudgetExceeded) as exc:
        print(json.dumps({"kind": "error", "error": type(exc).__name__, "message": str(exc)}))
        return EXIT_BUDGET
    except FileNotFoundError as exc:
        print(json.dumps({"kind": "error", "error": "FileNotFoundError", "message": str(exc)}))
        return EXIT_MALFORMED
    except (InvalidPresentationError, NotSquareError, ValueError) as exc:
        print(json.dumps({"kind": "error", "error": type(exc).__name__, "message": str(exc)}))
        return EXIT_MALFORMED
    except SexticStrataError as exc:
        print(json.dumps({"kind": "error", "error": type(exc).__name__, "message": str(exc)}))
        return EXIT_CONTRACT


if __name__ == "__main__":
    sys.exit(main())
