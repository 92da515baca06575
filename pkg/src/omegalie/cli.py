"""Command-line front end: document I/O, commands, report emission.

One document holds one algebra; batch work composes in the shell.
Exit codes are fixed for scripting: 0 success, 1 domain failure
(validation, classification or isomorphism trouble), 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

import numpy as np

from . import catalog
from .classify import classify
from .core import (COMPLEX, REAL, Algebra, Bracket, OmegaForm, Tolerances,
                   validate)
from .errors import DocumentError, OmegaAlgebraError
from .isomorphism import is_isomorphic, search_witness
from .labels import ALL_KINDS, PARAMETRIC, ClassLabel
from .oracle import TrialConfig, run_completeness, run_invariance, run_table1

_DOC_KEYS = {"schema", "field", "brackets", "omega", "metadata"}
_SLOT_KEYS = {"xy", "xz", "yz"}

_NAME_TO_KIND = {label.lower(): label for label in ALL_KINDS}
_NAME_TO_KIND.update({"abelian": "Abelian", "b-1": "Bm1", "e+": "EPlus",
                      "e-": "EMinus", "h": "H"})


# ---------------------------------------------------------------------------
# document handling


def _scalar_from_json(value, where: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if (isinstance(value, list) and len(value) == 2
            and all(isinstance(x, (int, float)) for x in value)):
        return complex(value[0], value[1])
    raise DocumentError(f"{where}: scalar must be a number or a "
                        "[re, im] pair")


def parse_document(doc: dict) -> Algebra:
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    unknown = set(doc) - _DOC_KEYS
    if unknown:
        raise DocumentError(f"unknown keys {sorted(unknown)}")
    if doc.get("schema", 1) != 1:
        raise DocumentError("unsupported schema version")
    field = doc.get("field")
    if field not in (REAL, COMPLEX):
        raise DocumentError('field must be "real" or "complex"')
    brackets = doc.get("brackets")
    if not isinstance(brackets, dict) or set(brackets) != _SLOT_KEYS:
        raise DocumentError('brackets must hold exactly the keys '
                            '"xy", "xz", "yz"')
    triples = {}
    for key in ("xy", "xz", "yz"):
        row = brackets[key]
        if not isinstance(row, list) or len(row) != 3:
            raise DocumentError(f"brackets.{key} must be a 3-element list")
        triples[key] = [_scalar_from_json(v, f"brackets.{key}") for v in row]
    bracket = Bracket(triples["xy"], triples["xz"], triples["yz"])

    omega = None
    if "omega" in doc:
        raw = doc["omega"]
        if not isinstance(raw, dict) or set(raw) - _SLOT_KEYS:
            raise DocumentError('omega may hold only the keys "xy", "xz", "yz"')
        omega = OmegaForm(
            _scalar_from_json(raw.get("xy", 0.0), "omega.xy"),
            _scalar_from_json(raw.get("xz", 0.0), "omega.xz"),
            _scalar_from_json(raw.get("yz", 0.0), "omega.yz"),
        )
    try:
        return Algebra(field, bracket, omega)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def load_document(path: str) -> Algebra:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON in {path}: {exc}") from exc
    return parse_document(doc)


def _scalar_json(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def _omega_json(w: OmegaForm) -> dict:
    return {"xy": _scalar_json(w.wxy), "xz": _scalar_json(w.wxz),
            "yz": _scalar_json(w.wyz)}


def _matrix_json(m: np.ndarray) -> list:
    return [[_scalar_json(complex(m[i, j])) for j in range(3)]
            for i in range(3)]


def dump_document(a: Algebra, metadata: Optional[dict] = None) -> dict:
    def triple(arr):
        return [_scalar_json(complex(v)) for v in arr]

    doc = {
        "schema": 1,
        "field": a.field,
        "brackets": {
            "xy": triple(a.bracket.cxy),
            "xz": triple(a.bracket.cxz),
            "yz": triple(a.bracket.cyz),
        },
        "omega": _omega_json(a.omega),
    }
    if metadata:
        doc["metadata"] = metadata
    return doc


def _emit(payload: dict, as_json: bool, lines: list[str]) -> None:
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


# ---------------------------------------------------------------------------
# tolerances and labels from flags


def _tols(args) -> Tolerances:
    return Tolerances(
        validation=args.tol,
        rank=args.tol_rank,
        spectral=args.tol_spec,
        witness=args.tol_wit,
    )


def _add_tol_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol", type=float, default=1e-9,
                        help="validation tolerance (relative)")
    parser.add_argument("--tol-rank", type=float, default=1e-9,
                        help="rank decision tolerance")
    parser.add_argument("--tol-spec", type=float, default=1e-7,
                        help="eigenvalue clustering tolerance")
    parser.add_argument("--tol-wit", type=float, default=1e-6,
                        help="witness verification tolerance")


def _label_from_name(name: str, params: dict) -> ClassLabel:
    kind = _NAME_TO_KIND.get(name.lower())
    if kind is None:
        raise DocumentError(f"unknown catalog name {name!r}")
    if kind in PARAMETRIC:
        if "alpha" not in params:
            raise DocumentError(f"{name} needs --param alpha=VALUE")
        return ClassLabel(kind, params["alpha"])
    return ClassLabel(kind)


def _parse_params(pairs: list[str]) -> dict:
    out = {}
    for pair in pairs:
        if "=" not in pair:
            raise DocumentError(f"--param expects KEY=VALUE, got {pair!r}")
        key, _, raw = pair.partition("=")
        try:
            out[key.strip()] = complex(raw.strip().replace("i", "j"))
        except ValueError as exc:
            raise DocumentError(f"cannot parse parameter {pair!r}") from exc
    return out


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    algebra = load_document(args.path)
    report = validate(algebra, args.tol)
    if args.convention == "plus":
        passed = report.passed
    elif args.convention == "minus":
        passed = report.passed_negated
    else:
        passed = report.passed or report.passed_negated
    passed = passed and report.field_ok and report.finite_ok
    ind = report.induced
    payload = {
        "schema": 1,
        "kind": "validate",
        "passed": bool(passed),
        "requested_convention": args.convention,
        "convention": report.convention,
        "discrepancy": report.discrepancy,
        "discrepancy_negated": report.discrepancy_negated,
        "induced_omega": _omega_json(ind),
        "is_lie": report.is_lie,
        "field_ok": report.field_ok,
        "finite_ok": report.finite_ok,
    }
    lines = [
        f"induced omega: xy={ind.wxy:.12g} xz={ind.wxz:.12g} yz={ind.wyz:.12g}",
        f"discrepancy as stored: {report.discrepancy:.3e}",
        f"discrepancy negated:   {report.discrepancy_negated:.3e}",
        f"sign convention: {report.convention or 'none matches'}",
        f"lie (trivial form): {report.is_lie}",
        f"result: {'pass' if passed else 'FAIL'}",
    ]
    _emit(payload, args.json, lines)
    return 0 if passed else 1


def _classify_payload(out) -> dict:
    diag = out.diagnostics
    stype = diag.get("spectral_type")
    return {
        "schema": 1,
        "kind": "classify",
        "label": out.label.display(),
        "params": [_scalar_json(p) for p in out.label.params()],
        "witness": _matrix_json(out.witness.matrix),
        "residual": float(out.witness.residual),
        "convention": diag.get("convention"),
        "diagnostics": {
            "derived_rank": diag.get("derived_rank"),
            "is_lie": diag.get("is_lie"),
            "spectral_type": None if stype is None else stype.name,
            "induced_omega": _omega_json(diag["induced_omega"]),
            "field": diag.get("field"),
            "model_field": diag.get("model_field"),
        },
    }


def cmd_classify(args) -> int:
    algebra = load_document(args.path)
    out = classify(algebra, _tols(args))
    payload = _classify_payload(out)
    lines = [
        f"label: {out.label.display()}",
        f"residual: {out.witness.residual:.3e}",
        f"derived rank: {payload['diagnostics']['derived_rank']}",
        f"spectral type: {payload['diagnostics']['spectral_type']}",
        f"convention: {payload['convention']}",
        "witness (columns are the canonical basis in input coordinates):",
    ]
    for row in out.witness.matrix:
        lines.append("  " + "  ".join(f"{z.real:+.6g}{z.imag:+.6g}j"
                                      for z in row))
    _emit(payload, args.json, lines)
    return 0


def cmd_isomorphic(args) -> int:
    a = load_document(args.path_a)
    b = load_document(args.path_b)
    tols = _tols(args)
    result = is_isomorphic(a, b, tols)
    searched = None
    if args.search:
        searched = search_witness(a, b, attempts=args.attempts, tols=tols,
                                  seed=args.seed)
    payload = {
        "schema": 1,
        "kind": "isomorphic",
        "isomorphic": result.isomorphic,
        "via": result.via,
        "witness": (_matrix_json(result.witness.matrix)
                    if result.witness is not None else None),
        "residual": (float(result.witness.residual)
                     if result.witness is not None else None),
        "labels": [r.label.display() for r in result.reports],
    }
    lines = [
        f"isomorphic: {result.isomorphic}",
        f"labels: {', '.join(payload['labels'])}",
    ]
    if result.witness is not None:
        lines.append(f"witness residual: {result.witness.residual:.3e}")
    if args.search:
        payload["search_found"] = searched is not None
        payload["search_residual"] = (float(searched.residual)
                                      if searched is not None else None)
        lines.append(f"direct search found a witness: {searched is not None}")
        if searched is not None and not result.isomorphic:
            lines.append("WARNING: search contradicts canonical-compare")
    _emit(payload, args.json, lines)
    return 0 if result.isomorphic else 1


def cmd_catalog(args) -> int:
    if args.action == "list":
        names = sorted(_NAME_TO_KIND.values()) + list(catalog.BIANCHI_TYPES)
        payload = {"schema": 1, "kind": "catalog", "names": names}
        _emit(payload, args.json, names)
        return 0
    params = _parse_params(args.param or [])
    if args.name in catalog.BIANCHI_TYPES:
        a_val = params.get("a")
        entry = catalog.bianchi(args.name,
                                a_val.real if a_val is not None else None)
        doc = dump_document(entry.algebra, metadata={
            "name": entry.name,
            "source": entry.source,
            "printed_omega": _omega_json(entry.printed_omega),
            "convention": entry.convention,
            "stated_class": entry.stated_class,
        })
    else:
        label = _label_from_name(args.name, params)
        field = args.field
        entry = catalog.entry(label, field)
        doc = dump_document(entry.algebra, metadata={
            "name": entry.name, "source": entry.source,
        })
    print(json.dumps(doc, indent=2, sort_keys=True))
    return 0


def cmd_table1(args) -> int:
    cfg = TrialConfig(seed=args.seed, trials=1, field=REAL,
                      tolerances=_tols(args))
    report = run_table1(cfg)
    payload = report.to_dict()
    lines = []
    for row in report.rows:
        a_txt = "" if row["a"] is None else f" a={row['a']:g}"
        lines.append(
            f"{row['type']:<10}{a_txt:<7} sign {row['convention'] or '??'}  "
            f"-> {row['label']:<12} expected {row['stated_class']:<5} "
            f"{'ok' if row['match'] else 'MISMATCH'}  "
            f"search={'hit' if row['search_found'] else 'miss'}")
    lines.append(f"all rows match: {report.passed}")
    _emit(payload, args.json, lines)
    return 0 if report.passed else 1


def cmd_oracle(args) -> int:
    cfg = TrialConfig(seed=args.seed, trials=args.trials, field=args.field,
                      cond_cap=args.cond_cap, tolerances=_tols(args))
    if args.run == "completeness":
        report = run_completeness(cfg)
    else:
        report = run_invariance(cfg)
    payload = report.to_dict()
    lines = [
        f"run: {report.kind} (field={cfg.field}, seed={cfg.seed}, "
        f"trials={cfg.trials})",
        f"trials used: {report.trials_used}  lie skipped: "
        f"{report.skipped_lie}  quarantined: {report.quarantined}",
        "class counts: " + ", ".join(f"{k}:{v}" for k, v in
                                     sorted(report.counts.items())),
        f"failures: {len(report.failures)}",
        f"result: {'pass' if report.passed else 'FAIL'}",
    ]
    _emit(payload, args.json, lines)
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omegalie",
        description="3-dimensional skew-bracket algebras: validate, "
                    "classify with witnesses, compare, and stress-test.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a document's form")
    p.add_argument("path")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--convention", choices=("auto", "plus", "minus"),
                   default="auto")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("classify", help="classify a document")
    p.add_argument("path")
    _add_tol_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("isomorphic", help="decide isomorphism of two documents")
    p.add_argument("path_a")
    p.add_argument("path_b")
    _add_tol_flags(p)
    p.add_argument("--search", action="store_true",
                   help="also run the independent witness search")
    p.add_argument("--attempts", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_isomorphic)

    p = sub.add_parser("catalog", help="list or dump canonical models")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    p.add_argument("--field", choices=(REAL, COMPLEX), default=None)
    p.add_argument("--param", action="append",
                   help="family parameter, e.g. --param alpha=2 or "
                        "--param a=0.5")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("table1", help="replay the Bianchi-type rows")
    p.add_argument("--seed", type=int, default=0)
    _add_tol_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("oracle", help="randomized property runs")
    p.add_argument("run", choices=("completeness", "invariance"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--field", choices=(REAL, COMPLEX), default=COMPLEX)
    p.add_argument("--cond-cap", type=float, default=100.0)
    _add_tol_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "catalog" and args.action == "show" and not args.name:
        parser.error("catalog show requires a name")
    try:
        return args.func(args)
    except DocumentError as exc:
        print(json.dumps({"schema": 1, "kind": "error",
                          "error": "DocumentError", "detail": str(exc)}),
              file=sys.stderr)
        return 2
    except OmegaAlgebraError as exc:
        print(json.dumps({"schema": 1, "kind": "error",
                          "error": type(exc).__name__, "detail": str(exc)}),
              file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
