"""Seed-reproducible property harness for the classification machinery.

Three runs: completeness samples random skew brackets and demands a
verified witness for every non-degenerate one; invariance re-classifies
catalog models under random basis changes and tracks parameter drift;
the table run replays the Bianchi-type rows against their stated
classes, recording the sign convention and a search-based cross-check
per row.  Identical configurations produce byte-identical reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from . import catalog
from .classify import canonicalize_ratio, classify
from .core import (COMPLEX, REAL, Algebra, Bracket, Tolerances,
                   condition_number, induced_omega, transform, validate)
from .errors import (AmbiguousSpectrum, ImpossibleCaseD, InconsistentRank,
                     OmegaAlgebraError)
from .isomorphism import search_witness
from .labels import ClassLabel


@dataclass(frozen=True)
class TrialConfig:
    seed: int = 0
    trials: int = 1000
    field: str = COMPLEX
    cond_cap: float = 100.0
    tolerances: Tolerances = dc_field(default_factory=Tolerances)

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not self.cond_cap > 1.0:
            raise ValueError("condition cap must exceed 1")

    def to_dict(self) -> dict:
        t = self.tolerances
        return {
            "seed": int(self.seed),
            "trials": int(self.trials),
            "field": self.field,
            "cond_cap": float(self.cond_cap),
            "tolerances": {"validation": t.validation, "rank": t.rank,
                           "spectral": t.spectral, "witness": t.witness},
        }


def random_skew_bracket(rng: np.random.Generator, field: str) -> Bracket:
    """I.i.d. unit-scale structure constants."""
    coeffs = rng.standard_normal((3, 3))
    if field == COMPLEX:
        coeffs = coeffs + 1j * rng.standard_normal((3, 3))
    return Bracket(coeffs[0], coeffs[1], coeffs[2])


def random_basis_change(rng: np.random.Generator, field: str,
                        cond_cap: float = 100.0,
                        max_tries: int = 1000) -> np.ndarray:
    """Random invertible matrix, redrawn until the condition number is
    below the cap.  Rejection is simple and cheap at this size."""
    for _ in range(max_tries):
        p = rng.standard_normal((3, 3))
        if field == COMPLEX:
            p = p + 1j * rng.standard_normal((3, 3))
        if condition_number(p) < cond_cap:
            return p.astype(np.complex128)
    raise RuntimeError("could not draw a well-conditioned basis change")


@dataclass(frozen=True, eq=False)
class SummaryReport:
    kind: str
    config: dict
    counts: dict
    failures: list
    quarantined: int
    skipped_lie: int
    trials_used: int
    notes: list

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "kind": "oracle",
            "run": self.kind,
            "config": self.config,
            "counts": {k: self.counts[k] for k in sorted(self.counts)},
            "failures": self.failures,
            "quarantined": self.quarantined,
            "skipped_lie": self.skipped_lie,
            "trials_used": self.trials_used,
            "notes": self.notes,
            "passed": self.passed,
        }


def _near_degenerate(a: Algebra, tols: Tolerances) -> bool:
    """Pre-screen for samples whose classification-relevant gaps sit
    within 10x of tolerance: rank pivots of the bracket matrix and the
    Lie decision margin.  Those are quarantined, not failed; numerics,
    not mathematics, is the suspect there."""
    scale = max(1.0, a.bracket.scale())
    s = np.linalg.svd(a.bracket.matrix(), compute_uv=False)
    if s[0] > 0:
        ratios = s / s[0]
        if np.any((ratios > tols.rank) & (ratios < 10.0 * tols.rank)):
            return True
    w = induced_omega(a.bracket)
    margin = w.max_abs() / scale
    if tols.validation < margin < 10.0 * tols.validation:
        return True
    return False


def run_completeness(cfg: TrialConfig) -> SummaryReport:
    """Sample random skew brackets, induce the form, classify every
    non-degenerate non-Lie sample and verify its witness."""
    rng = np.random.default_rng(cfg.seed)
    tols = cfg.tolerances
    counts: dict = {}
    failures: list = []
    quarantined = 0
    skipped_lie = 0
    case_d = 0
    for trial in range(cfg.trials):
        bracket = random_skew_bracket(rng, cfg.field)
        algebra = Algebra(cfg.field, bracket)
        rep = validate(algebra, tols.validation)
        if rep.is_lie:
            skipped_lie += 1
            continue
        if _near_degenerate(algebra, tols):
            quarantined += 1
            continue
        try:
            out = classify(algebra, tols)
        except AmbiguousSpectrum:
            quarantined += 1
            continue
        except ImpossibleCaseD as exc:
            case_d += 1
            failures.append({"trial": trial, "error": "ImpossibleCaseD",
                             "detail": str(exc)})
            continue
        except InconsistentRank as exc:
            failures.append({"trial": trial, "error": "InconsistentRank",
                             "detail": str(exc)})
            continue
        key = out.label.kind
        counts[key] = counts.get(key, 0) + 1
        if not out.witness.verified(tols.witness):
            failures.append({
                "trial": trial,
                "error": "UnverifiedWitness",
                "label": out.label.display(),
                "residual": _reported_residual(float(out.witness.residual)),
            })
    failures.sort(key=lambda f: f["trial"])
    notes = [f"impossible-case occurrences: {case_d}"]
    return SummaryReport("completeness", cfg.to_dict(), counts, failures,
                         quarantined, skipped_lie, cfg.trials, notes)


def _invariance_models(field: str) -> list[ClassLabel]:
    if field == COMPLEX:
        return [
            ClassLabel("L1"), ClassLabel("L2"),
            ClassLabel("A", 0.0), ClassLabel("A", 1.3),
            ClassLabel("A", complex(0.4, -0.9)),
            ClassLabel("B"),
            ClassLabel("C", 2.0), ClassLabel("C", complex(-0.8, 1.1)),
            ClassLabel("Abelian"), ClassLabel("G1"), ClassLabel("G2"),
            ClassLabel("H", 3.0), ClassLabel("G3"), ClassLabel("G4"),
        ]
    return [
        ClassLabel("L1"), ClassLabel("L2"),
        ClassLabel("ACal", 0.0), ClassLabel("ACal", 1.5),
        ClassLabel("CCal", 2.0), ClassLabel("CCal", -2.0),
        ClassLabel("B1"), ClassLabel("Bm1"),
        ClassLabel("EPlus", 1.25), ClassLabel("EMinus", 0.75),
        ClassLabel("Abelian"), ClassLabel("G1"), ClassLabel("G2"),
        ClassLabel("H", 2.0), ClassLabel("G3"), ClassLabel("G4"),
    ]


def _canonical_param(label: ClassLabel) -> Optional[complex]:
    if label.param is None:
        return None
    if label.kind in ("H", "C", "CCal"):
        return canonicalize_ratio(label.param)
    if label.kind in ("EPlus", "EMinus"):
        return abs(label.param)
    if label.kind in ("A", "ACal"):
        # one isomorphism class; the classifier pins the zero representative
        return 0.0
    return label.param


def run_invariance(cfg: TrialConfig) -> SummaryReport:
    """Transform each catalog model by cfg.trials random basis changes
    and demand label stability with canonical parameter agreement.

    Doubles as the empirical uniqueness probe for the nilpotent-chain
    family: a transformed member must never come back with a parameter
    drifted beyond 1e-4.
    """
    rng = np.random.default_rng(cfg.seed)
    tols = cfg.tolerances
    counts: dict = {}
    failures: list = []
    max_drift = 0.0
    trial = 0
    for label in _invariance_models(cfg.field):
        alg = catalog.model(label, cfg.field)
        expected = _canonical_param(label)
        for _ in range(cfg.trials):
            trial += 1
            p = random_basis_change(rng, cfg.field, cfg.cond_cap)
            moved = transform(alg, p)
            try:
                out = classify(moved, tols)
            except OmegaAlgebraError as exc:
                failures.append({"trial": trial, "model": label.display(),
                                 "error": type(exc).__name__,
                                 "detail": str(exc)})
                continue
            key = f"{label.display()}->{out.label.kind}"
            counts[key] = counts.get(key, 0) + 1
            ok = out.label.kind == label.kind
            drift = 0.0
            if ok and expected is not None:
                drift = abs(out.label.param - expected)
                max_drift = max(max_drift, drift)
                ok = drift <= 1e-4
            if ok and not out.witness.verified(tols.witness):
                failures.append({"trial": trial, "model": label.display(),
                                 "error": "UnverifiedWitness",
                                 "residual": _reported_residual(
                                     float(out.witness.residual))})
                continue
            if not ok:
                failures.append({"trial": trial, "model": label.display(),
                                 "error": "LabelDrift",
                                 "got": out.label.display(),
                                 "drift": float(drift)})
    failures.sort(key=lambda f: f["trial"])
    notes = [f"max canonical parameter drift: {max_drift:.3e}"]
    return SummaryReport("invariance", cfg.to_dict(), counts, failures,
                         0, 0, trial, notes)


@dataclass(frozen=True, eq=False)
class Table1Report:
    config: dict
    rows: list

    @property
    def passed(self) -> bool:
        return all(r["match"] for r in self.rows)

    def to_dict(self) -> dict:
        return {"schema": 1, "kind": "table1", "config": self.config,
                "rows": self.rows, "passed": self.passed}


def _expected_bianchi_kind(entry, a: Optional[float]) -> str:
    if entry.stated_class == "L2|CCal":
        return "L2" if a == 1 else "CCal"
    return entry.stated_class


def _reported_residual(x: Optional[float]) -> Optional[float]:
    """Residuals in serialized reports are quantized: values below 1e-12
    print as zero and the rest keep three significant digits.  The last
    bits of an optimizer trajectory are not reproducible across process
    layouts, and reports must be byte-stable for one configuration."""
    if x is None:
        return None
    if x < 1e-12:
        return 0.0
    return float(f"{x:.3e}")


def run_table1(cfg: TrialConfig, search_attempts: int = 16) -> Table1Report:
    """Replay every Bianchi-type row: validate the published form under
    both signs, classify the bracket, compare with the stated class,
    record the derived parameter, and cross-check the verdict with the
    independent witness search."""
    tols = cfg.tolerances
    rows = []
    params = (0.5, 1.0, 2.0)
    for name in catalog.BIANCHI_TYPES:
        parametric = catalog._BIANCHI[name]["parametric"]
        for a_val in (params if parametric else (None,)):
            entry = catalog.bianchi(name, a_val)
            printed = Algebra(REAL, entry.algebra.bracket, entry.printed_omega)
            report = validate(printed, tols.validation)
            out = classify(entry.algebra, tols)
            expected = _expected_bianchi_kind(entry, a_val)
            match = out.label.kind == expected
            found = search_witness(entry.algebra,
                                   catalog.model(out.label, REAL),
                                   attempts=search_attempts, tols=tols,
                                   seed=cfg.seed)
            rows.append({
                "type": name,
                "a": a_val,
                "convention": report.convention,
                "stated_class": expected,
                "label": out.label.display(),
                "label_kind": out.label.kind,
                "params": [[p.real, p.imag] for p in out.label.params()],
                "witness_residual": _reported_residual(
                    float(out.witness.residual)),
                "match": bool(match),
                "search_found": found is not None,
                "search_residual": _reported_residual(
                    float(found.residual) if found is not None else None),
                "search_agrees": found is not None,
            })
    return Table1Report(cfg.to_dict(), rows)
