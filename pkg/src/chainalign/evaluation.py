"""Scoring against reference alignments and baseline-vs-variant comparison.

Precision divides correct correspondences by returned ones, recall by the
reference size; both are undefined (not zero) when their denominator set
is empty, and the comparison table prints an em dash for undefined cells.

``synth_mutate`` produces seeded, deterministic corruptions of an
ontology together with the identity reference alignment, standing in for
an external benchmark suite: predicate label edits, term label
scrambling, case flips and random edge drops.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, replace
from pathlib import Path

from .chain import BASELINE_SF, EDGE_CONFIDENCE, SolverConfig
from .lexical import SimilarityConfig
from .matching import Alignment
from .ontology import LabeledEdge, OntologyGraph, Term
from .pipeline import align

MUTATIONS = ("label-edit", "label-scramble", "edge-drop", "label-case")

UNDEFINED = "—"  # em dash marking undefined metric cells


@dataclass(frozen=True)
class ReferenceAlignment:
    """Ground-truth correspondence pairs (source id, target id)."""

    pairs: frozenset[tuple[str, str]]

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class EvalReport:
    """Metrics for one run; ``None`` marks an undefined ratio."""

    precision: float | None
    recall: float | None
    f_measure: float | None
    returned: int
    valid: int
    correct: int


@dataclass(frozen=True)
class CompareRow:
    case: str
    mode: str
    report: EvalReport
    iterations: int
    converged: bool


def precision(returned: set[tuple[str, str]], valid: set[tuple[str, str]]) -> float:
    """Correct over returned. Undefined (raises) for an empty result set."""
    if not returned:
        raise ValueError("precision is undefined for an empty returned set (no results)")
    return len(set(returned) & set(valid)) / len(returned)


def recall(returned: set[tuple[str, str]], valid: set[tuple[str, str]]) -> float:
    """Correct over expected. Undefined (raises) for an empty reference."""
    if not valid:
        raise ValueError("recall is undefined for an empty reference set")
    return len(set(returned) & set(valid)) / len(valid)


def f_measure(p: float, r: float) -> float:
    """Harmonic mean of precision and recall; 0 when both are 0."""
    if not 0.0 <= p <= 1.0 or not 0.0 <= r <= 1.0:
        raise ValueError(f"precision and recall must lie in [0, 1], got {p}, {r}")
    if p + r == 0.0:
        return 0.0
    return 2.0 * p * r / (p + r)


def evaluate(returned: set[tuple[str, str]], valid: set[tuple[str, str]]) -> EvalReport:
    """Assemble an EvalReport, mapping undefined ratios to ``None``."""
    returned = set(returned)
    valid = set(valid)
    correct = len(returned & valid)
    p = precision(returned, valid) if returned else None
    r = recall(returned, valid) if valid else None
    f = f_measure(p, r) if p is not None and r is not None else None
    return EvalReport(
        precision=p,
        recall=r,
        f_measure=f,
        returned=len(returned),
        valid=len(valid),
        correct=correct,
    )


def compare(
    g1: OntologyGraph,
    g2: OntologyGraph,
    reference: ReferenceAlignment,
    sim_cfg: SimilarityConfig | None = None,
    solver_cfg: SolverConfig | None = None,
    min_confidence: float = 0.0,
    case: str = "case",
) -> list[CompareRow]:
    """Run the pipeline in both chain modes against one reference.

    Solver settings are shared across modes apart from ``chain_mode``
    itself, so the rows differ only in how the pair graph was built.
    """
    sim_cfg = sim_cfg or SimilarityConfig()
    solver_cfg = solver_cfg or SolverConfig()
    stray = [
        (s, t)
        for s, t in reference.pairs
        if s not in g1.terms or t not in g2.terms
    ]
    if stray:
        raise ValueError(
            f"reference names terms absent from the ontologies: {sorted(stray)[:5]}"
        )
    rows = []
    for mode in (BASELINE_SF, EDGE_CONFIDENCE):
        cfg = replace(solver_cfg, chain_mode=mode)
        alignment, result = align(g1, g2, sim_cfg, cfg, min_confidence)
        report = evaluate(alignment.pairs(), reference.pairs)
        rows.append(
            CompareRow(
                case=case,
                mode=mode,
                report=report,
                iterations=result.iterations,
                converged=result.converged,
            )
        )
    return rows


def _fmt_metric(value: float | None) -> str:
    return UNDEFINED if value is None else f"{value:.6f}"


def comparison_csv(rows: list[CompareRow]) -> str:
    """Plot-ready CSV, one row per (case, mode)."""
    lines = ["case,mode,precision,recall,f_measure,returned,valid,correct,iterations,converged"]
    for row in rows:
        rep = row.report
        lines.append(
            ",".join(
                [
                    row.case,
                    row.mode,
                    _fmt_metric(rep.precision),
                    _fmt_metric(rep.recall),
                    _fmt_metric(rep.f_measure),
                    str(rep.returned),
                    str(rep.valid),
                    str(rep.correct),
                    str(row.iterations),
                    str(row.converged).lower(),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def reference_from_alignment(alignment: Alignment) -> ReferenceAlignment:
    return ReferenceAlignment(pairs=frozenset(alignment.pairs()))


def load_reference(path: str | Path) -> ReferenceAlignment:
    """Read a reference from 2/3-column TSV or the alignment JSON format.

    Any confidence column is ignored; only the pair set matters.
    """
    path = Path(path)
    if str(path).endswith(".json"):
        from .matching import load_alignment

        return reference_from_alignment(load_alignment(path))
    pairs = set()
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) not in (2, 3):
            raise ValueError(
                f"{path.name}: line {lineno}: expected 'source<TAB>target' "
                "with an optional confidence column"
            )
        pairs.add((parts[0], parts[1]))
    return ReferenceAlignment(pairs=frozenset(pairs))


def reference_to_tsv(reference: ReferenceAlignment) -> str:
    lines = [f"{s}\t{t}" for s, t in sorted(reference.pairs)]
    return "\n".join(lines) + ("\n" if lines else "")


_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def _edit_once(label: str, rng: random.Random) -> str:
    """One random insert/delete/substitute that keeps the label non-empty."""
    op = rng.choice("ids" if len(label) > 1 else "is")
    pos = rng.randrange(len(label) + (op == "i"))
    if op == "i":
        return label[:pos] + rng.choice(_ALPHABET) + label[pos:]
    if op == "d":
        return label[:pos] + label[pos + 1:]
    replacement = rng.choice(_ALPHABET.replace(label[pos].lower(), "") or _ALPHABET)
    return label[:pos] + replacement + label[pos:][1:]


def _perturb(label: str, rng: random.Random, edits: int) -> str:
    for _ in range(edits):
        label = _edit_once(label, rng)
    return label


def synth_mutate(
    g: OntologyGraph,
    seed: int,
    mutation: str,
    rate: float = 0.1,
) -> tuple[OntologyGraph, ReferenceAlignment]:
    """Seeded mutated copy of ``g`` plus the identity reference alignment.

    * ``label-edit``: every edge label takes 1-2 random character edits.
    * ``label-scramble``: every term label has its characters shuffled.
    * ``edge-drop``: each edge is removed with probability ``rate``.
    * ``label-case``: every term and edge label is case-flipped.
    """
    if mutation not in MUTATIONS:
        raise ValueError(f"unknown mutation kind {mutation!r}; expected one of {MUTATIONS}")
    if not g.terms:
        raise ValueError("cannot mutate an empty ontology")
    if not 0.0 <= rate <= 1.0:
        raise ValueError(f"rate must lie in [0, 1], got {rate}")
    rng = random.Random(seed)

    terms = [g.terms[tid] for tid in g.term_ids]
    edges = sorted(g.edges, key=lambda e: (e.source, e.target, e.label))

    if mutation == "label-edit":
        edges = [
            LabeledEdge(e.source, e.target, _perturb(e.label, rng, rng.randint(1, 2)), e.kind)
            for e in edges
        ]
    elif mutation == "label-scramble":
        new_terms = []
        for t in terms:
            chars = list(t.label)
            rng.shuffle(chars)
            new_terms.append(Term(id=t.id, label="".join(chars)))
        terms = new_terms
    elif mutation == "edge-drop":
        edges = [e for e in edges if rng.random() >= rate]
    else:  # label-case
        terms = [Term(id=t.id, label=t.label.swapcase()) for t in terms]
        edges = [
            LabeledEdge(e.source, e.target, e.label.swapcase(), e.kind) for e in edges
        ]

    mutant = OntologyGraph(terms={t.id: t for t in terms}, edges=edges)
    reference = ReferenceAlignment(pairs=frozenset((tid, tid) for tid in g.terms))
    return mutant, reference
