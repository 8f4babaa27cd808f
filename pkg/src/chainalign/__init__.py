"""Ontology alignment via pairwise Markov chains with lexical edge confidence."""

from .chain import (
    BASELINE_SF,
    EDGE_CONFIDENCE,
    METHOD_ITERATIVE,
    METHOD_STEADY_STATE,
    NORM_COMPLEMENT,
    NORM_FORMULA,
    PairState,
    PairwiseChain,
    SolveResult,
    SolverConfig,
    SolverError,
    build_upmc,
    chain_from_matrix,
    dump_triplets,
    ergodic_transform,
    initial_distribution,
    iterate,
    normalize,
    steady_state,
)
from .evaluation import (
    CompareRow,
    EvalReport,
    ReferenceAlignment,
    compare,
    comparison_csv,
    evaluate,
    f_measure,
    load_reference,
    precision,
    recall,
    synth_mutate,
)
from .lexical import (
    LabelNorm,
    SimilarityConfig,
    edge_confidence,
    edit_similarity,
    label_set_confidence,
    levenshtein,
    normalize_label,
)
from .matching import (
    Alignment,
    Correspondence,
    ScoreMatrix,
    alignment_to_json,
    alignment_to_tsv,
    hungarian_max,
    load_alignment,
    refine,
    to_matrix,
)
from .ontology import (
    EdgeKind,
    LabeledEdge,
    OntologyError,
    OntologyGraph,
    Term,
    label_set,
    load_ontology,
    save_ontology,
)
from .pipeline import align, build_chain

__version__ = "0.1.0"

__all__ = [
    "Alignment",
    "BASELINE_SF",
    "CompareRow",
    "Correspondence",
    "EDGE_CONFIDENCE",
    "EdgeKind",
    "EvalReport",
    "LabelNorm",
    "LabeledEdge",
    "METHOD_ITERATIVE",
    "METHOD_STEADY_STATE",
    "NORM_COMPLEMENT",
    "NORM_FORMULA",
    "OntologyError",
    "OntologyGraph",
    "PairState",
    "PairwiseChain",
    "ReferenceAlignment",
    "ScoreMatrix",
    "SimilarityConfig",
    "SolveResult",
    "SolverConfig",
    "SolverError",
    "Term",
    "align",
    "alignment_to_json",
    "alignment_to_tsv",
    "build_chain",
    "build_upmc",
    "chain_from_matrix",
    "compare",
    "comparison_csv",
    "dump_triplets",
    "edge_confidence",
    "edit_similarity",
    "ergodic_transform",
    "evaluate",
    "f_measure",
    "hungarian_max",
    "initial_distribution",
    "iterate",
    "label_set",
    "label_set_confidence",
    "levenshtein",
    "load_alignment",
    "load_ontology",
    "load_reference",
    "normalize",
    "normalize_label",
    "precision",
    "recall",
    "refine",
    "save_ontology",
    "steady_state",
    "synth_mutate",
    "to_matrix",
]
