"""Seeded construction of the synthetic benchmark cases.

Each base ontology is a ring of terms with a distinctive predicate per
hop, plus ``partOf`` edges funneling every term to a hub. Term labels
come from anagram families, so the scramble mutation leaves almost no
lexical trace of which term was which: recovering the alignment then
requires the structural signal carried by the (perturbed) predicates.
"""
from __future__ import annotations

import random

from chainalign.evaluation import ReferenceAlignment, synth_mutate
from chainalign.ontology import LabeledEdge, OntologyGraph, Term

TERM_WORDS = [
    "retinas", "nastier", "retains", "ratines", "stainer", "retsina",
    "anestri", "rentals", "antlers", "sternal", "saltern",
]
PRED_WORDS = [
    "regulates", "assembles", "conveys", "ignites", "measures",
    "filters", "quenches", "oversees", "bundles", "shapes",
]


def make_base_ontology(seed: int, n_terms: int = 7) -> OntologyGraph:
    rng = random.Random(seed)
    terms = rng.sample(TERM_WORDS, n_terms)
    preds = rng.sample(PRED_WORDS, n_terms)
    edges = [
        LabeledEdge(t, terms[(i + 1) % n_terms], preds[i])
        for i, t in enumerate(terms)
    ]
    hub = terms[0]
    edges += [LabeledEdge(t, hub, "partOf") for t in terms[1:]]
    return OntologyGraph(terms={t: Term(id=t, label=t) for t in terms}, edges=edges)


def make_perturbation_case(
    case_index: int,
) -> tuple[OntologyGraph, OntologyGraph, ReferenceAlignment]:
    """One benchmark case: (base, mutant, identity reference).

    Every predicate label of the mutant differs from the base by 1-2
    character edits, and every term label is scrambled.
    """
    base = make_base_ontology(1000 + case_index)
    mutant, reference = synth_mutate(base, 2000 + case_index, "label-edit")
    mutant, _ = synth_mutate(mutant, 3000 + case_index, "label-scramble")
    return base, mutant, reference
