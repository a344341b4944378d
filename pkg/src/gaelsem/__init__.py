"""gaelsem: English/Irish sentence-meaning comparison and concept translation.

Two pipelines share this package.  The distributional one types sentences
with a pregroup grammar, evaluates the resulting contraction plan against
corpus-derived word vectors and verb matrices, and scores cross-lingual
similarity.  The conceptual one builds convex per-property concepts for
nouns out of descriptor words and translates nouns by nearest concept under
a Hausdorff-plus-tree metric.  A BLEU implementation (smoothing method 7)
is included for comparison tables.
"""

from .bleu import BleuReport, bleu_report, brevity_penalty, modified_precision
from .concepts import (
    AdjectiveTable,
    Concept,
    ConvexSet,
    HypernymTree,
    build_concept,
    extract_descriptors,
)
from .corpus import CooccurrenceTable, CorpusDoc, Token, segment_and_tokenize, window_counts
from .distrib import (
    DistribModel,
    SentenceMeaning,
    VerbMatrix,
    evaluate,
    load_model,
    save_model,
    score_string,
    similarity,
)
from .lexicon import Lexicon, ParsedSentence, TypedToken, assign_types, load_lexicon, parse_sentence
from .metric import DistanceReport, concept_distance, hausdorff, translate_noun, tree_set_distance
from .pregroup import (
    NotASentenceError,
    ReductionPlan,
    SimpleType,
    adjoint,
    format_type,
    parse_type,
    reduce_types,
)

__version__ = "0.1.0"

__all__ = [
    "AdjectiveTable",
    "BleuReport",
    "Concept",
    "ConvexSet",
    "CooccurrenceTable",
    "CorpusDoc",
    "DistanceReport",
    "DistribModel",
    "HypernymTree",
    "Lexicon",
    "NotASentenceError",
    "ParsedSentence",
    "ReductionPlan",
    "SentenceMeaning",
    "SimpleType",
    "adjoint",
    "Token",
    "TypedToken",
    "VerbMatrix",
    "assign_types",
    "bleu_report",
    "brevity_penalty",
    "build_concept",
    "concept_distance",
    "evaluate",
    "extract_descriptors",
    "format_type",
    "hausdorff",
    "load_lexicon",
    "parse_type",
    "reduce_types",
    "load_model",
    "modified_precision",
    "parse_sentence",
    "save_model",
    "score_string",
    "segment_and_tokenize",
    "similarity",
    "translate_noun",
    "tree_set_distance",
    "window_counts",
]
