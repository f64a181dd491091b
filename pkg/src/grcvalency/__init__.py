"""Corpus-driven verbal valency lexicon toolkit for Ancient Greek treebanks."""

__version__ = "0.1.0"

from .betacode import BetaCodeError, beta_to_unicode
from .casestudy import (
    CaseStudyConfig,
    CaseStudyResult,
    FormulaSpanSet,
    TrVObjPair,
    VerbComparison,
    build_baseline,
    extract_trv_obj,
    load_config,
    load_formula_spans,
    mark_formulaic,
    object_types,
    run_case_study,
    select_verbs,
    write_case_study_outputs,
)
from .frames import (
    ArgumentSlot,
    Frame,
    LexiconEntry,
    Mediator,
    collect_arguments,
    compose_frame,
    extract_entries,
    identify_predicates,
    realize_slot,
)
from .lexicon import (
    ConstructionRecord,
    Lexicon,
    LexiconFormatError,
    constructions_for_verb,
    diff_constructions,
    frame_frequencies,
    parse_frame,
    query_entries,
    read_lexicon,
    stats_basic,
    stats_by_author,
    write_lexicon,
)
from .postag import PosTag, PostagError, decode_postag, encode_postag
from .semantics import (
    DegenerateCentroidError,
    InsufficientDataError,
    SimilarityDistribution,
    UndefinedSimilarityError,
    VectorSpace,
    VectorSpaceError,
    centroid,
    centroid_similarities,
    cosine_similarity,
    export_distributions,
    load_vector_space,
)
from .stats import (
    KSResult,
    boxplot_stats,
    kolmogorov_sf,
    ks_two_sample,
    significance_stars,
    summarize,
)
from .treebank import (
    SentenceTree,
    TreebankParseError,
    ValidationReport,
    WordNode,
    load_manifest,
    normalize_lemma,
    parse_treebank_file,
    validate_sentence,
)
