"""Topic models with entropy-based topic-count selection.

Four inference algorithms (two EM variants, two collapsed Gibbs
variants) share one corpus format and one result type. Fitted
word-topic matrices are scored with deformed-entropy diagnostics
whose minimum over a sweep of topic counts picks the number of
topics; top-word overlap across neighboring counts measures the
stability of that choice. All fits are reproducible from a single
integer seed.
"""

__version__ = "0.1.0"

from .core import (
    FitResult,
    Model,
    ModelConfig,
    PhiMatrix,
    ThetaMatrix,
    fit,
    mix64,
    seeded_rng,
    write_phi_csv,
    write_theta_csv,
)
from .corpus import (
    Corpus,
    Document,
    Vocabulary,
    corpus_from_tokens,
    load_plain_text,
    load_uci_bow,
    save_uci_bow,
)
from .em import (
    EmWorkspace,
    MonotonicityError,
    fit_plsa,
    fit_vlda,
    log_likelihood,
    topic_posterior,
)
from .entropy import (
    DegenerateSolutionError,
    EntropyDivergenceError,
    EntropyPoint,
    classical_shannon,
    count_high_prob,
    density_of_states,
    evaluate_solution,
    free_energy,
    point_from_counts,
    renyi_direct,
    renyi_from_free_energy,
    shannon_from_density,
    tsallis_direct,
    tsallis_from_renyi,
)
from .gibbs import (
    CountTables,
    conditional_weights,
    fit_glda,
    fit_lda_gs,
    matrices_from_counts,
    sample_count_tables,
)
from .invariance import (
    JaccardMatrix,
    TopWordSet,
    diagonal_curve,
    jaccard,
    jaccard_matrix,
    ranked_top_words,
    top_word_set_from_words,
    top_words,
)
from .sweep import (
    RunRecord,
    SweepConfig,
    SweepReport,
    derive_seed,
    emit_report,
    run_sweep,
)
from .synthetic import generate_synthetic

__all__ = [
    "__version__",
    "Corpus",
    "CountTables",
    "DegenerateSolutionError",
    "Document",
    "EmWorkspace",
    "EntropyDivergenceError",
    "EntropyPoint",
    "FitResult",
    "JaccardMatrix",
    "Model",
    "ModelConfig",
    "MonotonicityError",
    "PhiMatrix",
    "RunRecord",
    "SweepConfig",
    "SweepReport",
    "ThetaMatrix",
    "TopWordSet",
    "Vocabulary",
    "classical_shannon",
    "conditional_weights",
    "corpus_from_tokens",
    "count_high_prob",
    "density_of_states",
    "derive_seed",
    "diagonal_curve",
    "emit_report",
    "evaluate_solution",
    "fit",
    "fit_glda",
    "fit_lda_gs",
    "fit_plsa",
    "fit_vlda",
    "free_energy",
    "generate_synthetic",
    "jaccard",
    "jaccard_matrix",
    "load_plain_text",
    "load_uci_bow",
    "log_likelihood",
    "matrices_from_counts",
    "mix64",
    "point_from_counts",
    "ranked_top_words",
    "renyi_direct",
    "renyi_from_free_energy",
    "run_sweep",
    "sample_count_tables",
    "save_uci_bow",
    "seeded_rng",
    "shannon_from_density",
    "top_word_set_from_words",
    "top_words",
    "topic_posterior",
    "tsallis_direct",
    "tsallis_from_renyi",
    "write_phi_csv",
    "write_theta_csv",
]
