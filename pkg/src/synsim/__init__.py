"""Cross-lingual document similarity without parallel corpora.

Topic models are trained per language, annotated with multilingual
synsets from per-language lexicons, and documents are reduced to
3-level hierarchical hash codes of synset sets. Similarity between two
documents is the level-wise sum of Jaccard distances between their
codes, which works across languages because the synset scheme is
shared even though the models never were.
"""

from .config import RunConfig, load_config
from .corpus import (
    ADJ,
    CONTENT_POS,
    NOUN,
    UNKNOWN,
    VERB,
    Document,
    FallbackLemmatizer,
    TableLemmatizer,
    filter_short,
    ingest_corpus,
    load_lemma_file,
    serialize_corpus,
    tokenize,
    tokenize_corpus,
)
from .evaluation import (
    EvalReport,
    MetricStats,
    bcubed,
    build_ground_truth,
    overlap_clusters,
    precision_at_k,
    retrieval_report,
)
from .hashing import (
    SYNSET_SPACE,
    TOPIC_SPACE,
    HashCode,
    build_topic_hash,
    distance,
    hash_from_dict,
    hash_to_dict,
    jaccard_distance,
    to_synset_hash,
)
from .lexicon import (
    SynsetLexicon,
    TopicAnnotation,
    annotate_all,
    annotate_topic,
    load_annotations,
    load_lexicon,
    save_annotations,
    synsets_of,
)
from .rng import derive_seed, substream
from .search import SimilarityIndex, cluster_key
from .taxonomy import Taxonomy, load_skos_json, load_taxonomy, reduce_to_roots
from .topics import (
    TopicModel,
    infer,
    load_model,
    save_model,
    top_words,
    train_labeled_lda,
    train_lda,
)
from .vocabulary import (
    Vocabulary,
    build_vocabulary,
    load_vocabulary,
    save_vocabulary,
    to_bow,
)

__version__ = "0.1.0"
