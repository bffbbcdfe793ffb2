"""Corpus statistics, document similarity and lexical-entropy ranking.

Similarity of two documents combines two views:

  cosine            angle between unit tf-idf vectors (word features)
  spatial           1 - mean normalized position delta over matched term
                    instances (placement features)
  combined          alpha * cosine + (1 - alpha) * spatial, alpha = 0.6

Near-duplicates are removed iteratively: while the largest pairwise
combined similarity exceeds the threshold sigma (0.5), the pair member
whose query-term dispersion is larger is dropped and the corpus statistics
are rebuilt. Survivors are ranked by lexical entropy
LE = 0.4 * diversity + 0.6 * relative entropy, all logarithms base 10.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import ConfigurationError, EmptyCorpusError, TermNotSharedError
from .normalize import Document, canonical_term
from .vocab import SynonymTable

log = logging.getLogger(__name__)

DEFAULT_ALPHA_SIMILARITY = 0.6
DEFAULT_SIGMA = 0.5
DEFAULT_ALPHA_ENTROPY = 0.4


def _check_alpha(alpha: float) -> None:
    if not 0.0 <= alpha <= 1.0:
        raise ConfigurationError(f"alpha must be within [0, 1], got {alpha}")


def _clamp01(x: float) -> float:
    return 0.0 if x < 0.0 else 1.0 if x > 1.0 else x


@dataclass(frozen=True)
class Corpus:
    """A document collection with its term list and frequency statistics.

    idf_t = log10(N / df_t), so a term present in every document carries
    zero weight.
    """

    docs: tuple[Document, ...]
    term_list: tuple[str, ...]
    df: dict[str, int]
    idf: dict[str, float]
    N: int

    def __len__(self) -> int:
        return self.N


def build_corpus(docs: Sequence[Document]) -> Corpus:
    """Corpus statistics over the usable (non-empty) documents."""
    usable = []
    for doc in docs:
        if doc.is_empty:
            log.warning("excluding empty document %s from corpus", doc.url)
        else:
            usable.append(doc)
    if not usable:
        raise EmptyCorpusError("no usable documents")
    df: dict[str, int] = {}
    for doc in usable:
        for term in doc.tf:
            df[term] = df.get(term, 0) + 1
    n = len(usable)
    idf = {term: math.log10(n / count) for term, count in df.items()}
    return Corpus(
        docs=tuple(usable),
        term_list=tuple(sorted(df)),
        df=df,
        idf=idf,
        N=n,
    )


@dataclass(frozen=True)
class WeightVector:
    """Sparse term-weight vector; unit Euclidean norm when normalized
    (except the all-zero vector, which stays zero)."""

    weights: dict[str, float]
    normalized: bool = False

    def norm(self) -> float:
        return math.sqrt(sum(w * w for w in self.weights.values()))

    def normalize(self) -> "WeightVector":
        n = self.norm()
        if n == 0.0:
            return WeightVector(dict(self.weights), normalized=True)
        return WeightVector(
            {t: w / n for t, w in self.weights.items()}, normalized=True
        )


def tfidf_vector(corpus: Corpus, doc: Document) -> WeightVector:
    """Unit-length tf-idf vector of a corpus document.

    When every tf-idf weight is zero (each of the document's terms occurs
    in all documents) the raw term frequencies are used instead, so that
    two identical documents still compare as identical.
    """
    if not any(doc is d for d in corpus.docs):
        raise ValueError(f"document {doc.url!r} is not part of the corpus")
    weights = {}
    for term, tf in doc.tf.items():
        weight = tf * corpus.idf[term]
        if weight != 0.0:
            weights[term] = weight
    if not weights and doc.tf:
        weights = {term: float(tf) for term, tf in doc.tf.items()}
    return WeightVector(weights).normalize()


def cosine_similarity(v1: WeightVector, v2: WeightVector) -> float:
    """Dot product of two unit vectors, clamped to [0, 1]; an all-zero
    vector compares as 0 to everything."""
    if not (v1.normalized and v2.normalized):
        raise ValueError("cosine similarity requires normalized vectors")
    if not v1.weights or not v2.weights:
        return 0.0
    small, large = (v1.weights, v2.weights)
    if len(small) > len(large):
        small, large = large, small
    dot = sum(w * large[t] for t, w in small.items() if t in large)
    return _clamp01(dot)


def spatial_difference(d_i: Document, d_j: Document, term: str) -> float:
    """Sum over matched instances k of |p_i - p_j| / (p_i + p_j), where p
    is the 0-based position of the k-th instance of the term in each
    document's canonical stream. An instance sitting at position 0 in both
    documents contributes 0 (identical placement)."""
    positions_i = d_i.term_positions().get(term)
    positions_j = d_j.term_positions().get(term)
    if positions_i is None or positions_j is None:
        raise TermNotSharedError(f"term {term!r} does not occur in both documents")
    total = 0.0
    for p_i, p_j in zip(positions_i, positions_j):
        denominator = p_i + p_j
        if denominator:
            total += abs(p_i - p_j) / denominator
    return total


def spatial_similarity(d_i: Document, d_j: Document) -> float:
    """1 - (sum of spatial differences) / lambda, where lambda counts the
    matched (term, instance-index) pairs across common terms; 0 when the
    documents share no terms."""
    positions_i = d_i.term_positions()
    positions_j = d_j.term_positions()
    common = positions_i.keys() & positions_j.keys()
    matches = 0
    total = 0.0
    for term in common:
        matches += min(len(positions_i[term]), len(positions_j[term]))
        total += spatial_difference(d_i, d_j, term)
    if matches == 0:
        return 0.0
    return _clamp01(1.0 - total / matches)


def scs(
    d_i: Document,
    d_j: Document,
    alpha: float = DEFAULT_ALPHA_SIMILARITY,
    corpus: Corpus | None = None,
) -> float:
    """Combined similarity alpha * cosine + (1 - alpha) * spatial.

    Cosine weights come from the given corpus; without one, a two-document
    corpus of the pair is used.
    """
    _check_alpha(alpha)
    if corpus is None:
        corpus = build_corpus([d_i, d_j])
    cos = cosine_similarity(tfidf_vector(corpus, d_i), tfidf_vector(corpus, d_j))
    return _clamp01(alpha * cos + (1.0 - alpha) * spatial_similarity(d_i, d_j))


@dataclass(frozen=True)
class SimilarityMatrix:
    """Pairwise combined similarity; only the upper triangle is stored,
    the diagonal is 1 by definition and lookups are symmetric."""

    size: int
    urls: tuple[str, ...]
    cells: dict[tuple[int, int], float]

    def value(self, i: int, j: int) -> float:
        if i == j:
            return 1.0
        if i > j:
            i, j = j, i
        return self.cells[(i, j)]

    def max_offdiagonal(self) -> tuple[float, int, int]:
        """Largest off-diagonal value as (value, i, j); (0, -1, -1) when
        the matrix is 1x1."""
        best = (0.0, -1, -1)
        for (i, j), value in self.cells.items():
            if value > best[0]:
                best = (value, i, j)
        return best

    def to_rows(self) -> list[list[float]]:
        """Full square matrix (symmetric) as nested lists."""
        return [
            [self.value(i, j) for j in range(self.size)] for i in range(self.size)
        ]


def similarity_matrix(
    corpus: Corpus, alpha: float = DEFAULT_ALPHA_SIMILARITY
) -> SimilarityMatrix:
    _check_alpha(alpha)
    vectors = [tfidf_vector(corpus, doc) for doc in corpus.docs]
    cells: dict[tuple[int, int], float] = {}
    for i in range(corpus.N):
        for j in range(i + 1, corpus.N):
            cos = cosine_similarity(vectors[i], vectors[j])
            ss = spatial_similarity(corpus.docs[i], corpus.docs[j])
            cells[(i, j)] = _clamp01(alpha * cos + (1.0 - alpha) * ss)
    return SimilarityMatrix(
        size=corpus.N, urls=tuple(d.url for d in corpus.docs), cells=cells
    )


def query_term_dispersion(
    doc: Document,
    query_terms: Sequence[str],
    syn: SynonymTable | None = None,
) -> float:
    """Spread of the query-term frequencies around their mean, normalized
    by the document's total token count. Lower dispersion means the query
    terms are more evenly matched; an empty document disperses infinitely
    (it always loses retention)."""
    if not query_terms:
        raise ValueError("query_terms must not be empty")
    if doc.token_count == 0:
        return math.inf
    total = doc.token_count
    frequencies = [doc.tf.get(canonical_term(t, syn), 0) for t in query_terms]
    mean = sum(frequencies) / total
    return sum((f - mean) ** 2 for f in frequencies) / total


@dataclass(frozen=True)
class RemovedDocument:
    """A document dropped by the near-duplicate filter, with the peer it
    duplicated and their similarity at removal time."""

    url: str
    similar_to: str
    similarity: float


def dedup_filter(
    corpus: Corpus,
    query_terms: Sequence[str],
    sigma: float = DEFAULT_SIGMA,
    alpha: float = DEFAULT_ALPHA_SIMILARITY,
    syn: SynonymTable | None = None,
) -> tuple[Corpus, list[RemovedDocument]]:
    """Iteratively remove near-duplicates until every retained pair has
    combined similarity <= sigma.

    Each round recomputes the similarity matrix over the current corpus
    statistics, takes the most similar pair above the threshold, and drops
    the member with larger query-term dispersion (ties: the one ranked
    later in the merged results, then the lexicographically larger URL).
    """
    removed: list[RemovedDocument] = []
    current = corpus
    while current.N > 1:
        matrix = similarity_matrix(current, alpha)
        value, i, j = matrix.max_offdiagonal()
        if value <= sigma:
            break
        d_i, d_j = current.docs[i], current.docs[j]
        key_i = (query_term_dispersion(d_i, query_terms, syn), d_i.rank, d_i.url)
        key_j = (query_term_dispersion(d_j, query_terms, syn), d_j.rank, d_j.url)
        victim, kept = (d_i, d_j) if key_i > key_j else (d_j, d_i)
        removed.append(
            RemovedDocument(url=victim.url, similar_to=kept.url, similarity=value)
        )
        current = build_corpus([d for d in current.docs if d is not victim])
    return current, removed


def lexical_diversity(doc: Document) -> float:
    """Distinct canonical terms over total tokens, in (0, 1]; an empty
    document is flagged as 0."""
    if doc.token_count == 0:
        return 0.0
    return doc.distinct_terms / doc.token_count


def entropy(doc: Document) -> float:
    """E = (1/lambda) * sum_i tf_i * (log10(lambda) - log10(tf_i)) over the
    document's term frequencies, lambda being the total token count."""
    n = doc.token_count
    if n == 0:
        return 0.0
    log_n = math.log10(n)
    return sum(tf * (log_n - math.log10(tf)) for tf in doc.tf.values()) / n


def relative_entropy(doc: Document) -> float:
    """Entropy normalized by its maximum log10(lambda), reached when every
    token is unique; defined as 0 for documents of at most one token."""
    n = doc.token_count
    if n <= 1:
        return 0.0
    return entropy(doc) / math.log10(n)


def lexical_entropy(doc: Document, alpha: float = DEFAULT_ALPHA_ENTROPY) -> float:
    """alpha * lexical_diversity + (1 - alpha) * relative_entropy."""
    _check_alpha(alpha)
    return alpha * lexical_diversity(doc) + (1.0 - alpha) * relative_entropy(doc)


@dataclass(frozen=True)
class RankedRecommendation:
    """A recommended URL with its ranking scores; position is 1-based."""

    url: str
    lexical_entropy: float
    lexical_diversity: float
    relative_entropy: float
    position: int


def rank_documents(
    corpus: Corpus, alpha: float = DEFAULT_ALPHA_ENTROPY
) -> list[RankedRecommendation]:
    """Corpus documents ordered by lexical entropy, descending; ties are
    broken by URL so the ordering is deterministic."""
    scored = [
        (
            lexical_entropy(doc, alpha),
            lexical_diversity(doc),
            relative_entropy(doc),
            doc.url,
        )
        for doc in corpus.docs
    ]
    scored.sort(key=lambda row: (-row[0], row[3]))
    return [
        RankedRecommendation(
            url=url,
            lexical_entropy=le,
            lexical_diversity=ld,
            relative_entropy=re_,
            position=i + 1,
        )
        for i, (le, ld, re_, url) in enumerate(scored)
    ]
