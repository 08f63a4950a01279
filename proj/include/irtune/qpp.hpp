// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 irtune contributors

#pragma once

#include <string>
#include <vector>

#include "irtune/index.hpp"
#include "irtune/retrieval.hpp"
#include "irtune/similarity.hpp"

namespace irtune {

struct QueryLikelihood {
    std::string query_id;
    std::string config_name;
    double value = 0.0;
    bool degenerate = false;  // empty result list
};

struct QueryWeightEntry {
    std::string query_id;
    double difficulty = 0.0;  // v(q); lower predicts worse performance
    double weight = 0.0;
    int rank = 0;  // 1 = hardest
};

struct QueryWeights {
    std::vector<QueryWeightEntry> entries;  // sorted by rank
    double weight_of(const std::string& query_id) const;
};

// exp(-KL(p(.|d) || nidf(.))) over the distinct terms of d, with
// nidf(w) = idf(w) / sum of idf over d's distinct terms. Zero-length docs
// score 0 (maximally unfocused).
double doc_focus(const CorpusIndex& index, DocId d);

// Focus of every document, indexed by internal id.
std::vector<double> compute_doc_focus_all(const CorpusIndex& index);

// Fixed relevance yardstick: BM25 with default parameters, whatever config
// produced the list under evaluation. 0 when no term matches.
double query_doc_relevance(const CorpusIndex& index, const std::vector<std::string>& query_terms,
                           DocId d);

// Scores shifted by (-min + eps), eps = 1e-6 * (max - min) or 1e-12 when all
// scores are equal, then normalized to sum 1.
std::vector<double> list_posterior(const RankedList& list);

// [sum_d p(r|q,d) * posterior(d)] * [mean doc focus over the list]; the
// focus_by_doc cache (indexed by internal id) avoids recomputation across
// configs.
QueryLikelihood per_query_likelihood(const CorpusIndex& index,
                                     const std::vector<std::string>& query_terms,
                                     const RankedList& list,
                                     const std::vector<double>* focus_by_doc = nullptr);

// Population std of the list scores divided by |corpus_score|; 0 with the
// guard flag set when corpus_score == 0 or the list is empty.
double nqc(const RankedList& list, double corpus_score, bool* guarded = nullptr);

// Query score against the corpus treated as one long document: tf = ctf,
// doc length = total_terms. LM-Dirichlet degenerates to exactly 0 there, so
// it scores sum ln(ctf/total_terms) instead; rerank configs score their
// feedback model's cross-entropy against the corpus model.
double corpus_score(const CorpusIndex& index, const SimilarityConfig& config,
                    const std::vector<std::string>& query_terms,
                    const RelevanceModel* feedback = nullptr, ScoreDiagnostics* diag = nullptr);

inline constexpr double kNqcLogClamp = 1e-9;

// v(q) = sum over configs of ln(max(NQC, 1e-9)); nqc_per_query[i] holds query
// i's NQC values across configs in a fixed order.
std::vector<std::pair<std::string, double>> difficulty_scores(
    const std::vector<std::string>& query_ids, const std::vector<std::vector<double>>& nqc_per_query);

// The cumulative-sort weighting applied to already-shifted positive values
// in rank order: weight_i = 1 - sum_{j<i} u_j / sum u.
std::vector<double> weights_from_shifted(const std::vector<double>& u);

// Shift difficulties positive (u = v - min + delta, delta = 1e-6 * (max - min)
// or 1 when all equal), sort ascending by v (hardest first, ties by query id),
// then apply weights_from_shifted.
QueryWeights query_weights(const std::vector<std::pair<std::string, double>>& difficulty);

}  // namespace irtune
