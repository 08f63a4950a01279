// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 irtune contributors

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "irtune/index.hpp"
#include "irtune/similarity.hpp"

namespace irtune {

struct ScoredDoc {
    DocId internal_id = 0;
    std::string external_id;
    double score = 0.0;
    int rank = 0;
};

struct RankedList {
    std::string query_id;
    std::string config_name;
    int k_requested = 0;
    std::vector<ScoredDoc> items;
};

// Feedback term distribution: weights >= 0, at most fb_terms entries, sum 1.
// Entries kept sorted by term for stable iteration.
struct RelevanceModel {
    std::vector<std::pair<std::string, double>> weights;
};

struct QueryExecution {
    RankedList list;
    std::optional<RelevanceModel> feedback_model;  // present for rerank configs
};

// Document-at-a-time scoring over the union of query-term postings; top k by
// (score desc, external_id asc). Duplicate query terms score per occurrence.
// Throws EmptyQueryError when the term list is empty.
RankedList run_query(const CorpusIndex& index, const SimilarityConfig& config,
                     const std::vector<std::string>& query_terms, int k, std::string query_id,
                     ScoreDiagnostics* diag = nullptr);

// run_query plus the RM1/RM3 rerank pipeline when config asks for it.
QueryExecution execute_query(const CorpusIndex& index, const SimilarityConfig& config,
                             const std::vector<std::string>& query_terms, int k,
                             std::string query_id, ScoreDiagnostics* diag = nullptr);

// p(w|R) = sum over the top fb_docs of p(w|d) * p(q|d), with p(q|d) the
// softmax of the base-list scores over those docs; truncated to the heaviest
// fb_terms terms and renormalized.
RelevanceModel build_rm1(const CorpusIndex& index, const RankedList& base_list, int fb_docs,
                         int fb_terms);

// lambda * MLE(query) + (1 - lambda) * rm1, truncated and renormalized again.
RelevanceModel build_rm3(const RelevanceModel& rm1, const std::vector<std::string>& query_terms,
                         double lambda, int fb_terms);

// Rescores every doc in base_list by sum_w p(w|R) * ln p_mu(w|d) with the
// Dirichlet-smoothed document model; permutation of the input set.
RankedList rerank(const CorpusIndex& index, const RankedList& base_list,
                  const RelevanceModel& model, double mu, ScoreDiagnostics* diag = nullptr);

// TREC 6-column run format: qid Q0 docid rank score tag, score as %.6f.
void write_trec_run(std::ostream& out, const RankedList& list);
std::string format_run_score(double score);

// Parses runs written by write_trec_run; returns lists grouped by query id in
// first-appearance order.
std::vector<RankedList> read_trec_run(const std::filesystem::path& path);

}  // namespace irtune
