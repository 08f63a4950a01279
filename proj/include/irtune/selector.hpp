// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 irtune contributors

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "irtune/corpus_io.hpp"
#include "irtune/index.hpp"
#include "irtune/qpp.hpp"
#include "irtune/retrieval.hpp"
#include "irtune/similarity.hpp"

namespace irtune {

struct DiagnosticCounts {
    std::uint64_t clamped_logs = 0;
    std::uint64_t floored_terms = 0;
    std::uint64_t degenerate_lists = 0;  // queries with no matching docs
    std::uint64_t nqc_guards = 0;        // corpus_score == 0 fallbacks
};

struct ConfigUtility {
    std::string config_name;
    double utility = 0.0;
    std::vector<std::pair<std::string, double>> contributions;  // ascending query id
};

struct SweepResult {
    std::vector<SimilarityConfig> configs;
    std::vector<std::string> query_ids;                 // kept queries, benchmark order
    std::vector<std::vector<std::string>> query_terms;  // aligned with query_ids
    std::vector<std::string> skipped_queries;           // empty after analysis
    std::vector<std::vector<RankedList>> lists;         // [config][query]
    std::vector<std::vector<QueryLikelihood>> likelihoods;
    std::vector<std::vector<double>> nqcs;
    int k = 100;
    DiagnosticCounts diagnostics;
};

struct SelectionReport {
    std::string benchmark_id;
    int k = 100;
    QueryWeights weights;
    std::vector<ConfigUtility> utilities;  // descending utility, ties by name
    std::string chosen;
    std::vector<std::string> skipped_queries;
    DiagnosticCounts diagnostics;
};

// Weighted sum of one config's per-query likelihoods, accumulated in
// ascending query-id order. Throws BenchmarkError when the two query sets
// differ, listing the symmetric difference.
ConfigUtility utility(const QueryWeights& weights,
                      const std::vector<QueryLikelihood>& likelihoods);

// Retrieval plus the full QPP table for every (query, config) pair. jobs > 1
// fills the preallocated table from a work queue; results are independent of
// scheduling.
SweepResult run_sweep(const CorpusIndex& index, const std::vector<SimilarityConfig>& configs,
                      const std::vector<Topic>& topics, int k, int jobs);

SelectionReport select_from_sweep(const SweepResult& sweep, std::string benchmark_id);

SelectionReport select(const CorpusIndex& index, const std::vector<SimilarityConfig>& configs,
                       const std::vector<Topic>& topics, int k, int jobs,
                       std::string benchmark_id);

// Machine form; echoes every decision constant so runs are self-describing.
nlohmann::ordered_json selection_report_json(const SelectionReport& report);

// Aligned-column human form.
std::string selection_report_text(const SelectionReport& report);

}  // namespace irtune
