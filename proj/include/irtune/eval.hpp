// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 irtune contributors

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "irtune/retrieval.hpp"

namespace irtune {

struct QrelSet {
    // qid -> docid -> grade; relevance is binarized at grade >= 1
    std::map<std::string, std::map<std::string, int>> grades;

    bool is_relevant(const std::string& qid, const std::string& docid) const;
    std::size_t relevant_count(const std::string& qid) const;
};

// 4-column whitespace format `qid iter docid grade`; iter ignored; later
// duplicate (qid, docid) lines override earlier ones with a warning.
QrelSet parse_qrels(const std::filesystem::path& path,
                    std::vector<std::string>* warnings = nullptr);

// AP@k with denominator = total relevant in qrels (grade >= 1), not capped at
// list depth. Throws BenchmarkError when the query has no relevant doc.
double average_precision(const RankedList& list, const QrelSet& qrels,
                         const std::string& query_id);

// Mean AP over evaluable queries (those with >= 1 relevant doc), averaged in
// ascending query-id order; queries without relevant docs are counted in
// *excluded. Throws BenchmarkError when nothing is evaluable.
double map_score(const std::vector<RankedList>& runs, const QrelSet& qrels,
                 std::size_t* excluded = nullptr);

// map_i / map_j; map_j == 0 is an undefined-lift error.
double map_lift(double map_i, double map_j);

// Hypothetical random selection: mean of the per-config MAPs.
double random_baseline_map(const std::vector<double>& per_config_maps);

// Kendall tau-a over two total orderings of the same items, by exact pair
// enumeration. Orderings of fewer than two items correlate trivially (1.0).
double kendall_tau(const std::vector<std::string>& order_a,
                   const std::vector<std::string>& order_b);

struct EvalReport {
    std::string benchmark_id;
    std::vector<std::pair<std::string, double>> per_config_map;  // predicted-rank order
    std::string chosen;
    std::string optimal;  // argmax MAP, ties by name
    double chosen_map = 0.0;
    double optimal_map = 0.0;
    double random_map = 0.0;
    double lift_vs_optimal = 0.0;
    double lift_vs_random = 0.0;
    double kendall = 0.0;
    std::size_t excluded_queries = 0;
};

nlohmann::ordered_json eval_report_json(const EvalReport& report);
std::string eval_report_tsv(const EvalReport& report);

}  // namespace irtune
