// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 irtune contributors

#include "irtune/eval.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "irtune/errors.hpp"
#include "irtune/similarity.hpp"

namespace irtune {

bool QrelSet::is_relevant(const std::string& qid, const std::string& docid) const {
    auto q = grades.find(qid);
    if (q == grades.end()) return false;
    auto d = q->second.find(docid);
    return d != q->second.end() && d->second >= 1;
}

std::size_t QrelSet::relevant_count(const std::string& qid) const {
    auto q = grades.find(qid);
    if (q == grades.end()) return 0;
    std::size_t n = 0;
    for (const auto& [doc, grade] : q->second) {
        if (grade >= 1) ++n;
    }
    return n;
}

QrelSet parse_qrels(const std::filesystem::path& path, std::vector<std::string>* warnings) {
    std::ifstream f(path);
    if (!f) throw FormatError("cannot open qrels file: " + path.string());
    QrelSet qrels;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ss(line);
        std::string qid, iter, docid;
        int grade = 0;
        if (!(ss >> qid >> iter >> docid >> grade) || grade < 0) {
            throw FormatError(path.string() + ":" + std::to_string(lineno) +
                              ": expected `qid iter docid grade`");
        }
        auto& per_query = qrels.grades[qid];
        auto [it, inserted] = per_query.emplace(docid, grade);
        if (!inserted) {
            if (warnings != nullptr) {
                warnings->push_back("duplicate judgment for (" + qid + ", " + docid +
                                    ") at line " + std::to_string(lineno) +
                                    "; keeping the later grade");
            }
            it->second = grade;
        }
    }
    return qrels;
}

double average_precision(const RankedList& list, const QrelSet& qrels,
                         const std::string& query_id) {
    std::size_t r_total = qrels.relevant_count(query_id);
    if (r_total == 0) {
        throw BenchmarkError("query '" + query_id + "' has no relevant documents");
    }
    double sum = 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < list.items.size(); ++i) {
        if (qrels.is_relevant(query_id, list.items[i].external_id)) {
            ++hits;
            sum += static_cast<double>(hits) / static_cast<double>(i + 1);
        }
    }
    return sum / static_cast<double>(r_total);
}

double map_score(const std::vector<RankedList>& runs, const QrelSet& qrels,
                 std::size_t* excluded) {
    std::vector<const RankedList*> ordered;
    ordered.reserve(runs.size());
    for (const auto& r : runs) ordered.push_back(&r);
    std::sort(ordered.begin(), ordered.end(),
              [](const RankedList* a, const RankedList* b) { return a->query_id < b->query_id; });
    double sum = 0.0;
    std::size_t evaluable = 0;
    std::size_t skipped = 0;
    for (const RankedList* list : ordered) {
        if (qrels.relevant_count(list->query_id) == 0) {
            ++skipped;
            continue;
        }
        sum += average_precision(*list, qrels, list->query_id);
        ++evaluable;
    }
    if (excluded != nullptr) *excluded = skipped;
    if (evaluable == 0) throw BenchmarkError("no evaluable query: every query lacks relevant docs");
    return sum / static_cast<double>(evaluable);
}

double map_lift(double map_i, double map_j) {
    if (map_j == 0.0) throw BenchmarkError("MAP lift undefined: reference MAP is 0");
    return map_i / map_j;
}

double random_baseline_map(const std::vector<double>& per_config_maps) {
    if (per_config_maps.empty()) {
        throw BenchmarkError("random baseline needs at least one configuration MAP");
    }
    double sum = 0.0;
    for (double m : per_config_maps) sum += m;
    return sum / static_cast<double>(per_config_maps.size());
}

double kendall_tau(const std::vector<std::string>& order_a,
                   const std::vector<std::string>& order_b) {
    if (order_a.size() != order_b.size()) {
        throw BenchmarkError("kendall_tau: orderings have different sizes");
    }
    std::unordered_map<std::string, std::size_t> pos_b;
    for (std::size_t i = 0; i < order_b.size(); ++i) {
        if (!pos_b.emplace(order_b[i], i).second) {
            throw BenchmarkError("kendall_tau: duplicate item '" + order_b[i] + "'");
        }
    }
    std::size_t n = order_a.size();
    if (n < 2) return 1.0;
    long long concordant = 0;
    long long discordant = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto pi = pos_b.find(order_a[i]);
        if (pi == pos_b.end()) {
            throw BenchmarkError("kendall_tau: item '" + order_a[i] + "' missing from second order");
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            auto pj = pos_b.find(order_a[j]);
            if (pj == pos_b.end()) {
                throw BenchmarkError("kendall_tau: item '" + order_a[j] +
                                     "' missing from second order");
            }
            if (pi->second < pj->second) {
                ++concordant;
            } else {
                ++discordant;
            }
        }
    }
    double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    return static_cast<double>(concordant - discordant) / pairs;
}

nlohmann::ordered_json eval_report_json(const EvalReport& report) {
    nlohmann::ordered_json j;
    j["benchmark"] = report.benchmark_id;
    j["chosen"] = report.chosen;
    j["optimal"] = report.optimal;
    j["map"] = {{"chosen", report.chosen_map},
                {"optimal", report.optimal_map},
                {"random", report.random_map}};
    j["lift_vs_optimal"] = report.lift_vs_optimal;
    j["lift_vs_random"] = report.lift_vs_random;
    j["kendall_tau"] = report.kendall;
    j["excluded_queries"] = report.excluded_queries;
    nlohmann::ordered_json per_config = nlohmann::ordered_json::array();
    for (const auto& [name, map] : report.per_config_map) {
        per_config.push_back({{"name", name}, {"map", map}});
    }
    j["per_config_map"] = std::move(per_config);
    return j;
}

std::string eval_report_tsv(const EvalReport& report) {
    std::ostringstream out;
    out << "metric\tvalue\n";
    out << "map_chosen\t" << format_double(report.chosen_map) << "\n";
    out << "map_optimal\t" << format_double(report.optimal_map) << "\n";
    out << "map_random\t" << format_double(report.random_map) << "\n";
    out << "lift_vs_optimal\t" << format_double(report.lift_vs_optimal) << "\n";
    out << "lift_vs_random\t" << format_double(report.lift_vs_random) << "\n";
    out << "kendall_tau\t" << format_double(report.kendall) << "\n";
    out << "excluded_queries\t" << report.excluded_queries << "\n";
    out << "\nconfig\tmap\n";
    for (const auto& [name, map] : report.per_config_map) {
        out << name << "\t" << format_double(map) << "\n";
    }
    return out.str();
}

}  // namespace irtune
