// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 irtune contributors

#include "irtune/selector.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <sstream>
#include <thread>

#include "irtune/errors.hpp"

namespace irtune {

ConfigUtility utility(const QueryWeights& weights,
                      const std::vector<QueryLikelihood>& likelihoods) {
    std::set<std::string> weight_ids;
    for (const auto& e : weights.entries) weight_ids.insert(e.query_id);
    std::set<std::string> value_ids;
    for (const auto& l : likelihoods) value_ids.insert(l.query_id);
    if (weight_ids != value_ids) {
        std::ostringstream msg;
        msg << "query sets differ between weights and likelihoods;";
        for (const auto& q : weight_ids) {
            if (!value_ids.count(q)) msg << " missing likelihood for '" << q << "'";
        }
        for (const auto& q : value_ids) {
            if (!weight_ids.count(q)) msg << " missing weight for '" << q << "'";
        }
        throw BenchmarkError(msg.str());
    }

    ConfigUtility out;
    if (!likelihoods.empty()) out.config_name = likelihoods.front().config_name;
    out.contributions.reserve(likelihoods.size());
    for (const auto& l : likelihoods) {
        out.contributions.emplace_back(l.query_id, l.value * weights.weight_of(l.query_id));
    }
    std::sort(out.contributions.begin(), out.contributions.end());
    for (const auto& [qid, c] : out.contributions) out.utility += c;
    return out;
}

SweepResult run_sweep(const CorpusIndex& index, const std::vector<SimilarityConfig>& configs,
                      const std::vector<Topic>& topics, int k, int jobs) {
    SweepResult sweep;
    sweep.configs = configs;
    sweep.k = k;

    std::set<std::string> seen_qids;
    for (const Topic& t : topics) {
        if (!seen_qids.insert(t.qid).second) {
            throw BenchmarkError("duplicate query id in topics: " + t.qid);
        }
        std::vector<std::string> terms = index.analyzer().analyze(t.text);
        if (terms.empty()) {
            sweep.skipped_queries.push_back(t.qid);
        } else {
            sweep.query_ids.push_back(t.qid);
            sweep.query_terms.push_back(std::move(terms));
        }
    }
    if (sweep.query_ids.empty()) {
        throw BenchmarkError("every query in the benchmark analyzes to zero terms");
    }

    std::vector<double> focus = compute_doc_focus_all(index);

    std::size_t n_configs = configs.size();
    std::size_t n_queries = sweep.query_ids.size();
    sweep.lists.assign(n_configs, std::vector<RankedList>(n_queries));
    sweep.likelihoods.assign(n_configs, std::vector<QueryLikelihood>(n_queries));
    sweep.nqcs.assign(n_configs, std::vector<double>(n_queries, 0.0));

    std::atomic<std::size_t> next{0};
    std::atomic<std::uint64_t> degenerate{0};
    std::atomic<std::uint64_t> nqc_guards{0};
    ScoreDiagnostics diag;
    std::size_t total_tasks = n_configs * n_queries;
    int workers = std::max(1, jobs);

    auto work = [&] {
        while (true) {
            std::size_t task = next.fetch_add(1);
            if (task >= total_tasks) return;
            std::size_t c = task / n_queries;
            std::size_t q = task % n_queries;
            QueryExecution exec = execute_query(index, configs[c], sweep.query_terms[q], k,
                                                sweep.query_ids[q], &diag);
            double cs = corpus_score(index, configs[c], sweep.query_terms[q],
                                     exec.feedback_model ? &*exec.feedback_model : nullptr, &diag);
            bool guarded = false;
            sweep.nqcs[c][q] = nqc(exec.list, cs, &guarded);
            if (guarded) nqc_guards.fetch_add(1);
            sweep.likelihoods[c][q] =
                per_query_likelihood(index, sweep.query_terms[q], exec.list, &focus);
            if (sweep.likelihoods[c][q].degenerate) degenerate.fetch_add(1);
            sweep.lists[c][q] = std::move(exec.list);
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    sweep.diagnostics.clamped_logs = diag.clamped_logs.load();
    sweep.diagnostics.floored_terms = diag.floored_terms.load();
    sweep.diagnostics.degenerate_lists = degenerate.load();
    sweep.diagnostics.nqc_guards = nqc_guards.load();
    return sweep;
}

SelectionReport select_from_sweep(const SweepResult& sweep, std::string benchmark_id) {
    SelectionReport report;
    report.benchmark_id = std::move(benchmark_id);
    report.k = sweep.k;
    report.skipped_queries = sweep.skipped_queries;
    report.diagnostics = sweep.diagnostics;

    std::size_t n_queries = sweep.query_ids.size();
    std::vector<std::vector<double>> nqc_per_query(n_queries,
                                                   std::vector<double>(sweep.configs.size()));
    for (std::size_t c = 0; c < sweep.configs.size(); ++c) {
        for (std::size_t q = 0; q < n_queries; ++q) nqc_per_query[q][c] = sweep.nqcs[c][q];
    }
    report.weights = query_weights(difficulty_scores(sweep.query_ids, nqc_per_query));

    report.utilities.reserve(sweep.configs.size());
    for (std::size_t c = 0; c < sweep.configs.size(); ++c) {
        ConfigUtility u = utility(report.weights, sweep.likelihoods[c]);
        u.config_name = sweep.configs[c].canonical_name();
        report.utilities.push_back(std::move(u));
    }
    std::stable_sort(report.utilities.begin(), report.utilities.end(),
                     [](const ConfigUtility& a, const ConfigUtility& b) {
                         if (a.utility != b.utility) return a.utility > b.utility;
                         return a.config_name < b.config_name;
                     });
    report.chosen = report.utilities.front().config_name;
    return report;
}

SelectionReport select(const CorpusIndex& index, const std::vector<SimilarityConfig>& configs,
                       const std::vector<Topic>& topics, int k, int jobs,
                       std::string benchmark_id) {
    if (configs.size() < 2) throw BenchmarkError("selection needs at least 2 configurations");
    return select_from_sweep(run_sweep(index, configs, topics, k, jobs),
                             std::move(benchmark_id));
}

nlohmann::ordered_json selection_report_json(const SelectionReport& report) {
    nlohmann::ordered_json j;
    j["benchmark"] = report.benchmark_id;
    j["k"] = report.k;
    j["constants"] = {
        {"idf", "ln(1+(N-df+0.5)/(df+0.5))"},
        {"relevance_yardstick", SimilarityConfig{Bm25Params{}}.canonical_name()},
        {"posterior_shift", "score-min+eps, eps=1e-6*(max-min) or 1e-12 if all equal"},
        {"difficulty", "sum over configs of ln(max(nqc,1e-9))"},
        {"difficulty_shift", "v-min+delta, delta=1e-6*(max-min) or 1 if all equal"},
        {"nqc_stddev", "population"},
        {"log_clamp", kLogClamp},
        {"dfr_h3_mu", 800.0},
        {"dfr_z", 0.3},
        {"rm_defaults", {{"fb_docs", 10}, {"fb_terms", 25}, {"lambda", 0.5}, {"base", "lmd:mu=2000"}}},
        {"default_dfr", SimilarityConfig{DfrParams{}}.canonical_name()},
        {"default_ib", SimilarityConfig{IbParams{}}.canonical_name()},
    };
    j["queries"] = {{"kept", nlohmann::ordered_json::array()},
                    {"skipped", report.skipped_queries}};
    nlohmann::ordered_json weights = nlohmann::ordered_json::array();
    for (const auto& e : report.weights.entries) {
        j["queries"]["kept"].push_back(e.query_id);
        weights.push_back({{"query", e.query_id},
                           {"difficulty", e.difficulty},
                           {"weight", e.weight},
                           {"rank", e.rank}});
    }
    j["query_weights"] = std::move(weights);
    nlohmann::ordered_json configs = nlohmann::ordered_json::array();
    for (const auto& u : report.utilities) {
        nlohmann::ordered_json contributions = nlohmann::ordered_json::object();
        for (const auto& [qid, c] : u.contributions) contributions[qid] = c;
        configs.push_back({{"name", u.config_name},
                           {"utility", u.utility},
                           {"contributions", std::move(contributions)}});
    }
    j["configs"] = std::move(configs);
    j["chosen"] = report.chosen;
    j["diagnostics"] = {{"clamped_logs", report.diagnostics.clamped_logs},
                        {"floored_terms", report.diagnostics.floored_terms},
                        {"degenerate_lists", report.diagnostics.degenerate_lists},
                        {"nqc_guards", report.diagnostics.nqc_guards}};
    return j;
}

std::string selection_report_text(const SelectionReport& report) {
    std::ostringstream out;
    out << "benchmark: " << report.benchmark_id << "\n";
    out << "k: " << report.k << "\n";
    out << "queries: " << report.weights.entries.size() << " kept, "
        << report.skipped_queries.size() << " skipped\n";
    std::size_t name_width = 4;
    for (const auto& u : report.utilities) name_width = std::max(name_width, u.config_name.size());
    out << "\nrank  " << std::string(name_width, ' ') << "  utility\n";
    std::size_t rank = 1;
    for (const auto& u : report.utilities) {
        std::string name = u.config_name;
        name.resize(name_width, ' ');
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%-4zu", rank++);
        out << buf << "  " << name << "  " << format_double(u.utility) << "\n";
    }
    out << "\nchosen: " << report.chosen << "\n";
    return out.str();
}

}  // namespace irtune
