// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 irtune contributors

#include "irtune/qpp.hpp"

#include <algorithm>
#include <cmath>

namespace irtune {

double QueryWeights::weight_of(const std::string& query_id) const {
    for (const auto& e : entries) {
        if (e.query_id == query_id) return e.weight;
    }
    return 0.0;
}

double doc_focus(const CorpusIndex& index, DocId d) {
    const DocumentRecord& rec = index.doc(d);
    if (rec.length == 0) return 0.0;
    double idf_sum = 0.0;
    for (const auto& [t, tf] : rec.term_freqs) idf_sum += index.idf(t);
    double len = static_cast<double>(rec.length);
    double kl = 0.0;
    for (const auto& [t, tf] : rec.term_freqs) {
        double p = static_cast<double>(tf) / len;
        double nidf = index.idf(t) / idf_sum;
        kl += p * safe_ln(p / nidf, nullptr);
    }
    return std::exp(-kl);
}

std::vector<double> compute_doc_focus_all(const CorpusIndex& index) {
    std::vector<double> focus(index.doc_count());
    for (DocId d = 0; d < index.doc_count(); ++d) focus[d] = doc_focus(index, d);
    return focus;
}

double query_doc_relevance(const CorpusIndex& index, const std::vector<std::string>& query_terms,
                           DocId d) {
    static const SimilarityConfig yardstick{Bm25Params{}};
    double n = static_cast<double>(index.doc_count());
    double total = static_cast<double>(index.total_terms());
    double avgdl = index.avg_doc_length();
    double dl = static_cast<double>(index.doc(d).length);
    std::vector<TermQueryStats> stats;
    stats.reserve(query_terms.size());
    for (const auto& term : query_terms) {
        TermQueryStats s;
        if (auto id = index.term_id(term)) {
            s.tf_in_doc = static_cast<double>(index.tf_in_doc(*id, d));
            s.df = static_cast<double>(index.df(*id));
            s.ctf = static_cast<double>(index.ctf(*id));
        }
        s.doc_length = dl;
        s.doc_count = n;
        s.total_terms = total;
        s.avg_doc_length = avgdl;
        stats.push_back(s);
    }
    return score(yardstick, stats, nullptr);
}

std::vector<double> list_posterior(const RankedList& list) {
    std::vector<double> posterior(list.items.size(), 0.0);
    if (list.items.empty()) return posterior;
    double lo = list.items[0].score;
    double hi = list.items[0].score;
    for (const ScoredDoc& sd : list.items) {
        lo = std::min(lo, sd.score);
        hi = std::max(hi, sd.score);
    }
    double eps = hi > lo ? 1e-6 * (hi - lo) : 1e-12;
    double shift = -lo + eps;
    double total = 0.0;
    for (std::size_t i = 0; i < list.items.size(); ++i) {
        posterior[i] = list.items[i].score + shift;
        total += posterior[i];
    }
    for (double& p : posterior) p /= total;
    return posterior;
}

QueryLikelihood per_query_likelihood(const CorpusIndex& index,
                                     const std::vector<std::string>& query_terms,
                                     const RankedList& list,
                                     const std::vector<double>* focus_by_doc) {
    QueryLikelihood out;
    out.query_id = list.query_id;
    out.config_name = list.config_name;
    if (list.items.empty()) {
        out.degenerate = true;
        return out;
    }
    std::vector<double> posterior = list_posterior(list);
    double relevance = 0.0;
    double focus_sum = 0.0;
    for (std::size_t i = 0; i < list.items.size(); ++i) {
        DocId d = list.items[i].internal_id;
        relevance += query_doc_relevance(index, query_terms, d) * posterior[i];
        focus_sum += focus_by_doc != nullptr ? (*focus_by_doc)[d] : doc_focus(index, d);
    }
    out.value = relevance * (focus_sum / static_cast<double>(list.items.size()));
    return out;
}

double nqc(const RankedList& list, double corpus_score, bool* guarded) {
    if (guarded != nullptr) *guarded = false;
    if (list.items.empty() || corpus_score == 0.0) {
        if (guarded != nullptr) *guarded = true;
        return 0.0;
    }
    std::vector<double> scores;
    scores.reserve(list.items.size());
    for (const ScoredDoc& sd : list.items) scores.push_back(sd.score);
    return population_stddev(scores) / std::abs(corpus_score);
}

double corpus_score(const CorpusIndex& index, const SimilarityConfig& config,
                    const std::vector<std::string>& query_terms, const RelevanceModel* feedback,
                    ScoreDiagnostics* diag) {
    double total = static_cast<double>(index.total_terms());
    if (config.is_rerank()) {
        if (feedback == nullptr) {
            return corpus_score(index, config.base_config(), query_terms, nullptr, diag);
        }
        double s = 0.0;
        for (const auto& [term, w] : feedback->weights) {
            double ctf = 0.0;
            if (auto id = index.term_id(term)) ctf = static_cast<double>(index.ctf(*id));
            s += w * safe_ln(total > 0.0 ? ctf / total : 0.0, diag);
        }
        return s;
    }
    if (std::holds_alternative<LmdParams>(config.variant)) {
        double s = 0.0;
        for (const auto& term : query_terms) {
            double ctf = 0.0;
            if (auto id = index.term_id(term)) ctf = static_cast<double>(index.ctf(*id));
            if (ctf <= 0.0) continue;
            s += safe_ln(ctf / total, diag);
        }
        return s;
    }
    double n = static_cast<double>(index.doc_count());
    double avgdl = index.avg_doc_length();
    std::vector<TermQueryStats> stats;
    stats.reserve(query_terms.size());
    for (const auto& term : query_terms) {
        TermQueryStats s;
        if (auto id = index.term_id(term)) {
            s.tf_in_doc = static_cast<double>(index.ctf(*id));
            s.df = static_cast<double>(index.df(*id));
            s.ctf = static_cast<double>(index.ctf(*id));
        }
        s.doc_length = total;
        s.doc_count = n;
        s.total_terms = total;
        s.avg_doc_length = avgdl;
        stats.push_back(s);
    }
    return score(config, stats, diag);
}

std::vector<std::pair<std::string, double>> difficulty_scores(
    const std::vector<std::string>& query_ids,
    const std::vector<std::vector<double>>& nqc_per_query) {
    std::vector<std::pair<std::string, double>> out;
    out.reserve(query_ids.size());
    for (std::size_t i = 0; i < query_ids.size(); ++i) {
        double v = 0.0;
        for (double x : nqc_per_query[i]) v += std::log(std::max(x, kNqcLogClamp));
        out.emplace_back(query_ids[i], v);
    }
    return out;
}

std::vector<double> weights_from_shifted(const std::vector<double>& u) {
    std::vector<double> weights(u.size());
    double u_total = 0.0;
    for (double x : u) u_total += x;
    double prefix = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        weights[i] = 1.0 - prefix / u_total;
        prefix += u[i];
    }
    return weights;
}

QueryWeights query_weights(const std::vector<std::pair<std::string, double>>& difficulty) {
    QueryWeights out;
    if (difficulty.empty()) return out;
    double lo = difficulty[0].second;
    double hi = difficulty[0].second;
    for (const auto& [qid, v] : difficulty) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double delta = hi > lo ? 1e-6 * (hi - lo) : 1.0;

    std::vector<std::pair<std::string, double>> sorted = difficulty;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first < b.first;
    });

    std::vector<double> u(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) u[i] = sorted[i].second - lo + delta;
    std::vector<double> weights = weights_from_shifted(u);
    out.entries.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        QueryWeightEntry e;
        e.query_id = sorted[i].first;
        e.difficulty = sorted[i].second;
        e.weight = weights[i];
        e.rank = static_cast<int>(i) + 1;
        out.entries.push_back(std::move(e));
    }
    return out;
}

}  // namespace irtune
