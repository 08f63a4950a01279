// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 irtune contributors

#include "irtune/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "irtune/errors.hpp"

namespace irtune {
namespace {

bool better(const ScoredDoc& a, const ScoredDoc& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.external_id < b.external_id;
}

void sort_and_rank(RankedList& list, int k) {
    std::sort(list.items.begin(), list.items.end(), better);
    if (static_cast<int>(list.items.size()) > k) list.items.resize(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < list.items.size(); ++i) {
        list.items[i].rank = static_cast<int>(i) + 1;
    }
}

// Heaviest first; equal weights resolved by term so truncation is stable.
bool heavier(const std::pair<std::string, double>& a, const std::pair<std::string, double>& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
}

RelevanceModel truncate_and_normalize(std::map<std::string, double> accum, int fb_terms) {
    std::erase_if(accum, [](const auto& e) { return e.second <= 0.0; });
    std::vector<std::pair<std::string, double>> entries(accum.begin(), accum.end());
    std::sort(entries.begin(), entries.end(), heavier);
    if (static_cast<int>(entries.size()) > fb_terms) {
        entries.resize(static_cast<std::size_t>(fb_terms));
    }
    std::sort(entries.begin(), entries.end());
    double total = 0.0;
    for (const auto& [term, w] : entries) total += w;
    RelevanceModel model;
    model.weights.reserve(entries.size());
    for (auto& [term, w] : entries) {
        model.weights.emplace_back(std::move(term), total > 0.0 ? w / total : 0.0);
    }
    return model;
}

}  // namespace

RankedList run_query(const CorpusIndex& index, const SimilarityConfig& config,
                     const std::vector<std::string>& query_terms, int k, std::string query_id,
                     ScoreDiagnostics* diag) {
    if (query_terms.empty()) throw EmptyQueryError("query '" + query_id + "' has no terms");
    RankedList list;
    list.query_id = std::move(query_id);
    list.config_name = config.canonical_name();
    list.k_requested = k;

    // Distinct terms in query order, with occurrence counts.
    std::vector<std::pair<std::string, std::uint32_t>> distinct;
    {
        std::unordered_map<std::string, std::size_t> pos;
        for (const auto& t : query_terms) {
            auto [it, inserted] = pos.emplace(t, distinct.size());
            if (inserted) {
                distinct.emplace_back(t, 1);
            } else {
                ++distinct[it->second].second;
            }
        }
    }

    struct TermInfo {
        double df = 0;
        double ctf = 0;
        std::uint32_t occurrences = 0;
    };
    std::vector<TermInfo> infos(distinct.size());
    std::unordered_map<DocId, std::vector<std::uint32_t>> candidate_tf;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
        infos[i].occurrences = distinct[i].second;
        auto id = index.term_id(distinct[i].first);
        if (!id) continue;
        infos[i].df = static_cast<double>(index.df(*id));
        infos[i].ctf = static_cast<double>(index.ctf(*id));
        for (const Posting& p : index.postings(*id)) {
            auto [it, inserted] = candidate_tf.try_emplace(p.doc);
            if (inserted) it->second.assign(distinct.size(), 0);
            it->second[i] = p.tf;
        }
    }

    std::vector<DocId> candidates;
    candidates.reserve(candidate_tf.size());
    for (const auto& [doc, tf] : candidate_tf) candidates.push_back(doc);
    std::sort(candidates.begin(), candidates.end());

    double n = static_cast<double>(index.doc_count());
    double total_terms = static_cast<double>(index.total_terms());
    double avgdl = index.avg_doc_length();

    std::vector<TermQueryStats> stats;
    list.items.reserve(candidates.size());
    for (DocId doc : candidates) {
        const auto& tfs = candidate_tf.at(doc);
        double dl = static_cast<double>(index.doc(doc).length);
        stats.clear();
        for (std::size_t i = 0; i < distinct.size(); ++i) {
            TermQueryStats s;
            s.tf_in_doc = static_cast<double>(tfs[i]);
            s.df = infos[i].df;
            s.ctf = infos[i].ctf;
            s.doc_length = dl;
            s.doc_count = n;
            s.total_terms = total_terms;
            s.avg_doc_length = avgdl;
            for (std::uint32_t occ = 0; occ < infos[i].occurrences; ++occ) stats.push_back(s);
        }
        ScoredDoc sd;
        sd.internal_id = doc;
        sd.external_id = index.doc(doc).external_id;
        sd.score = score(config, stats, diag);
        list.items.push_back(std::move(sd));
    }
    sort_and_rank(list, k);
    return list;
}

RelevanceModel build_rm1(const CorpusIndex& index, const RankedList& base_list, int fb_docs,
                         int fb_terms) {
    if (base_list.items.empty()) {
        throw BenchmarkError("cannot build a relevance model from an empty result list");
    }
    std::size_t m = std::min<std::size_t>(static_cast<std::size_t>(fb_docs),
                                          base_list.items.size());
    double max_score = base_list.items[0].score;
    for (std::size_t i = 1; i < m; ++i) max_score = std::max(max_score, base_list.items[i].score);
    std::vector<double> doc_weight(m);
    double z = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        doc_weight[i] = std::exp(base_list.items[i].score - max_score);
        z += doc_weight[i];
    }
    std::map<std::string, double> accum;
    for (std::size_t i = 0; i < m; ++i) {
        double w = doc_weight[i] / z;
        const DocumentRecord& rec = index.doc(base_list.items[i].internal_id);
        if (rec.length == 0) continue;
        double dl = static_cast<double>(rec.length);
        for (const auto& [t, tf] : rec.term_freqs) {
            accum[index.term(t)] += w * static_cast<double>(tf) / dl;
        }
    }
    return truncate_and_normalize(std::move(accum), fb_terms);
}

RelevanceModel build_rm3(const RelevanceModel& rm1, const std::vector<std::string>& query_terms,
                         double lambda, int fb_terms) {
    std::map<std::string, double> accum;
    if (!query_terms.empty()) {
        double per = lambda / static_cast<double>(query_terms.size());
        for (const auto& t : query_terms) accum[t] += per;
    }
    for (const auto& [term, w] : rm1.weights) accum[term] += (1.0 - lambda) * w;
    return truncate_and_normalize(std::move(accum), fb_terms);
}

RankedList rerank(const CorpusIndex& index, const RankedList& base_list,
                  const RelevanceModel& model, double mu, ScoreDiagnostics* diag) {
    RankedList out = base_list;
    double total_terms = static_cast<double>(index.total_terms());
    for (ScoredDoc& sd : out.items) {
        const DocumentRecord& rec = index.doc(sd.internal_id);
        double dl = static_cast<double>(rec.length);
        double s = 0.0;
        for (const auto& [term, w] : model.weights) {
            double tf = 0.0;
            double ctf = 0.0;
            if (auto id = index.term_id(term)) {
                tf = static_cast<double>(index.tf_in_doc(*id, sd.internal_id));
                ctf = static_cast<double>(index.ctf(*id));
            }
            double p_doc = (tf + mu * (total_terms > 0.0 ? ctf / total_terms : 0.0)) / (dl + mu);
            s += w * safe_ln(p_doc, diag);
        }
        sd.score = s;
    }
    sort_and_rank(out, static_cast<int>(out.items.size()));
    out.k_requested = base_list.k_requested;
    return out;
}

QueryExecution execute_query(const CorpusIndex& index, const SimilarityConfig& config,
                             const std::vector<std::string>& query_terms, int k,
                             std::string query_id, ScoreDiagnostics* diag) {
    if (!config.is_rerank()) {
        return {run_query(index, config, query_terms, k, std::move(query_id), diag), std::nullopt};
    }
    const RerankParams& rp = config.rerank();
    SimilarityConfig base = config.base_config();
    RankedList base_list = run_query(index, base, query_terms, k, std::move(query_id), diag);
    if (base_list.items.empty()) {
        base_list.config_name = config.canonical_name();
        return {std::move(base_list), std::nullopt};
    }
    RelevanceModel model = build_rm1(index, base_list, rp.fb_docs, rp.fb_terms);
    if (rp.model == RerankModel::RM3) {
        model = build_rm3(model, query_terms, rp.lambda, rp.fb_terms);
    }
    double mu = std::holds_alternative<LmdParams>(rp.base) ? std::get<LmdParams>(rp.base).mu
                                                           : LmdParams{}.mu;
    RankedList out = rerank(index, base_list, model, mu, diag);
    out.config_name = config.canonical_name();
    return {std::move(out), std::move(model)};
}

std::string format_run_score(double score) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", score);
    return buf;
}

void write_trec_run(std::ostream& out, const RankedList& list) {
    for (const ScoredDoc& sd : list.items) {
        out << list.query_id << " Q0 " << sd.external_id << ' ' << sd.rank << ' '
            << format_run_score(sd.score) << ' ' << list.config_name << '\n';
    }
}

std::vector<RankedList> read_trec_run(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw FormatError("cannot open run file: " + path.string());
    std::vector<RankedList> lists;
    std::unordered_map<std::string, std::size_t> by_qid;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string qid, q0, docid, tag;
        int rank = 0;
        double score = 0.0;
        if (!(ss >> qid >> q0 >> docid >> rank >> score >> tag)) {
            throw FormatError(path.string() + ":" + std::to_string(lineno) +
                              ": malformed run line");
        }
        auto [it, inserted] = by_qid.emplace(qid, lists.size());
        if (inserted) {
            RankedList l;
            l.query_id = qid;
            l.config_name = tag;
            lists.push_back(std::move(l));
        }
        RankedList& l = lists[it->second];
        ScoredDoc sd;
        sd.external_id = docid;
        sd.rank = rank;
        sd.score = score;
        l.items.push_back(std::move(sd));
        l.k_requested = std::max(l.k_requested, rank);
    }
    return lists;
}

}  // namespace irtune
