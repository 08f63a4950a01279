// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 irtune contributors

#include "irtune/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "irtune/errors.hpp"

namespace irtune {
namespace {

// Thin wrapper so all draws go through the raw engine; std::*_distribution
// outputs are implementation-defined and would break cross-platform
// reproducibility. Modulo bias is irrelevant for benchmark synthesis.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

    int range(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

std::string label(const char* prefix, int width, int i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%0*d", prefix, width, i);
    return buf;
}

// Weighted sampler over a fixed vocabulary slice.
class WeightedSampler {
public:
    WeightedSampler(int count, double offset) {
        cumulative_.reserve(static_cast<std::size_t>(count));
        double total = 0.0;
        for (int r = 0; r < count; ++r) {
            total += 1.0 / (static_cast<double>(r) + offset);
            cumulative_.push_back(total);
        }
    }

    int draw(Rng& rng) const {
        double u = rng.unit() * cumulative_.back();
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        if (it == cumulative_.end()) --it;
        return static_cast<int>(it - cumulative_.begin());
    }

private:
    std::vector<double> cumulative_;
};

}  // namespace

SyntheticBenchmark generate_synthetic(const SyntheticSpec& spec) {
    if (spec.n_docs < 1 || spec.n_queries < 1) {
        throw BenchmarkError("synthetic benchmark needs positive sizes");
    }
    Rng rng(spec.seed);
    SyntheticBenchmark bench;

    constexpr int kTopicTermsPerQuery = 8;
    constexpr int kBackgroundTerms = 600;
    WeightedSampler background(kBackgroundTerms, 5.0);

    // Per-query topical vocabulary, disjoint across queries.
    std::vector<std::vector<std::string>> topic_terms(
        static_cast<std::size_t>(spec.n_queries));
    for (int q = 0; q < spec.n_queries; ++q) {
        for (int t = 0; t < kTopicTermsPerQuery; ++t) {
            topic_terms[static_cast<std::size_t>(q)].push_back(
                label("t", 4, q * kTopicTermsPerQuery + t));
        }
    }

    // Queries use the first 2-3 terms of their pool.
    std::vector<std::vector<std::string>> query_terms(
        static_cast<std::size_t>(spec.n_queries));
    for (int q = 0; q < spec.n_queries; ++q) {
        int n_terms = rng.range(2, 3);
        for (int t = 0; t < n_terms; ++t) {
            query_terms[static_cast<std::size_t>(q)].push_back(
                topic_terms[static_cast<std::size_t>(q)][static_cast<std::size_t>(t)]);
        }
        Topic topic;
        topic.qid = label("q", 3, q + 1);
        for (std::size_t t = 0; t < query_terms[static_cast<std::size_t>(q)].size(); ++t) {
            if (t > 0) topic.text += ' ';
            topic.text += query_terms[static_cast<std::size_t>(q)][t];
        }
        bench.topics.push_back(std::move(topic));
    }

    // Assign roles to shuffled document slots: per query a block of relevant
    // docs and a block of distractors; everything else is background.
    struct Role {
        int query = -1;    // owning query, -1 for background
        bool relevant = false;
    };
    std::vector<Role> roles(static_cast<std::size_t>(spec.n_docs));
    std::vector<int> slots(static_cast<std::size_t>(spec.n_docs));
    for (int i = 0; i < spec.n_docs; ++i) slots[static_cast<std::size_t>(i)] = i;
    rng.shuffle(slots);
    std::size_t cursor = 0;
    auto take_slot = [&]() -> int {
        if (cursor >= slots.size()) return -1;
        return slots[cursor++];
    };
    // Keep a quarter of the corpus as pure background; when docs are scarce
    // the per-query blocks shrink proportionally instead of starving the
    // later queries.
    int budget_per_query = std::max(1, (spec.n_docs * 3 / 4) / spec.n_queries);
    for (int q = 0; q < spec.n_queries; ++q) {
        int n_rel = rng.range(8, 15);
        int n_distract = rng.range(15, 30);
        if (n_rel + n_distract > budget_per_query) {
            int scaled_rel = std::max(1, budget_per_query * n_rel / (n_rel + n_distract));
            n_rel = scaled_rel;
            n_distract = std::max(0, budget_per_query - scaled_rel);
        }
        for (int i = 0; i < n_rel; ++i) {
            int s = take_slot();
            if (s < 0) break;
            roles[static_cast<std::size_t>(s)] = Role{q, true};
        }
        for (int i = 0; i < n_distract; ++i) {
            int s = take_slot();
            if (s < 0) break;
            roles[static_cast<std::size_t>(s)] = Role{q, false};
        }
    }

    for (int d = 0; d < spec.n_docs; ++d) {
        const Role& role = roles[static_cast<std::size_t>(d)];
        std::vector<std::string> tokens;
        if (role.query >= 0 && role.relevant) {
            const auto& pool = topic_terms[static_cast<std::size_t>(role.query)];
            const auto& qterms = query_terms[static_cast<std::size_t>(role.query)];
            double u = rng.unit();
            int length = 30 + static_cast<int>(u * u * 420.0);  // 30..450, skewed short
            double topical = 0.08 + 0.42 * rng.unit();
            tokens.reserve(static_cast<std::size_t>(length));
            for (int i = 0; i < length; ++i) {
                if (rng.unit() < topical) {
                    if (rng.unit() < 0.6) {
                        tokens.push_back(qterms[rng.below(qterms.size())]);
                    } else {
                        tokens.push_back(pool[rng.below(pool.size())]);
                    }
                } else {
                    tokens.push_back(label("b", 3, background.draw(rng)));
                }
            }
            bool has_query_term = false;
            for (const auto& t : tokens) {
                if (std::find(qterms.begin(), qterms.end(), t) != qterms.end()) {
                    has_query_term = true;
                    break;
                }
            }
            if (!has_query_term) {
                tokens[0] = qterms[0];
                tokens[1 % tokens.size()] = qterms[qterms.size() - 1];
            }
        } else if (role.query >= 0) {
            // Distractors split into short keyword-stuffed docs, which reward
            // weak length normalization, and longer docs with a few stray
            // query terms.
            const auto& qterms = query_terms[static_cast<std::size_t>(role.query)];
            bool spam = rng.unit() < 0.5;
            int length = spam ? rng.range(10, 60) : rng.range(60, 250);
            tokens.reserve(static_cast<std::size_t>(length));
            for (int i = 0; i < length; ++i) {
                tokens.push_back(label("b", 3, background.draw(rng)));
            }
            int planted = spam ? rng.range(2, 6) : rng.range(1, 3);
            for (int i = 0; i < planted; ++i) {
                tokens[rng.below(tokens.size())] = qterms[rng.below(qterms.size())];
            }
        } else {
            int length = rng.range(20, 300);
            tokens.reserve(static_cast<std::size_t>(length));
            for (int i = 0; i < length; ++i) {
                tokens.push_back(label("b", 3, background.draw(rng)));
            }
            // Light cross-topic noise so topical terms are not perfect labels.
            if (rng.unit() < 0.05 && spec.n_queries > 0) {
                int q = static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.n_queries)));
                const auto& pool = topic_terms[static_cast<std::size_t>(q)];
                tokens[rng.below(tokens.size())] = pool[rng.below(pool.size())];
            }
        }
        RawDocument doc;
        doc.id = label("d", 5, d);
        doc.text.reserve(tokens.size() * 6);
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (i > 0) doc.text += ' ';
            doc.text += tokens[i];
        }
        bench.docs.push_back(std::move(doc));

        if (role.query >= 0) {
            std::string qid = label("q", 3, role.query + 1);
            if (role.relevant) {
                int grade = rng.unit() < 0.2 ? 2 : 1;
                bench.qrels.emplace_back(qid, bench.docs.back().id, grade);
            } else if (rng.unit() < 0.3) {
                bench.qrels.emplace_back(qid, bench.docs.back().id, 0);
            }
        }
    }

    std::sort(bench.qrels.begin(), bench.qrels.end());
    return bench;
}

void write_synthetic(const SyntheticBenchmark& bench, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream f(dir / "corpus.jsonl", std::ios::binary | std::ios::trunc);
        if (!f) throw FormatError("cannot write corpus.jsonl under " + dir.string());
        for (const auto& doc : bench.docs) {
            f << "{\"id\": \"" << doc.id << "\", \"text\": \"" << doc.text << "\"}\n";
        }
    }
    {
        std::ofstream f(dir / "topics.tsv", std::ios::binary | std::ios::trunc);
        if (!f) throw FormatError("cannot write topics.tsv under " + dir.string());
        for (const auto& t : bench.topics) f << t.qid << '\t' << t.text << '\n';
    }
    {
        std::ofstream f(dir / "qrels.txt", std::ios::binary | std::ios::trunc);
        if (!f) throw FormatError("cannot write qrels.txt under " + dir.string());
        for (const auto& [qid, docid, grade] : bench.qrels) {
            f << qid << " 0 " << docid << ' ' << grade << '\n';
        }
    }
}

void write_trec_sgml(const std::vector<RawDocument>& docs, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw FormatError("cannot write TREC file: " + path.string());
    for (const auto& doc : docs) {
        f << "<DOC>\n<DOCNO>" << doc.id << "</DOCNO>\n<TEXT>\n" << doc.text << "\n</TEXT>\n</DOC>\n";
    }
}

}  // namespace irtune
