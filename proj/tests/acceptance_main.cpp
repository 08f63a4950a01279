// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 irtune contributors
//
// Release gate: one pass/fail line per criterion, exit status = number of
// failed criteria. Each criterion re-derives its expectations independently
// (naive mirrors, closed forms, subprocess byte comparisons) instead of
// trusting library internals.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "irtune/analysis.hpp"
#include "irtune/corpus_io.hpp"
#include "irtune/errors.hpp"
#include "irtune/eval.hpp"
#include "irtune/index.hpp"
#include "irtune/qpp.hpp"
#include "irtune/retrieval.hpp"
#include "irtune/selector.hpp"
#include "irtune/similarity.hpp"
#include "irtune/synthetic.hpp"

#ifndef IRTUNE_CLI_PATH
#error "IRTUNE_CLI_PATH must point at the CLI binary"
#endif
#ifndef IRTUNE_TEST_DATA_DIR
#error "IRTUNE_TEST_DATA_DIR must point at tests/data"
#endif

namespace fs = std::filesystem;
using namespace irtune;

namespace {

struct Check {
    bool ok = true;
    std::vector<std::string> notes;

    void require(bool condition, const std::string& note) {
        if (!condition) {
            ok = false;
            if (notes.size() < 12) notes.push_back(note);
        }
    }
};

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

CommandResult run_cmd(const std::string& shell_command) {
    std::string cmd = shell_command + " 2>&1";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    CommandResult result;
    if (pipe == nullptr) return result;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = ::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        result.output.append(buf.data(), n);
    }
    int status = ::pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string cli() { return std::string(IRTUNE_CLI_PATH); }

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("irtune_accept_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream f(p, std::ios::binary);
    f << content;
}

std::string read_file(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream out;
    out << f.rdbuf();
    return out.str();
}

// Byte-compares every regular file under two directory trees.
bool same_tree(const fs::path& a, const fs::path& b, std::string* detail) {
    std::vector<fs::path> rel_a, rel_b;
    for (const auto& e : fs::recursive_directory_iterator(a)) {
        if (e.is_regular_file()) rel_a.push_back(fs::relative(e.path(), a));
    }
    for (const auto& e : fs::recursive_directory_iterator(b)) {
        if (e.is_regular_file()) rel_b.push_back(fs::relative(e.path(), b));
    }
    std::sort(rel_a.begin(), rel_a.end());
    std::sort(rel_b.begin(), rel_b.end());
    if (rel_a != rel_b) {
        if (detail != nullptr) *detail = "directory trees list different files";
        return false;
    }
    for (const auto& rel : rel_a) {
        if (read_file(a / rel) != read_file(b / rel)) {
            if (detail != nullptr) *detail = "file differs: " + rel.string();
            return false;
        }
    }
    return true;
}

CorpusIndex build_index(const std::vector<std::pair<std::string, std::string>>& docs,
                        Analyzer analyzer = Analyzer{std::vector<std::string>{}}) {
    IndexBuilder builder(std::move(analyzer));
    for (const auto& [id, text] : docs) builder.add(id, text);
    return builder.finish();
}

std::vector<std::pair<std::string, std::string>> random_docs(std::mt19937& rng, int n_docs,
                                                             int vocab, int max_len) {
    std::uniform_int_distribution<int> len_dist(1, max_len);
    std::uniform_int_distribution<int> term_dist(0, vocab - 1);
    std::vector<std::pair<std::string, std::string>> docs;
    docs.reserve(static_cast<std::size_t>(n_docs));
    for (int d = 0; d < n_docs; ++d) {
        int len = len_dist(rng);
        std::ostringstream text;
        for (int i = 0; i < len; ++i) {
            if (i > 0) text << ' ';
            text << 'w' << term_dist(rng);
        }
        docs.emplace_back("d" + std::to_string(d), text.str());
    }
    return docs;
}

// Score-everything-and-sort mirror of run_query with the same tie-break.
RankedList brute_force(const CorpusIndex& index, const SimilarityConfig& config,
                       const std::vector<std::string>& terms, int k) {
    RankedList list;
    double n = static_cast<double>(index.doc_count());
    double total = static_cast<double>(index.total_terms());
    double avgdl = index.avg_doc_length();
    for (DocId d = 0; d < index.doc_count(); ++d) {
        double dl = static_cast<double>(index.doc(d).length);
        std::vector<TermQueryStats> stats;
        bool any_match = false;
        for (const auto& term : terms) {
            TermQueryStats s;
            if (auto id = index.term_id(term)) {
                s.tf_in_doc = static_cast<double>(index.tf_in_doc(*id, d));
                s.df = static_cast<double>(index.df(*id));
                s.ctf = static_cast<double>(index.ctf(*id));
            }
            if (s.tf_in_doc > 0) any_match = true;
            s.doc_length = dl;
            s.doc_count = n;
            s.total_terms = total;
            s.avg_doc_length = avgdl;
            stats.push_back(s);
        }
        if (!any_match) continue;
        ScoredDoc sd;
        sd.internal_id = d;
        sd.external_id = index.doc(d).external_id;
        sd.score = score(config, stats, nullptr);
        list.items.push_back(std::move(sd));
    }
    std::stable_sort(list.items.begin(), list.items.end(),
                     [](const ScoredDoc& a, const ScoredDoc& b) {
                         if (a.score != b.score) return a.score > b.score;
                         return a.external_id < b.external_id;
                     });
    if (static_cast<int>(list.items.size()) > k) {
        list.items.resize(static_cast<std::size_t>(k));
    }
    for (std::size_t i = 0; i < list.items.size(); ++i) {
        list.items[i].rank = static_cast<int>(i) + 1;
    }
    return list;
}

QrelSet qrels_from_tuples(const std::vector<std::tuple<std::string, std::string, int>>& tuples) {
    QrelSet qrels;
    for (const auto& [qid, docid, grade] : tuples) qrels.grades[qid][docid] = grade;
    return qrels;
}

// --- criterion 1: TREC adapter path, non-reproducibility stated -------------

Check criterion1() {
    Check c;
    fs::path readme = fs::path(IRTUNE_TEST_DATA_DIR) / ".." / ".." / "README.md";
    std::string text = read_file(readme);
    c.require(!text.empty(), "README.md missing next to the sources");
    c.require(text.find("licensed") != std::string::npos,
              "README.md does not state that the reference TREC collections are licensed");

    TempDir dir;
    SyntheticSpec spec;
    spec.seed = 31;
    spec.n_docs = 300;
    spec.n_queries = 6;
    SyntheticBenchmark bench = generate_synthetic(spec);
    write_trec_sgml(bench.docs, dir.path / "corpus.trec");
    {
        std::ofstream topics(dir.path / "topics.tsv", std::ios::binary);
        for (const auto& t : bench.topics) topics << t.qid << '\t' << t.text << '\n';
        std::ofstream qrels(dir.path / "qrels.txt", std::ios::binary);
        for (const auto& [qid, docid, grade] : bench.qrels) {
            qrels << qid << " 0 " << docid << ' ' << grade << '\n';
        }
    }

    CommandResult idx = run_cmd(cli() + " index --corpus " + dir.file("corpus.trec") +
                                " --format trec --out " + dir.file("idx"));
    c.require(idx.exit_code == 0, "index --format trec failed: " + idx.output);
    CommandResult sel = run_cmd(cli() + " select --index " + dir.file("idx") + " --topics " +
                                dir.file("topics.tsv") + " --configs usecase1 --k 20 --out " +
                                dir.file("sel"));
    c.require(sel.exit_code == 0, "select on TREC-built index failed: " + sel.output);
    CommandResult ev = run_cmd(cli() + " eval --runs " + dir.file("sel") + " --qrels " +
                               dir.file("qrels.txt"));
    c.require(ev.exit_code == 0, "eval with TREC qrels failed: " + ev.output);
    c.require(fs::exists(dir.path / "sel" / "eval_report.json"),
              "eval report missing after TREC-format round trip");
    return c;
}

// --- criterion 2: grid cardinalities -----------------------------------------

Check criterion2() {
    Check c;
    auto start = std::chrono::steady_clock::now();
    std::vector<SimilarityConfig> grid = enumerate_dfr_grid();
    std::vector<SimilarityConfig> uc1 = usecase1_set();
    std::set<std::string> grid_names, uc1_names;
    for (const auto& cfg : grid) grid_names.insert(cfg.canonical_name());
    for (const auto& cfg : uc1) uc1_names.insert(cfg.canonical_name());
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.require(grid.size() == 105, "dfr grid has " + std::to_string(grid.size()) + " configs");
    c.require(grid_names.size() == 105, "dfr grid contains duplicate canonical names");
    c.require(uc1.size() == 6, "usecase1 set has " + std::to_string(uc1.size()) + " configs");
    c.require(uc1_names.size() == 6, "usecase1 set contains duplicate canonical names");
    c.require(elapsed < 1.0, "grid enumeration took " + std::to_string(elapsed) + "s");
    return c;
}

// --- criterion 3: scoring oracle equivalence ---------------------------------

Check criterion3() {
    Check c;
    auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(33001);
    std::vector<SimilarityConfig> dfr_grid = enumerate_dfr_grid();
    const char* ib_models[] = {"LL", "SPL"};
    const char* ib_lambdas[] = {"DF", "TTF"};
    const char* ib_norms[] = {"H1", "H2", "H3", "Z", "None"};

    for (int round = 0; round < 50; ++round) {
        std::uniform_int_distribution<int> n_docs_dist(50, 1000);
        std::uniform_int_distribution<int> vocab_dist(20, 150);
        std::uniform_int_distribution<int> n_queries_dist(1, 20);
        int n_docs = n_docs_dist(rng);
        int vocab = vocab_dist(rng);
        CorpusIndex index = build_index(random_docs(rng, n_docs, vocab, 60));

        SimilarityConfig config = [&]() {
            switch (round % 4) {
                case 0: {
                    std::uniform_real_distribution<double> k1(0.5, 2.0), b(0.0, 1.0);
                    std::ostringstream spec;
                    spec << "bm25:k1=" << k1(rng) << ",b=" << b(rng);
                    return parse_config(spec.str());
                }
                case 1: {
                    std::uniform_int_distribution<int> mu(100, 4000);
                    return parse_config("lmd:mu=" + std::to_string(mu(rng)));
                }
                case 2:
                    return dfr_grid[rng() % dfr_grid.size()];
                default: {
                    std::string spec = std::string("ib:") + ib_models[rng() % 2] + ":" +
                                       ib_lambdas[rng() % 2] + ":" + ib_norms[rng() % 5];
                    return parse_config(spec);
                }
            }
        }();

        int n_queries = n_queries_dist(rng);
        std::uniform_int_distribution<int> q_len(1, 4);
        std::uniform_int_distribution<int> term_dist(0, vocab + 4);  // a few misses
        for (int q = 0; q < n_queries; ++q) {
            std::vector<std::string> terms;
            int len = q_len(rng);
            for (int t = 0; t < len; ++t) terms.push_back("w" + std::to_string(term_dist(rng)));
            RankedList expected = brute_force(index, config, terms, n_docs);
            RankedList got = run_query(index, config, terms, n_docs, "q");
            if (got.items.size() != expected.items.size()) {
                c.require(false, "round " + std::to_string(round) + " config " +
                                     config.canonical_name() + ": list sizes differ");
                break;
            }
            for (std::size_t i = 0; i < got.items.size(); ++i) {
                if (got.items[i].external_id != expected.items[i].external_id ||
                    std::abs(got.items[i].score - expected.items[i].score) > 1e-9) {
                    c.require(false, "round " + std::to_string(round) + " config " +
                                         config.canonical_name() + ": mismatch at rank " +
                                         std::to_string(i + 1));
                    break;
                }
            }
            if (!c.ok) break;
        }
        if (!c.ok) break;
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.require(elapsed < 60.0, "oracle sweep took " + std::to_string(elapsed) + "s");
    return c;
}

// --- criterion 4: metric oracle equivalence ----------------------------------

Check criterion4() {
    Check c;
    std::mt19937 rng(34001);
    std::uniform_int_distribution<int> n_docs(1, 30);
    std::uniform_int_distribution<int> n_queries(1, 8);
    std::uniform_int_distribution<int> grade(0, 2);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    for (int round = 0; round < 100 && c.ok; ++round) {
        QrelSet qrels;
        std::vector<RankedList> runs;
        int nq = n_queries(rng);
        for (int q = 0; q < nq; ++q) {
            std::string qid = "q" + std::to_string(q);
            int pool = n_docs(rng);
            std::vector<std::string> docs;
            for (int d = 0; d < pool; ++d) docs.push_back("d" + std::to_string(d));
            std::shuffle(docs.begin(), docs.end(), rng);
            RankedList list;
            list.query_id = qid;
            for (int i = 0; i < (pool + 1) / 2; ++i) {
                list.items.push_back({static_cast<DocId>(i), docs[static_cast<std::size_t>(i)],
                                      20.0 - i, i + 1});
            }
            runs.push_back(std::move(list));
            for (const auto& d : docs) {
                if (coin(rng) < 0.4) qrels.grades[qid][d] = grade(rng);
            }
        }

        double naive_sum = 0.0;
        std::size_t naive_eval = 0;
        for (const auto& run : runs) {
            std::size_t r_total = qrels.relevant_count(run.query_id);
            if (r_total == 0) continue;
            double sum = 0.0;
            double hits = 0.0;
            for (std::size_t i = 0; i < run.items.size(); ++i) {
                if (qrels.is_relevant(run.query_id, run.items[i].external_id)) {
                    hits += 1.0;
                    sum += hits / static_cast<double>(i + 1);
                }
            }
            double naive = sum / static_cast<double>(r_total);
            double got = average_precision(run, qrels, run.query_id);
            c.require(std::abs(got - naive) <= 1e-9,
                      "AP mismatch on round " + std::to_string(round));
            naive_sum += naive;
            ++naive_eval;
        }
        if (naive_eval > 0) {
            double got = map_score(runs, qrels, nullptr);
            c.require(std::abs(got - naive_sum / static_cast<double>(naive_eval)) <= 1e-9,
                      "MAP mismatch on round " + std::to_string(round));
        }
    }

    for (int n = 2; n <= 10 && c.ok; ++n) {
        std::vector<std::string> order;
        for (int i = 0; i < n; ++i) order.push_back("c" + std::to_string(i));
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<std::string> reversed(order.rbegin(), order.rend());
        c.require(kendall_tau(order, order) == 1.0,
                  "tau(x,x) != 1 at n=" + std::to_string(n));
        c.require(kendall_tau(order, reversed) == -1.0,
                  "tau(x,rev x) != -1 at n=" + std::to_string(n));
    }

    for (int round = 0; round < 100 && c.ok; ++round) {
        int n = 2 + static_cast<int>(rng() % 15);
        std::vector<std::string> a, b;
        for (int i = 0; i < n; ++i) a.push_back("x" + std::to_string(i));
        b = a;
        std::shuffle(a.begin(), a.end(), rng);
        std::shuffle(b.begin(), b.end(), rng);
        long long concordant = 0, discordant = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                auto pos = [&](const std::string& item) {
                    return std::find(b.begin(), b.end(), item) - b.begin();
                };
                (pos(a[static_cast<std::size_t>(i)]) < pos(a[static_cast<std::size_t>(j)])
                     ? concordant
                     : discordant)++;
            }
        }
        double expected = static_cast<double>(concordant - discordant) /
                          (static_cast<double>(n) * (n - 1) / 2.0);
        c.require(std::abs(kendall_tau(a, b) - expected) <= 1e-9,
                  "tau pair-count mismatch on round " + std::to_string(round));
    }
    return c;
}

// --- criterion 5: estimator invariants ---------------------------------------

Check criterion5() {
    Check c;
    std::mt19937 rng(35001);

    CorpusIndex fuzz = build_index(random_docs(rng, 1000, 80, 50));
    for (DocId d = 0; d < fuzz.doc_count() && c.ok; ++d) {
        double focus = doc_focus(fuzz, d);
        c.require(focus > 0.0 && focus <= 1.0 + 1e-12,
                  "doc focus out of (0,1] for doc " + std::to_string(d) + ": " +
                      std::to_string(focus));
    }

    std::uniform_real_distribution<double> score_dist(-40.0, 40.0);
    std::uniform_real_distribution<double> shift_dist(-100.0, 100.0);
    std::uniform_int_distribution<int> n_dist(1, 150);
    for (int round = 0; round < 200 && c.ok; ++round) {
        RankedList list;
        int n = n_dist(rng);
        for (int i = 0; i < n; ++i) {
            list.items.push_back({static_cast<DocId>(i), "d" + std::to_string(i),
                                  score_dist(rng), i + 1});
        }
        std::vector<double> p = list_posterior(list);
        double total = 0.0;
        for (double x : p) total += x;
        c.require(std::abs(total - 1.0) <= 1e-9, "posterior sum off by more than 1e-9");

        RankedList shifted = list;
        double shift = shift_dist(rng);
        for (auto& item : shifted.items) item.score += shift;
        std::vector<double> q = list_posterior(shifted);
        for (std::size_t i = 0; i < p.size(); ++i) {
            c.require(std::abs(p[i] - q[i]) <= 1e-6 * std::max(1.0, std::abs(p[i])),
                      "posterior not shift-invariant at 1e-6");
        }
    }

    std::uniform_real_distribution<double> v_dist(-30.0, 10.0);
    for (int round = 0; round < 100 && c.ok; ++round) {
        std::vector<std::pair<std::string, double>> difficulty;
        int n = 1 + static_cast<int>(rng() % 30);
        for (int q = 0; q < n; ++q) {
            difficulty.emplace_back("q" + std::to_string(q), v_dist(rng));
        }
        QueryWeights w = query_weights(difficulty);
        c.require(w.entries.front().weight == 1.0, "first weight != 1");
        for (std::size_t i = 0; i < w.entries.size(); ++i) {
            c.require(w.entries[i].weight > 0.0, "non-positive weight");
            if (i > 0) {
                c.require(w.entries[i].weight <= w.entries[i - 1].weight,
                          "weights increase down the ranking");
            }
        }
        std::vector<std::pair<std::string, double>> shifted = difficulty;
        double shift = shift_dist(rng);
        for (auto& [qid, v] : shifted) v += shift;
        QueryWeights w2 = query_weights(shifted);
        for (std::size_t i = 0; i < w.entries.size(); ++i) {
            c.require(w.entries[i].query_id == w2.entries[i].query_id &&
                          std::abs(w.entries[i].weight - w2.entries[i].weight) <= 1e-9,
                      "query weights not shift-invariant at 1e-9");
        }
    }

    std::uniform_real_distribution<double> pos_score(0.1, 20.0);
    for (int round = 0; round < 100 && c.ok; ++round) {
        RankedList list;
        int n = 2 + static_cast<int>(rng() % 40);
        for (int i = 0; i < n; ++i) {
            list.items.push_back({static_cast<DocId>(i), "d" + std::to_string(i),
                                  pos_score(rng), i + 1});
        }
        double corpus = pos_score(rng);
        double base = nqc(list, corpus);
        for (double scale : {2.0, 0.5, 4096.0}) {
            RankedList scaled = list;
            for (auto& item : scaled.items) item.score *= scale;
            c.require(nqc(scaled, corpus * scale) == base,
                      "NQC not exactly invariant under scale " + std::to_string(scale));
        }
    }
    return c;
}

// --- criterion 6: hand-derived worked examples -------------------------------

Check criterion6() {
    Check c;
    CorpusIndex one = build_index({{"d1", "a a b"}});
    QueryExecution exec = execute_query(one, parse_config("bm25"), {"a"}, 10, "q1");
    c.require(exec.list.items.size() == 1 &&
                  std::abs(exec.list.items[0].score - 0.395563) <= 1e-6,
              "BM25 hand case missed 0.395563");
    c.require(std::abs(doc_focus(one, 0) - 0.945) <= 1e-4 &&
                  std::abs(doc_focus(one, 0) - 0.944940787421155) <= 1e-6,
              "focus hand case missed 0.9450");

    RankedList list;
    list.query_id = "q1";
    list.items.push_back({0, "d1", 3.0, 1});
    list.items.push_back({1, "d2", 2.0, 2});
    list.items.push_back({2, "d3", 1.0, 3});
    QrelSet qrels;
    qrels.grades["q1"]["d1"] = 1;
    qrels.grades["q1"]["d3"] = 1;
    c.require(std::abs(average_precision(list, qrels, "q1") - 0.833333) <= 1e-6,
              "AP hand case missed 0.833333");

    std::vector<double> w = weights_from_shifted({1.0, 2.0, 3.0});
    c.require(w.size() == 3 && std::abs(w[0] - 1.0) <= 1e-6 &&
                  std::abs(w[1] - 0.8333333333333334) <= 1e-6 && std::abs(w[2] - 0.5) <= 1e-6,
              "cumulative weight case missed [1.0, 0.8333, 0.5]");
    return c;
}

// --- criterion 7: end-to-end directional reproduction ------------------------

Check criterion7() {
    Check c;
    std::vector<double> taus;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SyntheticSpec spec;
        spec.seed = seed;
        spec.n_docs = 10000;
        spec.n_queries = 50;
        SyntheticBenchmark bench = generate_synthetic(spec);

        IndexBuilder builder{Analyzer{}};
        for (const auto& d : bench.docs) builder.add(d.id, d.text);
        CorpusIndex index = builder.finish();

        SelectionReport report = select(index, usecase1_set(), bench.topics, 100, 8,
                                        "seed" + std::to_string(seed));

        QrelSet qrels = qrels_from_tuples(bench.qrels);
        SweepResult sweep = run_sweep(index, usecase1_set(), bench.topics, 100, 8);
        std::map<std::string, double> map_by_config;
        std::vector<double> maps;
        for (std::size_t cfg = 0; cfg < sweep.configs.size(); ++cfg) {
            double m = map_score(sweep.lists[cfg], qrels, nullptr);
            map_by_config[sweep.configs[cfg].canonical_name()] = m;
            maps.push_back(m);
        }

        double chosen_map = map_by_config.at(report.chosen);
        double random_map = random_baseline_map(maps);
        double lift = map_lift(chosen_map, random_map);
        c.require(lift >= 1.0, "seed " + std::to_string(seed) + ": lift vs random " +
                                   std::to_string(lift) + " < 1.0");

        std::vector<std::string> predicted;
        for (const auto& u : report.utilities) predicted.push_back(u.config_name);
        std::vector<std::pair<std::string, double>> by_map(map_by_config.begin(),
                                                           map_by_config.end());
        std::stable_sort(by_map.begin(), by_map.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        std::vector<std::string> actual;
        for (const auto& [name, m] : by_map) actual.push_back(name);
        taus.push_back(kendall_tau(predicted, actual));
    }
    double mean_tau = 0.0;
    for (double t : taus) mean_tau += t;
    mean_tau /= static_cast<double>(taus.size());
    c.require(mean_tau > 0.3, "mean Kendall tau " + std::to_string(mean_tau) + " <= 0.3");

    // Full 106-config sweep: the DFR grid plus default BM25, timed.
    SyntheticSpec spec;
    spec.seed = 1;
    spec.n_docs = 10000;
    spec.n_queries = 50;
    SyntheticBenchmark bench = generate_synthetic(spec);
    IndexBuilder builder{Analyzer{}};
    for (const auto& d : bench.docs) builder.add(d.id, d.text);
    CorpusIndex index = builder.finish();
    std::vector<SimilarityConfig> sweep_set = enumerate_dfr_grid();
    sweep_set.push_back(parse_config("bm25"));
    auto start = std::chrono::steady_clock::now();
    SelectionReport wide = select(index, sweep_set, bench.topics, 100, 8, "usecase2");
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.require(wide.utilities.size() == 106, "106-config sweep evaluated " +
                                                std::to_string(wide.utilities.size()) + " configs");
    c.require(elapsed < 300.0, "106-config sweep took " + std::to_string(elapsed) + "s");
    return c;
}

// --- criterion 8: unsupervised guarantee -------------------------------------

const char* kInterposerSource = R"(
#define _GNU_SOURCE
#include <dlfcn.h>
#include <fcntl.h>
#include <stdarg.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>
#include <unistd.h>

static void log_path(const char* path) {
    const char* log = getenv("FS_SPY_LOG");
    if (log == NULL || path == NULL) return;
    static int (*real_open)(const char*, int, ...) = NULL;
    if (real_open == NULL) real_open = dlsym(RTLD_NEXT, "open");
    int fd = real_open(log, O_WRONLY | O_CREAT | O_APPEND, 0644);
    if (fd < 0) return;
    write(fd, path, strlen(path));
    write(fd, "\n", 1);
    close(fd);
}

FILE* fopen(const char* path, const char* mode) {
    static FILE* (*real)(const char*, const char*) = NULL;
    if (real == NULL) real = dlsym(RTLD_NEXT, "fopen");
    log_path(path);
    return real(path, mode);
}

FILE* fopen64(const char* path, const char* mode) {
    static FILE* (*real)(const char*, const char*) = NULL;
    if (real == NULL) real = dlsym(RTLD_NEXT, "fopen64");
    log_path(path);
    return real(path, mode);
}

int open(const char* path, int flags, ...) {
    static int (*real)(const char*, int, ...) = NULL;
    if (real == NULL) real = dlsym(RTLD_NEXT, "open");
    va_list ap;
    va_start(ap, flags);
    mode_t mode = va_arg(ap, mode_t);
    va_end(ap);
    log_path(path);
    return real(path, flags, mode);
}

int open64(const char* path, int flags, ...) {
    static int (*real)(const char*, int, ...) = NULL;
    if (real == NULL) real = dlsym(RTLD_NEXT, "open64");
    va_list ap;
    va_start(ap, flags);
    mode_t mode = va_arg(ap, mode_t);
    va_end(ap);
    log_path(path);
    return real(path, flags, mode);
}

int openat(int dirfd, const char* path, int flags, ...) {
    static int (*real)(int, const char*, int, ...) = NULL;
    if (real == NULL) real = dlsym(RTLD_NEXT, "openat");
    va_list ap;
    va_start(ap, flags);
    mode_t mode = va_arg(ap, mode_t);
    va_end(ap);
    log_path(path);
    return real(dirfd, path, flags, mode);
}

int openat64(int dirfd, const char* path, int flags, ...) {
    static int (*real)(int, const char*, int, ...) = NULL;
    if (real == NULL) real = dlsym(RTLD_NEXT, "openat64");
    va_list ap;
    va_start(ap, flags);
    mode_t mode = va_arg(ap, mode_t);
    va_end(ap);
    log_path(path);
    return real(dirfd, path, flags, mode);
}
)";

Check criterion8() {
    Check c;
    TempDir dir;
    CommandResult gen = run_cmd(cli() + " gen-synthetic --seed 77 --docs 300 --queries 6 --out " +
                                dir.file("bench"));
    c.require(gen.exit_code == 0, "gen-synthetic failed: " + gen.output);
    CommandResult idx = run_cmd(cli() + " index --corpus " + dir.file("bench/corpus.jsonl") +
                                " --out " + dir.file("idx"));
    c.require(idx.exit_code == 0, "index failed: " + idx.output);
    if (!c.ok) return c;

    write_file(dir.path / "fsspy.c", kInterposerSource);
    CommandResult compile = run_cmd("cc -shared -fPIC -O1 -o " + dir.file("fsspy.so") + " " +
                                    dir.file("fsspy.c") + " -ldl");
    c.require(compile.exit_code == 0, "interposer compile failed: " + compile.output);
    if (!c.ok) return c;

    // qrels.txt sits next to the topics during the spied run.
    std::string select_args = " select --index " + dir.file("idx") + " --topics " +
                              dir.file("bench/topics.tsv") + " --configs usecase1 --k 20 --out ";
    CommandResult spied = run_cmd("FS_SPY_LOG=" + dir.file("fs.log") + " LD_PRELOAD=" +
                                  dir.file("fsspy.so") + " " + cli() + select_args +
                                  dir.file("judged"));
    c.require(spied.exit_code == 0, "spied select failed: " + spied.output);
    std::string log = read_file(dir.path / "fs.log");
    c.require(log.find("topics.tsv") != std::string::npos,
              "interposer saw no file access at all; positive control failed");
    std::size_t hit = log.find("qrels");
    if (hit != std::string::npos) {
        std::size_t line_start = log.rfind('\n', hit);
        line_start = line_start == std::string::npos ? 0 : line_start + 1;
        std::size_t line_end = log.find('\n', hit);
        c.require(false, "select opened a qrels path during unsupervised selection: " +
                             log.substr(line_start, line_end - line_start));
    }

    fs::rename(dir.path / "bench" / "qrels.txt", dir.path / "hidden_judgments.txt");
    CommandResult plain = run_cmd(cli() + select_args + dir.file("unjudged"));
    c.require(plain.exit_code == 0, "select without qrels on disk failed: " + plain.output);
    std::string detail;
    c.require(same_tree(dir.path / "judged", dir.path / "unjudged", &detail),
              "outputs differ with vs without qrels on disk: " + detail);
    return c;
}

// --- criterion 9: determinism across parallelism -----------------------------

Check criterion9() {
    Check c;
    TempDir dir;
    CommandResult gen = run_cmd(cli() + " gen-synthetic --seed 13 --docs 500 --queries 10 --out " +
                                dir.file("bench"));
    c.require(gen.exit_code == 0, "gen-synthetic failed: " + gen.output);
    CommandResult idx = run_cmd(cli() + " index --corpus " + dir.file("bench/corpus.jsonl") +
                                " --out " + dir.file("idx"));
    c.require(idx.exit_code == 0, "index failed: " + idx.output);
    if (!c.ok) return c;

    std::string base = cli() + " select --index " + dir.file("idx") + " --topics " +
                       dir.file("bench/topics.tsv") + " --configs usecase1 --k 50 --out ";
    CommandResult serial = run_cmd(base + dir.file("jobs1") + " --jobs 1");
    CommandResult parallel = run_cmd(base + dir.file("jobs8") + " --jobs 8");
    c.require(serial.exit_code == 0, "select --jobs 1 failed: " + serial.output);
    c.require(parallel.exit_code == 0, "select --jobs 8 failed: " + parallel.output);
    if (!c.ok) return c;

    std::string detail;
    c.require(same_tree(dir.path / "jobs1", dir.path / "jobs8", &detail),
              "parallel outputs differ: " + detail);
    c.require(serial.output == parallel.output, "stdout differs between job counts");
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    struct Criterion {
        int id;
        const char* label;
        std::function<Check()> fn;
    };
    std::vector<Criterion> criteria{
        {1, "TREC-format adapter path runs unmodified; licensing caveat documented", criterion1},
        {2, "config space cardinalities: 105 grid configs, 6 hand-picked", criterion2},
        {3, "run_query matches the score-all brute-force oracle on 50 random corpora", criterion3},
        {4, "AP/MAP/Kendall-tau match naive mirrors; tau endpoint identities", criterion4},
        {5, "estimator invariants: focus range, posterior, weights, NQC scaling", criterion5},
        {6, "hand-derived worked examples at 1e-6", criterion6},
        {7, "directional end-to-end: lift >= 1 on 5 seeds, mean tau > 0.3, timed sweep",
         criterion7},
        {8, "selection ignores qrels on disk (filesystem interception + byte compare)",
         criterion8},
        {9, "byte-identical selection output at parallelism 1 and 8", criterion9},
    };

    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& criterion : criteria) {
        if (!only.empty() && !only.count(criterion.id)) continue;
        auto start = std::chrono::steady_clock::now();
        Check check = criterion.fn();
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %d: %s  (%.1fs)  %s\n", criterion.id,
                    check.ok ? "PASS" : "FAIL", elapsed, criterion.label);
        for (const auto& note : check.notes) std::printf("  - %s\n", note.c_str());
        std::fflush(stdout);
        if (!check.ok) ++failures;
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
