// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 irtune contributors

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "irtune/corpus_io.hpp"
#include "irtune/errors.hpp"
#include "irtune/eval.hpp"
#include "irtune/index.hpp"
#include "irtune/qpp.hpp"
#include "irtune/retrieval.hpp"
#include "irtune/selector.hpp"
#include "irtune/similarity.hpp"
#include "irtune/synthetic.hpp"

namespace fs = std::filesystem;
using namespace irtune;

namespace {

std::vector<SimilarityConfig> resolve_configs(const std::vector<std::string>& specs) {
    std::vector<SimilarityConfig> out;
    for (const std::string& spec : specs) {
        if (spec == "usecase1") {
            auto set = usecase1_set();
            out.insert(out.end(), set.begin(), set.end());
        } else if (spec == "dfr-grid") {
            auto grid = enumerate_dfr_grid();
            out.insert(out.end(), grid.begin(), grid.end());
        } else if (!spec.empty() && spec[0] == '@') {
            std::ifstream f(spec.substr(1));
            if (!f) throw FormatError("cannot open config list file: " + spec.substr(1));
            std::string line;
            while (std::getline(f, line)) {
                std::size_t b = line.find_first_not_of(" \t\r");
                if (b == std::string::npos || line[b] == '#') continue;
                std::size_t e = line.find_last_not_of(" \t\r");
                out.push_back(parse_config(line.substr(b, e - b + 1)));
            }
        } else {
            out.push_back(parse_config(spec));
        }
    }
    return out;
}

Analyzer make_analyzer(const std::string& stopword_path) {
    if (stopword_path.empty()) return Analyzer();
    return Analyzer(read_stopword_file(stopword_path));
}

std::string sanitize_config_name(const std::string& name) {
    std::string out = name;
    for (char& c : out) {
        if (c == ':' || c == ',' || c == ';' || c == '=') c = '_';
    }
    return out;
}

std::string run_file_name(std::size_t idx, const std::string& config_name) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%03zu_", idx);
    return std::string(buf) + sanitize_config_name(config_name) + ".run";
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw FormatError("cannot write file: " + path.string());
    f << content;
}

void write_qpp_tsvs(const fs::path& dir, const SweepResult& sweep, const QueryWeights& weights) {
    std::string lik = "query\tconfig\tlikelihood\tdegenerate\n";
    for (std::size_t c = 0; c < sweep.configs.size(); ++c) {
        for (std::size_t q = 0; q < sweep.query_ids.size(); ++q) {
            const QueryLikelihood& l = sweep.likelihoods[c][q];
            lik += l.query_id;
            lik += '\t';
            lik += l.config_name;
            lik += '\t';
            lik += format_double(l.value);
            lik += '\t';
            lik += l.degenerate ? '1' : '0';
            lik += '\n';
        }
    }
    write_text_file(dir / "likelihoods.tsv", lik);

    std::string w = "query\tdifficulty\tweight\trank\n";
    for (const auto& e : weights.entries) {
        w += e.query_id;
        w += '\t';
        w += format_double(e.difficulty);
        w += '\t';
        w += format_double(e.weight);
        w += '\t';
        w += std::to_string(e.rank);
        w += '\n';
    }
    write_text_file(dir / "weights.tsv", w);
}

struct IndexArgs {
    std::string corpus;
    std::string format = "jsonl";
    std::string out;
    std::string stopwords;
};

int run_index_cmd(const IndexArgs& args) {
    std::vector<RawDocument> docs = args.format == "trec" ? read_trec_corpus(args.corpus)
                                                          : read_jsonl_corpus(args.corpus);
    IndexBuilder builder(make_analyzer(args.stopwords));
    for (auto& d : docs) builder.add(std::move(d.id), d.text);
    CorpusIndex index = builder.finish();
    index.save(args.out);
    std::cout << "N=" << index.doc_count() << " vocab=" << index.vocab_size()
              << " avg_doc_length=" << format_double(index.avg_doc_length()) << "\n";
    return 0;
}

struct SearchArgs {
    std::string index_path;
    std::string query;
    std::string config = "bm25";
    std::string qid = "q1";
    int k = 100;
};

int run_search_cmd(const SearchArgs& args) {
    CorpusIndex index = CorpusIndex::load(args.index_path);
    SimilarityConfig config = parse_config(args.config);
    std::vector<std::string> terms = index.analyzer().analyze(args.query);
    if (terms.empty()) throw EmptyQueryError("query analyzes to zero terms");
    QueryExecution exec = execute_query(index, config, terms, args.k, args.qid);
    write_trec_run(std::cout, exec.list);
    return 0;
}

struct ConfigsListArgs {
    std::string grid;
    bool usecase1 = false;
};

int run_configs_list_cmd(const ConfigsListArgs& args) {
    if (!args.grid.empty() && args.grid != "dfr") {
        throw ConfigParseError("unknown grid: '" + args.grid + "' (only 'dfr' exists)");
    }
    bool both = args.grid.empty() && !args.usecase1;
    bool print_usecase1 = args.usecase1 || both;
    bool print_grid = !args.grid.empty() || both;
    if (print_usecase1) {
        for (const auto& c : usecase1_set()) std::cout << c.canonical_name() << "\n";
    }
    if (print_grid) {
        for (const auto& c : enumerate_dfr_grid()) std::cout << c.canonical_name() << "\n";
    }
    return 0;
}

struct SelectArgs {
    std::string index_path;
    std::string topics_path;
    std::string out_dir;
    std::vector<std::string> configs;
    int k = 100;
    int jobs = 1;
};

int run_select_cmd(const SelectArgs& args) {
    std::vector<std::string> specs = args.configs.empty()
                                         ? std::vector<std::string>{"usecase1"}
                                         : args.configs;
    std::vector<SimilarityConfig> configs = resolve_configs(specs);
    if (configs.size() < 2) throw BenchmarkError("selection needs at least 2 configurations");
    CorpusIndex index = CorpusIndex::load(args.index_path);
    std::vector<Topic> topics = read_topics_tsv(args.topics_path);

    SweepResult sweep = run_sweep(index, configs, topics, args.k, args.jobs);
    SelectionReport report = select_from_sweep(sweep, args.topics_path);

    fs::create_directories(fs::path(args.out_dir) / "runs");
    nlohmann::ordered_json j = selection_report_json(report);
    j["manifest"] = {{"index", args.index_path},
                     {"topics", args.topics_path},
                     {"configs", specs},
                     {"k", args.k}};
    nlohmann::ordered_json run_files = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < configs.size(); ++c) {
        std::string file = run_file_name(c, configs[c].canonical_name());
        std::ofstream f(fs::path(args.out_dir) / "runs" / file,
                        std::ios::binary | std::ios::trunc);
        if (!f) throw FormatError("cannot write run file: " + file);
        for (const RankedList& list : sweep.lists[c]) write_trec_run(f, list);
        run_files.push_back({{"config", configs[c].canonical_name()},
                             {"file", std::string("runs/") + file}});
    }
    j["run_files"] = std::move(run_files);
    write_text_file(fs::path(args.out_dir) / "report.json", j.dump(2) + "\n");
    write_text_file(fs::path(args.out_dir) / "report.txt", selection_report_text(report));
    write_qpp_tsvs(args.out_dir, sweep, report.weights);
    std::cout << "chosen: " << report.chosen << "\n";
    return 0;
}

struct EvalArgs {
    std::string run_dir;
    std::string qrels_path;
    std::string out_dir;
};

int run_eval_cmd(const EvalArgs& args) {
    fs::path run_dir(args.run_dir);
    fs::path out_dir(args.out_dir.empty() ? args.run_dir : args.out_dir);
    std::ifstream rf(run_dir / "report.json");
    if (!rf) throw FormatError("cannot open selection report: " +
                               (run_dir / "report.json").string());
    nlohmann::json report_json;
    try {
        report_json = nlohmann::json::parse(rf);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("invalid selection report JSON: " + std::string(e.what()));
    }

    std::vector<std::string> warnings;
    QrelSet qrels = parse_qrels(args.qrels_path, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

    std::vector<std::string> kept = report_json.at("queries").at("kept")
                                        .get<std::vector<std::string>>();
    std::vector<std::string> skipped = report_json.at("queries").at("skipped")
                                           .get<std::vector<std::string>>();

    // Query sets must line up: every kept query judged, every judged query
    // either kept or skipped.
    {
        std::vector<std::string> missing_judgments;
        for (const auto& q : kept) {
            if (!qrels.grades.count(q)) missing_judgments.push_back(q);
        }
        std::vector<std::string> unjudgeable;
        for (const auto& [q, docs] : qrels.grades) {
            bool in_kept = std::find(kept.begin(), kept.end(), q) != kept.end();
            bool in_skipped = std::find(skipped.begin(), skipped.end(), q) != skipped.end();
            if (!in_kept && !in_skipped) unjudgeable.push_back(q);
        }
        if (!missing_judgments.empty() || !unjudgeable.empty()) {
            std::string msg = "query sets differ between runs and qrels;";
            for (const auto& q : missing_judgments) msg += " run query '" + q + "' unjudged";
            for (const auto& q : unjudgeable) msg += " judged query '" + q + "' missing from runs";
            throw BenchmarkError(msg);
        }
    }

    // Predicted ordering = report's configs array (utility-descending).
    std::vector<std::string> predicted;
    for (const auto& c : report_json.at("configs")) {
        predicted.push_back(c.at("name").get<std::string>());
    }
    std::map<std::string, std::string> run_file_of;
    for (const auto& rfj : report_json.at("run_files")) {
        auto name = rfj.at("config").get<std::string>();
        if (!run_file_of.emplace(name, rfj.at("file").get<std::string>()).second) {
            throw BenchmarkError("duplicate configuration name in report: " + name);
        }
    }

    EvalReport eval;
    eval.benchmark_id = report_json.at("benchmark").get<std::string>();
    eval.chosen = report_json.at("chosen").get<std::string>();

    std::size_t excluded_max = 0;
    std::vector<double> maps;
    for (const auto& name : predicted) {
        auto it = run_file_of.find(name);
        if (it == run_file_of.end()) throw FormatError("report lists no run file for " + name);
        std::vector<RankedList> lists = read_trec_run(run_dir / it->second);
        // Degenerate (no-match) queries produce no run lines; evaluate them
        // as empty lists.
        for (const auto& q : kept) {
            bool present = false;
            for (const auto& l : lists) {
                if (l.query_id == q) {
                    present = true;
                    break;
                }
            }
            if (!present) {
                RankedList empty;
                empty.query_id = q;
                empty.config_name = name;
                lists.push_back(std::move(empty));
            }
        }
        std::size_t excluded = 0;
        double m = map_score(lists, qrels, &excluded);
        excluded_max = std::max(excluded_max, excluded);
        maps.push_back(m);
        eval.per_config_map.emplace_back(name, m);
    }
    eval.excluded_queries = excluded_max;

    std::vector<std::pair<std::string, double>> by_map = eval.per_config_map;
    std::sort(by_map.begin(), by_map.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<std::string> actual;
    for (const auto& [name, m] : by_map) actual.push_back(name);

    eval.optimal = by_map.front().first;
    eval.optimal_map = by_map.front().second;
    for (const auto& [name, m] : eval.per_config_map) {
        if (name == eval.chosen) eval.chosen_map = m;
    }
    eval.random_map = random_baseline_map(maps);
    eval.lift_vs_optimal = map_lift(eval.chosen_map, eval.optimal_map);
    eval.lift_vs_random = map_lift(eval.chosen_map, eval.random_map);
    eval.kendall = kendall_tau(predicted, actual);

    fs::create_directories(out_dir);
    write_text_file(out_dir / "eval_report.json", eval_report_json(eval).dump(2) + "\n");
    std::string tsv = eval_report_tsv(eval);
    write_text_file(out_dir / "eval_report.tsv", tsv);
    std::cout << tsv;
    return 0;
}

struct GenArgs {
    std::uint64_t seed = 1;
    int docs = 10000;
    int queries = 50;
    std::string out_dir;
};

int run_gen_cmd(const GenArgs& args) {
    SyntheticSpec spec;
    spec.seed = args.seed;
    spec.n_docs = args.docs;
    spec.n_queries = args.queries;
    SyntheticBenchmark bench = generate_synthetic(spec);
    write_synthetic(bench, args.out_dir);
    std::cout << "docs=" << bench.docs.size() << " queries=" << bench.topics.size()
              << " judgments=" << bench.qrels.size() << "\n";
    return 0;
}

struct QppDumpArgs {
    std::string index_path;
    std::string topics_path;
    std::string out_dir;
    std::vector<std::string> configs;
    int k = 100;
    int jobs = 1;
};

int run_qpp_dump_cmd(const QppDumpArgs& args) {
    std::vector<std::string> specs = args.configs.empty()
                                         ? std::vector<std::string>{"usecase1"}
                                         : args.configs;
    std::vector<SimilarityConfig> configs = resolve_configs(specs);
    if (configs.empty()) throw BenchmarkError("no configurations given");
    CorpusIndex index = CorpusIndex::load(args.index_path);
    std::vector<Topic> topics = read_topics_tsv(args.topics_path);
    SweepResult sweep = run_sweep(index, configs, topics, args.k, args.jobs);

    std::size_t n_queries = sweep.query_ids.size();
    std::vector<std::vector<double>> nqc_per_query(n_queries,
                                                   std::vector<double>(configs.size()));
    for (std::size_t c = 0; c < configs.size(); ++c) {
        for (std::size_t q = 0; q < n_queries; ++q) nqc_per_query[q][c] = sweep.nqcs[c][q];
    }
    QueryWeights weights = query_weights(difficulty_scores(sweep.query_ids, nqc_per_query));
    fs::create_directories(args.out_dir);
    write_qpp_tsvs(args.out_dir, sweep, weights);
    std::cout << "wrote " << (fs::path(args.out_dir) / "likelihoods.tsv").string() << " and "
              << (fs::path(args.out_dir) / "weights.tsv").string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"similarity configuration search: index, sweep, label-free selection, evaluation"};
    app.require_subcommand(1);

    IndexArgs index_args;
    auto* cmd_index = app.add_subcommand("index", "build and persist a corpus index");
    cmd_index->add_option("--corpus", index_args.corpus, "corpus file")->required();
    cmd_index->add_option("--format", index_args.format, "corpus format")
        ->check(CLI::IsMember({"jsonl", "trec"}));
    cmd_index->add_option("--out", index_args.out, "index output path")->required();
    cmd_index->add_option("--stopwords", index_args.stopwords,
                          "stopword file (one word per line)");

    SearchArgs search_args;
    auto* cmd_search = app.add_subcommand("search", "run one query (debug)");
    cmd_search->add_option("--index", search_args.index_path, "index path")->required();
    cmd_search->add_option("--query", search_args.query, "query text")->required();
    cmd_search->add_option("--config", search_args.config, "similarity config spec");
    cmd_search->add_option("--qid", search_args.qid, "query id for the output");
    cmd_search->add_option("--k", search_args.k, "result depth");

    ConfigsListArgs configs_args;
    auto* cmd_configs = app.add_subcommand("configs", "configuration space helpers");
    cmd_configs->require_subcommand(1);
    auto* cmd_configs_list = cmd_configs->add_subcommand("list", "print canonical config names");
    cmd_configs_list->add_option("--grid", configs_args.grid, "print a named grid (dfr)");
    cmd_configs_list->add_flag("--usecase1", configs_args.usecase1,
                               "print the six-config default set");

    SelectArgs select_args;
    auto* cmd_select = app.add_subcommand("select",
                                          "sweep configurations and pick one without labels");
    cmd_select->add_option("--index", select_args.index_path, "index path")->required();
    cmd_select->add_option("--topics", select_args.topics_path, "topics TSV")->required();
    cmd_select->add_option("--out", select_args.out_dir, "output directory")->required();
    cmd_select->add_option("--configs", select_args.configs,
                           "config spec, 'usecase1', 'dfr-grid' or @file (repeatable)");
    cmd_select->add_option("--k", select_args.k, "result depth");
    cmd_select->add_option("--jobs", select_args.jobs, "worker threads");

    EvalArgs eval_args;
    auto* cmd_eval = app.add_subcommand("eval", "labeled post-analysis of a select run");
    cmd_eval->add_option("--runs", eval_args.run_dir, "select output directory")->required();
    cmd_eval->add_option("--qrels", eval_args.qrels_path, "TREC qrels file")->required();
    cmd_eval->add_option("--out", eval_args.out_dir, "report directory (default: run dir)");

    GenArgs gen_args;
    auto* cmd_gen = app.add_subcommand("gen-synthetic",
                                       "write a seeded benchmark with planted relevance");
    cmd_gen->add_option("--seed", gen_args.seed, "generator seed");
    cmd_gen->add_option("--docs", gen_args.docs, "document count");
    cmd_gen->add_option("--queries", gen_args.queries, "query count");
    cmd_gen->add_option("--out", gen_args.out_dir, "output directory")->required();

    QppDumpArgs qpp_args;
    auto* cmd_qpp = app.add_subcommand("qpp", "query performance prediction helpers");
    cmd_qpp->require_subcommand(1);
    auto* cmd_qpp_dump = cmd_qpp->add_subcommand("dump",
                                                 "write likelihood and weight tables as TSV");
    cmd_qpp_dump->add_option("--index", qpp_args.index_path, "index path")->required();
    cmd_qpp_dump->add_option("--topics", qpp_args.topics_path, "topics TSV")->required();
    cmd_qpp_dump->add_option("--out", qpp_args.out_dir, "output directory")->required();
    cmd_qpp_dump->add_option("--configs", qpp_args.configs, "config specs (repeatable)");
    cmd_qpp_dump->add_option("--k", qpp_args.k, "result depth");
    cmd_qpp_dump->add_option("--jobs", qpp_args.jobs, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (cmd_index->parsed()) return run_index_cmd(index_args);
        if (cmd_search->parsed()) return run_search_cmd(search_args);
        if (cmd_configs->parsed() && cmd_configs_list->parsed()) {
            return run_configs_list_cmd(configs_args);
        }
        if (cmd_select->parsed()) return run_select_cmd(select_args);
        if (cmd_eval->parsed()) return run_eval_cmd(eval_args);
        if (cmd_gen->parsed()) return run_gen_cmd(gen_args);
        if (cmd_qpp->parsed() && cmd_qpp_dump->parsed()) return run_qpp_dump_cmd(qpp_args);
    } catch (const BenchmarkError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
