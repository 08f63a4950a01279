// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 irtune contributors

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <utility>

#include "irtune/analysis.hpp"
#include "irtune/errors.hpp"
#include "irtune/index.hpp"
#include "irtune/retrieval.hpp"
#include "irtune/selector.hpp"
#include "irtune/similarity.hpp"

namespace py = pybind11;
using namespace irtune;

namespace {

Analyzer analyzer_from(const std::optional<std::vector<std::string>>& stopwords) {
    if (stopwords) return Analyzer(*stopwords);
    return Analyzer();
}

CorpusIndex build_index_py(const std::vector<std::pair<std::string, std::string>>& docs,
                           const std::optional<std::vector<std::string>>& stopwords) {
    IndexBuilder builder(analyzer_from(stopwords));
    for (const auto& [id, text] : docs) builder.add(id, text);
    return builder.finish();
}

std::vector<std::tuple<std::string, double, std::uint32_t>> search_py(
    const CorpusIndex& index, const std::string& query, const std::string& config_spec, int k,
    const std::string& qid) {
    SimilarityConfig config = parse_config(config_spec);
    std::vector<std::string> terms = index.analyzer().analyze(query);
    if (terms.empty()) throw EmptyQueryError("query analyzes to zero terms");
    QueryExecution exec = execute_query(index, config, terms, k, qid);
    std::vector<std::tuple<std::string, double, std::uint32_t>> out;
    out.reserve(exec.list.items.size());
    for (const ScoredDoc& d : exec.list.items) out.emplace_back(d.external_id, d.score, d.rank);
    return out;
}

std::string select_py(const CorpusIndex& index,
                      const std::vector<std::pair<std::string, std::string>>& topics,
                      const std::vector<std::string>& config_specs, int k, int jobs,
                      const std::string& benchmark_id) {
    std::vector<SimilarityConfig> configs;
    configs.reserve(config_specs.size());
    for (const auto& s : config_specs) configs.push_back(parse_config(s));
    std::vector<Topic> ts;
    ts.reserve(topics.size());
    for (const auto& [qid, text] : topics) ts.push_back(Topic{qid, text});
    SelectionReport report = select(index, configs, ts, k, jobs, benchmark_id);
    return selection_report_json(report).dump(2);
}

}  // namespace

PYBIND11_MODULE(_irtune_core, m) {
    m.doc() = "label-free similarity configuration selection core";

    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<ConfigParseError>(m, "ConfigParseError", PyExc_ValueError);
    py::register_exception<EmptyQueryError>(m, "EmptyQueryError", PyExc_ValueError);
    py::register_exception<BenchmarkError>(m, "BenchmarkError", PyExc_RuntimeError);

    py::class_<CorpusIndex>(m, "Index")
        .def_property_readonly("doc_count", &CorpusIndex::doc_count)
        .def_property_readonly("vocab_size", &CorpusIndex::vocab_size)
        .def_property_readonly("total_terms", &CorpusIndex::total_terms)
        .def_property_readonly("avg_doc_length", &CorpusIndex::avg_doc_length)
        .def("idf", &CorpusIndex::idf_for, py::arg("term"))
        .def("save", [](const CorpusIndex& i, const std::string& path) { i.save(path); },
             py::arg("path"))
        .def_static("load",
                    [](const std::string& path) { return CorpusIndex::load(path); },
                    py::arg("path"));

    m.def("analyze",
          [](const std::string& text, const std::optional<std::vector<std::string>>& stopwords) {
              return analyzer_from(stopwords).analyze(text);
          },
          py::arg("text"), py::arg("stopwords") = py::none(),
          "tokenize, drop stopwords and stem");

    m.def("build_index", &build_index_py, py::arg("docs"), py::arg("stopwords") = py::none(),
          "build an in-memory index from (doc_id, text) pairs");

    m.def("canonical_name",
          [](const std::string& spec) { return parse_config(spec).canonical_name(); },
          py::arg("spec"), "parse a config spec and return its canonical name");

    m.def("usecase1_names", [] {
        std::vector<std::string> names;
        for (const auto& c : usecase1_set()) names.push_back(c.canonical_name());
        return names;
    });

    m.def("dfr_grid_names", [] {
        std::vector<std::string> names;
        for (const auto& c : enumerate_dfr_grid()) names.push_back(c.canonical_name());
        return names;
    });

    m.def("search", &search_py, py::arg("index"), py::arg("query"),
          py::arg("config") = "bm25", py::arg("k") = 100, py::arg("qid") = "q1",
          "score one query and return (doc_id, score, rank) tuples");

    m.def("select", &select_py, py::arg("index"), py::arg("topics"), py::arg("configs"),
          py::arg("k") = 100, py::arg("jobs") = 1, py::arg("benchmark_id") = "benchmark",
          "run label-free selection; returns the report as a JSON string");
}
