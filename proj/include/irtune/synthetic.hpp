// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 irtune contributors

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <tuple>
#include <vector>

#include "irtune/corpus_io.hpp"

namespace irtune {

struct SyntheticSpec {
    std::uint64_t seed = 1;
    int n_docs = 10000;
    int n_queries = 50;
};

struct SyntheticBenchmark {
    std::vector<RawDocument> docs;
    std::vector<Topic> topics;
    std::vector<std::tuple<std::string, std::string, int>> qrels;  // qid, docid, grade
};

// Seeded benchmark with planted relevance: each query owns a topical term
// pool; its relevant docs oversample that pool at varying density and length,
// distractor docs carry a token or two of it, the rest is Zipf background.
// Identical spec -> identical benchmark.
SyntheticBenchmark generate_synthetic(const SyntheticSpec& spec);

// corpus.jsonl, topics.tsv, qrels.txt under dir (created if absent).
void write_synthetic(const SyntheticBenchmark& bench, const std::filesystem::path& dir);

// The same corpus in TREC SGML form, for exercising the adapter path.
void write_trec_sgml(const std::vector<RawDocument>& docs, const std::filesystem::path& path);

}  // namespace irtune
