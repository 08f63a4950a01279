// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 irtune contributors

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace irtune {

struct RawDocument {
    std::string id;
    std::string text;
};

struct Topic {
    std::string qid;
    std::string text;
};

// One JSON object per line with fields "id" and "text".
std::vector<RawDocument> read_jsonl_corpus(const std::filesystem::path& path);

// TREC SGML: <DOC> blocks, id from <DOCNO>, body is remaining tag-stripped text.
std::vector<RawDocument> read_trec_corpus(const std::filesystem::path& path);

// TSV lines: qid<TAB>query text.
std::vector<Topic> read_topics_tsv(const std::filesystem::path& path);

// Plain text, one word per line; '#' comments and blank lines skipped.
std::vector<std::string> read_stopword_file(const std::filesystem::path& path);

}  // namespace irtune
