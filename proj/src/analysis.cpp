// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 irtune contributors

#include "irtune/analysis.hpp"

#include <cctype>

#include "irtune/porter.hpp"

namespace irtune {

std::vector<std::string> default_stopwords() {
    return {"a",    "an",   "and",  "are",   "as",   "at",   "be",    "but",  "by",
            "for",  "if",   "in",   "into",  "is",   "it",   "no",    "not",  "of",
            "on",   "or",   "such", "that",  "the",  "their", "then", "there", "these",
            "they", "this", "to",   "was",   "will", "with"};
}

Analyzer::Analyzer() : Analyzer(default_stopwords()) {}

Analyzer::Analyzer(std::vector<std::string> stopwords) : stopword_list_(std::move(stopwords)) {
    stopword_set_.insert(stopword_list_.begin(), stopword_list_.end());
}

std::vector<std::string> Analyzer::analyze(std::string_view text) const {
    std::vector<std::string> terms;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        if (stopword_set_.find(token) == stopword_set_.end()) {
            std::string stem = porter_stem(token);
            if (!stem.empty()) terms.push_back(std::move(stem));
        }
        token.clear();
    };
    for (char c : text) {
        unsigned char u = static_cast<unsigned char>(c);
        if (std::isalnum(u) && u < 0x80) {
            token.push_back(static_cast<char>(std::tolower(u)));
        } else {
            flush();
        }
    }
    flush();
    return terms;
}

}  // namespace irtune
