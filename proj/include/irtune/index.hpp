// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 irtune contributors

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "irtune/analysis.hpp"

namespace irtune {

using TermId = std::uint32_t;
using DocId = std::uint32_t;

struct Posting {
    DocId doc;
    std::uint32_t tf;
};

struct DocumentRecord {
    std::string external_id;
    DocId internal_id = 0;
    // sorted by term id; empty for documents whose analyzed text is empty
    std::vector<std::pair<TermId, std::uint32_t>> term_freqs;
    std::uint64_t length = 0;
};

// Immutable after build; safe for concurrent readers.
class CorpusIndex {
public:
    std::size_t doc_count() const { return docs_.size(); }
    std::uint64_t total_terms() const { return total_terms_; }
    double avg_doc_length() const { return avg_doc_length_; }
    std::size_t vocab_size() const { return vocab_.size(); }

    const std::string& term(TermId t) const { return vocab_[t]; }
    std::optional<TermId> term_id(std::string_view term) const;
    const std::vector<Posting>& postings(TermId t) const { return postings_[t]; }
    std::uint64_t df(TermId t) const { return postings_[t].size(); }
    std::uint64_t ctf(TermId t) const { return ctf_[t]; }
    const DocumentRecord& doc(DocId d) const { return docs_[d]; }
    const std::vector<DocumentRecord>& docs() const { return docs_; }
    const Analyzer& analyzer() const { return analyzer_; }

    // ln(1 + (N - df + 0.5) / (df + 0.5)); unseen terms use df = 0
    double idf_from_df(double df) const;
    double idf(TermId t) const { return idf_from_df(static_cast<double>(df(t))); }
    double idf_for(std::string_view term) const;

    // Maximum-likelihood p(w|d); empty for zero-length documents.
    std::vector<std::pair<TermId, double>> doc_language_model(DocId d) const;

    std::uint32_t tf_in_doc(TermId t, DocId d) const;

    void save(const std::filesystem::path& path) const;
    static CorpusIndex load(const std::filesystem::path& path);

private:
    friend class IndexBuilder;

    Analyzer analyzer_;
    std::vector<std::string> vocab_;  // lexicographically sorted
    std::unordered_map<std::string, TermId> term_ids_;
    std::vector<std::vector<Posting>> postings_;
    std::vector<std::uint64_t> ctf_;
    std::vector<DocumentRecord> docs_;
    std::uint64_t total_terms_ = 0;
    double avg_doc_length_ = 0.0;

    void finalize_derived();
};

class IndexBuilder {
public:
    IndexBuilder() = default;
    explicit IndexBuilder(Analyzer analyzer) : analyzer_(std::move(analyzer)) {}

    void add(std::string external_id, std::string_view text);
    CorpusIndex finish();

private:
    Analyzer analyzer_;
    std::vector<std::pair<std::string, std::unordered_map<std::string, std::uint32_t>>> pending_;
    std::unordered_map<std::string, std::size_t> seen_ids_;
};

}  // namespace irtune
