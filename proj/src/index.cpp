// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 irtune contributors

#include "irtune/index.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "irtune/errors.hpp"

namespace irtune {
namespace {

constexpr char kMagic[4] = {'I', 'R', 'T', 'X'};
constexpr std::uint32_t kFormatVersion = 1;

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_string(std::string& out, std::string_view s) {
    put_u32(out, static_cast<std::uint32_t>(s.size()));
    out.append(s);
}

class Reader {
public:
    explicit Reader(std::string data) : data_(std::move(data)) {}

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
        pos_ += 4;
        return v;
    }

    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
        pos_ += 8;
        return v;
    }

    std::string str() {
        std::uint32_t len = u32();
        need(len);
        std::string s = data_.substr(pos_, len);
        pos_ += len;
        return s;
    }

    void raw(char* dst, std::size_t n) {
        need(n);
        std::memcpy(dst, data_.data() + pos_, n);
        pos_ += n;
    }

    bool exhausted() const { return pos_ == data_.size(); }

private:
    std::string data_;
    std::size_t pos_ = 0;

    void need(std::size_t n) {
        if (data_.size() - pos_ < n) throw FormatError("index file truncated");
    }
};

}  // namespace

std::optional<TermId> CorpusIndex::term_id(std::string_view term) const {
    auto it = term_ids_.find(std::string(term));
    if (it == term_ids_.end()) return std::nullopt;
    return it->second;
}

double CorpusIndex::idf_from_df(double df) const {
    double n = static_cast<double>(doc_count());
    return std::log(1.0 + (n - df + 0.5) / (df + 0.5));
}

double CorpusIndex::idf_for(std::string_view term) const {
    auto id = term_id(term);
    return idf_from_df(id ? static_cast<double>(df(*id)) : 0.0);
}

std::vector<std::pair<TermId, double>> CorpusIndex::doc_language_model(DocId d) const {
    const DocumentRecord& rec = docs_[d];
    std::vector<std::pair<TermId, double>> model;
    if (rec.length == 0) return model;
    model.reserve(rec.term_freqs.size());
    double len = static_cast<double>(rec.length);
    for (const auto& [t, tf] : rec.term_freqs) model.emplace_back(t, static_cast<double>(tf) / len);
    return model;
}

std::uint32_t CorpusIndex::tf_in_doc(TermId t, DocId d) const {
    const auto& tf = docs_[d].term_freqs;
    auto it = std::lower_bound(tf.begin(), tf.end(), t,
                               [](const auto& p, TermId id) { return p.first < id; });
    if (it == tf.end() || it->first != t) return 0;
    return it->second;
}

void CorpusIndex::finalize_derived() {
    total_terms_ = 0;
    for (const auto& d : docs_) total_terms_ += d.length;
    avg_doc_length_ = docs_.empty() ? 0.0
                                    : static_cast<double>(total_terms_) /
                                          static_cast<double>(docs_.size());
    term_ids_.clear();
    term_ids_.reserve(vocab_.size());
    for (TermId t = 0; t < vocab_.size(); ++t) term_ids_.emplace(vocab_[t], t);
    postings_.assign(vocab_.size(), {});
    ctf_.assign(vocab_.size(), 0);
    for (const auto& d : docs_) {
        for (const auto& [t, tf] : d.term_freqs) {
            postings_[t].push_back(Posting{d.internal_id, tf});
            ctf_[t] += tf;
        }
    }
}

void CorpusIndex::save(const std::filesystem::path& path) const {
    std::string out;
    out.append(kMagic, sizeof(kMagic));
    put_u32(out, kFormatVersion);
    const auto& stopwords = analyzer_.stopwords();
    put_u32(out, static_cast<std::uint32_t>(stopwords.size()));
    for (const auto& w : stopwords) put_string(out, w);
    put_u32(out, static_cast<std::uint32_t>(vocab_.size()));
    for (const auto& t : vocab_) put_string(out, t);
    put_u64(out, static_cast<std::uint64_t>(docs_.size()));
    for (const auto& d : docs_) {
        put_string(out, d.external_id);
        put_u32(out, static_cast<std::uint32_t>(d.term_freqs.size()));
        for (const auto& [t, tf] : d.term_freqs) {
            put_u32(out, t);
            put_u32(out, tf);
        }
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw FormatError("cannot open index file for writing: " + path.string());
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw FormatError("failed writing index file: " + path.string());
}

CorpusIndex CorpusIndex::load(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot open index file: " + path.string());
    std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    Reader r(std::move(data));
    char magic[4];
    r.raw(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0) throw FormatError("not an index file: bad magic");
    std::uint32_t version = r.u32();
    if (version != kFormatVersion) {
        throw FormatError("unsupported index format version " + std::to_string(version));
    }
    std::uint32_t n_stop = r.u32();
    std::vector<std::string> stopwords;
    stopwords.reserve(n_stop);
    for (std::uint32_t i = 0; i < n_stop; ++i) stopwords.push_back(r.str());

    CorpusIndex index;
    index.analyzer_ = Analyzer(std::move(stopwords));
    std::uint32_t n_vocab = r.u32();
    index.vocab_.reserve(n_vocab);
    for (std::uint32_t i = 0; i < n_vocab; ++i) index.vocab_.push_back(r.str());
    std::uint64_t n_docs = r.u64();
    index.docs_.reserve(n_docs);
    for (std::uint64_t i = 0; i < n_docs; ++i) {
        DocumentRecord rec;
        rec.external_id = r.str();
        rec.internal_id = static_cast<DocId>(i);
        std::uint32_t n_terms = r.u32();
        rec.term_freqs.reserve(n_terms);
        for (std::uint32_t j = 0; j < n_terms; ++j) {
            TermId t = r.u32();
            std::uint32_t tf = r.u32();
            if (t >= n_vocab) throw FormatError("index file corrupt: term id out of range");
            rec.term_freqs.emplace_back(t, tf);
            rec.length += tf;
        }
        index.docs_.push_back(std::move(rec));
    }
    if (!r.exhausted()) throw FormatError("index file has trailing bytes");
    index.finalize_derived();
    return index;
}

void IndexBuilder::add(std::string external_id, std::string_view text) {
    auto [it, inserted] = seen_ids_.emplace(external_id, pending_.size());
    if (!inserted) throw FormatError("duplicate document id: " + external_id);
    std::unordered_map<std::string, std::uint32_t> counts;
    for (auto& term : analyzer_.analyze(text)) ++counts[std::move(term)];
    pending_.emplace_back(std::move(external_id), std::move(counts));
}

CorpusIndex IndexBuilder::finish() {
    CorpusIndex index;
    index.analyzer_ = analyzer_;

    std::vector<std::string> vocab;
    {
        std::unordered_map<std::string, TermId> seen;
        for (const auto& [id, counts] : pending_) {
            for (const auto& [term, tf] : counts) {
                if (seen.emplace(term, 0).second) vocab.push_back(term);
            }
        }
    }
    std::sort(vocab.begin(), vocab.end());
    index.vocab_ = std::move(vocab);
    std::unordered_map<std::string, TermId> ids;
    ids.reserve(index.vocab_.size());
    for (TermId t = 0; t < index.vocab_.size(); ++t) ids.emplace(index.vocab_[t], t);

    index.docs_.reserve(pending_.size());
    for (auto& [id, counts] : pending_) {
        DocumentRecord rec;
        rec.external_id = std::move(id);
        rec.internal_id = static_cast<DocId>(index.docs_.size());
        rec.term_freqs.reserve(counts.size());
        for (auto& [term, tf] : counts) {
            rec.term_freqs.emplace_back(ids.at(term), tf);
            rec.length += tf;
        }
        std::sort(rec.term_freqs.begin(), rec.term_freqs.end());
        index.docs_.push_back(std::move(rec));
    }
    pending_.clear();
    seen_ids_.clear();
    index.finalize_derived();
    return index;
}

}  // namespace irtune
