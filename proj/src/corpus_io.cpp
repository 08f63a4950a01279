// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 irtune contributors

#include "irtune/corpus_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "json.hpp"

#include "irtune/errors.hpp"

namespace irtune {
namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot open file: " + path.string());
    return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

// Case-insensitive search for an SGML tag like </DOC>; returns npos if absent.
std::size_t find_tag(std::string_view text, std::string_view tag, std::size_t from) {
    for (std::size_t i = from; i + tag.size() <= text.size(); ++i) {
        bool hit = true;
        for (std::size_t j = 0; j < tag.size(); ++j) {
            if (std::toupper(static_cast<unsigned char>(text[i + j])) !=
                std::toupper(static_cast<unsigned char>(tag[j]))) {
                hit = false;
                break;
            }
        }
        if (hit) return i;
    }
    return std::string_view::npos;
}

std::string strip_tags(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool in_tag = false;
    for (char c : s) {
        if (c == '<') {
            in_tag = true;
            out.push_back(' ');
        } else if (c == '>') {
            in_tag = false;
        } else if (!in_tag) {
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace

std::vector<RawDocument> read_jsonl_corpus(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw FormatError("cannot open corpus file: " + path.string());
    std::vector<RawDocument> docs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw FormatError(path.string() + ":" + std::to_string(lineno) +
                              ": invalid JSON: " + e.what());
        }
        if (!obj.is_object() || !obj.contains("id") || !obj.contains("text")) {
            throw FormatError(path.string() + ":" + std::to_string(lineno) +
                              ": expected object with \"id\" and \"text\"");
        }
        RawDocument doc;
        doc.id = obj["id"].is_string() ? obj["id"].get<std::string>() : obj["id"].dump();
        if (!obj["text"].is_string()) {
            throw FormatError(path.string() + ":" + std::to_string(lineno) +
                              ": \"text\" must be a string");
        }
        doc.text = obj["text"].get<std::string>();
        docs.push_back(std::move(doc));
    }
    return docs;
}

std::vector<RawDocument> read_trec_corpus(const std::filesystem::path& path) {
    std::string data = read_file(path);
    std::vector<RawDocument> docs;
    std::size_t pos = 0;
    while (true) {
        std::size_t open = find_tag(data, "<DOC>", pos);
        if (open == std::string::npos) break;
        std::size_t close = find_tag(data, "</DOC>", open);
        if (close == std::string::npos) {
            throw FormatError(path.string() + ": <DOC> without matching </DOC>");
        }
        std::string_view block(data.data() + open + 5, close - open - 5);
        std::size_t no_open = find_tag(block, "<DOCNO>", 0);
        std::size_t no_close = find_tag(block, "</DOCNO>", 0);
        if (no_open == std::string_view::npos || no_close == std::string_view::npos ||
            no_close < no_open) {
            throw FormatError(path.string() + ": <DOC> block without <DOCNO>");
        }
        RawDocument doc;
        doc.id = trim(block.substr(no_open + 7, no_close - no_open - 7));
        if (doc.id.empty()) throw FormatError(path.string() + ": empty <DOCNO>");
        std::string body(block.substr(0, no_open));
        body.append(block.substr(no_close + 8));
        doc.text = trim(strip_tags(body));
        docs.push_back(std::move(doc));
        pos = close + 6;
    }
    return docs;
}

std::vector<Topic> read_topics_tsv(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw FormatError("cannot open topics file: " + path.string());
    std::vector<Topic> topics;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            throw FormatError(path.string() + ":" + std::to_string(lineno) +
                              ": expected qid<TAB>query text");
        }
        Topic t;
        t.qid = trim(line.substr(0, tab));
        t.text = trim(line.substr(tab + 1));
        if (t.qid.empty()) {
            throw FormatError(path.string() + ":" + std::to_string(lineno) + ": empty query id");
        }
        topics.push_back(std::move(t));
    }
    return topics;
}

std::vector<std::string> read_stopword_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw FormatError("cannot open stopword file: " + path.string());
    std::vector<std::string> words;
    std::string line;
    while (std::getline(f, line)) {
        std::string w = trim(line);
        if (w.empty() || w[0] == '#') continue;
        std::transform(w.begin(), w.end(), w.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        words.push_back(std::move(w));
    }
    return words;
}

}  // namespace irtune
