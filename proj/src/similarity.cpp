// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 irtune contributors

#include "irtune/similarity.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "irtune/errors.hpp"

namespace irtune {
namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_number(std::string_view token, std::string_view what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ConfigParseError("invalid number for " + std::string(what) + ": '" +
                               std::string(token) + "'");
    }
    return v;
}

int parse_count(std::string_view token, std::string_view what) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size() || v < 1) {
        throw ConfigParseError("invalid count for " + std::string(what) + ": '" +
                               std::string(token) + "'");
    }
    return v;
}

DfrBasicModel parse_basic_model(std::string_view tok) {
    std::string t = lower(tok);
    if (t == "be") return DfrBasicModel::BE;
    if (t == "d") return DfrBasicModel::D;
    if (t == "g") return DfrBasicModel::G;
    if (t == "if") return DfrBasicModel::IF;
    if (t == "in") return DfrBasicModel::IN;
    if (t == "ine") return DfrBasicModel::INE;
    if (t == "p") return DfrBasicModel::P;
    throw ConfigParseError("unknown basic model: '" + std::string(tok) + "'");
}

DfrAfterEffect parse_after_effect(std::string_view tok) {
    std::string t = lower(tok);
    if (t == "b") return DfrAfterEffect::B;
    if (t == "l") return DfrAfterEffect::L;
    if (t == "none") return DfrAfterEffect::None;
    throw ConfigParseError("unknown after effect: '" + std::string(tok) + "'");
}

DfrNormalization parse_normalization(std::string_view tok) {
    std::string t = lower(tok);
    if (t == "h1") return DfrNormalization::H1;
    if (t == "h2") return DfrNormalization::H2;
    if (t == "h3") return DfrNormalization::H3;
    if (t == "z") return DfrNormalization::Z;
    if (t == "none") return DfrNormalization::None;
    throw ConfigParseError("unknown normalization: '" + std::string(tok) + "'");
}

IbDistribution parse_distribution(std::string_view tok) {
    std::string t = lower(tok);
    if (t == "ll") return IbDistribution::LL;
    if (t == "spl") return IbDistribution::SPL;
    throw ConfigParseError("unknown distribution: '" + std::string(tok) + "'");
}

IbLambda parse_lambda_kind(std::string_view tok) {
    std::string t = lower(tok);
    if (t == "df") return IbLambda::DF;
    if (t == "ttf") return IbLambda::TTF;
    throw ConfigParseError("unknown lambda kind: '" + std::string(tok) + "'");
}

struct KeyValue {
    std::string_view key;
    std::string_view value;
};

KeyValue split_key_value(std::string_view item) {
    std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigParseError("expected key=value, got '" + std::string(item) + "'");
    }
    return {item.substr(0, eq), item.substr(eq + 1)};
}

Bm25Params parse_bm25_params(std::span<const std::string_view> parts) {
    Bm25Params p;
    for (std::string_view part : parts) {
        for (std::string_view item : split(part, ',')) {
            auto [key, value] = split_key_value(item);
            std::string k = lower(key);
            if (k == "k1") {
                p.k1 = parse_number(value, "k1");
                if (p.k1 <= 0.0) throw ConfigParseError("k1 must be > 0");
            } else if (k == "b") {
                p.b = parse_number(value, "b");
                if (p.b < 0.0 || p.b > 1.0) throw ConfigParseError("b must be in [0,1]");
            } else {
                throw ConfigParseError("unknown bm25 parameter: '" + std::string(key) + "'");
            }
        }
    }
    return p;
}

LmdParams parse_lmd_params(std::span<const std::string_view> parts) {
    LmdParams p;
    for (std::string_view part : parts) {
        for (std::string_view item : split(part, ',')) {
            auto [key, value] = split_key_value(item);
            std::string k = lower(key);
            if (k == "mu") {
                p.mu = parse_number(value, "mu");
                if (p.mu <= 0.0) throw ConfigParseError("mu must be > 0");
            } else {
                throw ConfigParseError("unknown lmd parameter: '" + std::string(key) + "'");
            }
        }
    }
    return p;
}

RerankParams parse_rerank(RerankModel model, std::string_view params) {
    RerankParams p;
    p.model = model;
    if (params.empty()) return p;
    for (std::string_view item : split(params, ';')) {
        auto [key, value] = split_key_value(item);
        std::string k = lower(key);
        if (k == "base") {
            SimilarityConfig base = parse_config(value);
            if (base.is_rerank()) throw ConfigParseError("rerank base must not be a rerank");
            std::visit(
                [&p](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (!std::is_same_v<T, RerankParams>) p.base = v;
                },
                base.variant);
        } else if (k == "fbdocs") {
            p.fb_docs = parse_count(value, "fbdocs");
        } else if (k == "fbterms") {
            p.fb_terms = parse_count(value, "fbterms");
        } else if (k == "lambda") {
            p.lambda = parse_number(value, "lambda");
            if (p.lambda < 0.0 || p.lambda > 1.0) {
                throw ConfigParseError("lambda must be in [0,1]");
            }
        } else {
            throw ConfigParseError("unknown rerank parameter: '" + std::string(key) + "'");
        }
    }
    return p;
}

// ---- scoring kernels ----

double bm25_term(const Bm25Params& p, const TermQueryStats& s, ScoreDiagnostics* diag) {
    double idf = safe_ln(1.0 + (s.doc_count - s.df + 0.5) / (s.df + 0.5), diag);
    double len_ratio = s.avg_doc_length > 0.0 ? s.doc_length / s.avg_doc_length : 1.0;
    double tf = s.tf_in_doc;
    return idf * tf * (p.k1 + 1.0) / (tf + p.k1 * (1.0 - p.b + p.b * len_ratio));
}

double lmd_term(const LmdParams& p, const TermQueryStats& s, ScoreDiagnostics* diag) {
    double p_c = s.ctf / s.total_terms;
    return safe_ln(1.0 + s.tf_in_doc / (p.mu * p_c), diag) +
           safe_ln(p.mu / (s.doc_length + p.mu), diag);
}

double dfr_tfn(DfrNormalization n, const TermQueryStats& s, ScoreDiagnostics* diag) {
    double tf = s.tf_in_doc;
    double dl = s.doc_length;
    double avg = s.avg_doc_length;
    switch (n) {
        case DfrNormalization::H1:
            return tf * avg / dl;
        case DfrNormalization::H2:
            return tf * safe_log2(1.0 + avg / dl, diag);
        case DfrNormalization::H3: {
            constexpr double mu = 800.0;
            double p_c = (s.ctf + 1.0) / (s.total_terms + 1.0);
            return mu * (tf + mu * p_c) / (dl + mu);
        }
        case DfrNormalization::Z: {
            constexpr double z = 0.30;
            return tf * std::pow(avg / dl, z);
        }
        case DfrNormalization::None:
            return tf;
    }
    return tf;
}

double dfr_inf(DfrBasicModel m, const TermQueryStats& s, double tfn, ScoreDiagnostics* diag) {
    constexpr double log2e = std::numbers::log2e;
    constexpr double pi = std::numbers::pi;
    double n_docs = s.doc_count;
    switch (m) {
        case DfrBasicModel::BE: {
            double F = s.ctf + 1.0 + tfn;
            double N = n_docs + F;
            auto f = [&](double n, double mm) {
                return (mm + 0.5) * safe_log2(n / mm, diag) + (n - mm) * safe_log2(n, diag);
            };
            return -safe_log2((N - 1.0) * std::numbers::e, diag) +
                   f(N + F - 1.0, N + F - tfn - 2.0) - f(F, F - tfn);
        }
        case DfrBasicModel::D: {
            double F = s.ctf + 1.0 + tfn;
            double phi = tfn / F;
            double nphi = 1.0 - phi;
            double p = 1.0 / (n_docs + 1.0);
            double divergence =
                phi * safe_log2(phi / p, diag) + nphi * safe_log2(nphi / (1.0 - p), diag);
            return divergence * F + 0.5 * safe_log2(1.0 + 2.0 * pi * tfn * nphi, diag);
        }
        case DfrBasicModel::G: {
            double F = s.ctf + 1.0;
            double lambda = F / (n_docs + F);
            return safe_log2(lambda + 1.0, diag) + tfn * safe_log2((1.0 + lambda) / lambda, diag);
        }
        case DfrBasicModel::IF:
            return tfn * safe_log2(1.0 + (n_docs + 1.0) / (s.ctf + 0.5), diag);
        case DfrBasicModel::IN:
            return tfn * safe_log2((n_docs + 1.0) / (s.df + 0.5), diag);
        case DfrBasicModel::INE: {
            double ne = n_docs * (1.0 - std::pow((n_docs - 1.0) / n_docs, s.ctf));
            return tfn * safe_log2((n_docs + 1.0) / (ne + 0.5), diag);
        }
        case DfrBasicModel::P: {
            double lambda = (s.ctf + 1.0) / (n_docs + 1.0);
            return tfn * safe_log2(tfn / lambda, diag) +
                   (lambda + 1.0 / (12.0 * tfn) - tfn) * log2e +
                   0.5 * safe_log2(2.0 * pi * tfn, diag);
        }
    }
    return 0.0;
}

double dfr_gain(DfrAfterEffect a, const TermQueryStats& s, double tfn) {
    switch (a) {
        case DfrAfterEffect::B: {
            double F = s.ctf + 1.0;
            double n = s.df + 1.0;
            return (F + 1.0) / (n * (tfn + 1.0));
        }
        case DfrAfterEffect::L:
            return 1.0 / (1.0 + tfn);
        case DfrAfterEffect::None:
            return 1.0;
    }
    return 1.0;
}

double dfr_term(const DfrParams& p, const TermQueryStats& s, ScoreDiagnostics* diag) {
    double tfn = dfr_tfn(p.normalization, s, diag);
    double v = dfr_gain(p.after_effect, s, tfn) * dfr_inf(p.basic_model, s, tfn, diag);
    if (v < 0.0) {
        if (diag != nullptr) diag->floored_terms.fetch_add(1, std::memory_order_relaxed);
        return 0.0;
    }
    return v;
}

double ib_term(const IbParams& p, const TermQueryStats& s, ScoreDiagnostics* diag) {
    double tfn = dfr_tfn(p.normalization, s, diag);
    double lambda = p.lambda == IbLambda::DF ? (s.df + 1.0) / (s.doc_count + 1.0)
                                             : (s.ctf + 1.0) / (s.doc_count + 1.0);
    switch (p.distribution) {
        case IbDistribution::LL:
            return -safe_ln(lambda / (tfn + lambda), diag);
        case IbDistribution::SPL: {
            if (lambda == 1.0) lambda = 0.99;
            double arg = (std::pow(lambda, tfn / (tfn + 1.0)) - lambda) / (1.0 - lambda);
            return -safe_ln(arg, diag);
        }
    }
    return 0.0;
}

}  // namespace

std::string_view to_string(DfrBasicModel m) {
    switch (m) {
        case DfrBasicModel::BE: return "BE";
        case DfrBasicModel::D: return "D";
        case DfrBasicModel::G: return "G";
        case DfrBasicModel::IF: return "IF";
        case DfrBasicModel::IN: return "IN";
        case DfrBasicModel::INE: return "INE";
        case DfrBasicModel::P: return "P";
    }
    return "";
}

std::string_view to_string(DfrAfterEffect a) {
    switch (a) {
        case DfrAfterEffect::B: return "B";
        case DfrAfterEffect::L: return "L";
        case DfrAfterEffect::None: return "None";
    }
    return "";
}

std::string_view to_string(DfrNormalization n) {
    switch (n) {
        case DfrNormalization::H1: return "H1";
        case DfrNormalization::H2: return "H2";
        case DfrNormalization::H3: return "H3";
        case DfrNormalization::Z: return "Z";
        case DfrNormalization::None: return "None";
    }
    return "";
}

std::string_view to_string(IbDistribution d) {
    switch (d) {
        case IbDistribution::LL: return "LL";
        case IbDistribution::SPL: return "SPL";
    }
    return "";
}

std::string_view to_string(IbLambda l) {
    switch (l) {
        case IbLambda::DF: return "DF";
        case IbLambda::TTF: return "TTF";
    }
    return "";
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

struct NameVisitor {
    std::string operator()(const Bm25Params& p) const {
        return "bm25:k1=" + format_double(p.k1) + ",b=" + format_double(p.b);
    }
    std::string operator()(const LmdParams& p) const { return "lmd:mu=" + format_double(p.mu); }
    std::string operator()(const DfrParams& p) const {
        return std::string("dfr:") + std::string(to_string(p.basic_model)) + ":" +
               std::string(to_string(p.after_effect)) + ":" +
               std::string(to_string(p.normalization));
    }
    std::string operator()(const IbParams& p) const {
        return std::string("ib:") + std::string(to_string(p.distribution)) + ":" +
               std::string(to_string(p.lambda)) + ":" + std::string(to_string(p.normalization));
    }
    std::string operator()(const RerankParams& p) const {
        std::string base = std::visit(NameVisitor{}, p.base);
        return std::string(p.model == RerankModel::RM1 ? "rm1" : "rm3") + ":base=" + base +
               ";fbdocs=" + std::to_string(p.fb_docs) + ";fbterms=" + std::to_string(p.fb_terms) +
               ";lambda=" + format_double(p.lambda);
    }
};

}  // namespace

SimilarityConfig SimilarityConfig::base_config() const {
    if (!is_rerank()) return *this;
    return std::visit([](const auto& v) { return SimilarityConfig{v}; },
                      std::get<RerankParams>(variant).base);
}

std::string SimilarityConfig::canonical_name() const { return std::visit(NameVisitor{}, variant); }

SimilarityConfig parse_config(std::string_view spec) {
    if (spec.empty()) throw ConfigParseError("empty config spec");
    std::size_t colon = spec.find(':');
    std::string family = lower(colon == std::string_view::npos ? spec : spec.substr(0, colon));
    std::string_view rest = colon == std::string_view::npos ? std::string_view{}
                                                            : spec.substr(colon + 1);
    if (family == "bm25") {
        auto parts = split(rest, ':');
        if (rest.empty()) parts.clear();
        return SimilarityConfig{parse_bm25_params(parts)};
    }
    if (family == "lmd") {
        auto parts = split(rest, ':');
        if (rest.empty()) parts.clear();
        return SimilarityConfig{parse_lmd_params(parts)};
    }
    if (family == "dfr") {
        DfrParams p;
        if (!rest.empty()) {
            auto parts = split(rest, ':');
            if (parts.size() > 3) throw ConfigParseError("too many dfr components");
            if (parts.size() >= 1) p.basic_model = parse_basic_model(parts[0]);
            if (parts.size() >= 2) p.after_effect = parse_after_effect(parts[1]);
            if (parts.size() >= 3) p.normalization = parse_normalization(parts[2]);
        }
        return SimilarityConfig{p};
    }
    if (family == "ib") {
        IbParams p;
        if (!rest.empty()) {
            auto parts = split(rest, ':');
            if (parts.size() > 3) throw ConfigParseError("too many ib components");
            if (parts.size() >= 1) p.distribution = parse_distribution(parts[0]);
            if (parts.size() >= 2) p.lambda = parse_lambda_kind(parts[1]);
            if (parts.size() >= 3) p.normalization = parse_normalization(parts[2]);
        }
        return SimilarityConfig{p};
    }
    if (family == "rm1") return SimilarityConfig{parse_rerank(RerankModel::RM1, rest)};
    if (family == "rm3") return SimilarityConfig{parse_rerank(RerankModel::RM3, rest)};
    throw ConfigParseError("unknown similarity family: '" + family + "'");
}

std::vector<SimilarityConfig> enumerate_dfr_grid() {
    std::vector<SimilarityConfig> grid;
    grid.reserve(105);
    for (DfrBasicModel m : {DfrBasicModel::BE, DfrBasicModel::D, DfrBasicModel::G,
                            DfrBasicModel::IF, DfrBasicModel::IN, DfrBasicModel::INE,
                            DfrBasicModel::P}) {
        for (DfrAfterEffect a : {DfrAfterEffect::B, DfrAfterEffect::L, DfrAfterEffect::None}) {
            for (DfrNormalization n :
                 {DfrNormalization::H1, DfrNormalization::H2, DfrNormalization::H3,
                  DfrNormalization::Z, DfrNormalization::None}) {
                grid.push_back(SimilarityConfig{DfrParams{m, a, n}});
            }
        }
    }
    std::sort(grid.begin(), grid.end(), [](const SimilarityConfig& x, const SimilarityConfig& y) {
        return x.canonical_name() < y.canonical_name();
    });
    return grid;
}

std::vector<SimilarityConfig> usecase1_set() {
    return {
        SimilarityConfig{Bm25Params{}},
        SimilarityConfig{LmdParams{}},
        SimilarityConfig{DfrParams{}},
        SimilarityConfig{IbParams{}},
        SimilarityConfig{RerankParams{RerankModel::RM1, LmdParams{}, 10, 25, 0.5}},
        SimilarityConfig{RerankParams{RerankModel::RM3, LmdParams{}, 10, 25, 0.5}},
    };
}

double score(const SimilarityConfig& config, std::span<const TermQueryStats> stats,
             ScoreDiagnostics* diag) {
    if (config.is_rerank()) {
        throw std::invalid_argument("rerank configs are scored by the retrieval pipeline");
    }
    double total = 0.0;
    for (const TermQueryStats& s : stats) {
        if (s.tf_in_doc <= 0.0) continue;
        total += std::visit(
            [&](const auto& params) -> double {
                using T = std::decay_t<decltype(params)>;
                if constexpr (std::is_same_v<T, Bm25Params>) return bm25_term(params, s, diag);
                if constexpr (std::is_same_v<T, LmdParams>) return lmd_term(params, s, diag);
                if constexpr (std::is_same_v<T, DfrParams>) return dfr_term(params, s, diag);
                if constexpr (std::is_same_v<T, IbParams>) return ib_term(params, s, diag);
                return 0.0;
            },
            config.variant);
    }
    return total;
}

}  // namespace irtune
