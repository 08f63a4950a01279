// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 irtune contributors

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "irtune/mathutil.hpp"

namespace irtune {

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;
    bool operator==(const Bm25Params&) const = default;
};

struct LmdParams {
    double mu = 2000.0;
    bool operator==(const LmdParams&) const = default;
};

enum class DfrBasicModel { BE, D, G, IF, IN, INE, P };
enum class DfrAfterEffect { B, L, None };
enum class DfrNormalization { H1, H2, H3, Z, None };

struct DfrParams {
    DfrBasicModel basic_model = DfrBasicModel::IF;
    DfrAfterEffect after_effect = DfrAfterEffect::B;
    DfrNormalization normalization = DfrNormalization::H2;
    bool operator==(const DfrParams&) const = default;
};

enum class IbDistribution { LL, SPL };
enum class IbLambda { DF, TTF };

struct IbParams {
    IbDistribution distribution = IbDistribution::SPL;
    IbLambda lambda = IbLambda::DF;
    DfrNormalization normalization = DfrNormalization::H2;
    bool operator==(const IbParams&) const = default;
};

enum class RerankModel { RM1, RM3 };

using BaseVariant = std::variant<Bm25Params, LmdParams, DfrParams, IbParams>;

struct RerankParams {
    RerankModel model = RerankModel::RM3;
    BaseVariant base = LmdParams{};
    int fb_docs = 10;
    int fb_terms = 25;
    double lambda = 0.5;
    bool operator==(const RerankParams&) const = default;
};

struct SimilarityConfig {
    using Variant = std::variant<Bm25Params, LmdParams, DfrParams, IbParams, RerankParams>;
    Variant variant;

    bool is_rerank() const { return std::holds_alternative<RerankParams>(variant); }
    const RerankParams& rerank() const { return std::get<RerankParams>(variant); }
    // For rerank configs, the config that produces the list being reranked.
    SimilarityConfig base_config() const;
    std::string canonical_name() const;
    bool operator==(const SimilarityConfig&) const = default;
};

// Per query-term scoring inputs plus corpus constants.
struct TermQueryStats {
    double tf_in_doc = 0;
    double df = 0;
    double ctf = 0;
    double doc_length = 0;
    double doc_count = 0;
    double total_terms = 0;
    double avg_doc_length = 0;
};

// Grammar: family(:part)* — "bm25:k1=1.2,b=0.75", "lmd:mu=2000", "dfr:G:B:H2",
// "ib:spl:df:h2", "rm3:base=lmd:mu=2000;fbdocs=10;fbterms=25;lambda=0.5".
// Component tokens are case-insensitive; omitted parameters take defaults.
SimilarityConfig parse_config(std::string_view spec);

// All 105 basic-model x after-effect x normalization combinations, sorted by
// canonical name.
std::vector<SimilarityConfig> enumerate_dfr_grid();

// BM25, LM-Dirichlet, default DFR, default IB, RM1 and RM3 over LM-Dirichlet.
std::vector<SimilarityConfig> usecase1_set();

// Sum of per-term contributions for a non-rerank config; terms with
// tf_in_doc <= 0 contribute nothing. Throws std::invalid_argument on rerank
// configs: those are scored by the retrieval pipeline.
double score(const SimilarityConfig& config, std::span<const TermQueryStats> stats,
             ScoreDiagnostics* diag = nullptr);

std::string_view to_string(DfrBasicModel m);
std::string_view to_string(DfrAfterEffect a);
std::string_view to_string(DfrNormalization n);
std::string_view to_string(IbDistribution d);
std::string_view to_string(IbLambda l);

// Shortest round-trip decimal form, "2000" not "2000.0".
std::string format_double(double v);

}  // namespace irtune
