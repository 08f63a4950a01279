// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 irtune contributors

#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace irtune {

std::vector<std::string> default_stopwords();

// Text -> index terms: split on non-alphanumeric ASCII, lowercase, remove
// stopwords, then Porter-stem. Stems that come out empty are dropped.
class Analyzer {
public:
    Analyzer();
    explicit Analyzer(std::vector<std::string> stopwords);

    std::vector<std::string> analyze(std::string_view text) const;
    const std::vector<std::string>& stopwords() const { return stopword_list_; }

private:
    std::vector<std::string> stopword_list_;
    std::unordered_set<std::string> stopword_set_;
};

}  // namespace irtune
