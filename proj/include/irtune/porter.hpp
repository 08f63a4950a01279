// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 irtune contributors

#pragma once

#include <string>
#include <string_view>

namespace irtune {

/// Porter suffix-stripping stemmer, the original five-step algorithm.
///
/// Input must already be lowercase. Short tokens are stemmed like any other
/// word, so a bare possessive "s" reduces to the empty string; callers drop
/// empty results.
std::string porter_stem(std::string_view word);

}  // namespace irtune
