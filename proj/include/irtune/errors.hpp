// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 irtune contributors

#pragma once

#include <stdexcept>
#include <string>

namespace irtune {

/// Malformed input file (corpus, topics, qrels, run file, index image).
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid configuration spec string.
class ConfigParseError : public std::runtime_error {
public:
    explicit ConfigParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Query analyzes to zero terms.
class EmptyQueryError : public std::runtime_error {
public:
    explicit EmptyQueryError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Benchmark-level failure that makes selection or evaluation impossible.
class BenchmarkError : public std::runtime_error {
public:
    explicit BenchmarkError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace irtune
