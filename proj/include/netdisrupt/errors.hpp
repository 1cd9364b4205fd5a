#pragma once

#include <stdexcept>
#include <string>

namespace netdisrupt {

// Error taxonomy mirrors the CLI exit codes:
//   ConfigError -> 2, ParseError/InputError -> 3, ComputeError -> 4.

/// Invalid configuration (bad flag combination, weight sums, budgets out of range).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file (bad row, truncated section, schema mismatch).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Structurally valid input that cannot be bound (unknown node, missing record).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Runtime failure (non-convergence, undefined metric).
class ComputeError : public std::runtime_error {
public:
    explicit ComputeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace netdisrupt
