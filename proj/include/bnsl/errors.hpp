#ifndef BNSL_ERRORS_HPP
#define BNSL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bnsl {

/// Malformed or unusable input data (files, datasets, label mismatches).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad configuration values or unusable option combinations.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Structural graph violations: cycles, duplicate or missing edges, bad genomes.
class GraphError : public std::runtime_error {
public:
    explicit GraphError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Scoring failures, e.g. regressions with more parents than observations allow.
class ScoreError : public std::runtime_error {
public:
    explicit ScoreError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Evaluation failures: degenerate gold standards, incomplete result grids.
class EvalError : public std::runtime_error {
public:
    explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Broken internal invariant. Reaching this is a bug, not a user error.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace bnsl

#endif  // BNSL_ERRORS_HPP
