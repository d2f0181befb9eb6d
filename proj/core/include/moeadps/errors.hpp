#pragma once

#include <stdexcept>
#include <string>

namespace moeadps {

// Invalid user-supplied configuration (parameters, manifests, problem keys).
// The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Post-hoc analysis failure (missing run files, malformed stores, unsupported
// metric requests). The CLI maps this to exit code 3.
struct AnalysisError : std::runtime_error {
  explicit AnalysisError(const std::string& what) : std::runtime_error(what) {}
};

// An objective function received a non-finite decision vector.
struct EvaluationError : std::runtime_error {
  explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace moeadps
