#pragma once

#include <stdexcept>
#include <string>

namespace planar {

// Error taxonomy mirrored by the CLI exit codes: domain 2, precision 3,
// convergence 4.
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& m) : std::runtime_error(m) {}
};

struct precision_error : std::runtime_error {
  explicit precision_error(const std::string& m) : std::runtime_error(m) {}
};

struct convergence_error : std::runtime_error {
  explicit convergence_error(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace planar
