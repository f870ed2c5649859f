#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace emptystar {

/// Inputs whose dimensions disagree (point vs. point set, point vs. body).
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point set that violates general position. Carries the offending
/// vertex subset (indices into the point set) when one is known.
class DegenerateInput : public std::domain_error {
 public:
  DegenerateInput(const std::string& what, std::vector<std::uint32_t> subset = {})
      : std::domain_error(what), subset_(std::move(subset)) {}

  const std::vector<std::uint32_t>& subset() const noexcept { return subset_; }

 private:
  std::vector<std::uint32_t> subset_;
};

}  // namespace emptystar
