#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "emptystar/enumerate.hpp"
#include "emptystar/experiments.hpp"
#include "emptystar/integrals.hpp"

namespace emptystar {

inline constexpr const char* kSchemaVersion = "1";

/// The report plus the witness star; the star is collected in a second
/// enumeration pass and listed in lexicographic order.
struct AnalyzeResult {
  EmptySimplexReport report;
  std::vector<SimplexKey> witness_star;
};

AnalyzeResult analyze(const PointSet& X, int k);

nlohmann::ordered_json to_json(const AnalyzeResult& r);
nlohmann::ordered_json to_json(const EstimateSummary& s);
nlohmann::ordered_json to_json(const ConstantTable& t);
nlohmann::ordered_json to_json(const SweepResult& r);

/// CSV with header quantity,d,body,n,trial,seed,value.
void write_sweep_csv(std::ostream& out, const SweepResult& r);

/// Integral-style JSON record shared by the integral subcommand.
nlohmann::ordered_json integral_json(const std::string& quantity, int d, const std::string& body,
                                     const EstimateSummary& s, std::optional<double> closed_form);

/// SVG of a planar point set with the star of `witness` drawn as spike
/// triangles, fit to an 800x800 viewport with a 5% margin.
std::string star_svg(const PointSet& X, const SimplexKey& witness, const std::vector<SimplexKey>& star, int k,
                     std::uint64_t degree);

}  // namespace emptystar
