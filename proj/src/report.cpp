#include "emptystar/report.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "emptystar/io.hpp"

namespace emptystar {
namespace {

using Json = nlohmann::ordered_json;

Json key_json(const SimplexKey& key) { return Json(std::vector<std::uint32_t>(key.indices().begin(), key.indices().end())); }

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

AnalyzeResult analyze(const PointSet& X, int k) {
  AnalyzeResult r;
  r.report = count_empty_simplices(X, k);
  const auto w = r.report.witness.indices();
  for_each_empty_simplex(X, [&](std::span<const std::uint32_t> s) {
    if (std::includes(s.begin(), s.end(), w.begin(), w.end()))
      r.witness_star.emplace_back(std::vector<std::uint32_t>(s.begin(), s.end()));
  });
  std::sort(r.witness_star.begin(), r.witness_star.end());
  return r;
}

Json to_json(const AnalyzeResult& a) {
  const auto& r = a.report;
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["n"] = r.n;
  j["dim"] = r.dim;
  j["total"] = r.total;
  j["per_vertex_degree"] = r.per_vertex_degree;
  j["k"] = r.k;
  Json tuples = Json::array();
  r.per_tuple_degree.for_each_nonzero([&](std::span<const std::uint32_t> t, std::uint32_t deg) {
    tuples.push_back(Json{{"tuple", std::vector<std::uint32_t>(t.begin(), t.end())}, {"degree", deg}});
  });
  j["per_tuple_degree"] = std::move(tuples);
  j["witness_max"] = Json{{"tuple", key_json(r.witness)}, {"degree", r.max_degree}};
  Json star = Json::array();
  for (const auto& s : a.witness_star) star.push_back(key_json(s));
  j["witness_star"] = std::move(star);
  return j;
}

Json to_json(const EstimateSummary& s) {
  Json j;
  j["n"] = s.n;
  j["mean"] = s.mean;
  j["stderr"] = s.std_error;
  j["ci95"] = {s.ci95_lo, s.ci95_hi};
  j["trials"] = s.count;
  j["seed"] = s.seed;
  j["normalizer"] = s.normalizer;
  return j;
}

Json to_json(const ConstantTable& t) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["dim"] = t.dim;
  j["kappa"] = t.kappa;
  j["lower_c"] = t.lower_c;
  j["upper_c"] = t.upper_c;
  j["section_ineq_c"] = t.section_ineq_c;
  j["new_ineq_c"] = t.new_ineq_c;
  j["planar_deg_c"] = optional_json(t.planar_deg_c);
  j["lemma1_c"] = t.lemma1_c;
  j["lemma1_c_is_bound"] = t.lemma1_c_is_bound;
  j["appendix_bound_unit"] = optional_json(t.appendix_bound_unit);
  return j;
}

Json to_json(const SweepResult& r) {
  const auto& c = r.config;
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = Json{{"quantity", quantity_name(c.quantity)},
                     {"body", c.body.label()},
                     {"dim", c.dim},
                     {"n_values", c.n_values},
                     {"trials", c.trials},
                     {"k", c.k == 0 ? c.dim : c.k},
                     {"gamma", c.gamma},
                     {"seed", c.seed}};
  Json summaries = Json::array();
  for (const auto& s : r.summaries) summaries.push_back(to_json(s));
  j["summaries"] = std::move(summaries);
  j["closed_form"] = optional_json(r.target);
  if (c.quantity == Quantity::kPoissonGof) {
    Json gof = Json::array();
    for (const auto& g : r.gof)
      gof.push_back(Json{{"n", g.n},
                         {"mean", g.mean},
                         {"tv_distance", g.tv_distance},
                         {"p_zero_empirical", g.p_zero_empirical},
                         {"p_zero_predicted", g.p_zero_predicted},
                         {"histogram", g.histogram}});
    j["poisson_gof"] = std::move(gof);
  }
  j["flags"] = r.flags;
  return j;
}

void write_sweep_csv(std::ostream& out, const SweepResult& r) {
  const auto& c = r.config;
  const std::string q = quantity_name(c.quantity);
  out << "quantity,d,body,n,trial,seed,value\n";
  for (const auto& rec : r.records)
    out << q << ',' << c.dim << ',' << c.body.label() << ',' << rec.n << ',' << rec.trial << ',' << c.seed << ','
        << format_double(rec.value) << '\n';
}

Json integral_json(const std::string& quantity, int d, const std::string& body, const EstimateSummary& s,
                   std::optional<double> closed_form) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["quantity"] = quantity;
  j["d"] = d;
  j["body"] = body;
  j["samples"] = s.count;
  j["seed"] = s.seed;
  j["mean"] = s.mean;
  j["stderr"] = s.std_error;
  j["ci95"] = {s.ci95_lo, s.ci95_hi};
  j["closed_form"] = optional_json(closed_form);
  return j;
}

std::string star_svg(const PointSet& X, const SimplexKey& witness, const std::vector<SimplexKey>& star, int k,
                     std::uint64_t degree) {
  if (X.dim() != 2) throw std::invalid_argument("star rendering needs planar points");
  if (X.empty()) throw std::invalid_argument("star rendering needs points");
  constexpr double kSize = 800.0;
  constexpr double kMargin = 0.05 * kSize;
  double xmin = X[0][0], xmax = xmin, ymin = X[0][1], ymax = ymin;
  for (std::size_t i = 1; i < X.size(); ++i) {
    xmin = std::min(xmin, X[i][0]);
    xmax = std::max(xmax, X[i][0]);
    ymin = std::min(ymin, X[i][1]);
    ymax = std::max(ymax, X[i][1]);
  }
  const double span = std::max(xmax - xmin, ymax - ymin);
  const double scale = span > 0.0 ? (kSize - 2.0 * kMargin) / span : 1.0;
  const double cx = 0.5 * (xmin + xmax);
  const double cy = 0.5 * (ymin + ymax);
  auto px = [&](std::size_t i) { return format_double(0.5 * kSize + (X[i][0] - cx) * scale); };
  auto py = [&](std::size_t i) { return format_double(0.5 * kSize - (X[i][1] - cy) * scale); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  s << "<style>.spike{fill:#4a90d9;fill-opacity:0.15;stroke:#1f4e79;stroke-width:1}"
       ".pt{fill:#222}.witness{fill:#d62728}.base{stroke:#d62728;stroke-width:3}</style>\n";
  s << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  for (const auto& t : star) {
    s << "<polygon class=\"spike\" points=\"";
    for (std::size_t v = 0; v < t.size(); ++v) s << (v ? " " : "") << px(t[v]) << ',' << py(t[v]);
    s << "\"/>\n";
  }
  if (witness.size() == 2)
    s << "<line class=\"base\" x1=\"" << px(witness[0]) << "\" y1=\"" << py(witness[0]) << "\" x2=\""
      << px(witness[1]) << "\" y2=\"" << py(witness[1]) << "\"/>\n";
  for (std::size_t i = 0; i < X.size(); ++i) {
    const bool w = witness.contains(static_cast<std::uint32_t>(i));
    s << "<circle class=\"" << (w ? "witness" : "pt") << "\" cx=\"" << px(i) << "\" cy=\"" << py(i) << "\" r=\""
      << (w ? 5 : 3) << "\"/>\n";
  }
  s << "<text x=\"40\" y=\"790\" font-family=\"sans-serif\" font-size=\"16\">n=" << X.size() << ", k=" << k
    << ", degree=" << degree << "</text>\n";
  s << "</svg>\n";
  return s.str();
}

}  // namespace emptystar
