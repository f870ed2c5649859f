// emptystar: empty-simplex statistics and Monte-Carlo experiments.
//
// Exit codes: 0 success, 2 validation error (bad flags, bad input, degenerate
// point sets), 1 anything else.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "emptystar/bodies.hpp"
#include "emptystar/enumerate.hpp"
#include "emptystar/errors.hpp"
#include "emptystar/experiments.hpp"
#include "emptystar/integrals.hpp"
#include "emptystar/io.hpp"
#include "emptystar/report.hpp"
#include "emptystar/special.hpp"

namespace {

using namespace emptystar;
using Json = nlohmann::ordered_json;

struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string input;
  std::string out;
  std::string body = "disk";
  std::string quantity;
  std::string n_list;
  int dim = 0;
  int k = 0;
  int m = 3;
  std::uint64_t n = 0;
  std::uint64_t trials = 1;
  std::uint64_t samples = 1000000;
  double gamma = 1.0;
  double radius_R = 0.0;
  std::optional<std::uint64_t> seed;
  bool force = false;
};

std::uint64_t resolve_seed(const Options& o) {
  const std::uint64_t seed = o.seed ? *o.seed : (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^
                                                     std::random_device{}();
  std::cerr << "emptystar: seed=" << seed << "\n";
  return seed;
}

// Subcommands that draw no random numbers still report, so every run names
// its seed.
void report_no_seed() { std::cerr << "emptystar: seed=none (deterministic)\n"; }

int natural_dim(const std::string& body) {
  if (body == "ball3" || body == "cube3") return 3;
  return 2;
}

ConvexBody body_from(const Options& o) { return parse_body(o.body, o.dim == 0 ? natural_dim(o.body) : o.dim); }

void write_file(const std::string& path, const std::string& content, bool force) {
  if (path.empty()) throw ValidationError("--out is required");
  if (!force && std::filesystem::exists(path))
    throw ValidationError("refusing to overwrite '" + path + "' (use --force)");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << content;
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

std::vector<std::size_t> parse_n_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw ValidationError("empty entry in --n");
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
      throw ValidationError("bad --n entry '" + tok + "'");
    }
    if (pos != tok.size() || v <= 0) throw ValidationError("bad --n entry '" + tok + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw ValidationError("--n needs at least one value");
  return out;
}

int cmd_analyze(const Options& o) {
  report_no_seed();
  const PointSet X = read_point_set_file(o.input);
  const auto result = analyze(X, o.k == 0 ? 1 : o.k);
  std::cout << to_json(result).dump(2) << "\n";
  return 0;
}

int cmd_sweep(const Options& o) {
  ExperimentConfig c;
  c.quantity = parse_quantity(o.quantity);
  c.body = body_from(o);
  c.dim = c.body.dim();
  c.n_values = parse_n_list(o.n_list);
  c.trials = o.trials;
  c.k = o.k;
  c.gamma = o.gamma;
  c.seed = resolve_seed(o);
  validate(c);
  if (o.out.empty()) throw ValidationError("--out is required");
  const std::string csv_path = o.out + ".csv";
  const std::string json_path = o.out + ".json";
  for (const auto& p : {csv_path, json_path})
    if (!o.force && std::filesystem::exists(p)) throw ValidationError("refusing to overwrite '" + p + "' (use --force)");

  const SweepResult r = run_sweep(c);
  std::ostringstream csv;
  write_sweep_csv(csv, r);
  const std::string summary = to_json(r).dump(2) + "\n";
  write_file(csv_path, csv.str(), true);
  write_file(json_path, summary, true);
  std::cout << summary;
  return 0;
}

int cmd_constants(const Options& o) {
  report_no_seed();
  std::cout << to_json(theorem2_constants(o.dim == 0 ? 2 : o.dim)).dump(2) << "\n";
  return 0;
}

int cmd_integral(const Options& o) {
  const std::string q = o.quantity.empty() ? "section" : o.quantity;
  const std::uint64_t seed = resolve_seed(o);
  RngStream rng(seed, 0);
  Json j;
  if (q == "lemma1-cd") {
    const int d = o.dim == 0 ? 2 : o.dim;
    const auto est = estimate_cd(d, o.samples, rng);
    j = integral_json(q, d, "ball", est, d == 2 ? std::optional<double>(lemma1_bound(2)) : std::nullopt);
    j["bound"] = lemma1_bound(d);
  } else if (q == "hyperplane-measure") {
    const int d = o.dim == 0 ? 2 : o.dim;
    const double R = o.radius_R > 0.0 ? o.radius_R : 1.0;
    const auto est = ball_hit_measure(d, R, 1.0, o.samples, rng);
    j = integral_json(q, d, "ball", est, R >= 1.0 ? std::optional<double>(2.0) : std::nullopt);
    j["R"] = R;
  } else {
    const ConvexBody K = body_from(o);
    const int d = K.dim();
    if (q == "section") {
      if (o.m < 1) throw ValidationError("--m must be >= 1");
      j = integral_json(q, d, K.label(), section_integral(K, o.m, o.samples, rng),
                        section_integral_closed_form(K, o.m));
      j["m"] = o.m;
    } else if (q == "theorem2-limit") {
      std::optional<double> exact;
      if (d == 2) exact = 2.0;
      else if (K.kind() == BodyKind::kBall) exact = theorem2_constants(d).upper_c;
      j = integral_json(q, d, K.label(), theorem2_limit_rhs(K, o.samples, rng), exact);
    } else if (q == "appendix-I") {
      const double R = o.radius_R > 0.0 ? o.radius_R : K.bounding_radius();
      const auto a = appendix_I(d, R, K, o.samples, rng);
      j = integral_json(q, d, K.label(), a.estimate, std::nullopt);
      j["bound"] = a.bound;
      j["R"] = R;
      j["dtdu_mean"] = a.dtdu_estimate.mean;
      j["dtdu_stderr"] = a.dtdu_estimate.std_error;
      j["resampled_parallel"] = a.resampled_parallel;
    } else {
      throw ValidationError("unknown integral quantity '" + q + "'");
    }
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_star_svg(const Options& o) {
  report_no_seed();
  const PointSet X = read_point_set_file(o.input);
  if (X.dim() != 2) throw ValidationError("star-svg needs a planar point set, got d = " + std::to_string(X.dim()));
  const int k = o.k == 0 ? 2 : o.k;
  const auto a = analyze(X, k);
  write_file(o.out, star_svg(X, a.report.witness, a.witness_star, k, a.report.max_degree), o.force);
  std::cout << Json{{"schema_version", kSchemaVersion},
                    {"out", o.out},
                    {"k", k},
                    {"degree", a.report.max_degree},
                    {"spikes", a.witness_star.size()}}
                   .dump(2)
            << "\n";
  return 0;
}

int cmd_gen(const Options& o) {
  if (o.n == 0) throw ValidationError("--n must be positive");
  const ConvexBody K = body_from(o);
  // Same stream as trial 0 of the first n in a sweep, so the two agree.
  RngStream rng(resolve_seed(o), trial_stream(0, 0));
  const PointSet X = sample_uniform(K, rng, o.n);
  std::ostringstream s;
  write_point_set(s, X);
  write_file(o.out, s.str(), o.force);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Empty-simplex statistics of finite point sets and Monte-Carlo experiments"};
  app.require_subcommand(1);
  Options o;
  auto seed_opt = [&](CLI::App* sub) {
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](const std::uint64_t& s) { o.seed = s; }, "64-bit seed (random if omitted)");
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "N, degrees and maximal star of a point-set file");
  analyze_cmd->add_option("--input", o.input, "point-set file")->required();
  analyze_cmd->add_option("--k", o.k, "tuple size (default 1)");

  auto* sweep_cmd = app.add_subcommand("sweep", "seeded Monte-Carlo sweep over n");
  sweep_cmd->add_option("--quantity", o.quantity,
                        "empty-count | max-degree | typical-degree | deg1-profile | n-gamma | poisson-gof")
      ->required();
  sweep_cmd->add_option("--body", o.body, "disk | square | ball3 | cube3 | ellipse:a,b | polygon:path | ball | cube");
  sweep_cmd->add_option("--dim", o.dim, "dimension (default from body)");
  sweep_cmd->add_option("--n", o.n_list, "comma-separated point counts")->required();
  sweep_cmd->add_option("--trials", o.trials, "trials per n");
  sweep_cmd->add_option("--k", o.k, "tuple size for degree quantities (default d)");
  sweep_cmd->add_option("--gamma", o.gamma, "gamma for n-gamma / poisson-gof");
  sweep_cmd->add_option("--out", o.out, "output prefix: writes <out>.csv and <out>.json")->required();
  sweep_cmd->add_flag("--force", o.force, "overwrite existing outputs");
  seed_opt(sweep_cmd);

  auto* constants_cmd = app.add_subcommand("constants", "closed-form constants for dimension d");
  constants_cmd->add_option("--dim", o.dim, "dimension (default 2)");

  auto* integral_cmd = app.add_subcommand("integral", "Monte-Carlo integral-geometric quantities");
  integral_cmd->add_option("--quantity", o.quantity,
                           "section (default) | theorem2-limit | appendix-I | lemma1-cd | hyperplane-measure");
  integral_cmd->add_option("--body", o.body, "body specifier");
  integral_cmd->add_option("--dim", o.dim, "dimension (default from body)");
  integral_cmd->add_option("--m", o.m, "section exponent (default 3)");
  integral_cmd->add_option("--samples", o.samples, "hyperplane samples (default 1e6)");
  integral_cmd->add_option("--R", o.radius_R, "enclosing radius for appendix-I / hyperplane-measure");
  seed_opt(integral_cmd);

  auto* svg_cmd = app.add_subcommand("star-svg", "render the maximal star of a planar point set");
  svg_cmd->add_option("--input", o.input, "point-set file")->required();
  svg_cmd->add_option("--k", o.k, "tuple size (default 2)");
  svg_cmd->add_option("--out", o.out, "SVG path")->required();
  svg_cmd->add_flag("--force", o.force, "overwrite an existing file");

  auto* gen_cmd = app.add_subcommand("gen", "sample a point set uniformly from a body");
  gen_cmd->add_option("--body", o.body, "body specifier");
  gen_cmd->add_option("--dim", o.dim, "dimension (default from body)");
  gen_cmd->add_option("--n", o.n, "number of points")->required();
  gen_cmd->add_option("--out", o.out, "point-set path")->required();
  gen_cmd->add_flag("--force", o.force, "overwrite an existing file");
  seed_opt(gen_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (analyze_cmd->parsed()) return cmd_analyze(o);
    if (sweep_cmd->parsed()) return cmd_sweep(o);
    if (constants_cmd->parsed()) return cmd_constants(o);
    if (integral_cmd->parsed()) return cmd_integral(o);
    if (svg_cmd->parsed()) return cmd_star_svg(o);
    if (gen_cmd->parsed()) return cmd_gen(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "emptystar: error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "emptystar: error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "emptystar: internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
