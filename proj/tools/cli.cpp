#include "cli.hpp"

#include "mpfbm/io.hpp"
#include "mpfbm/mpfbm.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#ifndef MPFBM_DEFAULT_BATTERY
#define MPFBM_DEFAULT_BATTERY "data/battery_v1.json"
#endif

namespace mpfbm::cli {

namespace {

using io::Json;

struct Options {
  std::string config;
  std::string out;
  std::string battery;
  std::string input;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  std::optional<int> threads;
  bool sample = false;
  bool check_mode = false;
};

Json load_config(const Options& o) {
  if (o.config.empty()) throw InputError("--config is required");
  return io::parse_json(io::read_file(o.config));
}

// Writes to --out when given, otherwise to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw InputError("cannot write " + path);
      os_ = &file_;
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

std::string join_point(const Point& p) {
  std::string s;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (i) s += ';';
    s += io::format_double(p(i));
  }
  return s;
}

std::vector<double> axis_coords(const Json& axis) {
  std::vector<double> c;
  if (axis.is_object()) {
    const double lo = axis.at("min").get<double>();
    const double hi = axis.at("max").get<double>();
    const int count = axis.at("count").get<int>();
    if (count < 1) throw DomainError("grid axis count must be positive");
    if (count == 1) return {lo};
    for (int i = 0; i < count; ++i) c.push_back(lo + (hi - lo) * i / (count - 1));
  } else {
    c = axis.get<std::vector<double>>();
  }
  if (c.empty()) throw DomainError("grid axis is empty");
  for (std::size_t i = 1; i < c.size(); ++i)
    if (!(c[i] > c[i - 1])) throw DomainError("grid coordinates must be strictly increasing");
  return c;
}

// Explicit "points" or a tensor "grid" (last axis varies fastest).
std::vector<Point> points_from_config(const Json& cfg) {
  std::vector<Point> pts;
  if (cfg.contains("points")) {
    for (const Json& p : cfg.at("points")) pts.push_back(io::point_from_json(p));
    return pts;
  }
  if (!cfg.contains("grid")) throw InputError("config needs \"points\" or \"grid\"");
  std::vector<std::vector<double>> axes;
  for (const Json& a : cfg.at("grid").at("axes")) axes.push_back(axis_coords(a));
  if (axes.empty()) throw InputError("grid needs at least one axis");
  const auto n = static_cast<Eigen::Index>(axes.size());
  std::vector<std::size_t> idx(axes.size(), 0);
  while (true) {
    Point p(n);
    for (Eigen::Index i = 0; i < n; ++i) p(i) = axes[i][idx[i]];
    require_nonnegative(p);
    pts.push_back(std::move(p));
    std::size_t k = axes.size();
    while (k > 0 && ++idx[k - 1] == axes[k - 1].size()) idx[--k] = 0;
    if (k == 0) break;
  }
  return pts;
}

// Kernel + points, or a hand-supplied "matrix".
CovMatrix cov_from_config(const Json& cfg) {
  if (cfg.contains("matrix")) {
    const auto rows = cfg.at("matrix").get<std::vector<std::vector<double>>>();
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (static_cast<Eigen::Index>(rows[i].size()) != n)
        throw DimensionError("matrix must be square");
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[i][j];
    }
    return covariance_from_matrix(std::move(m));
  }
  const Kernel k = io::kernel_from_json(cfg.at("kernel"));
  const auto pts = points_from_config(cfg);
  return assemble_cov(k, pts);
}

std::uint64_t seed_of(const Options& o, const Json& cfg) {
  if (o.seed) return *o.seed;
  return cfg.value("seed", std::uint64_t{0});
}

long samples_of(const Json& cfg) {
  const long n = cfg.value("n_samples", 1L);
  if (n < 1) throw DomainError("n_samples must be positive");
  return n;
}

int threads_of(const Options& o, const Json& cfg) {
  const int t = o.threads ? *o.threads : cfg.value("threads", 1);
  if (t < 1) throw DomainError("threads must be positive");
  return t;
}

int cmd_covariance(const Options& o, std::ostream& out) {
  const Json cfg = load_config(o);
  const Kernel k = io::kernel_from_json(cfg.at("kernel"));
  std::vector<std::pair<Point, Point>> pairs;
  if (cfg.contains("pairs")) {
    for (const Json& pr : cfg.at("pairs")) {
      if (!pr.is_array() || pr.size() != 2) throw InputError("each pair must be [s, t]");
      pairs.emplace_back(io::point_from_json(pr[0]), io::point_from_json(pr[1]));
    }
  } else {
    const auto pts = points_from_config(cfg);
    for (const Point& s : pts)
      for (const Point& t : pts) pairs.emplace_back(s, t);
  }
  std::ostringstream csv;
  csv << "s,t,cov\n";
  for (const auto& [s, t] : pairs)
    csv << join_point(s) << ',' << join_point(t) << ',' << io::format_double(cov(k, s, t)) << '\n';
  Sink sink(o.out, out);
  *sink << csv.str();
  return kOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const Json cfg = load_config(o);
  const CovMatrix c = cov_from_config(cfg);
  const PsdReport psd = psd_check(c);
  if (!psd.verdict)
    throw NumericalError("covariance is not numerically PSD (min eigenvalue " +
                         io::format_double(psd.min_eigenvalue) + ")");
  const CholeskyFactor f = cholesky_regularized(c);
  const SampleSet s = sample(f, samples_of(cfg), seed_of(o, cfg), threads_of(o, cfg));
  std::ostringstream csv;
  io::write_samples_csv(csv, s);
  Sink sink(o.out, out);
  *sink << csv.str();
  if (!o.out.empty())
    write_file(o.out + ".json",
               io::sample_sidecar(s, c.points, c.kernel, psd.min_eigenvalue).dump(2) + "\n");
  return kOk;
}

int cmd_psd_check(const Options& o, std::ostream& out) {
  const Json cfg = load_config(o);
  const CovMatrix c = cov_from_config(cfg);
  const PsdReport psd = psd_check(c);
  const double max_diag = c.entries.size() ? c.entries.diagonal().maxCoeff() : 0.0;
  const Json report{{"n", c.entries.rows()},
                    {"min_eigenvalue", psd.min_eigenvalue},
                    {"max_diagonal", max_diag},
                    {"threshold", -1e-8 * std::max(1.0, max_diag)},
                    {"verdict", psd.verdict}};
  Sink sink(o.out, out);
  *sink << report.dump(2) << '\n';
  return psd.verdict ? kOk : kNumericalError;
}

BoxUnion union_from_json(const Json& j) {
  if (j.is_object()) return BoxUnion{io::box_from_json(j)};
  return BoxUnion(io::boxes_from_json(j));
}

int cmd_increments(const Options& o, std::ostream& out) {
  const Json cfg = load_config(o);
  const Kernel k = io::kernel_from_json(cfg.at("kernel"));
  std::vector<IncrementFunctional> fs;
  for (const Json& u : cfg.at("unions")) fs.push_back(delta_functional(union_from_json(u)));
  Json functionals = Json::array();
  for (const auto& f : fs) functionals.push_back(io::to_json(f));
  Json matrix = Json::array();
  for (const auto& a : fs) {
    Json row = Json::array();
    for (const auto& b : fs) row.push_back(functional_cov(k, a, b));
    matrix.push_back(std::move(row));
  }
  const Json report{{"kernel", io::to_json(k)},
                    {"functionals", std::move(functionals)},
                    {"covariance", std::move(matrix)}};
  Sink sink(o.out, out);
  *sink << report.dump(2) << '\n';
  return kOk;
}

int cmd_stationarity(const Options& o, std::ostream& out) {
  const Json cfg = load_config(o);
  const Kernel k = io::kernel_from_json(cfg.at("kernel"));
  const MeasureSpec m =
      cfg.contains("measure") ? io::measure_from_json(cfg.at("measure")) : MeasureSpec::lebesgue();
  Eigen::Index dim = cfg.value("dim", Eigen::Index{2});
  if (k.dim())
    dim = *k.dim();
  else if (m.dim())
    dim = *m.dim();
  std::string path = o.battery;
  if (path.empty()) path = cfg.value("battery", std::string(MPFBM_DEFAULT_BATTERY));
  const Battery battery = io::battery_from_json(io::parse_json(io::read_file(path)), dim);
  const auto result =
      implication_suite(k, m, battery, o.tolerance.value_or(kHoldsTolerance));
  Json report = io::to_json(result);
  report["kernel"] = io::to_json(k);
  report["dim"] = dim;
  report["battery"] = Json{{"version", battery.version}, {"hash", io::battery_hash(battery)}};
  Sink sink(o.out, out);
  *sink << report.dump(2) << '\n';
  return result.violations.empty() ? kOk : kImplicationViolated;
}

int cmd_flow_project(const Options& o, std::ostream& out) {
  const Json cfg = load_config(o);
  const Kernel k = io::kernel_from_json(cfg.at("kernel"));
  const FlowSpec f = io::flow_from_json(cfg.at("flow"));
  std::vector<double> params;
  if (cfg.contains("parameters")) {
    params = cfg.at("parameters").get<std::vector<double>>();
  } else {
    for (int i = 0; i <= 8; ++i) params.push_back(f.lower() + (f.upper() - f.lower()) * i / 8.0);
  }
  std::vector<std::pair<double, double>> pairs;
  if (cfg.contains("pairs")) {
    for (const Json& pr : cfg.at("pairs")) pairs.push_back(pr.get<std::pair<double, double>>());
  } else {
    for (std::size_t i = 0; i < params.size(); ++i)
      for (std::size_t j = i; j < params.size(); ++j) pairs.emplace_back(params[i], params[j]);
  }

  if (o.check_mode) {
    const auto r = check_flow_preserves_fbm(k, f, pairs, o.tolerance.value_or(1e-12));
    const Json report{{"kernel", io::to_json(k)},
                      {"flow", io::to_json(f)},
                      {"verdict", r.holds ? "holds" : "fails"},
                      {"fitted_hurst", r.fitted_hurst},
                      {"fitted_scale", r.fitted_scale},
                      {"max_deviation", r.max_deviation},
                      {"tolerance", r.tolerance},
                      {"witness", Json::array({r.witness.first, r.witness.second})}};
    Sink sink(o.out, out);
    *sink << report.dump(2) << '\n';
    return kOk;
  }

  const ProjectedKernel pk = projected_kernel(k, f);
  std::ostringstream csv;
  csv << "u,v,C\n";
  for (const auto& [u, v] : pairs)
    csv << io::format_double(u) << ',' << io::format_double(v) << ','
        << io::format_double(pk(u, v)) << '\n';
  Sink sink(o.out, out);
  *sink << csv.str();

  if (o.sample) {
    const auto n = static_cast<Eigen::Index>(params.size());
    Eigen::MatrixXd c(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i; j < n; ++j) c(i, j) = c(j, i) = pk(params[i], params[j]);
    const SampleSet s = sample(cholesky_regularized(c), samples_of(cfg), seed_of(o, cfg),
                               threads_of(o, cfg));
    std::ostringstream paths;
    io::write_samples_csv(paths, s);
    if (o.out.empty())
      *sink << '\n' << paths.str();
    else
      write_file(o.out + ".paths.csv", paths.str());
  }
  return kOk;
}

int cmd_estimate_hurst(const Options& o, std::ostream& out) {
  std::string input = o.input;
  if (input.empty() && !o.config.empty()) input = load_config(o).value("input", std::string());
  if (input.empty()) throw InputError("estimate-hurst needs --input <csv>");
  std::istringstream is(io::read_file(input));
  const auto rows = io::read_numeric_csv(is);

  // One column is a single path; otherwise every row is a path.
  std::vector<std::vector<double>> paths;
  if (!rows.empty() && std::all_of(rows.begin(), rows.end(),
                                   [](const auto& r) { return r.size() == 1; })) {
    paths.emplace_back();
    for (const auto& r : rows) paths.back().push_back(r[0]);
  } else {
    paths = rows;
  }
  if (paths.empty()) throw DomainError("estimate-hurst: no path data");

  Json estimates = Json::array();
  Json warnings = Json::array();
  double mean = 0.0;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const HurstEstimate e = estimate_hurst(paths[i]);
    if (e.h_hat > 0.95)
      warnings.push_back("path " + std::to_string(i) +
                         ": h_hat near 1 suggests a ballistic (smooth) path");
    mean += e.h_hat;
    estimates.push_back(io::to_json(e));
  }
  mean /= static_cast<double>(paths.size());

  Json report;
  if (paths.size() == 1) {
    report = estimates[0];
  } else {
    report = Json{{"paths", paths.size()}, {"mean_h_hat", mean}, {"estimates", estimates}};
  }
  report["warnings"] = std::move(warnings);
  Sink sink(o.out, out);
  *sink << report.dump(2) << '\n';
  return kOk;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const NumericalError*>(&e)) return kNumericalError;
  if (dynamic_cast<const DomainError*>(&e) || dynamic_cast<const DimensionError*>(&e))
    return kDomainError;
  return kInputError;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiparameter fractional Brownian fields: covariances, simulation, checks"};
  app.require_subcommand(1);
  Options o;

  struct Command {
    const char* name;
    const char* help;
    std::function<int(const Options&, std::ostream&)> run;
  };
  const std::vector<Command> commands{
      {"covariance", "CSV of (s, t, cov) for the requested pairs", cmd_covariance},
      {"simulate", "Exact Gaussian samples on a grid, plus a JSON sidecar", cmd_simulate},
      {"increments", "Increment functionals and their covariance matrix", cmd_increments},
      {"stationarity", "Six stationarity checks and implication audit", cmd_stationarity},
      {"flow-project", "Projected kernel along a flow, or --check-mode fBm test",
       cmd_flow_project},
      {"estimate-hurst", "Quadratic-variation Hurst estimate of path CSV", cmd_estimate_hurst},
      {"psd-check", "Minimum eigenvalue audit of a covariance matrix", cmd_psd_check},
  };

  std::vector<CLI::App*> subs;
  for (const auto& c : commands) {
    CLI::App* s = app.add_subcommand(c.name, c.help);
    s->add_option("--config", o.config, "JSON run configuration");
    s->add_option("--out", o.out, "Output path (default stdout)");
    s->add_option("--seed", o.seed, "RNG seed (overrides config)");
    s->add_option("--tolerance", o.tolerance, "Verdict tolerance override");
    s->add_option("--threads", o.threads, "Sampling worker threads");
    s->add_option("--battery", o.battery, "Battery JSON file");
    s->add_option("--input", o.input, "Input CSV");
    s->add_flag("--sample", o.sample, "Also emit projected path samples");
    s->add_flag("--check-mode", o.check_mode, "Test whether the flow preserves fBm");
    subs.push_back(s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    try {
      return commands[i].run(o, out);
    } catch (const Json::exception& e) {
      err << "error: " << e.what() << '\n';
      return kInputError;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return exit_code_for(e);
    }
  }
  return kInputError;
}

}  // namespace mpfbm::cli
