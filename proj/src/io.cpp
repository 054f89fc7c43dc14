#include "mpfbm/io.hpp"

#include "mpfbm/error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace mpfbm::io {

namespace {

// Runs a JSON accessor, turning type and key errors into InputError.
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

Eigen::VectorXd vector_from_json(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + ": expected an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number())
      throw InputError(std::string(what) + ": expected numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

Json vector_to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

std::pair<double, double> domain_from_json(const Json& j) {
  const auto d = vector_from_json(j.at("domain"), "flow domain");
  if (d.size() != 2) throw InputError("flow domain must be [a, b]");
  return {d(0), d(1)};
}

Json union_to_json(const BoxUnion& u) {
  Json out = Json::array();
  for (const Box& b : u.boxes()) out.push_back(to_json(b));
  return out;
}

bool parse_double(std::string_view text, double& out) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  if (ec != std::errc()) throw NumericalError("format_double failed");
  return std::string(buf, ptr);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Json to_json(const Point& p) { return vector_to_json(p); }

Point point_from_json(const Json& j) {
  Point p = vector_from_json(j, "point");
  require_nonnegative(p);
  return p;
}

Json to_json(const Box& b) {
  return Json{{"lower", to_json(b.lower())}, {"upper", to_json(b.upper())}};
}

Box box_from_json(const Json& j) {
  return guarded("box", [&] {
    return Box(point_from_json(j.at("lower")), point_from_json(j.at("upper")));
  });
}

std::vector<Box> boxes_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected an array of boxes");
  std::vector<Box> out;
  for (const Json& b : j) out.push_back(box_from_json(b));
  return out;
}

Json to_json(const MeasureSpec& m) {
  if (m.is_lebesgue()) return Json{{"kind", "lebesgue"}};
  Json axes = Json::array();
  for (const AxisDensity& a : m.axes()) {
    Json samples = Json::array();
    for (const auto& [x, w] : a.samples()) samples.push_back(Json::array({x, w}));
    axes.push_back(std::move(samples));
  }
  return Json{{"kind", "product_density"}, {"axes", std::move(axes)}};
}

MeasureSpec measure_from_json(const Json& j) {
  return guarded("measure", [&] {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "lebesgue") return MeasureSpec::lebesgue();
    if (kind != "product_density") throw InputError("unknown measure kind: " + kind);
    std::vector<AxisDensity> axes;
    for (const Json& axis : j.at("axes")) {
      std::vector<std::pair<double, double>> samples;
      for (const Json& s : axis) {
        if (!s.is_array() || s.size() != 2) throw InputError("density sample must be [x, w]");
        samples.emplace_back(s[0].get<double>(), s[1].get<double>());
      }
      axes.emplace_back(std::move(samples));
    }
    return MeasureSpec::product_density(std::move(axes));
  });
}

Json to_json(const Kernel& k) {
  Json out{{"variant", k.variant_name()}};
  if (const auto* p = k.as_mpfbm()) {
    out["H"] = p->hurst;
    out["measure"] = to_json(p->measure);
  } else if (const auto* p = k.as_levy()) {
    out["H"] = p->hurst;
  } else if (const auto* p = k.as_sheet()) {
    out["H"] = p->hurst;
  }
  if (k.dim() && !k.as_sheet()) out["dim"] = *k.dim();
  return out;
}

Kernel kernel_from_json(const Json& j) {
  return guarded("kernel", [&] {
    const auto variant = j.at("variant").get<std::string>();
    std::optional<Eigen::Index> dim;
    if (j.contains("dim")) dim = j.at("dim").get<Eigen::Index>();
    if (variant == "mpfbm") {
      MeasureSpec m = j.contains("measure") ? measure_from_json(j.at("measure"))
                                            : MeasureSpec::lebesgue();
      return Kernel::mpfbm(j.at("H").get<double>(), std::move(m), dim);
    }
    if (variant == "levy") return Kernel::levy(j.at("H").get<double>(), dim);
    if (variant == "sheet") {
      auto k = Kernel::sheet(j.at("H").get<std::vector<double>>());
      if (dim) k.require_dim(*dim);
      return k;
    }
    throw InputError("unknown kernel variant: " + variant);
  });
}

Json to_json(const FlowSpec& f) {
  Json out{{"variant", f.variant_name()}};
  if (const auto* l = std::get_if<LinearFlow>(&f.variant())) {
    out["direction"] = vector_to_json(l->direction);
    out["offset"] = vector_to_json(l->offset);
    out["domain"] = Json::array({f.lower(), f.upper()});
    out["weak"] = f.weak();
  } else if (const auto* p = std::get_if<PowerFlow>(&f.variant())) {
    out["exponents"] = vector_to_json(p->exponents);
    out["scales"] = vector_to_json(p->scales);
    out["domain"] = Json::array({f.lower(), f.upper()});
  } else if (const auto* t = std::get_if<TabulatedFlow>(&f.variant())) {
    out["knots"] = t->knots;
    Json pts = Json::array();
    for (const Point& p : t->points) pts.push_back(to_json(p));
    out["points"] = std::move(pts);
    out["weak"] = f.weak();
  }
  return out;
}

FlowSpec flow_from_json(const Json& j) {
  return guarded("flow", [&] {
    const auto variant = j.at("variant").get<std::string>();
    const bool weak = j.value("weak", false);
    if (variant == "linear") {
      const auto [a, b] = domain_from_json(j);
      Eigen::VectorXd offset;
      if (j.contains("offset")) offset = vector_from_json(j.at("offset"), "flow offset");
      return FlowSpec::linear(vector_from_json(j.at("direction"), "flow direction"), a, b,
                              weak, offset);
    }
    if (variant == "power") {
      const auto [a, b] = domain_from_json(j);
      return FlowSpec::power(vector_from_json(j.at("exponents"), "flow exponents"),
                             vector_from_json(j.at("scales"), "flow scales"), a, b);
    }
    if (variant == "tabulated") {
      std::vector<Point> pts;
      for (const Json& p : j.at("points")) pts.push_back(point_from_json(p));
      return FlowSpec::tabulated(j.at("knots").get<std::vector<double>>(), std::move(pts),
                                 weak);
    }
    throw InputError("unknown flow variant: " + variant);
  });
}

Json to_json(const IncrementFunctional& f) {
  Json out = Json::array();
  for (const auto& t : f.terms())
    out.push_back(Json{{"point", to_json(t.point)}, {"coefficient", t.coefficient}});
  return out;
}

Json to_json(const StationarityReport& r) {
  Json witness_points = Json::array();
  for (const Point& p : r.witness.points) witness_points.push_back(to_json(p));
  return Json{{"property", std::string(property_name(r.property))},
              {"verdict", r.holds ? "holds" : "fails"},
              {"max_discrepancy", r.max_discrepancy},
              {"tolerance", r.tolerance},
              {"gray_zone", r.gray_zone},
              {"comparisons", r.comparisons},
              {"witness",
               Json{{"description", r.witness.description},
                    {"points", std::move(witness_points)},
                    {"reference", r.witness.reference},
                    {"transformed", r.witness.transformed}}},
              {"diagnostics", r.diagnostics}};
}

Json to_json(const ImplicationSuiteResult& r) {
  Json props = Json::object();
  for (const SuiteEntry& e : r.entries) {
    const std::string name(property_name(e.property));
    if (e.report) {
      props[name] = to_json(*e.report);
    } else {
      props[name] = Json{{"property", name},
                         {"verdict", "not_applicable"},
                         {"reason", e.not_applicable_reason}};
    }
  }
  Json violations = Json::array();
  for (const auto& v : r.violations)
    violations.push_back(Json{{"antecedent", std::string(property_name(v.antecedent))},
                              {"consequent", std::string(property_name(v.consequent))}});
  return Json{{"properties", std::move(props)}, {"implication_violations", std::move(violations)}};
}

Json to_json(const HurstEstimate& e) {
  return Json{{"h_hat", e.h_hat},
              {"stderr", e.std_error},
              {"r_squared", e.r_squared},
              {"scales_used", e.scales_used},
              {"log2_variations", e.log_variations}};
}

Json to_json(const std::vector<Battery>& batteries) {
  Json list = Json::array();
  std::string version;
  for (const Battery& b : batteries) {
    version = b.version;
    Json probes = Json::array(), shifts = Json::array(), motions = Json::array(),
         pairs = Json::array();
    for (const Point& p : b.probes) probes.push_back(to_json(p));
    for (const Point& p : b.shifts) shifts.push_back(to_json(p));
    for (const RigidMotion& g : b.motions) {
      Json rows = Json::array();
      for (Eigen::Index i = 0; i < g.rotation().rows(); ++i)
        rows.push_back(vector_to_json(g.rotation().row(i).transpose()));
      motions.push_back(Json{{"rotation", std::move(rows)},
                             {"translation", vector_to_json(g.translation())}});
    }
    for (const UnionPair& u : b.union_pairs)
      pairs.push_back(Json{{"first", union_to_json(u.first)},
                           {"second", union_to_json(u.second)}});
    list.push_back(Json{{"dim", b.dim},
                        {"probes", std::move(probes)},
                        {"shifts", std::move(shifts)},
                        {"motions", std::move(motions)},
                        {"union_pairs", std::move(pairs)}});
  }
  return Json{{"version", version}, {"batteries", std::move(list)}};
}

Battery battery_from_json(const Json& j, Eigen::Index dim) {
  return guarded("battery", [&] {
    for (const Json& entry : j.at("batteries")) {
      if (entry.at("dim").get<Eigen::Index>() != dim) continue;
      Battery b;
      b.version = j.at("version").get<std::string>();
      b.dim = dim;
      for (const Json& p : entry.at("probes")) b.probes.push_back(point_from_json(p));
      for (const Json& p : entry.at("shifts")) b.shifts.push_back(point_from_json(p));
      for (const Json& m : entry.at("motions")) {
        const Json& rows = m.at("rotation");
        Eigen::MatrixXd rot(static_cast<Eigen::Index>(rows.size()), dim);
        for (std::size_t i = 0; i < rows.size(); ++i)
          rot.row(static_cast<Eigen::Index>(i)) =
              vector_from_json(rows[i], "rotation row").transpose();
        b.motions.emplace_back(std::move(rot),
                               vector_from_json(m.at("translation"), "translation"));
      }
      for (const Json& u : entry.at("union_pairs"))
        b.union_pairs.push_back({BoxUnion(boxes_from_json(u.at("first"))),
                                 BoxUnion(boxes_from_json(u.at("second")))});
      for (const Point& p : b.probes) require_same_dim(p, Point::Zero(dim));
      return b;
    }
    throw InputError("battery file has no entry for dimension " + std::to_string(dim));
  });
}

std::string battery_hash(const Battery& b) {
  const std::string text = to_json(std::vector<Battery>{b}).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

void write_samples_csv(std::ostream& os, const SampleSet& s) {
  const auto cols = s.paths.cols();
  for (Eigen::Index j = 0; j < cols; ++j) os << (j ? "," : "") << 'p' << j;
  os << '\n';
  for (Eigen::Index i = 0; i < s.paths.rows(); ++i) {
    for (Eigen::Index j = 0; j < cols; ++j)
      os << (j ? "," : "") << format_double(s.paths(i, j));
    os << '\n';
  }
}

Json sample_sidecar(const SampleSet& s, const std::vector<Point>& points,
                    const std::optional<Kernel>& kernel, double min_eigenvalue) {
  Json pts = Json::array();
  for (const Point& p : points) pts.push_back(to_json(p));
  return Json{{"points", std::move(pts)},
              {"kernel", kernel ? to_json(*kernel) : Json(nullptr)},
              {"seed", s.seed},
              {"n_samples", s.paths.rows()},
              {"jitter_epsilon", s.jitter_epsilon},
              {"jitter_added", s.jitter_added},
              {"min_eigenvalue", min_eigenvalue}};
}

std::vector<std::vector<double>> read_numeric_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    std::vector<double> row;
    bool numeric = true;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      double v = 0.0;
      if (!parse_double(rest.substr(0, comma), v)) {
        numeric = false;
        break;
      }
      row.push_back(v);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;
      }
      throw InputError("non-numeric CSV row: " + line);
    }
    first = false;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace mpfbm::io
