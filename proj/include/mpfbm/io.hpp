#pragma once

#include "mpfbm/estimators.hpp"
#include "mpfbm/flows.hpp"
#include "mpfbm/gaussian.hpp"
#include "mpfbm/geometry.hpp"
#include "mpfbm/increments.hpp"
#include "mpfbm/kernels.hpp"
#include "mpfbm/measures.hpp"
#include "mpfbm/stationarity.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mpfbm::io {

using Json = nlohmann::json;

/// 17 significant digits, enough for any double to round-trip.
std::string format_double(double x);

/// Reads a whole file; throws InputError if it cannot be opened.
std::string read_file(const std::string& path);
/// Parses JSON text, mapping syntax errors to InputError.
Json parse_json(const std::string& text);

// Geometry: point = [x1,...,xN]; box = {"lower": [...], "upper": [...]}.
Json to_json(const Point& p);
Point point_from_json(const Json& j);
Json to_json(const Box& b);
Box box_from_json(const Json& j);
std::vector<Box> boxes_from_json(const Json& j);

// {"kind":"lebesgue"} | {"kind":"product_density","axes":[[[x,w],...],...]}
Json to_json(const MeasureSpec& m);
MeasureSpec measure_from_json(const Json& j);

// {"variant":"mpfbm","H":..,"measure":{..}} | {"variant":"levy","H":..} |
// {"variant":"sheet","H":[..]}; an optional "dim" fixes N.
Json to_json(const Kernel& k);
Kernel kernel_from_json(const Json& j);

// {"variant":"linear","direction":[..],"offset":[..],"domain":[a,b],"weak":b}
// {"variant":"power","exponents":[..],"scales":[..],"domain":[a,b]}
// {"variant":"tabulated","knots":[..],"points":[[..],..],"weak":b}
Json to_json(const FlowSpec& f);
FlowSpec flow_from_json(const Json& j);

Json to_json(const IncrementFunctional& f);
Json to_json(const StationarityReport& r);
Json to_json(const ImplicationSuiteResult& r);
Json to_json(const HurstEstimate& e);

/// {"version": .., "batteries": [{"dim": N, "probes": .., "shifts": ..,
///  "motions": [{"rotation": [[..]], "translation": [..]}],
///  "union_pairs": [{"first": [boxes], "second": [boxes]}]}]}
Json to_json(const std::vector<Battery>& batteries);
/// The entry for `dim`; throws InputError if the file has none.
Battery battery_from_json(const Json& j, Eigen::Index dim);
/// FNV-1a 64 of the canonical dump of a battery.
std::string battery_hash(const Battery& b);

/// Header p0..p{n-1}, then one row per sample.
void write_samples_csv(std::ostream& os, const SampleSet& s);
Json sample_sidecar(const SampleSet& s, const std::vector<Point>& points,
                    const std::optional<Kernel>& kernel, double min_eigenvalue);

/// Numeric CSV rows; a first row that does not parse as numbers is treated
/// as a header and skipped.
std::vector<std::vector<double>> read_numeric_csv(std::istream& is);

}  // namespace mpfbm::io
