#ifndef CURVESET_IO_HPP
#define CURVESET_IO_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "curveset/evaluation.hpp"

namespace curveset {

inline constexpr const char* kToolVersion = "curveset 0.1.0";

/// An instance together with the per-record ids from its dataset file.
struct LoadedDataset {
  ClusteringInstance instance;
  std::vector<std::string> ids;
};

namespace detail {

inline nlohmann::json points_to_json(const std::vector<Point>& pts) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Point& p : pts) {
    nlohmann::json coords = nlohmann::json::array();
    for (double c : p.coords()) coords.push_back(c);
    arr.push_back(std::move(coords));
  }
  return arr;
}

inline std::vector<Point> points_from_json(const nlohmann::json& arr,
                                           const std::string& where) {
  if (!arr.is_array() || arr.empty())
    throw std::runtime_error(where + ": points must be a nonempty array");
  std::vector<Point> pts;
  pts.reserve(arr.size());
  for (const nlohmann::json& row : arr) {
    if (!row.is_array() || row.empty())
      throw std::runtime_error(where + ": each point must be a nonempty array");
    std::vector<double> coords;
    coords.reserve(row.size());
    for (const nlohmann::json& v : row) {
      if (!v.is_number())
        throw std::runtime_error(where + ": coordinates must be numbers");
      coords.push_back(v.get<double>());
    }
    pts.emplace_back(std::move(coords));
  }
  return pts;
}

inline GeomObject object_from_json(const nlohmann::json& rec,
                                   const std::string& where) {
  const std::string kind = rec.at("kind").get<std::string>();
  std::vector<Point> pts = points_from_json(rec.at("points"), where);
  if (kind == "curve") return Curve(std::move(pts));
  if (kind == "pointset") return PointSet(std::move(pts));
  throw std::runtime_error(where + ": kind must be 'curve' or 'pointset'");
}

inline nlohmann::json object_to_json(const GeomObject& o) {
  nlohmann::json rec;
  rec["kind"] = is_curve(o) ? "curve" : "pointset";
  rec["points"] = points_to_json(object_points(o));
  return rec;
}

}  // namespace detail

/// Loads a line-delimited dataset: one JSON record per line with fields
/// id, kind, points and optional weight. Weights must be on all records or
/// none; they are normalized by make_instance.
inline LoadedDataset load_dataset(const std::string& path, MetricKind metric,
                                  int k, int l) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file '" + path + "'");
  std::vector<GeomObject> objects;
  std::vector<double> weights;
  std::vector<std::string> ids;
  std::string line;
  std::size_t lineno = 0;
  bool saw_weight = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(where + ": malformed record: " + e.what());
    }
    try {
      ids.push_back(rec.at("id").get<std::string>());
      objects.push_back(detail::object_from_json(rec, where));
      if (rec.contains("weight")) {
        if (!objects.empty() && objects.size() - 1 != weights.size())
          throw std::runtime_error("weight present on some records only");
        const double w = rec.at("weight").get<double>();
        if (!(w > 0.0))
          throw std::runtime_error("weight must be positive");
        weights.push_back(w);
        saw_weight = true;
      } else if (saw_weight) {
        throw std::runtime_error("weight present on some records only");
      }
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(where + ": malformed record: " + e.what());
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(where + ": " + e.what());
    } catch (const std::runtime_error& e) {
      const std::string msg = e.what();
      if (msg.rfind(path, 0) == 0) throw;
      throw std::runtime_error(where + ": " + msg);
    }
  }
  if (objects.empty())
    throw std::runtime_error(path + ": dataset has no records");
  if (saw_weight && weights.size() != objects.size())
    throw std::runtime_error(path + ": weight present on some records only");
  LoadedDataset out;
  out.instance =
      make_instance(std::move(objects), std::move(weights), metric, k, l);
  out.ids = std::move(ids);
  return out;
}

/// Writes a dataset as line-delimited records (no weights field when the
/// weights are uniform).
inline void save_dataset(const std::string& path,
                         const ClusteringInstance& inst,
                         const std::vector<std::string>& ids,
                         bool write_weights = false) {
  if (ids.size() != inst.objects.size())
    throw std::invalid_argument("save_dataset: one id per object required");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dataset file '" + path + "'");
  for (std::size_t i = 0; i < inst.objects.size(); ++i) {
    nlohmann::json rec = detail::object_to_json(inst.objects[i]);
    rec["id"] = ids[i];
    if (write_weights) rec["weight"] = inst.weights[i];
    out << rec.dump() << "\n";
  }
}

/// Self-contained coreset file: header plus entries with inlined objects.
inline void save_coreset(const std::string& path, const WeightedCoreset& cs,
                         const std::vector<std::string>& ids,
                         std::optional<std::string> timestamp = std::nullopt) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write coreset file '" + path + "'");
  nlohmann::json header;
  header["metric"] = metric_name(cs.meta.metric);
  header["k"] = cs.meta.k;
  header["l"] = cs.meta.l;
  header["eps"] = cs.meta.eps;
  header["a"] = cs.meta.sample_count;
  header["S"] = cs.meta.total_sensitivity;
  header["opt_prime"] = cs.meta.opt_prime;
  header["seed"] = cs.meta.seed;
  header["alpha"] = cs.meta.alpha;
  header["beta"] = cs.meta.beta;
  header["size_constant"] = cs.meta.size_constant;
  header["delta_exponent"] = cs.meta.delta_exponent;
  header["version"] = kToolVersion;
  if (timestamp) header["timestamp"] = *timestamp;
  nlohmann::json entries = nlohmann::json::array();
  for (const WeightedEntry& e : cs.entries) {
    nlohmann::json rec = detail::object_to_json(e.object);
    rec["id"] = e.source_index < ids.size() ? ids[e.source_index]
                                            : std::to_string(e.source_index);
    rec["weight"] = e.weight;
    rec["source_index"] = e.source_index;
    entries.push_back(std::move(rec));
  }
  nlohmann::json doc;
  doc["header"] = std::move(header);
  doc["entries"] = std::move(entries);
  out << doc.dump(2) << "\n";
}

struct LoadedCoreset {
  WeightedCoreset coreset;
  std::vector<std::string> ids;  // per entry
};

inline LoadedCoreset load_coreset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open coreset file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": malformed coreset file: " + e.what());
  }
  try {
    const nlohmann::json& header = doc.at("header");
    LoadedCoreset out;
    CoresetMeta& meta = out.coreset.meta;
    meta.metric = parse_metric(header.at("metric").get<std::string>());
    meta.k = header.at("k").get<int>();
    meta.l = header.at("l").get<int>();
    meta.eps = header.at("eps").get<double>();
    meta.sample_count = header.at("a").get<std::size_t>();
    meta.total_sensitivity = header.at("S").get<double>();
    meta.opt_prime = header.at("opt_prime").get<double>();
    meta.seed = header.at("seed").get<std::uint64_t>();
    meta.alpha = header.at("alpha").get<double>();
    meta.beta = header.at("beta").get<double>();
    meta.size_constant = header.at("size_constant").get<double>();
    meta.delta_exponent = header.at("delta_exponent").get<double>();
    for (const nlohmann::json& rec : doc.at("entries")) {
      const double weight = rec.at("weight").get<double>();
      if (!(weight > 0.0))
        throw std::runtime_error(path + ": entry weight must be positive");
      out.coreset.entries.push_back(
          WeightedEntry{detail::object_from_json(rec, path), weight,
                        rec.at("source_index").get<std::size_t>()});
      out.ids.push_back(rec.at("id").get<std::string>());
    }
    if (out.coreset.entries.size() != meta.sample_count)
      throw std::runtime_error(path + ": entry count does not match header a");
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": malformed coreset file: " + e.what());
  }
}

/// Serialized certification report.
inline void save_report(const std::string& path, const ErrorReport& rep,
                        const CandidatePool& pool) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report file '" + path + "'");
  nlohmann::json doc;
  doc["eps"] = rep.eps;
  doc["max_error"] = rep.max_error;
  doc["mean_error"] = rep.mean_error;
  doc["pass"] = rep.pass;
  nlohmann::json cands = nlohmann::json::array();
  for (std::size_t i = 0; i < rep.costs.size(); ++i) {
    nlohmann::json c;
    c["provenance"] = provenance_name(pool.provenance[i]);
    c["cost"] = rep.costs[i];
    c["estimate"] = rep.estimates[i];
    cands.push_back(std::move(c));
  }
  doc["candidates"] = std::move(cands);
  nlohmann::json zero = nlohmann::json::array();
  for (std::size_t z = 0; z < rep.zero_cost_indices.size(); ++z) {
    nlohmann::json c;
    c["index"] = rep.zero_cost_indices[z];
    c["abs_error"] = rep.zero_cost_abs[z];
    zero.push_back(std::move(c));
  }
  doc["zero_cost"] = std::move(zero);
  out << doc.dump(2) << "\n";
}

}  // namespace curveset

#endif  // CURVESET_IO_HPP
