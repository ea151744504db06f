#include "coalbranch/params_json.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace coalbranch {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end())
    throw std::runtime_error(std::string("missing field '") + field + "'");
  return *it;
}

template <class T>
T field_as(const json& j, const char* field) {
  try {
    return require(j, field).get<T>();
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("invalid field '") + field + "': " + e.what());
  }
}

json measure_to_json(const AtomicMeasure& m) {
  json arr = json::array();
  for (const Atom& a : m.atoms())
    arr.push_back(json{{"point", a.point}, {"weight", a.weight}});
  return arr;
}

std::vector<Atom> atoms_from_json(const json& arr, const char* field) {
  if (!arr.is_array())
    throw std::runtime_error(std::string("invalid field '") + field +
                             "': expected an array of measures");
  std::vector<Atom> atoms;
  for (const json& ja : arr) {
    Atom a;
    a.point = field_as<std::vector<double>>(ja, "point");
    a.weight = field_as<double>(ja, "weight");
    atoms.push_back(std::move(a));
  }
  return atoms;
}

SquareMatrix matrix_from_json(const json& j, const char* field, int d) {
  const auto rows = field_as<std::vector<std::vector<double>>>(j, field);
  if (static_cast<int>(rows.size()) != d)
    throw std::runtime_error(std::string("invalid field '") + field +
                             "': expected " + std::to_string(d) + " rows");
  SquareMatrix m(d);
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != d)
      throw std::runtime_error(std::string("invalid field '") + field +
                               "': row length mismatch");
    for (int jcol = 0; jcol < d; ++jcol)
      m(i, jcol) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(jcol)];
  }
  return m;
}

json matrix_to_json(const SquareMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.size(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<AtomicMeasure> measures_from_json(const json& j, const char* field,
                                              int d, Domain domain) {
  const json& arr = require(j, field);
  if (!arr.is_array() || static_cast<int>(arr.size()) != d)
    throw std::runtime_error(std::string("invalid field '") + field +
                             "': expected one measure per type");
  std::vector<AtomicMeasure> out;
  out.reserve(arr.size());
  for (const json& jm : arr)
    out.emplace_back(d, domain, atoms_from_json(jm, field));
  return out;
}

}  // namespace

json branching_to_json(const BranchingParams& p) {
  json j;
  j["d"] = p.d;
  j["B"] = matrix_to_json(p.B);
  j["c"] = p.c;
  json mu = json::array();
  for (const AtomicMeasure& m : p.mu) mu.push_back(measure_to_json(m));
  j["mu"] = std::move(mu);
  return j;
}

BranchingParams branching_from_json(const json& j) {
  const int d = field_as<int>(j, "d");
  if (d <= 0) throw std::runtime_error("invalid field 'd': must be positive");
  return BranchingParams(d, matrix_from_json(j, "B", d),
                         field_as<std::vector<double>>(j, "c"),
                         measures_from_json(j, "mu", d, Domain::kPositiveOrthant));
}

json coalescent_to_json(const CoalescentParams& p) {
  json j;
  j["d"] = p.d;
  j["rho"] = matrix_to_json(p.rho);
  json q = json::array();
  for (const AtomicMeasure& m : p.Q) q.push_back(measure_to_json(m));
  j["Q"] = std::move(q);
  return j;
}

CoalescentParams coalescent_from_json(const json& j) {
  const int d = field_as<int>(j, "d");
  if (d <= 0) throw std::runtime_error("invalid field 'd': must be positive");
  return CoalescentParams(d, matrix_from_json(j, "rho", d),
                          measures_from_json(j, "Q", d, Domain::kUnitCube));
}

ParamsKind detect_params_kind(const json& j) {
  const bool has_branch = j.contains("B") || j.contains("mu");
  const bool has_coal = j.contains("rho") || j.contains("Q");
  if (has_branch == has_coal)
    throw std::runtime_error(
        "cannot tell parameter kind: need either fields 'B'/'mu' or 'rho'/'Q'");
  return has_branch ? ParamsKind::kBranching : ParamsKind::kCoalescent;
}

json report_to_json(const ValidationReport& report) {
  json checks = json::array();
  for (const ValidationCheck& c : report.checks) {
    json jc{{"name", c.name}, {"value", c.value}, {"passed", c.passed}};
    jc["threshold"] = std::isfinite(c.threshold) ? json(c.threshold) : json();
    checks.push_back(std::move(jc));
  }
  return json{{"ok", report.ok}, {"checks", std::move(checks)}};
}

json report_to_json(const DualityReport& report) {
  auto moment = [](const MomentEstimate& m) {
    return json{{"value", m.value}, {"stderr", m.std_error}, {"reps", m.reps}};
  };
  return json{{"forward", moment(report.forward)},
              {"backward", moment(report.backward)},
              {"zscore", report.zscore},
              {"passed", report.passed}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
  }
}

}  // namespace coalbranch
