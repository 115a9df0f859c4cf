#include "nearint/io.hpp"

#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "nearint/errors.hpp"

namespace nearint {
namespace {

using json = nlohmann::ordered_json;

constexpr std::string_view kPointSetFormat = "nearint-pointset";
constexpr std::string_view kCertificateFormat = "nearint-certificate";
constexpr int kVersion = 1;

std::string format_double(double v) {
  if (!std::isfinite(v)) throw DomainError("cannot serialize a non-finite number");
  return fmt::format("{:.17g}", v);
}

bool is_flat_array(const json& j) {
  for (const auto& e : j) {
    if (e.is_structured()) return false;
  }
  return true;
}

// nlohmann writes the shortest round-trip form; files promise 17 digits.
void dump(const json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner + json(key).dump() + ": ";
        dump(value, out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      if (is_flat_array(j)) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i > 0) out += ", ";
          dump(j[i], out, indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ",\n";
        out += inner;
        dump(j[i], out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

std::string to_text(const json& j) {
  std::string out;
  dump(j, out, 0);
  out += "\n";
  return out;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(fmt::format("malformed JSON: {}", e.what()));
  }
}

const json& field(const json& j, std::string_view key) {
  const auto it = j.find(std::string(key));
  if (it == j.end()) throw DomainError(fmt::format("missing field '{}'", key));
  return *it;
}

template <typename T>
T get(const json& j, std::string_view key) {
  try {
    return field(j, key).get<T>();
  } catch (const json::exception& e) {
    throw DomainError(fmt::format("field '{}' has the wrong type: {}", key, e.what()));
  }
}

double get_number(const json& j, std::string_view key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw DomainError(fmt::format("field '{}' must be a number", key));
  return v.get<double>();
}

void check_format(const json& j, std::string_view format) {
  if (!j.is_object()) throw DomainError("top-level JSON value must be an object");
  if (get<std::string>(j, "format") != format) {
    throw DomainError(fmt::format("not a {} file", format));
  }
  const int version = get<int>(j, "version");
  if (version != kVersion) throw DomainError(fmt::format("unsupported file version {}", version));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError(fmt::format("cannot open '{}' for reading", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError(fmt::format("cannot open '{}' for writing", path));
  out << text;
  if (!out) throw DomainError(fmt::format("failed writing '{}'", path));
}

}  // namespace

std::string timestamp_now() {
  std::time_t t = std::time(nullptr);
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH"); env != nullptr && *env != '\0') {
    t = static_cast<std::time_t>(std::strtoll(env, nullptr, 10));
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Delta parse_delta(std::string_view text, ArithmeticMode mode) {
  // Float mode reads decimals with strtod so a written delta comes back as
  // the same double; a rational numerator/denominator pair may not.
  if (mode == ArithmeticMode::exact_lattice || text.find('/') != std::string_view::npos) {
    return Delta(parse_rational(text));
  }
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw DomainError(fmt::format("cannot parse delta '{}'", text));
  }
  return Delta(v);
}

std::string serialize_point_set(const PointSetFile& file) {
  const PointSet& set = file.points;
  json j;
  j["format"] = kPointSetFormat;
  j["version"] = kVersion;
  j["dim"] = set.dim();
  j["mode"] = to_string(set.mode());
  j["radius_bound"] = set.radius_bound();
  j["norm"] = file.norm.to_string();
  if (file.delta) j["delta"] = file.delta->to_string();
  json points = json::array();
  for (const Point& p : set) {
    if (p.is_lattice()) {
      json row = json::array();
      for (std::int64_t v : p.lattice()) row.push_back(v);
      points.push_back(std::move(row));
    } else {
      json row = json::array();
      for (double v : p.coords()) row.push_back(v);
      points.push_back(std::move(row));
    }
  }
  j["points"] = std::move(points);
  json meta;
  meta["construction"] = file.meta.construction;
  meta["params"] = json::object();
  for (const auto& [k, v] : file.meta.params) meta["params"][k] = v;
  meta["count"] = set.size();
  meta["created"] = file.meta.created;
  if (file.meta.seed) meta["seed"] = *file.meta.seed;
  j["meta"] = std::move(meta);
  return to_text(j);
}

PointSetFile parse_point_set(std::string_view text) {
  const json j = parse_json(text);
  check_format(j, kPointSetFormat);
  const auto dim = get<std::size_t>(j, "dim");
  const ArithmeticMode mode = parse_mode(get<std::string>(j, "mode"));
  const double radius = get_number(j, "radius_bound");

  const json& rows = field(j, "points");
  if (!rows.is_array()) throw DomainError("field 'points' must be an array");
  std::vector<Point> points;
  points.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != dim) {
      throw DomainError(fmt::format("point {} does not have {} coordinates", i, dim));
    }
    if (mode == ArithmeticMode::exact_lattice) {
      std::vector<std::int64_t> c;
      for (const json& v : row) {
        if (!v.is_number_integer()) {
          throw DomainError(fmt::format("point {} has a non-integer coordinate in exact mode", i));
        }
        c.push_back(v.get<std::int64_t>());
      }
      points.emplace_back(std::move(c));
    } else {
      std::vector<double> c;
      for (const json& v : row) {
        if (!v.is_number()) throw DomainError(fmt::format("point {} has a non-numeric coordinate", i));
        c.push_back(v.get<double>());
      }
      points.emplace_back(std::move(c));
    }
  }

  PointSetFile file;
  file.points = PointSet(std::move(points), mode, radius);
  file.norm = NormSpec::parse(get<std::string>(j, "norm"));
  if (j.contains("delta")) file.delta = parse_delta(get<std::string>(j, "delta"), mode);
  if (j.contains("meta")) {
    const json& meta = j["meta"];
    if (meta.contains("construction")) file.meta.construction = get<std::string>(meta, "construction");
    if (meta.contains("params")) {
      for (const auto& [k, v] : meta["params"].items()) {
        if (!v.is_string()) throw DomainError(fmt::format("meta parameter '{}' must be a string", k));
        file.meta.params[k] = v.get<std::string>();
      }
    }
    if (meta.contains("created")) file.meta.created = get<std::string>(meta, "created");
    if (meta.contains("seed")) file.meta.seed = get<std::uint64_t>(meta, "seed");
    if (meta.contains("count") && get<std::size_t>(meta, "count") != file.points.size()) {
      throw DomainError("meta count does not match the number of points");
    }
  }
  return file;
}

void write_point_set(const std::string& path, const PointSetFile& file) {
  write_file(path, serialize_point_set(file));
}

PointSetFile read_point_set(const std::string& path) { return parse_point_set(read_file(path)); }

CertificateFile make_certificate_file(const Rational& delta, int ell, int max_degree,
                                      const CertifyResult& result) {
  CertificateFile file;
  file.delta = delta;
  file.ell = ell;
  file.max_degree = max_degree;
  file.certificate = result.certificate;
  file.best_grid_margin = result.best_grid_margin;
  file.best_degree = result.best_degree;
  file.lp_solves = result.lp_solves;
  file.wall_time_seconds = result.wall_time_seconds;
  return file;
}

std::string serialize_certificate(const CertificateFile& file) {
  json j;
  j["format"] = kCertificateFormat;
  j["version"] = kVersion;
  j["status"] = file.status();
  j["delta"] = to_string(file.delta);
  j["ell"] = file.ell;
  j["max_degree"] = file.max_degree;
  j["best_grid_margin"] = file.best_grid_margin;
  j["best_degree"] = file.best_degree;
  j["lp_solves"] = file.lp_solves;
  j["wall_time_seconds"] = file.wall_time_seconds;
  if (const auto& c = file.certificate) {
    json cert;
    cert["degree"] = c->degree;
    cert["margin"] = c->margin;
    cert["grid_step"] = c->grid_step;
    cert["derivative_bound"] = c->derivative_bound;
    cert["coeffs"] = c->coeffs;
    cert["lp_grid_points"] = c->lp_grid_points;
    cert["certify_grid_points"] = c->certify_grid_points;
    cert["degree_schedule"] = c->degree_schedule;
    cert["wall_time_seconds"] = c->wall_time_seconds;
    j["certificate"] = std::move(cert);
  }
  return to_text(j);
}

CertificateFile parse_certificate(std::string_view text) {
  const json j = parse_json(text);
  check_format(j, kCertificateFormat);
  CertificateFile file;
  file.delta = parse_rational(get<std::string>(j, "delta"));
  file.ell = get<int>(j, "ell");
  file.max_degree = get<int>(j, "max_degree");
  file.best_grid_margin = get_number(j, "best_grid_margin");
  file.best_degree = get<int>(j, "best_degree");
  file.lp_solves = get<std::uint64_t>(j, "lp_solves");
  file.wall_time_seconds = get_number(j, "wall_time_seconds");
  const auto status = get<std::string>(j, "status");
  if (status == "certified") {
    const json& c = field(j, "certificate");
    TrigCertificate cert;
    cert.delta = file.delta;
    cert.ell = file.ell;
    cert.degree = get<int>(c, "degree");
    cert.margin = get_number(c, "margin");
    cert.grid_step = get_number(c, "grid_step");
    cert.derivative_bound = get_number(c, "derivative_bound");
    for (const json& v : field(c, "coeffs")) {
      if (!v.is_number()) throw DomainError("certificate coefficients must be numbers");
      cert.coeffs.push_back(v.get<double>());
    }
    cert.lp_grid_points = get<std::size_t>(c, "lp_grid_points");
    cert.certify_grid_points = get<std::size_t>(c, "certify_grid_points");
    cert.degree_schedule = get<std::vector<int>>(c, "degree_schedule");
    cert.wall_time_seconds = get_number(c, "wall_time_seconds");
    file.certificate = std::move(cert);
  } else if (status != "infeasible") {
    throw DomainError(fmt::format("unknown certificate status '{}'", status));
  }
  return file;
}

void write_certificate(const std::string& path, const CertificateFile& file) {
  write_file(path, serialize_certificate(file));
}

CertificateFile read_certificate(const std::string& path) {
  return parse_certificate(read_file(path));
}

}  // namespace nearint
