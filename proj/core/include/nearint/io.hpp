#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "nearint/certificate.hpp"
#include "nearint/geometry.hpp"

namespace nearint {

struct PointSetMeta {
  std::string construction;
  std::map<std::string, std::string> params;
  std::string created;  // ISO-8601 UTC, empty when unknown
  std::optional<std::uint64_t> seed;
};

// JSON point-set file. Exact-mode coordinates are written as integers,
// float-mode values with 17 significant digits; reading either back gives
// the same bits.
struct PointSetFile {
  PointSet points;
  std::optional<Delta> delta;
  NormSpec norm;
  PointSetMeta meta;
};

std::string serialize_point_set(const PointSetFile& file);
PointSetFile parse_point_set(std::string_view text);
void write_point_set(const std::string& path, const PointSetFile& file);
PointSetFile read_point_set(const std::string& path);

// Result of a certify run. `certificate` is present iff status is
// "certified".
struct CertificateFile {
  Rational delta;
  int ell = 1;
  int max_degree = 0;
  std::optional<TrigCertificate> certificate;
  double best_grid_margin = 0.0;
  int best_degree = 0;
  std::uint64_t lp_solves = 0;
  double wall_time_seconds = 0.0;

  std::string_view status() const { return certificate ? "certified" : "infeasible"; }
};

CertificateFile make_certificate_file(const Rational& delta, int ell, int max_degree,
                                      const CertifyResult& result);

std::string serialize_certificate(const CertificateFile& file);
CertificateFile parse_certificate(std::string_view text);
void write_certificate(const std::string& path, const CertificateFile& file);
CertificateFile read_certificate(const std::string& path);

// Current UTC time as ISO-8601, or SOURCE_DATE_EPOCH when that is set.
std::string timestamp_now();

// Reads a delta string: always a rational in exact mode. In float mode "p/q"
// is read as a rational and anything else as the nearest double.
Delta parse_delta(std::string_view text, ArithmeticMode mode);

}  // namespace nearint
