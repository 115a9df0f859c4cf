#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nearint/rational.hpp"

namespace nearint {

__extension__ typedef unsigned __int128 uint128;

// Declared numerical slack for certified-float verification. Valid for
// coordinates of magnitude at most kFloatSlackRange.
inline constexpr double kFloatSlack = 1e-9;
inline constexpr double kFloatSlackRange = 1e7;

// Lattice coordinates are bounded so that squared distances in up to
// kMaxLatticeDim dimensions fit in an unsigned 128-bit integer.
inline constexpr std::int64_t kLatticeCoordLimit = std::int64_t{1} << 60;
inline constexpr std::size_t kMaxLatticeDim = 32;

enum class ArithmeticMode { exact_lattice, certified_float };

std::string_view to_string(ArithmeticMode mode);
ArithmeticMode parse_mode(std::string_view text);

struct NormSpec {
  enum class Kind { euclidean, lp };

  Kind kind = Kind::euclidean;
  double p = 2.0;

  static NormSpec euclidean() { return {}; }
  // p must be finite and > 1; the l1 and l-infinity norms are not supported.
  static NormSpec lp(double p);
  // "l2" or "lp:<p>".
  static NormSpec parse(std::string_view text);

  bool is_euclidean() const { return kind == Kind::euclidean; }
  std::string to_string() const;
};

class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  explicit Point(std::vector<std::int64_t> lattice);
  Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

  static Point lattice_point(std::initializer_list<std::int64_t> coords) {
    return Point(std::vector<std::int64_t>(coords));
  }

  std::size_t dim() const { return coords_.size(); }
  bool is_lattice() const { return !lattice_.empty(); }

  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }
  // Throws DomainError for non-lattice points.
  std::span<const std::int64_t> lattice() const;

  friend bool operator==(const Point& a, const Point& b) {
    return a.coords_ == b.coords_ && a.lattice_ == b.lattice_;
  }

 private:
  std::vector<double> coords_;
  std::vector<std::int64_t> lattice_;
};

struct Distance {
  double value = 0.0;
  // Exact squared Euclidean distance, present for two lattice points.
  std::optional<uint128> squared;
};

Distance distance(const Point& p, const Point& q, const NormSpec& norm = NormSpec::euclidean());

// Exact squared Euclidean distance of two lattice points.
uint128 squared_distance(const Point& p, const Point& q);

class PointSet {
 public:
  PointSet() = default;
  // All points must share one dimension and match the arithmetic mode
  // (lattice points for exact_lattice, real points for certified_float).
  PointSet(std::vector<Point> points, ArithmeticMode mode, double radius_bound);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  std::size_t dim() const { return dim_; }
  ArithmeticMode mode() const { return mode_; }
  double radius_bound() const { return radius_bound_; }

  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  // Subset in the given index order, keeping mode and radius bound.
  PointSet subset(std::span<const std::size_t> indices) const;

  double max_norm(const NormSpec& norm = NormSpec::euclidean()) const;
  bool contained(const NormSpec& norm = NormSpec::euclidean()) const;
  bool has_duplicates() const;

 private:
  std::vector<Point> points_;
  std::size_t dim_ = 0;
  ArithmeticMode mode_ = ArithmeticMode::certified_float;
  double radius_bound_ = 0.0;
};

// Gap threshold. Exact-mode verification needs the rational form; float mode
// only uses the real value.
class Delta {
 public:
  Delta(const Rational& exact);  // NOLINT(google-explicit-constructor)
  Delta(double value);           // NOLINT(google-explicit-constructor)

  double value() const { return value_; }
  const std::optional<Rational>& exact() const { return exact_; }
  std::string to_string() const;

 private:
  double value_;
  std::optional<Rational> exact_;
};

// Distance from t to the nearest integer. Throws DomainError for negative or
// non-finite t.
double frac_gap(double t);

// Integer square root, floor(sqrt(n)).
uint128 isqrt(uint128 n);

// True iff the distance from sqrt(n) to the nearest integer is at least delta.
// Decided with integer arithmetic only.
bool sqrt_gap_at_least(uint128 n, const Rational& delta);

// Gap of sqrt(n) computed as (n - a^2) / (sqrt(n) + a), accurate for large n.
double sqrt_gap(uint128 n);

struct PairGap {
  double gap = 0.0;
  // Rigorous bound on |computed gap - true gap| (zero in exact mode).
  double error_bound = 0.0;
  bool pass = false;
};

PairGap pair_gap(const Point& p, const Point& q, const Delta& delta, const NormSpec& norm,
                 ArithmeticMode mode);

struct VerificationReport {
  bool pass = true;
  Delta delta = 0.25;
  double min_gap = 0.5;
  std::optional<std::pair<std::size_t, std::size_t>> worst_pair;
  std::uint64_t pair_count = 0;
  std::uint64_t failing_pairs = 0;
  ArithmeticMode mode = ArithmeticMode::exact_lattice;
  // Slack actually applied in float mode: max(kFloatSlack, largest rounding
  // bound seen). Zero in exact mode.
  double slack = 0.0;
  NormSpec norm;
};

std::string format_report(const VerificationReport& report);

// Reads NEARINT_THREADS, falling back to the hardware concurrency.
unsigned default_thread_count();

// Checks every unordered pair. Exact mode requires the Euclidean norm and a
// rational delta. The result does not depend on the thread count.
VerificationReport pairwise_verify(const PointSet& set, const Delta& delta,
                                   const NormSpec& norm = NormSpec::euclidean(),
                                   unsigned threads = 0);

}  // namespace nearint
