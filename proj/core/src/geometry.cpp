#include "nearint/geometry.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <boost/multiprecision/cpp_int.hpp>
#include <fmt/format.h>

#include "nearint/errors.hpp"

namespace nearint {

namespace mp = boost::multiprecision;

std::string_view to_string(ArithmeticMode mode) {
  return mode == ArithmeticMode::exact_lattice ? "exact-lattice" : "certified-float";
}

ArithmeticMode parse_mode(std::string_view text) {
  if (text == "exact-lattice") return ArithmeticMode::exact_lattice;
  if (text == "certified-float") return ArithmeticMode::certified_float;
  throw DomainError(fmt::format("unknown arithmetic mode '{}'", text));
}

NormSpec NormSpec::lp(double p) {
  if (!std::isfinite(p) || p <= 1.0) {
    throw DomainError(fmt::format("lp norm needs finite p > 1, got {}", p));
  }
  NormSpec spec;
  spec.kind = Kind::lp;
  spec.p = p;
  return spec;
}

NormSpec NormSpec::parse(std::string_view text) {
  if (text == "l2" || text == "euclidean") return euclidean();
  if (text.substr(0, 3) == "lp:") {
    const std::string value(text.substr(3));
    char* end = nullptr;
    const double p = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size()) {
      throw DomainError(fmt::format("malformed norm '{}'", text));
    }
    if (p == 2.0) return euclidean();
    return lp(p);
  }
  throw DomainError(fmt::format("unknown norm '{}' (expected l2 or lp:<p>)", text));
}

std::string NormSpec::to_string() const {
  return is_euclidean() ? std::string("l2") : fmt::format("lp:{}", p);
}

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw DomainError("point dimension must be at least 1");
  for (double c : coords_) {
    if (!std::isfinite(c)) throw DomainError("point coordinates must be finite");
  }
}

Point::Point(std::vector<std::int64_t> lattice) : lattice_(std::move(lattice)) {
  if (lattice_.empty()) throw DomainError("point dimension must be at least 1");
  if (lattice_.size() > kMaxLatticeDim) {
    throw DomainError(fmt::format("lattice points support at most {} dimensions", kMaxLatticeDim));
  }
  coords_.reserve(lattice_.size());
  for (std::int64_t c : lattice_) {
    if (c > kLatticeCoordLimit || c < -kLatticeCoordLimit) {
      throw DomainError("lattice coordinate exceeds 2^60 in magnitude");
    }
    coords_.push_back(static_cast<double>(c));
  }
}

std::span<const std::int64_t> Point::lattice() const {
  if (!is_lattice()) throw DomainError("point is not a lattice point");
  return lattice_;
}

uint128 squared_distance(const Point& p, const Point& q) {
  if (p.dim() != q.dim()) throw DomainError("dimension mismatch");
  const auto a = p.lattice();
  const auto b = q.lattice();
  uint128 sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const __int128 d = static_cast<__int128>(a[i]) - b[i];
    const uint128 mag = static_cast<uint128>(d < 0 ? -d : d);
    sum += mag * mag;  // |d| <= 2^61, dim <= 32: no overflow
  }
  return sum;
}

namespace {

long double lp_distance(const Point& p, const Point& q, double exponent) {
  long double sum = 0.0L;
  long double scale = 0.0L;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    scale = std::max(scale, std::fabs(static_cast<long double>(p[i]) - q[i]));
  }
  if (scale == 0.0L) return 0.0L;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const long double d = std::fabs(static_cast<long double>(p[i]) - q[i]) / scale;
    sum += std::pow(d, static_cast<long double>(exponent));
  }
  return scale * std::pow(sum, 1.0L / exponent);
}

long double euclid_distance(const Point& p, const Point& q) {
  long double sum = 0.0L;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const long double d = static_cast<long double>(p[i]) - q[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

long double frac_gap_ld(long double t) {
  const long double r = t - std::floor(t);
  return std::min(r, 1.0L - r);
}

}  // namespace

Distance distance(const Point& p, const Point& q, const NormSpec& norm) {
  if (p.dim() != q.dim()) {
    throw DomainError(fmt::format("dimension mismatch: {} vs {}", p.dim(), q.dim()));
  }
  Distance out;
  if (norm.is_euclidean()) {
    if (p.is_lattice() && q.is_lattice()) {
      const uint128 n = squared_distance(p, q);
      out.squared = n;
      const uint128 a = isqrt(n);
      out.value = static_cast<double>(static_cast<long double>(a) +
                                      static_cast<long double>(n - a * a) /
                                          (std::sqrt(static_cast<long double>(n)) +
                                           static_cast<long double>(a)));
    } else {
      out.value = static_cast<double>(euclid_distance(p, q));
    }
  } else {
    out.value = static_cast<double>(lp_distance(p, q, norm.p));
  }
  return out;
}

PointSet::PointSet(std::vector<Point> points, ArithmeticMode mode, double radius_bound)
    : points_(std::move(points)), mode_(mode), radius_bound_(radius_bound) {
  if (!std::isfinite(radius_bound) || radius_bound < 0.0) {
    throw DomainError("radius bound must be a finite nonnegative number");
  }
  if (!points_.empty()) dim_ = points_.front().dim();
  for (const Point& p : points_) {
    if (p.dim() != dim_) {
      throw DomainError(fmt::format("point set mixes dimensions {} and {}", dim_, p.dim()));
    }
    const bool want_lattice = mode_ == ArithmeticMode::exact_lattice;
    if (p.is_lattice() != want_lattice) {
      throw DomainError(fmt::format("point set mixes arithmetic modes (declared {})",
                                    to_string(mode_)));
    }
  }
}

PointSet PointSet::subset(std::span<const std::size_t> indices) const {
  std::vector<Point> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(points_.at(i));
  return PointSet(std::move(out), mode_, radius_bound_);
}

double PointSet::max_norm(const NormSpec& norm) const {
  if (points_.empty()) return 0.0;
  const Point origin(std::vector<double>(dim_, 0.0));
  double best = 0.0;
  for (const Point& p : points_) {
    const Point real(std::vector<double>(p.coords().begin(), p.coords().end()));
    best = std::max(best, distance(real, origin, norm).value);
  }
  return best;
}

bool PointSet::contained(const NormSpec& norm) const {
  if (mode_ == ArithmeticMode::exact_lattice && norm.is_euclidean()) {
    const long double r = radius_bound_;
    const long double floor_r = std::floor(r);
    const Point origin(std::vector<std::int64_t>(dim_, 0));
    for (const Point& p : points_) {
      const uint128 n = squared_distance(p, origin);
      const uint128 a = isqrt(n);
      const auto a_ld = static_cast<long double>(a);
      if (a_ld + 1.0L <= floor_r) continue;  // sqrt(n) < a + 1 <= R
      if (a_ld > floor_r) return false;       // sqrt(n) >= a > R
      if (a * a == n) continue;               // sqrt(n) = a = floor(R) <= R
      // R = a + f with 0 <= f < 1: need n - a^2 <= 2af + f^2.
      const long double f = r - floor_r;
      if (static_cast<long double>(n - a * a) > 2.0L * a_ld * f + f * f) return false;
    }
    return true;
  }
  const double tol = radius_bound_ * 8.0 * DBL_EPSILON;
  return max_norm(norm) <= radius_bound_ + tol;
}

bool PointSet::has_duplicates() const {
  std::vector<std::size_t> order(points_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto key = [&](std::size_t i) { return points_[i].coords(); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto ka = key(a);
    const auto kb = key(b);
    return std::lexicographical_compare(ka.begin(), ka.end(), kb.begin(), kb.end());
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    const auto a = key(order[i - 1]);
    const auto b = key(order[i]);
    if (std::equal(a.begin(), a.end(), b.begin(), b.end())) return true;
  }
  return false;
}

Delta::Delta(const Rational& exact) : value_(to_double(exact)), exact_(exact) {
  require_open_half(exact);
}

Delta::Delta(double value) : value_(value) { require_open_half(value); }

std::string Delta::to_string() const {
  if (exact_) return nearint::to_string(*exact_);
  return fmt::format("{:.17g}", value_);
}

double frac_gap(double t) {
  if (!std::isfinite(t) || t < 0.0) {
    throw DomainError(fmt::format("frac_gap needs a finite nonnegative argument, got {}", t));
  }
  const double r = t - std::floor(t);
  return std::min(r, 1.0 - r);
}

uint128 isqrt(uint128 n) {
  if (n == 0) return 0;
  uint128 x = static_cast<uint128>(std::sqrt(static_cast<long double>(n)));
  // The long double estimate is within a few units; settle exactly.
  while (x > 0 && (x > n / x)) --x;
  while ((x + 1) <= n / (x + 1)) ++x;
  return x;
}

bool sqrt_gap_at_least(uint128 n, const Rational& delta) {
  require_open_half(delta);
  const uint128 a = isqrt(n);
  if (a * a == n) return false;
  const mp::int256_t p = delta.numerator();
  const mp::int256_t q = delta.denominator();
  mp::int256_t big_n = 0;
  big_n = static_cast<std::uint64_t>(n >> 64);
  big_n <<= 64;
  big_n += static_cast<std::uint64_t>(n);
  mp::int256_t big_a = 0;
  big_a = static_cast<std::uint64_t>(a >> 64);
  big_a <<= 64;
  big_a += static_cast<std::uint64_t>(a);
  const mp::int256_t lhs = big_n * q * q;
  // sqrt(n) < a + delta  <=>  n q^2 < (a q + p)^2
  const mp::int256_t upper = big_a * q + p;
  if (lhs < upper * upper) return false;
  // sqrt(n) > a + 1 - delta  <=>  n q^2 > ((a + 1) q - p)^2, with (a+1)q - p > 0
  const mp::int256_t lower = (big_a + 1) * q - p;
  if (lhs > lower * lower) return false;
  return true;
}

double sqrt_gap(uint128 n) {
  const uint128 a = isqrt(n);
  const long double f = static_cast<long double>(n - a * a) /
                        (std::sqrt(static_cast<long double>(n)) + static_cast<long double>(a));
  return static_cast<double>(std::min(f, 1.0L - f));
}

PairGap pair_gap(const Point& p, const Point& q, const Delta& delta, const NormSpec& norm,
                 ArithmeticMode mode) {
  if (p.dim() != q.dim()) throw DomainError("dimension mismatch");
  PairGap out;
  if (mode == ArithmeticMode::exact_lattice) {
    if (!norm.is_euclidean()) throw DomainError("exact mode supports only the Euclidean norm");
    if (!delta.exact()) throw DomainError("exact mode needs a rational delta");
    const uint128 n = squared_distance(p, q);
    out.gap = sqrt_gap(n);
    out.pass = sqrt_gap_at_least(n, *delta.exact());
    return out;
  }
  constexpr long double unit = LDBL_EPSILON / 2;
  const auto dim = static_cast<long double>(p.dim());
  long double dist = 0.0L;
  long double rel = 0.0L;
  if (norm.is_euclidean()) {
    dist = euclid_distance(p, q);
    rel = 2.0L * (dim + 4.0L) * unit;
  } else {
    dist = lp_distance(p, q, norm.p);
    // powl is accurate to a few ulps; budget generously per term.
    rel = 4.0L * (dim * (norm.p + 2.0L) + 8.0L) * unit;
  }
  const long double gap = frac_gap_ld(dist);
  out.gap = static_cast<double>(gap);
  // Rounding of the distance, plus conversion of the gap to double.
  out.error_bound = static_cast<double>(rel * dist) + DBL_EPSILON;
  const double slack = std::max(kFloatSlack, out.error_bound);
  out.pass = out.gap - slack >= delta.value();
  return out;
}

std::string format_report(const VerificationReport& r) {
  std::string out;
  out += fmt::format("result:        {}\n", r.pass ? "PASS" : "FAIL");
  out += fmt::format("mode:          {}\n", to_string(r.mode));
  out += fmt::format("norm:          {}\n", r.norm.to_string());
  out += fmt::format("delta:         {}\n", r.delta.to_string());
  out += fmt::format("pairs:         {}\n", r.pair_count);
  out += fmt::format("failing pairs: {}\n", r.failing_pairs);
  out += fmt::format("min gap:       {:.17g}\n", r.min_gap);
  if (r.worst_pair) {
    out += fmt::format("worst pair:    ({}, {})\n", r.worst_pair->first, r.worst_pair->second);
  }
  if (r.mode == ArithmeticMode::certified_float) {
    out += fmt::format("slack:         {:.3g} (declared {:.0e} for |coords| <= {:.0e})\n", r.slack,
                       kFloatSlack, kFloatSlackRange);
  }
  return out;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("NEARINT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace {

struct Partial {
  double min_gap = 0.5;
  std::size_t i = 0;
  std::size_t j = 0;
  bool has_pair = false;
  std::uint64_t pairs = 0;
  std::uint64_t failing = 0;
  double max_error = 0.0;

  void absorb(double gap, std::size_t a, std::size_t b) {
    if (!has_pair || gap < min_gap || (gap == min_gap && std::pair(a, b) < std::pair(i, j))) {
      min_gap = gap;
      i = a;
      j = b;
      has_pair = true;
    }
  }

  void merge(const Partial& o) {
    if (o.has_pair) absorb(o.min_gap, o.i, o.j);
    pairs += o.pairs;
    failing += o.failing;
    max_error = std::max(max_error, o.max_error);
  }
};

}  // namespace

VerificationReport pairwise_verify(const PointSet& set, const Delta& delta, const NormSpec& norm,
                                   unsigned threads) {
  if (set.empty()) throw DomainError("pairwise_verify needs at least one point");
  if (set.mode() == ArithmeticMode::exact_lattice) {
    if (!norm.is_euclidean()) throw DomainError("exact mode supports only the Euclidean norm");
    if (!delta.exact()) throw DomainError("exact mode needs a rational delta");
  }
  const std::size_t n = set.size();
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (threads == 0) threads = default_thread_count();
  if (total < 4096) threads = 1;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));

  auto work = [&](unsigned worker, Partial& part) {
    // Rows are dealt round-robin so workers see similar pair counts.
    for (std::size_t i = worker; i < n; i += threads) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const PairGap g = pair_gap(set[i], set[j], delta, norm, set.mode());
        part.absorb(g.gap, i, j);
        ++part.pairs;
        if (!g.pass) ++part.failing;
        part.max_error = std::max(part.max_error, g.error_bound);
      }
    }
  };

  std::vector<Partial> partials(threads);
  if (threads == 1) {
    work(0, partials[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w, std::ref(partials[w]));
    for (auto& t : pool) t.join();
  }
  Partial all;
  for (const Partial& p : partials) all.merge(p);

  VerificationReport report;
  report.delta = delta;
  report.mode = set.mode();
  report.norm = norm;
  report.pair_count = all.pairs;
  report.failing_pairs = all.failing;
  report.pass = all.failing == 0;
  report.min_gap = all.has_pair ? all.min_gap : 0.5;
  if (all.has_pair) report.worst_pair = std::pair(all.i, all.j);
  if (set.mode() == ArithmeticMode::certified_float) {
    report.slack = std::max(kFloatSlack, all.max_error);
  }
  return report;
}

}  // namespace nearint
