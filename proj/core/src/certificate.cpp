#include "nearint/certificate.hpp"

#include <algorithm>
#include <cfloat>
#include <chrono>
#include <cmath>
#include <numbers>
#include <type_traits>

#include <fmt/format.h>

#include "nearint/errors.hpp"
#include "nearint/simplex.hpp"

namespace nearint {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_args(const Rational& delta, int ell) {
  require_open_half(delta);
  if (ell < 1) throw DomainError(fmt::format("ell must be a positive integer, got {}", ell));
}

// Clenshaw recurrence for sum_k c_k cos(k x - phi):
//   b_k = c_k + 2 cos(x) b_{k+1} - b_{k+2},  T = b_1 cos(x - phi) - b_2 cos(phi).
template <typename F>
F clenshaw(std::span<const double> coeffs, F cos_phi, F phase, F x) {
  using std::cos;
  const F two_cos = 2 * cos(x);
  F b1 = 0;
  F b2 = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    const F b0 = static_cast<F>(coeffs[k]) + two_cos * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return b1 * cos(x - phase) - b2 * cos_phi;
}

template <typename F>
F phase_of(int ell) {
  return static_cast<F>(ell % 8) * std::numbers::pi_v<F> / 4;
}

// Max of T over n points a + i (b - a)/(n - 1). Runs the recurrence for
// kLanes points at once; each lane performs exactly the scalar operations.
template <typename F>
F grid_max(std::span<const double> coeffs, int ell, F a, F b, std::size_t n) {
  constexpr std::size_t kLanes = std::is_same_v<F, double> ? 8 : 2;
  const F phase = phase_of<F>(ell);
  using std::cos;
  const F cos_phi = cos(phase);
  const F step = (b - a) / static_cast<F>(n - 1);
  auto point = [&](std::size_t i) { return i + 1 == n ? b : a + static_cast<F>(i) * step; };
  F best = -std::numeric_limits<F>::infinity();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    F x[kLanes], two_cos[kLanes], b1[kLanes] = {}, b2[kLanes] = {};
    for (std::size_t l = 0; l < kLanes; ++l) {
      x[l] = point(i + l);
      two_cos[l] = 2 * cos(x[l]);
    }
    for (std::size_t k = coeffs.size(); k-- > 0;) {
      const F c = static_cast<F>(coeffs[k]);
      for (std::size_t l = 0; l < kLanes; ++l) {
        const F b0 = c + two_cos[l] * b1[l] - b2[l];
        b2[l] = b1[l];
        b1[l] = b0;
      }
    }
    for (std::size_t l = 0; l < kLanes; ++l) {
      best = std::max(best, b1[l] * cos(x[l] - phase) - b2[l] * cos_phi);
    }
  }
  for (; i < n; ++i) best = std::max(best, clenshaw<F>(coeffs, cos_phi, phase, point(i)));
  return best;
}

// Rounding error bound for the recurrence: the b_k grow at most linearly in
// k, so the accumulated error is O(m^2 eps sum|c|).
double eval_error(std::size_t m, double sum_abs, double eps) {
  const double mm = static_cast<double>(m) + 1.0;
  return 4.0 * mm * mm * eps * sum_abs + 8.0 * eps;
}

double derivative_bound_of(std::span<const double> coeffs) {
  double d = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) d += static_cast<double>(k + 1) * coeffs[k];
  return d;
}

// LP on an n-point grid: rows are frequencies (maximizer picks c), columns are
// grid points (minimizer), payoff -cos(k x_j - phi). Value = max_c min_j -T.
GameSolution solve_grid_lp(const Rational& delta, int ell, int degree, std::size_t n) {
  const long double a = interval_start(delta);
  const long double b = interval_end(delta);
  const long double step = (b - a) / static_cast<long double>(n - 1);
  const long double phase = phase_of<long double>(ell);
  Matrix payoff(static_cast<std::size_t>(degree), n);
  for (std::size_t j = 0; j < n; ++j) {
    const long double x = j + 1 == n ? b : a + static_cast<long double>(j) * step;
    for (int k = 1; k <= degree; ++k) {
      payoff(static_cast<std::size_t>(k - 1), j) =
          static_cast<double>(-std::cos(static_cast<long double>(k) * x - phase));
    }
  }
  return solve_matrix_game(payoff);
}

}  // namespace

double interval_start(const Rational& delta) {
  return static_cast<double>(2.0L * std::numbers::pi_v<long double> * to_long_double(delta));
}

double interval_end(const Rational& delta) {
  return static_cast<double>(2.0L * std::numbers::pi_v<long double> *
                             (1.0L - to_long_double(delta)));
}

double trig_polynomial(std::span<const double> coeffs, int ell, double x) {
  const long double phase = phase_of<long double>(ell);
  return static_cast<double>(
      clenshaw<long double>(coeffs, std::cos(phase), phase, static_cast<long double>(x)));
}

double grid_maximum(std::span<const double> coeffs, int ell, const Rational& delta,
                    std::size_t n) {
  require_args(delta, ell);
  if (n < 2) throw DomainError("grid needs at least 2 points");
  return static_cast<double>(grid_max<long double>(coeffs, ell, interval_start(delta),
                                                   interval_end(delta), n));
}

CertifyResult certify_at_degree(const Rational& delta, int ell, int degree,
                                std::size_t grid_points, const CertifyOptions& options) {
  require_args(delta, ell);
  if (degree < 1) throw DomainError(fmt::format("degree must be >= 1, got {}", degree));
  if (grid_points < 2 * static_cast<std::size_t>(degree)) {
    throw DomainError(fmt::format("grid_points must be >= 2m = {}, got {}", 2 * degree,
                                  grid_points));
  }
  const auto start = Clock::now();
  const double a = interval_start(delta);
  const double b = interval_end(delta);
  const double length = b - a;

  CertifyResult result;
  result.best_degree = degree;
  std::size_t n = grid_points;
  for (;;) {
    const GameSolution game = solve_grid_lp(delta, ell, degree, n);
    ++result.lp_solves;
    const double grid_margin = game.value;
    if (grid_margin > result.best_grid_margin || result.lp_solves == 1) {
      result.best_grid_margin = grid_margin;
    }
    if (!(grid_margin > options.min_grid_margin)) break;

    const std::vector<double>& c = game.row_strategy;
    const double D = derivative_bound_of(c);
    // Step with D h / 2 <= grid_margin / 8.
    double target = grid_margin / (4.0 * std::max(D, 1e-300));
    auto intervals = static_cast<std::size_t>(std::ceil(length / target));
    intervals = std::clamp<std::size_t>(intervals, 1, options.max_certify_grid_points - 1);
    const double h = length / static_cast<double>(intervals);
    const double tmax = grid_max<double>(c, ell, a, b, intervals + 1);
    const double margin = -tmax - D * h / 2.0 - eval_error(c.size(), 1.0, DBL_EPSILON);

    const bool at_cap = 2 * n - 1 > options.max_lp_grid_points;
    if (margin >= grid_margin / 2.0 || (margin > 0.0 && at_cap)) {
      TrigCertificate cert;
      cert.delta = delta;
      cert.ell = ell;
      cert.degree = degree;
      cert.coeffs = c;
      cert.margin = margin;
      cert.grid_step = h;
      cert.derivative_bound = D;
      cert.lp_grid_points = n;
      cert.certify_grid_points = intervals + 1;
      cert.degree_schedule = {degree};
      cert.wall_time_seconds = seconds_since(start);
      result.certificate = std::move(cert);
      break;
    }
    if (at_cap) break;
    n = 2 * n - 1;
  }
  result.wall_time_seconds = seconds_since(start);
  return result;
}

CertifyResult certify_negative_polynomial(const Rational& delta, int ell,
                                          const CertifyOptions& options) {
  require_args(delta, ell);
  const auto start = Clock::now();
  CertifyResult overall;
  bool any = false;
  std::vector<int> tried;
  for (int m : options.degree_schedule) {
    if (m < 1 || m > options.max_degree) continue;
    tried.push_back(m);
    const std::size_t n = options.lp_points_per_degree * static_cast<std::size_t>(m) + 1;
    CertifyResult r = certify_at_degree(delta, ell, m, std::max<std::size_t>(n, 2 * m), options);
    overall.lp_solves += r.lp_solves;
    if (!any || r.best_grid_margin > overall.best_grid_margin) {
      overall.best_grid_margin = r.best_grid_margin;
      overall.best_degree = m;
    }
    any = true;
    if (r.certificate) {
      overall.certificate = std::move(r.certificate);
      overall.best_degree = m;
      break;
    }
  }
  if (!any) throw DomainError("degree schedule has no degree within max_degree");
  overall.wall_time_seconds = seconds_since(start);
  if (overall.certificate) {
    overall.certificate->degree_schedule = tried;
    overall.certificate->wall_time_seconds = overall.wall_time_seconds;
  }
  return overall;
}

bool check_certificate(const TrigCertificate& cert) {
  const Rational& delta = cert.delta;
  if (delta <= 0 || delta * 2 >= 1) return false;
  if (cert.ell < 1 || cert.degree < 1) return false;
  if (cert.coeffs.size() != static_cast<std::size_t>(cert.degree)) return false;
  if (!(cert.margin > 0.0) || !std::isfinite(cert.margin)) return false;
  if (!(cert.grid_step > 0.0) || !std::isfinite(cert.grid_step)) return false;

  long double sum = 0.0L;
  long double dsum = 0.0L;
  for (std::size_t k = 0; k < cert.coeffs.size(); ++k) {
    const double c = cert.coeffs[k];
    if (!(c >= 0.0) || !std::isfinite(c)) return false;
    sum += c;
    dsum += static_cast<long double>(k + 1) * c;
  }
  if (std::fabs(sum - 1.0L) > 1e-9L) return false;
  if (!(static_cast<long double>(cert.derivative_bound) >= dsum * (1.0L - 1e-12L))) return false;

  const long double a = 2.0L * std::numbers::pi_v<long double> * to_long_double(delta);
  const long double b = 2.0L * std::numbers::pi_v<long double> * (1.0L - to_long_double(delta));
  const long double intervals_f = std::ceil((b - a) / cert.grid_step * 2.0L - 1e-6L);
  if (intervals_f > 1e9L) return false;
  const auto intervals = static_cast<std::size_t>(std::max(1.0L, intervals_f));
  const long double h = (b - a) / static_cast<long double>(intervals);
  const long double tmax = grid_max<long double>(cert.coeffs, cert.ell, a, b, intervals + 1);
  const long double err = eval_error(cert.coeffs.size(), static_cast<double>(sum), LDBL_EPSILON);
  return tmax + dsum * h / 2.0L + err <= -static_cast<long double>(cert.margin) / 2.0L;
}

bool lebesgue_witness_check(const Rational& delta, int ell, int k_max) {
  require_args(delta, ell);
  if (ell % 4 != 2) {
    throw DomainError(fmt::format("lebesgue witness needs ell = 2 (mod 4), got {}", ell));
  }
  if (k_max < 1) throw DomainError(fmt::format("k_max must be >= 1, got {}", k_max));
  const long double pi = std::numbers::pi_v<long double>;
  const long double a = 2.0L * pi * to_long_double(delta);
  const long double b = 2.0L * pi * (1.0L - to_long_double(delta));
  const long double phase = phase_of<long double>(ell);
  for (int k = 1; k <= k_max; ++k) {
    const long double kl = k;
    const long double integral = (std::sin(kl * b - phase) - std::sin(kl * a - phase)) / kl;
    if (std::fabs(integral) > 1e-12L) return false;
  }
  return true;
}

}  // namespace nearint
