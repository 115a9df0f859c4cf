#include "nearint/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cfloat>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "nearint/errors.hpp"

namespace nearint {

CompatibilityGraph::CompatibilityGraph(const PointSet& set, const Delta& delta,
                                       const NormSpec& norm)
    : n_(set.size()), words_((set.size() + 63) / 64), rows_(n_ * words_, 0) {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (pair_gap(set[i], set[j], delta, norm, set.mode()).pass) {
        rows_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
        rows_[j * words_ + i / 64] |= std::uint64_t{1} << (i % 64);
      }
    }
  }
}

std::size_t CompatibilityGraph::edge_count() const {
  std::size_t total = 0;
  for (std::uint64_t w : rows_) total += static_cast<std::size_t>(std::popcount(w));
  return total / 2;
}

namespace {

class CliqueSearch {
 public:
  explicit CliqueSearch(std::vector<std::uint64_t> adj) : adj_(std::move(adj)) {}

  std::vector<std::size_t> run(std::uint64_t all) {
    std::vector<std::size_t> current;
    expand(all, current);
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  void expand(std::uint64_t candidates, std::vector<std::size_t>& current) {
    std::vector<std::size_t> order;
    std::vector<std::size_t> colour;
    colour_sort(candidates, order, colour);
    for (std::size_t i = order.size(); i-- > 0;) {
      if (current.size() + colour[i] <= best_.size()) return;
      const std::size_t v = order[i];
      current.push_back(v);
      const std::uint64_t next = candidates & adj_[v];
      if (next != 0) {
        expand(next, current);
      } else if (current.size() > best_.size()) {
        best_ = current;
      }
      current.pop_back();
      candidates &= ~(std::uint64_t{1} << v);
    }
  }

  // Greedy sequential colouring; colour[i] bounds the clique size within
  // order[0..i].
  void colour_sort(std::uint64_t candidates, std::vector<std::size_t>& order,
                   std::vector<std::size_t>& colour) const {
    std::uint64_t uncoloured = candidates;
    std::size_t c = 0;
    while (uncoloured != 0) {
      ++c;
      std::uint64_t q = uncoloured;
      while (q != 0) {
        const auto v = static_cast<std::size_t>(std::countr_zero(q));
        const std::uint64_t bit = std::uint64_t{1} << v;
        uncoloured &= ~bit;
        q &= ~bit & ~adj_[v];
        order.push_back(v);
        colour.push_back(c);
      }
    }
  }

  std::vector<std::uint64_t> adj_;
  std::vector<std::size_t> best_;
};

void require_dim(const PointSet& set, std::size_t dim, std::string_view what) {
  if (!set.empty() && set.dim() != dim) {
    throw DomainError(fmt::format("{} needs {}-dimensional points, got {}", what, dim, set.dim()));
  }
}

}  // namespace

std::vector<std::size_t> max_valid_subset(const PointSet& candidates, const Delta& delta,
                                          const NormSpec& norm) {
  const std::size_t n = candidates.size();
  if (n > kMaxCliqueCandidates) {
    throw CapacityError(fmt::format(
        "exact search is limited to {} candidates, got {}; use greedy_valid_subset instead",
        kMaxCliqueCandidates, n));
  }
  if (n == 0) return {};
  const CompatibilityGraph graph(candidates, delta, norm);
  std::vector<std::uint64_t> adj(n);
  for (std::size_t i = 0; i < n; ++i) adj[i] = graph.row_mask(i);
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  return CliqueSearch(std::move(adj)).run(all);
}

std::vector<std::size_t> greedy_valid_subset(const PointSet& candidates, const Delta& delta,
                                             const NormSpec& norm, std::uint64_t seed) {
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::size_t> kept;
  for (std::size_t i : order) {
    const bool ok = std::all_of(kept.begin(), kept.end(), [&](std::size_t j) {
      return pair_gap(candidates[i], candidates[j], delta, norm, candidates.mode()).pass;
    });
    if (ok) kept.push_back(i);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

std::string_view to_string(CheckOutcome outcome) {
  switch (outcome) {
    case CheckOutcome::holds:
      return "holds";
    case CheckOutcome::violated:
      return "violated";
    case CheckOutcome::not_applicable:
      return "not-applicable";
  }
  return "?";
}

TorusCheck torus_bound_check(const PointSet& set, const Rational& delta) {
  require_open_half(delta);
  require_dim(set, 1, "torus_bound_check");
  TorusCheck out;
  out.size = set.size();
  if (!pairwise_verify(set, delta).pass) return out;

  std::vector<long double> proj;
  long double rounding = 0.0L;
  for (const Point& p : set) {
    const long double x = p[0];
    proj.push_back(x - std::floor(x));
    rounding = std::max(rounding, 4.0L * LDBL_EPSILON * (std::fabs(x) + 1.0L));
  }
  std::sort(proj.begin(), proj.end());
  long double min_gap = 0.5L;
  for (std::size_t i = 1; i < proj.size(); ++i) {
    const long double g = proj[i] - proj[i - 1];
    min_gap = std::min(min_gap, std::min(g, 1.0L - g));
  }
  if (proj.size() > 1) {
    const long double wrap = 1.0L - (proj.back() - proj.front());
    min_gap = std::min(min_gap, std::min(wrap, 1.0L - wrap));
  }
  out.min_torus_gap = static_cast<double>(min_gap);

  const long double slack = std::max<long double>(kFloatSlack, rounding);
  const bool separated = proj.size() < 2 || min_gap + slack >= to_long_double(delta);
  // |S| <= 1/delta  <=>  |S| p <= q
  const bool counted = static_cast<long double>(set.size()) * delta.numerator() <=
                       static_cast<long double>(delta.denominator());
  out.outcome = separated && counted ? CheckOutcome::holds : CheckOutcome::violated;
  return out;
}

SlabCheck slab_project_check(const PointSet& set, const Rational& delta) {
  require_open_half(delta);
  if (!set.empty() && set.dim() < 2) {
    throw DomainError("slab_project_check needs points in R^(d+1) with d >= 1");
  }
  SlabCheck out;
  if (set.empty()) {
    out.outcome = CheckOutcome::holds;
    return out;
  }
  if (!set.contained() || !pairwise_verify(set, delta).pass) return out;

  const double X = set.radius_bound();
  const std::int64_t p = delta.numerator();
  const std::int64_t q = delta.denominator();
  const bool integral_X = std::floor(X) == X && X < 9.0e15;
  // ceil(4X/delta) = ceil(4 X q / p)
  if (integral_X) {
    const __int128 num = static_cast<__int128>(4) * static_cast<__int128>(X) * q;
    out.slab_limit = static_cast<std::uint64_t>((num + p - 1) / p);
  } else {
    out.slab_limit =
        static_cast<std::uint64_t>(std::ceil(4.0L * X * q / static_cast<long double>(p)));
  }

  // index = max(0, ceil((x + X) / w) - 1) with w = delta/2, i.e.
  // ceil(2 q (x + X) / p) - 1.
  auto slab_index = [&](const Point& pt) -> std::uint64_t {
    if (pt.is_lattice() && integral_X) {
      const __int128 num = static_cast<__int128>(2) * q *
                           (static_cast<__int128>(pt.lattice()[0]) + static_cast<__int128>(X));
      const __int128 c = num <= 0 ? 0 : (num + p - 1) / p;
      return c <= 1 ? 0 : static_cast<std::uint64_t>(c - 1);
    }
    const long double t = 2.0L * q * (static_cast<long double>(pt[0]) + X) / p;
    const long double c = std::ceil(t);
    return c <= 1.0L ? 0 : static_cast<std::uint64_t>(c - 1.0L);
  };

  std::map<std::uint64_t, std::vector<Point>> slabs;
  for (const Point& pt : set) {
    Point projected = pt.is_lattice()
                          ? Point(std::vector<std::int64_t>(pt.lattice().begin() + 1,
                                                            pt.lattice().end()))
                          : Point(std::vector<double>(pt.coords().begin() + 1, pt.coords().end()));
    slabs[slab_index(pt)].push_back(std::move(projected));
  }
  out.nonempty_slabs = slabs.size();
  out.slab_count = static_cast<std::size_t>(slabs.rbegin()->first - slabs.begin()->first + 1);

  const Rational half = delta / 2;
  for (auto& [index, pts] : slabs) {
    const PointSet proj(std::move(pts), set.mode(), X);
    if (proj.has_duplicates()) out.injective = false;
    if (!pairwise_verify(proj, Delta(half)).pass) out.projections_valid = false;
  }
  const bool within_limit = slabs.rbegin()->first < out.slab_limit;
  out.outcome = out.injective && out.projections_valid && within_limit ? CheckOutcome::holds
                                                                       : CheckOutcome::violated;
  return out;
}

RandomSetResult random_valid_set(int d, double X, const Rational& delta, std::size_t target,
                                 std::uint64_t seed, std::size_t attempt_budget) {
  if (d < 1) throw DomainError(fmt::format("dimension must be >= 1, got {}", d));
  if (!std::isfinite(X) || X <= 0.0) {
    throw DomainError(fmt::format("radius must be finite and positive, got {}", X));
  }
  require_open_half(delta);
  if (target < 1) throw DomainError("target must be >= 1");
  if (attempt_budget == 0) attempt_budget = 200 * target;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  const Delta gap(delta);
  std::vector<Point> kept;
  RandomSetResult result;
  result.target = target;
  while (kept.size() < target && result.attempts < attempt_budget) {
    ++result.attempts;
    std::vector<double> v(static_cast<std::size_t>(d));
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (double& c : v) {
        c = normal(rng);
        norm2 += c * c;
      }
    } while (norm2 == 0.0);
    const double radius = X * std::pow(unit(rng), 1.0 / d) / std::sqrt(norm2);
    for (double& c : v) c *= radius;
    Point candidate(std::move(v));
    const bool ok = std::all_of(kept.begin(), kept.end(), [&](const Point& other) {
      return pair_gap(candidate, other, gap, NormSpec::euclidean(),
                      ArithmeticMode::certified_float)
          .pass;
    });
    if (ok) kept.push_back(std::move(candidate));
  }
  result.points = PointSet(std::move(kept), ArithmeticMode::certified_float, X);
  return result;
}

}  // namespace nearint
