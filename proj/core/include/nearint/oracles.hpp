#pragma once

#include <cstdint>
#include <vector>

#include "nearint/geometry.hpp"

namespace nearint {

inline constexpr std::size_t kMaxCliqueCandidates = 60;

// Graph on candidate points; i ~ j iff the pair's distance gap is >= delta
// under the set's arithmetic mode. Valid subsets are exactly its cliques.
class CompatibilityGraph {
 public:
  CompatibilityGraph(const PointSet& set, const Delta& delta,
                     const NormSpec& norm = NormSpec::euclidean());

  std::size_t size() const { return n_; }
  bool adjacent(std::size_t i, std::size_t j) const {
    return (rows_[i * words_ + j / 64] >> (j % 64)) & 1U;
  }
  std::size_t edge_count() const;
  // Row i as a 64-bit mask; only valid when size() <= 64.
  std::uint64_t row_mask(std::size_t i) const { return rows_[i * words_]; }

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
};

// Maximum clique of the compatibility graph (branch and bound with a greedy
// colouring bound). Indices are returned in increasing order. Throws
// CapacityError above kMaxCliqueCandidates candidates.
std::vector<std::size_t> max_valid_subset(const PointSet& candidates, const Delta& delta,
                                          const NormSpec& norm = NormSpec::euclidean());

// Visits the candidates in a seeded random order and keeps each one that is
// compatible with everything kept so far. Indices in increasing order.
std::vector<std::size_t> greedy_valid_subset(const PointSet& candidates, const Delta& delta,
                                             const NormSpec& norm, std::uint64_t seed);

enum class CheckOutcome { holds, violated, not_applicable };

std::string_view to_string(CheckOutcome outcome);

struct TorusCheck {
  CheckOutcome outcome = CheckOutcome::not_applicable;
  double min_torus_gap = 0.5;  // smallest circular gap between projections mod 1
  std::size_t size = 0;

  bool holds() const { return outcome == CheckOutcome::holds; }
};

// For a valid 1-D set: projections mod 1 are pairwise >= delta apart on the
// circle, and |S| <= 1/delta. Sets that are not valid at delta are reported
// as not applicable.
TorusCheck torus_bound_check(const PointSet& set, const Rational& delta);

struct SlabCheck {
  CheckOutcome outcome = CheckOutcome::not_applicable;
  std::size_t slab_count = 0;  // slabs spanned, from the lowest to the highest index used
  std::size_t nonempty_slabs = 0;
  std::uint64_t slab_limit = 0;  // ceil(4X / delta)
  bool injective = true;
  bool projections_valid = true;

  bool holds() const { return outcome == CheckOutcome::holds; }
};

// Slabs of width delta/2 along the first coordinate, anchored at -X (X the
// set's radius bound) and closed on the right: a point on a boundary belongs
// to the lower slab. Within each slab the first coordinate is dropped; the
// projected points must be distinct and valid at delta/2, and at most
// ceil(4X/delta) slabs may be used. Needs dim >= 2. Sets that are not valid
// at delta or not contained in their ball are reported as not applicable.
SlabCheck slab_project_check(const PointSet& set, const Rational& delta);

struct RandomSetResult {
  PointSet points;
  std::size_t target = 0;
  std::size_t attempts = 0;
  bool shortfall() const { return points.size() < target; }
};

// Seeded greedy sampling: draws uniform points in the closed ball B_d(0, X)
// and keeps each one compatible with the points kept so far, until `target`
// points are kept or `attempt_budget` draws are spent. Certified-float mode.
RandomSetResult random_valid_set(int d, double X, const Rational& delta, std::size_t target,
                                 std::uint64_t seed, std::size_t attempt_budget = 0);

}  // namespace nearint
