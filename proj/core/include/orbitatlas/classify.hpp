#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "orbitatlas/states.hpp"

namespace orbitatlas {

inline constexpr double kDefaultTol = 1e-9;

// Partition of {0..n-1} into equality classes. Classes are sorted
// internally and by smallest member, so equal partitions compare equal.
struct Partition {
  std::vector<std::vector<int>> classes;

  static Partition discrete(int n);
  int count() const { return static_cast<int>(classes.size()); }
  std::vector<int> sizes() const;
  int element_count() const;
  bool refines(const Partition& coarser) const;
  Partition intersect(const Partition& other) const;
  friend bool operator==(const Partition&, const Partition&) = default;
};

// Groups indices by pairwise distance: i and j share a class when they are
// connected by steps of distance <= tol (transitive closure, so the result
// is order-independent; on scalars this coincides with sorted-gap
// clustering). Exact comparisons pass distance 0 or infinity. A pair at
// distance in (tol, 10 tol] is a near-miss and sets *ambiguous.
Partition cluster_by_distance(int n, const std::function<double(int, int)>& dist, double tol,
                              bool* ambiguous);

enum class PartitionFlavor { cc, cq };

struct PartitionSummary {
  PartitionFlavor flavor = PartitionFlavor::cc;
  // CC flavor: rows and columns by equal sum and by entrywise equality.
  Partition row_sum_classes, col_sum_classes, row_eq_classes, col_eq_classes;
  // CQ flavor: indices by equal weight and by equal weighted block.
  Partition weight_classes, block_classes;
  bool ambiguity_warning = false;
};

struct OrbitReport {
  int dim = 0;
  int rank = 0;
  int degeneracy = 0;
  bool symplectic = false;
  std::optional<bool> kahler;           // not defined for the left-only action
  std::optional<bool> magic_rectangle;  // CC only
  std::uint64_t euler = 0;
  bool ambiguity_warning = false;
};

// Equality classes of a CC weight matrix. Entrywise-equality classes are
// intersected with the sum classes so the refinement invariant survives
// floating-point clustering.
PartitionSummary cc_partitions(const CCState& s, double tol = kDefaultTol);

// Weight and weighted-block classes of a CQ state. Blocks compare through
// p_i rho_i (max-abs entrywise), not rho_i alone.
PartitionSummary cq_partitions(const CQState& s, double tol = kDefaultTol);

// Orbit dimension and symplectic rank from the equality-class sizes, with
// the convention C(a, 2) = 0 for a < 2.
int cc_dim(const PartitionSummary& ps, int n1, int n2);
int cc_rank(const PartitionSummary& ps, int n1, int n2);
int cq_dim(const PartitionSummary& ps, int n1);
int cq_rank(const PartitionSummary& ps, int n1);

// Exactly two orbit families inherit the full Kahler structure: pure
// product states and the maximally mixed state.
bool cc_is_kahler(const CCState& s, double tol = kDefaultTol);

// Maximal degeneracy marker: pairwise-distinct entries in every row and
// every column, constant row sums, constant column sums.
bool cc_is_magic(const CCState& s, double tol = kDefaultTol);

OrbitReport cc_report(const CCState& s, double tol = kDefaultTol);
OrbitReport cq_report(const CQState& s, double tol = kDefaultTol);

}  // namespace orbitatlas
