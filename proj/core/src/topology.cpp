#include "orbitatlas/topology.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace orbitatlas {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b) {
    throw std::overflow_error("factorial product overflow");
  }
  return a * b;
}

std::uint64_t factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of a negative number");
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f = checked_mul(f, static_cast<std::uint64_t>(k));
  return f;
}

// n! / prod(sizes!) with an explicit divisibility check; the sizes must
// partition n.
std::uint64_t multinomial(int n, const std::vector<int>& sizes) {
  int total = 0;
  for (int s : sizes) total += s;
  if (total != n) throw std::logic_error("partition does not cover the index set");
  std::uint64_t numerator = factorial(n);
  std::uint64_t denominator = 1;
  for (int s : sizes) denominator = checked_mul(denominator, factorial(s));
  if (numerator % denominator != 0) {
    throw std::logic_error("non-integer Euler characteristic ratio");
  }
  return numerator / denominator;
}

void collect_su_factors(const Partition& p, std::vector<int>* factors) {
  for (const auto& cls : p.classes) {
    if (cls.size() >= 2) factors->push_back(static_cast<int>(cls.size()));
  }
}

int su_factor_dim(const std::vector<int>& factors) {
  int d = 0;
  for (int m : factors) d += m * m - 1;
  return d;
}

StabilizerDescriptor close_bookkeeping(std::vector<int> factors, int group_dim, int orbit_dim) {
  std::sort(factors.begin(), factors.end());
  StabilizerDescriptor stab;
  stab.su_factors = std::move(factors);
  stab.torus_rank = group_dim - orbit_dim - su_factor_dim(stab.su_factors);
  if (stab.torus_rank < 0) {
    throw std::logic_error("stabilizer dimension bookkeeping violated");
  }
  return stab;
}

}  // namespace

std::uint64_t weyl_order_su(int n) {
  if (n < 1) throw std::invalid_argument("weyl_order_su: n must be positive");
  return factorial(n);
}

std::uint64_t weyl_order(const GroupSpec& group) {
  std::uint64_t w = weyl_order_su(group.n1);
  if (group.variant == GroupVariant::full_lu) w = checked_mul(w, weyl_order_su(group.n2));
  return w;
}

std::uint64_t weyl_order(const StabilizerDescriptor& stab) {
  std::uint64_t w = 1;
  for (int m : stab.su_factors) w = checked_mul(w, factorial(m));
  return w;
}

std::uint64_t euler_cc(const PartitionSummary& ps, int n1, int n2) {
  if (ps.flavor != PartitionFlavor::cc) throw std::invalid_argument("euler_cc: CC partitions required");
  return checked_mul(multinomial(n1, ps.row_eq_classes.sizes()),
                     multinomial(n2, ps.col_eq_classes.sizes()));
}

std::uint64_t euler_cq(const PartitionSummary& ps, int n1) {
  if (ps.flavor != PartitionFlavor::cq) throw std::invalid_argument("euler_cq: CQ partitions required");
  return multinomial(n1, ps.block_classes.sizes());
}

std::uint64_t euler_pure_separable(const PureSeparableSpec& spec) {
  std::uint64_t chi = 1;
  for (int d : spec.dims) chi = checked_mul(chi, static_cast<std::uint64_t>(d));
  return chi;
}

WeylOrder pure_separable_stabilizer_weyl(const PureSeparableSpec& spec) {
  std::uint64_t w = 1;
  for (int d : spec.dims) w = checked_mul(w, factorial(d - 1));
  return WeylOrder{w};
}

StabilizerDescriptor stabilizer_structure_cc(const PartitionSummary& ps, const GroupSpec& group) {
  if (ps.flavor != PartitionFlavor::cc || group.variant != GroupVariant::full_lu) {
    throw std::invalid_argument("stabilizer_structure_cc: CC partitions under the full group");
  }
  std::vector<int> factors;
  collect_su_factors(ps.row_eq_classes, &factors);
  collect_su_factors(ps.col_eq_classes, &factors);
  return close_bookkeeping(std::move(factors), group.algebra_dim(),
                           cc_dim(ps, group.n1, group.n2));
}

StabilizerDescriptor stabilizer_structure_cq(const PartitionSummary& ps, const GroupSpec& group) {
  if (ps.flavor != PartitionFlavor::cq || group.variant != GroupVariant::left_only) {
    throw std::invalid_argument("stabilizer_structure_cq: CQ partitions under the left-only group");
  }
  std::vector<int> factors;
  collect_su_factors(ps.block_classes, &factors);
  return close_bookkeeping(std::move(factors), group.algebra_dim(), cq_dim(ps, group.n1));
}

bool has_nonvanishing_euler(const Eigen::MatrixXcd& rho, const GroupSpec& group, double tol) {
  const int n = group.hilbert_dim();
  if (rho.rows() != n || rho.cols() != n) {
    throw std::invalid_argument("has_nonvanishing_euler: dimension mismatch");
  }
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (r == c) continue;
      bool allowed = group.variant == GroupVariant::left_only &&
                     r / group.n2 == c / group.n2;  // same diagonal block
      if (!allowed && std::abs(rho(r, c)) > tol) return false;
    }
  }
  return true;
}

bool has_nonvanishing_euler(const CCState& s, const GroupSpec& group, double tol) {
  return has_nonvanishing_euler(cc_to_density(s).mat, group, tol);
}

bool has_nonvanishing_euler(const CQState& s, const GroupSpec& group, double tol) {
  return has_nonvanishing_euler(cq_to_density(s).mat, group, tol);
}

}  // namespace orbitatlas
