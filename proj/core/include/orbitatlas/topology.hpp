#pragma once

#include <cstdint>
#include <vector>

#include "orbitatlas/classify.hpp"
#include "orbitatlas/lie.hpp"

namespace orbitatlas {

// Stabilizer subgroup of an orbit, up to isomorphism: a product of special
// unitary blocks and a torus. Satisfies
//   sum_k (m_k^2 - 1) + torus_rank == dim(group) - dim(orbit).
struct StabilizerDescriptor {
  std::vector<int> su_factors;  // block sizes >= 2, sorted ascending
  int torus_rank = 0;
};

struct WeylOrder {
  std::uint64_t value = 1;
};

// |W(SU(n))| = n!
std::uint64_t weyl_order_su(int n);

// Weyl order of the acting group and of a stabilizer descriptor.
std::uint64_t weyl_order(const GroupSpec& group);
std::uint64_t weyl_order(const StabilizerDescriptor& stab);

// Euler characteristic of the full local-unitary orbit of a CC state:
// the product of the two multinomials counting row and column
// rearrangements. Always a positive integer; a non-integer ratio means the
// partitions are inconsistent and throws.
std::uint64_t euler_cc(const PartitionSummary& ps, int n1, int n2);

// Euler characteristic of the left-only orbit of a CQ state.
std::uint64_t euler_cq(const PartitionSummary& ps, int n1);

// Orbit of a pure product state of L factors: chi = N_1 * ... * N_L.
std::uint64_t euler_pure_separable(const PureSeparableSpec& spec);

// Weyl order of the pure-product stabilizer, prod (N_i - 1)!.
WeylOrder pure_separable_stabilizer_weyl(const PureSeparableSpec& spec);

// Stabilizer structure from equality classes. For the full group the SU
// factors come from both the row and the column equality classes; for the
// left-only group from the weighted-block classes. The torus rank closes
// the dimension bookkeeping and throws if that would go negative.
StabilizerDescriptor stabilizer_structure_cc(const PartitionSummary& ps, const GroupSpec& group);
StabilizerDescriptor stabilizer_structure_cq(const PartitionSummary& ps, const GroupSpec& group);

// Whether the orbit through rho (given in the canonical product basis) has
// nonzero Euler characteristic: under the full group this needs rho
// diagonal, under the left-only group block-diagonal. Everything else has
// chi = 0.
bool has_nonvanishing_euler(const Eigen::MatrixXcd& rho, const GroupSpec& group,
                            double tol = 1e-12);
bool has_nonvanishing_euler(const CCState& s, const GroupSpec& group, double tol = 1e-12);
bool has_nonvanishing_euler(const CQState& s, const GroupSpec& group, double tol = 1e-12);

}  // namespace orbitatlas
