#pragma once

#include <Eigen/Dense>
#include <vector>

#include "orbitatlas/states.hpp"

namespace orbitatlas {

// Which subgroup of the unitary group acts on the product space.
// The ambient group SU(n) itself is reachable as {left_only, n, 1}.
enum class GroupVariant { full_lu, left_only };

struct GroupSpec {
  GroupVariant variant = GroupVariant::full_lu;
  int n1 = 1;
  int n2 = 1;

  static GroupSpec full(int n1, int n2) { return {GroupVariant::full_lu, n1, n2}; }
  static GroupSpec left(int n1, int n2) { return {GroupVariant::left_only, n1, n2}; }
  static GroupSpec ambient(int n) { return {GroupVariant::left_only, n, 1}; }

  int hilbert_dim() const { return n1 * n2; }
  int algebra_dim() const {
    int left = n1 * n1 - 1;
    return variant == GroupVariant::full_lu ? left + n2 * n2 - 1 : left;
  }
};

enum class Side { left, right };

// Positive root of one su factor, 1-based indices with i < j.
struct RootId {
  int i = 0;
  int j = 0;
  Side side = Side::left;
  friend bool operator==(const RootId&, const RootId&) = default;
};

enum class GeneratorKind { cartan, root_x, root_y };

struct AlgebraLabel {
  GeneratorKind kind = GeneratorKind::cartan;
  int i = 0;  // 1-based, i < j
  int j = 0;
  Side side = Side::left;
  friend bool operator==(const AlgebraLabel&, const AlgebraLabel&) = default;
};

// One generator together with its embedded matrix on the product space.
// Conventions (1-based indices, E_ij the matrix unit):
//   cartan(i, i+1):  i (E_ii - E_jj)
//   root_x(i, j):    i (E_ij + E_ji)
//   root_y(i, j):    E_ij - E_ji
// embedded as A (x) I on the left and I (x) A on the right.
struct AlgebraElement {
  AlgebraLabel label;
  Eigen::MatrixXcd matrix;
};

struct AlgebraBasis {
  GroupSpec group;
  std::vector<AlgebraElement> elements;
  std::vector<int> cartan_indices;
  int size() const { return static_cast<int>(elements.size()); }
};

// Embed an n x n matrix into the product space on the given side.
Eigen::MatrixXcd embed(const Eigen::MatrixXcd& a, Side side, const GroupSpec& group);

// Root basis of su(n) embedded per side: the n-1 simple-root coweights
// i(E_ii - E_{i+1,i+1}) followed by root_x/root_y for every i < j.
// n must match the side's factor dimension; n = 1 yields an empty set.
std::vector<AlgebraElement> su_basis(int n, Side side, const GroupSpec& group);

// Left su(n1) basis followed, for the full local-unitary group, by the
// right su(n2) basis.
AlgebraBasis build_basis(const GroupSpec& group);

Eigen::MatrixXcd commutator(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// Invariant inner product -tr(ab), real for anti-Hermitian arguments.
// Throws if the imaginary residue exceeds 1e-10.
double hs_inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// Orbit direction generated by x at rho: [x, rho].
Eigen::MatrixXcd fundamental_vector(const AlgebraElement& x, const DensityMatrix& rho);

// Kirillov-Kostant-Souriau pairing of the orbit directions of x and y,
// with the sign convention omega(x, y) = -tr(i rho [y, x]).
// Throws if the imaginary residue exceeds 1e-8.
double kks_pairing(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y,
                   const Eigen::MatrixXcd& rho);
double kks_pairing(const AlgebraElement& x, const AlgebraElement& y, const DensityMatrix& rho);

// Positive roots (i < j) of the acting group, left factor first.
std::vector<RootId> positive_roots(const GroupSpec& group);

// Embedded raising/lowering operators E_ij, E_ji and the coweight
// E_ii - E_jj of a positive root.
Eigen::MatrixXcd root_raise(const RootId& root, const GroupSpec& group);
Eigen::MatrixXcd root_lower(const RootId& root, const GroupSpec& group);
Eigen::MatrixXcd root_coweight(const RootId& root, const GroupSpec& group);

}  // namespace orbitatlas
