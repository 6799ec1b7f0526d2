#include "orbitatlas/lie.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace orbitatlas {

namespace {

using std::complex;
const complex<double> kImag(0.0, 1.0);

Eigen::MatrixXcd matrix_unit(int i, int j, int n) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  m(i - 1, j - 1) = 1.0;
  return m;
}

int side_dim(Side side, const GroupSpec& group) {
  return side == Side::left ? group.n1 : group.n2;
}

void check_side(Side side, const GroupSpec& group) {
  if (side == Side::right && group.variant == GroupVariant::left_only) {
    throw std::invalid_argument("right-factor generators of a left-only group");
  }
}

}  // namespace

Eigen::MatrixXcd embed(const Eigen::MatrixXcd& a, Side side, const GroupSpec& group) {
  const int n1 = group.n1;
  const int n2 = group.n2;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n1 * n2, n1 * n2);
  if (side == Side::left) {
    if (a.rows() != n1) throw std::invalid_argument("embed: left factor dimension mismatch");
    for (int i = 0; i < n1; ++i)
      for (int k = 0; k < n1; ++k)
        for (int j = 0; j < n2; ++j) out(i * n2 + j, k * n2 + j) = a(i, k);
  } else {
    if (a.rows() != n2) throw std::invalid_argument("embed: right factor dimension mismatch");
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n2; ++j)
        for (int l = 0; l < n2; ++l) out(i * n2 + j, i * n2 + l) = a(j, l);
  }
  return out;
}

std::vector<AlgebraElement> su_basis(int n, Side side, const GroupSpec& group) {
  if (n < 1) throw std::invalid_argument("su_basis: n must be positive");
  check_side(side, group);
  if (n != side_dim(side, group)) {
    throw std::invalid_argument("su_basis: n does not match the group's factor dimension");
  }
  std::vector<AlgebraElement> out;
  out.reserve(static_cast<size_t>(n) * n - 1);
  // Simple-root coweights span the torus without redundancy.
  for (int i = 1; i < n; ++i) {
    Eigen::MatrixXcd h = matrix_unit(i, i, n) - matrix_unit(i + 1, i + 1, n);
    out.push_back({{GeneratorKind::cartan, i, i + 1, side}, embed(kImag * h, side, group)});
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      Eigen::MatrixXcd e_ij = matrix_unit(i, j, n);
      Eigen::MatrixXcd e_ji = matrix_unit(j, i, n);
      out.push_back({{GeneratorKind::root_x, i, j, side}, embed(kImag * (e_ij + e_ji), side, group)});
      out.push_back({{GeneratorKind::root_y, i, j, side}, embed(e_ij - e_ji, side, group)});
    }
  }
  return out;
}

AlgebraBasis build_basis(const GroupSpec& group) {
  AlgebraBasis basis;
  basis.group = group;
  basis.elements = su_basis(group.n1, Side::left, group);
  if (group.variant == GroupVariant::full_lu) {
    auto right = su_basis(group.n2, Side::right, group);
    basis.elements.insert(basis.elements.end(), right.begin(), right.end());
  }
  for (int k = 0; k < basis.size(); ++k) {
    if (basis.elements[k].label.kind == GeneratorKind::cartan) basis.cartan_indices.push_back(k);
  }
  return basis;
}

Eigen::MatrixXcd commutator(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw std::invalid_argument("commutator: shape mismatch");
  }
  return a * b - b * a;
}

double hs_inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("hs_inner: shape mismatch");
  }
  complex<double> v = -(a * b).trace();
  if (std::abs(v.imag()) > 1e-10) {
    throw std::runtime_error("hs_inner: imaginary residue " + std::to_string(v.imag()));
  }
  return v.real();
}

Eigen::MatrixXcd fundamental_vector(const AlgebraElement& x, const DensityMatrix& rho) {
  return commutator(x.matrix, rho.mat);
}

double kks_pairing(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y,
                   const Eigen::MatrixXcd& rho) {
  if (x.rows() != rho.rows() || y.rows() != rho.rows()) {
    throw std::invalid_argument("kks_pairing: shape mismatch");
  }
  complex<double> v = -kImag * (rho * commutator(y, x)).trace();
  if (std::abs(v.imag()) > 1e-8) {
    throw std::runtime_error("kks_pairing: imaginary residue " + std::to_string(v.imag()));
  }
  return v.real();
}

double kks_pairing(const AlgebraElement& x, const AlgebraElement& y, const DensityMatrix& rho) {
  return kks_pairing(x.matrix, y.matrix, rho.mat);
}

std::vector<RootId> positive_roots(const GroupSpec& group) {
  std::vector<RootId> roots;
  for (int i = 1; i <= group.n1; ++i)
    for (int j = i + 1; j <= group.n1; ++j) roots.push_back({i, j, Side::left});
  if (group.variant == GroupVariant::full_lu) {
    for (int i = 1; i <= group.n2; ++i)
      for (int j = i + 1; j <= group.n2; ++j) roots.push_back({i, j, Side::right});
  }
  return roots;
}

Eigen::MatrixXcd root_raise(const RootId& root, const GroupSpec& group) {
  check_side(root.side, group);
  int n = side_dim(root.side, group);
  return embed(matrix_unit(root.i, root.j, n), root.side, group);
}

Eigen::MatrixXcd root_lower(const RootId& root, const GroupSpec& group) {
  check_side(root.side, group);
  int n = side_dim(root.side, group);
  return embed(matrix_unit(root.j, root.i, n), root.side, group);
}

Eigen::MatrixXcd root_coweight(const RootId& root, const GroupSpec& group) {
  check_side(root.side, group);
  int n = side_dim(root.side, group);
  return embed(matrix_unit(root.i, root.i, n) - matrix_unit(root.j, root.j, n), root.side, group);
}

}  // namespace orbitatlas
