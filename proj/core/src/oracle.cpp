#include "orbitatlas/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace orbitatlas {

namespace {

using std::complex;
const complex<double> kImag(0.0, 1.0);

constexpr double kTorusTol = 1e-10;
constexpr double kZeroFloor = 1e-13;

Eigen::VectorXd vec_real(const Eigen::MatrixXcd& m) {
  const auto n = m.size();
  Eigen::VectorXd out(2 * n);
  Eigen::Map<const Eigen::VectorXcd> flat(m.data(), n);
  out.head(n) = flat.real();
  out.tail(n) = flat.imag();
  return out;
}

// tr(a b) without forming the product.
complex<double> trace_product(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return a.cwiseProduct(b.transpose()).sum();
}

struct RankDecision {
  int rank = 0;
  bool warning = false;
};

RankDecision rank_from_singular_values(const Eigen::VectorXd& sv, double tol) {
  RankDecision out;
  if (sv.size() == 0) return out;
  const double sigma_max = sv(0);
  if (sigma_max < kZeroFloor) return out;
  const double cut = tol * sigma_max;
  for (int k = 0; k < sv.size(); ++k) {
    if (sv(k) > cut) ++out.rank;
    // A decision within a decade of the cut is fragile; flag it.
    if (sv(k) > cut / 10.0 && sv(k) < cut * 10.0) out.warning = true;
  }
  return out;
}

bool torus_fixed(const AlgebraBasis& basis, const Eigen::MatrixXcd& rho) {
  for (int idx : basis.cartan_indices) {
    if (commutator(basis.elements[idx].matrix, rho).cwiseAbs().maxCoeff() > kTorusTol) {
      return false;
    }
  }
  return true;
}

std::vector<Eigen::MatrixXcd> orbit_directions(const AlgebraBasis& basis,
                                               const Eigen::MatrixXcd& rho) {
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(basis.elements.size());
  for (const AlgebraElement& e : basis.elements) out.push_back(commutator(e.matrix, rho));
  return out;
}

Eigen::MatrixXd direction_rows(const std::vector<Eigen::MatrixXcd>& dirs) {
  const int d = static_cast<int>(dirs.size());
  const auto cols = 2 * dirs.front().size();
  Eigen::MatrixXd rows(d, cols);
  for (int a = 0; a < d; ++a) rows.row(a) = vec_real(dirs[a]).transpose();
  return rows;
}

// Pairing matrix over the basis: Omega_ab = omega(B_a, B_b) evaluated as
// Re(i tr(B_a [B_b, rho])), with residue and antisymmetry guards.
Eigen::MatrixXd pairing_matrix(const AlgebraBasis& basis,
                               const std::vector<Eigen::MatrixXcd>& dirs) {
  const int d = basis.size();
  Eigen::MatrixXd omega(d, d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      complex<double> z = kImag * trace_product(basis.elements[a].matrix, dirs[b]);
      if (std::abs(z.imag()) > 1e-8) {
        throw std::runtime_error("pairing has an imaginary residue");
      }
      omega(a, b) = z.real();
    }
  }
  if ((omega + omega.transpose()).cwiseAbs().maxCoeff() > 1e-8) {
    throw std::runtime_error("pairing matrix is not antisymmetric");
  }
  return omega;
}

bool almost_complex_impl(const std::vector<Eigen::MatrixXcd>& dirs, const Eigen::MatrixXcd& rho,
                         double tol) {
  const int d = static_cast<int>(dirs.size());
  const auto cols = 2 * dirs.front().size();
  double max_norm = 0.0;
  for (const auto& v : dirs) max_norm = std::max(max_norm, v.norm());
  if (max_norm < kZeroFloor) return true;  // point orbit

  Eigen::MatrixXd span(cols, d);
  for (int a = 0; a < d; ++a) span.col(a) = vec_real(dirs[a]);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(span);

  const Eigen::MatrixXcd irho = kImag * rho;
  for (int a = 0; a < d; ++a) {
    if (dirs[a].norm() < kZeroFloor * max_norm) continue;
    Eigen::MatrixXcd image = commutator(irho, dirs[a]);
    Eigen::VectorXd w = vec_real(image);
    const double wnorm = w.norm();
    if (wnorm < kZeroFloor * max_norm) continue;
    Eigen::VectorXd coeffs = qr.solve(w);
    if ((span * coeffs - w).norm() > tol * wnorm) return false;
  }
  return true;
}

AgreementRecord compare(long long fdim, long long frank, long long fstab,
                        const OracleReport& oracle) {
  AgreementRecord rec;
  rec.dim = {fdim, oracle.dim};
  rec.rank = {frank, oracle.rank_omega};
  rec.degeneracy = {fdim - frank, oracle.degeneracy};
  rec.stabilizer_dim = {fstab, oracle.stabilizer_dim};
  rec.oracle_warning = oracle.rank_warning;
  return rec;
}

long long descriptor_dim(const StabilizerDescriptor& stab) {
  long long d = stab.torus_rank;
  for (int m : stab.su_factors) d += static_cast<long long>(m) * m - 1;
  return d;
}

CCState cc_from_numerators(int n1, int n2, const std::vector<std::int64_t>& nums) {
  std::int64_t den = 0;
  for (auto v : nums) den += v;
  std::vector<Scalar> entries;
  entries.reserve(nums.size());
  for (auto v : nums) entries.push_back(Scalar::exact(Rational(v, den)));
  return CCState::create(n1, n2, std::move(entries));
}

}  // namespace

OracleReport numeric_orbit_report(const DensityMatrix& rho, const GroupSpec& group, double tol) {
  if (rho.dim() != group.hilbert_dim()) {
    throw std::invalid_argument("numeric_orbit_report: dimension mismatch");
  }
  if (tol <= 0) throw std::invalid_argument("numeric_orbit_report: tol must be positive");

  const AlgebraBasis basis = build_basis(group);
  const auto dirs = orbit_directions(basis, rho.mat);

  OracleReport report;
  report.tol = tol;

  Eigen::JacobiSVD<Eigen::MatrixXd> dir_svd(direction_rows(dirs));
  RankDecision dim_decision = rank_from_singular_values(dir_svd.singularValues(), tol);
  report.dim = dim_decision.rank;
  report.stabilizer_dim = basis.size() - report.dim;

  Eigen::JacobiSVD<Eigen::MatrixXd> omega_svd(pairing_matrix(basis, dirs));
  RankDecision rank_decision = rank_from_singular_values(omega_svd.singularValues(), tol);
  report.rank_omega = rank_decision.rank;
  report.degeneracy = report.dim - report.rank_omega;
  report.rank_warning = dim_decision.warning || rank_decision.warning;

  if (torus_fixed(basis, rho.mat)) {
    report.root_census = root_case_census(rho, group, tol);
    report.almost_complex = almost_complex_impl(dirs, rho.mat, 1e-8);
  }
  return report;
}

std::vector<RootTag> root_case_census(const DensityMatrix& rho, const GroupSpec& group,
                                      double tol) {
  const AlgebraBasis basis = build_basis(group);
  if (!torus_fixed(basis, rho.mat)) {
    throw std::invalid_argument("root_case_census: state is not fixed by the torus");
  }
  std::vector<RootTag> census;
  for (const RootId& root : positive_roots(group)) {
    const double raise_norm = commutator(root_raise(root, group), rho.mat).norm();
    const double lower_norm = commutator(root_lower(root, group), rho.mat).norm();
    const double coweight_trace =
        std::abs((rho.mat * root_coweight(root, group)).trace().real());
    RootCase tag;
    if (raise_norm <= tol && lower_norm <= tol) {
      tag = RootCase::annihilated;
    } else if (coweight_trace <= tol) {
      tag = RootCase::isotropic;
    } else {
      tag = RootCase::symplectic;
    }
    census.push_back({root, tag});
  }
  return census;
}

bool almost_complex_check(const DensityMatrix& rho, const GroupSpec& group, double tol) {
  const AlgebraBasis basis = build_basis(group);
  if (!torus_fixed(basis, rho.mat)) {
    throw std::invalid_argument("almost_complex_check: state is not fixed by the torus");
  }
  return almost_complex_impl(orbit_directions(basis, rho.mat), rho.mat, tol);
}

PolarComplexStructure polar_complex_structure(const DensityMatrix& rho, const GroupSpec& group) {
  const AlgebraBasis basis = build_basis(group);
  const int d = basis.size();
  if (d == 0) throw std::invalid_argument("polar_complex_structure: trivial algebra");

  // Orthonormalize the algebra basis under hs_inner.
  Eigen::MatrixXd gram(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b)
      gram(a, b) = gram(b, a) = hs_inner(basis.elements[a].matrix, basis.elements[b].matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gram_eig(gram);
  if (gram_eig.eigenvalues().minCoeff() < 1e-10) {
    throw std::runtime_error("algebra basis is numerically dependent");
  }
  const int n = rho.dim();
  std::vector<Eigen::MatrixXcd> ortho(d, Eigen::MatrixXcd::Zero(n, n));
  for (int m = 0; m < d; ++m) {
    const double scale = 1.0 / std::sqrt(gram_eig.eigenvalues()(m));
    for (int a = 0; a < d; ++a) {
      ortho[m] += scale * gram_eig.eigenvectors()(a, m) * basis.elements[a].matrix;
    }
  }

  // The tangent space is the orthogonal complement of the stabilizer
  // algebra: left singular directions of X -> [X, rho] with nonzero
  // singular value.
  Eigen::MatrixXd rows(d, 2 * n * n);
  for (int m = 0; m < d; ++m) rows.row(m) = vec_real(commutator(ortho[m], rho.mat)).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullU);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
  int tangent_dim = 0;
  for (int k = 0; k < sv.size(); ++k) {
    if (sigma_max >= kZeroFloor && sv(k) > 1e-9 * sigma_max) ++tangent_dim;
  }
  if (tangent_dim == 0) {
    throw std::runtime_error("polar_complex_structure: the orbit is a point");
  }

  PolarComplexStructure out;
  out.tangent_basis.reserve(tangent_dim);
  for (int k = 0; k < tangent_dim; ++k) {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
    for (int m = 0; m < d; ++m) u += svd.matrixU()(m, k) * ortho[m];
    out.tangent_basis.push_back(std::move(u));
  }

  // ad_rho on the tangent basis; skew up to roundoff.
  const Eigen::MatrixXcd irho = kImag * rho.mat;
  Eigen::MatrixXd ad(tangent_dim, tangent_dim);
  for (int l = 0; l < tangent_dim; ++l) {
    Eigen::MatrixXcd image = commutator(irho, out.tangent_basis[l]);
    for (int k = 0; k < tangent_dim; ++k) ad(k, l) = hs_inner(out.tangent_basis[k], image);
  }
  if ((ad + ad.transpose()).norm() > 1e-8 * std::max(1.0, ad.norm())) {
    throw std::runtime_error("ad_rho restriction is not skew");
  }
  ad = 0.5 * (ad - ad.transpose().eval());

  Eigen::JacobiSVD<Eigen::MatrixXd> polar(ad, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& ps = polar.singularValues();
  if (ps(ps.size() - 1) <= 1e-12 * ps(0)) {
    throw std::runtime_error("ad_rho restriction is singular on the tangent space");
  }
  out.J = polar.matrixU() * polar.matrixV().transpose();
  out.P = polar.matrixV() * ps.asDiagonal() * polar.matrixV().transpose();

  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(tangent_dim, tangent_dim);
  out.j_squared_residual = (out.J * out.J + eye).norm();
  out.orthogonality_residual = (out.J.transpose() * out.J - eye).norm();
  out.commutation_residual = (out.J * out.P - out.P * out.J).norm();
  return out;
}

Eigen::MatrixXd compatible_metric(const PolarComplexStructure& polar, const DensityMatrix& rho) {
  const int t = static_cast<int>(polar.tangent_basis.size());
  Eigen::MatrixXd omega(t, t);
  for (int k = 0; k < t; ++k)
    for (int l = 0; l < t; ++l)
      omega(k, l) = kks_pairing(polar.tangent_basis[k], polar.tangent_basis[l], rho.mat);
  // Contract the pairing with J on its first slot; with the sign
  // convention of kks_pairing this orientation is the positive one.
  return polar.J.transpose() * omega;
}

AgreementRecord verify_formulas(const CCState& s, const GroupSpec& group, double tol) {
  if (group.n1 != s.n1 || group.n2 != s.n2) {
    throw std::invalid_argument("verify_formulas: group dimensions do not match the state");
  }
  if (group.variant == GroupVariant::left_only) {
    return verify_formulas(cc_as_cq(s), group, tol);
  }
  const PartitionSummary ps = cc_partitions(s);
  const long long fdim = cc_dim(ps, s.n1, s.n2);
  const long long frank = cc_rank(ps, s.n1, s.n2);
  const StabilizerDescriptor stab = stabilizer_structure_cc(ps, group);
  const OracleReport oracle = numeric_orbit_report(cc_to_density(s), group, tol);
  return compare(fdim, frank, descriptor_dim(stab), oracle);
}

AgreementRecord verify_formulas(const CQState& s, const GroupSpec& group, double tol) {
  if (group.n1 != s.n1 || group.n2 != s.n2) {
    throw std::invalid_argument("verify_formulas: group dimensions do not match the state");
  }
  if (group.variant == GroupVariant::full_lu) {
    return verify_formulas(cq_as_cc(s), group, tol);
  }
  const PartitionSummary ps = cq_partitions(s);
  const long long fdim = cq_dim(ps, s.n1);
  const long long frank = cq_rank(ps, s.n1);
  const StabilizerDescriptor stab = stabilizer_structure_cq(ps, group);
  const OracleReport oracle = numeric_orbit_report(cq_to_density(s), group, tol);
  return compare(fdim, frank, descriptor_dim(stab), oracle);
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

CCState random_cc_state(int n1, int n2, SplitMix64& rng) {
  std::vector<std::int64_t> nums(static_cast<size_t>(n1) * n2);
  for (auto& v : nums) v = 1 + static_cast<std::int64_t>(rng.below(100));
  return cc_from_numerators(n1, n2, nums);
}

CQState random_cq_state(int n1, int n2, SplitMix64& rng) {
  std::vector<Scalar> weights;
  {
    std::vector<std::int64_t> nums(n1);
    std::int64_t den = 0;
    for (auto& v : nums) {
      v = 1 + static_cast<std::int64_t>(rng.below(100));
      den += v;
    }
    for (auto v : nums) weights.push_back(Scalar::exact(Rational(v, den)));
  }

  std::vector<std::vector<ComplexScalar>> blocks;
  blocks.reserve(n1);
  for (int i = 0; i < n1; ++i) {
    // Gram matrix of a small complex-integer matrix: Hermitian, positive
    // semidefinite, exactly rational after trace normalization.
    std::vector<std::int64_t> re(static_cast<size_t>(n2) * n2);
    std::vector<std::int64_t> im(re.size());
    std::int64_t trace = 0;
    do {
      for (size_t k = 0; k < re.size(); ++k) {
        re[k] = static_cast<std::int64_t>(rng.below(5)) - 2;
        im[k] = static_cast<std::int64_t>(rng.below(5)) - 2;
      }
      trace = 0;
      for (size_t k = 0; k < re.size(); ++k) trace += re[k] * re[k] + im[k] * im[k];
    } while (trace == 0);

    std::vector<ComplexScalar> block(static_cast<size_t>(n2) * n2);
    for (int k = 0; k < n2; ++k) {
      for (int l = 0; l < n2; ++l) {
        std::int64_t gram_re = 0, gram_im = 0;
        for (int m = 0; m < n2; ++m) {
          const size_t km = static_cast<size_t>(k) * n2 + m;
          const size_t lm = static_cast<size_t>(l) * n2 + m;
          // (M M^dagger)_{kl} = sum_m M_{km} conj(M_{lm})
          gram_re += re[km] * re[lm] + im[km] * im[lm];
          gram_im += im[km] * re[lm] - re[km] * im[lm];
        }
        block[static_cast<size_t>(k) * n2 + l] =
            ComplexScalar{Scalar::exact(Rational(gram_re, trace)),
                          Scalar::exact(Rational(gram_im, trace))};
      }
    }
    blocks.push_back(std::move(block));
  }
  return CQState::create(n1, n2, std::move(weights), std::move(blocks));
}

namespace {

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t kind, int n1, int n2) {
  SplitMix64 h(seed + kind * 0x100000000ull + static_cast<std::uint64_t>(n1) * 0x10000ull +
               static_cast<std::uint64_t>(n2));
  return h.next();
}

}  // namespace

std::vector<CCState> random_cc_corpus(std::uint64_t seed, int n1, int n2, int count) {
  SplitMix64 rng(stream_seed(seed, 1, n1, n2));
  std::vector<CCState> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) out.push_back(random_cc_state(n1, n2, rng));
  return out;
}

std::vector<CQState> random_cq_corpus(std::uint64_t seed, int n1, int n2, int count) {
  SplitMix64 rng(stream_seed(seed, 2, n1, n2));
  std::vector<CQState> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) out.push_back(random_cq_state(n1, n2, rng));
  return out;
}

std::vector<FamilyCase> two_qubit_paper_families() {
  auto cc = [](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
               std::int64_t den) {
    return CCState::create(2, 2,
                           {Scalar::exact(Rational(a, den)), Scalar::exact(Rational(b, den)),
                            Scalar::exact(Rational(c, den)), Scalar::exact(Rational(d, den))});
  };
  std::vector<FamilyCase> families;
  families.push_back({"distinct-sums", cc(5, 2, 2, 1, 10), 4, 4, 0});
  families.push_back({"identical-columns", cc(1, 1, 4, 4, 10), 2, 2, 0});
  families.push_back({"equal-column-sums", cc(1, 2, 4, 3, 10), 4, 2, 2});
  families.push_back({"identical-rows", cc(1, 4, 1, 4, 10), 2, 2, 0});
  families.push_back({"equal-row-sums", cc(1, 4, 2, 3, 10), 4, 2, 2});
  families.push_back({"magic-rectangle", cc(1, 4, 4, 1, 10), 4, 0, 4});
  families.push_back({"maximally-mixed", cc(1, 1, 1, 1, 4), 0, 0, 0});
  return families;
}

}  // namespace orbitatlas
