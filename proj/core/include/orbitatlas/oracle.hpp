#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbitatlas/classify.hpp"
#include "orbitatlas/lie.hpp"
#include "orbitatlas/topology.hpp"

namespace orbitatlas {

// Kostant-Sternberg trichotomy of a positive root at a torus-fixed state:
// the root plane is absent, present but isotropic, or present and
// symplectic.
enum class RootCase { annihilated, isotropic, symplectic };

struct RootTag {
  RootId root;
  RootCase tag = RootCase::annihilated;
};

// Everything the dense linear-algebra route can say about one orbit,
// independently of the combinatorial formulas.
struct OracleReport {
  int dim = 0;
  int rank_omega = 0;
  int degeneracy = 0;
  int stabilizer_dim = 0;
  std::optional<bool> almost_complex;  // set when the state is torus-fixed
  std::vector<RootTag> root_census;    // empty when the state is not torus-fixed
  double tol = 0.0;
  bool rank_warning = false;  // a singular value fell within a decade of the cut
};

// Orbit dimension as the rank of the span of the orbit directions
// [B_a, rho], symplectic rank as the rank of the pairing matrix
// Omega_ab = omega(B_a, B_b), both decided by singular values against a
// relative threshold tol * sigma_max.
OracleReport numeric_orbit_report(const DensityMatrix& rho, const GroupSpec& group,
                                  double tol = 1e-9);

// Per-root tags from the norms of [E_root, rho], [E_-root, rho] and
// |tr(rho H_root)|. Requires a torus-fixed state (diagonal for the full
// group, block-diagonal for the left-only group); throws otherwise.
std::vector<RootTag> root_case_census(const DensityMatrix& rho, const GroupSpec& group,
                                      double tol = 1e-9);

// Containment test for the inherited complex structure: every orbit
// direction v = [B_a, rho] must satisfy [i rho, v] in span{ [B_b, rho] },
// decided by least squares with residual < tol * |[i rho, v]|.
// Requires a torus-fixed state. A zero-dimensional orbit passes vacuously.
bool almost_complex_check(const DensityMatrix& rho, const GroupSpec& group, double tol = 1e-8);

// Polar factorization of ad_rho = [i rho, .] restricted to the orthogonal
// complement of the stabilizer algebra: ad = J P with J orthogonal,
// J^2 = -I and P positive, all expressed on an orthonormal basis of that
// complement. Throws when the restriction is singular.
struct PolarComplexStructure {
  std::vector<Eigen::MatrixXcd> tangent_basis;  // orthonormal under hs_inner
  Eigen::MatrixXd J;
  Eigen::MatrixXd P;
  double j_squared_residual = 0.0;     // |J^2 + I|_F
  double orthogonality_residual = 0.0; // |J^T J - I|_F
  double commutation_residual = 0.0;   // |J P - P J|_F
};

PolarComplexStructure polar_complex_structure(const DensityMatrix& rho, const GroupSpec& group);

// Riemannian metric compatible with the pairing and the polar complex
// structure, expressed on the tangent basis of `polar`; symmetric positive
// definite wherever the restricted pairing is nondegenerate.
Eigen::MatrixXd compatible_metric(const PolarComplexStructure& polar, const DensityMatrix& rho);

// Formula-versus-oracle comparison for one state.
struct FieldCheck {
  long long formula = 0;
  long long oracle = 0;
  bool match() const { return formula == oracle; }
};

struct AgreementRecord {
  FieldCheck dim, rank, degeneracy, stabilizer_dim;
  bool oracle_warning = false;
  bool all_match() const {
    return dim.match() && rank.match() && degeneracy.match() && stabilizer_dim.match();
  }
};

// CC states run under the full group directly and under the left-only
// group through their CQ presentation. CQ states run under the left-only
// group; under the full group they are accepted only when every block is
// diagonal (the state is CC in the canonical basis).
AgreementRecord verify_formulas(const CCState& s, const GroupSpec& group, double tol = 1e-9);
AgreementRecord verify_formulas(const CQState& s, const GroupSpec& group, double tol = 1e-9);

// Deterministic, platform-independent generator for reproducible corpora.
struct SplitMix64 {
  std::uint64_t state = 0;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next();
  std::uint64_t below(std::uint64_t n);  // uniform-ish in [0, n)
};

// Random exact states: integer numerators from [1, 100] over their sum.
// CQ blocks are Gram matrices of small complex-integer matrices,
// normalized to unit trace, so weighted blocks stay on a coarse rational
// lattice and equality decisions are robust downstream.
CCState random_cc_state(int n1, int n2, SplitMix64& rng);
CQState random_cq_state(int n1, int n2, SplitMix64& rng);

// Size classes draw from independent streams derived from (seed, kind,
// n1, n2), so a sweep is reproducible per class and order-independent.
std::vector<CCState> random_cc_corpus(std::uint64_t seed, int n1, int n2, int count);
std::vector<CQState> random_cq_corpus(std::uint64_t seed, int n1, int n2, int count);

// The four two-qubit weight families with closed-form orbit data, plus the
// point orbit, used by the verification harness.
struct FamilyCase {
  std::string name;
  CCState state;
  int dim = 0;
  int rank = 0;
  int degeneracy = 0;
};

std::vector<FamilyCase> two_qubit_paper_families();

}  // namespace orbitatlas
