#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "orbitatlas/scalar.hpp"

namespace orbitatlas {

// Raised for malformed input documents and violated state invariants.
// The CLI maps it to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bipartite state that is classical on both factors: an n1 x n2 matrix of
// nonnegative weights summing to one, giving rho = sum_ij p_ij E_ii (x) E_jj
// in a fixed product basis. Entries are stored row-major.
struct CCState {
  int n1 = 0;
  int n2 = 0;
  ScalarMode mode = ScalarMode::exact;
  std::vector<Scalar> p;

  static CCState create(int n1, int n2, std::vector<Scalar> entries);

  const Scalar& at(int i, int j) const { return p[static_cast<size_t>(i) * n2 + j]; }
  Eigen::MatrixXd weights() const;
  CCState transposed() const;
  bool identical(const CCState& o) const;
};

// Classical on the first factor only: weights p_i with one n2 x n2 density
// block per index, rho = sum_i p_i E_ii (x) rho_i.
struct CQState {
  int n1 = 0;
  int n2 = 0;
  ScalarMode mode = ScalarMode::exact;
  std::vector<Scalar> p;
  std::vector<std::vector<ComplexScalar>> blocks;  // each n2*n2, row-major

  static CQState create(int n1, int n2, std::vector<Scalar> weights,
                        std::vector<std::vector<ComplexScalar>> blocks);

  const ComplexScalar& block_entry(int i, int k, int l) const {
    return blocks[i][static_cast<size_t>(k) * n2 + l];
  }
  Eigen::MatrixXcd block(int i) const;
  Eigen::MatrixXcd weighted_block(int i) const;  // p_i * rho_i
  bool identical(const CQState& o) const;
};

// Pure product state of L distinguishable subsystems; only the local
// dimensions matter for the topology of its local-unitary orbit.
struct PureSeparableSpec {
  std::vector<int> dims;
  static PureSeparableSpec create(std::vector<int> dims);
};

// Validated density matrix: Hermitian within 1e-12, unit trace within
// 1e-12, smallest eigenvalue >= -1e-10.
struct DensityMatrix {
  Eigen::MatrixXcd mat;
  static DensityMatrix create(Eigen::MatrixXcd m);
  int dim() const { return static_cast<int>(mat.rows()); }
};

using ParsedState = std::variant<CCState, CQState, PureSeparableSpec>;

// JSON front end. Rational strings like "1/4" produce exact states,
// decimal literals produce floating ones; the two may not mix within a
// single document.
ParsedState parse_state(std::string_view json_text);
std::string serialize(const CCState& s);
std::string serialize(const CQState& s);
std::string serialize(const PureSeparableSpec& s);
std::string serialize(const ParsedState& s);

// Embeddings into the product space. Composite indexing is row-major:
// (i, j) -> i * n2 + j, both zero-based.
DensityMatrix cc_to_density(const CCState& s);
DensityMatrix cq_to_density(const CQState& s);

// Eigenvalues in descending order.
std::vector<double> spectrum(const DensityMatrix& m);

// A CC state seen with only the left factor classical: weights are row
// sums, blocks the normalized rows. Zero rows get the maximally mixed
// block (the weighted block is zero either way).
CQState cc_as_cq(const CCState& s);

// A CQ state whose blocks are all diagonal in the canonical basis is a CC
// state with p_ij = p_i (rho_i)_jj; throws ValidationError otherwise.
CCState cq_as_cc(const CQState& s);

}  // namespace orbitatlas
