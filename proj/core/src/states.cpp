#include "orbitatlas/states.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <utility>

#include "json.hpp"

namespace orbitatlas {

namespace {

using nlohmann::json;

constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kNormalizationTol = 1e-12;
constexpr double kPsdTol = 1e-10;

void check_finite(const Scalar& s, const char* what) {
  if (!s.is_exact() && !std::isfinite(s.value())) {
    throw ValidationError(std::string(what) + " is not finite");
  }
}

void check_uniform_mode(ScalarMode mode, const Scalar& s) {
  if (s.mode() != mode) {
    throw ValidationError("mixed scalar modes within one state");
  }
}

// Unit-sum check: exact states must sum to exactly one, floating states
// within 1e-12.
void check_normalized(ScalarMode mode, const Scalar& sum) {
  if (mode == ScalarMode::exact) {
    if (sum.rat() != Rational(1)) {
      throw ValidationError("weights sum to " + sum.rat().str() + ", expected 1");
    }
  } else if (std::abs(sum.value() - 1.0) > kNormalizationTol) {
    throw ValidationError("weights sum to " + std::to_string(sum.value()) + ", expected 1");
  }
}

void check_nonnegative(const Scalar& s, const char* what) {
  bool negative = s.is_exact() ? s.rat().is_negative() : s.value() < 0.0;
  if (negative) throw ValidationError(std::string(what) + " is negative");
}

double min_eigenvalue(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ValidationError("eigensolver failed on a state block");
  }
  return solver.eigenvalues().minCoeff();
}

Scalar parse_scalar(const json& node) {
  if (node.is_string()) {
    try {
      return Scalar::exact(Rational::parse(node.get<std::string>()));
    } catch (const std::exception& e) {
      throw ValidationError(e.what());
    }
  }
  if (node.is_number()) {
    double v = node.get<double>();
    if (!std::isfinite(v)) throw ValidationError("non-finite numeric entry");
    return Scalar::floating(v);
  }
  throw ValidationError("scalar entries must be numbers or rational strings");
}

// First scalar encountered fixes the document's mode.
class ModeTracker {
 public:
  Scalar take(const json& node) {
    Scalar s = parse_scalar(node);
    if (!seen_) {
      mode_ = s.mode();
      seen_ = true;
    } else if (s.mode() != mode_) {
      throw ValidationError("mixed scalar modes within one state");
    }
    return s;
  }
  ScalarMode mode() const { return mode_; }

 private:
  ScalarMode mode_ = ScalarMode::exact;
  bool seen_ = false;
};

CCState parse_cc(const json& doc) {
  const json& rows = doc.at("p");
  if (!rows.is_array() || rows.empty()) throw ValidationError("cc: 'p' must be a nonempty array");
  int n1 = static_cast<int>(rows.size());
  int n2 = -1;
  ModeTracker tracker;
  std::vector<Scalar> entries;
  for (const json& row : rows) {
    if (!row.is_array() || row.empty()) throw ValidationError("cc: weight rows must be nonempty arrays");
    if (n2 < 0) {
      n2 = static_cast<int>(row.size());
    } else if (static_cast<int>(row.size()) != n2) {
      throw ValidationError("cc: ragged weight matrix");
    }
    for (const json& cell : row) entries.push_back(tracker.take(cell));
  }
  return CCState::create(n1, n2, std::move(entries));
}

ComplexScalar parse_complex(const json& node, ModeTracker& tracker) {
  if (!node.is_array() || node.size() != 2) {
    throw ValidationError("cq: block entries must be [re, im] pairs");
  }
  return ComplexScalar{tracker.take(node[0]), tracker.take(node[1])};
}

CQState parse_cq(const json& doc) {
  const json& weights = doc.at("p");
  const json& blocks = doc.at("blocks");
  if (!weights.is_array() || weights.empty()) throw ValidationError("cq: 'p' must be a nonempty array");
  if (!blocks.is_array() || blocks.size() != weights.size()) {
    throw ValidationError("cq: need one block per weight");
  }
  int n1 = static_cast<int>(weights.size());
  ModeTracker tracker;
  std::vector<Scalar> p;
  p.reserve(weights.size());
  for (const json& w : weights) p.push_back(tracker.take(w));

  int n2 = -1;
  std::vector<std::vector<ComplexScalar>> parsed_blocks;
  for (const json& block : blocks) {
    if (!block.is_array() || block.empty()) throw ValidationError("cq: blocks must be square arrays");
    if (n2 < 0) {
      n2 = static_cast<int>(block.size());
    } else if (static_cast<int>(block.size()) != n2) {
      throw ValidationError("cq: blocks disagree in size");
    }
    std::vector<ComplexScalar> entries;
    for (const json& row : block) {
      if (!row.is_array() || static_cast<int>(row.size()) != n2) {
        throw ValidationError("cq: ragged block");
      }
      for (const json& cell : row) entries.push_back(parse_complex(cell, tracker));
    }
    parsed_blocks.push_back(std::move(entries));
  }
  return CQState::create(n1, n2, std::move(p), std::move(parsed_blocks));
}

PureSeparableSpec parse_pure_sep(const json& doc) {
  const json& dims = doc.at("dims");
  if (!dims.is_array() || dims.empty()) throw ValidationError("pure_sep: 'dims' must be a nonempty array");
  std::vector<int> out;
  for (const json& d : dims) {
    if (!d.is_number_integer()) throw ValidationError("pure_sep: dims must be integers");
    out.push_back(d.get<int>());
  }
  return PureSeparableSpec::create(std::move(out));
}

json scalar_to_json(const Scalar& s) {
  if (s.is_exact()) return json(s.rat().str());
  return json(s.value());
}

}  // namespace

CCState CCState::create(int n1, int n2, std::vector<Scalar> entries) {
  if (n1 < 1 || n2 < 1) throw ValidationError("cc: dimensions must be positive");
  if (entries.size() != static_cast<size_t>(n1) * n2) {
    throw ValidationError("cc: entry count does not match dimensions");
  }
  CCState s;
  s.n1 = n1;
  s.n2 = n2;
  s.mode = entries.front().mode();
  for (const Scalar& e : entries) {
    check_uniform_mode(s.mode, e);
    check_finite(e, "cc weight");
    check_nonnegative(e, "cc weight");
  }
  Scalar sum = entries.front();
  for (size_t k = 1; k < entries.size(); ++k) sum = sum + entries[k];
  check_normalized(s.mode, sum);
  s.p = std::move(entries);
  return s;
}

Eigen::MatrixXd CCState::weights() const {
  Eigen::MatrixXd w(n1, n2);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) w(i, j) = at(i, j).value();
  return w;
}

CCState CCState::transposed() const {
  std::vector<Scalar> entries;
  entries.reserve(p.size());
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i) entries.push_back(at(i, j));
  return CCState::create(n2, n1, std::move(entries));
}

bool CCState::identical(const CCState& o) const {
  if (n1 != o.n1 || n2 != o.n2 || mode != o.mode) return false;
  for (size_t k = 0; k < p.size(); ++k)
    if (!p[k].identical(o.p[k])) return false;
  return true;
}

CQState CQState::create(int n1, int n2, std::vector<Scalar> weights,
                        std::vector<std::vector<ComplexScalar>> blocks) {
  if (n1 < 1 || n2 < 1) throw ValidationError("cq: dimensions must be positive");
  if (weights.size() != static_cast<size_t>(n1) || blocks.size() != static_cast<size_t>(n1)) {
    throw ValidationError("cq: need n1 weights and n1 blocks");
  }
  CQState s;
  s.n1 = n1;
  s.n2 = n2;
  s.mode = weights.front().mode();
  for (const Scalar& w : weights) {
    check_uniform_mode(s.mode, w);
    check_finite(w, "cq weight");
    check_nonnegative(w, "cq weight");
  }
  Scalar sum = weights.front();
  for (size_t k = 1; k < weights.size(); ++k) sum = sum + weights[k];
  check_normalized(s.mode, sum);

  for (const auto& block : blocks) {
    if (block.size() != static_cast<size_t>(n2) * n2) {
      throw ValidationError("cq: block size does not match n2");
    }
    for (const ComplexScalar& e : block) {
      check_uniform_mode(s.mode, e.re);
      check_uniform_mode(s.mode, e.im);
      check_finite(e.re, "cq block entry");
      check_finite(e.im, "cq block entry");
    }
  }
  s.p = std::move(weights);
  s.blocks = std::move(blocks);

  for (int i = 0; i < n1; ++i) {
    Eigen::MatrixXcd b = s.block(i);
    if ((b - b.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
      throw ValidationError("cq: block " + std::to_string(i) + " is not Hermitian");
    }
    if (std::abs(b.trace().real() - 1.0) > kTraceTol || std::abs(b.trace().imag()) > kTraceTol) {
      throw ValidationError("cq: block " + std::to_string(i) + " is not trace one");
    }
    if (min_eigenvalue(b) < -kPsdTol) {
      throw ValidationError("cq: block " + std::to_string(i) + " is not positive semidefinite");
    }
  }
  return s;
}

Eigen::MatrixXcd CQState::block(int i) const {
  Eigen::MatrixXcd b(n2, n2);
  for (int k = 0; k < n2; ++k)
    for (int l = 0; l < n2; ++l) b(k, l) = block_entry(i, k, l).value();
  return b;
}

Eigen::MatrixXcd CQState::weighted_block(int i) const { return p[i].value() * block(i); }

bool CQState::identical(const CQState& o) const {
  if (n1 != o.n1 || n2 != o.n2 || mode != o.mode) return false;
  for (size_t k = 0; k < p.size(); ++k)
    if (!p[k].identical(o.p[k])) return false;
  for (size_t i = 0; i < blocks.size(); ++i)
    for (size_t k = 0; k < blocks[i].size(); ++k)
      if (!blocks[i][k].identical(o.blocks[i][k])) return false;
  return true;
}

PureSeparableSpec PureSeparableSpec::create(std::vector<int> dims) {
  if (dims.empty()) throw ValidationError("pure_sep: need at least one factor");
  for (int d : dims) {
    if (d < 1) throw ValidationError("pure_sep: factor dimensions must be positive");
  }
  return PureSeparableSpec{std::move(dims)};
}

DensityMatrix DensityMatrix::create(Eigen::MatrixXcd m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw ValidationError("density matrix must be square");
  }
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw ValidationError("density matrix is not Hermitian");
  }
  std::complex<double> tr = m.trace();
  if (std::abs(tr.real() - 1.0) > kTraceTol || std::abs(tr.imag()) > kTraceTol) {
    throw ValidationError("density matrix is not trace one");
  }
  if (min_eigenvalue(m) < -kPsdTol) {
    throw ValidationError("density matrix is not positive semidefinite");
  }
  return DensityMatrix{std::move(m)};
}

ParsedState parse_state(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw ValidationError("document must be a JSON object");
    std::string kind = doc.at("kind").get<std::string>();
    if (kind == "cc") return parse_cc(doc);
    if (kind == "cq") return parse_cq(doc);
    if (kind == "pure_sep") return parse_pure_sep(doc);
    throw ValidationError("unknown state kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw ValidationError(std::string("schema violation: ") + e.what());
  }
}

std::string serialize(const CCState& s) {
  json rows = json::array();
  for (int i = 0; i < s.n1; ++i) {
    json row = json::array();
    for (int j = 0; j < s.n2; ++j) row.push_back(scalar_to_json(s.at(i, j)));
    rows.push_back(std::move(row));
  }
  return json{{"kind", "cc"}, {"p", std::move(rows)}}.dump();
}

std::string serialize(const CQState& s) {
  json weights = json::array();
  for (const Scalar& w : s.p) weights.push_back(scalar_to_json(w));
  json blocks = json::array();
  for (int i = 0; i < s.n1; ++i) {
    json block = json::array();
    for (int k = 0; k < s.n2; ++k) {
      json row = json::array();
      for (int l = 0; l < s.n2; ++l) {
        const ComplexScalar& e = s.block_entry(i, k, l);
        row.push_back(json::array({scalar_to_json(e.re), scalar_to_json(e.im)}));
      }
      block.push_back(std::move(row));
    }
    blocks.push_back(std::move(block));
  }
  return json{{"kind", "cq"}, {"p", std::move(weights)}, {"blocks", std::move(blocks)}}.dump();
}

std::string serialize(const PureSeparableSpec& s) {
  return json{{"kind", "pure_sep"}, {"dims", s.dims}}.dump();
}

std::string serialize(const ParsedState& s) {
  return std::visit([](const auto& state) { return serialize(state); }, s);
}

DensityMatrix cc_to_density(const CCState& s) {
  const int n = s.n1 * s.n2;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < s.n1; ++i)
    for (int j = 0; j < s.n2; ++j) m(i * s.n2 + j, i * s.n2 + j) = s.at(i, j).value();
  return DensityMatrix::create(std::move(m));
}

DensityMatrix cq_to_density(const CQState& s) {
  const int n = s.n1 * s.n2;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < s.n1; ++i) {
    m.block(i * s.n2, i * s.n2, s.n2, s.n2) = s.weighted_block(i);
  }
  return DensityMatrix::create(std::move(m));
}

std::vector<double> spectrum(const DensityMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m.mat, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed");
  }
  std::vector<double> eigs(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(eigs.begin(), eigs.end(), std::greater<double>());
  return eigs;
}

CCState cq_as_cc(const CQState& s) {
  std::vector<Scalar> entries;
  entries.reserve(static_cast<size_t>(s.n1) * s.n2);
  for (int i = 0; i < s.n1; ++i) {
    for (int j = 0; j < s.n2; ++j) {
      for (int l = 0; l < s.n2; ++l) {
        if (l == j) continue;
        const ComplexScalar& off = s.block_entry(i, j, l);
        bool zero = s.mode == ScalarMode::exact
                        ? off.re.rat().is_zero() && off.im.rat().is_zero()
                        : std::abs(off.value()) <= 1e-12;
        if (!zero) {
          throw ValidationError("state is not diagonal in the canonical product basis");
        }
      }
      entries.push_back(s.p[i] * s.block_entry(i, j, j).re);
    }
  }
  return CCState::create(s.n1, s.n2, std::move(entries));
}

CQState cc_as_cq(const CCState& s) {
  std::vector<Scalar> weights;
  std::vector<std::vector<ComplexScalar>> blocks;
  const Scalar zero = s.mode == ScalarMode::exact ? Scalar::exact(Rational(0)) : Scalar::floating(0.0);
  for (int i = 0; i < s.n1; ++i) {
    Scalar row_sum = s.at(i, 0);
    for (int j = 1; j < s.n2; ++j) row_sum = row_sum + s.at(i, j);
    weights.push_back(row_sum);

    const bool zero_row = s.mode == ScalarMode::exact ? row_sum.rat().is_zero() : row_sum.value() == 0.0;
    std::vector<ComplexScalar> block(static_cast<size_t>(s.n2) * s.n2, ComplexScalar{zero, zero});
    for (int j = 0; j < s.n2; ++j) {
      Scalar diag = zero_row
                        ? (s.mode == ScalarMode::exact ? Scalar::exact(Rational(1, s.n2))
                                                       : Scalar::floating(1.0 / s.n2))
                        : s.at(i, j) / row_sum;
      block[static_cast<size_t>(j) * s.n2 + j] = ComplexScalar{diag, zero};
    }
    blocks.push_back(std::move(block));
  }
  return CQState::create(s.n1, s.n2, std::move(weights), std::move(blocks));
}

}  // namespace orbitatlas
