#include <Eigen/Dense>
#include <algorithm>
#include <complex>

#include "doctest.h"
#include "test_support.hpp"

using namespace orbitatlas;
using test_support::cc_exact;
using test_support::cc_float;
using test_support::cq_diag_exact;

namespace {

// Independent embedding oracle: sum_ij p_ij E_ii (x) E_jj assembled from
// explicit Kronecker products, without touching the library's indexing.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXcd unit(int i, int n) {
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(n, n);
  e(i, i) = 1.0;
  return e;
}

Eigen::MatrixXcd brute_force_cc(const CCState& s) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(s.n1 * s.n2, s.n1 * s.n2);
  for (int i = 0; i < s.n1; ++i)
    for (int j = 0; j < s.n2; ++j) out += s.at(i, j).value() * kron(unit(i, s.n1), unit(j, s.n2));
  return out;
}

Eigen::MatrixXcd brute_force_cq(const CQState& s) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(s.n1 * s.n2, s.n1 * s.n2);
  for (int i = 0; i < s.n1; ++i) out += s.p[i].value() * kron(unit(i, s.n1), s.block(i));
  return out;
}

}  // namespace

TEST_CASE("parse_state accepts the documented forms") {
  auto exact = parse_state(R"({"kind":"cc","p":[["1/4","1/4"],["1/4","1/4"]]})");
  const CCState& s = std::get<CCState>(exact);
  CHECK(s.n1 == 2);
  CHECK(s.n2 == 2);
  CHECK(s.mode == ScalarMode::exact);
  for (const Scalar& e : s.p) CHECK(e.rat() == Rational(1, 4));

  auto floating = parse_state(R"({"kind":"cc","p":[[0.5,0.2],[0.2,0.1]]})");
  const CCState& f = std::get<CCState>(floating);
  CHECK(f.mode == ScalarMode::floating);
  CHECK(f.at(0, 0).value() == doctest::Approx(0.5));

  auto sep = parse_state(R"({"kind":"pure_sep","dims":[2,3,4]})");
  CHECK(std::get<PureSeparableSpec>(sep).dims == std::vector<int>{2, 3, 4});

  auto cq = parse_state(
      R"({"kind":"cq","p":["1/2","1/2"],
          "blocks":[[[["1","0"],["0","0"]],[["0","0"],["0","0"]]],
                    [[["0","0"],["0","0"]],[["0","0"],["1","0"]]]]})");
  const CQState& q = std::get<CQState>(cq);
  CHECK(q.n1 == 2);
  CHECK(q.n2 == 2);
  CHECK(q.block(0)(0, 0) == std::complex<double>(1.0, 0.0));
}

TEST_CASE("parse_state rejects malformed documents") {
  CHECK_THROWS_AS(parse_state("not json"), ValidationError);
  CHECK_THROWS_AS(parse_state(R"({"kind":"nope","p":[[1]]})"), ValidationError);
  // normalization failure: entries sum to 1.4
  CHECK_THROWS_AS(parse_state(R"({"kind":"cc","p":[[0.5,0.6],[0.2,0.1]]})"), ValidationError);
  // negative weight
  CHECK_THROWS_AS(parse_state(R"({"kind":"cc","p":[[1.2,-0.2],[0.0,0.0]]})"), ValidationError);
  // mixed scalar modes
  CHECK_THROWS_AS(parse_state(R"({"kind":"cc","p":[["1/2",0.5],[0.0,0.0]]})"), ValidationError);
  // ragged matrix
  CHECK_THROWS_AS(parse_state(R"({"kind":"cc","p":[[0.5,0.5],[0.0]]})"), ValidationError);
  // non-Hermitian block
  CHECK_THROWS_AS(parse_state(
                      R"({"kind":"cq","p":[1.0],
                          "blocks":[[[[0.5,0],[1.0,0]],[[0.0,0],[0.5,0]]]]})"),
                  ValidationError);
  // block with a negative eigenvalue
  CHECK_THROWS_AS(parse_state(
                      R"({"kind":"cq","p":[1.0],
                          "blocks":[[[[1.5,0],[0,0]],[[0,0],[-0.5,0]]]]})"),
                  ValidationError);
  // zero denominator
  CHECK_THROWS_AS(parse_state(R"({"kind":"cc","p":[["1/0","0"],["0","0"]]})"), ValidationError);
  // pure_sep with a non-positive factor
  CHECK_THROWS_AS(parse_state(R"({"kind":"pure_sep","dims":[2,0]})"), ValidationError);
}

TEST_CASE("cc_to_density lays weights on the diagonal in row-major order") {
  auto pure = cc_exact(2, 2, {1, 0, 0, 0}, 1);
  Eigen::VectorXcd diag = cc_to_density(pure).mat.diagonal();
  CHECK(diag(0) == std::complex<double>(1, 0));
  CHECK(diag(1) == std::complex<double>(0, 0));

  auto mixed = cc_exact(2, 2, {1, 1, 1, 1}, 4);
  CHECK((cc_to_density(mixed).mat - 0.25 * Eigen::MatrixXcd::Identity(4, 4)).norm() == 0.0);

  auto generic = cc_float(2, 2, {0.5, 0.2, 0.2, 0.1});
  DensityMatrix rho = cc_to_density(generic);
  CHECK((rho.mat - brute_force_cc(generic)).norm() == 0.0);
  CHECK(rho.mat(1, 1) == std::complex<double>(0.2, 0));
  CHECK(rho.mat(2, 2) == std::complex<double>(0.2, 0));
}

TEST_CASE("cq_to_density stacks weighted blocks") {
  auto point = cq_diag_exact(2, 2, {Rational(1), Rational(0)},
                             {{Rational(1, 2), Rational(1, 2)}, {Rational(1), Rational(0)}});
  Eigen::MatrixXcd m = cq_to_density(point).mat;
  CHECK(m.block(2, 2, 2, 2).norm() == 0.0);
  CHECK(m(0, 0) == std::complex<double>(0.5, 0));

  auto mixed = cq_diag_exact(2, 2, {Rational(1, 2), Rational(1, 2)},
                             {{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}});
  CHECK((cq_to_density(mixed).mat - 0.25 * Eigen::MatrixXcd::Identity(4, 4)).norm() == 0.0);

  auto split = cq_diag_exact(2, 2, {Rational(1, 2), Rational(1, 2)},
                             {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}});
  Eigen::MatrixXcd d = cq_to_density(split).mat;
  CHECK((d - brute_force_cq(split)).norm() == 0.0);
  CHECK(d(0, 0) == std::complex<double>(0.5, 0));
  CHECK(d(3, 3) == std::complex<double>(0.5, 0));
  CHECK(d(1, 1) == std::complex<double>(0, 0));

  // random CQ states match the brute-force tensor assembly
  SplitMix64 rng(7);
  for (int k = 0; k < 10; ++k) {
    CQState s = random_cq_state(3, 2, rng);
    CHECK((cq_to_density(s).mat - brute_force_cq(s)).norm() < 1e-15);
  }
}

TEST_CASE("spectrum is the descending eigenvalue list") {
  auto mixed = cc_exact(2, 2, {1, 1, 1, 1}, 4);
  auto eigs = spectrum(cc_to_density(mixed));
  for (double v : eigs) CHECK(v == doctest::Approx(0.25));

  auto generic = cc_float(2, 2, {0.5, 0.2, 0.2, 0.1});
  auto sorted = spectrum(cc_to_density(generic));
  CHECK(sorted == std::vector<double>{0.5, 0.2, 0.2, 0.1});
}

TEST_CASE("spectrum of a CC embedding is the weight multiset") {
  SplitMix64 rng(11);
  for (int k = 0; k < 20; ++k) {
    CCState s = random_cc_state(3, 3, rng);
    std::vector<double> expected;
    for (const Scalar& e : s.p) expected.push_back(e.value());
    std::sort(expected.begin(), expected.end(), std::greater<double>());
    auto eigs = spectrum(cc_to_density(s));
    REQUIRE(eigs.size() == expected.size());
    // diagonal input: the eigensolver recovers the entries to the last ulp
    for (size_t i = 0; i < eigs.size(); ++i) CHECK(std::abs(eigs[i] - expected[i]) < 1e-15);
  }
}

TEST_CASE("cq_to_density with diagonal blocks matches cc_to_density") {
  SplitMix64 rng(13);
  for (int k = 0; k < 10; ++k) {
    CCState s = random_cc_state(2, 3, rng);
    CQState view = cc_as_cq(s);
    CHECK((cq_to_density(view).mat - cc_to_density(s).mat).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("serialization round-trips in both modes") {
  SplitMix64 rng(17);
  for (int k = 0; k < 10; ++k) {
    CCState s = random_cc_state(2, 4, rng);
    CCState back = std::get<CCState>(parse_state(serialize(s)));
    CHECK(s.identical(back));

    CCState f = test_support::to_float(s);
    CCState fback = std::get<CCState>(parse_state(serialize(f)));
    CHECK(f.identical(fback));

    CQState q = random_cq_state(3, 2, rng);
    CQState qback = std::get<CQState>(parse_state(serialize(q)));
    CHECK(q.identical(qback));

    CQState qf = test_support::to_float(q);
    CQState qfback = std::get<CQState>(parse_state(serialize(qf)));
    CHECK(qf.identical(qfback));
  }
  PureSeparableSpec spec = PureSeparableSpec::create({2, 5, 3});
  auto back = std::get<PureSeparableSpec>(parse_state(serialize(spec)));
  CHECK(back.dims == spec.dims);
}

TEST_CASE("cc_as_cq handles zero rows and cq_as_cc requires diagonal blocks") {
  auto pure = cc_exact(2, 2, {1, 0, 0, 0}, 1);
  CQState view = cc_as_cq(pure);
  CHECK(view.p[1].rat() == Rational(0));
  CHECK(view.weighted_block(1).norm() == 0.0);

  CCState round = cq_as_cc(view);
  CHECK(round.identical(pure));

  // a block with off-diagonal support cannot be viewed as CC
  std::vector<ComplexScalar> block(4);
  const Scalar h = Scalar::exact(Rational(1, 2));
  const Scalar z = Scalar::exact(Rational(0));
  block[0] = {h, z};
  block[1] = {h, z};
  block[2] = {h, z};
  block[3] = {h, z};
  CQState off = CQState::create(2, 2, {Scalar::exact(Rational(1, 2)), Scalar::exact(Rational(1, 2))},
                                {block, block});
  CHECK_THROWS_AS(cq_as_cc(off), ValidationError);
}

TEST_CASE("density matrix validation") {
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
  bad(0, 0) = 1.5;
  bad(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix::create(bad), ValidationError);

  Eigen::MatrixXcd nonherm = Eigen::MatrixXcd::Zero(2, 2);
  nonherm(0, 0) = 1.0;
  nonherm(0, 1) = 0.5;
  CHECK_THROWS_AS(DensityMatrix::create(nonherm), ValidationError);

  Eigen::MatrixXcd wrong_trace = 0.4 * Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix::create(wrong_trace), ValidationError);
}
