#include "orbitatlas/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "orbitatlas/topology.hpp"

namespace orbitatlas {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// C(n, 2) with C(a, 2) = 0 for a < 2.
long long pairs(long long n) { return n < 2 ? 0 : n * (n - 1) / 2; }

long long pair_sum(const Partition& p) {
  long long total = 0;
  for (const auto& cls : p.classes) total += pairs(static_cast<long long>(cls.size()));
  return total;
}

// Exact equality as a distance: 0 or infinity.
double exact_dist(bool equal) { return equal ? 0.0 : kInf; }

struct CCView {
  const CCState& s;

  double row_sum_dist(int a, int b) const {
    if (s.mode == ScalarMode::exact) {
      Rational sa(0), sb(0);
      for (int j = 0; j < s.n2; ++j) {
        sa += s.at(a, j).rat();
        sb += s.at(b, j).rat();
      }
      return exact_dist(sa == sb);
    }
    double sa = 0, sb = 0;
    for (int j = 0; j < s.n2; ++j) {
      sa += s.at(a, j).value();
      sb += s.at(b, j).value();
    }
    return std::abs(sa - sb);
  }

  double col_sum_dist(int a, int b) const {
    if (s.mode == ScalarMode::exact) {
      Rational sa(0), sb(0);
      for (int i = 0; i < s.n1; ++i) {
        sa += s.at(i, a).rat();
        sb += s.at(i, b).rat();
      }
      return exact_dist(sa == sb);
    }
    double sa = 0, sb = 0;
    for (int i = 0; i < s.n1; ++i) {
      sa += s.at(i, a).value();
      sb += s.at(i, b).value();
    }
    return std::abs(sa - sb);
  }

  double row_dist(int a, int b) const {
    if (s.mode == ScalarMode::exact) {
      for (int j = 0; j < s.n2; ++j)
        if (s.at(a, j).rat() != s.at(b, j).rat()) return kInf;
      return 0.0;
    }
    double d = 0;
    for (int j = 0; j < s.n2; ++j) d = std::max(d, std::abs(s.at(a, j).value() - s.at(b, j).value()));
    return d;
  }

  double col_dist(int a, int b) const {
    if (s.mode == ScalarMode::exact) {
      for (int i = 0; i < s.n1; ++i)
        if (s.at(i, a).rat() != s.at(i, b).rat()) return kInf;
      return 0.0;
    }
    double d = 0;
    for (int i = 0; i < s.n1; ++i) d = std::max(d, std::abs(s.at(i, a).value() - s.at(i, b).value()));
    return d;
  }
};

}  // namespace

Partition Partition::discrete(int n) {
  Partition p;
  for (int i = 0; i < n; ++i) p.classes.push_back({i});
  return p;
}

std::vector<int> Partition::sizes() const {
  std::vector<int> out;
  out.reserve(classes.size());
  for (const auto& cls : classes) out.push_back(static_cast<int>(cls.size()));
  return out;
}

int Partition::element_count() const {
  int n = 0;
  for (const auto& cls : classes) n += static_cast<int>(cls.size());
  return n;
}

bool Partition::refines(const Partition& coarser) const {
  for (const auto& cls : classes) {
    bool contained = false;
    for (const auto& big : coarser.classes) {
      if (std::includes(big.begin(), big.end(), cls.begin(), cls.end())) {
        contained = true;
        break;
      }
    }
    if (!contained) return false;
  }
  return true;
}

Partition Partition::intersect(const Partition& other) const {
  const int n = element_count();
  std::vector<int> mine(n, -1), theirs(n, -1);
  for (size_t c = 0; c < classes.size(); ++c)
    for (int i : classes[c]) mine[i] = static_cast<int>(c);
  for (size_t c = 0; c < other.classes.size(); ++c)
    for (int i : other.classes[c]) theirs[i] = static_cast<int>(c);

  Partition out;
  for (int i = 0; i < n; ++i) {
    int found = -1;
    for (size_t c = 0; c < out.classes.size(); ++c) {
      int rep = out.classes[c].front();
      if (mine[rep] == mine[i] && theirs[rep] == theirs[i]) {
        found = static_cast<int>(c);
        break;
      }
    }
    if (found < 0) {
      out.classes.push_back({i});
    } else {
      out.classes[found].push_back(i);
    }
  }
  return out;
}

Partition cluster_by_distance(int n, const std::function<double(int, int)>& dist, double tol,
                              bool* ambiguous) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double d = dist(i, j);
      if (d <= tol) {
        parent[find(j)] = find(i);
      } else if (ambiguous != nullptr && d <= 10.0 * tol) {
        *ambiguous = true;
      }
    }
  }
  Partition out;
  std::vector<int> class_of(n, -1);
  for (int i = 0; i < n; ++i) {
    int root = find(i);
    if (class_of[root] < 0) {
      class_of[root] = static_cast<int>(out.classes.size());
      out.classes.push_back({});
    }
    out.classes[class_of[root]].push_back(i);
  }
  return out;
}

PartitionSummary cc_partitions(const CCState& s, double tol) {
  CCView view{s};
  PartitionSummary ps;
  ps.flavor = PartitionFlavor::cc;
  bool ambiguous = false;
  ps.row_sum_classes = cluster_by_distance(
      s.n1, [&](int a, int b) { return view.row_sum_dist(a, b); }, tol, &ambiguous);
  ps.col_sum_classes = cluster_by_distance(
      s.n2, [&](int a, int b) { return view.col_sum_dist(a, b); }, tol, &ambiguous);
  ps.row_eq_classes = cluster_by_distance(
      s.n1, [&](int a, int b) { return view.row_dist(a, b); }, tol, &ambiguous);
  ps.col_eq_classes = cluster_by_distance(
      s.n2, [&](int a, int b) { return view.col_dist(a, b); }, tol, &ambiguous);
  // Identical rows have identical sums; enforce the refinement under
  // floating-point clustering as well.
  ps.row_eq_classes = ps.row_eq_classes.intersect(ps.row_sum_classes);
  ps.col_eq_classes = ps.col_eq_classes.intersect(ps.col_sum_classes);
  ps.ambiguity_warning = ambiguous;
  return ps;
}

PartitionSummary cq_partitions(const CQState& s, double tol) {
  PartitionSummary ps;
  ps.flavor = PartitionFlavor::cq;
  bool ambiguous = false;

  auto weight_dist = [&](int a, int b) -> double {
    if (s.mode == ScalarMode::exact) return exact_dist(s.p[a].rat() == s.p[b].rat());
    return std::abs(s.p[a].value() - s.p[b].value());
  };
  auto block_dist = [&](int a, int b) -> double {
    if (s.mode == ScalarMode::exact) {
      for (int k = 0; k < s.n2; ++k) {
        for (int l = 0; l < s.n2; ++l) {
          const ComplexScalar& ea = s.block_entry(a, k, l);
          const ComplexScalar& eb = s.block_entry(b, k, l);
          if (s.p[a].rat() * ea.re.rat() != s.p[b].rat() * eb.re.rat() ||
              s.p[a].rat() * ea.im.rat() != s.p[b].rat() * eb.im.rat()) {
            return kInf;
          }
        }
      }
      return 0.0;
    }
    return (s.weighted_block(a) - s.weighted_block(b)).cwiseAbs().maxCoeff();
  };

  ps.weight_classes = cluster_by_distance(s.n1, weight_dist, tol, &ambiguous);
  ps.block_classes = cluster_by_distance(s.n1, block_dist, tol, &ambiguous);
  // Equal weighted blocks have equal traces, hence equal weights.
  ps.block_classes = ps.block_classes.intersect(ps.weight_classes);
  ps.ambiguity_warning = ambiguous;
  return ps;
}

int cc_dim(const PartitionSummary& ps, int n1, int n2) {
  return static_cast<int>(2 * (pairs(n1) - pair_sum(ps.row_eq_classes) + pairs(n2) -
                               pair_sum(ps.col_eq_classes)));
}

int cc_rank(const PartitionSummary& ps, int n1, int n2) {
  return static_cast<int>(2 * (pairs(n1) - pair_sum(ps.row_sum_classes) + pairs(n2) -
                               pair_sum(ps.col_sum_classes)));
}

int cq_dim(const PartitionSummary& ps, int n1) {
  return static_cast<int>(2 * (pairs(n1) - pair_sum(ps.block_classes)));
}

int cq_rank(const PartitionSummary& ps, int n1) {
  return static_cast<int>(2 * (pairs(n1) - pair_sum(ps.weight_classes)));
}

bool cc_is_kahler(const CCState& s, double tol) {
  if (s.mode == ScalarMode::exact) {
    int ones = 0;
    bool rest_zero = true;
    bool uniform = true;
    const Rational mixed(1, static_cast<std::int64_t>(s.n1) * s.n2);
    for (const Scalar& e : s.p) {
      if (e.rat() == Rational(1)) {
        ++ones;
      } else if (!e.rat().is_zero()) {
        rest_zero = false;
      }
      if (e.rat() != mixed) uniform = false;
    }
    return (ones == 1 && rest_zero) || uniform;
  }
  const double mixed = 1.0 / (static_cast<double>(s.n1) * s.n2);
  int ones = 0;
  bool rest_zero = true;
  bool uniform = true;
  for (const Scalar& e : s.p) {
    double v = e.value();
    if (std::abs(v - 1.0) <= tol) {
      ++ones;
    } else if (std::abs(v) > tol) {
      rest_zero = false;
    }
    if (std::abs(v - mixed) > tol) uniform = false;
  }
  return (ones == 1 && rest_zero) || uniform;
}

bool cc_is_magic(const CCState& s, double tol) {
  CCView view{s};
  // Constant sums along both directions.
  for (int i = 1; i < s.n1; ++i)
    if (view.row_sum_dist(0, i) > tol) return false;
  for (int j = 1; j < s.n2; ++j)
    if (view.col_sum_dist(0, j) > tol) return false;
  // Pairwise-distinct entries within every row and every column.
  auto distinct = [&](const Scalar& a, const Scalar& b) {
    if (s.mode == ScalarMode::exact) return a.rat() != b.rat();
    return std::abs(a.value() - b.value()) > tol;
  };
  for (int i = 0; i < s.n1; ++i)
    for (int j = 0; j < s.n2; ++j)
      for (int k = j + 1; k < s.n2; ++k)
        if (!distinct(s.at(i, j), s.at(i, k))) return false;
  for (int j = 0; j < s.n2; ++j)
    for (int i = 0; i < s.n1; ++i)
      for (int k = i + 1; k < s.n1; ++k)
        if (!distinct(s.at(i, j), s.at(k, j))) return false;
  return true;
}

OrbitReport cc_report(const CCState& s, double tol) {
  PartitionSummary ps = cc_partitions(s, tol);
  OrbitReport r;
  r.dim = cc_dim(ps, s.n1, s.n2);
  r.rank = cc_rank(ps, s.n1, s.n2);
  r.degeneracy = r.dim - r.rank;
  // Symplectic iff every equal-sum class is a single equality class, on
  // both sides; with the forced refinement that is partition equality.
  r.symplectic = ps.row_sum_classes == ps.row_eq_classes && ps.col_sum_classes == ps.col_eq_classes;
  r.kahler = cc_is_kahler(s, tol);
  r.magic_rectangle = cc_is_magic(s, tol);
  r.euler = euler_cc(ps, s.n1, s.n2);
  r.ambiguity_warning = ps.ambiguity_warning;
  return r;
}

OrbitReport cq_report(const CQState& s, double tol) {
  PartitionSummary ps = cq_partitions(s, tol);
  OrbitReport r;
  r.dim = cq_dim(ps, s.n1);
  r.rank = cq_rank(ps, s.n1);
  r.degeneracy = r.dim - r.rank;
  r.symplectic = ps.weight_classes == ps.block_classes;
  r.euler = euler_cq(ps, s.n1);
  r.ambiguity_warning = ps.ambiguity_warning;
  return r;
}

}  // namespace orbitatlas
