// orbit-atlas: classify local-unitary orbits through CC and CQ states,
// sweep the two-qubit weight simplex, and cross-check the combinatorial
// formulas against the dense linear-algebra oracle.
//
// Exit codes: 0 success, 1 verification mismatch, 2 input error,
// 3 clustering ambiguity under --strict.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "orbitatlas/oracle.hpp"

namespace {

using nlohmann::json;
using namespace orbitatlas;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;
constexpr int kExitAmbiguity = 3;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json report_to_json(const OrbitReport& r) {
  json out{{"dim", r.dim},
           {"rank", r.rank},
           {"degeneracy", r.degeneracy},
           {"symplectic", r.symplectic},
           {"euler", r.euler}};
  out["kahler"] = r.kahler.has_value() ? json(*r.kahler) : json(nullptr);
  out["magic_rectangle"] = r.magic_rectangle.has_value() ? json(*r.magic_rectangle) : json(nullptr);
  return out;
}

json stabilizer_to_json(const StabilizerDescriptor& stab) {
  return json{{"su_factors", stab.su_factors}, {"torus_rank", stab.torus_rank}};
}

json cc_partitions_to_json(const PartitionSummary& ps) {
  return json{{"row_sum_class_sizes", ps.row_sum_classes.sizes()},
              {"row_eq_class_sizes", ps.row_eq_classes.sizes()},
              {"col_sum_class_sizes", ps.col_sum_classes.sizes()},
              {"col_eq_class_sizes", ps.col_eq_classes.sizes()}};
}

json cq_partitions_to_json(const PartitionSummary& ps) {
  return json{{"weight_class_sizes", ps.weight_classes.sizes()},
              {"block_class_sizes", ps.block_classes.sizes()}};
}

struct ClassifyOptions {
  std::string input;
  std::string group = "";  // default depends on the state kind
  double tolerance = kDefaultTol;
  bool strict = false;
  std::string format = "json";
};

std::string csv_report_row(const std::string& kind, int n1, int n2, const OrbitReport& r) {
  std::ostringstream row;
  row << kind << ',' << n1 << ',' << n2 << ',' << r.dim << ',' << r.rank << ',' << r.degeneracy
      << ',' << r.euler << ',' << (r.symplectic ? 1 : 0) << ',';
  if (r.kahler.has_value()) row << (*r.kahler ? 1 : 0);
  row << ',';
  if (r.magic_rectangle.has_value()) row << (*r.magic_rectangle ? 1 : 0);
  return row.str();
}

// Assembles the classification document for one state under one group.
int run_classify(const ClassifyOptions& opt) {
  ParsedState parsed = parse_state(read_input(opt.input));
  json doc;
  OrbitReport report;
  std::string kind;
  int n1 = 0, n2 = 0;

  if (std::holds_alternative<PureSeparableSpec>(parsed)) {
    const auto& spec = std::get<PureSeparableSpec>(parsed);
    if (opt.format == "csv") throw ValidationError("csv output is defined for cc/cq states only");
    doc["kind"] = "pure_sep";
    doc["dims"] = spec.dims;
    doc["euler"] = euler_pure_separable(spec);
    std::uint64_t group_weyl = 1;
    for (int d : spec.dims) group_weyl *= weyl_order_su(d);
    doc["weyl_order_group"] = group_weyl;
    doc["weyl_order_stabilizer"] = pure_separable_stabilizer_weyl(spec).value;
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
  }

  const bool is_cc = std::holds_alternative<CCState>(parsed);
  kind = is_cc ? "cc" : "cq";
  std::string group = opt.group.empty() ? (is_cc ? "lu" : "left") : opt.group;

  if (is_cc) {
    CCState s = std::get<CCState>(parsed);
    n1 = s.n1;
    n2 = s.n2;
    doc["mode"] = s.mode == ScalarMode::exact ? "exact" : "float";
    if (group == "lu") {
      PartitionSummary ps = cc_partitions(s, opt.tolerance);
      report = cc_report(s, opt.tolerance);
      doc["partitions"] = cc_partitions_to_json(ps);
      doc["stabilizer"] = stabilizer_to_json(stabilizer_structure_cc(ps, GroupSpec::full(n1, n2)));
    } else {
      CQState view = cc_as_cq(s);
      PartitionSummary ps = cq_partitions(view, opt.tolerance);
      report = cq_report(view, opt.tolerance);
      doc["partitions"] = cq_partitions_to_json(ps);
      doc["stabilizer"] = stabilizer_to_json(stabilizer_structure_cq(ps, GroupSpec::left(n1, n2)));
      doc["viewed_as"] = "cq";
    }
  } else {
    CQState s = std::get<CQState>(parsed);
    n1 = s.n1;
    n2 = s.n2;
    doc["mode"] = s.mode == ScalarMode::exact ? "exact" : "float";
    if (group == "lu") {
      // Only sensible when the state is CC in the canonical basis; the
      // conversion throws a validation error otherwise.
      CCState view = cq_as_cc(s);
      PartitionSummary ps = cc_partitions(view, opt.tolerance);
      report = cc_report(view, opt.tolerance);
      doc["partitions"] = cc_partitions_to_json(ps);
      doc["stabilizer"] = stabilizer_to_json(stabilizer_structure_cc(ps, GroupSpec::full(n1, n2)));
      doc["viewed_as"] = "cc";
    } else {
      PartitionSummary ps = cq_partitions(s, opt.tolerance);
      report = cq_report(s, opt.tolerance);
      doc["partitions"] = cq_partitions_to_json(ps);
      doc["stabilizer"] = stabilizer_to_json(stabilizer_structure_cq(ps, GroupSpec::left(n1, n2)));
    }
  }

  doc["kind"] = kind;
  doc["group"] = group;
  doc["n1"] = n1;
  doc["n2"] = n2;
  doc["report"] = report_to_json(report);
  doc["ambiguity_warning"] = report.ambiguity_warning;

  if (opt.format == "csv") {
    std::cout << "kind,n1,n2,dim,rank,degeneracy,euler,symplectic,kahler,magic\n"
              << csv_report_row(kind, n1, n2, report) << "\n";
  } else {
    std::cout << doc.dump(2) << "\n";
  }
  return (opt.strict && report.ambiguity_warning) ? kExitAmbiguity : kExitOk;
}

struct ScanOptions {
  int resolution = 0;
  std::string out;
  std::string format = "csv";
};

// Exact barycentric sweep of the two-qubit weight simplex. The interesting
// regions are cut out by equalities of sums, so the grid must be rational.
void scan_rows(int resolution, std::ostream& os, bool as_json) {
  const int r = resolution;
  json arr = json::array();
  if (!as_json) os << "p11,p12,p21,p22,dim,rank,degeneracy,euler,symplectic,kahler,magic\n";
  for (int a = 0; a <= r; ++a) {
    for (int b = 0; b <= r - a; ++b) {
      for (int c = 0; c <= r - a - b; ++c) {
        const int d = r - a - b - c;
        CCState s = CCState::create(
            2, 2,
            {Scalar::exact(Rational(a, r)), Scalar::exact(Rational(b, r)),
             Scalar::exact(Rational(c, r)), Scalar::exact(Rational(d, r))});
        OrbitReport rep = cc_report(s);
        if (as_json) {
          arr.push_back(json{{"p11", s.at(0, 0).str()},
                             {"p12", s.at(0, 1).str()},
                             {"p21", s.at(1, 0).str()},
                             {"p22", s.at(1, 1).str()},
                             {"dim", rep.dim},
                             {"rank", rep.rank},
                             {"degeneracy", rep.degeneracy},
                             {"euler", rep.euler},
                             {"symplectic", rep.symplectic},
                             {"kahler", *rep.kahler},
                             {"magic", *rep.magic_rectangle}});
        } else {
          os << s.at(0, 0).str() << ',' << s.at(0, 1).str() << ',' << s.at(1, 0).str() << ','
             << s.at(1, 1).str() << ',' << rep.dim << ',' << rep.rank << ',' << rep.degeneracy
             << ',' << rep.euler << ',' << (rep.symplectic ? 1 : 0) << ',' << (*rep.kahler ? 1 : 0)
             << ',' << (*rep.magic_rectangle ? 1 : 0) << '\n';
        }
      }
    }
  }
  if (as_json) os << arr.dump(2) << "\n";
}

int run_scan(const ScanOptions& opt) {
  if (opt.resolution < 2) throw ValidationError("scan-simplex: resolution must be at least 2");
  const bool as_json = opt.format == "json";
  if (opt.out.empty()) {
    scan_rows(opt.resolution, std::cout, as_json);
  } else {
    std::ofstream os(opt.out, std::ios::binary);
    if (!os) throw ValidationError("cannot open '" + opt.out + "' for writing");
    scan_rows(opt.resolution, os, as_json);
  }
  return kExitOk;
}

struct VerifyOptions {
  std::vector<std::string> sizes;
  int samples = 200;
  std::uint64_t seed = 0;
  std::string families = "paper";
  bool inject_fault = false;
};

std::pair<int, int> parse_size(const std::string& text) {
  auto x = text.find('x');
  if (x == std::string::npos) throw ValidationError("size must look like 2x2, got '" + text + "'");
  int n1 = std::stoi(text.substr(0, x));
  int n2 = std::stoi(text.substr(x + 1));
  if (n1 < 1 || n2 < 1 || n1 * n2 > 16) {
    throw ValidationError("supported sizes have n1*n2 <= 16, got '" + text + "'");
  }
  return {n1, n2};
}

struct FieldTotals {
  long long dim = 0, rank = 0, degeneracy = 0, stabilizer = 0, states = 0;
  void add(const AgreementRecord& rec) {
    ++states;
    dim += rec.dim.match();
    rank += rec.rank.match();
    degeneracy += rec.degeneracy.match();
    stabilizer += rec.stabilizer_dim.match();
  }
  bool clean() const {
    return dim == states && rank == states && degeneracy == states && stabilizer == states;
  }
};

void print_mismatch(const std::string& label, const AgreementRecord& rec) {
  auto field = [](const char* name, const FieldCheck& f) {
    std::ostringstream os;
    if (!f.match()) os << ' ' << name << " formula=" << f.formula << " oracle=" << f.oracle;
    return os.str();
  };
  std::cout << "MISMATCH " << label << ':' << field("dim", rec.dim) << field("rank", rec.rank)
            << field("degeneracy", rec.degeneracy) << field("stabilizer", rec.stabilizer_dim)
            << "\n";
}

int run_verify(const VerifyOptions& opt) {
  std::cout << "seed " << opt.seed << "\n";
  FieldTotals totals;
  bool all_ok = true;
  bool fault_pending = opt.inject_fault;
  auto maybe_inject = [&fault_pending](AgreementRecord& rec) {
    if (fault_pending) {
      rec.dim.formula += 2;  // self-test fixture: force a visible diff
      fault_pending = false;
    }
  };

  if (opt.families == "paper") {
    for (const FamilyCase& f : two_qubit_paper_families()) {
      AgreementRecord rec = verify_formulas(f.state, GroupSpec::full(2, 2));
      maybe_inject(rec);
      totals.add(rec);
      bool expected_ok = rec.dim.formula == f.dim && rec.rank.formula == f.rank &&
                         rec.degeneracy.formula == f.degeneracy;
      bool ok = rec.all_match() && expected_ok;
      std::cout << "family " << f.name << ": dim " << rec.dim.oracle << " rank "
                << rec.rank.oracle << " D " << rec.degeneracy.oracle << (ok ? " ok" : "") << "\n";
      if (!ok) {
        print_mismatch("family " + f.name, rec);
        all_ok = false;
      }
    }
  }

  std::vector<std::pair<int, int>> cc_sizes, cq_sizes;
  if (opt.sizes.empty()) {
    for (int n1 : {2, 3, 4})
      for (int n2 : {2, 3, 4}) cc_sizes.emplace_back(n1, n2);
    for (int n1 : {2, 3, 4})
      for (int n2 : {2, 3}) cq_sizes.emplace_back(n1, n2);
  } else {
    for (const std::string& text : opt.sizes) {
      auto size = parse_size(text);
      cc_sizes.push_back(size);
      cq_sizes.push_back(size);
    }
  }

  for (auto [n1, n2] : cc_sizes) {
    FieldTotals class_totals;
    auto corpus = random_cc_corpus(opt.seed, n1, n2, opt.samples);
    for (size_t k = 0; k < corpus.size(); ++k) {
      AgreementRecord rec = verify_formulas(corpus[k], GroupSpec::full(n1, n2));
      maybe_inject(rec);
      class_totals.add(rec);
      totals.add(rec);
      if (!rec.all_match()) {
        print_mismatch("cc " + std::to_string(n1) + "x" + std::to_string(n2) + " sample " +
                           std::to_string(k),
                       rec);
        all_ok = false;
      }
    }
    std::cout << "cc " << n1 << "x" << n2 << ": " << class_totals.states << " states, agreements"
              << " dim " << class_totals.dim << " rank " << class_totals.rank << " degeneracy "
              << class_totals.degeneracy << " stabilizer " << class_totals.stabilizer << "\n";
  }

  for (auto [n1, n2] : cq_sizes) {
    FieldTotals class_totals;
    auto corpus = random_cq_corpus(opt.seed, n1, n2, opt.samples);
    for (size_t k = 0; k < corpus.size(); ++k) {
      AgreementRecord rec = verify_formulas(corpus[k], GroupSpec::left(n1, n2));
      class_totals.add(rec);
      totals.add(rec);
      if (!rec.all_match()) {
        print_mismatch("cq " + std::to_string(n1) + "x" + std::to_string(n2) + " sample " +
                           std::to_string(k),
                       rec);
        all_ok = false;
      }
    }
    std::cout << "cq " << n1 << "x" << n2 << ": " << class_totals.states << " states, agreements"
              << " dim " << class_totals.dim << " rank " << class_totals.rank << " degeneracy "
              << class_totals.degeneracy << " stabilizer " << class_totals.stabilizer << "\n";
  }

  std::cout << "totals: dim " << totals.dim << "/" << totals.states << " rank " << totals.rank
            << "/" << totals.states << " degeneracy " << totals.degeneracy << "/" << totals.states
            << " stabilizer " << totals.stabilizer << "/" << totals.states << "\n";
  all_ok = all_ok && totals.clean();
  std::cout << (all_ok ? "OK" : "FAIL") << "\n";
  return all_ok ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local-unitary orbit classification for CC and CQ states"};
  app.require_subcommand(1);

  ClassifyOptions classify_opt;
  CLI::App* classify = app.add_subcommand("classify", "Classify one state from a JSON document");
  classify->add_option("input", classify_opt.input, "input file, or - for stdin")->required();
  classify->add_option("--group", classify_opt.group, "acting group: lu or left")
      ->check(CLI::IsMember({"lu", "left"}));
  classify->add_option("--tolerance", classify_opt.tolerance, "clustering tolerance (float mode)");
  classify->add_flag("--strict", classify_opt.strict, "exit 3 on clustering ambiguity");
  classify->add_option("--format", classify_opt.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  ScanOptions scan_opt;
  CLI::App* scan = app.add_subcommand(
      "scan-simplex", "Sweep the two-qubit weight simplex on an exact barycentric grid");
  scan->add_option("--resolution", scan_opt.resolution, "grid resolution R (>= 2)")->required();
  scan->add_option("--out", scan_opt.out, "output path (default stdout)");
  scan->add_option("--format", scan_opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  VerifyOptions verify_opt;
  CLI::App* verify =
      app.add_subcommand("verify", "Cross-check the combinatorial formulas against the oracle");
  verify->add_option("--sizes", verify_opt.sizes, "size classes like 2x2 3x3 (default sweep)")
      ->delimiter(',');
  verify->add_option("--samples", verify_opt.samples, "random states per size class")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", verify_opt.seed, "corpus seed")->envname("ORBIT_ATLAS_SEED");
  verify->add_option("--families", verify_opt.families, "paper or none")
      ->check(CLI::IsMember({"paper", "none"}));
  verify->add_flag("--inject-fault", verify_opt.inject_fault,
                   "self-test: corrupt one formula value to exercise the mismatch path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*classify) return run_classify(classify_opt);
    if (*scan) return run_scan(scan_opt);
    if (*verify) return run_verify(verify_opt);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
