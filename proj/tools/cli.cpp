#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "qcover/bounds.hpp"
#include "qcover/constructions.hpp"
#include "qcover/design_io.hpp"
#include "qcover/error.hpp"

namespace qcover::cli {

namespace {

struct ConstructArgs {
  std::string kind;
  unsigned q = 2;
  std::optional<unsigned> k, n, r, rho, delta;
  std::string in, s1, s2, modulus, output;
};

struct VerifyArgs {
  std::string file;
  std::string mode = "covering";
  std::optional<unsigned> r, k;
  std::string strategy = "auto";
};

struct BoundsArgs {
  unsigned q = 2;
  unsigned n = 7;
  std::string filter;
  bool csv = false;
};

struct FileArgs {
  std::string file;
  std::string output;
  std::string point;
  unsigned t = 2;
};

unsigned need(const std::optional<unsigned>& v, const char* flag) {
  if (!v) throw InvalidArgument(std::string("missing required option --") + flag);
  return *v;
}

Field::Polynomial parse_modulus(const std::string& text) {
  Field::Polynomial poly;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long c = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      poly.push_back(static_cast<unsigned>(c));
    } catch (const std::exception&) {
      throw InvalidArgument("bad modulus coefficient '" + item + "'");
    }
  }
  if (poly.empty()) throw InvalidArgument("empty modulus");
  return poly;
}

Strategy parse_strategy(const std::string& s) {
  if (s == "auto") return Strategy::kAuto;
  if (s == "expand") return Strategy::kBlockExpansion;
  if (s == "scan") return Strategy::kTargetScan;
  throw InvalidArgument("unknown strategy '" + s + "'");
}

void print_report(std::ostream& out, const CoverageReport& rep, const std::string& target_name) {
  out << "targets: " << rep.total_targets << " " << target_name << "\n";
  for (const auto& [m, count] : rep.histogram) out << "  multiplicity " << m << ": " << count << "\n";
  out << "min multiplicity: " << rep.min_multiplicity << "\n";
  out << "max multiplicity: " << rep.max_multiplicity << "\n";
  const std::uint64_t missed = rep.histogram.count(0) ? rep.histogram.at(0) : 0;
  out << "uncovered: " << missed << "\n";
  for (const auto& w : rep.uncovered) out << "  uncovered " << w.str() << "\n";
}

void print_design_summary(std::ostream& out, const SubspaceDesign& d) {
  out << "design: " << (d.label().empty() ? "(unlabelled)" : d.label()) << "\n";
  out << "parameters: q=" << d.q() << " n=" << d.n() << " k=" << d.block_dimension() << "\n";
  out << "blocks: " << d.size() << "\n";
}

std::string dims(unsigned r, const SubspaceDesign& d) {
  return "(" + std::to_string(r) + "-subspaces of F_" + std::to_string(d.q()) + "^" + std::to_string(d.n()) + ")";
}

int cmd_construct(const ConstructArgs& a, std::ostream& out) {
  const std::uint32_t q = a.q;
  std::string params;
  auto param = [&](const char* name, unsigned v) { params += std::string(" ") + name + "=" + std::to_string(v); };

  std::optional<SubspaceDesign> design;
  std::optional<Subspace> residual;
  std::string mode = "covering";
  unsigned check_r = 1;

  if (a.kind == "spread") {
    const unsigned k = need(a.k, "k"), n = need(a.n, "n");
    param("q", q), param("k", k), param("n", n);
    std::optional<Field::Polynomial> modulus;
    if (!a.modulus.empty()) modulus = parse_modulus(a.modulus);
    design = spread(q, k, n, modulus);
    mode = "steiner";
  } else if (a.kind == "lift") {
    if (a.in.empty()) throw InvalidArgument("missing required option --in");
    const unsigned delta = need(a.delta, "delta");
    design = lift_covering(load_design(a.in), delta);
    param("q", design->q()), param("n", design->n()), param("k", design->block_dimension()), param("delta", delta);
  } else if (a.kind == "partial-spread") {
    const unsigned rho = need(a.rho, "rho"), n = need(a.n, "n");
    param("q", q), param("rho", rho), param("n", n);
    auto ps = partial_spread(q, rho, n);
    auto space = ps.residual.space_ptr();
    design = SubspaceDesign(space, rho, std::move(ps.blocks), "partial-spread(" + std::to_string(q) + "," +
                                                                  std::to_string(rho) + "," + std::to_string(n) + ")");
    residual = ps.residual;
    mode = "partition";
  } else if (a.kind == "line-covering") {
    const unsigned n = need(a.n, "n"), k = need(a.k, "k");
    param("q", q), param("n", n), param("k", k);
    design = optimal_line_covering(q, n, k);
  } else if (a.kind == "turan-dual") {
    const unsigned n = need(a.n, "n"), k = need(a.k, "k");
    param("q", q), param("n", n), param("k", k);
    if (k >= n) throw InvalidArgument("turan-dual needs k < n");
    design = turan_point_design(q, n, k).dual_covering;
    check_r = n - k;
  } else if (a.kind == "recursive") {
    if (a.s1.empty() || a.s2.empty()) throw InvalidArgument("recursive needs --s1 and --s2");
    const unsigned r = need(a.r, "r");
    design = recursive_covering(load_design(a.s1), load_design(a.s2), r);
    param("q", design->q()), param("n", design->n()), param("k", design->block_dimension()), param("r", r);
    check_r = r;
  } else if (a.kind == "lemma6") {
    design = cyclic_covering_7_3_2();
    param("q", 2u), param("n", 7u), param("k", 3u), param("r", 2u);
    check_r = 2;
  } else if (a.kind == "greedy") {
    const unsigned n = need(a.n, "n"), k = need(a.k, "k"), r = need(a.r, "r");
    param("q", q), param("n", n), param("k", k), param("r", r);
    design = greedy_covering(q, n, k, r);
    check_r = r;
  } else if (a.kind == "trivial") {
    const unsigned n = need(a.n, "n"), r = need(a.r, "r");
    param("q", q), param("n", n), param("r", r);
    design = trivial_steiner(q, n, r);
    mode = "steiner";
    check_r = r;
  } else {
    throw InvalidArgument("unknown construction '" + a.kind + "'");
  }

  print_design_summary(out, *design);
  bool ok = false;
  if (mode == "partition") {
    std::vector<Subspace> parts = design->blocks();
    parts.push_back(*residual);
    ok = is_point_partition(parts);
    out << "residual: " << residual->str() << " (dimension " << residual->dimension() << ")\n";
    out << "point partition: " << (ok ? "yes" : "no") << "\n";
  } else {
    const auto rep = verify_covering(*design, check_r);
    print_report(out, rep, dims(check_r, *design));
    ok = mode == "steiner" ? rep.is_steiner : rep.is_covering;
    out << mode << " at r=" << check_r << ": " << (ok ? "yes" : "no") << "\n";
  }
  if (!a.output.empty()) {
    save_design(a.output, *design);
    out << "wrote " << a.output << "\n";
  }
  out << "RESULT: construct kind=" << a.kind << params << " verdict=" << (ok ? "verified" : "failed")
      << " size=" << design->size() << "\n";
  return ok ? kOk : kVerificationFailed;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const SubspaceDesign d = load_design(a.file);
  VerifyOptions options;
  options.strategy = parse_strategy(a.strategy);
  print_design_summary(out, d);

  bool ok = false;
  std::string param;
  if (a.mode == "covering" || a.mode == "steiner") {
    const unsigned r = need(a.r, "r");
    param = "r=" + std::to_string(r);
    const auto rep = a.mode == "covering" ? verify_covering(d, r, options) : verify_steiner(d, r, options);
    print_report(out, rep, dims(r, d));
    ok = a.mode == "covering" ? rep.is_covering : rep.is_steiner;
  } else if (a.mode == "turan") {
    const unsigned k = need(a.k, "k");
    param = "k=" + std::to_string(k);
    const auto rep = verify_turan(d, k, options);
    print_report(out, rep, dims(k, d));
    ok = rep.is_covering;
  } else {
    throw InvalidArgument("unknown verification mode '" + a.mode + "'");
  }
  out << a.mode << " (" << param << "): " << (ok ? "yes" : "no") << "\n";
  out << "RESULT: verify file=" << a.file << " mode=" << a.mode << " " << param
      << " verdict=" << (ok ? "pass" : "fail") << " size=" << d.size() << "\n";
  return ok ? kOk : kVerificationFailed;
}

int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
  if (a.q != 2 && a.q != 3) throw InvalidArgument("bounds supports q = 2 or 3");
  if (a.n < 1 || a.n > 12) throw InvalidArgument("bounds supports 1 <= n <= 12");
  std::optional<std::tuple<unsigned, unsigned, unsigned>> filter;
  if (!a.filter.empty()) {
    unsigned fn = 0, fk = 0, fr = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(a.filter);
    if (!(ss >> fn >> c1 >> fk >> c2 >> fr) || c1 != ',' || c2 != ',' || !ss.eof()) {
      throw InvalidArgument("filter must look like n,k,r");
    }
    filter = std::make_tuple(fn, fk, fr);
  }
  const auto registered = known_coverings(a.q, a.n);
  const BoundTable table = BoundTable::build(a.q, a.n, registered);

  if (filter) {
    const auto [fn, fk, fr] = *filter;
    const BoundRecord& rec = table.at(fn, fk, fr);
    out << kBoundColumns << "\n";
    out << rec.n << ',' << rec.k << ',' << rec.r << ',' << rec.lower << ',' << rec.lower_source << ','
        << rec.upper << ',' << rec.upper_source << ',' << (rec.exact() ? "yes" : "no") << "\n";
    out << "RESULT: bounds q=" << a.q << " n=" << rec.n << " k=" << rec.k << " r=" << rec.r << " lower=" << rec.lower
        << " upper=" << rec.upper << " verdict=" << (rec.exact() ? "exact" : "open") << " size=" << rec.upper
        << "\n";
    return kOk;
  }
  if (a.csv) {
    table.write_csv(out);
  } else {
    table.write_text(out);
  }
  const auto records = table.records();
  const bool consistent =
      std::all_of(records.begin(), records.end(), [](const BoundRecord& r) { return r.lower <= r.upper; });
  out << "RESULT: bounds q=" << a.q << " n_max=" << a.n << " verdict=" << (consistent ? "consistent" : "inconsistent")
      << " size=" << records.size() << "\n";
  return consistent ? kOk : kVerificationFailed;
}

int cmd_expand(const FileArgs& a, std::ostream& out) {
  const SubspaceDesign d = load_design(a.file);
  const SetSystem s = expand_to_steiner_system(d);
  out << "Steiner system S(3," << s.block_size() << "," << s.points() << "): " << s.size() << " blocks\n";
  out << "steiner at t=3: yes\n";
  if (!a.output.empty()) {
    save_set_system(a.output, s);
    out << "wrote " << a.output << "\n";
  }
  out << "RESULT: expand file=" << a.file << " v=" << s.points() << " verdict=verified size=" << s.size() << "\n";
  return kOk;
}

int cmd_derive(const FileArgs& a, std::ostream& out) {
  const SubspaceDesign d = load_design(a.file);
  const VectorFq v = VectorFq::parse(d.space_ptr(), a.point);
  if (v.is_zero()) throw InvalidArgument("derivation point must be nonzero");
  const std::vector<VectorFq> gens{v};
  const SubspaceDesign derived = derive_steiner(d, a.t, Subspace::span(d.space_ptr(), gens));
  print_design_summary(out, derived);
  out << "steiner at t=" << a.t - 1 << ": yes\n";
  if (!a.output.empty()) {
    save_design(a.output, derived);
    out << "wrote " << a.output << "\n";
  }
  out << "RESULT: derive file=" << a.file << " point=" << a.point << " t=" << a.t
      << " verdict=verified size=" << derived.size() << "\n";
  return kOk;
}

int cmd_dualize(const FileArgs& a, std::ostream& out) {
  const SubspaceDesign d = load_design(a.file);
  const SubspaceDesign dual = dualize(d);
  print_design_summary(out, dual);
  if (!a.output.empty()) {
    save_design(a.output, dual);
    out << "wrote " << a.output << "\n";
  }
  out << "RESULT: dualize file=" << a.file << " k=" << dual.block_dimension() << " verdict=ok size=" << dual.size()
      << "\n";
  return kOk;
}

int cmd_reproduce(std::ostream& out) {
  bool all = true;
  auto check = [&](const std::string& name, const std::string& got, const std::string& want) {
    const bool ok = got == want;
    all = all && ok;
    out << "RESULT: reproduce item=" << name << " expected=" << want << " verdict=" << (ok ? "match" : "mismatch")
        << " size=" << got << "\n";
  };

  const SubspaceDesign cyclic = cyclic_covering_7_3_2();
  const auto cyc_rep = verify_covering(cyclic, 2);
  out << "C_2[7,3,2] from GF(64) shifts: " << cyclic.size() << " blocks, " << cyc_rep.total_targets
      << " 2-subspaces, uncovered " << (cyc_rep.histogram.count(0) ? cyc_rep.histogram.at(0) : 0) << "\n";
  check("cyclic-7-3-2", std::to_string(cyc_rep.is_covering ? cyclic.size() : 0), "399");

  const SubspaceDesign s1 = spread(2, 2, 4);
  const SubspaceDesign s2 = turan_point_design(2, 4, 2).dual_covering;
  const SubspaceDesign c532 = recursive_covering(s1, s2, 2);
  out << "C_2[5,3,2] from spread(2,2,4) (" << s1.size() << ") and C_2[4,3,2] (" << s2.size()
      << "): " << c532.size() << " blocks\n";
  check("recursive-5-3-2", std::to_string(c532.size()), "27");

  const auto registered = known_coverings(2, 8);
  const BoundTable table = BoundTable::build(2, 8, registered);
  const auto& t532 = table.at(5, 3, 2);
  out << "C_2(5,3,2): lower " << t532.lower << " [" << t532.lower_source << "], upper " << t532.upper << " ["
      << t532.upper_source << "]\n";
  check("bound-5-3-2", t532.exact() ? t532.upper.str() : "open", "27");
  const auto& t732 = table.at(7, 3, 2);
  out << "C_2(7,3,2): lower " << t732.lower << " [" << t732.lower_source << "], upper " << t732.upper << " ["
      << t732.upper_source << "]\n";
  check("bound-7-3-2", t732.lower.str() + ".." + t732.upper.str(), "381..399");
  for (unsigned n = 6; n <= 8; ++n) {
    const auto& rec = table.at(n, n - 2, 2);
    out << "C_2(" << n << "," << n - 2 << ",2): lower " << rec.lower << ", upper " << rec.upper << "\n";
    check("bound-" + std::to_string(n) + "-" + std::to_string(n - 2) + "-2", rec.lower.str() + ".." + rec.upper.str(),
          "21..27");
  }

  for (unsigned n : {3u, 4u}) {
    const SetSystem s = expand_to_steiner_system(trivial_steiner(2, n, 2));
    out << "S(3,4," << s.points() << ") from all 2-subspaces of F_2^" << n << ": " << s.size() << " blocks\n";
    check("steiner-3-4-" + std::to_string(s.points()), std::to_string(s.size()), n == 3 ? "14" : "140");
  }
  out << "RESULT: reproduce verdict=" << (all ? "pass" : "fail") << " size=9\n";
  return all ? kOk : kVerificationFailed;
}

int guarded(const std::function<int()>& fn, std::ostream& out, std::ostream& err) {
  try {
    return fn();
  } catch (const VerificationFailed& e) {
    err << "verification failed: " << e.what() << "\n";
    out << "RESULT: error verdict=failed size=0\n";
    return kVerificationFailed;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    out << "RESULT: error verdict=budget size=0\n";
    return kBudgetExceeded;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    out << "RESULT: error verdict=invalid size=0\n";
    return kInvalidInput;
  }
}

bool apply_worker_env(std::ostream& err) {
  const char* env = std::getenv("QCOVER_WORKERS");
  if (!env || !*env) return true;
  char* end = nullptr;
  const unsigned long w = std::strtoul(env, &end, 10);
  if (*end != '\0' || w == 0 || w > 1024) {
    err << "error: QCOVER_WORKERS must be a positive integer\n";
    return false;
  }
  set_default_workers(static_cast<unsigned>(w));
  return true;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (!apply_worker_env(err)) return kInvalidInput;

  CLI::App app{"Subspace covering designs over finite fields", "qcover"};
  app.require_subcommand(1);

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build a design and verify it");
  construct->add_option("kind", ca.kind,
                        "spread | lift | partial-spread | line-covering | turan-dual | recursive | lemma6 | greedy | "
                        "trivial")
      ->required();
  construct->add_option("--q", ca.q, "Field order")->capture_default_str();
  construct->add_option("--k", ca.k, "Block dimension");
  construct->add_option("--n", ca.n, "Ambient dimension");
  construct->add_option("--r", ca.r, "Target dimension");
  construct->add_option("--rho", ca.rho, "Partial spread block dimension");
  construct->add_option("--delta", ca.delta, "Lift amount");
  construct->add_option("--in", ca.in, "Input design for lift");
  construct->add_option("--s1", ca.s1, "C_q[n-1,k-1,r-1] design for recursive");
  construct->add_option("--s2", ca.s2, "C_q[n-1,k,r] design for recursive");
  construct->add_option("--modulus", ca.modulus, "GF(q^n) modulus coefficients, lowest degree first, comma separated");
  construct->add_option("-o,--output", ca.output, "Design file to write");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check a design file");
  verify->add_option("file", va.file, "Design file")->required();
  verify->add_option("--mode", va.mode, "covering | steiner | turan")->capture_default_str();
  verify->add_option("--r", va.r, "Target dimension (covering, steiner)");
  verify->add_option("--k", va.k, "Target dimension (turan)");
  verify->add_option("--strategy", va.strategy, "auto | expand | scan")->capture_default_str();

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "Print the bound table for C_q(n,k,r)");
  bounds->add_option("--q", ba.q, "Field order (2 or 3)")->capture_default_str();
  bounds->add_option("--n", ba.n, "Largest ambient dimension (<= 12)")->capture_default_str();
  bounds->add_option("--filter", ba.filter, "Single entry n,k,r");
  bounds->add_flag("--csv", ba.csv, "Comma-separated output");

  FileArgs ea;
  auto* expand = app.add_subcommand("expand", "Expand an S_2[2,k,n] to a Steiner system S(3,2^k,2^n)");
  expand->add_option("file", ea.file, "Design file")->required();
  expand->add_option("-o,--output", ea.output, "Set-system file to write");

  FileArgs da;
  auto* derive = app.add_subcommand("derive", "Derive an S_q[t-1,k-1,n-1] at a point");
  derive->add_option("file", da.file, "Design file")->required();
  derive->add_option("--point", da.point, "Nonzero vector spanning the point, as n digits")->required();
  derive->add_option("--t", da.t, "Steiner parameter of the input")->capture_default_str();
  derive->add_option("-o,--output", da.output, "Design file to write");

  FileArgs ua;
  auto* dual = app.add_subcommand("dualize", "Replace every block by its orthogonal complement");
  dual->add_option("file", ua.file, "Design file")->required();
  dual->add_option("-o,--output", ua.output, "Design file to write");

  auto* reproduce = app.add_subcommand("reproduce", "Recompute the headline values end to end");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  if (construct->parsed()) return guarded([&] { return cmd_construct(ca, out); }, out, err);
  if (verify->parsed()) return guarded([&] { return cmd_verify(va, out); }, out, err);
  if (bounds->parsed()) return guarded([&] { return cmd_bounds(ba, out); }, out, err);
  if (expand->parsed()) return guarded([&] { return cmd_expand(ea, out); }, out, err);
  if (derive->parsed()) return guarded([&] { return cmd_derive(da, out); }, out, err);
  if (dual->parsed()) return guarded([&] { return cmd_dualize(ua, out); }, out, err);
  if (reproduce->parsed()) return guarded([&] { return cmd_reproduce(out); }, out, err);
  return kInvalidInput;
}

}  // namespace qcover::cli
