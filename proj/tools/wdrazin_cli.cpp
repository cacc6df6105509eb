#include <CLI11.hpp>

#include "wdrazin/io.hpp"
#include "wdrazin/runner.hpp"
#include "wdrazin/sqinv.hpp"
#include "wdrazin/suite.hpp"
#include "wdrazin/winv.hpp"

#include <iostream>
#include <map>
#include <string>

using namespace wdrazin;

namespace {

enum Exit { ok = 0, usage = 1, cert_fail = 2, infeasible = 3 };

const std::vector<std::string> square_kinds = {"mp", "drazin", "core-ep", "m-wgi", "m-weak-core"};
const std::vector<std::string> weighted_kinds = {"w-drazin", "w-core-ep", "w-m-wgi", "w-m-weak-core", "w-mpcep",
                                                 "w-cepmp",  "w-m-wgmp",  "w-dmp",   "w-mpd"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::string joined(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

void print_residuals(const ResidualMap& res) {
  for (const auto& [label, v] : res) std::cerr << "  " << label << "  " << json_real(v) << "\n";
}

int cmd_compute(const std::string& kind, const std::string& bpath, const std::string& wpath, int m,
                const ToleranceConfig& tol) {
  bool square = contains(square_kinds, kind);
  if (!square && !contains(weighted_kinds, kind)) {
    std::cerr << "unknown inverse kind '" << kind << "'; valid kinds: " << joined(square_kinds) << ", "
              << joined(weighted_kinds) << "\n";
    return usage;
  }
  Matrix B = read_matrix_file(bpath);
  Matrix Y;
  ResidualMap res;
  if (square) {
    if (!wpath.empty()) std::cerr << "note: " << kind << " ignores the weight file\n";
    if (kind == "mp") {
      Y = mp_inverse(B, tol);
      res = {{"BYB=B", rel_diff(B * Y * B, B)},
             {"YBY=Y", rel_diff(Y * B * Y, Y)},
             {"(BY)*=BY", rel_diff((B * Y).adjoint(), B * Y)},
             {"(YB)*=YB", rel_diff((Y * B).adjoint(), Y * B)}};
      detail::certify("mp", res, tol);
    } else if (kind == "m-weak-core") {
      Y = m_weak_core(B, m, tol);
    } else {
      auto r = kind == "drazin" ? drazin(B, tol) : kind == "core-ep" ? core_ep(B, tol) : m_wgi(B, m, tol);
      Y = r.value;
      res = r.residuals;
    }
  } else {
    if (wpath.empty()) {
      std::cerr << kind << " needs a weight matrix file\n";
      return usage;
    }
    WeightedPair p(B, read_matrix_file(wpath), tol);
    const std::map<std::string, std::function<WeightedInverseResult(const WeightedPair&)>> table = {
        {"w-drazin", [&](const WeightedPair& q) { return w_drazin(q, tol); }},
        {"w-core-ep", [&](const WeightedPair& q) { return w_core_ep(q, tol); }},
        {"w-m-wgi", [&](const WeightedPair& q) { return w_m_wgi(q, m, tol); }},
        {"w-m-weak-core", [&](const WeightedPair& q) { return w_m_weak_core(q, m, tol); }},
        {"w-mpcep", [&](const WeightedPair& q) { return w_mpcep(q, tol); }},
        {"w-cepmp", [&](const WeightedPair& q) { return w_cepmp(q, tol); }},
        {"w-m-wgmp", [&](const WeightedPair& q) { return w_m_wgmp(q, m, tol); }},
        {"w-dmp", [&](const WeightedPair& q) { return w_dmp(q, tol); }},
        {"w-mpd", [&](const WeightedPair& q) { return w_mpd(q, tol); }},
    };
    auto r = table.at(kind)(p);
    Y = r.value;
    res = r.residuals;
  }
  std::cout << format_matrix(Y);
  std::cerr << kind << " certified";
  if (res.empty()) std::cerr << " (checked inside the computation)";
  std::cerr << "\n";
  print_residuals(res);
  return ok;
}

int cmd_verify(const std::string& id, const RunOptions& o, const ToleranceConfig& tol) {
  if (!is_registered(id)) {
    std::cerr << "unknown theorem id '" << id << "'; valid ids: " << joined(registered_ids()) << "\n";
    return usage;
  }
  if (!o.random && o.fixture.empty()) {
    std::cerr << "verify needs --fixture ex1|ex2 or --random\n";
    return usage;
  }
  auto r = run_verify(id, o, tol);
  ReportContext ctx;
  if (o.random) ctx.seed = o.seed;
  ctx.fixtures_used = fixtures_for(id, o);
  std::cout << report_json(r, ctx) << "\n";
  return r.overall() ? ok : cert_fail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"W-weighted generalized inverses and their verification suite"};
  app.require_subcommand(1);
  ToleranceConfig tol;
  app.add_option("--rank-rtol", tol.rank_rtol, "relative singular value cutoff")->check(CLI::PositiveNumber);
  app.add_option("--residual-atol", tol.residual_atol, "residual acceptance threshold")->check(CLI::PositiveNumber);

  auto* compute = app.add_subcommand("compute", "compute an inverse; matrix on stdout, residuals on stderr");
  std::string kind, bpath, wpath;
  int m = 1;
  compute->add_option("kind", kind, "inverse kind")->required();
  compute->add_option("B", bpath, "matrix file")->required();
  compute->add_option("W", wpath, "weight matrix file");
  compute->add_option("--m", m, "power m for the m-WGI, m-weak-core and m-WGMP kinds")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "run a theorem checker and print a JSON report");
  std::string id;
  RunOptions o;
  verify->add_option("id", id, "theorem id")->required();
  verify->add_option("--fixture", o.fixture, "built-in example")->check(CLI::IsMember({"ex1", "ex2"}));
  verify->add_option("--x1", o.x1);
  verify->add_option("--x2", o.x2);
  verify->add_option("--y1", o.y1);
  verify->add_option("--y2", o.y2);
  verify->add_option("--z1", o.z1);
  verify->add_option("--z2", o.z2);
  verify->add_option("--z3", o.z3);
  verify->add_option("--u1", o.u1);
  verify->add_flag("--random", o.random, "seeded random instances");
  verify->add_option("--seed", o.seed);
  verify->add_option("--trials", o.trials)->check(CLI::PositiveNumber);

  auto* suite = app.add_subcommand("suite", "run the full acceptance battery");
  std::uint64_t suite_seed = 1;
  suite->add_option("--seed", suite_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (*compute) return cmd_compute(kind, bpath, wpath, m, tol);
    if (*verify) return cmd_verify(id, o, tol);
    return run_suite(suite_seed, std::cout) ? ok : cert_fail;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return usage;
  } catch (const DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << "\n";
    return usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return usage;
  } catch (const CertificationError& e) {
    std::cerr << "certification failed: " << e.what() << "\n";
    return cert_fail;
  } catch (const FormulaDiscrepancyError& e) {
    std::cerr << "certification failed: " << e.what() << "\n";
    return cert_fail;
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis not met: " << e.what() << "\n";
    return infeasible;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return infeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cert_fail;
  }
}
