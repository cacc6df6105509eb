// one PASS/FAIL line per acceptance criterion; exit status is nonzero if any fails

#include "wdrazin/io.hpp"
#include "wdrazin/suite.hpp"

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace wdrazin;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::pair<int, std::string> run_cli(const std::string& args) {
  std::string cmd = std::string(WDRAZIN_CLI) + " " + args + " 2>/dev/null";
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::array<char, 65536> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fx(const std::string& name) { return std::string(WDRAZIN_FIXTURES) + "/" + name + ".mat"; }

Outcome from_report(const VerificationReport& r) {
  int failed = 0;
  const Condition* first = nullptr;
  for (const auto& c : r.conditions)
    if (!c.pass) {
      ++failed;
      if (!first) first = &c;
    }
  std::ostringstream s;
  s << r.conditions.size() - failed << "/" << r.conditions.size() << " conditions, worst residual "
    << json_real(r.worst());
  if (first) s << ", first failure " << first->label << " residual " << json_real(first->residual);
  return {failed == 0, s.str()};
}

Outcome ex1_w_drazin_cli() {
  auto t0 = std::chrono::steady_clock::now();
  auto [code, out] = run_cli("compute w-drazin " + fx("A1") + " " + fx("W1"));
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (code != 0) return {false, "exit code " + std::to_string(code)};
  std::istringstream in(out);
  Matrix V;
  try {
    V = parse_matrix(in, "stdout");
  } catch (const ParseError& e) {
    return {false, e.what()};
  }
  if (V.rows() != 5 || V.cols() != 4) return {false, "wrong shape " + shape(V)};
  double err = (V - fixtures::first_row(5, {1, 1, 0, 2})).cwiseAbs().maxCoeff();
  std::ostringstream s;
  s << "max entrywise error " << json_real(err) << ", runtime " << secs << " s";
  return {err <= 1e-12 && secs < 1.0, s.str()};
}

Outcome suite_determinism() {
  auto [c1, a] = run_cli("suite --seed 1");
  auto [c2, b] = run_cli("suite --seed 1");
  std::string last = a.substr(a.rfind('\n', a.size() - 2) + 1);
  if (!last.empty() && last.back() == '\n') last.pop_back();
  std::ostringstream s;
  s << (a == b ? "byte-identical" : "outputs differ") << " (" << a.size() << " bytes), exit codes " << c1 << "/" << c2
    << ", " << last;
  return {a == b && !a.empty() && c1 == c2, s.str()};
}

}  // namespace

int main() {
  const std::uint64_t seed = 1;
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"EX1 W-weighted Drazin via CLI", ex1_w_drazin_cli},
      {"EX1 weak MPD members", [&] { return from_report(criterion_ex1_weak_mpd(seed)); }},
      {"EX1 index", [&] { return from_report(criterion_ex1_index(seed)); }},
      {"EX2 order law products", [&] { return from_report(criterion_ex2_products(seed)); }},
      {"characterization coherence", [&] { return from_report(criterion_characterizations(seed)); }},
      {"projector lemmas", [&] { return from_report(criterion_projectors(seed)); }},
      {"decomposition", [&] { return from_report(criterion_decomposition(seed)); }},
      {"perturbation", [&] { return from_report(criterion_perturbation(seed)); }},
      {"reductions at W = I", [&] { return from_report(criterion_reductions(seed)); }},
      {"suite determinism", suite_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << "CRITERION " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  std::cout << (failures ? "ACCEPTANCE FAIL " : "ACCEPTANCE PASS ") << criteria.size() - failures << "/"
            << criteria.size() << std::endl;
  return failures ? 1 : 0;
}
