// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lamlab/lamlab.hpp"
#include "oracles.hpp"

using namespace lamlab;

namespace {

constexpr std::size_t kFuel = 100000;

const EnumSpec kClosed9{9, {}, true};
const EnumSpec kOpen7{7, {"x", "y"}, false};

int failures = 0;

void verdict(int n, const std::string& name, bool ok, const std::string& detail) {
  std::cout << "criterion " << n << ' ' << (ok ? "PASS" : "FAIL") << ' ' << name << ": " << detail << std::endl;
  if (!ok) ++failures;
}

std::string summary(const PropertyReport& r) {
  std::ostringstream os;
  os << "tested=" << r.tested << " skipped=" << r.skipped << " counterexamples=" << r.counterexamples.size()
     << " (" << r.seconds << "s)";
  return os.str();
}

// Runs a property over both halves of the main corpus.
std::pair<bool, std::string> over_main_corpus(const std::string& property) {
  bool ok = true;
  std::string out;
  for (const auto& spec : {kClosed9, kOpen7}) {
    PropertyReport r = run_property(property, spec, kFuel);
    ok = ok && r.passed() && r.skipped == 0;
    out += (out.empty() ? "" : "; ") + std::string(spec.closed_only ? "closed<=9 " : "{x,y}<=7 ") + summary(r);
    if (!r.passed()) out += " first=" + r.counterexamples.front().dump();
  }
  return {ok, out};
}

void main_corpus_criterion(int n, const std::string& property) {
  auto [ok, detail] = over_main_corpus(property);
  verdict(n, property, ok, detail);
}

void substitution_criterion() {
  PropertyOptions opt;
  opt.aux_max_size = 5;
  PropertyReport lit = run_property("substitution_theorem", {6, {"x"}, false}, kFuel, opt);
  std::string detail = summary(lit);
  if (!lit.passed()) {
    const json& cx = lit.counterexamples.front();
    detail += " first: t=" + cx["t"].get<std::string>() + " a=" + cx["a"].get<std::string>() +
              " a:" + cx["type_of_a"].get<std::string>() + " -> " + cx["substituted"]["verdict"].dump();
  }
  verdict(4, "substitution_theorem", lit.passed() && lit.skipped == 0, detail);

  PropertyReport typed = run_property("substitution_theorem_typed", {6, {"x"}, false}, kFuel, opt);
  std::cout << "  note: with t typable at x:type(a), " << summary(typed) << ", "
            << (typed.passed() ? "no counterexample" : "counterexamples found") << std::endl;
}

void sigma_criterion() {
  auto ts = enumerate({5, {"x", "y"}, false});
  std::vector<Term> images;
  for (const auto& u : enumerate({5, {}, true})) images.push_back(u);
  for (const auto& u : enumerate({4, {"z"}, false})) images.push_back(u);

  std::size_t pairs = 0, mismatches = 0;
  std::string first;
  for (std::size_t i = 0; pairs < 1000; ++i) {
    const Term& t = ts[(i * 37) % ts.size()];
    SubstitutionMap sigma{{"x", images[i % images.size()]}, {"y", images[(i * 7 + 3) % images.size()]}};
    for (RuleSet rules : {RuleSet::beta(), RuleSet::all()}) {
      std::size_t size_direct = 0, eta_direct = 0;
      for (const auto& [x, u] : sigma) {
        std::size_t k = oracle::occurrences(t, x);
        size_direct += k * oracle::nodes(u);
        eta_direct += k * oracle::brute_eta(u, rules).value();
      }
      if (size_sigma(sigma, t) != size_direct || eta_sigma(sigma, t, rules, kFuel) != eta_direct) {
        ++mismatches;
        if (first.empty()) first = to_string(t);
      }
    }
    ++pairs;
  }
  verdict(9, "sigma_measures", mismatches == 0,
          "pairs=" + std::to_string(pairs) + " mismatches=" + std::to_string(mismatches) +
              (first.empty() ? "" : " first t=" + first));
}

std::string slurp_without_timing(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::string out;
  for (std::string line; std::getline(in, line);)
    if (line.find("\"seconds\"") == std::string::npos) out += line + "\n";
  return out;
}

void determinism_criterion() {
  std::size_t checked = 0, broken = 0;
  for (const auto& spec : {kClosed9, kOpen7})
    for (const auto& t : enumerate(spec)) {
      ++checked;
      if (!alpha_eq(parse_term(to_string(t)), t)) ++broken;
    }

  std::vector<std::string> cmds = {"check preservation --max-size 6 --pool x,y",
                                   "check typable_iff_beta_sn --max-size 7 --closed"};
  std::size_t identical = 0;
  std::string diff;
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    std::string contents[2];
    for (int k = 0; k < 2; ++k) {
      std::string path = "acceptance_report_" + std::to_string(i) + "_" + std::to_string(k) + ".json";
      std::string cmd = std::string(LAMLAB_CLI) + " " + cmds[i] + " --report " + path + " > /dev/null";
      int rc = std::system(cmd.c_str());
      contents[k] = rc == 0 ? slurp_without_timing(path) : "exit " + std::to_string(rc);
      std::remove(path.c_str());
    }
    if (contents[0] == contents[1] && !contents[0].empty()) ++identical;
    else diff = cmds[i];
  }
  verdict(10, "determinism_round_trip", broken == 0 && identical == cmds.size(),
          "round_trip=" + std::to_string(checked - broken) + "/" + std::to_string(checked) +
              " identical_reports=" + std::to_string(identical) + "/" + std::to_string(cmds.size()) +
              (diff.empty() ? "" : " differing: " + diff));
}

}  // namespace

int main() {
  main_corpus_criterion(1, "preservation");
  main_corpus_criterion(2, "typable_iff_beta_sn");
  main_corpus_criterion(3, "typable_implies_sn");
  substitution_criterion();

  PropertyOptions aux4;
  aux4.aux_max_size = 4;
  PropertyReport sc = run_property("subst_commute", {6, {"x", "y"}, false}, kFuel, aux4);
  verdict(5, "subst_commute", sc.passed() && sc.skipped == 0, summary(sc));
  PropertyReport em = run_property("eta_monotone", {6, {"x", "y"}, false}, kFuel, aux4);
  verdict(6, "eta_monotone", em.passed(), summary(em));

  main_corpus_criterion(7, "prepa2");

  PropertyReport sr = run_property("subject_reduction", {6, {"x", "y"}, false}, kFuel);
  verdict(8, "subject_reduction", sr.passed(),
          summary(sr) + " budget_failures=" + std::to_string(sr.diagnostics["budget_failures"].size()) +
              " retried=" + std::to_string(sr.diagnostics.value("retried", 0)));

  sigma_criterion();
  determinism_criterion();

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criterion(s) failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
