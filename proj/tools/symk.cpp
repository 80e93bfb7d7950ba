#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "symk/checks.hpp"
#include "symk/parse.hpp"

using namespace symk;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kResource = 2, kInput = 3 };

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::TooLarge: return kResource;
    case ErrorKind::ParseError:
    case ErrorKind::SchemaError:
    case ErrorKind::UsageError: return kInput;
    default: return kCheckFailed;
  }
}

std::string read_input(const std::string& arg) {
  auto b = arg.find_first_not_of(" \t\n");
  if (b != std::string::npos && arg[b] == '{') return arg;  // inline JSON
  std::ifstream in(arg);
  require(in.good(), ErrorKind::UsageError, "cannot read " + arg);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact K-groups of Milnor, Somekawa and geometric type over small finite fields"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::optional<u64> seed;
  int threads = 1;
  std::string format = "text";
  bool verbose = false;
  std::optional<int> bD, bH, bSamples, bSteps;
  app.add_option("--seed", seed, "64-bit seed for randomized commands");
  app.add_option("--threads", threads, "worker threads; output does not depend on it")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("-v,--verbose", verbose, "print timing to stderr");
  app.add_option("--budget-D", bD, "extension degree bound")->check(CLI::PositiveNumber);
  app.add_option("--budget-H", bH, "degree bound of sampled functions")->check(CLI::PositiveNumber);
  app.add_option("--budget-samples", bSamples, "sampled relation data per kind")->check(CLI::NonNegativeNumber);
  app.add_option("--budget-steps", bSteps, "stabilization checkpoints")->check(CLI::PositiveNumber);

  std::string field, symbol, place, curve, kind, places, input, base, functor;
  int count = 0, degree = 6, D = 2;
  std::vector<int> only;

  auto* tame = app.add_subcommand("tame", "tame symbol of a Milnor element at a place");
  tame->add_option("--field", field, "function field, e.g. GF(5)(t)")->required();
  tame->add_option("--symbol", symbol, "e.g. {t,t-1}")->required();
  tame->add_option("--place", place, "e.g. (t) or inf")->required();

  auto* rec = app.add_subcommand("reciprocity", "random Weil reciprocity checks");
  rec->add_option("--curve", curve, "P1/GF(q) or E/GF(p): y^2 = x^3 + a x + b")->required();
  rec->add_option("--count", count, "number of random pairs")->required();
  rec->add_option("--degree", degree, "degree bound of the random functions");

  auto* kg = app.add_subcommand("kgroup", "K-group from a problem file");
  kg->add_option("problem", input, "path to a problem JSON file, or inline JSON")->required();

  auto* rw = app.add_subcommand("rewrite", "semilocal or general position rewrite with an oracle certificate");
  rw->add_option("kind", kind, "semilocal or general-position")->required()->check(
      CLI::IsMember({"semilocal", "general-position"}));
  rw->add_option("--field", field, "function field")->default_val("GF(7)(t)");
  rw->add_option("--symbol", symbol, "Milnor element")->required();
  rw->add_option("--Z", places, "places, e.g. \"(t),(t-1)\"");

  auto* vals = app.add_subcommand("values", "values of a coefficient functor on the tower");
  vals->add_option("--base", base, "base field")->required();
  vals->add_option("--functor", functor, "functor literal")->required();
  vals->add_option("--D", D, "degree bound")->check(CLI::PositiveNumber);

  auto* laws = app.add_subcommand("check-laws", "run the invariant suite");
  laws->add_option("--only", only, "criterion numbers to run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  auto t0 = std::chrono::steady_clock::now();
  try {
    Report r;
    if (*tame) {
      r = cmd_tame(field, symbol, place);
    } else if (*rec) {
      require(seed.has_value(), ErrorKind::UsageError, "reciprocity is randomized and needs --seed");
      r = cmd_reciprocity(curve, count, *seed, degree, threads);
    } else if (*kg) {
      std::string text = read_input(input);
      Problem p = parse_problem_text(text);
      bool has_seed = false;
      try {
        auto j = Json::parse(text);
        has_seed = j.contains("budget") && j["budget"].contains("seed");
      } catch (...) {
      }
      require(has_seed || seed.has_value(), ErrorKind::UsageError, "kgroup needs a seed in the budget or --seed");
      if (seed) p.budget.seed = *seed;
      if (bD) p.budget.D = *bD;
      if (bH) p.budget.H = *bH;
      if (bSamples) p.budget.samples = *bSamples;
      if (bSteps) p.budget.steps = *bSteps;
      r = cmd_kgroup(p, threads);
    } else if (*rw) {
      r = cmd_rewrite(kind, field, symbol, places);
    } else if (*vals) {
      r = cmd_values(base, functor, D);
    } else if (*laws) {
      require(seed.has_value(), ErrorKind::UsageError, "check-laws is randomized and needs --seed");
      r.command = "check-laws";
      r.config = Json{{"seed", *seed}, {"only", only}};
      r.timing = Json{{"threads", threads}, {"ms", Json::object()}};
      for (auto& e : law_suite()) {
        if (!only.empty() && std::find(only.begin(), only.end(), e.id) == only.end()) continue;
        Report part = e.run(SuiteOptions{*seed, threads});
        for (auto& c : part.checks) r.add_check(std::to_string(e.id) + ": " + c.name, c.pass, c.detail);
        r.results[std::to_string(e.id)] = part.results;
        r.timing["ms"][std::to_string(e.id)] = part.timing["ms"];
      }
      require(!r.checks.empty(), ErrorKind::UsageError, "no checks selected");
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    r.timing["wall_ms"] = ms;
    r.timing["threads"] = threads;
    if (format == "json")
      std::cout << r.to_json().dump(2) << "\n";
    else
      std::cout << r.text();
    if (verbose) std::cerr << "wall " << ms << " ms\n";
    return r.passed() ? kOk : kCheckFailed;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
}
