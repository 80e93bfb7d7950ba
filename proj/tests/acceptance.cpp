// Acceptance suite: one PASS/FAIL line per criterion. Limits below are wall-clock milliseconds.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "symk/checks.hpp"

using namespace symk;

namespace {

constexpr u64 kSeed = 20241;
constexpr double kP1ReciprocityMs = 10000;
constexpr double kEllipticReciprocityMs = 30000;
constexpr double kSteinbergMs = 5000;
constexpr double kRewriteMs = 60000;
constexpr double kPinnedRunMs = 120000;

double ms_of(const Report& r, const std::string& key) { return r.timing.at("ms").at(key).get<double>(); }

double max_ms(const Report& r) {
  double m = 0;
  for (auto& [k, v] : r.timing.at("ms").items()) m = std::max(m, v.get<double>());
  return m;
}

// Limits per criterion; empty string when within limits.
std::string limit_violation(int id, const Report& r) {
  char buf[160] = "";
  switch (id) {
    case 1:
      if (ms_of(r, "P1") >= kP1ReciprocityMs)
        std::snprintf(buf, sizeof buf, "P1 trials took %.0f ms", ms_of(r, "P1"));
      else if (ms_of(r, "E") >= kEllipticReciprocityMs)
        std::snprintf(buf, sizeof buf, "elliptic trials took %.0f ms", ms_of(r, "E"));
      break;
    case 2:
      if (ms_of(r, "total") >= kSteinbergMs) std::snprintf(buf, sizeof buf, "took %.0f ms", ms_of(r, "total"));
      break;
    case 3:
      if (ms_of(r, "total") >= kRewriteMs) std::snprintf(buf, sizeof buf, "took %.0f ms", ms_of(r, "total"));
      break;
    case 4:
      if (max_ms(r) >= kPinnedRunMs) std::snprintf(buf, sizeof buf, "slowest run took %.0f ms", max_ms(r));
      break;
    default:
      break;
  }
  return buf;
}

void write_report(const std::filesystem::path& dir, int id, const std::string& tag, const Report& r) {
  std::ofstream(dir / ("criterion" + std::to_string(id) + tag + ".json")) << r.to_json().dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path dir = argc > 1 ? argv[1] : "acceptance_reports";
  std::filesystem::create_directories(dir);
  bool all = true;
  std::map<int, std::string> canonical;
  for (auto& e : law_suite()) {
    auto t0 = std::chrono::steady_clock::now();
    std::string why;
    bool pass = false;
    try {
      Report r = e.run(SuiteOptions{kSeed, 1});
      write_report(dir, e.id, "", r);
      canonical[e.id] = r.canonical();
      why = limit_violation(e.id, r);
      pass = r.passed() && why.empty();
      if (!r.passed())
        for (auto& c : r.checks)
          if (!c.pass) why += (why.empty() ? "" : "; ") + c.name;
    } catch (const std::exception& ex) {
      why = ex.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d: %s  %s (%.1f s)%s%s\n", e.id, pass ? "PASS" : "FAIL", e.title.c_str(), s,
                why.empty() ? "" : " -- ", why.c_str());
    std::fflush(stdout);
    all = all && pass;
  }

  // 12: rerun 1-10 with four threads; reports must match byte for byte outside the timing block
  auto t0 = std::chrono::steady_clock::now();
  std::string why;
  for (auto& e : law_suite()) {
    if (e.id > 10) continue;
    try {
      Report r = e.run(SuiteOptions{kSeed, 4});
      write_report(dir, e.id, "_threads4", r);
      if (r.canonical() != canonical[e.id]) why += (why.empty() ? "differs: " : ", ") + std::to_string(e.id);
    } catch (const std::exception& ex) {
      why += (why.empty() ? "" : "; ") + std::string(ex.what());
    }
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("criterion 12: %s  identical reports with 1 and 4 threads (%.1f s)%s%s\n", why.empty() ? "PASS" : "FAIL",
              s, why.empty() ? "" : " -- ", why.c_str());
  all = all && why.empty();
  return all ? 0 : 1;
}
