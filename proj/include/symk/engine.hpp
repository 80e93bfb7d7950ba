#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "symk/functors.hpp"

namespace symk {

enum class Variant { K, Kprime, Ktilde };
std::string variant_name(Variant v);  // "K", "Kprime", "Ktilde"
Variant parse_variant(const std::string& s);

struct Budget {
  int D = 2;          // extension degrees d <= D
  int H = 3;          // degrees of sampled functions
  int samples = 200;  // sampled Somekawa and geometric data, each
  u64 seed = 1;
  int steps = 4;      // stabilization checkpoints
};

struct Problem {
  FieldRef base = nullptr;
  std::vector<std::string> functors;
  Variant variant = Variant::K;
  Budget budget;
  std::vector<std::string> curves;  // curve literals; P1 over the base when empty
};

// Generators are tuples of Smith basis elements of F_1(T_d), ..., F_n(T_d), one per level d <= D,
// standing for Tr_{T_d/k}(b_1 (x) ... (x) b_n). Rows: orders, Frobenius and projection formula.
class Presentation {
 public:
  struct Generator {
    int d = 1;
    std::vector<std::size_t> basis;
    Int order = 0;  // 0 = free
  };

  Presentation(FieldRef base, const std::vector<std::string>& functors, int D);
  Presentation(FieldRef base, std::vector<FunctorRef> functors, int D);

  FieldRef base() const { return base_; }
  int D() const { return D_; }
  int arity() const { return static_cast<int>(F_.size()); }
  const FunctorRef& functor(int i) const { return F_.at(static_cast<std::size_t>(i)); }
  const std::vector<FunctorRef>& functors() const { return F_; }
  const FieldTower& tower() const { return *T_; }
  std::shared_ptr<const FieldTower> tower_ptr() const { return T_; }
  const std::vector<Generator>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  const std::vector<IntVec>& rows() const { return rows_; }
  std::string generator_string(std::size_t g) const;

  // Tr_{T_d/k}(a_1 (x) ... (x) a_n) with raw a_i in F_i(T_d), as a vector over the generators.
  IntVec expand(int d, const std::vector<IntVec>& raw) const;
  IntVec zero_row() const { return IntVec(gens_.size(), 0); }
  FiniteAbelianGroup quotient() const;  // the truncated Mackey value

 private:
  void build();
  FieldRef base_;
  int D_;
  std::vector<FunctorRef> F_;
  std::shared_ptr<const FieldTower> T_;
  std::vector<Generator> gens_;
  std::map<std::pair<int, std::vector<std::size_t>>, std::size_t> index_;
  std::vector<IntVec> rows_;
};

// ---- relation data ----

struct SomekawaDatum {
  CurveRef C;
  Function h;
  std::vector<Section> g;
};
struct GeometricDatum {
  Function f;  // the cover C -> P1
  std::vector<Section> g;
};
struct SteinbergDatum {
  int d = 1;
  Elem a;  // in T_d, top coordinates
  int i = 0, j = 1;
  IntVec chi_i, chi_j;
  std::vector<IntVec> fillers;  // raw values in F_k(T_d), k != i, j, in slot order
};

// Sum over places c of Tr_{k(c)/k}(g_1(c) (x) ... d_c(g_{i(c)}, h) ... (x) g_n(c)), i(c) the least admissible slot.
// Throws ConditionViolated when two slots are irregular at one place, DegreeOverflow past D.
IntVec harvest_somekawa(const Presentation& P, const SomekawaDatum& x);
// Sum over c in div(f) of v_c(f) Tr_{k(c)/k}(g_1(c) (x) ... (x) g_n(c)).
// Throws NotRegularOnCPrime when a section is irregular off f^{-1}(1), DegreeOverflow past D.
IntVec harvest_geometric(const Presentation& P, const GeometricDatum& x);
IntVec harvest_steinberg(const Presentation& P, const SteinbergDatum& x);

// Every Steinberg datum with basis cocharacters and basis fillers, in a fixed order.
std::vector<SteinbergDatum> steinberg_data(const Presentation& P);

struct SampleStats {
  std::size_t accepted = 0, zero = 0, rejected = 0;
  std::map<std::string, std::size_t> reasons;  // error kind -> count
};

// Seeded samplers; sample k depends only on (seed, k). Each sample retries up to `attempts` draws.
// A sample that only produces zero rows is returned as such; nullopt means every draw was rejected.
template <class Datum>
struct Sampled {
  Datum datum;
  IntVec row;
};
std::optional<Sampled<SomekawaDatum>> sample_somekawa(const Presentation& P, const std::vector<CurveRef>& curves,
                                                      int H, u64 seed, std::size_t k, SampleStats* stats = nullptr);
std::optional<Sampled<GeometricDatum>> sample_geometric(const Presentation& P, const std::vector<CurveRef>& curves,
                                                        int H, u64 seed, std::size_t k, SampleStats* stats = nullptr);
// A nonconstant f on C with f = 1 at every place of S and every place of div(f) of degree <= D.
// Throws DegreeOverflow when no such f is found within the retry budget.
Function cover_through(const CurveRef& C, const std::vector<Place>& S, Rng& rng, int H, int D);
inline constexpr int kSampleAttempts = 40;

std::vector<CurveRef> problem_curves(const Problem& p);

// Rows from every source, computed in parallel and returned in sample order.
struct HarvestedRows {
  std::vector<IntVec> steinberg, somekawa, geometric;
  SampleStats somekawa_stats, geometric_stats;
};
HarvestedRows harvest_all(const Presentation& P, const Problem& p, int threads);

struct StepRecord {
  int step = 0;
  std::size_t steinberg_rows = 0, somekawa_rows = 0, geometric_rows = 0;
  // nested chain: Ktilde = pres + St, K = Ktilde + Som, Kprime = K + Geo
  FiniteAbelianGroup Ktilde, K, Kprime;
  // each variant from its own relations only
  FiniteAbelianGroup K_pure, Kprime_pure;
};

struct KGroupResult {
  Problem problem;
  Variant variant = Variant::K;
  FiniteAbelianGroup group;   // the requested variant, own relations only
  FiniteAbelianGroup mackey;  // truncated Mackey value
  std::size_t generators = 0, presentation_rows = 0;
  std::size_t steinberg_rows = 0, somekawa_rows = 0, geometric_rows = 0;
  SampleStats somekawa_stats, geometric_stats;
  std::vector<StepRecord> trace;
  bool monotone = true;  // orders non-increasing in the budget and along the chain at every step
  std::vector<std::string> certificates;
};

KGroupResult compute_kgroup(const Problem& p, int threads = 1);

struct ProjectionIsoResult {
  FiniteAbelianGroup left, right;
  bool equal = false;
};
// K~(k; F_1..F_{n-1}, Res(E) F_n) at D = e D' against K~(E; F_1..F_n) at D'.
ProjectionIsoResult check_projection_formula_iso(FieldRef k, const std::vector<std::string>& left_functors,
                                                 FieldRef E, const std::vector<std::string>& right_functors,
                                                 int D_left, int D_right, int threads = 1);

// Deterministic work distribution: f(i) for i < n on up to `threads` threads.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& f);
u64 splitmix64(u64 x);

}  // namespace symk
