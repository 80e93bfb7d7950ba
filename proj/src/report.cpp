#include "symk/report.hpp"

#include <cstdio>
#include <set>
#include <sstream>

#include "symk/parse.hpp"

namespace symk {

namespace {

Json int_json(const Int& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

Json check_json(const Check& c) { return Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}}; }

std::vector<std::string> split_top_level(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  for (auto& x : out) {
    auto b = x.find_first_not_of(' '), e = x.find_last_not_of(' ');
    x = b == std::string::npos ? "" : x.substr(b, e - b + 1);
  }
  return out;
}

template <class T>
T field_of(const Json& j, const char* key, const char* what) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorKind::SchemaError, std::string("field '") + key + "' must be " + what);
  }
}

void only_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& where) {
  require(j.is_object(), ErrorKind::SchemaError, where + " must be an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (auto& [k, v] : j.items())
    require(allowed.count(k) > 0, ErrorKind::SchemaError, "unknown field '" + k + "' in " + where);
}

}  // namespace

std::string fnv1a_hex(const std::string& s) {
  u64 h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---- reports ----

bool Report::passed() const {
  for (auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void Report::add_check(std::string name, bool pass, Json detail) {
  checks.push_back(Check{std::move(name), pass, std::move(detail)});
}

std::string Report::canonical() const {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["config"] = config;
  j["results"] = results;
  Json cs = Json::array();
  for (auto& c : checks) cs.push_back(check_json(c));
  j["checks"] = cs;
  j["passed"] = passed();
  return j.dump();
}

std::string Report::hash() const { return fnv1a_hex(canonical()); }

Json Report::to_json() const {
  Json j = Json::parse(canonical());
  j["hash"] = hash();
  j["timing"] = timing;
  return j;
}

Report Report::from_json(const Json& j) {
  only_keys(j, {"schema_version", "command", "config", "results", "checks", "passed", "hash", "timing"}, "report");
  require(field_of<int>(j, "schema_version", "an integer") == kSchemaVersion, ErrorKind::SchemaError,
          "unsupported schema_version");
  Report r;
  r.command = field_of<std::string>(j, "command", "a string");
  r.config = j.value("config", Json::object());
  r.results = j.value("results", Json::object());
  r.timing = j.value("timing", Json::object());
  for (auto& c : j.value("checks", Json::array())) {
    only_keys(c, {"name", "pass", "detail"}, "check");
    r.add_check(field_of<std::string>(c, "name", "a string"), field_of<bool>(c, "pass", "a boolean"),
                c.value("detail", Json::object()));
  }
  if (j.contains("hash"))
    require(j["hash"] == r.hash(), ErrorKind::SchemaError, "report hash does not match its content");
  return r;
}

namespace {

bool is_group(const Json& v) { return v.is_object() && v.contains("invariants") && v.contains("text"); }

std::string group_text(const Json& v) {
  std::string t = v["text"].get<std::string>();
  return t == "0" ? "0 (trivial group)" : t;
}

void render(std::ostringstream& o, const std::string& key, const Json& v, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  if (is_group(v)) {
    o << pad << key << ": " << group_text(v) << "\n";
  } else if (v.is_string()) {
    o << pad << key << ": " << v.get<std::string>() << "\n";
  } else if (v.is_array() && !v.empty() && v[0].is_object()) {
    o << pad << key << ":\n";
    for (auto& e : v) {
      o << pad << "  -";
      for (auto& [k, x] : e.items()) {
        if (is_group(x))
          o << " " << k << "=" << x["text"].get<std::string>();
        else if (x.is_string())
          o << " " << k << "=" << x.get<std::string>();
        else
          o << " " << k << "=" << x.dump();
      }
      o << "\n";
    }
  } else {
    o << pad << key << ": " << v.dump() << "\n";
  }
}

}  // namespace

std::string Report::text() const {
  std::ostringstream o;
  o << command << "\n";
  for (auto& [k, v] : results.items()) render(o, k, v, 2);
  for (auto& c : checks) o << (c.pass ? "PASS " : "FAIL ") << c.name << "\n";
  o << "hash " << hash() << "\n";
  return o.str();
}

// ---- schema ----

Json group_json(const FiniteAbelianGroup& G) {
  Json inv = Json::array();
  for (auto& x : G.invariants()) inv.push_back(int_json(x));
  return Json{{"invariants", inv}, {"text", G.to_string()}, {"free_rank", G.free_rank()}};
}

Json stats_json(const SampleStats& s) {
  Json r = Json::object();
  for (auto& [k, v] : s.reasons) r[k] = v;
  return Json{{"accepted", s.accepted}, {"zero", s.zero}, {"rejected", s.rejected}, {"draw_failures", r}};
}

Json problem_json(const Problem& p) {
  return Json{{"schema_version", kSchemaVersion},
              {"base", p.base->to_string()},
              {"functors", p.functors},
              {"variant", variant_name(p.variant)},
              {"budget",
               {{"D", p.budget.D},
                {"H", p.budget.H},
                {"samples", p.budget.samples},
                {"seed", p.budget.seed},
                {"steps", p.budget.steps}}},
              {"curves", p.curves}};
}

Problem parse_problem(const Json& j) {
  only_keys(j, {"schema_version", "base", "functors", "variant", "budget", "curves"}, "problem");
  if (j.contains("schema_version"))
    require(field_of<int>(j, "schema_version", "an integer") == kSchemaVersion, ErrorKind::SchemaError,
            "unsupported schema_version");
  Problem p;
  try {
    p.base = parse_field(field_of<std::string>(j, "base", "a field literal"));
  } catch (const Error& e) {
    fail(ErrorKind::SchemaError, std::string("base: ") + e.what());
  }
  p.functors = field_of<std::vector<std::string>>(j, "functors", "a list of functor literals");
  require(!p.functors.empty(), ErrorKind::SchemaError, "functors must not be empty");
  if (j.contains("variant")) p.variant = parse_variant(field_of<std::string>(j, "variant", "a string"));
  if (j.contains("budget")) {
    const Json& b = j["budget"];
    only_keys(b, {"D", "H", "samples", "seed", "steps"}, "budget");
    if (b.contains("D")) p.budget.D = field_of<int>(b, "D", "an integer");
    if (b.contains("H")) p.budget.H = field_of<int>(b, "H", "an integer");
    if (b.contains("samples")) p.budget.samples = field_of<int>(b, "samples", "an integer");
    if (b.contains("seed")) p.budget.seed = field_of<u64>(b, "seed", "an unsigned integer");
    if (b.contains("steps")) p.budget.steps = field_of<int>(b, "steps", "an integer");
  }
  require(p.budget.D >= 1 && p.budget.H >= 1 && p.budget.samples >= 0 && p.budget.steps >= 1,
          ErrorKind::SchemaError, "budget caps must be positive");
  if (j.contains("curves")) p.curves = field_of<std::vector<std::string>>(j, "curves", "a list of curve literals");
  return p;
}

Problem parse_problem_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::ParseError, std::string("problem JSON: ") + e.what());
  }
  return parse_problem(j);
}

// ---- commands ----

Report cmd_tame(const std::string& field, const std::string& symbol, const std::string& place) {
  Report r;
  r.command = "tame";
  r.config = Json{{"field", field}, {"symbol", symbol}, {"place", place}};
  CurveRef C = parse_curve(field);
  FunctionMilnor x = parse_milnor(symbol, C);
  Place v = parse_place(place, C);
  FiniteMilnor res = tame_symbol(x, v);
  FieldRef kv = v.residue_field();
  std::string value;
  if (res.degree() == 0) {
    value = steinberg_reduce(res).to_string();
  } else if (res.degree() == 1) {
    Elem u = kv->one();
    for (auto& [s, c] : res.terms()) u = u * pow_signed(s[0], c);
    value = u.is_one() ? "0 (trivial)" : to_string(u) + " in " + kv->to_string();
  } else {
    value = "0 (trivial)";
  }
  r.results = Json{{"residue", value}, {"symbol", to_string(res)}, {"residue_field", kv->to_string()}};
  return r;
}

ReciprocityBatch reciprocity_batch(const CurveRef& C, int count, int H, u64 seed, int threads) {
  std::vector<std::optional<Json>> bad(static_cast<std::size_t>(count));
  parallel_for(bad.size(), threads, [&](std::size_t i) {
    Rng rng(splitmix64(seed ^ splitmix64(i)));
    Function f = random_function(C, rng, H), g = random_function(C, rng, H);
    ReciprocityResult res = weil_reciprocity_check(FunctionMilnor::symbol(C, {f, g}));
    if (res.ok) return;
    Json table = Json::array();
    for (auto& e : res.table)
      table.push_back(Json{{"place", e.place.to_string()},
                           {"residue", to_string(e.residue)},
                           {"transferred", e.transferred.to_string()}});
    bad[i] = Json{{"trial", i}, {"f", f.to_string()}, {"g", g.to_string()}, {"table", table},
                  {"total", res.total.to_string()}};
  });
  ReciprocityBatch out;
  out.count = bad.size();
  for (auto& b : bad)
    if (b) {
      out.failures++;
      out.failure_tables.push_back(*b);
    }
  return out;
}

Report cmd_reciprocity(const std::string& curve, int count, u64 seed, int H, int threads) {
  require(count > 0, ErrorKind::UsageError, "reciprocity needs a positive count");
  Report r;
  r.command = "reciprocity";
  r.config = Json{{"curve", curve}, {"count", count}, {"seed", seed}, {"H", H}};
  ReciprocityBatch b = reciprocity_batch(parse_curve(curve), count, H, seed, threads);
  r.results = Json{{"trials", b.count}, {"failures", b.failures}, {"failure_tables", b.failure_tables}};
  r.add_check("sum of transferred residues is zero", b.failures == 0,
              Json{{"trials", b.count}, {"failures", b.failures}});
  return r;
}

Report cmd_kgroup(const Problem& p, int threads) {
  Report r;
  r.command = "kgroup";
  r.config = problem_json(p);
  KGroupResult k = compute_kgroup(p, threads);
  Json trace = Json::array();
  for (auto& s : k.trace)
    trace.push_back(Json{{"step", s.step},
                         {"steinberg_rows", s.steinberg_rows},
                         {"somekawa_rows", s.somekawa_rows},
                         {"geometric_rows", s.geometric_rows},
                         {"Ktilde", group_json(s.Ktilde)},
                         {"K_nested", group_json(s.K)},
                         {"Kprime_nested", group_json(s.Kprime)},
                         {"K", group_json(s.K_pure)},
                         {"Kprime", group_json(s.Kprime_pure)}});
  std::string certs;
  for (auto& c : k.certificates) certs += c + "\n";
  r.results = Json{{"variant", variant_name(k.variant)},
                   {"group", group_json(k.group)},
                   {"mackey", group_json(k.mackey)},
                   {"generators", k.generators},
                   {"presentation_rows", k.presentation_rows},
                   {"steinberg_rows", k.steinberg_rows},
                   {"somekawa_rows", k.somekawa_rows},
                   {"geometric_rows", k.geometric_rows},
                   {"somekawa_stats", stats_json(k.somekawa_stats)},
                   {"geometric_stats", stats_json(k.geometric_stats)},
                   {"trace", trace},
                   {"certificates", k.certificates},
                   {"certificate_hash", fnv1a_hex(certs)}};
  r.add_check("orders weakly decrease along the budget and the chain", k.monotone);
  return r;
}

Report cmd_rewrite(const std::string& kind, const std::string& field, const std::string& symbol,
                   const std::string& places) {
  Report r;
  r.command = "rewrite";
  r.config = Json{{"kind", kind}, {"field", field}, {"symbol", symbol}, {"places", places}};
  CurveRef C = parse_curve(field);
  FunctionMilnor x = parse_milnor(symbol, C);
  RewriteResult out;
  bool post = true;
  if (kind == "semilocal") {
    std::vector<Place> Z;
    for (auto& s : split_top_level(places, ',')) Z.push_back(parse_place(s, C));
    out = semilocal_rewrite(x, Z);
    for (auto& [s, c] : out.value.terms())
      for (auto& v : Z) post = post && valuation(s[1], v) == 0;
  } else if (kind == "general-position") {
    out = general_position(x);
    post = in_general_position(out.value);
  } else {
    fail(ErrorKind::UsageError, "rewrite kind must be semilocal or general-position");
  }
  r.results = Json{{"input", to_string(x)},
                   {"output", to_string(out.value)},
                   {"steps", out.steps},
                   {"normal_form", normal_form(out.value).to_string()}};
  r.add_check("output equals input in the normal form oracle", milnor_equal(out.value, x));
  r.add_check(kind == "semilocal" ? "second entries are units along Z" : "supports of the first entries are disjoint",
              post);
  return r;
}

Report cmd_values(const std::string& base, const std::string& functor, int D) {
  require(D >= 1, ErrorKind::UsageError, "degree bound must be positive");
  Report r;
  r.command = "values";
  r.config = Json{{"base", base}, {"functor", functor}, {"D", D}};
  FieldRef k = parse_field(base);
  Presentation P(k, std::vector<std::string>{functor}, D);
  const FunctorRef& F = P.functor(0);
  Json levels = Json::array();
  for (int d = 1; d <= D; ++d) {
    Json gens = Json::array();
    for (std::size_t b = 0; b < F->group(d).orders().size(); ++b)
      gens.push_back(F->value_string(F->group(d).basis_raw(b), d));
    levels.push_back(Json{{"d", d},
                          {"group", group_json(F->group(d).group())},
                          {"generators", gens},
                          {"cocharacters", F->cocharacters(d).size()}});
  }
  r.results = Json{{"functor", F->name()}, {"levels", levels}, {"mackey", group_json(P.quotient())}};
  return r;
}

}  // namespace symk
