#include "gridslice/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include "gridslice/bordered.hpp"
#include "gridslice/complexes.hpp"
#include "gridslice/homology.hpp"
#include "gridslice/parallel.hpp"
#include "gridslice/strands.hpp"
#include "gridslice/verify.hpp"

namespace gridslice {

namespace {

using Json = nlohmann::ordered_json;

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<int> parse_ints(const std::string& value, int line, const std::string& key) {
  std::string cleaned = value;
  for (char& ch : cleaned) {
    if (ch == ',' || ch == '[' || ch == ']') ch = ' ';
  }
  std::istringstream in(cleaned);
  std::vector<int> out;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw ParseError(line, key + ": '" + tok + "' is not an integer");
    out.push_back(v);
  }
  return out;
}

void check_permutation(const std::vector<int>& p, int n, int line, const std::string& key) {
  if (static_cast<int>(p.size()) != n) {
    throw ParseError(line, key + " has " + std::to_string(p.size()) + " entries, expected " + std::to_string(n));
  }
  std::vector<int> seen(static_cast<std::size_t>(n) + 1, 0);
  for (int v : p) {
    if (v < 1 || v > n) throw ParseError(line, key + ": entry " + std::to_string(v) + " outside 1.." + std::to_string(n));
    if (seen[static_cast<std::size_t>(v)]++) {
      throw ParseError(line, key + " is not a permutation: " + std::to_string(v) + " repeated");
    }
  }
}

// ------------------------------------------------------------------- reports

struct Report {
  std::string command;
  int n = 0;
  Json results = Json::object();
  Json timings = Json::object();
  bool failed = false;
  std::vector<std::string> lines;

  void say(std::string line) { lines.push_back(std::move(line)); }
};

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct Options {
  bool json = false;
  bool timings = false;
};

void time_step(Report& r, const Options& o, const std::string& key, double ms) {
  if (o.timings) r.timings[key] = std::round(ms * 1000.0) / 1000.0;
}

PlanarGridDiagram load_grid(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open grid file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_grid(ss.str());
}

std::string bigrading(const Bigrading& g) {
  return "A=" + std::to_string(g.alexander) + " mu=" + std::to_string(g.maslov);
}

std::string rows_list(const std::vector<int>& rows) {
  std::string out;
  for (std::size_t i = 0; i < rows.size(); ++i) out += (i ? "," : "") + std::to_string(rows[i]);
  return out;
}

Json complex_json(const GradedComplex& c) {
  Json gens = Json::array();
  for (std::size_t i = 0; i < c.size(); ++i) {
    gens.push_back({{"generator", to_one_line(c.basis[i])},
                    {"A", c.grading[i].alexander},
                    {"mu", c.grading[i].maslov},
                    {"d", format_element(c.diff[i], c.basis)}});
  }
  return gens;
}

std::size_t term_count(const GradedComplex& c) {
  std::size_t t = 0;
  for (const auto& d : c.diff) t += d.size();
  return t;
}

void report_checks(Report& r, const std::vector<CheckResult>& checks) {
  Json arr = Json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name}, {"checked", c.checked}, {"failures", c.failures}, {"witness", c.witness}});
    std::string line = c.name + ": " + (c.ok() ? "PASS" : "FAIL") + " (" + std::to_string(c.checked) + " checked";
    if (!c.ok()) line += ", " + std::to_string(c.failures) + " failed; first: " + c.witness;
    r.say(line + ")");
    if (!c.ok()) r.failed = true;
  }
  r.results["checks"] = arr;
}

std::vector<int> cuts_of(const std::optional<int>& cut, const std::vector<int>& cuts) {
  if (cut && !cuts.empty()) throw CLI::ValidationError("use either --cut or --cuts");
  if (cut) return {*cut};
  if (cuts.empty()) throw CLI::ValidationError("--cut or --cuts is required");
  if (cuts.size() > 2) throw CLI::ValidationError("--cuts takes at most two columns");
  return cuts;
}

// ------------------------------------------------------------------ commands

void cmd_complex(Report& r, const Options& o, const std::string& file, bool toroidal) {
  auto d = load_grid(file);
  r.n = d.n;
  Stopwatch sw;
  auto c = toroidal ? cfk_complex(wrap(d)) : cfp_complex(d);
  time_step(r, o, "complex", sw.ms());
  r.results["kind"] = toroidal ? "toroidal" : "planar";
  r.results["generators"] = complex_json(c);
  r.say(std::string(toroidal ? "CFK^-" : "CFP^-") + " of " + describe(d) + ": " + std::to_string(c.size()) +
        " generators");
  for (std::size_t i = 0; i < c.size(); ++i) {
    r.say("d" + to_one_line(c.basis[i]) + " = " + format_element(c.diff[i], c.basis) + "    [" +
          bigrading(c.grading[i]) + "]");
  }
  auto check = check_complex(c, describe(d));
  report_checks(r, {check});
}

void cmd_homology(Report& r, const Options& o, const std::string& file, std::optional<int> amin,
                  std::optional<int> amax, std::optional<int> mumin, std::optional<int> mumax) {
  auto d = load_grid(file);
  r.n = d.n;
  Stopwatch sw;
  auto c = cfp_complex(d);
  time_step(r, o, "complex", sw.ms());
  int top_a = c.grading.front().alexander;
  int top_mu = c.grading.front().maslov;
  for (const auto& g : c.grading) {
    top_a = std::max(top_a, g.alexander);
    top_mu = std::max(top_mu, g.maslov);
  }
  BidegreeWindow w{amin.value_or(top_a - 3), amax.value_or(top_a), mumin.value_or(top_mu - 8),
                   mumax.value_or(top_mu)};
  Stopwatch sh;
  auto h = homology_dims(c, w);
  time_step(r, o, "homology", sh.ms());
  r.results["window"] = {{"amin", w.a_min}, {"amax", w.a_max}, {"mumin", w.mu_min}, {"mumax", w.mu_max}};
  r.results["mu_computed_max"] = h.mu_computed_max;
  Json dims = Json::array();
  r.say("homology of " + describe(d) + " over A in [" + std::to_string(w.a_min) + "," + std::to_string(w.a_max) +
        "], mu in [" + std::to_string(w.mu_min) + "," + std::to_string(w.mu_max) + "] (ranks computed up to mu=" +
        std::to_string(h.mu_computed_max) + ")");
  for (const auto& [g, dim] : h.dims) {
    if (dim == 0) continue;
    dims.push_back({{"A", g.alexander}, {"mu", g.maslov}, {"dim", dim}, {"chain_dim", h.chain_dims.at(g)}});
    r.say("  " + bigrading(g) + "  dim " + std::to_string(dim) + "  (chains " + std::to_string(h.chain_dims.at(g)) + ")");
  }
  r.results["dims"] = dims;
  r.results["total"] = h.total();
  r.say("total dimension in window: " + std::to_string(h.total()));
}

void cmd_slice(Report& r, const Options& o, const std::string& file, const std::vector<int>& cuts) {
  auto d = load_grid(file);
  r.n = d.n;
  Stopwatch sw;
  auto slabs = slice(d, cuts);
  Json arr = Json::array();
  r.say("slices of " + describe(d));
  for (const auto& p : slabs) {
    Json j{{"kind", to_string(p.kind)},
           {"columns", {p.col_lo, p.col_hi}},
           {"x_rows", p.x_rows},
           {"o_rows", p.o_rows},
           {"generators", generators(p).size()}};
    std::string line = "  " + to_string(p.kind) + " [" + std::to_string(p.col_lo) + "," + std::to_string(p.col_hi) +
                       "): x rows " + rows_list(p.x_rows) + ", o rows " + rows_list(p.o_rows) + ", " +
                       std::to_string(generators(p).size()) + " generators";
    std::vector<CheckResult> checks;
    switch (p.kind) {
      case SlabKind::type_a: {
        auto m = cpa(p);
        std::size_t acts = 0;
        for (const auto& row : m.action) acts += row.size();
        j["action_terms"] = acts;
        line += ", " + std::to_string(acts) + " half-strip actions";
        checks = check_type_a(m);
        break;
      }
      case SlabKind::type_d: {
        auto m = cpd(p);
        std::size_t terms = 0;
        for (const auto& e : m.delta) terms += e.size();
        j["delta_terms"] = terms;
        line += ", " + std::to_string(terms) + " delta terms";
        checks = check_type_d(m);
        break;
      }
      case SlabKind::middle: {
        auto m = cpda(p);
        j["module_basis"] = m.size();
        line += ", " + std::to_string(m.size()) + " bimodule generators";
        checks = check_middle(m);
        break;
      }
      case SlabKind::whole:
        break;
    }
    arr.push_back(j);
    r.say(line);
    std::vector<CheckResult> all;
    absorb(all, checks);
    for (const auto& c : all) {
      if (!c.ok()) {
        r.failed = true;
        r.say("    " + c.name + ": FAIL; first: " + c.witness);
      }
    }
  }
  time_step(r, o, "slice", sw.ms());
  r.results["slabs"] = arr;
}

void cmd_pair(Report& r, const Options& o, const std::string& file, const std::vector<int>& cuts, bool verify) {
  auto d = load_grid(file);
  r.n = d.n;
  auto slabs = slice(d, cuts);
  Stopwatch sw;
  std::vector<std::pair<std::string, GradedComplex>> products;
  if (slabs.size() == 2) {
    products.emplace_back("A.D", pair_AD(cpa(slabs[0]), cpd(slabs[1])));
  } else {
    auto a = cpa(slabs[0]);
    auto m = cpda(slabs[1]);
    auto dm = cpd(slabs[2]);
    products.emplace_back("A.(DA.D)", pair_AD(a, tensor_DA_D(m, dm)));
    products.emplace_back("(A.DA).D", pair_AD(tensor_A_DA(a, m), dm));
  }
  time_step(r, o, "pair", sw.ms());
  Json arr = Json::array();
  for (const auto& [name, c] : products) {
    Json j{{"order", name}, {"generators", c.size()}, {"differential_terms", term_count(c)}};
    r.say("pairing " + name + ": " + std::to_string(c.size()) + " generators, " + std::to_string(term_count(c)) +
          " differential terms");
    if (verify) {
      Stopwatch sv;
      auto direct = cfp_complex(d);
      auto diff = first_difference(c, direct);
      time_step(r, o, "verify " + name, sv.ms());
      j["match"] = diff.empty();
      if (diff.empty()) {
        r.say("pairing: EXACT MATCH (" + std::to_string(c.size()) + " generators, " +
              std::to_string(term_count(c)) + " differential terms, gradings equal)");
      } else {
        j["difference"] = diff;
        r.failed = true;
        r.say("pairing: MISMATCH for " + describe(d) + " cuts " + rows_list(cuts) + ": " + diff);
      }
    }
    arr.push_back(j);
  }
  r.results["products"] = arr;
}


RowSet rows_from(const std::vector<int>& rows, int n) {
  RowSet s = 0;
  for (int v : rows) {
    if (v < 1 || v > n) throw CLI::ValidationError("marker rows must lie in 1.." + std::to_string(n));
    s |= row_bit(v);
  }
  return s;
}

void cmd_algebra(Report& r, const Options& o, int n, int k, const std::string& what, const std::vector<int>& lx,
                 const std::vector<int>& lo) {
  if (n < 0 || n > kMaxGridSize || k < 0 || k > n + 1) {
    throw CLI::ValidationError("need 0 <= n <= " + std::to_string(kMaxGridSize) + " and 0 <= k <= n+1");
  }
  r.n = n;
  Stopwatch sw;
  const auto& b = basis(n, k);
  r.results["basis_size"] = b.size();
  r.say("A_{" + std::to_string(n) + "," + std::to_string(k) + "}: " + std::to_string(b.size()) + " basis elements");
  Json arr = Json::array();
  if (what == "basis") {
    for (const auto& f : b) {
      arr.push_back({{"element", f.to_string()}, {"cross", cross(f)}});
      r.say("  " + f.to_string() + "  cross " + std::to_string(cross(f)));
    }
  } else if (what == "mult") {
    for (const auto& f : b) {
      for (const auto& g : b) {
        auto p = mul_basis(f, g);
        if (!p) continue;
        arr.push_back({{"left", f.to_string()}, {"right", g.to_string()}, {"product", p->to_string()}});
        r.say("  " + f.to_string() + " * " + g.to_string() + " = " + p->to_string());
      }
    }
  } else if (what == "diff") {
    for (const auto& f : b) {
      auto df = diff_basis(f);
      std::string s;
      for (const auto& g : df) s += (s.empty() ? "" : " + ") + g.to_string();
      if (s.empty()) s = "0";
      arr.push_back({{"element", f.to_string()}, {"d", s}});
      r.say("  d" + f.to_string() + " = " + s);
    }
  } else {
    InterfaceGradingData gd{rows_from(lx, n), rows_from(lo, n)};
    for (const auto& f : b) {
      auto g = gradings_alg(f, gd);
      arr.push_back({{"element", f.to_string()}, {"A", g.alexander}, {"mu", g.maslov}});
      r.say("  " + f.to_string() + "  " + bigrading(g));
    }
  }
  r.results[what] = arr;
  time_step(r, o, "algebra", sw.ms());
}

std::vector<PlanarGridDiagram> all_diagrams(int n) {
  std::vector<PlanarGridDiagram> out;
  std::vector<int> px(static_cast<std::size_t>(n));
  std::iota(px.begin(), px.end(), 1);
  do {
    std::vector<int> po(px.size());
    std::iota(po.begin(), po.end(), 1);
    do {
      out.push_back(validate_planar(n, px, po));
    } while (std::next_permutation(po.begin(), po.end()));
  } while (std::next_permutation(px.begin(), px.end()));
  return out;
}

std::vector<PlanarGridDiagram> random_diagrams(int n, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<PlanarGridDiagram> out;
  for (int i = 0; i < count; ++i) out.push_back(random_diagram(n, rng()));
  return out;
}

void cmd_dd(Report& r, const Options& o, int n, int k, int count, std::uint64_t seed) {
  if (n < 1 || n > 8 || k < 1 || k > n) throw CLI::ValidationError("need 1 <= k <= n <= 8");
  r.n = n;
  Stopwatch sw;
  auto dd = cpdd(n, k);
  std::size_t terms = 0;
  for (const auto& e : dd.delta) terms += e.size();
  r.results["generators"] = dd.generators.size();
  r.results["generator_delta_terms"] = terms;
  r.say("CPDD n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " + std::to_string(dd.generators.size()) +
        " generators, " + std::to_string(terms) + " chord terms");
  std::vector<CheckResult> checks;
  absorb(checks, check_dd(dd, n <= 4));
  auto diagrams = n <= 4 ? all_diagrams(n) : random_diagrams(n, count, seed);
  std::vector<CheckResult> per(diagrams.size());
  parallel_for(diagrams.size(), [&](std::size_t i) {
    auto slab = slice(diagrams[i], {k})[1];
    auto diff = first_difference(tensor_Aabs_DD(cpa_abs(slab), dd), cpd(slab));
    per[i] = CheckResult("interface pairing");
    per[i].checked = 1;
    if (!diff.empty()) per[i].fail(describe(diagrams[i]) + " cut " + std::to_string(k) + ": " + diff);
  });
  for (const auto& c : per) absorb(checks, c);
  r.results["diagrams"] = diagrams.size();
  time_step(r, o, "dd", sw.ms());
  report_checks(r, checks);
}

void cmd_check(Report& r, const Options& o, std::optional<int> random_n, int count, std::uint64_t seed,
               std::optional<int> exhaustive_n) {
  if (random_n.has_value() == exhaustive_n.has_value()) {
    throw CLI::ValidationError("give exactly one of --random N or --exhaustive N");
  }
  const int n = random_n ? *random_n : *exhaustive_n;
  if (n < 1 || n > 7) throw CLI::ValidationError("check supports 1 <= N <= 7");
  if (exhaustive_n && n > 4) throw CLI::ValidationError("--exhaustive supports N <= 4");
  r.n = n;
  Stopwatch sw;
  auto diagrams = exhaustive_n ? all_diagrams(n) : random_diagrams(n, count, seed);
  std::vector<std::vector<CheckResult>> per(diagrams.size());
  std::vector<OverlapCoverage> cover(diagrams.size());
  parallel_for(diagrams.size(), [&](std::size_t i) { per[i] = check_diagram(diagrams[i], true, &cover[i]); });
  std::vector<CheckResult> checks;
  OverlapCoverage cov;
  for (std::size_t i = 0; i < diagrams.size(); ++i) {
    absorb(checks, per[i]);
    cov.merge(cover[i]);
  }
  if (n <= 3) {
    for (int k = 0; k <= n + 1; ++k) absorb(checks, check_algebra(n, k, seed));
  }
  if (n <= 5) absorb(checks, check_relations(n));
  for (int k = 0; k <= n + 1; ++k) {
    absorb(checks, check_factorization(n, k));
    if (k >= 1 && k <= n) absorb(checks, check_dd(cpdd(n, k), n <= 3));
  }
  r.results["diagrams"] = diagrams.size();
  r.results["coverage"] = {{"disjoint", cov.disjoint},   {"nested", cov.nested},
                           {"abutting", cov.abutting},   {"corner", cov.corner},
                           {"interleaved", cov.interleaved}, {"rect_rect", cov.rect_rect},
                           {"rect_half", cov.rect_half}, {"coefficient_diff", cov.coefficient_diff}};
  r.say("checked " + std::to_string(diagrams.size()) + " diagrams of size " + std::to_string(n));
  report_checks(r, checks);
  r.say("d^2 cancellation coverage: disjoint " + std::to_string(cov.disjoint) + ", nested " +
        std::to_string(cov.nested) + ", abutting " + std::to_string(cov.abutting) + ", corner " +
        std::to_string(cov.corner) + ", interleaved " + std::to_string(cov.interleaved));
  time_step(r, o, "check", sw.ms());
}

std::size_t falling_factorial(int n, int k) {
  std::size_t v = 1;
  for (int i = 0; i < k; ++i) v *= static_cast<std::size_t>(n - i);
  return v;
}

void cmd_bench(Report& r, const std::optional<std::string>& file, std::optional<int> random_n, std::uint64_t seed,
               std::optional<int> cut) {
  if (file.has_value() == random_n.has_value()) throw CLI::ValidationError("give a grid FILE or --random N");
  auto d = file ? load_grid(*file) : random_diagram(*random_n, seed);
  r.n = d.n;
  const int k = cut.value_or((d.n + 1) / 2);
  if (k < 1 || k > d.n) throw CLI::ValidationError("--cut must lie in 1..n");
  Stopwatch s1;
  auto direct = cfp_complex(d);
  r.timings["direct"] = s1.ms();
  Stopwatch s2;
  auto slabs = slice(d, {k});
  auto ma = cpa(slabs[0]);
  auto md = cpd(slabs[1]);
  r.timings["modules"] = s2.ms();
  Stopwatch s3;
  auto paired = pair_AD(ma, md);
  r.timings["pair"] = s3.ms();
  const bool match = first_difference(paired, direct).empty();
  r.failed = !match;
  r.results = {{"diagram", describe(d)},
               {"cut", k},
               {"direct_generators", direct.size()},
               {"expected_direct", falling_factorial(d.n + 1, d.n + 1)},
               {"type_a_generators", ma.size()},
               {"expected_type_a", falling_factorial(d.n + 1, k)},
               {"type_d_generators", md.size()},
               {"expected_type_d", falling_factorial(d.n + 1, d.n + 1 - k)},
               {"paired_generators", paired.size()},
               {"match", match}};
  r.say("bench " + describe(d) + " cut " + std::to_string(k));
  r.say("  direct: " + std::to_string(direct.size()) + " generators in " + std::to_string(r.timings["direct"].get<double>()) + " ms");
  r.say("  sliced: " + std::to_string(ma.size()) + " + " + std::to_string(md.size()) + " slab generators, modules " +
        std::to_string(r.timings["modules"].get<double>()) + " ms, pairing " +
        std::to_string(r.timings["pair"].get<double>()) + " ms");
  r.say(std::string("  pairing ") + (match ? "EXACT MATCH" : "MISMATCH"));
}

void emit(const Report& r, const Options& o, std::ostream& out) {
  if (o.json) {
    Json doc{{"command", r.command},
             {"n", r.n},
             {"results", r.results},
             {"timings_ms", r.timings},
             {"verdict", r.failed ? "fail" : "pass"}};
    out << doc.dump(2) << "\n";
    return;
  }
  for (const auto& line : r.lines) out << line << "\n";
  out << "verdict: " << (r.failed ? "FAIL" : "PASS") << "\n";
}

}  // namespace

PlanarGridDiagram parse_grid(std::string_view text) {
  std::optional<int> n;
  std::optional<std::vector<int>> x;
  std::optional<std::vector<int>> o;
  int x_line = 0;
  int o_line = 0;
  bool header = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string line = trim(raw);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (!header) {
      std::istringstream hs(line);
      std::string word;
      std::string version;
      std::string extra;
      hs >> word >> version;
      if (word != "grid" || version != "v1" || (hs >> extra)) {
        throw ParseError(line_no, "expected header 'grid v1', got '" + line + "'");
      }
      header = true;
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected 'key = value', got '" + line + "'");
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "n") {
      if (n) throw ParseError(line_no, "duplicate n");
      auto v = parse_ints(value, line_no, "n");
      if (v.size() != 1) throw ParseError(line_no, "n must be a single integer");
      if (v[0] < 1 || v[0] > kMaxGridSize) {
        throw ParseError(line_no, "n must lie in 1.." + std::to_string(kMaxGridSize));
      }
      n = v[0];
    } else if (key == "x" || key == "o") {
      auto& slot = key == "x" ? x : o;
      if (slot) throw ParseError(line_no, "duplicate " + key);
      slot = parse_ints(value, line_no, key);
      (key == "x" ? x_line : o_line) = line_no;
    } else {
      throw ParseError(line_no, "unknown key '" + key + "'");
    }
    if (end == text.size()) break;
  }
  if (!header) throw ParseError(line_no, "missing header 'grid v1'");
  if (!n) throw ParseError(line_no, "missing n");
  if (!x) throw ParseError(line_no, "missing x");
  if (!o) throw ParseError(line_no, "missing o");
  check_permutation(*x, *n, x_line, "x");
  check_permutation(*o, *n, o_line, "o");
  return validate_planar(*n, *x, *o);
}

std::string format_grid(const PlanarGridDiagram& d) {
  auto perm = [](const std::vector<int>& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
    return s;
  };
  return "grid v1\nn = " + std::to_string(d.n) + "\nx = " + perm(d.sigma_x) + "\no = " + perm(d.sigma_o) + "\n";
}

PlanarGridDiagram random_diagram(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto shuffled = [&] {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 1);
    for (std::size_t i = p.size(); i > 1; --i) std::swap(p[i - 1], p[rng() % i]);
    return p;
  };
  auto x = shuffled();
  auto o = shuffled();
  return validate_planar(n, x, o);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sliced planar grid diagrams: complexes, bordered modules, pairings and homology", "gridslice"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "Emit one JSON document (keys: command, n, results, timings_ms, verdict)");
  app.add_flag("--timings", opt.timings, "Record wall-clock timings in the report");

  std::string file;
  std::optional<std::string> opt_file;
  bool toroidal = false;
  bool verify = false;
  std::optional<int> amin, amax, mumin, mumax, cut, random_n, exhaustive_n;
  std::vector<int> cuts, lx, lo;
  int n = 0, k = 0, count = 100;
  std::uint64_t seed = 1;
  std::string what;

  auto* complex = app.add_subcommand("complex", "Differential table of CFP^- (or CFK^- with --toroidal)");
  complex->add_option("file", file, "Grid file")->required();
  complex->add_flag("--toroidal", toroidal, "Use the toroidal complex");

  auto* homology = app.add_subcommand("homology", "Bigraded F2 homology dimensions of CFP^-");
  homology->add_option("file", file, "Grid file")->required();
  homology->add_option("--amin", amin, "Lowest Alexander grading (default: top A - 3)");
  homology->add_option("--amax", amax, "Highest Alexander grading (default: top A of the generators)");
  homology->add_option("--mumin", mumin, "Lowest Maslov grading (default: top mu - 8)");
  homology->add_option("--mumax", mumax, "Highest Maslov grading (default: top mu of the generators)");

  auto* slice_cmd = app.add_subcommand("slice", "Cut a diagram and summarize the bordered modules");
  slice_cmd->add_option("file", file, "Grid file")->required();
  slice_cmd->add_option("--cut", cut, "One cut column k");
  slice_cmd->add_option("--cuts", cuts, "Cut columns k,l")->delimiter(',');

  auto* pair = app.add_subcommand("pair", "Tensor the sliced modules back together");
  pair->add_option("file", file, "Grid file")->required();
  pair->add_option("--cut", cut, "One cut column k");
  pair->add_option("--cuts", cuts, "Cut columns k,l")->delimiter(',');
  pair->add_flag("--verify", verify, "Compare with the complex of the whole diagram");

  auto* algebra = app.add_subcommand("algebra", "The strand algebra A_{n,k}");
  algebra->add_option("--n", n)->required();
  algebra->add_option("--k", k)->required();
  algebra->add_option("what", what, "basis | mult | diff | gradings")
      ->required()
      ->check(CLI::IsMember({"basis", "mult", "diff", "gradings"}));
  algebra->add_option("--lx", lx, "X marker rows below the interface (gradings)")->delimiter(',');
  algebra->add_option("--lo", lo, "O marker rows below the interface (gradings)")->delimiter(',');

  auto* dd = app.add_subcommand("dd", "Build CPDD and check the interface pairing");
  dd->add_option("--n", n)->required();
  dd->add_option("--k", k)->required();
  dd->add_option("--count", count, "Random diagrams when n > 4");
  dd->add_option("--seed", seed);

  auto* check = app.add_subcommand("check", "Property suites over many diagrams");
  check->add_option("--random", random_n, "Diagram size for random sampling");
  check->add_option("--count", count, "Number of random diagrams");
  check->add_option("--seed", seed);
  check->add_option("--exhaustive", exhaustive_n, "Check every diagram of this size");

  auto* bench = app.add_subcommand("bench", "Direct versus sliced generator counts and timings");
  bench->add_option("file", opt_file, "Grid file");
  bench->add_option("--random", random_n, "Use a random diagram of this size");
  bench->add_option("--seed", seed);
  bench->add_option("--cut", cut);

  std::vector<const char*> argv{"gridslice"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Report report;
  report.command = app.get_subcommands().front()->get_name();
  try {
    if (complex->parsed()) cmd_complex(report, opt, file, toroidal);
    if (homology->parsed()) cmd_homology(report, opt, file, amin, amax, mumin, mumax);
    if (slice_cmd->parsed()) cmd_slice(report, opt, file, cuts_of(cut, cuts));
    if (pair->parsed()) cmd_pair(report, opt, file, cuts_of(cut, cuts), verify);
    if (algebra->parsed()) cmd_algebra(report, opt, n, k, what, lx, lo);
    if (dd->parsed()) cmd_dd(report, opt, n, k, count, seed);
    if (check->parsed()) cmd_check(report, opt, random_n, count, seed, exhaustive_n);
    if (bench->parsed()) cmd_bench(report, opt_file, random_n, seed, cut);
  } catch (const CLI::ValidationError& e) {
    err << "gridslice " << report.command << ": " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "gridslice: " << file << ": " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "gridslice: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "gridslice: " << e.what() << "\n";
    return 2;
  } catch (const StructuralError& e) {
    err << "gridslice: structural failure: " << e.what() << "\n";
    return 1;
  }
  emit(report, opt, out);
  return report.failed ? 1 : 0;
}

}  // namespace gridslice
