// Copyright 2026 The holonomy-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Batch driver: every verification as a subcommand with a machine-readable
// report.  Exit 0 iff every executed check passed, 1 on a failed check, 2 on
// a configuration error.

#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "holonomy/connection.hpp"
#include "holonomy/monodromy.hpp"

namespace holonomy::cli {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string kind = "cyclic";
  int N = 2;
  int n = 2;
  int D = 3;
  int samples = 30;
  int steps = 512;
  unsigned long long seed = 0;
  std::string out;
  std::string format = "json";

  Json to_json() const {
    return Json{{"kind", kind}, {"N", N},         {"n", n},         {"D", D},
                {"samples", samples}, {"steps", steps}, {"seed", seed}, {"format", format}};
  }
};

struct ConfigError : Error {
  using Error::Error;
};

inline void validate(const RunConfig& c) {
  auto kind = parse_group_kind(c.kind);
  if (!kind) throw ConfigError("unknown group kind '" + c.kind + "'");
  if ((*kind == GroupKind::cyclic || *kind == GroupKind::dihedral) && (c.N < 2 || c.N > 60))
    throw ConfigError("N must be in [2, 60] for cyclic and dihedral groups");
  if (c.n < 1) throw ConfigError("n must be positive");
  if (c.D < 1 || c.D > 4) throw ConfigError("D must be in [1, 4]");
  if (c.samples < 1) throw ConfigError("samples must be positive");
  if (c.steps < 64) throw ConfigError("steps must be at least 64");
  if (c.format != "json" && c.format != "csv") throw ConfigError("format must be json or csv");
}

struct Check {
  std::string name;
  bool pass = false;
  Json details;
  double seconds = 0;
};

/// A run's results: checks plus the CSV rows a subcommand may export.
struct Report {
  std::vector<Check> checks;
  std::vector<std::vector<std::string>> dims_csv, flatness_csv;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  void add(std::string name, bool pass, Json details, double seconds) {
    checks.push_back({std::move(name), pass, std::move(details), seconds});
  }
};

class Stopwatch {
 public:
  double lap() {
    auto now = std::chrono::steady_clock::now();
    double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

inline std::shared_ptr<const FiniteGroupData> make_group(const RunConfig& c) {
  return std::make_shared<const FiniteGroupData>(build_group(*parse_group_kind(c.kind), c.N));
}

inline Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

// Closed forms for the group counts.
inline int expected_order(GroupKind k, int N) {
  switch (k) {
    case GroupKind::cyclic: return N;
    case GroupKind::dihedral: return 2 * N;
    case GroupKind::tetrahedral: return 12;
    case GroupKind::octahedral: return 24;
    case GroupKind::icosahedral: return 60;
  }
  return 0;
}
inline int expected_exceptional(GroupKind k, int N) {
  switch (k) {
    case GroupKind::cyclic: return 2;
    case GroupKind::dihedral: return 2 * N + 2;
    case GroupKind::tetrahedral: return 14;
    case GroupKind::octahedral: return 26;
    case GroupKind::icosahedral: return 62;
  }
  return 0;
}

inline void run_group(const RunConfig& c, Report& rep) {
  Stopwatch sw;
  auto G = make_group(c);
  const GroupKind kind = *parse_group_kind(c.kind);
  Json pts = Json::array();
  for (std::size_t p = 0; p < G->exceptional.size(); ++p)
    pts.push_back(Json{{"point", G->exceptional[p].to_string()},
                       {"stabilizer", G->stabilizer[p].size()},
                       {"orbit", G->orbit_id[p]},
                       {"in_half", static_cast<bool>(G->in_p_half[p])}});
  Json info{{"name", G->name}, {"model", G->model}, {"field_order", G->field_order},
            {"order", G->order()}, {"exceptional", pts}};
  rep.add("group.order", G->order() == expected_order(kind, c.N),
          Json{{"order", G->order()}, {"expected", expected_order(kind, c.N)}, {"group", info}}, sw.lap());
  const int E = static_cast<int>(G->exceptional.size());
  rep.add("group.exceptional_count", E == expected_exceptional(kind, c.N),
          Json{{"count", E}, {"expected", expected_exceptional(kind, c.N)}}, sw.lap());
  GroupAudit a = audit_group(*G);
  long sum = 0;
  for (int p : G->p_half) sum += static_cast<long>(G->stabilizer[p].size()) - 1;
  rep.add("group.partition_identity", sum == G->order() - 1 && a.partition && a.partition_sum == sum,
          Json{{"sum", sum}, {"expected", G->order() - 1}}, sw.lap());
  bool audit_ok = a.table_exact && a.associative && a.inverses && a.unitary && a.fixed_pairs &&
                  a.orbit_stabilizer && a.cyclic_stabilizers;
  rep.add("group.audit", audit_ok,
          Json{{"table_exact", a.table_exact}, {"associative", a.associative}, {"inverses", a.inverses},
               {"unitary", a.unitary}, {"fixed_pairs", a.fixed_pairs}, {"orbit_stabilizer", a.orbit_stabilizer},
               {"cyclic_stabilizers", a.cyclic_stabilizers}},
          sw.lap());
}

inline void run_dims(const RunConfig& c, Report& rep) {
  Stopwatch sw;
  auto G = make_group(c);
  PresentationData P = make_presentation(c.n, G);
  QuotientBasis Qe = graded_quotient(P, c.D);
  QuotientOptions full;
  full.eliminate = false;
  QuotientBasis Qf = graded_quotient(P, c.D, full);
  QuotientOptions shuffled;
  shuffled.shuffle_seed = c.seed + 1;
  QuotientBasis Qs = graded_quotient(P, c.D, shuffled);
  Json families;
  for (const auto& [f, k] : P.family_counts()) families[f] = k;
  const bool agree = Qe.dims() == Qf.dims() && Qe.dims() == Qs.dims();
  rep.add("dims.paths_agree", agree,
          Json{{"generators", P.size()}, {"letters", Qe.letters}, {"dims", Qe.dims()},
               {"dims_without_elimination", Qf.dims()}, {"dims_shuffled", Qs.dims()},
               {"relation_families", families}},
          sw.lap());
  rep.dims_csv.push_back({"degree", "dim", "dim_without_elimination", "dim_shuffled"});
  for (int k = 1; k <= c.D; ++k)
    rep.dims_csv.push_back({std::to_string(k), std::to_string(Qe.dim(k)), std::to_string(Qf.dim(k)),
                            std::to_string(Qs.dim(k))});
  rep.add("dims.linear_rank", Qf.linear_rank == c.n, Json{{"rank", Qf.linear_rank}, {"strands", c.n}}, sw.lap());
  SymmetryReport sym = symmetry_check(P);
  Json items = Json::array();
  for (const auto& it : sym.items)
    items.push_back(Json{{"action", it.action}, {"degree1", it.degree1}, {"degree2", it.degree2}});
  rep.add("dims.symmetry", sym.ok, Json{{"actions", items}}, sw.lap());
}

inline Json flatness_json(const FlatnessReport& r, bool with_samples) {
  Json j{{"n", r.n},
         {"group", r.group},
         {"removed_families", r.removed_families},
         {"quotient_dim2", r.quotient_dim2},
         {"all_zero", r.all_zero},
         {"nonzero_samples", r.nonzero_samples},
         {"degree_bound_per_variable", r.degree_bound},
         {"total_degree_bound", r.total_degree_bound},
         {"grid_points", r.grid_points},
         {"samples_exceed_grid", static_cast<long>(r.samples.size()) >= r.grid_points},
         {"certification_attempted", r.certification_attempted},
         {"certified", r.certified},
         {"certification_note", r.certification_note}};
  if (with_samples) {
    Json s = Json::array();
    for (const auto& x : r.samples) {
      Json pairs = Json::array();
      for (const auto& p : x.pairs)
        pairs.push_back(Json{{"i", p.i + 1}, {"k", p.k + 1}, {"zero", p.zero}, {"nonzero_coordinates", p.nonzero_coordinates}});
      s.push_back(Json{{"point", x.point}, {"zero", x.zero}, {"pairs", pairs}});
    }
    j["samples"] = s;
  }
  return j;
}

inline void run_flatness(const RunConfig& c, Report& rep) {
  Stopwatch sw;
  auto G = make_group(c);
  FlatnessOptions opt;
  opt.samples = c.samples;
  opt.seed = c.seed;
  FlatnessReport r = flatness_check(c.n, G, opt);
  rep.add("flatness.zero", r.all_zero && (!r.certification_attempted || r.certified), flatness_json(r, true), sw.lap());
  rep.flatness_csv.push_back({"sample", "point", "i", "k", "zero", "nonzero_coordinates"});
  for (std::size_t s = 0; s < r.samples.size(); ++s) {
    std::string point;
    for (const auto& z : r.samples[s].point) point += (point.empty() ? "" : " ") + z;
    for (const auto& p : r.samples[s].pairs)
      rep.flatness_csv.push_back({std::to_string(s), point, std::to_string(p.i + 1), std::to_string(p.k + 1),
                                  p.zero ? "1" : "0", std::to_string(p.nonzero_coordinates)});
  }
  if (c.n >= 2) {
    FlatnessOptions neg = opt;
    neg.removed_families = {"pair_point"};
    FlatnessReport rn = flatness_check(c.n, G, neg);
    rep.add("flatness.negative_control", !rn.all_zero, flatness_json(rn, false), sw.lap());
  }
  DOmegaReport d = d_omega_check(build_omega(c.n, G), 10, c.seed);
  rep.add("flatness.d_omega", d.passed(),
          Json{{"samples", d.samples}, {"comparisons", d.comparisons}, {"matches", d.matches}}, sw.lap());
}

inline void run_lemma(const RunConfig& c, Report& rep) {
  Stopwatch sw;
  auto G = make_group(c);
  LemmaReport r = lemma_identities_check(*G, c.samples, c.seed);
  rep.add("lemma.identities", r.passed(),
          Json{{"trials_per_element", c.samples},
               {"partial_fraction_checks", r.partial_fraction_checks},
               {"partial_fraction_passes", r.partial_fraction_passes},
               {"fixed_point_checks", r.fixed_point_checks},
               {"fixed_point_passes", r.fixed_point_passes},
               {"failures", r.failures}},
          sw.lap());
}

inline Json coords_json(const std::vector<std::vector<Complex>>& coords) {
  Json out = Json::array();
  for (std::size_t k = 1; k < coords.size(); ++k) {
    Json deg = Json::array();
    for (const auto& z : coords[k]) deg.push_back(complex_json(z));
    out.push_back(deg);
  }
  return out;
}

inline void run_monodromy(const RunConfig& c, Report& rep) {
  Stopwatch sw;
  auto G = make_group(c);
  PresentationData P = make_presentation(c.n, G);
  ConnectionForm w = build_omega(P);
  Basepoint q = make_basepoint(c.n, *G, c.seed);
  const int D = c.D;
  TransportOptions fixed;
  fixed.D = D;
  fixed.steps = c.steps;
  fixed.tolerance = 1.0;  // exactly `steps`, no refinement
  TransportOptions doubled = fixed;
  doubled.steps = 2 * c.steps;
  TransportOptions refined;
  refined.D = D;
  refined.steps = c.steps;

  auto labels = generator_loops(P);
  std::vector<LoopPath> loops;
  for (const auto& lab : labels) loops.push_back(make_loop(*G, q, lab));
  Json base = Json::array();
  for (const auto& z : q) base.push_back(complex_json(z));

  struct LoopResult {
    Json json;
    bool leading = false, grouplike = false, inverse = false;
  };
  std::vector<LoopResult> results(labels.size());
  parallel_for(static_cast<int>(labels.size()), [&](int t) {
    const int gen = labels[t].generator(P);
    QuotientBasis Q = quotient_keeping(P, D, {gen});
    ChenSeries F = transport(w, Q, loops[t], fixed);
    ChenSeries F2 = transport(w, Q, loops[t], doubled);
    LeadingTerm lt = leading_term(Q, F, gen);
    const double d1 = group_like_defect(F.series), d2 = group_like_defect(F2.series);
    ChenSeries Fr = transport(w, Q, loops[t], refined), Fi = transport(w, Q, loops[t].inverse(), refined);
    const double inv = (Fi.series * Fr.series - GradedTensor<Complex>::one(Q.letters, D)).max_abs();
    auto& r = results[t];
    r.leading = lt.ok;
    r.grouplike = d1 < 1e-6 && d2 < d1;
    r.inverse = inv < 1e-8;
    r.json = Json{{"label", labels[t].to_string()},
                  {"generator", P.generators[gen].name()},
                  {"steps", F.steps},
                  {"error_estimate", F.error_estimate},
                  {"log_coordinates", coords_json(F.coords)},
                  {"group_like_defect", d1},
                  {"group_like_defect_doubled", d2},
                  {"inverse_residual", inv},
                  {"refined_steps", Fr.steps},
                  {"leading_term", Json{{"magnitude", lt.magnitude},
                                        {"phase", lt.phase},
                                        {"off_label", lt.off_label},
                                        {"ok", lt.ok}}},
                  {"sign", lt.sign},
                  {"sign_convention", "counterclockwise in the chart; degree 1 = sign * 2 pi i X"}};
  });
  Json per_loop = Json::array();
  bool leading = true, grouplike = true, inverse = true;
  for (const auto& r : results) {
    per_loop.push_back(r.json);
    leading = leading && r.leading;
    grouplike = grouplike && r.grouplike;
    inverse = inverse && r.inverse;
  }
  rep.add("monodromy.leading_terms", leading, Json{{"basepoint", base}, {"loops", per_loop}}, sw.lap());
  rep.add("monodromy.group_like", grouplike, Json{{"threshold", 1e-6}, {"steps", c.steps}}, sw.lap());

  QuotientBasis Q = graded_quotient(P, D);
  ChenSeries one = transport(w, Q, constant_loop(q), refined);
  const double constant = (one.series - GradedTensor<Complex>::one(Q.letters, D)).max_abs();
  rep.add("monodromy.identities", inverse && constant < 1e-8,
          Json{{"constant_loop_residual", constant}, {"inverse_threshold", 1e-8}}, sw.lap());

  // consecutive generator loops: F(first then second) = F(second) F(first)
  const int L = static_cast<int>(loops.size());
  std::vector<double> gaps(L);
  parallel_for(L, [&](int t) {
    const LoopPath& a = loops[t];
    const LoopPath& b = loops[(t + 1) % L];
    ChenSeries Fa = transport(w, Q, a, refined), Fb = transport(w, Q, b, refined), Fab = transport(w, Q, a.then(b), refined);
    gaps[t] = quotient_distance(Fab.coords, product_coords(Q, Fb, Fa));
  });
  double worst = 0;
  for (double g : gaps) worst = std::max(worst, g);
  rep.add("monodromy.antihomomorphism", worst < 1e-6, Json{{"pairs", L}, {"max_difference", worst}}, sw.lap());
}

inline void run_equiv(const RunConfig& c, Report& rep) {
  Stopwatch sw;
  auto G = make_group(c);
  PresentationData P = make_presentation(c.n, G), T = make_presentation(c.n, G, Variant::t_n);
  EquivalenceReport e = compare_presentations(T, P, c.D);
  rep.add("equiv.t_n_vs_p_n", e.equivalent,
          Json{{"dims_t_n", e.dims1}, {"dims_p_n", e.dims2}, {"degree_ok", e.degree_ok}}, sw.lap());
  if (c.n >= 2) {
    // negative control: dropping one relation of an irredundant subset is detected
    PresentationData I = irredundant_relations(P);
    PresentationData cut = I;
    cut.quadratic.erase(cut.quadratic.begin());
    EquivalenceReport same = compare_presentations(I, P, std::min(c.D, 2));
    EquivalenceReport diff = compare_presentations(cut, P, std::min(c.D, 2));
    rep.add("equiv.deletion_detected", same.equivalent && !diff.equivalent,
            Json{{"irredundant_relations", I.quadratic.size()},
                 {"all_relations", P.quadratic.size()},
                 {"dims_after_deletion", diff.dims1}},
            sw.lap());
  }
}

inline const std::vector<std::pair<std::string, std::function<void(const RunConfig&, Report&)>>>& subcommands() {
  static const std::vector<std::pair<std::string, std::function<void(const RunConfig&, Report&)>>> list{
      {"group", run_group}, {"dims", run_dims},           {"flatness", run_flatness},
      {"lemma", run_lemma}, {"monodromy", run_monodromy}, {"equiv", run_equiv}};
  return list;
}

inline std::string csv_text(const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream s;
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) s << (k ? "," : "") << row[k];
    s << "\n";
  }
  return s.str();
}

inline std::string utc_timestamp() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

/// Runs one subcommand ("all" runs every one) and renders the report.
inline int execute(const std::string& sub, const RunConfig& c, std::string& output) {
  validate(c);
  if (c.format == "csv" && sub != "dims" && sub != "flatness")
    throw ConfigError("csv output covers only the dims and flatness subcommands");
  Report rep;
  Stopwatch total;
  for (const auto& [name, fn] : subcommands())
    if (sub == "all" || sub == name) fn(c, rep);
  const double seconds = total.lap();
  if (c.format == "csv") {
    output = csv_text(sub == "dims" ? rep.dims_csv : rep.flatness_csv);
  } else {
    Json checks = Json::array(), per_check = Json::object();
    for (const auto& ch : rep.checks) {
      checks.push_back(Json{{"name", ch.name}, {"status", ch.pass ? "pass" : "fail"}, {"details", ch.details}});
      per_check[ch.name] = ch.seconds;
    }
    Json doc{{"subcommand", sub},
             {"config", c.to_json()},
             {"passed", rep.passed()},
             {"checks", checks},
             {"timing", Json{{"timestamp", utc_timestamp()}, {"total_seconds", seconds}, {"checks", per_check}}}};
    output = doc.dump(2) + "\n";
  }
  return rep.passed() ? 0 : 1;
}

/// Command-line entry point.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"holonomy_lab: checks for finite Mobius groups, the holonomy Lie algebra, its flat connection and monodromy"};
  RunConfig c;
  app.set_config("--config", "", "key = value file supplying defaults; flags override it");
  app.add_option("--kind", c.kind, "cyclic, dihedral, tetrahedral, octahedral or icosahedral");
  app.add_option("--N", c.N, "order parameter of cyclic and dihedral groups");
  app.add_option("--n", c.n, "number of strands");
  app.add_option("--D", c.D, "truncation degree (at most 4)");
  app.add_option("--samples", c.samples, "flatness samples and lemma trials per element");
  app.add_option("--steps", c.steps, "integrator steps per loop");
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--out", c.out, "output path (default: standard output)");
  app.add_option("--format", c.format, "json or csv");
  app.require_subcommand(1);
  for (const auto& [name, fn] : subcommands()) app.add_subcommand(name, "run the " + name + " checks")->fallthrough();
  app.add_subcommand("all", "run every check")->fallthrough();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "configuration error: " << e.what() << "\n";
    return 2;
  }
  const std::string sub = app.get_subcommands().front()->get_name();
  std::string output;
  int code = 0;
  try {
    code = execute(sub, c, output);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedParams& e) {
    err << "configuration error: " << e.what() << "\n";
    return 2;
  }
  if (c.out.empty()) {
    out << output;
  } else {
    std::ofstream f(c.out);
    if (!f) {
      err << "configuration error: cannot write " << c.out << "\n";
      return 2;
    }
    f << output;
  }
  return code;
}

}  // namespace holonomy::cli
