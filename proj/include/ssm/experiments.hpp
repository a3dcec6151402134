#pragma once

// Seeded corpora. Every command is a pair (generate, run): `generate` turns a
// trial's random stream into a self-contained JSON instance, `run` checks one
// instance. A corpus run is generate+run per trial; replay is run on a dumped
// instance, so both go through the same code.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ssm/exact.hpp"
#include "ssm/graph.hpp"
#include "ssm/identities.hpp"
#include "ssm/io.hpp"
#include "ssm/mixing.hpp"
#include "ssm/params.hpp"
#include "ssm/partition.hpp"
#include "ssm/random.hpp"
#include "ssm/saw_tree.hpp"
#include "ssm/zerofree.hpp"

namespace ssm {

struct CheckResult {
  bool pass = false;
  OrderedJson record;
};

struct Experiment {
  std::string name;
  std::size_t default_trials = 100;
  std::function<OrderedJson(Rng&, std::size_t)> generate;
  std::function<CheckResult(const OrderedJson&)> run;
};

struct RunReport {
  std::string command;
  std::uint64_t seed = 0;
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::vector<OrderedJson> records;
  std::optional<OrderedJson> first_failure;  // the instance, ready for replay
};

namespace detail {

inline OrderedJson pins_json(const Pinning& p) { return pinning_to_json<OrderedJson>(p)["pins"]; }
inline Pinning pins_from(const OrderedJson& inst, const char* key) {
  OrderedJson wrapper;
  wrapper["pins"] = inst.at(key);
  return pinning_from_json(wrapper);
}
inline ExactComplex cx(const OrderedJson& inst, const char* key) { return complex_from_json(inst.at(key)); }
inline std::string str(const ExactComplex& z) { return z.to_string(); }
inline Vertex vtx(const OrderedJson& inst, const char* key) { return inst.at(key).get<Vertex>(); }

/// Edge weights and field for one trial, cycling through the special cases
/// beta = 0, gamma = 0, beta gamma = 1 and per-vertex fields.
struct TwoSpinDraw {
  Rational beta, gamma, lambda;
  std::optional<std::vector<ExactComplex>> fields;
};

inline TwoSpinDraw draw_two_spin(Rng& rng, std::size_t regime, std::size_t n) {
  TwoSpinDraw d{random_rational(rng), random_rational(rng), random_rational(rng, false), std::nullopt};
  switch (regime % 5) {
    case 0:
      d.beta = 0;
      d.gamma = random_rational(rng, false);
      break;
    case 1:
      d.gamma = 0;
      d.beta = random_rational(rng, false);
      break;
    case 2:
      d.beta = random_rational(rng, false);
      d.gamma = 1 / d.beta;
      break;
    case 3: {
      std::vector<ExactComplex> f;
      for (std::size_t i = 0; i < n; ++i) f.emplace_back(random_rational(rng, false));
      d.fields = std::move(f);
      break;
    }
    default:
      break;
  }
  if (d.beta == 0 && d.gamma == 0) d.gamma = 1;
  return d;
}

inline void put_two_spin(OrderedJson& inst, Graph& g, const TwoSpinDraw& d) {
  if (d.fields) g.set_fields(*d.fields);
  inst["graph"] = graph_to_json<OrderedJson>(g);
  inst["beta"] = complex_to_json<OrderedJson>(d.beta);
  inst["gamma"] = complex_to_json<OrderedJson>(d.gamma);
  inst["lambda"] = complex_to_json<OrderedJson>(d.lambda);
}

inline ExactParams params_from(const OrderedJson& inst, const Graph& g) {
  return ExactParams::for_graph(g, cx(inst, "beta"), cx(inst, "gamma"), cx(inst, "lambda"));
}

inline Vertex random_vertex(Rng& rng, const Graph& g) { return static_cast<Vertex>(rng.below(g.vertex_count())); }

inline std::pair<Vertex, Vertex> random_pair(Rng& rng, const Graph& g) {
  const Vertex u = random_vertex(rng, g);
  Vertex v = static_cast<Vertex>(rng.below(g.vertex_count() - 1));
  if (v >= u) ++v;
  return {u, v};
}

/// Pins the vertices outside `keep_free` at random; only feasibility is kept.
inline Pinning random_pins_outside(Rng& rng, const Graph& g, HardConstraints hc, const std::vector<Vertex>& keep_free) {
  std::vector<char> excluded(g.vertex_count(), 0);
  for (Vertex v : keep_free) excluded[v] = 1;
  Pinning p;
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    if (excluded[x] || !rng.chance(1, 3)) continue;
    const Spin s = rng.coin() ? Spin::Plus : Spin::Minus;
    if (is_feasible(g, p.with(x, s), hc)) p.pin(x, s);
    else if (is_feasible(g, p.with(x, flip(s)), hc)) p.pin(x, flip(s));
  }
  return p;
}

/// A second pinning that differs from s on a few vertices (spin flips, new
/// pins, removed pins) while v stays proper; both equal-domain and
/// unequal-domain differences occur.
inline Pinning perturb_pinning(Rng& rng, const Graph& g, const Pinning& s, Vertex v, HardConstraints hc) {
  for (int attempt = 0; attempt < 20; ++attempt) {
    Pinning t = s;
    for (Vertex x = 0; x < g.vertex_count(); ++x) {
      if (x == v || !rng.chance(1, 3)) continue;
      auto cur = t.spin(x);
      const auto action = rng.below(3);
      if (cur && action == 0) t = t.without(x);
      else if (cur) t = t.without(x).with(x, flip(*cur));
      else t.pin(x, rng.coin() ? Spin::Plus : Spin::Minus);
    }
    if (t != s && is_feasible(g, t, hc) && is_proper(g, t, v, hc)) return t;
  }
  return s;
}

}  // namespace detail

// ---- cd-check ----------------------------------------------------------------

inline OrderedJson generate_cd(Rng& rng, std::size_t trial) {
  const auto n = static_cast<std::size_t>(rng.between(2, 14));
  Graph t = random_tree(rng, n);
  const auto d = detail::draw_two_spin(rng, trial, n);
  const auto [u, v] = detail::random_pair(rng, t);
  const Pinning p = detail::random_pins_outside(rng, t, {d.beta == 0, d.gamma == 0}, {u, v});
  OrderedJson inst;
  inst["command"] = "cd-check";
  detail::put_two_spin(inst, t, d);
  inst["pins"] = detail::pins_json(p);
  inst["u"] = u;
  inst["v"] = v;
  return inst;
}

inline CheckResult run_cd(const OrderedJson& inst) {
  const Graph t = graph_from_json(inst.at("graph"));
  const Pinning p = detail::pins_from(inst, "pins");
  const Vertex u = detail::vtx(inst, "u"), v = detail::vtx(inst, "v");
  const ExactParams params = detail::params_from(inst, t);
  const auto r = cd_sides(t, p, u, v, params);
  const bool remark = cd_remark_check(t, p, u, v, params);
  const bool symmetric = cd_sides(t, p, v, u, params).lhs == r.lhs;
  CheckResult out;
  out.pass = r.equal && remark && symmetric && (!r.path_hits_pinning || is_zero(r.rhs));
  out.record["n"] = t.vertex_count();
  out.record["distance"] = r.distance;
  out.record["path_hits_pinning"] = r.path_hits_pinning;
  out.record["lhs"] = detail::str(r.lhs);
  out.record["rhs"] = detail::str(r.rhs);
  out.record["equal"] = r.equal;
  out.record["remark_identity"] = remark;
  out.record["uv_symmetric"] = symmetric;
  return out;
}

// ---- gutman-check -------------------------------------------------------------

inline OrderedJson generate_gutman(Rng& rng, std::size_t) {
  const auto n = static_cast<std::size_t>(rng.between(2, 14));
  const Graph t = random_tree(rng, n);
  const auto [u, v] = detail::random_pair(rng, t);
  OrderedJson inst;
  inst["command"] = "gutman-check";
  inst["graph"] = graph_to_json<OrderedJson>(t);
  inst["lambda"] = complex_to_json<OrderedJson>(random_rational(rng, false));
  inst["u"] = u;
  inst["v"] = v;
  return inst;
}

inline CheckResult run_gutman(const OrderedJson& inst) {
  const Graph t = graph_from_json(inst.at("graph"));
  const auto r = gutman_sides(t, detail::vtx(inst, "u"), detail::vtx(inst, "v"), detail::cx(inst, "lambda"));
  CheckResult out;
  out.pass = r.equal;
  out.record["n"] = t.vertex_count();
  out.record["distance"] = r.distance;
  out.record["lhs"] = detail::str(r.lhs);
  out.record["rhs"] = detail::str(r.rhs);
  out.record["equal"] = r.equal;
  return out;
}

// ---- qspin-check --------------------------------------------------------------

/// Trials cycle through: the 2-spin system written with q = 2 (its left side
/// must also equal the 2-spin one), a general q = 2 system, and q = 3.
inline OrderedJson generate_qspin(Rng& rng, std::size_t trial) {
  const auto n = static_cast<std::size_t>(rng.between(2, 8));
  const Graph t = random_tree(rng, n);
  const auto [u, v] = detail::random_pair(rng, t);
  const std::size_t kind = trial % 3;
  const std::size_t q = kind == 2 ? 3 : 2;
  OrderedJson inst;
  inst["command"] = "qspin-check";
  inst["graph"] = graph_to_json<OrderedJson>(t);
  inst["q"] = q;
  QSpinParams<ExactComplex> qp;
  if (kind == 0) {
    const auto d = detail::draw_two_spin(rng, trial / 3, 0);
    qp = QSpinParams<ExactComplex>::from_two_spin(d.beta, d.gamma, d.lambda);
    inst["embedding"] = {{"beta", complex_to_json<OrderedJson>(d.beta)},
                         {"gamma", complex_to_json<OrderedJson>(d.gamma)},
                         {"lambda", complex_to_json<OrderedJson>(d.lambda)}};
  } else {
    qp.a.assign(q, std::vector<ExactComplex>(q));
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = i; j < q; ++j) qp.a[i][j] = qp.a[j][i] = ExactComplex(random_rational(rng));
    for (std::size_t i = 0; i < q; ++i) qp.lambdas.emplace_back(random_rational(rng, false));
  }
  OrderedJson a = OrderedJson::array();
  for (const auto& row : qp.a) {
    OrderedJson r = OrderedJson::array();
    for (const auto& x : row) r.push_back(complex_to_json<OrderedJson>(x));
    a.push_back(r);
  }
  inst["a"] = a;
  OrderedJson l = OrderedJson::array();
  for (const auto& x : qp.lambdas) l.push_back(complex_to_json<OrderedJson>(x));
  inst["lambdas"] = l;
  OrderedJson pins = OrderedJson::object();
  for (Vertex x = 0; x < n; ++x)
    if (x != u && x != v && rng.chance(1, 3)) pins[std::to_string(x)] = rng.below(q);
  inst["pins"] = pins;
  inst["u"] = u;
  inst["v"] = v;
  return inst;
}

inline CheckResult run_qspin(const OrderedJson& inst) {
  const Graph t = graph_from_json(inst.at("graph"));
  QSpinParams<ExactComplex> qp;
  for (const auto& row : inst.at("a")) {
    qp.a.emplace_back();
    for (const auto& x : row) qp.a.back().push_back(complex_from_json(x));
  }
  for (const auto& x : inst.at("lambdas")) qp.lambdas.push_back(complex_from_json(x));
  if (inst.at("q").get<std::size_t>() != qp.q()) throw InputError("q does not match the field vector");
  QPinning p;
  for (const auto& [key, value] : inst.at("pins").items()) p.emplace(static_cast<Vertex>(std::stoul(key)), value.get<std::size_t>());
  const Vertex u = detail::vtx(inst, "u"), v = detail::vtx(inst, "v");
  const auto r = qspin_det_sides(t, p, u, v, qp);
  CheckResult out;
  out.pass = r.equal;
  out.record["n"] = t.vertex_count();
  out.record["q"] = qp.q();
  out.record["distance"] = r.distance;
  out.record["path_hits_pinning"] = r.path_hits_pinning;
  out.record["lhs"] = detail::str(r.lhs);
  out.record["rhs"] = detail::str(r.rhs);
  out.record["equal"] = r.equal;
  if (inst.contains("embedding")) {
    // Same pins read as 2-spin: spin 0 is +, spin 1 is -.
    const auto& e = inst.at("embedding");
    const auto params = ExactParams::uniform(complex_from_json(e.at("beta")), complex_from_json(e.at("gamma")),
                                             complex_from_json(e.at("lambda")));
    Pinning p2;
    for (auto [x, s] : p) p2.pin(x, s == 0 ? Spin::Plus : Spin::Minus);
    const ExactComplex two_spin = z_pair(t, p2, u, Spin::Plus, v, Spin::Plus, params) *
                                      z_pair(t, p2, u, Spin::Minus, v, Spin::Minus, params) -
                                  z_pair(t, p2, u, Spin::Plus, v, Spin::Minus, params) *
                                      z_pair(t, p2, u, Spin::Minus, v, Spin::Plus, params);
    const bool same = two_spin == r.lhs;
    out.record["matches_two_spin"] = same;
    out.pass = out.pass && same;
  }
  return out;
}

// ---- saw-check ----------------------------------------------------------------

inline OrderedJson generate_saw(Rng& rng, std::size_t trial) {
  const auto n = static_cast<std::size_t>(rng.between(2, 9));
  Graph g = random_connected_graph(rng, n);
  const Vertex v = detail::random_vertex(rng, g);
  for (;;) {
    const auto d = detail::draw_two_spin(rng, trial, n);
    const HardConstraints hc{d.beta == 0, d.gamma == 0};
    const Pinning p = random_feasible_pinning(rng, g, hc, {v}, 1, 5);
    Graph gf = g;
    if (d.fields) gf.set_fields(*d.fields);
    const auto params = ExactParams::for_graph(gf, d.beta, d.gamma, d.lambda);
    if (is_zero(z_brute(gf, p, params))) continue;  // marginal undefined; draw again
    OrderedJson inst;
    inst["command"] = "saw-check";
    detail::put_two_spin(inst, g, d);
    inst["pins"] = detail::pins_json(p);
    inst["vertex"] = v;
    return inst;
  }
}

/// Max degree and distances from the root, on the unpinned SAW tree.
inline bool saw_shape_preserved(const Graph& g, Vertex v) {
  const SawTree t = build_saw_tree(g, v, Pinning{});
  if (t.tree.max_degree() != g.max_degree()) return false;
  // d_T(root, copies of S) = min over s in S of the same for {s}, so single
  // sources cover every source subset.
  const auto dg = bfs_distances(g, {v});
  std::vector<std::optional<std::size_t>> dt(g.vertex_count());
  for (std::size_t x = 0; x < t.origin.size(); ++x) {
    auto& cur = dt[t.origin[x]];
    if (!cur || t.depth[x] < *cur) cur = t.depth[x];
  }
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (dg[s].is_infinite() != !dt[s].has_value()) return false;
    if (dt[s] && *dt[s] != dg[s].value()) return false;
  }
  return true;
}

inline CheckResult run_saw(const OrderedJson& inst) {
  const Graph g = graph_from_json(inst.at("graph"));
  const Pinning p = detail::pins_from(inst, "pins");
  const Vertex v = detail::vtx(inst, "vertex");
  const ExactParams params = detail::params_from(inst, g);
  CheckResult out;
  const SawTree t = build_saw_tree(g, v, p);
  bool equal = false;
  std::string note;
  try {
    equal = verify_saw_marginal(g, p, v, params);
  } catch (const ZeroPartitionError& e) {
    note = e.what();
  }
  const bool shape = is_connected(g) ? saw_shape_preserved(g, v) : true;
  out.pass = equal && shape;
  out.record["n"] = g.vertex_count();
  out.record["tree_size"] = t.tree.vertex_count();
  out.record["marginal"] = detail::str(marginal(g, p, v, params));
  out.record["marginals_equal"] = equal;
  out.record["shape_preserved"] = shape;
  if (!note.empty()) out.record["note"] = note;
  return out;
}

// ---- ldc (lambda series at 0) ---------------------------------------------------

inline OrderedJson generate_ldc(Rng& rng, std::size_t trial) {
  const auto n = static_cast<std::size_t>(rng.between(2, 9));
  const Graph g = random_connected_graph(rng, n);
  const Vertex v = detail::random_vertex(rng, g);
  Rational gamma = random_rational(rng, false), beta = random_rational(rng);
  if (trial % 3 == 0) beta = 0;
  if (trial % 3 == 1) beta = 1 / gamma;
  const HardConstraints hc{beta == 0, false};
  const Pinning s = random_feasible_pinning(rng, g, hc, {v});
  const Pinning t = detail::perturb_pinning(rng, g, s, v, hc);
  OrderedJson inst;
  inst["command"] = "ldc";
  inst["graph"] = graph_to_json<OrderedJson>(g);
  inst["beta"] = complex_to_json<OrderedJson>(beta);
  inst["gamma"] = complex_to_json<OrderedJson>(gamma);
  inst["s"] = detail::pins_json(s);
  inst["t"] = detail::pins_json(t);
  inst["vertex"] = v;
  // Point-to-point pair: P against P with one more pin at u.
  std::vector<Vertex> candidates;
  for (Vertex u = 0; u < n; ++u)
    if (u != v && !s.contains(u) && is_proper(g, s.with(u, Spin::Plus), v, hc) &&
        is_proper(g, s.with(u, Spin::Minus), v, hc))
      candidates.push_back(u);
  if (!candidates.empty()) inst["u"] = candidates[rng.below(candidates.size())];
  return inst;
}

inline OrderedJson ldc_json(const LdcReport& r) {
  OrderedJson j;
  j["distance"] = r.distance.to_string();
  j["first_difference"] = r.first_difference;
  j["order"] = r.order;
  j["contract_holds"] = r.contract_holds;
  return j;
}

inline CheckResult run_ldc(const OrderedJson& inst) {
  const Graph g = graph_from_json(inst.at("graph"));
  const Pinning s = detail::pins_from(inst, "s"), t = detail::pins_from(inst, "t");
  const Vertex v = detail::vtx(inst, "vertex");
  const ExactComplex beta = detail::cx(inst, "beta"), gamma = detail::cx(inst, "gamma");
  const std::size_t order = inst.contains("order") ? inst.at("order").get<std::size_t>() : default_series_order(g);
  CheckResult out;
  const auto main = ldc_report(g, s, t, v, beta, gamma, order);
  out.pass = main.contract_holds;
  out.record["n"] = g.vertex_count();
  out.record["pair"] = ldc_json(main);
  if (inst.contains("u")) {
    const Vertex u = detail::vtx(inst, "u");
    const auto plus = ldc_report(g, s, s.with(u, Spin::Plus), v, beta, gamma, order);
    const auto minus = ldc_report(g, s, s.with(u, Spin::Minus), v, beta, gamma, order);
    out.pass = out.pass && plus.contract_holds && minus.contract_holds;
    out.record["point_plus"] = ldc_json(plus);
    out.record["point_minus"] = ldc_json(minus);
  }
  return out;
}

// ---- ldc-beta (beta series at 1/gamma, or +-1 for Ising) -------------------------

inline OrderedJson generate_ldc_beta(Rng& rng, std::size_t trial) {
  const auto n = static_cast<std::size_t>(rng.between(2, 9));
  Graph g = random_connected_graph(rng, n);
  const Vertex v = detail::random_vertex(rng, g);
  const bool ising = trial % 5 == 4;
  for (;;) {
    const Rational gamma = ising ? Rational(1) : random_rational(rng, false);
    const Rational center = ising ? Rational(rng.coin() ? 1 : -1) : 1 / gamma;
    const Rational lambda = random_rational(rng, false);
    std::optional<std::vector<ExactComplex>> fields;
    if (trial % 5 == 3) {
      fields.emplace();
      for (std::size_t i = 0; i < n; ++i) fields->emplace_back(random_rational(rng, false));
    }
    const Pinning s = random_feasible_pinning(rng, g, {}, {v});
    const Pinning t = detail::perturb_pinning(rng, g, s, v, {});
    Graph gf = g;
    if (fields) gf.set_fields(*fields);
    const auto params = ExactParams::for_graph(gf, center, ising ? center : gamma, lambda);
    if (is_zero(z_brute(gf, s, params)) || is_zero(z_brute(gf, t, params))) continue;
    OrderedJson inst;
    inst["command"] = "ldc-beta";
    inst["graph"] = graph_to_json<OrderedJson>(gf);
    inst["mode"] = ising ? "ising" : "general";
    inst["gamma"] = complex_to_json<OrderedJson>(gamma);
    inst["lambda"] = complex_to_json<OrderedJson>(lambda);
    inst["center"] = complex_to_json<OrderedJson>(center);
    inst["s"] = detail::pins_json(s);
    inst["t"] = detail::pins_json(t);
    inst["vertex"] = v;
    return inst;
  }
}

inline CheckResult run_ldc_beta(const OrderedJson& inst) {
  const Graph g = graph_from_json(inst.at("graph"));
  const Pinning s = detail::pins_from(inst, "s"), t = detail::pins_from(inst, "t");
  const Vertex v = detail::vtx(inst, "vertex");
  const BetaMode mode = inst.at("mode").get<std::string>() == "ising" ? BetaMode::Ising : BetaMode::General;
  const ExactParams params = ExactParams::for_graph(g, 1, detail::cx(inst, "gamma"), detail::cx(inst, "lambda"));
  const std::size_t order = inst.contains("order") ? inst.at("order").get<std::size_t>() : default_series_order(g);
  const auto r = ldc_beta_report(g, s, t, v, params.gamma, params.field, detail::cx(inst, "center"), order, mode);
  CheckResult out;
  out.pass = r.contract_holds;
  out.record["n"] = g.vertex_count();
  out.record["mode"] = inst.at("mode");
  out.record["pair"] = ldc_json(r);
  return out;
}

// ---- roots (unit-circle check for ferromagnetic Ising) --------------------------------

inline OrderedJson generate_roots(Rng& rng, std::size_t trial) {
  static const char* const betas[] = {"3/2", "2/1", "3/1"};
  const auto n = static_cast<std::size_t>(rng.between(2, 8));
  OrderedJson inst;
  inst["command"] = "roots";
  inst["graph"] = graph_to_json<OrderedJson>(random_connected_graph(rng, n));
  inst["beta"] = complex_to_json<OrderedJson>(parse_rational(betas[trial % 3]));
  inst["pins"] = OrderedJson::object();
  return inst;
}

inline OrderedJson roots_json(const RootReport& r) {
  OrderedJson j;
  OrderedJson roots = OrderedJson::array();
  for (const auto& z : r.roots) roots.push_back({z.real(), z.imag()});
  j["roots"] = roots;
  j["moduli"] = r.moduli;
  j["min_modulus"] = r.min_modulus;
  j["max_modulus"] = r.max_modulus;
  if (r.band) {
    j["band"] = {r.band->first, r.band->second};
    j["annulus_violations"] = r.annulus_violations;
  }
  return j;
}

/// Lee-Yang: with no pins and real beta > 1 every root sits on |lambda| = 1.
/// Every run also checks the residual |Z(root)| against the coefficient norm.
inline CheckResult run_roots(const OrderedJson& inst) {
  const Graph g = graph_from_json(inst.at("graph"));
  const Pinning p = detail::pins_from(inst, "pins");
  const ExactComplex beta = detail::cx(inst, "beta");
  const ExactComplex gamma = inst.contains("gamma") ? detail::cx(inst, "gamma") : beta;
  const auto poly = z_poly_lambda(g, p, beta, gamma);
  const auto report = lambda_root_scan(g, p, beta, gamma);
  double norm1 = 0;
  for (const auto& c : poly.coefficients()) norm1 += magnitude(c);
  double worst_residual = 0;
  for (const auto& z : report.roots) worst_residual = std::max(worst_residual, std::abs(poly.evaluate(z)));
  const bool residual_ok = worst_residual < 1e-8 * (1 + norm1);
  const bool lee_yang_case = p.empty() && beta == gamma && beta.is_real() && beta.re() > 1;
  bool on_circle = true;
  for (double m : report.moduli) on_circle = on_circle && std::abs(m - 1) < kModulusTolerance;
  CheckResult out;
  out.pass = residual_ok && (!lee_yang_case || on_circle);
  out.record["n"] = g.vertex_count();
  out.record["degree"] = poly.degree();
  out.record["residual_ok"] = residual_ok;
  if (lee_yang_case) out.record["unit_circle"] = on_circle;
  out.record["scan"] = roots_json(report);
  return out;
}

// ---- annulus (pinned Ising, degree <= 3) ------------------------------------------

inline OrderedJson generate_annulus(Rng& rng, std::size_t) {
  const auto n = static_cast<std::size_t>(rng.between(2, 10));
  const Graph g = random_bounded_degree_graph(rng, n, 3);
  OrderedJson inst;
  inst["command"] = "annulus";
  inst["graph"] = graph_to_json<OrderedJson>(g);
  inst["beta"] = complex_to_json<OrderedJson>(parse_rational("3/2"));
  inst["degree_bound"] = 3;
  inst["pins"] = detail::pins_json(detail::random_pins_outside(rng, g, {}, {}));
  return inst;
}

inline CheckResult run_annulus(const OrderedJson& inst) {
  const Graph g = graph_from_json(inst.at("graph"));
  const Pinning p = detail::pins_from(inst, "pins");
  const ExactComplex beta = detail::cx(inst, "beta");
  const std::size_t d =
      inst.contains("degree_bound") ? inst.at("degree_bound").get<std::size_t>() : std::max<std::size_t>(1, g.max_degree());
  const auto r = pinned_annulus_check(g, p, beta, d);
  CheckResult out;
  out.pass = r.direct.annulus_violations == 0 && r.eliminated.annulus_violations == 0 && r.paths_agree;
  out.record["n"] = g.vertex_count();
  out.record["pins"] = p.size();
  out.record["zero_roots"] = r.zero_roots;
  out.record["paths_agree"] = r.paths_agree;
  out.record["direct"] = roots_json(r.direct);
  out.record["eliminated_violations"] = r.eliminated.annulus_violations;
  if (p.count(Spin::Plus) <= 1 || p.count(Spin::Minus) <= 1) {
    const auto sp = single_pin_check(g, p, beta);
    out.record["single_pin_nonzero"] = sp.nonzero;
    out.pass = out.pass && sp.nonzero;
  }
  return out;
}

// ---- weitz ---------------------------------------------------------------------------

inline OrderedJson generate_weitz(Rng& rng, std::size_t trial) {
  const auto n = static_cast<std::size_t>(rng.between(2, 9));
  const Graph g = random_connected_graph(rng, n);
  const Vertex v = detail::random_vertex(rng, g);
  const bool hard_core = trial % 2 == 0;
  const Rational beta = hard_core ? Rational(0) : random_positive_rational(rng);
  const Rational gamma = hard_core ? Rational(1) : random_positive_rational(rng);
  OrderedJson inst;
  inst["command"] = "weitz";
  inst["graph"] = graph_to_json<OrderedJson>(g);
  inst["beta"] = complex_to_json<OrderedJson>(beta);
  inst["gamma"] = complex_to_json<OrderedJson>(gamma);
  inst["lambda"] = complex_to_json<OrderedJson>(random_positive_rational(rng));
  inst["pins"] = detail::pins_json(random_feasible_pinning(rng, g, {beta == 0, false}, {v}, 1, 5));
  inst["vertex"] = v;
  return inst;
}

/// Full-depth agreement is the contract; the approach toward it is logged.
inline CheckResult run_weitz(const OrderedJson& inst) {
  const Graph g = graph_from_json(inst.at("graph"));
  const Pinning p = detail::pins_from(inst, "pins");
  const Vertex v = detail::vtx(inst, "vertex");
  const ExactParams params = detail::params_from(inst, g);
  const ExactComplex exact = marginal(g, p, v, params);
  const std::size_t full = inst.contains("depth") ? inst.at("depth").get<std::size_t>() : g.vertex_count();
  CheckResult out;
  OrderedJson gaps = OrderedJson::array();
  bool monotone = true;
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < full; ++k) {
    const auto w = weitz_approx_marginal(g, v, p, params, k);
    const double gap = magnitude(w.value - exact);
    gaps.push_back(gap);
    monotone = monotone && gap <= previous;
    previous = gap;
    if (w.exact) break;
  }
  const auto at_full = weitz_approx_marginal(g, v, p, params, full);
  out.pass = at_full.exact && at_full.value == exact;
  out.record["n"] = g.vertex_count();
  out.record["depth"] = full;
  out.record["tree_size"] = at_full.tree_size;
  out.record["exact_at_depth"] = at_full.exact;
  out.record["value"] = detail::str(at_full.value);
  out.record["marginal"] = detail::str(exact);
  out.record["gaps_by_depth"] = gaps;
  out.record["monotone"] = monotone;  // informational
  return out;
}

// ---- registry and corpus runner ---------------------------------------------------

inline const std::map<std::string, Experiment>& experiments() {
  static const std::map<std::string, Experiment> registry = {
      {"cd-check", {"cd-check", 200, generate_cd, run_cd}},
      {"gutman-check", {"gutman-check", 200, generate_gutman, run_gutman}},
      {"qspin-check", {"qspin-check", 100, generate_qspin, run_qspin}},
      {"saw-check", {"saw-check", 100, generate_saw, run_saw}},
      {"ldc", {"ldc", 100, generate_ldc, run_ldc}},
      {"ldc-beta", {"ldc-beta", 100, generate_ldc_beta, run_ldc_beta}},
      {"roots", {"roots", 100, generate_roots, run_roots}},
      {"annulus", {"annulus", 50, generate_annulus, run_annulus}},
      {"weitz", {"weitz", 50, generate_weitz, run_weitz}},
  };
  return registry;
}

inline const Experiment& experiment(const std::string& name) {
  const auto& reg = experiments();
  auto it = reg.find(name);
  if (it == reg.end()) throw InputError("unknown experiment: " + name);
  return it->second;
}

/// Runs one instance; a thrown error counts as a failure and is recorded.
inline CheckResult check_instance(const Experiment& e, const OrderedJson& inst) {
  try {
    return e.run(inst);
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& ex) {
    CheckResult r;
    r.pass = false;
    r.record["error"] = ex.what();
    return r;
  }
}

inline RunReport run_corpus(const Experiment& e, std::uint64_t seed, std::size_t trials) {
  RunReport report{e.name, seed, 0, 0, {}, std::nullopt};
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng(trial_seed(seed, i));
    OrderedJson inst = e.generate(rng, i);
    inst["seed"] = seed;
    inst["trial"] = i;
    CheckResult r = check_instance(e, inst);
    OrderedJson rec;
    rec["trial"] = i;
    rec["pass"] = r.pass;
    for (auto& [k, val] : r.record.items()) rec[k] = val;
    report.records.push_back(std::move(rec));
    if (r.pass) {
      ++report.pass;
    } else {
      ++report.fail;
      if (!report.first_failure) report.first_failure = inst;
    }
  }
  return report;
}

inline OrderedJson report_json(const RunReport& r) {
  OrderedJson j;
  j["command"] = r.command;
  j["seed"] = r.seed;
  j["pass"] = r.pass;
  j["fail"] = r.fail;
  j["instances"] = r.records;
  return j;
}

namespace detail {

inline std::string csv_cell(const OrderedJson& x) {
  if (x.is_string()) return x.get<std::string>();
  if (x.is_number_float()) return format_double(x.get<double>());
  return x.dump();
}

inline void flatten(const OrderedJson& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  for (auto& [k, val] : j.items()) {
    const std::string key = prefix.empty() ? k : prefix + "." + k;
    if (val.is_object()) flatten(val, key, out);
    else out.emplace_back(key, csv_cell(val));
  }
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace detail

/// One row per instance; nested objects become dotted columns. The header is
/// the union of keys in first-seen order.
inline std::string report_csv(const RunReport& r) {
  std::vector<std::string> header;
  std::vector<std::map<std::string, std::string>> rows;
  for (const auto& rec : r.records) {
    std::vector<std::pair<std::string, std::string>> flat;
    detail::flatten(rec, "", flat);
    std::map<std::string, std::string> row;
    for (auto& [k, val] : flat) {
      if (std::find(header.begin(), header.end(), k) == header.end()) header.push_back(k);
      row[k] = val;
    }
    rows.push_back(std::move(row));
  }
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + detail::csv_quote(header[i]);
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      auto it = row.find(header[i]);
      out += (i ? "," : "") + detail::csv_quote(it == row.end() ? "" : it->second);
    }
    out += "\n";
  }
  return out;
}

// ---- decay and region tables -----------------------------------------------------

inline std::string decay_csv(const DecayProfile& prof) {
  std::string out = "k,gap,log_gap\n";
  for (const auto& row : prof.rows)
    out += std::to_string(row.k) + "," + format_double(row.gap) + "," +
           format_double(row.gap > 0 ? std::log(row.gap) : -std::numeric_limits<double>::infinity()) + "\n";
  return out;
}

inline OrderedJson decay_fit_json(const DecayProfile& prof) {
  OrderedJson j;
  j["r"] = prof.rate ? OrderedJson(*prof.rate) : OrderedJson(nullptr);
  j["C"] = prof.constant ? OrderedJson(*prof.constant) : OrderedJson(nullptr);
  j["rows"] = prof.rows.size();
  std::size_t zero = 0;
  for (const auto& r : prof.rows) zero += r.gap == 0 ? 1 : 0;
  j["zero_gaps"] = zero;
  return j;
}

inline std::string region_csv(const std::vector<RegionRow>& rows) {
  std::string out = "lambda_re,lambda_im,min_modulus\n";
  for (const auto& r : rows) {
    const ApproxComplex z = r.lambda.to_approx();
    out += format_double(z.real()) + "," + format_double(z.imag()) + "," + format_double(r.min_modulus) + "\n";
  }
  return out;
}

}  // namespace ssm
