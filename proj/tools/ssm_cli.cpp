// Command-line front end: seeded identity corpora, LDC sweeps, decay
// profiles and zero scans.
//
// Exit status: 0 when every check passed, 1 on a failed check (the first
// failing instance is written out for `replay`), 2 on a configuration error.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ssm/ssm.hpp"

namespace {

using namespace ssm;

constexpr const char* kCorpusHelp = R"(Random corpora (seeded, byte-identical for a given seed):
  graphs   Erdos-Renyi G(n, 1/2) conditioned on connectivity
  trees    uniform spanning trees of such graphs (Wilson's algorithm)
  annulus  random trees plus random extra edges under the degree bound 3
  scalars  p/q with |p| <= 10 and 1 <= q <= 10; trials cycle through
           beta = 0, gamma = 0, beta*gamma = 1 and per-vertex fields
  pins     each eligible vertex pinned with a fixed probability, keeping the
           pinning feasible and the observed vertex proper)";

struct Options {
  std::string command;
  std::string dump;
  std::optional<std::string> graph, pins, out, qspin, family_name;
  std::optional<std::string> beta, gamma, lambda, center, radius;
  std::optional<std::size_t> trials, depth, degree, order, q;
  std::optional<Vertex> vertex, u, v;
  std::size_t kmin = 1, kmax = 10, branching = 2, steps = 9;
  std::optional<double> min_rate;
  std::string mode = "ssm";
  std::string series_mode = "general";
  std::string family = "path";
  std::uint64_t seed = 1;
  std::string format = "json";
};

ExactComplex flag_value(const std::optional<std::string>& flag, const char* name, const char* fallback = nullptr) {
  if (flag) return parse_complex_flag(*flag);
  if (fallback) return parse_complex_flag(fallback);
  throw InputError(std::string("--") + name + " is required");
}

Graph load_graph(const Options& o) { return graph_from_json(read_json_file(*o.graph)); }
Pinning load_pins(const Options& o) { return o.pins ? pinning_from_json(read_json_file(*o.pins)) : Pinning{}; }

Vertex required_vertex(const std::optional<Vertex>& x, const char* name) {
  if (!x) throw InputError(std::string("--") + name + " is required");
  return *x;
}

OrderedJson base_instance(const Options& o, const Graph& g) {
  OrderedJson inst;
  inst["command"] = o.command;
  inst["graph"] = graph_to_json<OrderedJson>(g);
  return inst;
}

/// One instance of a corpus command assembled from flags.
std::vector<OrderedJson> instances_from_flags(const Options& o) {
  const Graph g = load_graph(o);
  const Pinning p = load_pins(o);
  OrderedJson inst = base_instance(o, g);
  std::vector<OrderedJson> out;
  auto put = [&](const char* key, const ExactComplex& z) { inst[key] = complex_to_json<OrderedJson>(z); };
  const std::string& c = o.command;
  if (c == "cd-check" || c == "saw-check" || c == "weitz") {
    put("beta", flag_value(o.beta, "beta"));
    put("gamma", flag_value(o.gamma, "gamma", "1"));
    put("lambda", flag_value(o.lambda, "lambda", "1"));
    inst["pins"] = pinning_to_json<OrderedJson>(p)["pins"];
    if (c == "cd-check") {
      inst["u"] = required_vertex(o.u, "u");
      inst["v"] = required_vertex(o.v, "v");
    } else {
      inst["vertex"] = required_vertex(o.vertex, "vertex");
      if (c == "weitz" && o.depth) inst["depth"] = *o.depth;
    }
    out.push_back(inst);
  } else if (c == "gutman-check") {
    put("lambda", flag_value(o.lambda, "lambda", "1"));
    inst["u"] = required_vertex(o.u, "u");
    inst["v"] = required_vertex(o.v, "v");
    out.push_back(inst);
  } else if (c == "qspin-check") {
    if (o.qspin) {
      const Json qs = read_json_file(*o.qspin);
      inst["a"] = qs.at("a");
      inst["lambdas"] = qs.at("lambdas");
      inst["q"] = qs.at("lambdas").size();
    } else {
      // Without a q-spin file the 2-spin system is used in its q = 2 form.
      const auto beta = flag_value(o.beta, "beta"), gamma = flag_value(o.gamma, "gamma", "1"),
                 lambda = flag_value(o.lambda, "lambda", "1");
      const auto qp = QSpinParams<ExactComplex>::from_two_spin(beta, gamma, lambda);
      inst["q"] = 2;
      inst["a"] = {{complex_to_json<OrderedJson>(qp.a[0][0]), complex_to_json<OrderedJson>(qp.a[0][1])},
                   {complex_to_json<OrderedJson>(qp.a[1][0]), complex_to_json<OrderedJson>(qp.a[1][1])}};
      inst["lambdas"] = {complex_to_json<OrderedJson>(lambda), complex_to_json<OrderedJson>(ExactComplex(1))};
      inst["embedding"] = {{"beta", complex_to_json<OrderedJson>(beta)},
                           {"gamma", complex_to_json<OrderedJson>(gamma)},
                           {"lambda", complex_to_json<OrderedJson>(lambda)}};
    }
    OrderedJson pins = OrderedJson::object();
    for (auto [x, s] : p) pins[std::to_string(x)] = s == Spin::Plus ? 0 : 1;
    inst["pins"] = pins;
    inst["u"] = required_vertex(o.u, "u");
    inst["v"] = required_vertex(o.v, "v");
    out.push_back(inst);
  } else if (c == "roots" || c == "annulus") {
    put("beta", flag_value(o.beta, "beta"));
    if (c == "roots" && o.gamma) put("gamma", flag_value(o.gamma, "gamma"));
    if (c == "annulus") inst["degree_bound"] = o.degree.value_or(std::max<std::size_t>(1, g.max_degree()));
    inst["pins"] = pinning_to_json<OrderedJson>(p)["pins"];
    out.push_back(inst);
  } else if (c == "ldc" || c == "ldc-beta") {
    // Every pair among: the base pinning and the base pinning plus one more
    // pin (either spin) on a free vertex other than v.
    const Vertex v = o.vertex.value_or(0);
    const bool ising = o.series_mode == "ising";
    HardConstraints hc;
    if (c == "ldc") {
      put("beta", flag_value(o.beta, "beta"));
      put("gamma", flag_value(o.gamma, "gamma", "1"));
      hc = {is_zero(flag_value(o.beta, "beta")), is_zero(flag_value(o.gamma, "gamma", "1"))};
    } else {
      const ExactComplex gamma = flag_value(o.gamma, "gamma", "1");
      if (is_zero(gamma) && !o.center && !ising) throw InputError("gamma = 0 needs an explicit --center");
      const ExactComplex center = o.center ? flag_value(o.center, "center") : ising ? ExactComplex(1) : gamma.inverse();
      put("gamma", gamma);
      put("lambda", flag_value(o.lambda, "lambda", "1"));
      put("center", center);
      inst["mode"] = ising ? "ising" : "general";
    }
    if (o.order) inst["order"] = *o.order;
    inst["vertex"] = v;
    std::vector<Pinning> options{p};
    for (Vertex x = 0; x < g.vertex_count(); ++x)
      if (x != v && !p.contains(x))
        for (Spin s : {Spin::Plus, Spin::Minus}) options.push_back(p.with(x, s));
    std::vector<Pinning> usable;
    for (const auto& cand : options)
      if (is_feasible(g, cand, hc) && is_proper(g, cand, v, hc)) usable.push_back(cand);
    for (std::size_t i = 0; i < usable.size(); ++i)
      for (std::size_t j = i + 1; j < usable.size(); ++j) {
        OrderedJson pair = inst;
        pair["s"] = pinning_to_json<OrderedJson>(usable[i])["pins"];
        pair["t"] = pinning_to_json<OrderedJson>(usable[j])["pins"];
        out.push_back(pair);
      }
  } else {
    throw InputError("--graph is not supported by " + c);
  }
  return out;
}

void emit(const Options& o, const std::string& json_text, const std::string& csv_text, bool echo) {
  const std::string& body = o.format == "csv" ? csv_text : json_text;
  if (o.out) write_file(*o.out, body);
  else if (echo) std::cout << body << (body.empty() || body.back() == '\n' ? "" : "\n");
}

int finish(const Options& o, const RunReport& r, bool echo) {
  emit(o, report_json(r).dump(2) + "\n", report_csv(r), echo);
  if (r.first_failure) {
    const std::string path = o.out ? *o.out + ".failure.json" : o.command + "-failure.json";
    write_file(path, r.first_failure->dump(2) + "\n");
    std::cerr << "first failing instance written to " << path << "\n";
  }
  std::cout << r.command << " pass=" << r.pass << " fail=" << r.fail << " seed=" << r.seed << "\n";
  return r.fail == 0 ? 0 : 1;
}

int run_corpus_command(const Options& o) {
  const Experiment& e = experiment(o.command);
  if (o.graph) {
    RunReport r{o.command, o.seed, 0, 0, {}, std::nullopt};
    for (auto& inst : instances_from_flags(o)) {
      CheckResult res = check_instance(e, inst);
      OrderedJson rec;
      rec["trial"] = r.records.size();
      rec["pass"] = res.pass;
      if (inst.contains("s")) {
        rec["s"] = inst["s"];
        rec["t"] = inst["t"];
      }
      for (auto& [k, val] : res.record.items()) rec[k] = val;
      r.records.push_back(std::move(rec));
      res.pass ? ++r.pass : ++r.fail;
      if (!res.pass && !r.first_failure) r.first_failure = inst;
    }
    return finish(o, r, true);
  }
  return finish(o, run_corpus(e, o.seed, o.trials.value_or(e.default_trials)), false);
}

int run_decay(const Options& o) {
  const auto params = ExactParams::uniform(flag_value(o.beta, "beta"), flag_value(o.gamma, "gamma", "1"),
                                           flag_value(o.lambda, "lambda", "1"));
  DecayFamily fam;
  if (o.family == "path") fam = DecayFamily::Path;
  else if (o.family == "tree") fam = DecayFamily::CompleteTree;
  else throw InputError("--family must be path or tree");
  DecayMode mode;
  if (o.mode == "ssm") mode = DecayMode::Ssm;
  else if (o.mode == "psm") mode = DecayMode::Psm;
  else if (o.mode == "msm") mode = DecayMode::Msm;
  else throw InputError("--mode must be ssm, psm or msm");
  const std::size_t b = o.branching;
  const DecayProfile prof = decay_profile<ExactComplex>(
      [&](std::size_t k) { return make_decay_instance(fam, mode, k, b); }, params, o.kmin, o.kmax);
  OrderedJson fit = decay_fit_json(prof);
  bool ok = true;
  if (o.min_rate) {
    ok = prof.rate && *prof.rate > *o.min_rate;
    fit["min_rate"] = *o.min_rate;
    fit["rate_check"] = ok;
  }
  OrderedJson full = fit;
  OrderedJson rows = OrderedJson::array();
  for (const auto& r : prof.rows) rows.push_back({{"k", r.k}, {"gap", r.gap}});
  full["profile"] = rows;
  const std::string csv = decay_csv(prof);
  if (o.format == "csv") {
    if (o.out) {
      write_file(*o.out, csv);
      write_file(*o.out + ".fit.json", fit.dump(2) + "\n");
    } else {
      std::cout << csv;
    }
  } else {
    emit(o, full.dump(2) + "\n", csv, true);
  }
  std::cout << "decay pass=" << (ok ? 1 : 0) << " fail=" << (ok ? 0 : 1) << " seed=" << o.seed << "\n";
  return ok ? 0 : 1;
}

int run_region(const Options& o) {
  std::vector<std::pair<Graph, Pinning>> family;
  if (o.graph) {
    family.emplace_back(load_graph(o), load_pins(o));
  } else if (o.family == "path") {
    for (std::size_t k = 1; k <= o.kmax; ++k) family.emplace_back(path_graph(k), Pinning{});
  } else {
    throw InputError("region needs --graph or --family path");
  }
  const auto beta = flag_value(o.beta, "beta"), gamma = flag_value(o.gamma, "gamma", "1");
  const ExactComplex radius = flag_value(o.radius, "radius", "2/5");
  if (!radius.is_real()) throw InputError("--radius must be real");
  const auto rows = region_min_modulus(family, beta, gamma, square_grid(radius.re(), o.steps));
  OrderedJson j;
  j["beta"] = complex_to_json<OrderedJson>(beta);
  j["gamma"] = complex_to_json<OrderedJson>(gamma);
  j["family_size"] = family.size();
  OrderedJson table = OrderedJson::array();
  for (const auto& r : rows) {
    const auto z = r.lambda.to_approx();
    table.push_back({{"lambda_re", z.real()}, {"lambda_im", z.imag()}, {"min_modulus", r.min_modulus}});
  }
  j["rows"] = table;
  emit(o, j.dump(2) + "\n", region_csv(rows), true);
  std::cout << "region pass=" << rows.size() << " fail=0 seed=" << o.seed << "\n";
  return 0;
}

int run_replay(const Options& o) {
  if (o.dump.empty()) throw InputError("replay needs a dump file");
  const OrderedJson inst = read_json_file<OrderedJson>(o.dump);
  if (!inst.contains("command")) throw InputError("dump has no \"command\"");
  Options local = o;
  local.command = inst.at("command").get<std::string>();
  const Experiment& e = experiment(local.command);
  CheckResult res = check_instance(e, inst);
  RunReport r{local.command, inst.contains("seed") ? inst.at("seed").get<std::uint64_t>() : o.seed, 0, 0, {}, std::nullopt};
  OrderedJson rec;
  rec["trial"] = inst.contains("trial") ? inst.at("trial") : OrderedJson(0);
  rec["pass"] = res.pass;
  for (auto& [k, val] : res.record.items()) rec[k] = val;
  r.records.push_back(rec);
  res.pass ? ++r.pass : ++r.fail;
  std::cout << report_json(r).dump(2) << "\n";
  if (o.out) write_file(*o.out, o.format == "csv" ? report_csv(r) : report_json(r).dump(2) + "\n");
  std::cout << r.command << " pass=" << r.pass << " fail=" << r.fail << " seed=" << r.seed << "\n";
  return r.fail == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Exact 2-spin partition functions, Christoffel-Darboux identities, LDC and zero scans"};
  app.footer(kCorpusHelp);
  app.add_option("command", o.command,
                 "cd-check | gutman-check | qspin-check | saw-check | ldc | ldc-beta | decay | roots | annulus | "
                 "region | weitz | replay")
      ->required();
  app.add_option("dump", o.dump, "instance dump (replay only)");
  app.add_option("--graph", o.graph, "graph JSON file; runs one instance instead of a corpus");
  app.add_option("--pins", o.pins, "pinning JSON file");
  app.add_option("--beta", o.beta, "edge weight for ++ edges, p/q[,p/q]");
  app.add_option("--gamma", o.gamma, "edge weight for -- edges, p/q[,p/q]");
  app.add_option("--lambda", o.lambda, "external field, p/q[,p/q for the imaginary part]");
  app.add_option("--center", o.center, "expansion point for ldc-beta (default 1/gamma, or 1 in Ising mode)");
  app.add_option("--series-mode", o.series_mode, "ldc-beta: general | ising")->check(CLI::IsMember({"general", "ising"}));
  app.add_option("--q", o.q, "number of spins (qspin-check; q = 2 uses the 2-spin flags)");
  app.add_option("--qspin", o.qspin, "q-spin parameter file {\"a\": [[...]], \"lambdas\": [...]}");
  app.add_option("--vertex", o.vertex, "observed vertex");
  app.add_option("--u", o.u, "first endpoint (cd-check, gutman-check, qspin-check)");
  app.add_option("--v", o.v, "second endpoint");
  app.add_option("--depth", o.depth, "weitz: SAW tree depth (default: number of vertices)");
  app.add_option("--degree", o.degree, "annulus: degree bound d (default: max degree)");
  app.add_option("--order", o.order, "series truncation order (default: diameter + 2)");
  app.add_option("--family", o.family, "decay: path | tree; region: path")->check(CLI::IsMember({"path", "tree"}));
  app.add_option("--mode", o.mode, "decay: ssm | psm | msm")->check(CLI::IsMember({"ssm", "psm", "msm"}));
  app.add_option("--branching", o.branching, "decay tree branching factor");
  app.add_option("--kmin", o.kmin, "decay: smallest distance");
  app.add_option("--kmax", o.kmax, "decay: largest distance; region: largest path");
  app.add_option("--min-rate", o.min_rate, "decay: fail unless the fitted rate exceeds this");
  app.add_option("--radius", o.radius, "region: grid half-width, p/q");
  app.add_option("--steps", o.steps, "region: grid points per axis");
  app.add_option("--trials", o.trials, "corpus size (default per command)");
  app.add_option("--seed", o.seed, "corpus seed");
  app.add_option("--out", o.out, "report file (failures go to <out>.failure.json)");
  auto* format = app.add_option("--format", o.format, "csv | json (default: from the --out extension, else json)")
                     ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (format->count() == 0 && o.out && o.out->ends_with(".csv")) o.format = "csv";

  try {
    if (o.command == "decay") return run_decay(o);
    if (o.command == "region") return run_region(o);
    if (o.command == "replay") return run_replay(o);
    return run_corpus_command(o);
  } catch (const InputError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
