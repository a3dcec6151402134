#include <gtest/gtest.h>

#include "ssm/experiments.hpp"

using namespace ssm;

TEST(Rng, SeededStreamsRepeat) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.below(1000), b.below(1000));
  EXPECT_NE(trial_seed(1, 0), trial_seed(1, 1));
  EXPECT_NE(trial_seed(1, 0), trial_seed(2, 0));
  Rng c(7);
  for (int i = 0; i < 1000; ++i) {
    const long x = c.between(-3, 3);
    EXPECT_GE(x, -3);
    EXPECT_LE(x, 3);
  }
}

TEST(RandomInstances, Shapes) {
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.between(1, 10));
    EXPECT_TRUE(is_connected(random_connected_graph(rng, n)));
    EXPECT_TRUE(is_tree(random_tree(rng, n)));
    const Graph b = random_bounded_degree_graph(rng, n, 3);
    EXPECT_TRUE(is_connected(b));
    EXPECT_LE(b.max_degree(), 3u);
    const Graph g = random_connected_graph(rng, n);
    const Pinning p = random_feasible_pinning(rng, g, {true, false}, {0}, 1, 2);
    EXPECT_TRUE(is_feasible(g, p, true, false));
    EXPECT_TRUE(is_proper(g, p, 0, true, false));
  }
}

TEST(Experiments, EveryCommandIsRegistered) {
  for (const char* name : {"cd-check", "gutman-check", "qspin-check", "saw-check", "ldc", "ldc-beta", "roots", "annulus", "weitz"})
    EXPECT_EQ(experiment(name).name, name);
  EXPECT_THROW(experiment("nope"), InputError);
}

TEST(Experiments, SeededReportsAreByteIdentical) {
  for (const auto& [name, e] : experiments()) {
    const std::string a = report_json(run_corpus(e, 99, 6)).dump(2);
    const std::string b = report_json(run_corpus(e, 99, 6)).dump(2);
    EXPECT_EQ(a, b) << name;
    EXPECT_EQ(report_csv(run_corpus(e, 99, 6)), report_csv(run_corpus(e, 99, 6))) << name;
  }
}

TEST(Experiments, ReplayReproducesTheRecord) {
  const Experiment& e = experiment("cd-check");
  Rng rng(trial_seed(3, 4));
  const OrderedJson inst = e.generate(rng, 4);
  const auto a = check_instance(e, inst);
  const auto b = check_instance(e, OrderedJson::parse(inst.dump()));
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(a.record.dump(), b.record.dump());
}

TEST(Experiments, EditedInstanceIsRecomputed) {
  OrderedJson inst = OrderedJson::parse(R"({"command":"weitz","graph":{"n":3,"edges":[[0,1],[1,2],[0,2]]},
    "beta":"0","gamma":"1","lambda":"1","pins":{},"vertex":0,"depth":3})");
  EXPECT_TRUE(check_instance(experiment("weitz"), inst).pass);
  inst["depth"] = 1;
  const auto r = check_instance(experiment("weitz"), inst);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.record["value"], "1/2");
}

TEST(Experiments, ThrownErrorsBecomeFailures) {
  OrderedJson inst = OrderedJson::parse(R"({"command":"saw-check","graph":{"n":1,"edges":[]},
    "beta":"1","gamma":"1","lambda":"-1","pins":{},"vertex":0})");
  const auto r = check_instance(experiment("saw-check"), inst);
  EXPECT_FALSE(r.pass);
  EXPECT_TRUE(r.record.contains("error"));
}

TEST(Experiments, CsvQuotesAwkwardCells) {
  RunReport r{"x", 1, 1, 0, {}, std::nullopt};
  OrderedJson rec;
  rec["trial"] = 0;
  rec["lhs"] = "1/2 + 1/3i";
  rec["note"] = "a,b";
  rec["nested"] = {{"k", 1.5}};
  r.records.push_back(rec);
  EXPECT_EQ(report_csv(r), "trial,lhs,note,nested.k\n0,1/2 + 1/3i,\"a,b\",1.5\n");
}

TEST(Experiments, SmallCorporaPass) {
  for (const auto& [name, e] : experiments()) {
    const auto r = run_corpus(e, 2024, 10);
    EXPECT_EQ(r.fail, 0u) << name << ": " << (r.first_failure ? r.first_failure->dump() : "");
  }
}
