#include <gtest/gtest.h>

#include <map>
#include <set>

#include "revseq/data.hpp"
#include "revseq/metrics.hpp"
#include "support.hpp"

using namespace revseq;

namespace {

MetricsReport metrics_of(const Circuit& c) { return compute_metrics(c, builtin_library()); }
MetricsReport metrics_of(std::string_view text) { return metrics_of(parse_circuit(text)); }

std::map<std::string, OutputRole> roles(const MetricsReport& r) {
  std::map<std::string, OutputRole> m;
  for (const auto& oc : r.classification) m[oc.wire] = oc.role;
  return m;
}

struct Expected {
  const char* name;
  int gates, garbage, delay, strict, constants;
};

const Expected kExpected[] = {
    {"d_latch", 1, 1, 1, 2, 1},
    {"ms_d_ff", 2, 2, 2, 4, 2},
    {"jk_latch", 2, 2, 2, 5, 2},
    {"ms_jk_ff", 3, 3, 3, 7, 3},
};

}  // namespace

TEST(Metrics, BuiltinDesigns) {
  for (const auto& e : kExpected) {
    const auto r = metrics_of(builtin_design(e.name));
    EXPECT_EQ(r.circuit, e.name);
    EXPECT_EQ(r.gate_count, e.gates) << e.name;
    EXPECT_EQ(r.garbage_declared, e.garbage) << e.name;
    EXPECT_EQ(r.delay, e.delay) << e.name;
    EXPECT_EQ(r.garbage_strict, e.strict) << e.name;
    EXPECT_EQ(r.constant_inputs, e.constants) << e.name;
  }
}

TEST(Metrics, Invariants) {
  for (const auto& e : kExpected) {
    const Circuit c = builtin_design(e.name);
    const auto r = metrics_of(c);
    EXPECT_GE(r.garbage_strict, r.garbage_declared);
    EXPECT_GE(r.garbage_declared, 0);
    std::multiset<std::string> seen;
    for (const auto& oc : r.classification) seen.insert(oc.wire);
    std::size_t outputs = 0;
    for (const auto& inst : c.instances) {
      outputs += inst.outputs.size();
      for (const auto& w : inst.outputs) EXPECT_EQ(seen.count(w.str()), 1u) << w.str();
    }
    EXPECT_EQ(r.classification.size(), outputs);
  }
}

TEST(Classification, DLatchRoles) {
  const auto m = roles(metrics_of(builtin_design("d_latch")));
  EXPECT_EQ(m.at("nCLK"), OutputRole::ClockDerived);
  EXPECT_EQ(m.at("g"), OutputRole::Garbage);
  EXPECT_EQ(m.at("Q.next"), OutputRole::PrimaryOutput);
  EXPECT_EQ(m.at("Qbar"), OutputRole::PrimaryOutput);
}

TEST(Classification, DLatchAgainstBruteForceFunctions) {
  // Over (CLK, D, Q): nCLK is !CLK, g matches none of the candidate signals.
  const auto r = metrics_of(builtin_design("d_latch"));
  for (unsigned row = 0; row < 8; ++row) {
    const bool clk = row >> 2 & 1, d = row >> 1 & 1, q = row & 1;
    const auto out = support::mg1(clk, d, q, true);
    EXPECT_EQ(out.p, !clk);
  }
  std::vector<std::vector<bool>> candidates(5);
  std::vector<bool> g;
  for (unsigned row = 0; row < 8; ++row) {
    const bool clk = row >> 2 & 1, d = row >> 1 & 1, q = row & 1;
    const auto out = support::mg1(clk, d, q, true);
    candidates[0].push_back(clk);
    candidates[1].push_back(d);
    candidates[2].push_back(q);
    candidates[3].push_back(out.r);  // Q.next / exported Q
    candidates[4].push_back(out.s);  // Qn
    g.push_back(out.q);
  }
  bool matched = false;
  for (std::size_t i = 0; i < 5; ++i) {
    std::vector<bool> inv;
    for (bool b : candidates[i]) inv.push_back(!b);
    matched = matched || candidates[i] == g || inv == g;
  }
  EXPECT_FALSE(matched);
  EXPECT_EQ(roles(r).at("g"), OutputRole::Garbage);
}

TEST(Classification, MasterSlaveDRoles) {
  const auto m = roles(metrics_of(builtin_design("ms_d_ff")));
  EXPECT_EQ(m.at("nCLK"), OutputRole::ConsumedInternal);
  EXPECT_EQ(m.at("clk_copy"), OutputRole::ClockDerived);
  EXPECT_EQ(m.at("Qm.next"), OutputRole::ConsumedInternal);
  EXPECT_EQ(m.at("Qmbar"), OutputRole::ComplementOfSignal);
  EXPECT_EQ(m.at("gm"), OutputRole::Garbage);
  EXPECT_EQ(m.at("gs"), OutputRole::Garbage);
}

TEST(Classification, CopyAndComplementDetected) {
  const auto r = metrics_of(
      "circuit c\ninput A, B\nconst ONE = 1\n"
      "gate g : TG (A, ONE, B) -> (a, one, r)\n"
      "gate h : FG (ONE, A) -> (k, na)\n"
      "output r\n");
  const auto m = roles(r);
  EXPECT_EQ(m.at("a"), OutputRole::SignalCopy);
  EXPECT_EQ(m.at("na"), OutputRole::ComplementOfSignal);
  EXPECT_EQ(m.at("r"), OutputRole::PrimaryOutput);
  // `one` and `k` are constant 1: no signal of interest matches.
  EXPECT_EQ(m.at("one"), OutputRole::Garbage);
  EXPECT_EQ(m.at("k"), OutputRole::Garbage);
  EXPECT_EQ(r.garbage_declared, 2);
  EXPECT_EQ(r.garbage_strict, 4);
}

TEST(Classification, ExportingGarbageLowersBothCounts) {
  for (const auto& e : kExpected) {
    Circuit c = builtin_design(e.name);
    const auto before = metrics_of(c);
    const auto it = std::find_if(before.classification.begin(), before.classification.end(),
                                 [](const OutputClass& oc) { return oc.role == OutputRole::Garbage; });
    ASSERT_NE(it, before.classification.end());
    c.outputs.push_back({Wire::plain(it->wire), "extra", {}});
    const auto after = metrics_of(c);
    EXPECT_EQ(after.garbage_declared, before.garbage_declared - 1) << e.name;
    EXPECT_EQ(after.garbage_strict, before.garbage_strict - 1) << e.name;
  }
}

TEST(Classification, SingleGateStrictIsArityMinusExports) {
  for (int exports = 0; exports <= 3; ++exports) {
    std::string text = "circuit c\ninput A, B, C\ngate g : TG (A, B, C) -> (p, q, r)\n";
    const char* wires[] = {"p", "q", "r"};
    for (int i = 0; i < exports; ++i) text += std::string("output ") + wires[i] + "\n";
    EXPECT_EQ(metrics_of(text).garbage_strict, 3 - exports);
  }
}

TEST(Classification, SwappedSteeringOutputsKeepCounts) {
  // Counts alone cannot see this fault; behavior checks have to.
  const auto miswired = parse_circuit(support::slurp(support::fixture("faults/miswired_jk_latch.rseq")));
  const auto bad = metrics_of(miswired);
  const auto good = metrics_of(builtin_design("jk_latch"));
  EXPECT_EQ(std::tie(bad.gate_count, bad.garbage_declared, bad.delay),
            std::tie(good.gate_count, good.garbage_declared, good.delay));
  EXPECT_EQ(bad.classification[1].wire, "gk");
  EXPECT_EQ(bad.classification[1].role, OutputRole::Garbage);
}

TEST(Delay, ChainAndParallel) {
  const auto chain = metrics_of(
      "circuit c\ninput A, B\n"
      "gate g1 : FG (A, B) -> (a1, b1)\n"
      "gate g2 : FG (a1, b1) -> (a2, b2)\n"
      "gate g3 : FG (a2, b2) -> (a3, b3)\n"
      "output a3, b3\n");
  EXPECT_EQ(chain.delay, 3);
  const auto parallel = metrics_of(
      "circuit c\ninput A, B, C, D\n"
      "gate g1 : FG (A, B) -> (a1, b1)\n"
      "gate g2 : FG (C, D) -> (c1, d1)\n"
      "output a1, b1, c1, d1\n");
  EXPECT_EQ(parallel.delay, 1);
  EXPECT_EQ(metrics_of("circuit empty\n").delay, 0);
}

TEST(Dataset, BuiltinRows) {
  const auto& rows = builtin_dataset();
  EXPECT_EQ(rows.size(), 7u + 4u + 5u + 4u);
  const auto t3 = std::find_if(rows.begin(), rows.end(),
                               [](const ComparisonRow& r) { return r.table == 3 && r.source == "Existing [8]"; });
  ASSERT_NE(t3, rows.end());
  EXPECT_EQ(std::tie(t3->gates, t3->garbage, t3->delay), std::make_tuple(5, 6, 5));
}

TEST(Dataset, RoundTrip) {
  const auto& rows = builtin_dataset();
  EXPECT_EQ(parse_dataset_csv(format_dataset_csv(rows)), rows);
  EXPECT_EQ(format_dataset_csv(rows), std::string(data::file("comparison_dataset.csv")));
}

TEST(Dataset, Errors) {
  EXPECT_THROW(parse_dataset_csv(""), ParseError);
  EXPECT_THROW(parse_dataset_csv("a,b\n"), ParseError);
  const std::string header = "table,title,circuit,source,gates,garbage,delay\n";
  EXPECT_THROW(parse_dataset_csv(header + "3,D latch,d_latch,Proposed,1,1\n"), ParseError);
  try {
    parse_dataset_csv(header + "3,D latch,d_latch,Proposed,1,-1,1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location().line, 2);
  }
  EXPECT_EQ(parse_dataset_csv(header + "3,\"A, quoted\",d,Proposed,1,1,1\n")[0].title, "A, quoted");
}

TEST(Comparison, AllBuiltinsMatch) {
  std::vector<MetricsReport> computed;
  for (const auto& e : kExpected) computed.push_back(metrics_of(builtin_design(e.name)));
  const auto tables = comparison_report(computed, builtin_dataset());
  ASSERT_EQ(tables.size(), 4u);
  for (std::size_t i = 0; i < tables.size(); ++i) {
    EXPECT_EQ(tables[i].table, int(i) + 3);
    ASSERT_TRUE(tables[i].match.has_value());
    EXPECT_TRUE(*tables[i].match) << tables[i].title;
    EXPECT_EQ(tables[i].stored.front().source, kProposedSource);
  }
}

TEST(Comparison, MismatchAndMissingProposed) {
  auto rows = builtin_dataset();
  for (auto& r : rows) {
    if (r.table == 4 && r.source == kProposedSource) r.garbage = 3;
  }
  std::erase_if(rows, [](const ComparisonRow& r) { return r.table == 5 && r.source == kProposedSource; });
  std::vector<MetricsReport> computed;
  for (const auto& e : kExpected) computed.push_back(metrics_of(builtin_design(e.name)));
  computed.push_back(metrics_of("circuit extra\n"));
  const auto tables = comparison_report(computed, rows);
  ASSERT_EQ(tables.size(), 5u);
  EXPECT_FALSE(*tables[1].match);
  EXPECT_EQ(tables[1].mismatches, (std::vector<std::string>{"garbage: computed 2, stored 3"}));
  EXPECT_FALSE(*tables[2].match);
  EXPECT_EQ(tables[4].table, 0);
  EXPECT_FALSE(tables[4].match.has_value());
  EXPECT_FALSE(tables[0].mismatches.size());
}

TEST(Roles, Names) {
  EXPECT_EQ(role_name(OutputRole::PrimaryOutput), "primary-output");
  EXPECT_EQ(role_name(OutputRole::ComplementOfSignal), "complement-of-signal");
  EXPECT_EQ(role_name(OutputRole::SignalCopy), "signal-copy");
  EXPECT_EQ(role_name(OutputRole::ClockDerived), "clock-derived");
  EXPECT_EQ(role_name(OutputRole::ConsumedInternal), "consumed-internal");
  EXPECT_EQ(role_name(OutputRole::Garbage), "garbage");
}
