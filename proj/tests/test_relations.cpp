#include <gtest/gtest.h>

#include <stdexcept>

#include "hilbert/generators.hpp"
#include "hilbert/relations.hpp"

using namespace hilbert;

TEST(Relations, ParallelMapKeepsOrder) {
  for (int jobs : {1, 2, 5}) {
    const auto v = parallel_map(100, jobs, [](std::size_t k) { return static_cast<int>(k * k); });
    for (std::size_t k = 0; k < v.size(); ++k) EXPECT_EQ(v[k], static_cast<int>(k * k));
  }
  EXPECT_THROW(parallel_map(10, 3,
                            [](std::size_t k) -> int {
                              if (k == 7) throw std::runtime_error("boom");
                              return 0;
                            }),
               std::runtime_error);
}

TEST(Relations, CentralTerm) {
  auto p2 = load_preset("p2");
  auto torus = load_preset("torus_like");
  const int one = p2->unit();
  EXPECT_EQ(ll_central_term(*p2, 2, -2, one, one), Rational(-3, 2));
  EXPECT_EQ(ll_central_term(*p2, 1, -1, one, one), Rational(0));
  EXPECT_EQ(ll_central_term(*p2, 3, -3, one, one), Rational(-6));
  EXPECT_EQ(ll_central_term(*p2, 2, -1, one, one), Rational(0));
  EXPECT_EQ(ll_central_term(*torus, 2, -2, torus->unit(), torus->unit()), Rational(0));
}

TEST(Relations, SuitesPassOnP2) {
  auto p2 = load_preset("p2");
  OperatorCalculus calc(p2);
  for (const char* suite : {"heisenberg", "Lq", "LL", "qprime"}) {
    const RelationReport r = verify_relations(suite, calc, RelationRanges{2, 2, {}, {}}, 4);
    EXPECT_TRUE(r.passed()) << suite;
    EXPECT_GT(r.checked_count, 0);
    long long sum = 0;
    for (const auto& c : r.identities) sum += c.checked;
    EXPECT_EQ(sum, r.checked_count);
  }
  EXPECT_THROW(verify_relations("nope", calc, {}, 4), DomainError);
  EXPECT_TRUE(verify_boundary_self_adjoint(calc, 4).passed());
}

TEST(Relations, InstanceCounts) {
  auto p2 = load_preset("p2");
  OperatorCalculus calc(p2);
  const RelationRanges r{2, 1, {}, {}};
  // q_0 is not an operator of the family, so n, m = 0 are skipped
  EXPECT_EQ(heisenberg_instances(calc, r).size(), 4u * 2u * 9u);
  EXPECT_EQ(ll_instances(calc, r).size(), 5u * 3u * 9u);
  auto torus = load_preset("torus_like");
  EXPECT_EQ(even_classes(*torus).size(), 8u);
  EXPECT_EQ(all_classes(*torus).size(), 16u);
}

// A wrong right-hand side must be caught, so a pass is not vacuous.
TEST(Relations, DetectsWrongIdentity) {
  auto p2 = load_preset("p2");
  OperatorCalculus calc(p2);
  const int h = p2->index_of("h");
  const IdentityInstance wrong{"[q_1(h), q_-1(h)] = 0", supercommutator(calc.q(1, h), calc.q(-1, h)),
                               zero_operator(0, 4)};
  const RelationReport r = check_identities(*p2, {wrong}, 3);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.discrepancy_count, r.checked_count);
  ASSERT_FALSE(r.discrepancies.empty());
  EXPECT_EQ(r.discrepancies.front().input, "|0>");
}

TEST(Relations, ReportsAreJobIndependent) {
  auto torus = load_preset("torus_like");
  OperatorCalculus calc(torus);
  const RelationReport a = verify_relations("heisenberg", calc, RelationRanges{2, 2, {}, {}}, 3, 1);
  const RelationReport b = verify_relations("heisenberg", calc, RelationRanges{2, 2, {}, {}}, 3, 4);
  EXPECT_EQ(a.checked_count, b.checked_count);
  ASSERT_EQ(a.identities.size(), b.identities.size());
  for (std::size_t k = 0; k < a.identities.size(); ++k) EXPECT_EQ(a.identities[k].label, b.identities[k].label);
}

TEST(SuiteDrivers, GeneratorAndLeadingSuites) {
  auto p2 = load_preset("p2");
  OperatorCalculus calc(p2);
  const RelationReport g = verify_generator_classes(calc, 4);
  EXPECT_TRUE(g.passed());
  // B_0 once per n, G_0 per (gamma, n), B_1 per (gamma, n >= 2)
  EXPECT_EQ(g.checked_count, 4 + 3 * 4 + 3 * 3);
  const RelationReport l = verify_leading_terms(calc, 5);
  EXPECT_TRUE(l.passed());
  EXPECT_EQ(l.checked_count, 3 * 6);
}

TEST(SuiteDrivers, AllOnesInstances) {
  auto p2 = load_preset("p2");
  OperatorCalculus calc(p2);
  EXPECT_EQ(all_ones_instances(calc, 1).size(), 9u + 27u);
  EXPECT_EQ(all_ones_instances(calc, 2, {p2->unit()}).size(), 3u);
  EXPECT_TRUE(verify_all_ones(calc, 2, 4).passed());
}

TEST(SuiteDrivers, ExpansionDetectsBadOracle) {
  auto p2 = load_preset("p2");
  OperatorCalculus calc(p2);
  EXPECT_TRUE(verify_expansion(calc, 4).passed());
  const Operator d = calc.boundary();
  const BracketOracle wrong = [&](const std::vector<ColoredPart>& f) -> std::optional<Operator> {
    Operator h = d;
    for (const auto& p : f) h = supercommutator(h, calc.q(p.size, p.color));
    return f.size() == 2 ? scaled(Rational(2), h) : h;
  };
  const FockMonomial A = canonicalize_parts(*p2, {{1, 0}, {1, 1}, {1, 2}}).terms().front().first;
  EXPECT_NE(expand_commutators(*p2, 0, 2, A, wrong), d.apply(A));
  EXPECT_EQ(expand_commutators(*p2, 0, 2, A, direct_brackets(calc, d)), d.apply(A));
}
