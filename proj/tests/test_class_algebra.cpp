#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "hilbert/class_algebra.hpp"
#include "hilbert/fock.hpp"
#include "hilbert/presets.hpp"

using namespace hilbert;

namespace {

Partition P(std::vector<int> parts) { return Partition::from(std::move(parts)); }

// Brute-force oracle: multiply the class sums in the full group algebra and
// read off coefficients, independent of the representative-and-count method.
Partition type_of(const std::vector<int>& p) {
  std::vector<int> seen(p.size(), 0), parts;
  for (std::size_t s = 0; s < p.size(); ++s) {
    int len = 0;
    for (int x = static_cast<int>(s); !seen[x]; x = p[x]) {
      seen[x] = 1;
      ++len;
    }
    if (len) parts.push_back(len);
  }
  return Partition::from(parts);
}

std::map<Partition, long long> brute_product(const Partition& l, const Partition& m, int n) {
  std::vector<std::vector<int>> cl, cm;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    const Partition t = type_of(p);
    if (t == l) cl.push_back(p);
    if (t == m) cm.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<Partition, long long> hits;
  std::vector<int> gh(n);
  for (const auto& g : cl)
    for (const auto& h : cm) {
      for (int x = 0; x < n; ++x) gh[x] = g[h[x]];
      ++hits[type_of(gh)];
    }
  std::map<Partition, long long> out;
  for (const auto& [nu, c] : hits) out[nu] = c / class_size(nu).get_si();
  return out;
}

// Euler's pentagonal recurrence.
long long partition_count(int n) {
  std::vector<long long> p(n + 1, 0);
  p[0] = 1;
  for (int m = 1; m <= n; ++m)
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
      if (g1 > m) break;
      const long long s = k % 2 ? 1 : -1;
      p[m] += s * p[m - g1];
      if (g2 <= m) p[m] += s * p[m - g2];
    }
  return p[n];
}

}  // namespace

TEST(ClassAlgebra, PartitionParsing) {
  EXPECT_EQ(Partition::parse("2,1").parts, (std::vector<int>{2, 1}));
  EXPECT_EQ(Partition::parse("[1,3]").parts, (std::vector<int>{3, 1}));
  EXPECT_EQ(Partition::parse("2,1^3").parts, (std::vector<int>{2, 1, 1, 1}));
  EXPECT_THROW(Partition::parse("2,x"), ParseError);
  EXPECT_THROW(Partition::parse("2,0"), ParseError);
  EXPECT_THROW(Partition::parse(""), ParseError);
  EXPECT_EQ(P({1, 2, 1}).to_string(), "[2,1,1]");
}

TEST(ClassAlgebra, PartitionCounts) {
  for (int n = 0; n <= 12; ++n) EXPECT_EQ(static_cast<long long>(partitions_of(n).size()), partition_count(n));
  EXPECT_EQ(partitions_of(8).size(), 22u);
  EXPECT_EQ(partitions_of(3).front(), P({1, 1, 1}));
  EXPECT_EQ(partitions_of(3).back(), P({3}));
}

TEST(ClassAlgebra, ClassSize) {
  EXPECT_EQ(class_size(P({2, 1})), 3);
  EXPECT_EQ(class_size(P({3})), 2);
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(class_size(Partition{std::vector<int>(n, 1)}), 1);
  for (int n = 1; n <= 7; ++n) {
    const ClassAlgebra alg(n);
    mpz_class total = 0, fac;
    mpz_fac_ui(fac.get_mpz_t(), n);
    for (const auto& l : alg.partitions()) {
      EXPECT_EQ(class_size(l), alg.enumerated_size(l)) << l.to_string();
      total += class_size(l);
    }
    EXPECT_EQ(total, fac);
  }
}

TEST(ClassAlgebra, FhDegree) {
  EXPECT_EQ(fh_degree(P({1, 1, 1, 1})), 0);
  EXPECT_EQ(fh_degree(P({3})), 2);
  EXPECT_EQ(fh_degree(P({2, 2})), 2);
}

TEST(ClassAlgebra, S3Product) {
  const CentralElement sq = class_product(P({2, 1}), P({2, 1}), 3);
  EXPECT_EQ(sq, CentralElement::class_sum(P({1, 1, 1}), 3) + CentralElement::class_sum(P({3}), 3));
  EXPECT_EQ(sq.to_string(), "3*C[1,1,1] + 3*C[3]");
}

TEST(ClassAlgebra, S4Examples) {
  const CentralElement sq = class_product(P({2, 1, 1}), P({2, 1, 1}), 4);
  EXPECT_GT(sq.coeff(P({2, 2})), Rational(0));
  for (const auto& l : partitions_of(4))
    EXPECT_EQ(class_product(P({1, 1, 1, 1}), l, 4), CentralElement::class_sum(l));
}

TEST(ClassAlgebra, MatchesBruteForce) {
  for (int n = 1; n <= 5; ++n) {
    const ClassAlgebra alg(n);
    for (const auto& l : alg.partitions())
      for (const auto& m : alg.partitions()) {
        const auto expected = brute_product(l, m, n);
        const CentralElement got = alg.product(l, m);
        EXPECT_EQ(got.coeffs.size(), expected.size());
        for (const auto& [nu, c] : expected) EXPECT_EQ(got.coeff(nu), Rational(c)) << l.to_string() << m.to_string();
      }
  }
}

TEST(ClassAlgebra, StructureConstantInvariants) {
  for (int n = 2; n <= 7; ++n) {
    const ClassAlgebra alg(n);
    const CentralElement id = CentralElement::identity(n);
    for (const auto& l : alg.partitions()) {
      EXPECT_EQ(alg.multiply(id, CentralElement::class_sum(l)), CentralElement::class_sum(l));
      for (const auto& m : alg.partitions()) {
        const auto c = alg.structure(l, m);
        EXPECT_EQ(c, alg.structure(m, l));
        for (long long x : c) EXPECT_GE(x, 0);
        // |C_l||C_m| = sum_nu c^nu |C_nu|
        mpz_class total = 0;
        for (std::size_t v = 0; v < c.size(); ++v) total += mpz_class(static_cast<long>(c[v])) * class_size(alg.partitions()[v]);
        EXPECT_EQ(total, class_size(l) * class_size(m));
      }
    }
  }
}

TEST(ClassAlgebra, Associativity) {
  const ClassAlgebra alg(5);
  const auto& ps = alg.partitions();
  for (const auto& a : ps)
    for (const auto& b : ps)
      for (const auto& c : ps) {
        const CentralElement A = CentralElement::class_sum(a), B = CentralElement::class_sum(b),
                             C = CentralElement::class_sum(c);
        EXPECT_EQ(alg.multiply(alg.multiply(A, B), C), alg.multiply(A, alg.multiply(B, C)));
      }
}

TEST(ClassAlgebra, BAnalog) {
  EXPECT_EQ(b_analog(0, 4), CentralElement::identity(4));
  EXPECT_EQ(b_analog(1, 3), CentralElement::class_sum(P({2, 1})));
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(b_analog(n - 1, n), CentralElement::class_sum(P({n})));
  EXPECT_THROW(b_analog(3, 3), IndexError);
  EXPECT_THROW(b_analog(-1, 3), IndexError);
}

TEST(ClassAlgebra, Cap) {
  EXPECT_THROW(ClassAlgebra(10), CapExceeded);
  EXPECT_THROW(class_product(P({10}), P({10}), 10), CapExceeded);
  EXPECT_THROW(ClassAlgebra(5, 4), CapExceeded);
  EXPECT_NO_THROW(ClassAlgebra(3, 3));
  EXPECT_THROW(class_algebra(3).index_of(P({2, 2})), DomainError);
}

TEST(ClassAlgebra, GenerationClosure) {
  for (int n = 2; n <= 8; ++n) {
    const ClosureReport r = generation_closure(class_algebra(n), hook_generators(n));
    EXPECT_TRUE(r.generated) << "n=" << n;
    EXPECT_EQ(r.dimension, partition_count(n));
    EXPECT_EQ(r.dims.back(), r.dimension);
    EXPECT_TRUE(std::is_sorted(r.fh_profile.begin(), r.fh_profile.end()));
    EXPECT_EQ(r.fh_profile.back(), n - 1);
  }
  const ClosureReport r3 = generation_closure(class_algebra(3), hook_generators(3));
  EXPECT_EQ(r3.dimension, 3);
  EXPECT_EQ(r3.rounds, 0);
  EXPECT_EQ(generation_closure(class_algebra(4), hook_generators(4)).dimension, 5);
}

TEST(ClassAlgebra, ClosureIsJobIndependent) {
  const ClosureReport a = generation_closure(class_algebra(7), hook_generators(7), 1);
  const ClosureReport b = generation_closure(class_algebra(7), hook_generators(7), 3);
  EXPECT_EQ(a.dims, b.dims);
  EXPECT_EQ(a.fh_profile, b.fh_profile);
}

// C_{(2,1^{n-2})} acts on the irreducible labelled by lambda by its content
// sum, so it alone generates the center iff the content sums are distinct.
TEST(ClassAlgebra, ClosureFromTranspositionsOnly) {
  for (int n = 2; n <= 8; ++n) {
    std::set<int> sums;
    for (const auto& l : partitions_of(n)) {
      int s = 0;
      for (int row = 0; row < l.length(); ++row)
        for (int col = 0; col < l.parts[row]; ++col) s += col - row;
      sums.insert(s);
    }
    const bool distinct = sums.size() == partitions_of(n).size();
    const ClosureReport r = generation_closure(class_algebra(n), {b_analog(1, n)});
    EXPECT_EQ(r.generated, distinct) << "n=" << n;
  }
}

TEST(ClassAlgebra, Subadditivity) {
  for (int n = 1; n <= ClassAlgebra::kDefaultCap; ++n) {
    const SubadditivityReport r = subadditivity_check(class_algebra(n));
    EXPECT_TRUE(r.ok()) << "n=" << n << " " << (r.violations.empty() ? "" : r.violations.front());
    EXPECT_GT(r.pairs_checked, 0);
  }
}

TEST(ClassAlgebra, DropGeneratorDiagnosticRuns) {
  for (int n = 3; n <= 8; ++n) {
    const ClosureReport r = drop_generator_diagnostic(class_algebra(n));
    EXPECT_EQ(r.generators.size(), static_cast<std::size_t>(n - 1));
    EXPECT_LE(r.dimension, r.target);
  }
  EXPECT_THROW(drop_generator_diagnostic(class_algebra(2)), DomainError);
}

// Over the point algebra, weight-n Fock monomials correspond to partitions of
// n, with cohomological degree twice the fh degree.
TEST(ClassAlgebra, PointAlgebraCorrespondence) {
  auto point = load_preset("point");
  for (int n = 1; n <= 8; ++n) {
    std::map<int, int> fock_by_degree, class_by_degree;
    for (const auto& m : monomial_basis(n, *point)) ++fock_by_degree[m.degree(*point)];
    for (const auto& l : partitions_of(n)) ++class_by_degree[2 * fh_degree(l)];
    EXPECT_EQ(fock_by_degree, class_by_degree) << "n=" << n;
  }
}
