#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "hilbert/fock.hpp"

using namespace hilbert;

namespace {

FockMonomial mono(const SurfaceAlgebra& alg, std::vector<std::pair<int, std::string>> parts) {
  std::vector<ColoredPart> raw;
  for (const auto& [s, id] : parts) raw.push_back({s, alg.index_of(id)});
  const FockVector v = canonicalize_parts(alg, raw);
  EXPECT_EQ(v.size(), 1u);
  return v.terms().front().first;
}

// Count of colored partitions of n: parts of each size come in even colors
// with any multiplicity and odd colors at most once.
std::vector<long long> colored_partition_counts(const SurfaceAlgebra& alg, int n) {
  int even = 0, odd = 0;
  for (int i = 0; i < alg.dim(); ++i) (alg.odd(i) ? odd : even)++;
  std::vector<long long> f(n + 1, 0);
  f[0] = 1;
  for (int s = 1; s <= n; ++s) {
    for (int e = 0; e < even; ++e)
      for (int w = s; w <= n; ++w) f[w] += f[w - s];
    for (int o = 0; o < odd; ++o)
      for (int w = n; w >= s; --w) f[w] += f[w - s];
  }
  return f;
}

}  // namespace

TEST(Fock, CanonicalizeExamples) {
  auto p2 = load_preset("p2");
  const int h = p2->index_of("h");
  FockVector v = canonicalize_parts(*p2, {{1, h}, {2, h}});
  EXPECT_EQ(v, FockVector::monomial(mono(*p2, {{2, "h"}, {1, "h"}})));
  EXPECT_EQ(render(*p2, v), "1 * q_2(h) q_1(h) |0>");

  auto t = load_preset("torus_like");
  const int x1 = t->index_of("x1"), x2 = t->index_of("x2");
  EXPECT_TRUE(canonicalize_parts(*t, {{1, x1}, {1, x1}}).is_zero());
  FockVector w = canonicalize_parts(*t, {{1, x2}, {1, x1}});
  EXPECT_EQ(w, FockVector::monomial(mono(*t, {{1, "x1"}, {1, "x2"}}), -1));
  EXPECT_EQ(render(*t, w), "-1 * q_1(x1) q_1(x2) |0>");

  EXPECT_THROW(canonicalize_parts(*p2, {{0, h}}), InvalidPart);
  EXPECT_THROW(canonicalize(*p2, {{-1, p2->one()}}), InvalidPart);
}

TEST(Fock, CanonicalizeIsMultilinear) {
  auto p2 = load_preset("p2");
  const AlgebraElement a = p2->parse_element("1 + 2*h");
  FockVector v = canonicalize(*p2, {{1, a}, {1, p2->element(p2->index_of("h"))}});
  FockVector expected = FockVector::monomial(mono(*p2, {{1, "1"}, {1, "h"}})) +
                        FockVector::monomial(mono(*p2, {{1, "h"}, {1, "h"}}), 2);
  EXPECT_EQ(v, expected);
}

// Every ordering of the factors canonicalizes to the same monomial, with the
// sign of the permutation restricted to odd factors.
TEST(Fock, CanonicalizeIsPermutationConsistent) {
  auto t = load_preset("torus_like");
  const std::vector<ColoredPart> parts = {{2, t->index_of("x1")}, {1, t->index_of("x12")}, {1, t->index_of("x3")},
                                          {1, t->index_of("x123")}, {3, t->index_of("x4")}};
  const FockVector base = canonicalize_parts(*t, parts);
  ASSERT_EQ(base.size(), 1u);
  std::vector<int> perm(parts.size());
  std::iota(perm.begin(), perm.end(), 0);
  int count = 0;
  do {
    std::vector<ColoredPart> shuffled;
    for (int i : perm) shuffled.push_back(parts[i]);
    int inversions = 0;
    for (std::size_t a = 0; a < perm.size(); ++a)
      for (std::size_t b = a + 1; b < perm.size(); ++b)
        if (perm[a] > perm[b] && t->odd(parts[perm[a]].color) && t->odd(parts[perm[b]].color)) ++inversions;
    const FockVector v = canonicalize_parts(*t, shuffled);
    EXPECT_EQ(v, (inversions % 2 ? Rational(-1) : Rational(1)) * base);
    // idempotence
    EXPECT_EQ(canonicalize_parts(*t, [&] {
                std::vector<ColoredPart> p;
                const FockMonomial& m = v.terms().front().first;
                for (int i = 0; i < m.length(); ++i) p.push_back(m.part(i));
                return p;
              }()),
              FockVector::monomial(v.terms().front().first));
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_EQ(count, 120);
}

TEST(Fock, Bidegree) {
  auto p2 = load_preset("p2");
  const auto b = bidegree(*p2, FockVector::monomial(mono(*p2, {{2, "h"}})));
  ASSERT_TRUE(std::holds_alternative<Bidegree>(b));
  EXPECT_EQ(std::get<Bidegree>(b), (Bidegree{2, 4}));
  EXPECT_EQ(std::get<Bidegree>(bidegree(*p2, FockVector::vacuum())), (Bidegree{0, 0}));
  const FockVector mixed =
      FockVector::monomial(mono(*p2, {{1, "1"}})) + FockVector::monomial(mono(*p2, {{2, "1"}}));
  EXPECT_TRUE(std::holds_alternative<Mixed>(bidegree(*p2, mixed)));
}

TEST(Fock, MonomialBasis) {
  auto p2 = load_preset("p2");
  EXPECT_EQ(monomial_basis(2, *p2).size(), 9u);
  auto zero = monomial_basis(0, *p2);
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_TRUE(zero.front().empty());
  auto pt = load_preset("point");
  auto one = monomial_basis(1, *pt);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(render_monomial(*pt, one.front()), "q_1(1) |0>");
}

TEST(Fock, DimensionsMatchColoredPartitionCounts) {
  for (const auto& [name, top] : {std::pair{"p2", 8}, {"p1xp1", 7}, {"torus_like", 5}, {"point", 10}}) {
    auto alg = load_preset(name);
    const auto counts = colored_partition_counts(*alg, top);
    for (int n = 0; n <= top; ++n) {
      const auto basis = monomial_basis(n, *alg);
      EXPECT_EQ(static_cast<long long>(basis.size()), counts[n]) << name << " n=" << n;
      EXPECT_TRUE(std::is_sorted(basis.begin(), basis.end()));
      EXPECT_TRUE(std::adjacent_find(basis.begin(), basis.end()) == basis.end());
      for (const auto& m : basis) {
        EXPECT_EQ(m.weight(), n);
        EXPECT_EQ(canonicalize_parts(*alg, [&] {
                    std::vector<ColoredPart> p;
                    for (int i = 0; i < m.length(); ++i) p.push_back(m.part(i));
                    return p;
                  }()),
                  FockVector::monomial(m));
      }
    }
  }
}

TEST(Fock, InnerProductExamples) {
  auto p2 = load_preset("p2");
  auto v = [&](std::vector<std::pair<int, std::string>> p) { return FockVector::monomial(mono(*p2, p)); };
  EXPECT_EQ(inner_product(*p2, v({{1, "h"}}), v({{1, "h"}})), Rational(1));
  EXPECT_EQ(inner_product(*p2, v({{2, "1"}}), v({{1, "1"}, {1, "1"}})), Rational(0));
  EXPECT_EQ(inner_product(*p2, v({{2, "1"}}), v({{2, "h2"}})), Rational(-2));
  EXPECT_EQ(inner_product(*p2, FockVector::vacuum(), FockVector::vacuum()), Rational(1));
}

TEST(Fock, GramNondegenerateAndSuperSymmetric) {
  for (const auto& [name, top] : {std::pair{"p2", 5}, {"p1xp1", 4}, {"torus_like", 3}}) {
    auto alg = load_preset(name);
    const int td = alg->top_degree();
    for (int n = 0; n <= top; ++n) {
      for (int i = 0; i <= td * n; ++i) {
        const auto rows = piece_basis(n, td * n - i, *alg);
        const auto cols = piece_basis(n, i, *alg);
        ASSERT_EQ(rows.size(), cols.size()) << name << " (" << n << "," << i << ")";
        if (cols.empty()) continue;
        const Matrix g = gram_matrix(*alg, rows, cols);
        EXPECT_EQ(g.rank(), static_cast<int>(cols.size())) << name << " (" << n << "," << i << ")";
        // gram_matrix agrees with the operational form and is super-symmetric
        const Matrix gt = gram_matrix(*alg, cols, rows);
        const bool odd = (i & 1) && ((td * n - i) & 1);
        for (std::size_t r = 0; r < rows.size(); ++r)
          for (std::size_t c = 0; c < cols.size(); ++c) {
            const Rational direct =
                inner_product(*alg, FockVector::monomial(rows[r]), FockVector::monomial(cols[c]));
            EXPECT_EQ(g(r, c), direct);
            EXPECT_EQ(gt(c, r), odd ? -direct : direct);
          }
      }
    }
  }
}

TEST(Fock, FormVanishesAcrossBidegrees) {
  auto p2 = load_preset("p2");
  const auto basis = monomial_basis_upto(3, *p2);
  for (const auto& a : basis)
    for (const auto& b : basis) {
      if (a.weight() == b.weight() && a.degree(*p2) + b.degree(*p2) == 4 * a.weight()) continue;
      EXPECT_TRUE(inner_product(*p2, FockVector::monomial(a), FockVector::monomial(b)).is_zero());
    }
}

TEST(Fock, FhSupportBound) {
  auto p2 = load_preset("p2");
  const FockVector v = FockVector::monomial(mono(*p2, {{3, "h"}, {1, "1"}}));
  EXPECT_TRUE(fh_support_bound(v, 2));
  EXPECT_FALSE(fh_support_bound(v, 1));
  EXPECT_TRUE(fh_support_bound(FockVector(), 0));
}

TEST(Fock, CreationRespectsTruncation) {
  auto p2 = load_preset("p2");
  VectorBuilder out;
  EXPECT_THROW(create_basis(*p2, 3, 0, mono(*p2, {{2, "1"}}), 1, out, 4), TruncationExceeded);
  EXPECT_NO_THROW(create_basis(*p2, 2, 0, mono(*p2, {{2, "1"}}), 1, out, 4));
}
