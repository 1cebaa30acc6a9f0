#ifndef HILBERT_RELATIONS_HPP
#define HILBERT_RELATIONS_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hilbert/heisenberg.hpp"
#include "hilbert/parallel.hpp"

namespace hilbert {

struct Discrepancy {
  std::string identity;
  std::string input;
  std::string difference;
};

struct IdentityCount {
  std::string label;
  long long checked = 0;
  long long discrepancies = 0;
};

struct RelationReport {
  std::string suite;
  std::string algebra;
  std::vector<std::pair<std::string, std::string>> parameters;
  int truncation = 0;
  long long checked_count = 0;
  long long discrepancy_count = 0;
  std::vector<Discrepancy> discrepancies;  // first kMaxRecorded only
  std::vector<IdentityCount> identities;   // per identity, in instance order
  double wall_time = 0;

  static constexpr std::size_t kMaxRecorded = 50;
  bool passed() const { return discrepancy_count == 0; }

  void merge(RelationReport other) {
    checked_count += other.checked_count;
    discrepancy_count += other.discrepancy_count;
    for (auto& d : other.discrepancies)
      if (discrepancies.size() < kMaxRecorded) discrepancies.push_back(std::move(d));
    for (auto& c : other.identities) identities.push_back(std::move(c));
  }
};

/// lhs == rhs, to be checked on basis monomials.
struct IdentityInstance {
  std::string label;
  Operator lhs;
  Operator rhs;
};

/// Checks every instance on all basis monomials of weight <= N - peak, where
/// peak bounds how far either side rises above the input weight.
inline RelationReport check_identities(const SurfaceAlgebra& alg, const std::vector<IdentityInstance>& instances,
                                       int truncation, int jobs = 1) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<FockMonomial> basis = monomial_basis_upto(truncation, alg);
  auto partial = parallel_map(instances.size(), jobs, [&](std::size_t k) {
    const IdentityInstance& inst = instances[k];
    RelationReport r;
    VectorBuilder builder;
    const int bound = truncation - std::max(inst.lhs.peak(), inst.rhs.peak());
    for (const auto& m : basis) {
      if (m.weight() > bound) break;
      ++r.checked_count;
      builder.clear();
      inst.lhs.accumulate(m, 1, builder, truncation);
      inst.rhs.accumulate(m, -1, builder, truncation);
      if (builder.empty()) continue;
      const FockVector diff = builder.finish();
      if (diff.is_zero()) continue;
      ++r.discrepancy_count;
      if (r.discrepancies.size() < RelationReport::kMaxRecorded)
        r.discrepancies.push_back({inst.label, render_monomial(alg, m), render(alg, diff)});
    }
    r.identities.push_back({inst.label, r.checked_count, r.discrepancy_count});
    return r;
  });
  RelationReport report;
  report.algebra = alg.name();
  report.truncation = truncation;
  for (auto& r : partial) report.merge(std::move(r));
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// Sum of coeff * op with a fixed weight shift; empty sums give the zero map.
inline Operator operator_sum(int weight_shift, int degree_shift, std::vector<std::pair<Rational, Operator>> parts) {
  parts.erase(std::remove_if(parts.begin(), parts.end(), [](const auto& p) { return p.first.is_zero(); }), parts.end());
  if (parts.empty()) return zero_operator(weight_shift, degree_shift);
  return linear_combination(parts);
}

struct RelationRanges {
  int n_max = 3;
  int m_max = 3;
  std::vector<int> left;   // basis indices for alpha; empty means all
  std::vector<int> right;  // basis indices for beta; empty means all
};

inline std::vector<int> all_classes(const SurfaceAlgebra& alg) {
  std::vector<int> v(alg.dim());
  for (int i = 0; i < alg.dim(); ++i) v[i] = i;
  return v;
}

inline std::vector<int> even_classes(const SurfaceAlgebra& alg) {
  std::vector<int> v;
  for (int i = 0; i < alg.dim(); ++i)
    if (!alg.odd(i)) v.push_back(i);
  return v;
}

namespace detail {

inline std::string class_list(const SurfaceAlgebra& alg, const std::vector<int>& v) {
  std::string s;
  for (int i : v) s += (s.empty() ? "" : ",") + alg.id(i);
  return s;
}

inline std::string label(const std::string& kind, int n, int m, const SurfaceAlgebra& alg, int a, int b) {
  return kind + " n=" + std::to_string(n) + " m=" + std::to_string(m) + " alpha=" + alg.id(a) + " beta=" + alg.id(b);
}

}  // namespace detail

/// [q_n(a), q_m(b)] = n delta_{n+m} int(ab) Id
inline std::vector<IdentityInstance> heisenberg_instances(const OperatorCalculus& calc, const RelationRanges& r) {
  const auto& alg = calc.algebra();
  const auto left = r.left.empty() ? all_classes(alg) : r.left;
  const auto right = r.right.empty() ? all_classes(alg) : r.right;
  std::vector<IdentityInstance> out;
  for (int n = -r.n_max; n <= r.n_max; ++n)
    for (int m = -r.m_max; m <= r.m_max; ++m) {
      if (n == 0 || m == 0) continue;
      for (int a : left)
        for (int b : right) {
          const Operator qa = calc.q(n, a), qb = calc.q(m, b);
          const Rational c = n + m == 0 ? Rational(n) * alg.integral(alg.mul_basis(a, b)) : Rational(0);
          out.push_back({detail::label("[q,q]", n, m, alg, a, b), supercommutator(qa, qb),
                         operator_sum(n + m, *qa.degree_shift() + *qb.degree_shift(), {{c, identity_operator()}})});
        }
    }
  return out;
}

/// [L_n(a), q_m(b)] = -m q_{n+m}(ab)
inline std::vector<IdentityInstance> lq_instances(const OperatorCalculus& calc, const RelationRanges& r) {
  const auto& alg = calc.algebra();
  const auto left = r.left.empty() ? all_classes(alg) : r.left;
  const auto right = r.right.empty() ? all_classes(alg) : r.right;
  std::vector<IdentityInstance> out;
  for (int n = -r.n_max; n <= r.n_max; ++n)
    for (int m = -r.m_max; m <= r.m_max; ++m) {
      if (m == 0) continue;
      for (int a : left)
        for (int b : right) {
          const Operator la = calc.virasoro(n, a), qb = calc.q(m, b);
          const int deg = *la.degree_shift() + *qb.degree_shift();
          out.push_back({detail::label("[L,q]", n, m, alg, a, b), supercommutator(la, qb),
                         operator_sum(n + m, deg, {{Rational(-m), calc.q(n + m, alg.mul_basis(a, b))}})});
        }
    }
  return out;
}

/// [L_n(a), L_m(b)] = (n-m) L_{n+m}(ab) - (n^3-n)/12 delta_{n+m} int(c2 ab) Id
/// Central term of [L_n(a), L_m(b)]: -(n^3 - n)/12 * int e_X a b when n + m = 0.
inline Rational ll_central_term(const SurfaceAlgebra& alg, int n, int m, int a, int b) {
  if (n + m != 0) return 0;
  return -Rational(n * n * n - n, 12) * alg.integral(alg.mul(alg.euler_class(), alg.mul_basis(a, b)));
}

inline std::vector<IdentityInstance> ll_instances(const OperatorCalculus& calc, const RelationRanges& r) {
  const auto& alg = calc.algebra();
  const auto left = r.left.empty() ? even_classes(alg) : r.left;
  const auto right = r.right.empty() ? even_classes(alg) : r.right;
  std::vector<IdentityInstance> out;
  for (int n = -r.n_max; n <= r.n_max; ++n)
    for (int m = -r.m_max; m <= r.m_max; ++m)
      for (int a : left)
        for (int b : right) {
          const Operator la = calc.virasoro(n, a), lb = calc.virasoro(m, b);
          const AlgebraElement ab = alg.mul_basis(a, b);
          const Rational central = ll_central_term(alg, n, m, a, b);
          const int deg = *la.degree_shift() + *lb.degree_shift();
          out.push_back({detail::label("[L,L]", n, m, alg, a, b), supercommutator(la, lb),
                         operator_sum(n + m, deg,
                                      {{Rational(n - m), calc.virasoro(n + m, ab)}, {central, identity_operator()}})});
        }
  return out;
}

/// q_n(a)' = n L_n(a) + n(|n|-1)/2 q_n(K a)
inline std::vector<IdentityInstance> qprime_instances(const OperatorCalculus& calc, const RelationRanges& r) {
  const auto& alg = calc.algebra();
  const auto left = r.left.empty() ? all_classes(alg) : r.left;
  std::vector<IdentityInstance> out;
  for (int n = -r.n_max; n <= r.n_max; ++n) {
    if (n == 0) continue;
    for (int a : left) {
      const Operator lhs = calc.derivative(calc.q(n, a), 1);
      const AlgebraElement ka = alg.mul(alg.canonical_class(), alg.element(a));
      out.push_back({"q' n=" + std::to_string(n) + " alpha=" + alg.id(a), lhs,
                     operator_sum(n, *lhs.degree_shift(),
                                  {{Rational(n), calc.virasoro(n, a)},
                                   {Rational(n * (std::abs(n) - 1), 2), calc.q(n, ka)}})});
    }
  }
  return out;
}

inline RelationReport verify_relations(const std::string& suite, const OperatorCalculus& calc,
                                       const RelationRanges& ranges, int truncation, int jobs = 1) {
  std::vector<IdentityInstance> instances;
  if (suite == "heisenberg")
    instances = heisenberg_instances(calc, ranges);
  else if (suite == "Lq")
    instances = lq_instances(calc, ranges);
  else if (suite == "LL")
    instances = ll_instances(calc, ranges);
  else if (suite == "qprime")
    instances = qprime_instances(calc, ranges);
  else
    throw DomainError("unknown relation suite '" + suite + "'");
  RelationReport report = check_identities(calc.algebra(), instances, truncation, jobs);
  report.suite = suite;
  const auto& alg = calc.algebra();
  report.parameters = {{"n_max", std::to_string(ranges.n_max)}, {"m_max", std::to_string(ranges.m_max)}};
  if (!ranges.left.empty()) report.parameters.push_back({"alpha", detail::class_list(alg, ranges.left)});
  if (!ranges.right.empty()) report.parameters.push_back({"beta", detail::class_list(alg, ranges.right)});
  report.parameters.push_back({"instances", std::to_string(instances.size())});
  if (suite == "LL") {
    std::string central;
    for (int n = 1; n <= std::min(ranges.n_max, ranges.m_max); ++n)
      for (int a : ranges.left.empty() ? even_classes(alg) : ranges.left)
        for (int b : ranges.right.empty() ? even_classes(alg) : ranges.right) {
          const Rational c = ll_central_term(alg, n, -n, a, b);
          if (!c.is_zero())
            central += (central.empty() ? "" : "; ") + std::string("n=") + std::to_string(n) + " alpha=" + alg.id(a) +
                       " beta=" + alg.id(b) + ": " + c.to_string();
        }
    report.parameters.push_back({"central_terms", central.empty() ? "all 0" : central});
  }
  return report;
}

/// d is self-adjoint: (d a, b) = (a, d b) for all basis a, b of complementary
/// pieces (n, i), (n, top n - i - 2), n <= N. Both sides are assembled from
/// the sparse pairing partners of the terms of d a and d b.
inline RelationReport verify_boundary_self_adjoint(const OperatorCalculus& calc, int truncation, int jobs = 1) {
  const auto start = std::chrono::steady_clock::now();
  const auto& alg = calc.algebra();
  const int top = alg.top_degree();
  struct Piece {
    int n, i;
  };
  std::vector<Piece> pieces;
  for (int n = 0; n <= truncation; ++n)
    for (int i = 0; i + 2 <= top * n; ++i) pieces.push_back({n, i});
  using Table = std::map<std::pair<FockMonomial, FockMonomial>, Rational>;
  auto partial = parallel_map(pieces.size(), jobs, [&](std::size_t k) {
    RelationReport r;
    const auto [n, i] = pieces[k];
    const auto as = piece_basis(n, i, alg);
    const auto bs = piece_basis(n, top * n - i - 2, alg);
    r.checked_count = static_cast<long long>(as.size() * bs.size());
    // (d a, b): b runs over right partners t of d a; (t, b) = (-1)^{|t||b|} (b, t)
    Table lhs, rhs;
    for (const auto& a : as)
      for (const auto& [t, c] : calc.boundary().apply(a, truncation).terms()) {
        const bool flip = (t.degree(alg) & 1) && ((top * n - i - 2) & 1);
        for (const auto& [b, x] : left_partners(alg, t)) lhs[{a, b}] += flip ? -(c * x) : c * x;
      }
    // (a, d b): a runs over left partners of the terms of d b
    for (const auto& b : bs)
      for (const auto& [t, c] : calc.boundary().apply(b, truncation).terms())
        for (const auto& [a, x] : left_partners(alg, t)) rhs[{a, b}] += c * x;
    auto drop_zeros = [](Table& t) {
      for (auto it = t.begin(); it != t.end();) it = it->second.is_zero() ? t.erase(it) : std::next(it);
    };
    drop_zeros(lhs);
    drop_zeros(rhs);
    auto record = [&](const FockMonomial& a, const FockMonomial& b, const Rational& diff) {
      ++r.discrepancy_count;
      if (r.discrepancies.size() < RelationReport::kMaxRecorded)
        r.discrepancies.push_back(
            {"(d a, b) = (a, d b)", render_monomial(alg, a) + " , " + render_monomial(alg, b), diff.to_string()});
    };
    for (const auto& [key, x] : lhs) {
      auto it = rhs.find(key);
      const Rational y = it == rhs.end() ? Rational(0) : it->second;
      if (!(x == y)) record(key.first, key.second, x - y);
    }
    for (const auto& [key, y] : rhs)
      if (!lhs.count(key)) record(key.first, key.second, -y);
    r.identities.push_back({"(d a, b) = (a, d b) on (" + std::to_string(n) + "," + std::to_string(i) + ")",
                            r.checked_count, r.discrepancy_count});
    return r;
  });
  RelationReport report;
  report.suite = "dself";
  report.algebra = alg.name();
  report.truncation = truncation;
  for (auto& r : partial) report.merge(std::move(r));
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace hilbert

#endif  // HILBERT_RELATIONS_HPP
