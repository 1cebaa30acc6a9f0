#ifndef HILBERT_GENERATORS_HPP
#define HILBERT_GENERATORS_HPP

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hilbert/heisenberg.hpp"
#include "hilbert/relations.hpp"

namespace hilbert {

/// q_1(1)^n |0>
inline FockVector q1_unit_power(const SurfaceAlgebra& alg, int n) {
  FockMonomial m;
  for (int j = 0; j < n; ++j) m = m.inserted(m.length(), 1, alg.unit());
  return FockVector::monomial(m);
}

/// 1_{X^[n]} = (1/n!) q_1(1)^n |0>
inline FockVector vacuum_unit(const SurfaceAlgebra& alg, int n) {
  if (n < 0) throw IndexError("n must be nonnegative");
  return Rational(1) / factorial(n) * q1_unit_power(alg, n);
}

struct GeneratorClass {
  char kind;  // 'B' or 'G'
  int i;
  AlgebraElement gamma;
  int n;
  FockVector value;
};

/// B_i(gamma, n) = 1/(n-i-1)! q_{i+1}(gamma) q_1(1)^{n-i-1} |0>
inline GeneratorClass b_class(const SurfaceAlgebra& alg, int i, const AlgebraElement& gamma, int n) {
  if (i < 0 || i >= n) throw IndexError("B_i(gamma, n) needs 0 <= i < n, got i = " + std::to_string(i) + ", n = " +
                                        std::to_string(n));
  const FockVector base = q1_unit_power(alg, n - i - 1);
  FockVector v = heisenberg_apply(alg, i + 1, gamma, base, n);
  v *= Rational(1) / factorial(n - i - 1);
  return {'B', i, gamma, n, std::move(v)};
}

/// q_1^{(k)}(alpha): the k-th derivative of q_1(alpha).
inline Operator q1_kth_bracket(const OperatorCalculus& calc, int k, const AlgebraElement& alpha) {
  return calc.derivative(calc.q(1, alpha), k);
}

/// The action of G_k(gamma) on the span of monomials whose parts all have
/// size 1, determined by G_k(gamma)|0> = 0 and
/// G_k(gamma)(q_1(b) w) = 1/k! q_1^{(k)}(gamma b)(w) + (-1)^{|gamma||b|} q_1(b) G_k(gamma)(w).
class FormalG {
 public:
  FormalG(const OperatorCalculus& calc, int k, const AlgebraElement& gamma) : calc_(calc), k_(k) {
    if (k < 0) throw DomainError("G_k needs k >= 0");
    const auto& alg = calc.algebra();
    std::map<int, AlgebraElement> by_degree;
    for (const auto& [idx, c] : gamma.terms()) by_degree[alg.degree(idx)].add(idx, c);
    const Rational inv = Rational(1) / factorial(k);
    for (const auto& [deg, part] : by_degree) {
      Component comp{deg & 1, {}};
      for (int c = 0; c < alg.dim(); ++c) {
        const AlgebraElement prod = alg.mul(part, alg.element(c));
        comp.heads.push_back(prod.is_zero() ? std::nullopt
                                            : std::optional<Operator>(scaled(inv, q1_kth_bracket(calc, k, prod))));
      }
      components_.push_back(std::move(comp));
    }
  }

  FockVector apply(const FockVector& v) const {
    VectorBuilder out;
    for (const auto& [m, c] : v.terms()) {
      for (int t = 0; t < m.length(); ++t)
        if (m.part(t).size != 1)
          throw DomainError("G_k is only determined on the q_1-span; input has a part of size " +
                            std::to_string(m.part(t).size));
      for (std::size_t j = 0; j < components_.size(); ++j) out.add(on_monomial(j, m), c);
    }
    return out.finish();
  }

 private:
  struct Component {
    int parity;
    std::vector<std::optional<Operator>> heads;  // per basis color of the first factor
  };

  const FockVector& on_monomial(std::size_t j, const FockMonomial& m) const {
    auto key = std::make_pair(j, m);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    VectorBuilder out;
    if (!m.empty()) {
      const auto& alg = calc_.algebra();
      const ColoredPart head = m.part(0);
      const FockMonomial rest = m.tail();
      const Component& comp = components_[j];
      if (comp.heads[head.color]) comp.heads[head.color]->accumulate(rest, 1, out, m.weight());
      const bool negative = comp.parity && alg.odd(head.color);
      for (const auto& [m2, c2] : on_monomial(j, rest).terms())
        create_basis(alg, 1, head.color, m2, negative ? -c2 : c2, out, m.weight());
    }
    return memo_.emplace(key, out.finish()).first->second;
  }

  const OperatorCalculus& calc_;
  int k_;
  std::vector<Component> components_;
  mutable std::map<std::pair<std::size_t, FockMonomial>, FockVector> memo_;
};

inline FockVector apply_formal_g(const OperatorCalculus& calc, int k, const AlgebraElement& gamma, const FockVector& v) {
  return FormalG(calc, k, gamma).apply(v);
}

/// G_k(gamma, n) = (1/n!) G_k(gamma)(q_1(1)^n |0>)
inline GeneratorClass g_class(const OperatorCalculus& calc, int k, const AlgebraElement& gamma, int n) {
  if (k < 0 || n < 0) throw IndexError("G_k(gamma, n) needs k >= 0 and n >= 0");
  FockVector v = apply_formal_g(calc, k, gamma, q1_unit_power(calc.algebra(), n));
  v *= Rational(1) / factorial(n);
  return {'G', k, gamma, n, std::move(v)};
}

// ---------------------------------------------------------------------------
// Expansion of g(A) for A = q_{m_1}(b_1) ... q_{m_b}(b_b)|0> by moving g to
// the right through the factors, stopping once a factors have been absorbed
// into the iterated commutator.

/// Returns [...[g, q(f_1)], ..., q(f_i)] for the listed factors, or nullopt.
using BracketOracle = std::function<std::optional<Operator>(const std::vector<ColoredPart>& factors)>;

inline BracketOracle direct_brackets(const OperatorCalculus& calc, const Operator& g) {
  return [&calc, g](const std::vector<ColoredPart>& factors) -> std::optional<Operator> {
    Operator h = g;
    for (const auto& f : factors) h = supercommutator(h, calc.q(f.size, f.color));
    return h;
  };
}

inline FockVector expand_commutators(const SurfaceAlgebra& alg, int g_parity, int a, const FockMonomial& A,
                                  const BracketOracle& oracle, int truncation = kMaxParts) {
  const int b = A.length();
  if (a < 1 || a > b) throw DomainError("expansion needs 1 <= a <= b, got a = " + std::to_string(a) +
                                        ", b = " + std::to_string(b));
  std::vector<ColoredPart> parts(b);
  for (int j = 0; j < b; ++j) parts[j] = A.part(j);
  VectorBuilder out;
  std::vector<int> chosen;
  // Applies the creation factors `left` (in order) to v.
  auto prepend = [&](const std::vector<int>& left, FockVector v) {
    for (auto it = left.rbegin(); it != left.rend(); ++it) {
      VectorBuilder next;
      for (const auto& [m, c] : v.terms()) create_basis(alg, parts[*it].size, parts[*it].color, m, c, next, truncation);
      v = next.finish();
    }
    return v;
  };
  auto emit = [&](bool stop_at_last) {
    // sign: each unchosen factor passed by the commutator h contributes
    // (-1)^{parity(h) |b_j|}, where parity(h) = s + parities of factors absorbed so far
    const int limit = stop_at_last ? chosen.back() : b;
    int parity = g_parity & 1;
    bool negative = false;
    std::size_t next_chosen = 0;
    std::vector<int> left;
    for (int j = 0; j < limit; ++j) {
      if (next_chosen < chosen.size() && chosen[next_chosen] == j) {
        parity ^= alg.odd(parts[j].color);
        ++next_chosen;
        continue;
      }
      if (parity && alg.odd(parts[j].color)) negative = !negative;
      left.push_back(j);
    }
    std::vector<ColoredPart> factors;
    for (int j : chosen) factors.push_back(parts[j]);
    auto h = oracle(factors);
    if (!h) throw OracleMissing("no iterated commutator available for " + std::to_string(factors.size()) + " factors");
    FockVector right = FockVector::vacuum();
    if (stop_at_last) {
      std::vector<int> tail;
      for (int j = chosen.back() + 1; j < b; ++j) tail.push_back(j);
      right = prepend(tail, right);
    }
    FockVector v = prepend(left, h->apply(right, truncation));
    out.add(v, negative ? Rational(-1) : Rational(1));
  };
  std::function<void(int)> rec = [&](int from) {
    const int i = static_cast<int>(chosen.size());
    if (i == a) {
      emit(true);
      return;
    }
    emit(false);
    for (int j = from; j < b; ++j) {
      chosen.push_back(j);
      rec(j + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return out.finish();
}

// ---------------------------------------------------------------------------

/// [...[G_k(gamma), q_1(a_1)], ..., q_1(a_{k+1})] = (-1)^k q_{k+1}(gamma a_1 ... a_{k+1}),
/// with the innermost bracket replaced by 1/k! q_1^{(k)}(gamma a_1).
inline IdentityInstance all_ones_instance(const OperatorCalculus& calc, int k, const AlgebraElement& gamma,
                                            const std::vector<AlgebraElement>& alphas) {
  if (static_cast<int>(alphas.size()) != k + 1) throw DomainError("need k + 1 classes");
  const auto& alg = calc.algebra();
  Operator h = scaled(Rational(1) / factorial(k), q1_kth_bracket(calc, k, alg.mul(gamma, alphas[0])));
  AlgebraElement prod = alg.mul(gamma, alphas[0]);
  std::string label = "all-ones k=" + std::to_string(k) + " gamma=" + alg.render(gamma) + " alphas=" + alg.render(alphas[0]);
  for (std::size_t l = 1; l < alphas.size(); ++l) {
    h = supercommutator(h, calc.q(1, alphas[l]));
    prod = alg.mul(prod, alphas[l]);
    label += "," + alg.render(alphas[l]);
  }
  const Operator rhs = operator_sum(k + 1, h.degree_shift().value_or(0),
                                    {{k % 2 ? Rational(-1) : Rational(1), calc.q(k + 1, prod)}});
  return {label, h, rhs};
}

inline RelationReport all_ones_check(const OperatorCalculus& calc, int k, const AlgebraElement& gamma,
                                       const std::vector<AlgebraElement>& alphas, int truncation) {
  RelationReport r = check_identities(calc.algebra(), {all_ones_instance(calc, k, gamma, alphas)}, truncation);
  r.suite = "all-ones";
  r.parameters = {{"k", std::to_string(k)}};
  return r;
}

struct FiltrationReport {
  int i;
  AlgebraElement gamma;
  int n;
  FockVector difference;  // B_i - (-1)^i (i+1)! G_i
  bool support_bound;     // fh_support_bound(difference, i - 1)
  FockMonomial leading_monomial;
  Rational leading;   // coefficient in G_i
  Rational expected;  // (-1)^i / ((i+1)! (n-i-1)!)
  bool leading_ok() const { return leading == expected; }
};

inline FiltrationReport filtration_compare(const OperatorCalculus& calc, int i, int gamma_index, int n) {
  const auto& alg = calc.algebra();
  if (i < 0 || i >= n) throw IndexError("filtration comparison needs 0 <= i < n");
  const AlgebraElement gamma = alg.element(gamma_index);
  const GeneratorClass b = b_class(alg, i, gamma, n);
  const GeneratorClass g = g_class(calc, i, gamma, n);
  const Rational sign = i % 2 ? -1 : 1;
  FiltrationReport r{i, gamma, n, b.value - (sign * factorial(i + 1)) * g.value, false, {}, 0, 0};
  r.support_bound = fh_support_bound(r.difference, i - 1);
  FockMonomial m = q1_unit_power(alg, n - i - 1).terms().front().first;
  r.leading_monomial = m.inserted(m.lower_bound(i + 1, gamma_index), i + 1, gamma_index);
  r.leading = g.value.coeff(r.leading_monomial);
  r.expected = sign / (factorial(i + 1) * factorial(n - i - 1));
  return r;
}

// ---------------------------------------------------------------------------
// Suite drivers

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

inline void record(RelationReport& r, std::string identity, std::string input, std::string difference) {
  ++r.discrepancy_count;
  if (r.discrepancies.size() < RelationReport::kMaxRecorded)
    r.discrepancies.push_back({std::move(identity), std::move(input), std::move(difference)});
}

inline std::vector<int> classes_or_all(const SurfaceAlgebra& alg, const std::vector<int>& classes) {
  if (!classes.empty()) return classes;
  std::vector<int> all(alg.dim());
  for (int k = 0; k < alg.dim(); ++k) all[k] = k;
  return all;
}

}  // namespace detail

/// The operators g used to exercise the expansion: q_2(a), L_1(a) for each
/// listed class a, L_0(1) and d.
inline std::vector<Operator> expansion_operators(const OperatorCalculus& calc, const std::vector<int>& classes = {}) {
  std::vector<Operator> gs;
  for (int a : detail::classes_or_all(calc.algebra(), classes)) {
    gs.push_back(calc.q(2, a));
    gs.push_back(calc.virasoro(1, a));
  }
  gs.push_back(calc.virasoro(0, calc.algebra().unit()));
  gs.push_back(calc.boundary());
  return gs;
}

/// Compares the expansion for 1 <= a <= min(a_max, b) with g applied directly,
/// on every nonvacuum basis monomial of weight <= N - peak(g).
inline RelationReport verify_expansion(const OperatorCalculus& calc, int truncation, int jobs = 1, int a_max = 3,
                                      const std::vector<int>& classes = {}) {
  const auto start = std::chrono::steady_clock::now();
  const auto& alg = calc.algebra();
  const std::vector<Operator> gs = expansion_operators(calc, classes);
  const std::vector<FockMonomial> basis = monomial_basis_upto(truncation, alg);
  auto partial = parallel_map(gs.size(), jobs, [&](std::size_t k) {
    const Operator& g = gs[k];
    RelationReport r;
    const BracketOracle oracle = direct_brackets(calc, g);
    const int parity = g.require_parity();
    for (const auto& m : basis) {
      if (m.empty()) continue;
      if (m.weight() > truncation - g.peak()) break;
      const FockVector direct = g.apply(m, truncation);
      for (int a = 1; a <= std::min(a_max, m.length()); ++a) {
        ++r.checked_count;
        const FockVector diff = expand_commutators(alg, parity, a, m, oracle, truncation) - direct;
        if (!diff.is_zero())
          detail::record(r, g.name() + " a=" + std::to_string(a), render_monomial(alg, m), render(alg, diff));
      }
    }
    r.identities.push_back({g.name(), r.checked_count, r.discrepancy_count});
    return r;
  });
  RelationReport report;
  report.suite = "expansion";
  report.algebra = alg.name();
  report.truncation = truncation;
  report.parameters = {{"a_max", std::to_string(a_max)}, {"operators", std::to_string(gs.size())}};
  if (!classes.empty()) report.parameters.push_back({"classes", detail::class_list(alg, classes)});
  for (auto& r : partial) report.merge(std::move(r));
  report.wall_time = detail::seconds_since(start);
  return report;
}

/// B_0(1, n) = n 1_{X^[n]}, G_0(g, n) = B_0(g, n) and B_1(g, n) = -2 G_1(g, n)
/// for 1 <= n <= n_max and every basis class g.
inline RelationReport verify_generator_classes(const OperatorCalculus& calc, int n_max) {
  const auto start = std::chrono::steady_clock::now();
  const auto& alg = calc.algebra();
  RelationReport r;
  r.suite = "generators";
  r.algebra = alg.name();
  r.truncation = n_max;
  r.parameters = {{"n_max", std::to_string(n_max)}};
  r.identities = {{"B_0(1,n) = n 1"}, {"G_0 = B_0"}, {"B_1 = -2 G_1"}};
  auto compare = [&](const std::string& identity, const std::string& input, const FockVector& diff) {
    auto& count = *std::find_if(r.identities.begin(), r.identities.end(),
                                [&](const IdentityCount& c) { return c.label == identity; });
    ++r.checked_count;
    ++count.checked;
    if (diff.is_zero()) return;
    ++count.discrepancies;
    detail::record(r, identity, input, render(alg, diff));
  };
  for (int n = 1; n <= n_max; ++n) {
    const std::string at = "n=" + std::to_string(n);
    compare("B_0(1,n) = n 1", at, b_class(alg, 0, alg.one(), n).value - Rational(n) * vacuum_unit(alg, n));
    for (int g = 0; g < alg.dim(); ++g) {
      const AlgebraElement gamma = alg.element(g);
      const std::string input = "gamma=" + alg.id(g) + " " + at;
      compare("G_0 = B_0", input, g_class(calc, 0, gamma, n).value - b_class(alg, 0, gamma, n).value);
      if (n >= 2)
        compare("B_1 = -2 G_1", input,
                b_class(alg, 1, gamma, n).value + Rational(2) * g_class(calc, 1, gamma, n).value);
    }
  }
  r.wall_time = detail::seconds_since(start);
  return r;
}

/// Leading coefficient of G_i(g, n) on q_{i+1}(g) q_1(1)^{n-i-1} |0> for
/// 2 <= i < n <= n_max and every basis class g. Discrepancies are coefficient
/// mismatches; the filtration proxy is counted in the parameters.
inline RelationReport verify_leading_terms(const OperatorCalculus& calc, int n_max) {
  const auto start = std::chrono::steady_clock::now();
  const auto& alg = calc.algebra();
  RelationReport r;
  r.suite = "leading";
  r.algebra = alg.name();
  r.truncation = n_max;
  long long proxy_ok = 0, proxy_total = 0;
  std::string proxy_failures;
  for (int n = 3; n <= n_max; ++n)
    for (int i = 2; i < n; ++i) {
      IdentityCount count{"leading coefficient i=" + std::to_string(i) + " n=" + std::to_string(n)};
      for (int g = 0; g < alg.dim(); ++g) {
        const FiltrationReport f = filtration_compare(calc, i, g, n);
        const std::string input = "i=" + std::to_string(i) + " gamma=" + alg.id(g) + " n=" + std::to_string(n);
        ++r.checked_count;
        ++count.checked;
        if (!f.leading_ok()) {
          ++count.discrepancies;
          detail::record(r, "leading coefficient", input,
                         "got " + f.leading.to_string() + ", expected " + f.expected.to_string());
        }
        ++proxy_total;
        if (f.support_bound) ++proxy_ok;
        else if (proxy_failures.size() < 200) proxy_failures += (proxy_failures.empty() ? "" : "; ") + input;
      }
      r.identities.push_back(std::move(count));
    }
  r.parameters = {{"n_max", std::to_string(n_max)},
                  {"fh_proxy", std::to_string(proxy_ok) + "/" + std::to_string(proxy_total)}};
  if (!proxy_failures.empty()) r.parameters.push_back({"fh_proxy_failures", proxy_failures});
  r.wall_time = detail::seconds_since(start);
  return r;
}

/// Tuples (gamma; a_1, ..., a_{k+1}) for the all-ones identity, drawn from the
/// listed classes (all classes when empty).
inline std::vector<IdentityInstance> all_ones_instances(const OperatorCalculus& calc, int k_max,
                                                  const std::vector<int>& classes = {}) {
  const auto& alg = calc.algebra();
  const std::vector<int> pool = detail::classes_or_all(alg, classes);
  std::vector<IdentityInstance> out;
  for (int k = 0; k <= k_max; ++k) {
    std::vector<std::size_t> idx(k + 2, 0);
    while (true) {
      const AlgebraElement gamma = alg.element(pool[idx[0]]);
      std::vector<AlgebraElement> alphas;
      for (int l = 1; l <= k + 1; ++l) alphas.push_back(alg.element(pool[idx[l]]));
      out.push_back(all_ones_instance(calc, k, gamma, alphas));
      int pos = k + 1;
      while (pos >= 0 && ++idx[pos] == pool.size()) idx[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return out;
}

inline RelationReport verify_all_ones(const OperatorCalculus& calc, int k_max, int truncation, int jobs = 1,
                                const std::vector<int>& classes = {}) {
  const std::vector<IdentityInstance> instances = all_ones_instances(calc, k_max, classes);
  RelationReport r = check_identities(calc.algebra(), instances, truncation, jobs);
  r.suite = "all-ones";
  r.parameters = {{"k_max", std::to_string(k_max)}};
  if (!classes.empty()) r.parameters.push_back({"classes", detail::class_list(calc.algebra(), classes)});
  r.parameters.push_back({"instances", std::to_string(instances.size())});
  return r;
}

}  // namespace hilbert

#endif  // HILBERT_GENERATORS_HPP
