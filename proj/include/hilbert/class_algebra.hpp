#ifndef HILBERT_CLASS_ALGEBRA_HPP
#define HILBERT_CLASS_ALGEBRA_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hilbert/error.hpp"
#include "hilbert/matrix.hpp"
#include "hilbert/parallel.hpp"
#include "hilbert/rational.hpp"

namespace hilbert {

/// A partition of n, parts weakly decreasing. Indexes the conjugacy classes
/// of S_n.
struct Partition {
  std::vector<int> parts;

  /// Sorts into decreasing order; every part must be positive.
  static Partition from(std::vector<int> parts) {
    for (int p : parts)
      if (p <= 0) throw DomainError("partition parts must be positive, got " + std::to_string(p));
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return Partition{std::move(parts)};
  }

  /// Accepts "2,1,1", "[2,1,1]" and exponent shorthand "2,1^2".
  static Partition parse(std::string_view text) {
    std::string s(text);
    if (!s.empty() && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
    std::vector<int> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto caret = item.find('^');
      try {
        std::size_t used = 0;
        const std::string base = item.substr(0, caret);
        const int part = std::stoi(base, &used);
        if (used != base.size()) throw std::invalid_argument(item);
        int reps = 1;
        if (caret != std::string::npos) {
          const std::string exp = item.substr(caret + 1);
          reps = std::stoi(exp, &used);
          if (used != exp.size() || reps < 0) throw std::invalid_argument(item);
        }
        parts.insert(parts.end(), reps, part);
      } catch (const std::logic_error&) {
        throw ParseError("bad partition '" + std::string(text) + "'");
      }
    }
    if (parts.empty()) throw ParseError("empty partition '" + std::string(text) + "'");
    try {
      return from(std::move(parts));
    } catch (const DomainError& e) {
      throw ParseError(e.what());
    }
  }

  int size() const { return std::accumulate(parts.begin(), parts.end(), 0); }
  int length() const { return static_cast<int>(parts.size()); }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? "," : "") + std::to_string(parts[k]);
    return out + "]";
  }

  friend auto operator<=>(const Partition&, const Partition&) = default;
};

/// All partitions of n in increasing lexicographic order, so (1^n) first and (n) last.
inline std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int left, int max_part) -> void {
    if (left == 0) {
      out.push_back(Partition{cur});
      return;
    }
    for (int p = 1; p <= std::min(left, max_part); ++p) {
      cur.push_back(p);
      self(self, left - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  std::sort(out.begin(), out.end());
  return out;
}

/// (i+1, 1^{n-i-1})
inline Partition hook_partition(int i, int n) {
  if (i < 0 || i >= n) throw IndexError("hook (i+1, 1^(n-i-1)) needs 0 <= i < n, got i = " + std::to_string(i) +
                                        ", n = " + std::to_string(n));
  std::vector<int> parts(n - i, 1);
  parts[0] = i + 1;
  return Partition{std::move(parts)};
}

/// n!/z_lambda
inline mpz_class class_size(const Partition& lambda) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(lambda.size()));
  std::map<int, int> mult;
  for (int p : lambda.parts) ++mult[p];
  for (const auto& [k, m] : mult) {
    mpz_class f, pw;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(m));
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(m));
    out /= f * pw;
  }
  return out;
}

inline int fh_degree(const Partition& lambda) { return lambda.size() - lambda.length(); }

/// An element of the center of Q[S_n] in the class-sum basis.
struct CentralElement {
  int n = 0;
  std::map<Partition, Rational> coeffs;

  static CentralElement class_sum(const Partition& lambda, Rational c = 1) {
    CentralElement e{lambda.size(), {}};
    if (!c.is_zero()) e.coeffs.emplace(lambda, std::move(c));
    return e;
  }
  static CentralElement identity(int n) { return class_sum(Partition{std::vector<int>(n, 1)}); }

  bool is_zero() const { return coeffs.empty(); }
  Rational coeff(const Partition& lambda) const {
    auto it = coeffs.find(lambda);
    return it == coeffs.end() ? Rational(0) : it->second;
  }

  CentralElement& add(const Partition& lambda, const Rational& c) {
    if (c.is_zero()) return *this;
    auto [it, fresh] = coeffs.emplace(lambda, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) coeffs.erase(it);
    }
    return *this;
  }
  CentralElement& operator+=(const CentralElement& o) {
    for (const auto& [l, c] : o.coeffs) add(l, c);
    return *this;
  }
  friend CentralElement operator+(CentralElement a, const CentralElement& b) { return a += b; }
  friend CentralElement operator*(const Rational& s, CentralElement a) {
    if (s.is_zero()) return CentralElement{a.n, {}};
    for (auto& [l, c] : a.coeffs) c *= s;
    return a;
  }
  friend bool operator==(const CentralElement& a, const CentralElement& b) {
    return a.n == b.n && a.coeffs == b.coeffs;
  }

  int max_fh_degree() const {
    int out = -1;
    for (const auto& [l, c] : coeffs) out = std::max(out, fh_degree(l));
    return out;
  }

  /// "3*C[1,1,1] + 3*C[3]"; lowest partition first.
  std::string to_string() const {
    if (coeffs.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [l, c] : coeffs) {
      const bool neg = c < Rational(0);
      if (first) out += neg ? "-" : "";
      else out += neg ? " - " : " + ";
      out += (neg ? -c : c).to_string() + "*C" + l.to_string();
      first = false;
    }
    return out;
  }
};

/// b_analog(i, n) = C_{(i+1, 1^{n-i-1})}
inline CentralElement b_analog(int i, int n) { return CentralElement::class_sum(hook_partition(i, n)); }

/// Structure constants of the class algebra of S_n. For each target class nu
/// with representative w, c_{lambda mu}^nu counts g in C_lambda with g^{-1}w in
/// C_mu. One sweep over C_lambda fills every (mu, nu) at once; sweeps are
/// memoized per lambda.
class ClassAlgebra {
 public:
  static constexpr int kDefaultCap = 9;

  explicit ClassAlgebra(int n, int cap = kDefaultCap) : n_(n) {
    if (n < 0) throw DomainError("symmetric group rank must be >= 0, got " + std::to_string(n));
    if (n > cap)
      throw CapExceeded("S_" + std::to_string(n) + " exceeds the class-algebra cap " + std::to_string(cap));
    partitions_ = partitions_of(n);
    for (std::size_t k = 0; k < partitions_.size(); ++k) index_[type_key(partitions_[k].parts)] = static_cast<int>(k);
    enumerate();
    rows_.resize(partitions_.size());
  }

  int n() const { return n_; }
  const std::vector<Partition>& partitions() const { return partitions_; }
  std::size_t dim() const { return partitions_.size(); }

  int index_of(const Partition& lambda) const {
    if (lambda.size() != n_)
      throw DomainError("partition " + lambda.to_string() + " is not a partition of " + std::to_string(n_));
    return index_.at(type_key(lambda.parts));
  }

  /// Number of permutations in C_lambda, from the enumeration.
  std::size_t enumerated_size(const Partition& lambda) const { return members_[index_of(lambda)].size(); }

  /// c_{lambda mu}^nu for every nu, indexed like partitions().
  std::vector<long long> structure(const Partition& lambda, const Partition& mu) const {
    const int l = index_of(lambda), m = index_of(mu);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      if (rows_[l]) return (*rows_[l])[m];
      if (rows_[m]) return (*rows_[m])[l];
    }
    const int sweep = members_[l].size() <= members_[m].size() ? l : m;
    auto row = std::make_shared<Row>(sweep_class(sweep));
    std::lock_guard<std::mutex> lock(mutex_);
    if (!rows_[sweep]) rows_[sweep] = row;
    return (*rows_[sweep])[sweep == l ? m : l];
  }

  CentralElement product(const Partition& lambda, const Partition& mu) const {
    const std::vector<long long> c = structure(lambda, mu);
    CentralElement out{n_, {}};
    for (std::size_t v = 0; v < c.size(); ++v)
      if (c[v]) out.coeffs.emplace(partitions_[v], Rational(c[v]));
    return out;
  }

  CentralElement multiply(const CentralElement& a, const CentralElement& b) const {
    check(a);
    check(b);
    std::vector<Rational> acc(dim());
    for (const auto& [la, ca] : a.coeffs)
      for (const auto& [lb, cb] : b.coeffs) {
        const std::vector<long long> c = structure(la, lb);
        const Rational s = ca * cb;
        for (std::size_t v = 0; v < c.size(); ++v)
          if (c[v]) acc[v] += s * Rational(c[v]);
      }
    return from_coordinates(acc);
  }

  std::vector<Rational> coordinates(const CentralElement& e) const {
    check(e);
    std::vector<Rational> out(dim());
    for (const auto& [l, c] : e.coeffs) out[index_of(l)] = c;
    return out;
  }

  CentralElement from_coordinates(const std::vector<Rational>& v) const {
    CentralElement out{n_, {}};
    for (std::size_t k = 0; k < v.size(); ++k)
      if (!v[k].is_zero()) out.coeffs.emplace(partitions_[k], v[k]);
    return out;
  }

 private:
  using Row = std::vector<std::vector<long long>>;  // [mu][nu]

  void check(const CentralElement& e) const {
    if (e.n != n_)
      throw DomainError("central element of S_" + std::to_string(e.n) + " used in S_" + std::to_string(n_));
  }

  std::uint64_t type_key(const std::vector<int>& parts) const {
    std::vector<std::uint64_t> mult(n_ + 1, 0);
    for (int p : parts) ++mult[p];
    std::uint64_t key = 0;
    for (int k = n_; k >= 1; --k) key = key * static_cast<std::uint64_t>(n_ + 1) + mult[k];
    return key;
  }

  int cycle_type(const std::uint8_t* p) const {
    std::vector<std::uint64_t> mult(n_ + 1, 0);
    std::uint32_t seen = 0;
    for (int s = 0; s < n_; ++s) {
      if (seen >> s & 1u) continue;
      int len = 0;
      for (int x = s; !(seen >> x & 1u); x = p[x]) {
        seen |= 1u << x;
        ++len;
      }
      ++mult[len];
    }
    std::uint64_t key = 0;
    for (int k = n_; k >= 1; --k) key = key * static_cast<std::uint64_t>(n_ + 1) + mult[k];
    return index_.at(key);
  }

  void enumerate() {
    members_.assign(partitions_.size(), {});
    std::vector<std::uint8_t> p(n_);
    std::iota(p.begin(), p.end(), 0);
    do {
      const int t = cycle_type(p.data());
      const std::size_t at = perms_.size();
      perms_.insert(perms_.end(), p.begin(), p.end());
      members_[t].push_back(at);
    } while (std::next_permutation(p.begin(), p.end()));
    // one representative per class: consecutive cycles on 0..n-1
    for (const auto& lambda : partitions_) {
      std::vector<std::uint8_t> w(n_);
      int start = 0;
      for (int len : lambda.parts) {
        for (int k = 0; k < len; ++k) w[start + k] = static_cast<std::uint8_t>(start + (k + 1) % len);
        start += len;
      }
      reps_.push_back(std::move(w));
    }
  }

  Row sweep_class(int l) const {
    Row row(dim(), std::vector<long long>(dim(), 0));
    std::vector<std::uint8_t> inv(n_), h(n_);
    for (std::size_t v = 0; v < dim(); ++v) {
      const std::vector<std::uint8_t>& w = reps_[v];
      for (std::size_t at : members_[l]) {
        const std::uint8_t* g = perms_.data() + at;
        for (int x = 0; x < n_; ++x) inv[g[x]] = static_cast<std::uint8_t>(x);
        for (int x = 0; x < n_; ++x) h[x] = inv[w[x]];
        ++row[cycle_type(h.data())][v];
      }
    }
    return row;
  }

  int n_;
  std::vector<Partition> partitions_;
  std::unordered_map<std::uint64_t, int> index_;
  std::vector<std::uint8_t> perms_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<std::vector<std::uint8_t>> reps_;
  mutable std::mutex mutex_;
  mutable std::vector<std::shared_ptr<const Row>> rows_;
};

/// Shared per-rank instance, so repeated free-function calls reuse memoized sweeps.
inline const ClassAlgebra& class_algebra(int n, int cap = ClassAlgebra::kDefaultCap) {
  if (n > cap) throw CapExceeded("S_" + std::to_string(n) + " exceeds the class-algebra cap " + std::to_string(cap));
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<ClassAlgebra>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<ClassAlgebra>(n, std::max(n, 0));
  return *slot;
}

inline CentralElement class_product(const Partition& lambda, const Partition& mu, int n,
                                    int cap = ClassAlgebra::kDefaultCap) {
  return class_algebra(n, cap).product(lambda, mu);
}

struct ClosureReport {
  int n = 0;
  std::vector<std::string> generators;
  int rounds = 0;
  std::vector<int> dims;        // span dimension after each round, starting with the seed span
  std::vector<int> fh_profile;  // max fh_degree over the span's support, per round
  int dimension = 0;
  int target = 0;  // p(n)
  bool generated = false;
};

/// Span closure of {identity} and the generators under multiplication.
/// Each round multiplies the vectors added in the previous round by every
/// generator.
inline ClosureReport generation_closure(const ClassAlgebra& alg, const std::vector<CentralElement>& generators,
                                        int jobs = 1) {
  ClosureReport r;
  r.n = alg.n();
  r.target = static_cast<int>(alg.dim());
  EchelonBasis span(alg.dim());
  std::vector<CentralElement> frontier;
  auto max_fh = [&] {
    int out = -1;
    for (const auto& row : span.rows())
      out = std::max(out, alg.from_coordinates(row).max_fh_degree());
    return out;
  };
  auto offer = [&](const CentralElement& e, std::vector<CentralElement>& added) {
    if (span.insert(alg.coordinates(e))) added.push_back(e);
  };
  offer(CentralElement::identity(alg.n()), frontier);
  for (const auto& g : generators) {
    r.generators.push_back(g.to_string());
    offer(g, frontier);
  }
  r.dims.push_back(static_cast<int>(span.rank()));
  r.fh_profile.push_back(max_fh());
  while (!frontier.empty() && span.rank() < alg.dim()) {
    const std::size_t count = frontier.size() * generators.size();
    const auto products = parallel_map(count, jobs, [&](std::size_t k) {
      return alg.multiply(frontier[k / generators.size()], generators[k % generators.size()]);
    });
    std::vector<CentralElement> added;
    for (const auto& p : products) offer(p, added);
    if (added.empty()) break;
    frontier = std::move(added);
    ++r.rounds;
    r.dims.push_back(static_cast<int>(span.rank()));
    r.fh_profile.push_back(max_fh());
  }
  r.dimension = static_cast<int>(span.rank());
  r.generated = r.dimension == r.target;
  return r;
}

/// The hook classes C_{(i+1, 1^{n-i-1})}, 0 <= i < n.
inline std::vector<CentralElement> hook_generators(int n) {
  std::vector<CentralElement> out;
  for (int i = 0; i < n; ++i) out.push_back(b_analog(i, n));
  return out;
}

/// Closure without C_{(2, 1^{n-2})}; the outcome is reported, not asserted.
inline ClosureReport drop_generator_diagnostic(const ClassAlgebra& alg, int jobs = 1) {
  if (alg.n() < 3) throw DomainError("drop-generator diagnostic needs n >= 3");
  std::vector<CentralElement> gens;
  for (int i = 0; i < alg.n(); ++i)
    if (i != 1) gens.push_back(b_analog(i, alg.n()));
  return generation_closure(alg, gens, jobs);
}

struct SubadditivityReport {
  int n = 0;
  long long pairs_checked = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Every nu in the support of C_lambda C_mu has fh(nu) <= fh(lambda) + fh(mu).
inline SubadditivityReport subadditivity_check(const ClassAlgebra& alg) {
  SubadditivityReport r;
  r.n = alg.n();
  const auto& ps = alg.partitions();
  for (std::size_t a = 0; a < ps.size(); ++a)
    for (std::size_t b = a; b < ps.size(); ++b) {
      ++r.pairs_checked;
      const int bound = fh_degree(ps[a]) + fh_degree(ps[b]);
      const std::vector<long long> c = alg.structure(ps[a], ps[b]);
      for (std::size_t v = 0; v < c.size(); ++v)
        if (c[v] && fh_degree(ps[v]) > bound)
          r.violations.push_back("C" + ps[a].to_string() + " * C" + ps[b].to_string() + " hits C" +
                                 ps[v].to_string());
    }
  return r;
}

}  // namespace hilbert

#endif  // HILBERT_CLASS_ALGEBRA_HPP
