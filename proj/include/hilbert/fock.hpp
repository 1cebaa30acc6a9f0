#ifndef HILBERT_FOCK_HPP
#define HILBERT_FOCK_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hilbert/error.hpp"
#include "hilbert/matrix.hpp"
#include "hilbert/rational.hpp"
#include "hilbert/surface_algebra.hpp"

namespace hilbert {

inline constexpr int kMaxParts = 16;
inline constexpr int kMaxPartSize = 64;

/// q_size(e_color)
struct ColoredPart {
  int size;
  int color;
  friend bool operator==(const ColoredPart&, const ColoredPart&) = default;
};

/// Canonical monomial q_{i1}(e_{j1}) ... q_{ik}(e_{jk}) |0>: sizes weakly
/// decreasing, colors weakly increasing among equal sizes. Parts are packed
/// into 16-bit keys whose ascending order is the canonical order.
class FockMonomial {
 public:
  FockMonomial() = default;

  static constexpr std::uint16_t key(int size, int color) {
    return static_cast<std::uint16_t>(((255 - size) << 8) | color);
  }
  static constexpr int key_size(std::uint16_t k) { return 255 - (k >> 8); }
  static constexpr int key_color(std::uint16_t k) { return k & 0xff; }

  int length() const { return len_; }
  int weight() const { return weight_; }
  bool empty() const { return len_ == 0; }
  ColoredPart part(int i) const { return {key_size(keys_[i]), key_color(keys_[i])}; }
  std::uint16_t raw_key(int i) const { return keys_[i]; }

  /// Cohomological degree: sum of 2(size - 1) + deg(color).
  int degree(const SurfaceAlgebra& alg) const {
    int d = 0;
    for (int i = 0; i < len_; ++i) d += 2 * (part(i).size - 1) + alg.degree(part(i).color);
    return d;
  }

  /// Sum of (size - 1) over parts.
  int excess() const { return weight_ - len_; }

  /// Inserts at position `pos` (caller keeps canonical order).
  FockMonomial inserted(int pos, int size, int color) const {
    if (len_ >= kMaxParts) throw TruncationExceeded("monomial exceeds " + std::to_string(kMaxParts) + " parts");
    FockMonomial m;
    m.len_ = static_cast<std::uint8_t>(len_ + 1);
    m.weight_ = static_cast<std::uint8_t>(weight_ + size);
    std::copy(keys_.begin(), keys_.begin() + pos, m.keys_.begin());
    m.keys_[pos] = key(size, color);
    std::copy(keys_.begin() + pos, keys_.begin() + len_, m.keys_.begin() + pos + 1);
    return m;
  }

  FockMonomial erased(int pos) const {
    FockMonomial m;
    m.len_ = static_cast<std::uint8_t>(len_ - 1);
    m.weight_ = static_cast<std::uint8_t>(weight_ - part(pos).size);
    std::copy(keys_.begin(), keys_.begin() + pos, m.keys_.begin());
    std::copy(keys_.begin() + pos + 1, keys_.begin() + len_, m.keys_.begin() + pos);
    return m;
  }

  /// First position whose key is >= key(size, color).
  int lower_bound(int size, int color) const {
    const std::uint16_t k = key(size, color);
    return static_cast<int>(std::lower_bound(keys_.begin(), keys_.begin() + len_, k) - keys_.begin());
  }

  /// Drops the first part.
  FockMonomial tail() const { return erased(0); }

  /// Graded-lex order: weight, then partition (larger parts first), then colors.
  friend bool operator<(const FockMonomial& a, const FockMonomial& b) {
    if (a.weight_ != b.weight_) return a.weight_ < b.weight_;
    return std::lexicographical_compare(a.keys_.begin(), a.keys_.begin() + a.len_, b.keys_.begin(),
                                        b.keys_.begin() + b.len_);
  }
  friend bool operator==(const FockMonomial& a, const FockMonomial& b) {
    return a.len_ == b.len_ && std::equal(a.keys_.begin(), a.keys_.begin() + a.len_, b.keys_.begin());
  }

  std::size_t hash() const {
    std::size_t h = len_;
    for (int i = 0; i < len_; ++i) h = h * 1000003u ^ keys_[i];
    return h;
  }

 private:
  std::array<std::uint16_t, kMaxParts> keys_{};
  std::uint8_t len_ = 0;
  std::uint8_t weight_ = 0;
};

struct FockMonomialHash {
  std::size_t operator()(const FockMonomial& m) const { return m.hash(); }
};

/// Exact linear combination of canonical monomials, sorted, no zero terms.
class FockVector {
 public:
  using Term = std::pair<FockMonomial, Rational>;

  FockVector() = default;
  static FockVector vacuum() {
    FockVector v;
    v.terms_.push_back({FockMonomial(), Rational(1)});
    return v;
  }
  static FockVector monomial(const FockMonomial& m, Rational c = 1) {
    FockVector v;
    if (!c.is_zero()) v.terms_.push_back({m, std::move(c)});
    return v;
  }
  /// Takes terms already sorted, merged and nonzero.
  static FockVector from_sorted(std::vector<Term> terms) {
    FockVector v;
    v.terms_ = std::move(terms);
    return v;
  }

  const std::vector<Term>& terms() const& { return terms_; }
  std::vector<Term> terms() && { return std::move(terms_); }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coeff(const FockMonomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const FockMonomial& x) { return t.first < x; });
    return it != terms_.end() && it->first == m ? it->second : Rational(0);
  }

  int max_weight() const {
    int w = 0;
    for (const auto& t : terms_) w = std::max(w, t.first.weight());
    return w;
  }

  FockVector& operator*=(const Rational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.second *= s;
    return *this;
  }
  friend FockVector operator*(const Rational& s, FockVector v) { return v *= s; }

  friend FockVector operator+(const FockVector& a, const FockVector& b) { return combine(a, b, 1); }
  friend FockVector operator-(const FockVector& a, const FockVector& b) { return combine(a, b, -1); }
  FockVector& operator+=(const FockVector& o) { return *this = combine(*this, o, 1); }
  FockVector& operator-=(const FockVector& o) { return *this = combine(*this, o, -1); }

  friend bool operator==(const FockVector& a, const FockVector& b) { return a.terms_ == b.terms_; }

 private:
  static FockVector combine(const FockVector& a, const FockVector& b, int sign) {
    std::vector<Term> out;
    out.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
        out.push_back(*i++);
      } else if (i == a.terms_.end() || j->first < i->first) {
        out.push_back({j->first, sign < 0 ? -j->second : j->second});
        ++j;
      } else {
        Rational c = sign < 0 ? i->second - j->second : i->second + j->second;
        if (!c.is_zero()) out.push_back({i->first, std::move(c)});
        ++i;
        ++j;
      }
    }
    FockVector v;
    v.terms_ = std::move(out);
    return v;
  }

  std::vector<Term> terms_;
};

/// Unordered term accumulator; finish() sorts and merges.
class VectorBuilder {
 public:
  void add(const FockMonomial& m, Rational c) {
    if (!c.is_zero()) terms_.emplace_back(m, std::move(c));
  }
  void add(const FockVector& v, const Rational& scale = 1) {
    for (const auto& [m, c] : v.terms()) add(m, c * scale);
  }
  bool empty() const { return terms_.empty(); }
  void clear() { terms_.clear(); }

  FockVector finish() {
    if (terms_.size() > 1) {
      std::sort(terms_.begin(), terms_.end(),
                [](const FockVector::Term& a, const FockVector::Term& b) { return a.first < b.first; });
      // merge equal monomials in place
      std::size_t w = 0;
      for (std::size_t r = 0; r < terms_.size(); ++r) {
        if (w > 0 && terms_[w - 1].first == terms_[r].first) {
          terms_[w - 1].second += terms_[r].second;
          if (terms_[w - 1].second.is_zero()) --w;
        } else {
          if (w != r) terms_[w] = std::move(terms_[r]);
          ++w;
        }
      }
      terms_.resize(w);
    }
    FockVector v = FockVector::from_sorted(std::move(terms_));
    terms_.clear();
    return v;
  }


 private:
  std::vector<FockVector::Term> terms_;
};

// ---------------------------------------------------------------------------
// Primitive Heisenberg actions on canonical monomials.

/// q_n(e_color) m for n > 0. Adds (coeff * sign) * result to `out`.
inline void create_basis(const SurfaceAlgebra& alg, int n, int color, const FockMonomial& m, const Rational& coeff,
                         VectorBuilder& out, int max_weight) {
  if (m.weight() + n > max_weight)
    throw TruncationExceeded("weight " + std::to_string(m.weight() + n) + " exceeds truncation " +
                             std::to_string(max_weight));
  if (n > kMaxPartSize) throw TruncationExceeded("part size exceeds " + std::to_string(kMaxPartSize));
  const int pos = m.lower_bound(n, color);
  const bool odd = alg.odd(color);
  if (odd && pos < m.length() && m.raw_key(pos) == FockMonomial::key(n, color)) return;
  bool negative = false;
  if (odd)
    for (int t = 0; t < pos; ++t) negative ^= alg.odd(m.part(t).color);
  out.add(m.inserted(pos, n, color), negative ? -coeff : coeff);
}

/// q_{-n}(e_color) m for n > 0: contracts each part of size n with Koszul sign.
inline void annihilate_basis(const SurfaceAlgebra& alg, int n, int color, const FockMonomial& m,
                             const Rational& coeff, VectorBuilder& out) {
  const bool odd = alg.odd(color);
  bool passed_odd = false;
  for (int t = 0; t < m.length(); ++t) {
    const ColoredPart p = m.part(t);
    if (p.size == n) {
      const Rational& pair = alg.pairing(color, p.color);
      if (!pair.is_zero()) {
        Rational c = coeff * pair * Rational(-n);
        if (odd && passed_odd) c = -c;
        out.add(m.erased(t), std::move(c));
      }
    } else if (p.size < n) {
      break;
    }
    passed_odd ^= alg.odd(p.color);
  }
}

/// q_n(e_color) for any nonzero n.
inline void heisenberg_basis(const SurfaceAlgebra& alg, int n, int color, const FockMonomial& m,
                             const Rational& coeff, VectorBuilder& out, int max_weight) {
  if (n > 0)
    create_basis(alg, n, color, m, coeff, out, max_weight);
  else if (n < 0)
    annihilate_basis(alg, -n, color, m, coeff, out);
}

inline FockVector heisenberg_apply(const SurfaceAlgebra& alg, int n, const AlgebraElement& a, const FockVector& v,
                                   int max_weight = kMaxParts) {
  VectorBuilder out;
  for (const auto& [m, c] : v.terms())
    for (const auto& [color, x] : a.terms()) heisenberg_basis(alg, n, color, m, c * x, out, max_weight);
  return out.finish();
}

// ---------------------------------------------------------------------------

/// Expands q_{s1}(a1) q_{s2}(a2) ... |0> multilinearly into canonical form.
inline FockVector canonicalize(const SurfaceAlgebra& alg, const std::vector<std::pair<int, AlgebraElement>>& raw,
                               int max_weight = kMaxParts) {
  for (const auto& [size, a] : raw)
    if (size < 1) throw InvalidPart("part size " + std::to_string(size) + " must be at least 1");
  FockVector v = FockVector::vacuum();
  for (auto it = raw.rbegin(); it != raw.rend(); ++it) v = heisenberg_apply(alg, it->first, it->second, v, max_weight);
  return v;
}

inline FockVector canonicalize_parts(const SurfaceAlgebra& alg, const std::vector<ColoredPart>& parts,
                                     int max_weight = kMaxParts) {
  std::vector<std::pair<int, AlgebraElement>> raw;
  for (const auto& p : parts) raw.emplace_back(p.size, alg.element(p.color));
  return canonicalize(alg, raw, max_weight);
}

struct Bidegree {
  int weight;
  int degree;
  friend bool operator==(const Bidegree&, const Bidegree&) = default;
};

struct Mixed {};

/// Common bidegree of all monomials, or Mixed. The zero vector reports (0, 0).
inline std::variant<Bidegree, Mixed> bidegree(const SurfaceAlgebra& alg, const FockVector& v) {
  std::optional<Bidegree> b;
  for (const auto& [m, c] : v.terms()) {
    Bidegree here{m.weight(), m.degree(alg)};
    if (b && !(*b == here)) return Mixed{};
    b = here;
  }
  return b.value_or(Bidegree{0, 0});
}

/// All canonical monomials of weight n, in FockMonomial order.
inline std::vector<FockMonomial> monomial_basis(int n, const SurfaceAlgebra& alg) {
  std::vector<FockMonomial> out;
  if (n < 0) return out;
  if (n > kMaxParts) throw TruncationExceeded("weight " + std::to_string(n) + " exceeds the monomial capacity");
  // parts appended in canonical order: (size, color) keys nondecreasing
  std::function<void(const FockMonomial&, int, std::uint16_t, bool)> rec = [&](const FockMonomial& m, int remaining,
                                                                             std::uint16_t min_key, bool strict) {
    if (remaining == 0) {
      out.push_back(m);
      return;
    }
    for (int size = std::min(remaining, FockMonomial::key_size(min_key)); size >= 1; --size) {
      for (int color = 0; color < alg.dim(); ++color) {
        const std::uint16_t k = FockMonomial::key(size, color);
        if (k < min_key || (k == min_key && strict)) continue;
        rec(m.inserted(m.length(), size, color), remaining - size, k, alg.odd(color));
      }
    }
  };
  rec(FockMonomial(), n, FockMonomial::key(n, 0), false);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<FockMonomial> monomial_basis_upto(int n, const SurfaceAlgebra& alg) {
  std::vector<FockMonomial> out;
  for (int w = 0; w <= n; ++w) {
    auto b = monomial_basis(w, alg);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

/// Monomials of a bigraded piece (weight n, degree i).
inline std::vector<FockMonomial> piece_basis(int n, int i, const SurfaceAlgebra& alg) {
  std::vector<FockMonomial> out;
  for (const auto& m : monomial_basis(n, alg))
    if (m.degree(alg) == i) out.push_back(m);
  return out;
}

/// True iff every monomial in the support has sum(size - 1) <= k.
inline bool fh_support_bound(const FockVector& v, int k) {
  return std::all_of(v.terms().begin(), v.terms().end(),
                     [k](const FockVector::Term& t) { return t.first.excess() <= k; });
}

// ---------------------------------------------------------------------------
// Bilinear form, computed by moving creation operators across:
// (q_p(a) w, v) = (-1)^{|a| |w|} (-1)^p (w, q_{-p}(a) v).

inline Rational inner_product_monomial(const SurfaceAlgebra& alg, const FockMonomial& left, const FockVector& right) {
  if (right.is_zero()) return 0;
  if (left.empty()) return right.coeff(FockMonomial());
  const ColoredPart p = left.part(0);
  const FockMonomial rest = left.tail();
  VectorBuilder b;
  for (const auto& [m, c] : right.terms())
    if (m.weight() == left.weight()) annihilate_basis(alg, p.size, p.color, m, c, b);
  Rational r = inner_product_monomial(alg, rest, b.finish());
  if (alg.odd(p.color) && (rest.degree(alg) & 1)) r = -r;
  if (p.size & 1) r = -r;
  return r;
}

inline Rational inner_product(const SurfaceAlgebra& alg, const FockVector& u, const FockVector& v) {
  Rational r;
  for (const auto& [m, c] : u.terms()) {
    const Rational x = inner_product_monomial(alg, m, v);
    if (!x.is_zero()) r += c * x;
  }
  return r;
}

/// Monomials m' with (m', m) != 0, with the value of the form. The form only
/// pairs monomials with the same partition whose colors pair nontrivially.
inline std::vector<std::pair<FockMonomial, Rational>> left_partners(const SurfaceAlgebra& alg,
                                                                     const FockMonomial& m) {
  std::vector<std::pair<FockMonomial, Rational>> out;
  std::vector<ColoredPart> parts(m.length());
  std::vector<FockMonomial> seen;
  std::function<void(int)> rec = [&](int i) {
    if (i == m.length()) {
      for (const auto& [cand, c] : canonicalize_parts(alg, parts).terms()) {
        if (std::find(seen.begin(), seen.end(), cand) != seen.end()) continue;
        seen.push_back(cand);
        Rational x = inner_product_monomial(alg, cand, FockVector::monomial(m));
        if (!x.is_zero()) out.emplace_back(cand, std::move(x));
      }
      return;
    }
    const ColoredPart p = m.part(i);
    for (const auto& [c, val] : alg.pairing_partners(p.color)) {
      parts[i] = {p.size, c};
      rec(i + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

/// Gram matrix (rows, cols) -> (rows[r], cols[c]).
inline Matrix gram_matrix(const SurfaceAlgebra& alg, const std::vector<FockMonomial>& rows,
                          const std::vector<FockMonomial>& cols) {
  Matrix g(rows.size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (const auto& [m, x] : left_partners(alg, cols[c])) {
      auto it = std::lower_bound(rows.begin(), rows.end(), m);
      if (it != rows.end() && *it == m) g(it - rows.begin(), c) = x;
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Rendering: "c * q_i(id) q_j(id) |0>" terms joined by " + " / " - ".

inline std::string render_monomial(const SurfaceAlgebra& alg, const FockMonomial& m) {
  std::ostringstream os;
  for (int i = 0; i < m.length(); ++i) os << "q_" << m.part(i).size << "(" << alg.id(m.part(i).color) << ") ";
  os << "|0>";
  return os.str();
}

inline std::string render(const SurfaceAlgebra& alg, const FockVector& v) {
  if (v.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : v.terms()) {
    if (first) {
      os << c;
    } else {
      os << (c.sign() < 0 ? " - " : " + ") << (c.sign() < 0 ? -c : c);
    }
    os << " * " << render_monomial(alg, m);
    first = false;
  }
  return os.str();
}

}  // namespace hilbert

#endif  // HILBERT_FOCK_HPP
