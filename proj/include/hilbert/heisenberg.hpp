#ifndef HILBERT_HEISENBERG_HPP
#define HILBERT_HEISENBERG_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hilbert/error.hpp"
#include "hilbert/fock.hpp"
#include "hilbert/matrix.hpp"
#include "hilbert/operator.hpp"
#include "hilbert/surface_algebra.hpp"

namespace hilbert {

/// Builds the Heisenberg, Virasoro and boundary operators over one algebra.
/// The boundary operator is memoized per monomial and shared by every
/// operator derived from this calculus.
class OperatorCalculus {
 public:
  explicit OperatorCalculus(AlgebraPtr alg) : alg_(std::move(alg)) {
    for (int c = 0; c < alg_->dim(); ++c) canonical_times_.push_back(alg_->mul(alg_->canonical_class(), alg_->element(c)));
    boundary_ = make_boundary();
  }

  const SurfaceAlgebra& algebra() const { return *alg_; }
  const AlgebraPtr& algebra_ptr() const { return alg_; }

  /// q_n(a): creation for n > 0, annihilation for n < 0, zero for n = 0.
  /// Bidegree (n, 2n - 2 + |a|).
  Operator q(int n, const AlgebraElement& a) const {
    const auto deg = alg_->homogeneous_degree(a);
    const std::string name = "q_" + std::to_string(n) + "(" + alg_->render(a) + ")";
    if (n == 0 || a.is_zero())
      return Operator(name, n, deg ? std::optional<int>(2 * n - 2 + *deg) : std::optional<int>(0),
                      alg_->parity(a), std::max(0, n), [](const FockMonomial&, const Rational&, VectorBuilder&, int) {});
    auto alg = alg_;
    return Operator(name, n, deg ? std::optional<int>(2 * n - 2 + *deg) : std::nullopt, alg_->parity(a), std::max(0, n),
                    [alg, n, a](const FockMonomial& m, const Rational& c, VectorBuilder& out, int max_weight) {
                      for (const auto& [color, x] : a.terms()) heisenberg_basis(*alg, n, color, m, x.is_one() ? c : c * x, out, max_weight);
                    });
  }
  Operator q(int n, int basis_index) const { return q(n, alg_->element(basis_index)); }

  /// L_n(a) = 1/2 sum_m q_m q_{n-m} tau(a) for n != 0, sum_{m>0} q_m q_{-m} tau(a)
  /// for n = 0. Evaluated in normal order: for n != 0 the two factors
  /// supercommute, so an annihilator is always applied before a creator and no
  /// intermediate weight exceeds max(w, w + n).
  Operator virasoro(int n, const AlgebraElement& a) const {
    const auto deg = alg_->homogeneous_degree(a);
    auto alg = alg_;
    auto tau = std::make_shared<const std::vector<KunnethTerm>>(alg_->kunneth(a));
    const std::string name = "L_" + std::to_string(n) + "(" + alg_->render(a) + ")";
    std::optional<int> dshift;
    if (deg) dshift = 2 * n + *deg;
    if (a.is_zero()) dshift = 2 * n;
    return Operator(name, n, dshift, alg_->parity(a), std::max(0, n),
                    [alg, tau, n](const FockMonomial& m, const Rational& c, VectorBuilder& out, int max_weight) {
                      virasoro_kernel(*alg, *tau, n, m, c, out, max_weight);
                    });
  }
  Operator virasoro(int n, int basis_index) const { return virasoro(n, alg_->element(basis_index)); }

  /// d, defined on monomials by d|0> = 0 and
  /// d(q_i(a) w) = (i L_i(a) + i(i-1)/2 q_i(K a)) w + q_i(a) d(w).
  const Operator& boundary() const { return boundary_; }

  /// Evaluates d with the recursion anchored at the factor in position `pos`
  /// (that factor is first moved to the front with its Koszul sign).
  FockVector boundary_anchored(const FockMonomial& m, int pos) const {
    const ColoredPart p = m.part(pos);
    const FockMonomial rest = m.erased(pos);
    bool negative = false;
    if (alg_->odd(p.color))
      for (int t = 0; t < pos; ++t) negative ^= alg_->odd(m.part(t).color);
    VectorBuilder out;
    boundary_head(p, rest, negative ? Rational(-1) : Rational(1), out, kMaxParts);
    return out.finish();
  }

  /// f' = [d, f]; f^{(k)} = [d, f^{(k-1)}].
  Operator derivative(const Operator& f, int k) const {
    if (k < 0) throw DomainError("derivative order must be nonnegative");
    Operator g = f;
    for (int i = 0; i < k; ++i) g = supercommutator(boundary_, g);
    return g;
  }

  /// Matrix of f^dagger on the piece (n, i) (columns: source monomials, rows:
  /// target monomials), solved from (f(a), b) = (-1)^{m |a|} (a, f^dagger(b)).
  struct AdjointMatrix {
    std::vector<FockMonomial> source;
    std::vector<FockMonomial> target;
    Matrix matrix;
  };

  AdjointMatrix adjoint_matrix(const Operator& f, Bidegree source, int truncation) const {
    const auto bd = f.bidegree();
    if (!bd) throw MixedDegree("adjoint requires a homogeneous operator");
    const int l = bd->weight, mdeg = bd->degree;
    const int top = alg_->top_degree();  // real dimension of X
    const int tn = source.weight - l;
    const int ti = source.degree + mdeg - top * l;
    if (source.weight > truncation || tn < 0 || tn > truncation)
      throw TruncationExceeded("adjoint piece outside truncation");
    AdjointMatrix out;
    out.source = piece_basis(source.weight, source.degree, *alg_);
    out.target = piece_basis(tn, ti, *alg_);
    // a runs over the piece paired with the target
    const int adeg = top * tn - ti;
    const std::vector<FockMonomial> as = piece_basis(tn, adeg, *alg_);
    const Matrix g = gram_matrix(*alg_, as, out.target);
    auto ginv = g.inverse();
    if (!ginv) throw SingularGram("Gram matrix of piece (" + std::to_string(tn) + ", " + std::to_string(ti) + ") is singular");
    Matrix s(as.size(), out.source.size());
    const bool flip = (mdeg & 1) && (adeg & 1);
    for (std::size_t r = 0; r < as.size(); ++r) {
      const FockVector fa = f.apply(as[r], std::max(truncation, as[r].weight() + f.peak()));
      for (std::size_t c = 0; c < out.source.size(); ++c) {
        Rational x = inner_product(*alg_, fa, FockVector::monomial(out.source[c]));
        s(r, c) = flip ? -x : x;
      }
    }
    out.matrix = (*ginv) * s;
    return out;
  }

  /// Matrix of f restricted to the monomials `source`, expressed on `target`.
  static Matrix operator_matrix(const Operator& f, const std::vector<FockMonomial>& source,
                                const std::vector<FockMonomial>& target, int truncation = kMaxParts) {
    Matrix m(target.size(), source.size());
    for (std::size_t c = 0; c < source.size(); ++c) {
      for (const auto& [mono, x] : f.apply(source[c], truncation).terms()) {
        auto it = std::lower_bound(target.begin(), target.end(), mono);
        if (it == target.end() || !(*it == mono)) throw DomainError("operator output leaves the target piece");
        m(it - target.begin(), c) = x;
      }
    }
    return m;
  }

 private:
  static void virasoro_kernel(const SurfaceAlgebra& alg, const std::vector<KunnethTerm>& tau, int n,
                              const FockMonomial& m, const Rational& c, VectorBuilder& out, int max_weight) {
    const int w = m.weight();
    std::uint64_t sizes = 0;  // bit s set iff m has a part of size s
    for (int t = 0; t < m.length(); ++t) sizes |= std::uint64_t{1} << m.part(t).size;
    auto has = [](std::uint64_t mask, int s) { return s < 64 && ((mask >> s) & 1); };
    VectorBuilder mid;
    // term coefficient: 1/2 for n != 0, 1 for n = 0
    const Rational half = n == 0 ? Rational(1) : Rational(1, 2);
    const Rational base = c * half;
    const int lo = n == 0 ? 1 : -w;
    const int hi = n == 0 ? w : n + w;
    for (int mm = lo; mm <= hi; ++mm) {
      const int other = n - mm;
      if (mm == 0 || other == 0) continue;
      // operator order q_mm(e_left) q_other(e_right): q_other acts first
      const bool swap = other > 0 && mm < 0;
      const int first_n = swap ? mm : other, second_n = swap ? other : mm;
      if (first_n < 0 && !has(sizes, -first_n)) continue;
      if (second_n < 0 && first_n < 0 && !has(sizes, -second_n)) continue;
      if (second_n < 0 && first_n > 0 && !has(sizes | (std::uint64_t{1} << std::min(first_n, 63)), -second_n)) continue;
      for (const auto& t : tau) {
        const int first_c = swap ? t.left : t.right, second_c = swap ? t.right : t.left;
        Rational coeff = base * t.coeff;
        if (swap && alg.odd(t.left) && alg.odd(t.right)) coeff = -coeff;
        heisenberg_basis(alg, first_n, first_c, m, coeff, mid, max_weight);
        if (mid.empty()) continue;
        for (const auto& [m2, c2] : mid.finish().terms()) heisenberg_basis(alg, second_n, second_c, m2, c2, out, max_weight);
      }
    }
  }

  // d(q_i(e_c) rest) with the given overall coefficient
  void boundary_head(const ColoredPart& p, const FockMonomial& rest, const Rational& c, VectorBuilder& out,
                     int max_weight) const {
    const int i = p.size;
    virasoro_kernel(*alg_, alg_->kunneth_basis(p.color), i, rest, c * Rational(i), out, max_weight);
    if (i > 1) {
      const Rational kc = c * Rational(i * (i - 1) / 2);
      for (const auto& [color, x] : canonical_times_[p.color].terms())
        create_basis(*alg_, i, color, rest, kc * x, out, max_weight);
    }
    VectorBuilder mid;
    boundary_.accumulate(rest, c, mid, max_weight);
    for (const auto& [m2, c2] : mid.finish().terms()) create_basis(*alg_, i, p.color, m2, c2, out, max_weight);
  }

  Operator make_boundary() {
    struct Cache {
      std::mutex mutex;
      std::unordered_map<FockMonomial, FockVector, FockMonomialHash> values;
    };
    auto cache = std::make_shared<Cache>();
    // The kernel refers back to this calculus for L_i; OperatorCalculus is
    // therefore neither copyable nor movable.
    const OperatorCalculus* self = this;
    return Operator("d", 0, 2, 0, 0, [self, cache](const FockMonomial& m, const Rational& c, VectorBuilder& out, int) {
      if (m.empty()) return;
      {
        std::lock_guard<std::mutex> lock(cache->mutex);
        auto it = cache->values.find(m);
        if (it != cache->values.end()) {
          out.add(it->second, c);
          return;
        }
      }
      VectorBuilder local;
      self->boundary_head(m.part(0), m.tail(), 1, local, m.weight());
      FockVector v = local.finish();
      out.add(v, c);
      std::lock_guard<std::mutex> lock(cache->mutex);
      cache->values.emplace(m, std::move(v));
    });
  }

 public:
  OperatorCalculus(const OperatorCalculus&) = delete;
  OperatorCalculus& operator=(const OperatorCalculus&) = delete;

 private:
  AlgebraPtr alg_;
  std::vector<AlgebraElement> canonical_times_;
  Operator boundary_ = zero_operator();
};

}  // namespace hilbert

#endif  // HILBERT_HEISENBERG_HPP
