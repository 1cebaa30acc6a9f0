#ifndef HILBERT_OPERATOR_HPP
#define HILBERT_OPERATOR_HPP

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hilbert/error.hpp"
#include "hilbert/fock.hpp"
#include "hilbert/rational.hpp"

namespace hilbert {

/// Evaluable linear map on Fock vectors.
///
/// Besides the evaluation rule an operator carries its weight shift, its
/// cohomological degree shift (absent when the operator is built from an
/// inhomogeneous class), its parity, and `peak`: an upper bound on how far any
/// intermediate weight rises above the input weight during evaluation. Suites
/// use `peak` to pick inputs that stay inside the truncation.
class Operator {
 public:
  using Kernel = std::function<void(const FockMonomial&, const Rational&, VectorBuilder&, int max_weight)>;

  Operator(std::string name, int weight_shift, std::optional<int> degree_shift, std::optional<int> parity, int peak,
           Kernel kernel)
      : name_(std::move(name)),
        weight_shift_(weight_shift),
        degree_shift_(degree_shift),
        parity_(degree_shift ? std::optional<int>(*degree_shift & 1) : parity),
        peak_(peak),
        kernel_(std::make_shared<Kernel>(std::move(kernel))) {}

  const std::string& name() const { return name_; }
  int weight_shift() const { return weight_shift_; }
  std::optional<int> degree_shift() const { return degree_shift_; }
  std::optional<int> parity() const { return parity_; }
  int peak() const { return peak_; }

  /// Bidegree (weight shift, degree shift); nullopt reports Mixed.
  std::optional<Bidegree> bidegree() const {
    if (!degree_shift_) return std::nullopt;
    return Bidegree{weight_shift_, *degree_shift_};
  }

  int require_parity() const {
    if (!parity_) throw MixedDegree("operator " + name_ + " has mixed parity");
    return *parity_;
  }

  void accumulate(const FockMonomial& m, const Rational& c, VectorBuilder& out, int max_weight) const {
    (*kernel_)(m, c, out, max_weight);
  }

  FockVector apply(const FockVector& v, int max_weight = kMaxParts) const {
    VectorBuilder out;
    for (const auto& [m, c] : v.terms()) accumulate(m, c, out, max_weight);
    return out.finish();
  }

  FockVector apply(const FockMonomial& m, int max_weight = kMaxParts) const {
    VectorBuilder out;
    accumulate(m, 1, out, max_weight);
    return out.finish();
  }

  Operator renamed(std::string name) const {
    Operator o = *this;
    o.name_ = std::move(name);
    return o;
  }

 private:
  std::string name_;
  int weight_shift_;
  std::optional<int> degree_shift_;
  std::optional<int> parity_;
  int peak_;
  std::shared_ptr<const Kernel> kernel_;
};

inline Operator zero_operator(int weight_shift = 0, std::optional<int> degree_shift = 0) {
  return Operator("0", weight_shift, degree_shift, degree_shift ? std::optional<int>(*degree_shift & 1) : 0,
                  std::max(0, weight_shift), [](const FockMonomial&, const Rational&, VectorBuilder&, int) {});
}

inline Operator identity_operator() {
  return Operator("Id", 0, 0, 0, 0, [](const FockMonomial& m, const Rational& c, VectorBuilder& out, int) {
    out.add(m, c);
  });
}

/// f o g
inline Operator compose(const Operator& f, const Operator& g) {
  std::optional<int> deg;
  if (f.degree_shift() && g.degree_shift()) deg = *f.degree_shift() + *g.degree_shift();
  std::optional<int> par;
  if (f.parity() && g.parity()) par = (*f.parity() + *g.parity()) & 1;
  const int peak = std::max(g.peak(), g.weight_shift() + f.peak());
  return Operator(f.name() + " " + g.name(), f.weight_shift() + g.weight_shift(), deg, par, peak,
                  [f, g](const FockMonomial& m, const Rational& c, VectorBuilder& out, int max_weight) {
                    VectorBuilder mid;
                    g.accumulate(m, c, mid, max_weight);
                    if (!mid.empty())
                      for (const auto& [m2, c2] : mid.finish().terms()) f.accumulate(m2, c2, out, max_weight);
                  });
}

/// sum_j coeff_j * op_j. All summands should share a weight shift.
inline Operator linear_combination(const std::vector<std::pair<Rational, Operator>>& parts) {
  if (parts.empty()) return zero_operator();
  const int shift = parts.front().second.weight_shift();
  std::optional<int> deg = parts.front().second.degree_shift();
  std::optional<int> par = parts.front().second.parity();
  int peak = 0;
  std::string name;
  for (const auto& [c, op] : parts) {
    if (op.weight_shift() != shift) throw MixedDegree("linear combination of operators with different weight shifts");
    if (deg != op.degree_shift()) deg.reset();
    if (par != op.parity()) par.reset();
    peak = std::max(peak, op.peak());
    name += (name.empty() ? "" : " + ") + c.to_string() + "*" + op.name();
  }
  return Operator(name, shift, deg, par, peak,
                  [parts](const FockMonomial& m, const Rational& c, VectorBuilder& out, int max_weight) {
                    for (const auto& [x, op] : parts)
                      if (!x.is_zero()) op.accumulate(m, c * x, out, max_weight);
                  });
}

inline Operator scaled(const Rational& s, const Operator& f) { return linear_combination({{s, f}}); }

/// [f, g] = f g - (-1)^{p(f) p(g)} g f
inline Operator supercommutator(const Operator& f, const Operator& g) {
  const int pf = f.require_parity();
  const int pg = g.require_parity();
  const Rational sign = (pf & pg) ? -1 : 1;
  std::optional<int> deg;
  if (f.degree_shift() && g.degree_shift()) deg = *f.degree_shift() + *g.degree_shift();
  const int peak = std::max(std::max(g.peak(), g.weight_shift() + f.peak()), std::max(f.peak(), f.weight_shift() + g.peak()));
  return Operator("[" + f.name() + ", " + g.name() + "]", f.weight_shift() + g.weight_shift(), deg, (pf + pg) & 1, peak,
                  [f, g, sign](const FockMonomial& m, const Rational& c, VectorBuilder& out, int max_weight) {
                    VectorBuilder mid;
                    g.accumulate(m, c, mid, max_weight);
                    if (!mid.empty())
                      for (const auto& [m2, c2] : mid.finish().terms()) f.accumulate(m2, c2, out, max_weight);
                    f.accumulate(m, sign.is_one() ? -c : c, mid, max_weight);
                    if (!mid.empty())
                      for (const auto& [m2, c2] : mid.finish().terms()) g.accumulate(m2, c2, out, max_weight);
                  });
}

/// Caches f(m) per monomial. The cache is shared by copies of the returned
/// operator and guarded for concurrent use.
inline Operator memoized(const Operator& f) {
  struct Cache {
    std::mutex mutex;
    std::unordered_map<FockMonomial, FockVector, FockMonomialHash> values;
  };
  auto cache = std::make_shared<Cache>();
  return Operator(f.name(), f.weight_shift(), f.degree_shift(), f.parity(), f.peak(),
                  [f, cache](const FockMonomial& m, const Rational& c, VectorBuilder& out, int max_weight) {
                    const int bound = m.weight() + f.peak();
                    if (bound > max_weight) {
                      f.accumulate(m, c, out, max_weight);  // may raise TruncationExceeded
                      return;
                    }
                    {
                      std::lock_guard<std::mutex> lock(cache->mutex);
                      auto it = cache->values.find(m);
                      if (it != cache->values.end()) {
                        out.add(it->second, c);
                        return;
                      }
                    }
                    FockVector v = f.apply(m, bound);
                    out.add(v, c);
                    std::lock_guard<std::mutex> lock(cache->mutex);
                    cache->values.emplace(m, std::move(v));
                  });
}

}  // namespace hilbert

#endif  // HILBERT_OPERATOR_HPP
