#ifndef HILBERT_SURFACE_ALGEBRA_HPP
#define HILBERT_SURFACE_ALGEBRA_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hilbert/error.hpp"
#include "hilbert/matrix.hpp"
#include "hilbert/presets.hpp"
#include "hilbert/rational.hpp"
#include "json.hpp"

namespace hilbert {

struct BasisClass {
  std::string id;
  int degree = 0;
};

/// Sparse linear combination of basis classes; terms sorted by basis index,
/// never holding a zero coefficient.
class AlgebraElement {
 public:
  using Term = std::pair<int, Rational>;

  AlgebraElement() = default;
  static AlgebraElement basis(int index, Rational coeff = 1) {
    AlgebraElement e;
    e.add(index, coeff);
    return e;
  }

  const std::vector<Term>& terms() const& { return terms_; }
  std::vector<Term> terms() && { return std::move(terms_); }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(int index) const {
    auto it = find(index);
    return it != terms_.end() && it->first == index ? it->second : Rational(0);
  }

  void add(int index, const Rational& c) {
    if (c.is_zero()) return;
    auto it = find(index);
    if (it != terms_.end() && it->first == index) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    } else {
      terms_.insert(it, {index, c});
    }
  }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    for (const auto& [i, c] : o.terms_) add(i, c);
    return *this;
  }
  AlgebraElement& operator*=(const Rational& s) {
    if (s.is_zero()) {
      terms_.clear();
    } else {
      for (auto& t : terms_) t.second *= s;
    }
    return *this;
  }
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) {
    for (const auto& [i, c] : b.terms_) a.add(i, -c);
    return a;
  }
  friend AlgebraElement operator*(const Rational& s, AlgebraElement a) { return a *= s; }
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) { return a.terms_ == b.terms_; }

 private:
  std::vector<Term>::iterator find(int index) {
    return std::lower_bound(terms_.begin(), terms_.end(), index,
                            [](const Term& t, int i) { return t.first < i; });
  }
  std::vector<Term>::const_iterator find(int index) const {
    return std::lower_bound(terms_.begin(), terms_.end(), index,
                            [](const Term& t, int i) { return t.first < i; });
  }

  std::vector<Term> terms_;
};

/// One term e_left (x) e_right of a Kunneth expansion.
struct KunnethTerm {
  int left;
  int right;
  Rational coeff;
};

class SurfaceAlgebra;
using AlgebraPtr = std::shared_ptr<const SurfaceAlgebra>;

/// Finite-dimensional graded super-commutative Frobenius algebra standing in
/// for H*(X). Immutable once built; every invariant is checked in build().
class SurfaceAlgebra {
 public:
  struct Description {
    std::string name;
    std::vector<BasisClass> basis;
    std::string unit;
    // (left, right) -> product, as listed in the description
    std::vector<std::tuple<std::string, std::string, std::vector<std::pair<std::string, Rational>>>> products;
    std::vector<std::pair<std::string, Rational>> integral;
    std::vector<std::pair<std::string, Rational>> canonical_class;
  };

  static AlgebraPtr build(const Description& d) {
    auto alg = std::shared_ptr<SurfaceAlgebra>(new SurfaceAlgebra());
    alg->init(d);
    return alg;
  }

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<BasisClass>& basis() const { return basis_; }
  int degree(int i) const { return basis_[i].degree; }
  bool odd(int i) const { return (basis_[i].degree & 1) != 0; }
  int unit() const { return unit_; }
  int top_degree() const { return top_degree_; }
  const std::string& id(int i) const { return basis_[i].id; }

  int index_of(std::string_view id) const {
    for (int i = 0; i < dim(); ++i)
      if (basis_[i].id == id) return i;
    throw UnknownBasisId("unknown basis class '" + std::string(id) + "' in algebra " + name_);
  }

  AlgebraElement element(int i, Rational c = 1) const { return AlgebraElement::basis(i, std::move(c)); }
  AlgebraElement one() const { return element(unit_); }

  const AlgebraElement& mul_basis(int i, int j) const { return table_[i * dim() + j]; }

  AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) const {
    AlgebraElement r;
    for (const auto& [i, x] : a.terms())
      for (const auto& [j, y] : b.terms())
        for (const auto& [k, z] : mul_basis(i, j).terms()) r.add(k, x * y * z);
    return r;
  }

  const Rational& integral_basis(int i) const { return integral_[i]; }
  Rational integral(const AlgebraElement& a) const {
    Rational r;
    for (const auto& [i, c] : a.terms())
      if (!integral_[i].is_zero()) r += c * integral_[i];
    return r;
  }

  /// P_ij = integral(e_i e_j).
  const Rational& pairing(int i, int j) const { return pairing_(i, j); }
  const Matrix& pairing_matrix() const { return pairing_; }

  /// Colors c with pairing(a, c) != 0.
  const std::vector<std::pair<int, Rational>>& pairing_partners(int a) const { return partners_[a]; }

  /// e^j with integral(e_i e^j) = delta_ij.
  const std::vector<AlgebraElement>& dual_basis() const { return dual_; }

  /// Kunneth expansion of the diagonal pushforward, solved from
  /// integral_{XxX}(tau(a) . (b (x) c)) = integral_X(a b c).
  std::vector<KunnethTerm> kunneth(const AlgebraElement& a) const {
    std::map<std::pair<int, int>, Rational> acc;
    for (const auto& [i, c] : a.terms())
      for (const auto& t : kunneth_[i]) acc[{t.left, t.right}] += c * t.coeff;
    std::vector<KunnethTerm> out;
    for (auto& [k, v] : acc)
      if (!v.is_zero()) out.push_back({k.first, k.second, v});
    return out;
  }
  const std::vector<KunnethTerm>& kunneth_basis(int i) const { return kunneth_[i]; }

  std::vector<std::pair<AlgebraElement, AlgebraElement>> diagonal_pushforward(const AlgebraElement& a) const {
    std::vector<std::pair<AlgebraElement, AlgebraElement>> out;
    for (const auto& t : kunneth(a)) out.emplace_back(element(t.left, t.coeff), element(t.right));
    return out;
  }

  /// Checks the adjunction identity for tau(a) against every basis pair (b, c),
  /// with the Koszul sign (u(x)v)(w(x)z) = (-1)^{|v||w|} uw (x) vz.
  bool check_adjunction(const AlgebraElement& a) const {
    const auto tau = kunneth(a);
    for (int b = 0; b < dim(); ++b)
      for (int c = 0; c < dim(); ++c) {
        Rational lhs;
        for (const auto& t : tau) {
          const int sign = (odd(t.right) && odd(b)) ? -1 : 1;
          lhs += t.coeff * sign * integral(mul_basis(t.left, b)) * integral(mul_basis(t.right, c));
        }
        const Rational rhs = integral(mul(mul(a, element(b)), element(c)));
        if (lhs != rhs) return false;
      }
    return true;
  }

  const AlgebraElement& canonical_class() const { return canonical_; }
  /// Sum_i (-1)^{deg e_i} e_i e^i; plays the role of c_2(X).
  const AlgebraElement& euler_class() const { return euler_; }
  Rational euler_characteristic() const { return integral(euler_); }

  /// Common degree of a nonzero element, or nullopt if inhomogeneous.
  std::optional<int> homogeneous_degree(const AlgebraElement& a) const {
    std::optional<int> d;
    for (const auto& [i, c] : a.terms()) {
      if (d && *d != degree(i)) return std::nullopt;
      d = degree(i);
    }
    return d;
  }

  /// Parity shared by all components, or nullopt if mixed. Zero counts as even.
  std::optional<int> parity(const AlgebraElement& a) const {
    std::optional<int> p;
    for (const auto& [i, c] : a.terms()) {
      if (p && *p != (degree(i) & 1)) return std::nullopt;
      p = degree(i) & 1;
    }
    return p.value_or(0);
  }

  /// Parses a basis id or a combination like "1/2*h + 3*h2 - x1".
  AlgebraElement parse_element(std::string_view spec) const;

  std::string render(const AlgebraElement& a) const {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : a.terms()) {
      Rational mag = c.sign() < 0 ? -c : c;
      if (!first) os << (c.sign() < 0 ? " - " : " + ");
      else if (c.sign() < 0) os << "-";
      os << mag << "*" << id(i);
      first = false;
    }
    return os.str();
  }

 private:
  SurfaceAlgebra() = default;

  void init(const Description& d);

  std::string name_;
  std::vector<BasisClass> basis_;
  int unit_ = 0;
  int top_degree_ = 0;
  std::vector<AlgebraElement> table_;
  std::vector<Rational> integral_;
  Matrix pairing_;
  std::vector<std::vector<std::pair<int, Rational>>> partners_;
  std::vector<AlgebraElement> dual_;
  std::vector<std::vector<KunnethTerm>> kunneth_;
  AlgebraElement canonical_;
  AlgebraElement euler_;
};

inline void SurfaceAlgebra::init(const Description& d) {
  name_ = d.name;
  basis_ = d.basis;
  if (basis_.empty()) throw AxiomViolation("algebra has an empty basis");
  if (basis_.size() > 255) throw ParseError("at most 255 basis classes are supported");
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (basis_[i].degree < 0 || basis_[i].degree > 4)
      throw DegreeError("basis class '" + basis_[i].id + "' has degree " + std::to_string(basis_[i].degree) +
                        " outside 0..4");
    for (std::size_t j = 0; j < i; ++j)
      if (basis_[j].id == basis_[i].id) throw ParseError("duplicate basis id '" + basis_[i].id + "'");
  }
  const int n = dim();
  auto lookup = [&](const std::string& id) {
    for (int i = 0; i < n; ++i)
      if (basis_[i].id == id) return i;
    throw ParseError("unknown basis id '" + id + "'");
  };
  auto to_element = [&](const std::vector<std::pair<std::string, Rational>>& terms) {
    AlgebraElement e;
    for (const auto& [id, c] : terms) e.add(lookup(id), c);
    return e;
  };

  unit_ = lookup(d.unit);
  int degree_zero = 0;
  for (const auto& b : basis_) degree_zero += b.degree == 0;
  if (degree_zero != 1 || basis_[unit_].degree != 0)
    throw AxiomViolation("exactly one basis class must have degree 0 and it must be the unit");
  top_degree_ = 0;
  for (const auto& b : basis_) top_degree_ = std::max(top_degree_, b.degree);

  // product table
  table_.assign(n * n, AlgebraElement());
  std::vector<bool> listed(n * n, false);
  for (const auto& [l, r, terms] : d.products) {
    const int i = lookup(l), j = lookup(r);
    if (listed[i * n + j]) throw ParseError("product " + l + "*" + r + " listed twice");
    listed[i * n + j] = true;
    table_[i * n + j] = to_element(terms);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (listed[i * n + j] || !listed[j * n + i]) continue;
      AlgebraElement e = table_[j * n + i];
      if (odd(i) && odd(j)) e *= -1;
      table_[i * n + j] = e;
      listed[i * n + j] = true;
    }
  for (int i = 0; i < n; ++i) {
    for (auto [a, b] : {std::pair{unit_, i}, std::pair{i, unit_}}) {
      if (listed[a * n + b] && !(table_[a * n + b] == element(i)))
        throw AxiomViolation("unit law fails for '" + basis_[i].id + "'");
      table_[a * n + b] = element(i);
    }
  }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& p = mul_basis(i, j);
      for (const auto& [k, c] : p.terms())
        if (degree(k) != degree(i) + degree(j))
          throw AxiomViolation("product " + id(i) + "*" + id(j) + " is not graded");
      AlgebraElement swapped = mul_basis(j, i);
      if (odd(i) && odd(j)) swapped *= -1;
      if (!(p == swapped))
        throw AxiomViolation("super-commutativity fails for " + id(i) + ", " + id(j));
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (!(mul(mul_basis(i, j), element(k)) == mul(element(i), mul_basis(j, k))))
          throw AxiomViolation("associativity fails for " + id(i) + ", " + id(j) + ", " + id(k));

  integral_.assign(n, Rational(0));
  for (const auto& [i, c] : to_element(d.integral).terms()) {
    if (degree(i) != top_degree_)
      throw AxiomViolation("integral is supported on '" + id(i) + "' below the top degree");
    integral_[i] = c;
  }

  pairing_ = Matrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) pairing_(i, j) = integral(mul_basis(i, j));
  auto inv = pairing_.inverse();
  if (!inv) throw SingularPairing("pairing matrix of " + name_ + " is not invertible");
  partners_.assign(n, {});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!pairing_(i, j).is_zero()) partners_[i].push_back({j, pairing_(i, j)});

  // P D = I, e^j = sum_k D_kj e_k
  dual_.assign(n, AlgebraElement());
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) dual_[j].add(k, (*inv)(k, j));

  // Pt T' P = M with T'_kl = (-1)^{|k||l|} T_kl and M_bc = integral(a e_b e_c)
  const Matrix inv_t = inv->transpose();
  kunneth_.assign(n, {});
  for (int a = 0; a < n; ++a) {
    Matrix m(n, n);
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) m(b, c) = integral(mul(mul_basis(a, b), element(c)));
    const Matrix t = inv_t * m * (*inv);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        if (t(k, l).is_zero()) continue;
        const Rational c = (odd(k) && odd(l)) ? -t(k, l) : t(k, l);
        kunneth_[a].push_back({k, l, c});
      }
  }

  canonical_ = to_element(d.canonical_class);
  if (auto deg = homogeneous_degree(canonical_); !canonical_.is_zero() && deg != 2)
    throw AxiomViolation("canonical class must be homogeneous of degree 2");

  euler_ = AlgebraElement();
  for (int i = 0; i < n; ++i) {
    AlgebraElement t = mul(element(i), dual_[i]);
    if (odd(i)) t *= -1;
    euler_ += t;
  }
}

inline AlgebraElement SurfaceAlgebra::parse_element(std::string_view spec) const {
  AlgebraElement out;
  std::string s(spec);
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  bool first = true;
  skip_ws();
  if (pos == s.size()) throw ParseError("empty class specification");
  while (pos < s.size()) {
    int sign = 1;
    skip_ws();
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      throw ParseError("expected '+' or '-' in '" + s + "'");
    }
    skip_ws();
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string token = s.substr(pos, end - pos);
    while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back()))) token.pop_back();
    if (token.empty()) throw ParseError("dangling sign in '" + s + "'");
    Rational coeff = 1;
    std::string id = token;
    if (auto star = token.find('*'); star != std::string::npos) {
      try {
        coeff = Rational::parse(token.substr(0, star));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
      }
      id = token.substr(star + 1);
      while (!id.empty() && std::isspace(static_cast<unsigned char>(id.front()))) id.erase(0, 1);
    }
    out.add(index_of(id), sign * coeff);
    pos = end;
    first = false;
    skip_ws();
  }
  return out;
}

namespace detail {

inline Rational json_coeff(const nlohmann::json& j) {
  try {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  throw ParseError("coefficient must be a string \"p/q\" or an integer");
}

inline std::vector<std::pair<std::string, Rational>> json_terms(const nlohmann::json& j, const char* field) {
  std::vector<std::pair<std::string, Rational>> out;
  if (j.is_null()) return out;
  if (!j.is_array()) throw ParseError(std::string("field '") + field + "' must be an array");
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("basis") || !t.contains("coeff") || !t["basis"].is_string())
      throw ParseError(std::string("entries of '") + field + "' need 'basis' and 'coeff'");
    out.emplace_back(t["basis"].get<std::string>(), json_coeff(t["coeff"]));
  }
  return out;
}

}  // namespace detail

/// Parses and validates an algebra-description document.
inline AlgebraPtr load_algebra(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed algebra description: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("algebra description must be an object");
  SurfaceAlgebra::Description d;
  d.name = j.value("name", std::string("unnamed"));
  if (!j.contains("basis") || !j["basis"].is_array()) throw ParseError("missing 'basis' array");
  for (const auto& b : j["basis"]) {
    if (!b.is_object() || !b.contains("id") || !b.contains("degree") || !b["id"].is_string() ||
        !b["degree"].is_number_integer())
      throw ParseError("basis entries need string 'id' and integer 'degree'");
    d.basis.push_back({b["id"].get<std::string>(), b["degree"].get<int>()});
  }
  if (!j.contains("unit") || !j["unit"].is_string()) throw ParseError("missing 'unit'");
  d.unit = j["unit"].get<std::string>();
  if (j.contains("products")) {
    if (!j["products"].is_array()) throw ParseError("'products' must be an array");
    for (const auto& p : j["products"]) {
      if (!p.is_object() || !p.contains("left") || !p.contains("right") || !p["left"].is_string() ||
          !p["right"].is_string())
        throw ParseError("product entries need 'left', 'right', 'result'");
      d.products.emplace_back(p["left"].get<std::string>(), p["right"].get<std::string>(),
                              detail::json_terms(p.value("result", nlohmann::json::array()), "result"));
    }
  }
  d.integral = detail::json_terms(j.value("integral", nlohmann::json()), "integral");
  d.canonical_class = detail::json_terms(j.value("canonical_class", nlohmann::json()), "canonical_class");
  return SurfaceAlgebra::build(d);
}

inline std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : presets::kAll) out.emplace_back(name);
  return out;
}

inline AlgebraPtr load_preset(std::string_view name) {
  for (const auto& [n, text] : presets::kAll)
    if (n == name) return load_algebra(text);
  throw ParseError("unknown preset '" + std::string(name) + "'");
}

/// Resolves a preset name or a file path (with or without ".json").
inline AlgebraPtr load_algebra_source(const std::string& source) {
  namespace fs = std::filesystem;
  for (const std::string& candidate : {source, source + ".json"}) {
    std::error_code ec;
    if (fs::is_regular_file(candidate, ec)) {
      std::ifstream in(candidate);
      std::stringstream buf;
      buf << in.rdbuf();
      return load_algebra(buf.str());
    }
  }
  const std::string stem = fs::path(source).filename().string();
  for (const auto& [n, text] : presets::kAll)
    if (n == source || (n == stem && !fs::exists(source))) return load_algebra(text);
  throw ParseError("cannot read algebra description '" + source + "'");
}

}  // namespace hilbert

#endif  // HILBERT_SURFACE_ALGEBRA_HPP
