// Acceptance gate. One PASS/FAIL line per criterion, exact equality throughout.
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "hilbert/hilbert.hpp"

using namespace hilbert;

namespace {

const std::vector<std::string> kSurfaces = {"p2", "p1xp1", "torus_like"};
const std::vector<std::string> kAllPresets = {"p2", "p1xp1", "torus_like", "point"};

struct Check {
  bool ok = true;
  std::vector<std::string> lines;

  void report(const RelationReport& r) {
    std::string line = r.suite + " on " + r.algebra + " N=" + std::to_string(r.truncation) + ": checked " +
                       std::to_string(r.checked_count) + ", discrepancies " + std::to_string(r.discrepancy_count);
    for (const auto& [k, v] : r.parameters)
      if (k != "fh_proxy_failures") line += ", " + k + " " + v;
    lines.push_back(line);
    for (const auto& d : r.discrepancies) lines.push_back("  MISMATCH " + d.identity + " on " + d.input + ": " + d.difference);
    ok = ok && r.passed() && r.checked_count > 0;
  }
  void expect(bool cond, const std::string& what) {
    lines.push_back(std::string(cond ? "ok: " : "FAILED: ") + what);
    ok = ok && cond;
  }
};

struct OperatorSetup {
  AlgebraPtr alg;
  OperatorCalculus calc;
  explicit OperatorSetup(const std::string& name) : alg(load_preset(name)), calc(alg) {}
};

Check heisenberg_relations() {
  Check c;
  for (const auto& name : kSurfaces) {
    OperatorSetup s(name);
    c.report(verify_relations("heisenberg", s.calc, RelationRanges{3, 3, {}, {}}, 6));
  }
  return c;
}

Check virasoro_relations() {
  Check c;
  for (const auto& name : kSurfaces) {
    OperatorSetup s(name);
    const std::vector<int> even = even_classes(*s.alg);
    const RelationRanges ranges{2, 2, even, even};
    c.report(verify_relations("Lq", s.calc, ranges, 5));
    c.report(verify_relations("LL", s.calc, ranges, 5));
  }
  auto p2 = load_preset("p2");
  auto torus = load_preset("torus_like");
  const Rational central_p2 = ll_central_term(*p2, 2, -2, p2->unit(), p2->unit());
  const Rational central_torus = ll_central_term(*torus, 2, -2, torus->unit(), torus->unit());
  c.expect(central_p2 == Rational(-3, 2), "central term (2,-2), alpha = beta = 1 on p2 is " + central_p2.to_string());
  c.expect(central_torus == Rational(0), "central term (2,-2), alpha = beta = 1 on torus_like is " + central_torus.to_string());
  c.expect(central_p2 == Rational(-1, 2) * p2->euler_characteristic(), "central term on p2 equals -chi/2");
  return c;
}

Check derivative_formula() {
  Check c;
  for (const auto& name : kSurfaces) {
    OperatorSetup s(name);
    c.report(verify_relations("qprime", s.calc, RelationRanges{3, 3, {}, {}}, 5));
    c.report(verify_boundary_self_adjoint(s.calc, 5));
  }
  return c;
}

Check expansion() {
  Check c;
  for (const auto& name : {"p2", "torus_like"}) {
    OperatorSetup s(name);
    c.report(verify_expansion(s.calc, 5));
  }
  return c;
}

Check generator_identities() {
  Check c;
  for (const auto& name : kAllPresets) {
    OperatorSetup s(name);
    c.report(verify_generator_classes(s.calc, 6));
  }
  return c;
}

Check leading_terms() {
  Check c;
  for (const auto& name : kAllPresets) {
    OperatorSetup s(name);
    const RelationReport r = verify_leading_terms(s.calc, 5);
    c.report(r);
    for (const auto& [k, v] : r.parameters)
      if (k == "fh_proxy") {
        const auto slash = v.find('/');
        c.expect(v.substr(0, slash) == v.substr(slash + 1), "filtration proxy on " + name + " holds for " + v);
      }
  }
  return c;
}

Check all_ones() {
  Check c;
  for (const auto& name : kAllPresets) {
    OperatorSetup s(name);
    // all tuples of basis classes, except on torus_like where the tuples are
    // drawn from 1, the four degree-1 generators, x12, x34 and the point class
    std::vector<int> classes;
    if (name == "torus_like")
      for (const char* id : {"1", "x1", "x2", "x3", "x4", "x12", "x34", "x1234"}) classes.push_back(s.alg->index_of(id));
    c.report(verify_all_ones(s.calc, 3, 5, 1, classes));
  }
  return c;
}

Check generation() {
  Check c;
  const std::vector<int> expected = {0, 1, 2, 3, 5, 7, 11, 15, 22};
  for (int n = 2; n <= 8; ++n) {
    const ClosureReport r = generation_closure(class_algebra(n), hook_generators(n));
    std::string dims;
    for (int d : r.dims) dims += (dims.empty() ? "" : " -> ") + std::to_string(d);
    c.expect(r.generated && r.dimension == expected[n],
             "n=" + std::to_string(n) + ": dim " + std::to_string(r.dimension) + " / p(" + std::to_string(n) + ") " +
                 std::to_string(expected[n]) + " (dims " + dims + ")");
  }
  const Partition t = Partition::from({2, 1});
  const CentralElement sq = class_product(t, t, 3);
  c.expect(sq == CentralElement::class_sum(Partition::from({1, 1, 1}), 3) + CentralElement::class_sum(Partition::from({3}), 3),
           "C[2,1]^2 = " + sq.to_string());
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"1 Heisenberg relations |n|,|m| <= 3, N = 6", heisenberg_relations},
      {"2 Virasoro relations |n|,|m| <= 2, even classes, N = 5, central term", virasoro_relations},
      {"3 derivative formula n in +-1..3, N = 5; d self-adjoint to weight 5", derivative_formula},
      {"4 expansion vs direct application, a <= 3, weight <= 5", expansion},
      {"5 B_0 = n 1, G_0 = B_0, B_1 = -2 G_1 for n <= 6", generator_identities},
      {"6 leading-term law 2 <= i < n <= 5", leading_terms},
      {"7 all-ones bracket identity k <= 3, weight <= 5", all_ones},
      {"8 hook classes generate the class algebra, 2 <= n <= 8", generation},
  };
  int failed = 0;
  for (const auto& [title, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check c;
    try {
      c = run();
    } catch (const std::exception& e) {
      c.ok = false;
      c.lines.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& l : c.lines) std::cout << "    " << l << "\n";
    std::cout << (c.ok ? "PASS " : "FAIL ") << title << " (" << std::fixed << std::setprecision(1) << secs << " s)\n"
              << std::flush;
    failed += !c.ok;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << "\n";
  return failed ? 1 : 0;
}
