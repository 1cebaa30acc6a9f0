#ifndef HILBERT_CLI_HPP
#define HILBERT_CLI_HPP

#include "CLI11.hpp"
#include "json.hpp"

#include <ostream>
#include <string>
#include <vector>

#include "hilbert/class_algebra.hpp"
#include "hilbert/generators.hpp"
#include "hilbert/relations.hpp"

namespace hilbert::cli {

enum ExitCode : int { kPass = 0, kDiscrepancy = 1, kInputError = 2, kResourceCap = 3 };

using Json = nlohmann::ordered_json;

struct Options {
  std::string format = "text";
  int jobs = 1;
  bool timing = false;
};

namespace detail {

inline bool structured(const Options& o) { return o.format == "structured"; }

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

inline Json header(const std::string& command) {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  return j;
}

inline std::vector<int> parse_classes(const SurfaceAlgebra& alg, const std::string& list) {
  std::vector<int> out;
  if (list.empty()) return out;
  std::stringstream ss(list);
  std::string id;
  while (std::getline(ss, id, ',')) out.push_back(alg.index_of(id));
  return out;
}

inline Json report_json(const RelationReport& r, const Options& o) {
  Json j = header("verify");
  j["suite"] = r.suite;
  j["algebra"] = r.algebra;
  j["max_weight"] = r.truncation;
  Json params = Json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = params;
  j["checked"] = r.checked_count;
  j["discrepancy_count"] = r.discrepancy_count;
  Json ds = Json::array();
  for (const auto& d : r.discrepancies) ds.push_back({{"identity", d.identity}, {"input", d.input}, {"difference", d.difference}});
  j["discrepancies"] = ds;
  Json ids = Json::array();
  for (const auto& c : r.identities)
    ids.push_back({{"label", c.label}, {"checked", c.checked}, {"discrepancies", c.discrepancies}});
  j["identities"] = ids;
  if (o.timing) j["wall_time"] = r.wall_time;
  j["status"] = r.passed() ? "pass" : "fail";
  return j;
}

inline void report_text(const RelationReport& r, const Options& o, bool per_identity, std::ostream& out) {
  out << "suite " << r.suite << ", algebra " << r.algebra << ", max weight " << r.truncation << "\n";
  for (const auto& [k, v] : r.parameters) out << "  " << k << ": " << v << "\n";
  if (per_identity)
    for (const auto& c : r.identities)
      out << "  " << c.label << ": checked " << c.checked << ", discrepancies " << c.discrepancies << "\n";
  for (const auto& d : r.discrepancies) out << "  MISMATCH " << d.identity << " on " << d.input << ": " << d.difference << "\n";
  if (o.timing) out << "wall time " << r.wall_time << " s\n";
  out << "checked " << r.checked_count << ", discrepancies " << r.discrepancy_count << " : "
      << (r.passed() ? "PASS" : "FAIL") << "\n";
}

inline std::string join(const std::vector<int>& v, const char* sep) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? sep : "") + std::to_string(v[k]);
  return s;
}

}  // namespace detail

struct VerifyConfig {
  std::string suite;
  std::string algebra = "p2";
  int max_weight = 5;
  int index_max = 3;
  int k_max = 3;
  int a_max = 3;
  std::string classes;
  bool per_identity = false;
};

inline RelationReport run_suite(const VerifyConfig& c, const Options& o) {
  if (c.max_weight < 1) throw DomainError("--max-weight must be >= 1");
  const AlgebraPtr alg = load_algebra_source(c.algebra);
  const OperatorCalculus calc(alg);
  const std::vector<int> classes = detail::parse_classes(*alg, c.classes);
  if (c.suite == "heisenberg" || c.suite == "Lq" || c.suite == "LL" || c.suite == "qprime") {
    RelationRanges ranges;
    ranges.n_max = ranges.m_max = c.index_max;
    ranges.left = ranges.right = classes;
    return verify_relations(c.suite, calc, ranges, c.max_weight, o.jobs);
  }
  if (c.suite == "dself") return verify_boundary_self_adjoint(calc, c.max_weight, o.jobs);
  if (c.suite == "expansion" || c.suite == "lemma217") return verify_expansion(calc, c.max_weight, o.jobs, c.a_max, classes);
  if (c.suite == "generators") return verify_generator_classes(calc, c.max_weight);
  if (c.suite == "leading") return verify_leading_terms(calc, c.max_weight);
  if (c.suite == "all-ones" || c.suite == "vi") return verify_all_ones(calc, c.k_max, c.max_weight, o.jobs, classes);
  throw DomainError("unknown suite '" + c.suite + "'");
}

inline int cmd_verify(const VerifyConfig& c, const Options& o, std::ostream& out) {
  const RelationReport r = run_suite(c, o);
  if (detail::structured(o)) detail::emit(out, detail::report_json(r, o));
  else detail::report_text(r, o, c.per_identity, out);
  return r.passed() ? kPass : kDiscrepancy;
}

inline int cmd_algebra_validate(const std::string& source, const Options& o, std::ostream& out) {
  const AlgebraPtr alg = load_algebra_source(source);
  int odd = 0;
  for (int k = 0; k < alg->dim(); ++k) odd += alg->odd(k);
  const Rational k2 = alg->integral(alg->mul(alg->canonical_class(), alg->canonical_class()));
  if (detail::structured(o)) {
    Json j = detail::header("algebra validate");
    j["algebra"] = alg->name();
    j["basis_classes"] = alg->dim();
    j["odd_classes"] = odd;
    j["top_degree"] = alg->top_degree();
    j["pairing"] = "nondegenerate";
    j["euler_characteristic"] = alg->euler_characteristic().to_string();
    j["canonical_square"] = k2.to_string();
    j["status"] = "ok";
    detail::emit(out, j);
  } else {
    out << alg->name() << ": " << alg->dim() << " basis classes, pairing nondegenerate\n";
    out << "top degree " << alg->top_degree() << ", odd classes " << odd << ", euler characteristic "
        << alg->euler_characteristic() << ", K^2 " << k2 << "\n";
  }
  return kPass;
}

struct ClassConfig {
  std::string kind;
  int i = 0;
  std::string gamma;
  int n = 1;
  std::string algebra = "p2";
};

inline int cmd_class(const ClassConfig& c, const Options& o, std::ostream& out) {
  const AlgebraPtr alg = load_algebra_source(c.algebra);
  const AlgebraElement gamma = alg->parse_element(c.gamma);
  GeneratorClass g;
  if (c.kind == "B") {
    g = b_class(*alg, c.i, gamma, c.n);
  } else {
    const OperatorCalculus calc(alg);
    g = g_class(calc, c.i, gamma, c.n);
  }
  const std::string value = render(*alg, g.value);
  if (detail::structured(o)) {
    Json j = detail::header("class");
    j["kind"] = c.kind;
    j["i"] = c.i;
    j["gamma"] = alg->render(gamma);
    j["n"] = c.n;
    j["algebra"] = alg->name();
    j["value"] = value;
    detail::emit(out, j);
  } else {
    out << value << "\n";
  }
  return kPass;
}

inline int cmd_oracle_product(int n, const std::string& lambda, const std::string& mu, int cap, const Options& o,
                              std::ostream& out) {
  const ClassAlgebra& alg = class_algebra(n, cap);
  const Partition l = Partition::parse(lambda), m = Partition::parse(mu);
  const CentralElement p = alg.product(l, m);
  if (detail::structured(o)) {
    Json j = detail::header("oracle product");
    j["n"] = n;
    j["lambda"] = l.to_string();
    j["mu"] = m.to_string();
    Json cs = Json::array();
    for (const auto& [nu, c] : p.coeffs) cs.push_back({{"nu", nu.to_string()}, {"coefficient", c.to_string()}});
    j["coefficients"] = cs;
    j["product"] = p.to_string();
    detail::emit(out, j);
  } else {
    out << p.to_string() << "\n";
  }
  return kPass;
}

inline int cmd_oracle_generate(int n, bool drop, int cap, const Options& o, std::ostream& out) {
  const ClassAlgebra& alg = class_algebra(n, cap);
  const ClosureReport r = drop ? drop_generator_diagnostic(alg, o.jobs) : generation_closure(alg, hook_generators(n), o.jobs);
  const std::string verdict = r.generated ? "GENERATED" : "NOT GENERATED";
  if (detail::structured(o)) {
    Json j = detail::header("oracle generate");
    j["n"] = n;
    j["generators"] = r.generators;
    j["dropped"] = drop ? Json(hook_partition(1, n).to_string()) : Json(nullptr);
    j["rounds"] = r.rounds;
    j["dims"] = r.dims;
    j["fh_profile"] = r.fh_profile;
    j["dimension"] = r.dimension;
    j["partitions"] = r.target;
    j["generated"] = r.generated;
    detail::emit(out, j);
  } else {
    out << "generators " << r.generators.size() << (drop ? " (without C" + hook_partition(1, n).to_string() + ")" : "")
        << ", rounds " << r.rounds << "\n";
    out << "dims " << detail::join(r.dims, " -> ") << "\n";
    out << "max fh degree per round " << detail::join(r.fh_profile, " ") << "\n";
    out << "dim " << r.dimension << " / p(" << n << ") " << r.target << " : " << verdict << "\n";
  }
  if (drop) return kPass;
  return r.generated ? kPass : kDiscrepancy;
}

inline int cmd_oracle_subadditivity(int n, int cap, const Options& o, std::ostream& out) {
  const SubadditivityReport r = subadditivity_check(class_algebra(n, cap));
  if (detail::structured(o)) {
    Json j = detail::header("oracle subadditivity");
    j["n"] = n;
    j["pairs_checked"] = r.pairs_checked;
    j["violations"] = r.violations;
    j["status"] = r.ok() ? "pass" : "fail";
    detail::emit(out, j);
  } else {
    for (const auto& v : r.violations) out << "  VIOLATION " << v << "\n";
    out << "pairs " << r.pairs_checked << ", violations " << r.violations.size() << " : " << (r.ok() ? "PASS" : "FAIL")
        << "\n";
  }
  return r.ok() ? kPass : kDiscrepancy;
}

inline int exit_code_for(const Error& e) {
  return e.kind() == "CapExceeded" || e.kind() == "TruncationExceeded" ? kResourceCap : kInputError;
}

/// Entry point. Returns the process exit status.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Heisenberg/Virasoro calculus on Fock spaces of surfaces", "hilbertctl"};
  app.require_subcommand(1);
  Options opts;
  app.add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--jobs", opts.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--timing", opts.timing, "Include wall time (output is then not byte-stable)");

  auto* algebra = app.add_subcommand("algebra", "Algebra descriptions");
  algebra->require_subcommand(1);
  auto* validate = algebra->add_subcommand("validate", "Load and check an algebra description");
  std::string source;
  validate->add_option("source", source, "Preset name or JSON file")->required();

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  VerifyConfig vc;
  verify->add_option("--suite", vc.suite)
      ->required()
      ->check(CLI::IsMember({"heisenberg", "Lq", "LL", "qprime", "dself", "expansion", "lemma217", "generators", "leading",
                            "all-ones", "vi"}));
  verify->add_option("--algebra", vc.algebra, "Preset name or JSON file");
  verify->add_option("--max-weight", vc.max_weight, "Truncation weight N");
  verify->add_option("--index-max", vc.index_max, "Bound on |n|, |m| in relation suites");
  verify->add_option("--k-max", vc.k_max, "Largest k in the all-ones suite");
  verify->add_option("--a-max", vc.a_max, "Largest a in the expansion suite");
  verify->add_option("--classes", vc.classes, "Comma-separated basis ids to draw classes from");
  verify->add_flag("--per-identity", vc.per_identity, "List counts for every identity");

  auto* klass = app.add_subcommand("class", "Print B_i(gamma, n) or G_i(gamma, n)");
  ClassConfig cc;
  klass->add_option("kind", cc.kind)->required()->check(CLI::IsMember({"B", "G"}));
  klass->add_option("--i", cc.i)->required();
  klass->add_option("--gamma", cc.gamma)->required();
  klass->add_option("--n", cc.n)->required();
  klass->add_option("--algebra", cc.algebra);

  auto* oracle = app.add_subcommand("oracle", "Symmetric-group class algebra");
  oracle->require_subcommand(1);
  int cap = ClassAlgebra::kDefaultCap;
  oracle->add_option("--cap", cap, "Largest admissible n");
  auto* product = oracle->add_subcommand("product", "C_lambda * C_mu");
  int on = 0;
  std::string lambda, mu;
  product->add_option("--n", on)->required();
  product->add_option("--lambda", lambda)->required();
  product->add_option("--mu", mu)->required();
  auto* generate = oracle->add_subcommand("generate", "Closure of the hook classes");
  bool drop = false;
  generate->add_option("--n", on)->required();
  generate->add_flag("--drop-transpositions", drop, "Leave out C_(2,1^(n-2))");
  auto* subadd = oracle->add_subcommand("subadditivity", "Filtration sub-additivity of structure constants");
  subadd->add_option("--n", on)->required();

  for (auto* sub : {algebra, validate, verify, klass, oracle, product, generate, subadd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*validate) return cmd_algebra_validate(source, opts, out);
    if (*verify) return cmd_verify(vc, opts, out);
    if (*klass) return cmd_class(cc, opts, out);
    if (*product) return cmd_oracle_product(on, lambda, mu, cap, opts, out);
    if (*generate) return cmd_oracle_generate(on, drop, cap, opts, out);
    if (*subadd) return cmd_oracle_subadditivity(on, cap, opts, out);
  } catch (const Error& e) {
    if (detail::structured(opts)) {
      Json j = detail::header("error");
      j["status"] = "error";
      j["error"] = {{"kind", e.kind()}, {"message", e.what()}};
      detail::emit(out, j);
    }
    err << "error: " << e.kind() << ": " << e.what() << "\n";
    return exit_code_for(e);
  }
  err << "error: no command\n";
  return kInputError;
}

}  // namespace hilbert::cli

#endif  // HILBERT_CLI_HPP
