// Command-line front end: membership analysis, decomposition, real
// classification, latent-class model checks, invariant evaluation, and
// generation of the explicit tensor families. All reports are JSON documents
// with a schema_version field; identical inputs and seeds give byte-identical
// output.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "tenrank/families.hpp"
#include "tenrank/invariants.hpp"
#include "tenrank/json_io.hpp"
#include "tenrank/latent_class.hpp"
#include "tenrank/membership.hpp"
#include "tenrank/real_classification.hpp"

namespace {

using nlohmann::json;
using namespace tenrank;

constexpr int kExitParse = 64;
constexpr int kExitFormat = 65;
constexpr int kExitIndeterminate = 4;

struct CommonOpts {
  std::string input = "-";
  std::string backend = "auto";  // auto | exact | float
  double tol = 1e-9;
  std::uint64_t seed = 1729;
  bool pretty = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_input = true) {
  if (with_input)
    cmd->add_option("--input,-i", o.input, "Input file (\"-\" for stdin)")->capture_default_str();
  cmd->add_option("--backend", o.backend, "exact | float | auto")
      ->check(CLI::IsMember({"auto", "exact", "float"}))
      ->capture_default_str();
  cmd->add_option("--tol", o.tol, "Base tolerance for float verdicts")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Seed for all randomized sampling")->capture_default_str();
  cmd->add_flag("--pretty", o.pretty, "Indent JSON output");
  cmd->add_flag_callback("--json", [] {}, "Emit compact JSON (default)");
}

MembershipOptions membership_options(const CommonOpts& o) {
  MembershipOptions m;
  m.commutation_tol = o.tol;
  m.f_tol = o.tol;
  m.h_tol = o.tol;
  m.seed = o.seed;
  return m;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Resolves the requested backend against the input field. Promoting float
// data to exact is impossible; demoting exact data to float is allowed but
// loses exactness, so it is flagged.
TensorVariant resolve_backend(TensorVariant t, const std::string& backend,
                              std::vector<std::string>& warnings) {
  if (backend == "exact" && !is_rational(t))
    throw InputFormatError("--backend exact requires a rational tensor document");
  if (backend == "float" && is_rational(t)) {
    warnings.push_back("exact input demoted to the float backend; exactness lost");
    return TensorVariant(as_complex(t));
  }
  return t;
}

void emit(const json& doc, bool pretty) {
  std::cout << (pretty ? doc.dump(2) : doc.dump()) << "\n";
}

json analyze_document(const TensorVariant& input, const CommonOpts& o) {
  const MembershipOptions mo = membership_options(o);
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["type"] = "analysis";
  doc["n"] = n_of(input);
  doc["seed"] = o.seed;

  MembershipReport rep;
  MultilinearRank mlr;
  json tangles(json::value_t::object);
  if (is_rational(input)) {
    const auto& t = std::get<Tensor3<Rational>>(input);
    doc["backend"] = "exact";
    mlr = multilinear_rank(t);
    rep = classify(t, mo);
    if (t.n() == 3) tangles["tangle3"] = tangle3(t).str();
    if (t.n() == 4) tangles["tangle4"] = tangle4(t).str();
  } else {
    const auto& t = std::get<Tensor3<Complex>>(input);
    doc["backend"] = "float";
    mlr = multilinear_rank(t, mo.h_tol);
    rep = classify(t, mo);
    if (t.n() == 3) {
      const Complex v = tangle3(t);
      tangles["tangle3"] = json::array({v.real(), v.imag()});
    }
    if (t.n() == 4) {
      const Complex v = tangle4(t);
      tangles["tangle4"] = json::array({v.real(), v.imag()});
    }
  }
  doc["multilinear_rank"] = json::array({mlr.r1, mlr.r2, mlr.r3});
  doc["tangles"] = std::move(tangles);
  doc["membership"] = json::parse(membership_report_to_json(rep));
  doc["verdict"] = to_string(rep.verdict);
  doc["exit_code"] = exit_code(rep.verdict);
  return doc;
}

int run_analyze(const CommonOpts& o, const std::string& batch_dir) {
  if (!batch_dir.empty()) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(batch_dir))
      if (entry.is_regular_file() && entry.path().extension() == ".json")
        files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    // Per-file isolation: a bad file yields an error record, not a crash.
    std::vector<std::future<json>> futures;
    futures.reserve(files.size());
    for (const auto& path : files) {
      futures.push_back(std::async(std::launch::async, [path, &o]() -> json {
        json line;
        line["file"] = path.filename().string();
        try {
          std::vector<std::string> warnings;
          TensorVariant t =
              resolve_backend(parse_tensor_json(read_input(path.string())), o.backend, warnings);
          line["analysis"] = analyze_document(t, o);
          if (!warnings.empty()) line["warnings"] = warnings;
        } catch (const std::exception& e) {
          line["error"] = e.what();
        }
        return line;
      }));
    }
    for (auto& fut : futures) emit(fut.get(), false);
    return 0;
  }

  std::vector<std::string> warnings;
  TensorVariant t = resolve_backend(parse_tensor_json(read_input(o.input)), o.backend, warnings);
  json doc = analyze_document(t, o);
  if (!warnings.empty()) doc["warnings"] = warnings;
  emit(doc, o.pretty);
  return doc["exit_code"].get<int>();
}

int run_invariants(const CommonOpts& o) {
  std::vector<std::string> warnings;
  TensorVariant input =
      resolve_backend(parse_tensor_json(read_input(o.input)), o.backend, warnings);
  if (!is_rational(input))
    throw InputFormatError("invariants needs the exact backend; provide a rational tensor");
  const auto& t = std::get<Tensor3<Rational>>(input);
  const int n = t.n();

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["type"] = "invariants";
  doc["n"] = n;
  doc["backend"] = "exact";
  json h = json::array();
  json f = json::array();
  for (int axis = 1; axis <= 3; ++axis) {
    CovariantValue hv = h_covariant(t, axis);
    h.push_back(json{{"axis", axis},
                     {"poly", hv.poly.str()},
                     {"deg_p", hv.deg_p},
                     {"deg_x", hv.deg_x},
                     {"zero", hv.poly.is_zero()}});
    if (n <= kMaxSymbolicFDim) {
      CovariantValue fv = f_covariant(t, axis);
      f.push_back(json{{"axis", axis},
                       {"poly", fv.poly.str()},
                       {"deg_p", fv.deg_p},
                       {"deg_x", fv.deg_x},
                       {"zero", fv.poly.is_zero()}});
    }
  }
  doc["h"] = std::move(h);
  doc["f"] = std::move(f);
  if (n > kMaxSymbolicFDim)
    doc["notes"] = json::array({"f is not expanded symbolically for n > 5"});
  if (n == 3) doc["tangle3"] = tangle3(t).str();
  if (n == 4) doc["tangle4"] = tangle4(t).str();
  emit(doc, o.pretty);
  return 0;
}

int run_decompose(const CommonOpts& o) {
  std::vector<std::string> warnings;
  TensorVariant input =
      resolve_backend(parse_tensor_json(read_input(o.input)), o.backend, warnings);
  const MembershipOptions mo = membership_options(o);
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["type"] = "decompose";
  doc["n"] = n_of(input);
  try {
    Decomposition dec = is_rational(input)
                            ? decompose(std::get<Tensor3<Rational>>(input), mo)
                            : decompose(std::get<Tensor3<Complex>>(input), mo);
    doc["decomposition"] = json::parse(decomposition_to_json(dec));
    doc["verdict"] = "in-orbit";
    doc["exit_code"] = 0;
    if (!warnings.empty()) doc["warnings"] = warnings;
    emit(doc, o.pretty);
    return 0;
  } catch (const NotInOrbitError& e) {
    doc["membership"] = json::parse(membership_report_to_json(e.report));
    doc["verdict"] = to_string(e.report.verdict);
    doc["exit_code"] = exit_code(e.report.verdict);
    emit(doc, o.pretty);
    return exit_code(e.report.verdict);
  }
}

int run_classify_real(const CommonOpts& o) {
  std::vector<std::string> warnings;
  TensorVariant input =
      resolve_backend(parse_tensor_json(read_input(o.input)), o.backend, warnings);
  SignatureOptions so;
  so.membership = membership_options(o);
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["type"] = "classify_real";
  doc["n"] = n_of(input);
  try {
    SignatureReport rep = is_rational(input)
                              ? signature(std::get<Tensor3<Rational>>(input), so)
                              : signature(std::get<Tensor3<Complex>>(input), so);
    doc["signature"] = json::parse(signature_report_to_json(rep));
    doc["exit_code"] = rep.indeterminate ? kExitIndeterminate : 0;
    if (!warnings.empty()) doc["warnings"] = warnings;
    emit(doc, o.pretty);
    return doc["exit_code"].get<int>();
  } catch (const NotInOrbitError& e) {
    doc["membership"] = json::parse(membership_report_to_json(e.report));
    doc["verdict"] = to_string(e.report.verdict);
    doc["exit_code"] = exit_code(e.report.verdict);
    emit(doc, o.pretty);
    return exit_code(e.report.verdict);
  }
}

int run_check_model(const CommonOpts& o, bool strict) {
  TensorInput in = parse_tensor_or_counts_json(read_input(o.input));
  std::vector<std::string> warnings;
  TensorVariant input = resolve_backend(std::move(in.tensor), o.backend, warnings);
  LatentOptions lo;
  lo.membership = membership_options(o);
  lo.strict = strict;
  ModelReport rep = is_rational(input)
                        ? check_membership(std::get<Tensor3<Rational>>(input), lo)
                        : check_membership(std::get<Tensor3<Complex>>(input), lo);
  if (in.from_counts && in.min_count < 30)
    rep.notes.push_back("empirical table has a cell count below 30; the test addresses exact "
                        "distributions, treat the verdict with care");
  json doc = json::parse(model_report_to_json(rep));
  const int code = rep.overall == ConditionStatus::Pass
                       ? 0
                       : (rep.overall == ConditionStatus::Fail ? 3 : kExitIndeterminate);
  doc["exit_code"] = code;
  if (!warnings.empty()) doc["warnings"] = warnings;
  emit(doc, o.pretty);
  return code;
}

int run_gen(const std::string& family, int n, const std::string& eps_str, bool pretty) {
  Rational eps = eps_str.empty() ? Rational(0) : Rational::from_string(eps_str);
  Tensor3<Rational> t(2);
  if (family == "kn")
    t = gen_kn(n);
  else if (family == "kn-eps")
    t = gen_kn_eps(n, eps);
  else if (family == "kn-prime")
    t = gen_kn_prime(n);
  else if (family == "werner")
    t = gen_werner();
  else if (family == "l")
    t = gen_l();
  else if (family == "l-eps")
    t = gen_l_eps(eps);
  else
    throw InputFormatError("unknown family '" + family + "'");
  std::cout << tensor_to_json(t, pretty) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tenrank: rank-n orbit membership, invariants, and decompositions "
               "for n x n x n tensors"};
  app.require_subcommand(1);

  CommonOpts analyze_opts;
  std::string batch_dir;
  CLI::App* analyze = app.add_subcommand("analyze",
                                         "Multilinear rank, commutation relations, covariant "
                                         "status, tangles, and the membership verdict");
  add_common(analyze, analyze_opts);
  analyze->add_option("--batch", batch_dir, "Analyze every .json file in a directory");

  CommonOpts decompose_opts;
  CLI::App* dec = app.add_subcommand("decompose", "Rank-n decomposition P = D(g1, g2, g3)");
  add_common(dec, decompose_opts);

  CommonOpts real_opts;
  CLI::App* real = app.add_subcommand("classify-real",
                                      "Signature and path-component descriptor of a real tensor");
  add_common(real, real_opts);

  CommonOpts model_opts;
  bool strict = false;
  CLI::App* model = app.add_subcommand("check-model",
                                       "Semialgebraic latent-class membership test");
  add_common(model, model_opts);
  model->add_flag("--strict", strict, "Require strictly positive conditional probabilities");

  CommonOpts inv_opts;
  CLI::App* inv = app.add_subcommand("invariants", "Covariants h and f, and the tangles");
  add_common(inv, inv_opts);

  std::string family;
  int gen_n = 3;
  std::string eps_str;
  bool gen_pretty = false;
  CLI::App* gen = app.add_subcommand("gen", "Generate an explicit tensor family member");
  gen->add_option("--family", family, "kn | kn-eps | kn-prime | werner | l | l-eps")->required();
  gen->add_option("--n", gen_n, "Dimension")->capture_default_str();
  gen->add_option("--eps", eps_str, "Perturbation as p/q");
  gen->add_flag("--pretty", gen_pretty, "Indent JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (*analyze) return run_analyze(analyze_opts, batch_dir);
    if (*dec) return run_decompose(decompose_opts);
    if (*real) return run_classify_real(real_opts);
    if (*model) return run_check_model(model_opts, strict);
    if (*inv) return run_invariants(inv_opts);
    if (*gen) return run_gen(family, gen_n, eps_str, gen_pretty);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const InputFormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const DimensionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const InvalidTensorError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const IndeterminateError& e) {
    std::cerr << "indeterminate: " << e.what() << "\n";
    return kExitIndeterminate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIndeterminate;
  }
  return kExitParse;
}
