#include "kdet/cli.hpp"

#include <CLI11.hpp>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "kdet/config.hpp"
#include "kdet/criteria.hpp"
#include "kdet/parallel.hpp"
#include "kdet/sweep.hpp"
#include "kdet/verify.hpp"

namespace kdet::cli {

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

ProductLabel parse_label(const std::string& text, const DimensionVector& dims) {
  std::vector<int> labels;
  if (text.find(',') != std::string::npos) {
    for (const std::string& tok : split(text, ',')) labels.push_back(std::stoi(tok));
  } else {
    for (char c : text) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw std::invalid_argument("label '" + text + "' must be digits or comma-separated");
      }
      labels.push_back(c - '0');
    }
  }
  ProductLabel label(std::move(labels));
  flat_index(dims, label);  // validates
  return label;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void print_verdict(std::ostream& out, const CriterionVerdict& v) {
  out << "criterion=" << v.criterion << " k=" << v.k;
  if (!v.detail.empty()) out << ' ' << v.detail;
  out << " lhs=" << format_number(v.lhs) << " rhs=" << format_number(v.rhs)
      << " margin=" << format_number(v.margin) << " violated=" << (v.violated ? "true" : "false")
      << " conclusion=" << conclusion_text(v);
  for (const std::string& w : v.warnings) out << " warning=\"" << w << "\"";
  out << '\n';
}

/// Shared run parameters; flags and the --config document both feed this.
struct Options {
  std::string family;
  std::string state_file;
  std::string criteria = "thm1";
  std::string k_list = "2";
  double p = 0.0;
  double q = 0.0;
  std::string phi;    // "labels:labels"
  std::string base;   // label
  std::string omega;  // comma-separated levels
  int resolution = 201;
  int rays = 64;
  double tol_bisect = 1e-6;
  std::uint64_t seed = 42;
  std::string out_dir = ".";
  std::string format = "csv,svg";
  int workers = 0;
  std::string suite = "all";
  int samples = 500;
  int oracle_states = 100;
  int n_filter = 0;
};

void add_options(CLI::App& app, Options& opt) {
  app.add_option("--family", opt.family, "State family: ghzmix<N> or wqutritmix");
  app.add_option("--state-file", opt.state_file, "Plain-text mixture description");
  app.add_option("--criterion", opt.criteria,
                 "Comma-separated criteria: thm1,thm2,thm2k1,thm3,thm4,critI,critII,critIII,critIV");
  app.add_option("--k", opt.k_list, "Comma-separated k levels");
  app.add_option("--phi", opt.phi, "Swap fiducial as <labels>:<labels> (digits or comma lists)");
  app.add_option("--base", opt.base, "Element-fiducial base label");
  app.add_option("--omega", opt.omega, "Element-fiducial Omega levels, comma-separated");
  app.add_option("--p", opt.p, "Family parameter p");
  app.add_option("--q", opt.q, "Family parameter q");
  app.add_option("--resolution", opt.resolution, "Grid resolution per axis");
  app.add_option("--rays", opt.rays, "Ray count for threshold extraction");
  app.add_option("--tol", opt.tol_bisect, "Bisection tolerance in parameter distance");
  app.add_option("--seed", opt.seed, "Random seed for the verification suites");
  app.add_option("--out", opt.out_dir, "Output directory for sweep artifacts");
  app.add_option("--format", opt.format, "Sweep outputs to write: csv,svg");
  app.add_option("--workers", opt.workers, "Parallel worker cap (0 = hardware)");
  app.add_option("--suite", opt.suite, "Verify: all|oracle|soundness|special|observables");
  app.add_option("--samples", opt.samples, "Verify: samples per soundness configuration");
  app.add_option("--states", opt.oracle_states, "Verify: states per oracle configuration");
  app.add_option("--n", opt.n_filter, "Verify: restrict the oracle suite to N qubits");
}

struct FamilyChoice {
  std::optional<ParamFamily> family;        // when sweeping is possible
  std::optional<DensityOperator> fixed;     // eval only
  DimensionVector dims{std::vector<int>{2, 2}};
};

FamilyChoice resolve_state(const Options& opt, bool need_family) {
  if (opt.family.empty() == opt.state_file.empty()) {
    throw std::invalid_argument("exactly one of --family and --state-file is required");
  }
  FamilyChoice choice;
  if (!opt.family.empty()) {
    std::string f;
    for (char c : opt.family) f.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (f.rfind("ghzmix", 0) == 0) {
      const int n = std::stoi(f.substr(6));
      choice.family = ParamFamily::ghz_mix(n);
    } else if (f == "wqutritmix") {
      choice.family = ParamFamily::w_qutrit_mix();
    } else {
      throw std::invalid_argument("unknown family: " + opt.family);
    }
    choice.dims = choice.family->dims();
    require_simplex(opt.p, opt.q);
    return choice;
  }
  const MixtureDescription desc = load_state_file(opt.state_file);
  choice.dims = desc.dims;
  if (need_family) {
    choice.family = desc.to_param_family("custom");
  } else {
    choice.fixed = desc.to_density_operator();
  }
  return choice;
}

std::vector<CriterionSpec> resolve_specs(const Options& opt, const DimensionVector& dims) {
  std::optional<SwapFiducial> phi;
  if (!opt.phi.empty()) {
    const auto parts = split(opt.phi, ':');
    if (parts.size() != 2) throw std::invalid_argument("--phi must be <labels>:<labels>");
    phi = SwapFiducial::from_labels(dims, parse_label(parts[0], dims), parse_label(parts[1], dims));
  }
  std::optional<ElementFiducial> element;
  if (!opt.base.empty() || !opt.omega.empty()) {
    ProductLabel base =
        opt.base.empty() ? uniform_label(dims.site_count(), 0) : parse_label(opt.base, dims);
    std::vector<int> omega;
    if (opt.omega.empty()) {
      for (int w = 1; w < dims.uniform_dim(); ++w) omega.push_back(w);
    } else {
      for (const std::string& tok : split(opt.omega, ',')) omega.push_back(std::stoi(tok));
    }
    element = ElementFiducial(std::move(base), std::move(omega));
    element->validate_against(dims);
  }

  std::vector<int> ks;
  for (const std::string& tok : split(opt.k_list, ',')) ks.push_back(std::stoi(tok));
  if (ks.empty()) throw std::invalid_argument("--k must list at least one level");

  std::vector<CriterionSpec> specs;
  for (const std::string& name : split(opt.criteria, ',')) {
    const CriterionSpec::Kind kind = CriterionSpec::parse_kind(name);
    CriterionSpec base_spec;
    base_spec.kind = kind;
    base_spec.phi = phi;
    base_spec.element = element;
    if (base_spec.uses_k()) {
      for (int k : ks) {
        CriterionSpec s = base_spec;
        s.k = k;
        specs.push_back(std::move(s));
      }
    } else {
      specs.push_back(std::move(base_spec));
    }
  }
  return specs;
}

/// Pairing validation before any evaluation runs.
void validate_spec(const DimensionVector& dims, const CriterionSpec& spec) {
  const int n = dims.site_count();
  const auto require_qubits = [&] {
    for (int d : dims.dims()) {
      if (d != 2) {
        throw std::invalid_argument(std::string(spec.name()) +
                                    " is defined for qubit systems only");
      }
    }
  };
  const auto require_k = [&](int lo, int hi) {
    if (spec.k < lo || spec.k > hi) {
      throw std::invalid_argument(std::string(spec.name()) + ": k=" + std::to_string(spec.k) +
                                  " outside [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
    }
  };
  switch (spec.kind) {
    case CriterionSpec::Kind::thm1: require_k(1, n - 1); break;
    case CriterionSpec::Kind::thm3: require_k(2, n); break;
    case CriterionSpec::Kind::thm2:
      dims.uniform_dim();
      require_k(2, n - 1);
      break;
    case CriterionSpec::Kind::thm4:
      dims.uniform_dim();
      require_k(2, n - 1);
      break;
    case CriterionSpec::Kind::thm2k1: dims.uniform_dim(); break;
    case CriterionSpec::Kind::crit_I:
      require_qubits();
      require_k(1, n - 1);
      break;
    case CriterionSpec::Kind::crit_II:
      require_qubits();
      require_k(2, n);
      break;
    case CriterionSpec::Kind::crit_III: dims.uniform_dim(); break;
    case CriterionSpec::Kind::crit_IV:
      dims.uniform_dim();
      require_k(2, n - 1);
      break;
  }
  if (spec.phi && spec.phi->phi1.dims() != dims) {
    throw std::invalid_argument("--phi does not match the state dimensions");
  }
  if (spec.element) spec.element->validate_against(dims);
}

int cmd_eval(const Options& opt, std::ostream& out) {
  const FamilyChoice choice = resolve_state(opt, false);
  const std::vector<CriterionSpec> specs = resolve_specs(opt, choice.dims);
  for (const CriterionSpec& spec : specs) validate_spec(choice.dims, spec);
  const DensityOperator rho =
      choice.family ? choice.family->at(opt.p, opt.q) : *choice.fixed;
  for (const CriterionSpec& spec : specs) {
    if (spec.kind == CriterionSpec::Kind::thm2k1) {
      const CriterionSpec resolved = spec;
      const ElementFiducial f =
          resolved.element ? *resolved.element : default_element_fiducial(choice.dims);
      for (const CriterionVerdict& v : theorem2_k1_evaluate(rho, f)) print_verdict(out, v);
    } else {
      print_verdict(out, evaluate_criterion(rho, spec));
    }
  }
  return 0;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open output file: " + path.string());
  f << content;
  if (!f) throw IoError("write failed: " + path.string());
}

int cmd_sweep(const Options& opt, std::ostream& out) {
  const FamilyChoice choice = resolve_state(opt, true);
  const ParamFamily& family = *choice.family;
  const std::vector<CriterionSpec> specs = resolve_specs(opt, choice.dims);
  for (const CriterionSpec& spec : specs) {
    if (spec.kind == CriterionSpec::Kind::thm2k1) {
      throw std::invalid_argument("thm2k1 is not sweepable; pick a single-verdict criterion");
    }
    validate_spec(choice.dims, spec);
  }
  bool want_csv = false, want_svg = false;
  for (const std::string& f : split(opt.format, ',')) {
    if (f == "csv") want_csv = true;
    else if (f == "svg") want_svg = true;
    else if (!f.empty()) throw std::invalid_argument("unknown format: " + f);
  }
  const int workers = opt.workers > 0 ? opt.workers : default_worker_count();

  std::error_code ec;
  std::filesystem::create_directories(opt.out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + opt.out_dir);

  std::vector<ThresholdCurve> curves;
  for (const CriterionSpec& spec : specs) {
    const std::string stem = family.name() + "_" + spec.name() + "_k" +
                             std::to_string(spec.uses_k() ? spec.k : 2);
    const SweepGrid grid = grid_sweep(family, spec, opt.resolution, workers);
    const ThresholdCurve curve = threshold_curve(family, spec, opt.rays, opt.tol_bisect, workers);
    if (want_csv) {
      write_file(std::filesystem::path(opt.out_dir) / (stem + ".csv"), grid_to_csv(grid));
      write_file(std::filesystem::path(opt.out_dir) / (stem + "_curve.csv"), curve_to_csv(curve));
    }
    if (want_svg) {
      write_file(std::filesystem::path(opt.out_dir) / (stem + ".svg"),
                 curves_to_svg(std::span<const ThresholdCurve>(&curve, 1)));
    }
    out << stem << ": " << curve.points.size() << "/" << curve.total_rays
        << " rays crossed threshold\n";
    curves.push_back(curve);
  }
  if (want_svg && curves.size() > 1) {
    write_file(std::filesystem::path(opt.out_dir) / (family.name() + "_combined.svg"),
               curves_to_svg(curves));
  }
  return 0;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  std::vector<verify::SuiteResult> results;
  const bool all = opt.suite == "all";
  if (all || opt.suite == "oracle") {
    results.push_back(verify::oracle_suite(opt.seed, opt.oracle_states, opt.n_filter));
  }
  if (all || opt.suite == "soundness") {
    results.push_back(verify::soundness_suite(opt.seed, opt.samples));
  }
  if (all || opt.suite == "special") {
    results.push_back(verify::special_case_suite(opt.seed, 200));
  }
  if (all || opt.suite == "observables") {
    results.push_back(verify::observable_suite(opt.seed));
  }
  if (results.empty()) throw std::invalid_argument("unknown suite: " + opt.suite);

  bool failed = false;
  for (const verify::SuiteResult& r : results) {
    out << "suite " << r.name << ": " << r.checks << " checks, " << r.failures << " failures\n";
    for (const std::string& m : r.messages) out << "  " << m << '\n';
    failed = failed || !r.passed();
  }
  out << (failed ? "FAIL" : "OK") << '\n';
  return failed ? 2 : 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"k-partite entanglement and k-nonseparability criteria"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Plain-text run configuration (key=value); flags win");

  Options opt;
  add_options(app, opt);
  CLI::App* eval = app.add_subcommand("eval", "Evaluate criteria at fixed parameters");
  CLI::App* sweep = app.add_subcommand("sweep", "Margin grids and threshold curves over (p,q)");
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the verification suites");
  for (CLI::App* sub : {eval, sweep, verify_cmd}) sub->fallthrough(true);

  std::vector<std::string> argv(args);
  argv.insert(argv.begin(), "kdet");
  std::vector<const char*> raw;
  raw.reserve(argv.size());
  for (const std::string& a : argv) raw.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (eval->parsed()) return cmd_eval(opt, out);
    if (sweep->parsed()) return cmd_sweep(opt, out);
    if (verify_cmd->parsed()) return cmd_verify(opt, out);
    err << "no subcommand given\n";
    return 1;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace kdet::cli
