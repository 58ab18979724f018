#include "trirep/cli.hpp"

#include "trirep/algebra.hpp"
#include "trirep/families.hpp"
#include "trirep/io.hpp"
#include "trirep/poly.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace trirep {

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kNumerical = 2;

struct SeedOptions {
  double delta = 0.0;
  std::string phi0 = "0", delta0 = "0", v0 = "0";
  std::string b0, b0_tilde;
  bool force_complex = false;
};

struct FamilyOptions {
  std::string family;
  std::string spec_file;
  double alpha = 0.0, beta = 0.0, gamma = 0.5, t = 1e-6;
  int N = 0;
  std::string a = "0", b = "0", c = "0", d = "0";
};

struct Output {
  std::string path = "-";
  std::string format = "json";
};

void add_seed_options(CLI::App* cmd, SeedOptions& s) {
  cmd->add_option("--delta", s.delta, "Structure constant Delta")->required();
  cmd->add_option("--phi0", s.phi0, "Seed phi0 (re+imi accepted)");
  cmd->add_option("--delta0", s.delta0, "Seed delta0 (re+imi accepted)");
  cmd->add_option("--v0", s.v0, "First diagonal entry of Z (re+imi accepted)");
  auto* b0 = cmd->add_option("--b0", s.b0, "First diagonal entry of X (re+imi accepted)");
  auto* bt = cmd->add_option("--b0-tilde", s.b0_tilde,
                             "b0 - (delta0 + phi0 + 1) v0 / 2; alternative to --b0");
  b0->excludes(bt);
  cmd->add_flag("--complex", s.force_complex, "Compute in complex arithmetic");
}

void add_family_options(CLI::App* cmd, FamilyOptions& f) {
  cmd->add_option("--family", f.family, "jacobi | continuous_hahn | hahn | para_krawtchouk")
      ->check(CLI::IsMember({"jacobi", "continuous_hahn", "hahn", "para_krawtchouk"}));
  cmd->add_option("--spec", f.spec_file, "FamilySpec JSON file")->check(CLI::ExistingFile);
  cmd->add_option("--alpha", f.alpha, "Jacobi / Hahn alpha");
  cmd->add_option("--beta", f.beta, "Jacobi / Hahn beta");
  cmd->add_option("--N", f.N, "Hahn / para-Krawtchouk N");
  cmd->add_option("--gamma", f.gamma, "para-Krawtchouk gamma");
  cmd->add_option("--t", f.t, "para-Krawtchouk regulator for single builds");
  cmd->add_option("--a", f.a, "continuous Hahn a (re+imi)");
  cmd->add_option("--b", f.b, "continuous Hahn b (re+imi)");
  cmd->add_option("--c", f.c, "continuous Hahn c (re+imi)");
  cmd->add_option("--d", f.d, "continuous Hahn d (re+imi)");
}

void add_output_options(CLI::App* cmd, Output& o, std::vector<std::string> formats) {
  cmd->add_option("-o,--output", o.path, "Output file, '-' for stdout")->capture_default_str();
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember(std::move(formats)))
      ->capture_default_str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, "'" + path + "': " + e.what());
  }
}

void emit(const Output& o, const std::string& text, std::ostream& out) {
  if (o.path == "-") {
    out << text;
    return;
  }
  std::ofstream f(o.path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + o.path + "'");
  f << text;
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);
  return buf;
}

std::string fmt17(const Complex& z) {
  if (z.imag() == 0.0) return fmt17(z.real());
  return fmt17(z.real()) + (z.imag() < 0 ? "" : "+") + fmt17(z.imag()) + "i";
}

FamilySpec family_spec(const FamilyOptions& f) {
  if (!f.spec_file.empty()) return family_from_json(read_json_file(f.spec_file));
  if (f.family.empty()) throw Error(ErrorCode::InvalidArgument, "--family or --spec is required");
  if (f.family == "jacobi") return JacobiFamily{f.alpha, f.beta};
  if (f.family == "continuous_hahn") {
    return ContinuousHahnFamily{parse_complex(f.a), parse_complex(f.b), parse_complex(f.c),
                                parse_complex(f.d)};
  }
  if (f.family == "hahn") return HahnFamily{f.alpha, f.beta, f.N};
  return ParaKrawtchoukFamily{f.N, f.gamma, f.t};
}

template <FieldScalar Scalar>
Scalar narrow(const Complex& z) {
  if constexpr (is_complex_v<Scalar>) {
    return z;
  } else {
    return z.real();
  }
}

template <FieldScalar Scalar>
AlgebraParams<Scalar> seed_params(const SeedOptions& s) {
  const Complex phi0 = parse_complex(s.phi0);
  const Complex delta0 = parse_complex(s.delta0);
  const Complex v0 = parse_complex(s.v0);
  if (!s.b0_tilde.empty()) {
    return AlgebraParams<Scalar>::from_b0_tilde(s.delta, narrow<Scalar>(phi0), narrow<Scalar>(delta0),
                                                narrow<Scalar>(v0),
                                                narrow<Scalar>(parse_complex(s.b0_tilde)));
  }
  const Complex b0 = s.b0.empty() ? Complex(0) : parse_complex(s.b0);
  return {s.delta, narrow<Scalar>(phi0), narrow<Scalar>(delta0), narrow<Scalar>(v0), narrow<Scalar>(b0)};
}

bool seeds_are_complex(const SeedOptions& s) {
  if (s.force_complex) return true;
  for (const auto* text : {&s.phi0, &s.delta0, &s.v0, &s.b0, &s.b0_tilde})
    if (!text->empty() && parse_complex(*text).imag() != 0.0) return true;
  return false;
}

template <FieldScalar Scalar>
std::string rep_table(const Representation<Scalar>& rep) {
  const auto& r = rep.coeffs;
  std::ostringstream os;
  os << "# dim " << r.dim() << (r.closed ? " (closed)" : " (truncated)") << "\n";
  os << "n\ta\tb\tc\tu\tv\tw\tkappa\n";
  for (Eigen::Index n = 0; n < r.dim(); ++n) {
    os << n << '\t' << fmt17(Complex(r.a(n))) << '\t' << fmt17(Complex(r.b(n))) << '\t'
       << fmt17(Complex(r.c(n))) << '\t' << fmt17(Complex(r.u(n))) << '\t'
       << fmt17(Complex(r.v(n))) << '\t' << fmt17(Complex(r.w(n))) << '\t'
       << fmt17(Complex(r.kappa(n))) << '\n';
  }
  return os.str();
}

template <FieldScalar Scalar>
int run_build(const SeedOptions& s, int size, const std::string& gauge, const Output& o,
              std::ostream& out, std::ostream& err) {
  const auto p = seed_params<Scalar>(s);
  const auto rep = build_representation(
      p, size, gauge == "unit_w" ? GaugeChoice::unit_w() : GaugeChoice::split_sqrt());
  if (rep.coeffs.closed && rep.coeffs.dim() < size) {
    err << "representation closes at dimension " << rep.coeffs.dim() << "\n";
  }
  emit(o, o.format == "table" ? rep_table(rep) : dump(representation_to_json(rep)), out);
  return kOk;
}

MonicRecurrence<double> recurrence_source(const FamilyOptions& f, const std::string& rep_file,
                                          int& dim, std::ostream& err) {
  if (!rep_file.empty()) {
    const auto any = representation_from_json(read_json_file(rep_file));
    MonicRecurrence<double> rec = std::visit(
        [](const auto& rep) {
          using S = typename std::decay_t<decltype(rep.coeffs.b)>::Scalar;
          if constexpr (is_complex_v<S>) {
            return to_real(recurrence_from(rep.coeffs));
          } else {
            return recurrence_from(rep.coeffs);
          }
        },
        any);
    if (dim <= 0) dim = static_cast<int>(rec.size());
    return rec;
  }
  const auto spec = family_spec(f);
  for (const auto& w : family_warnings(spec)) err << "warning: " << w << "\n";
  if (dim <= 0) {
    const auto N = family_truncation(spec);
    if (!N) throw Error(ErrorCode::InvalidArgument, "--dim is required for infinite families");
    dim = *N + 1;
  }
  return to_real(family_recurrence(spec, dim));
}

std::string nodes_text(const Eigen::VectorXd& nodes, const std::string& format) {
  if (format == "json") {
    Json j;
    Json arr = Json::array();
    for (double x : nodes) arr.push_back(x);
    j["nodes"] = arr;
    return dump(j);
  }
  std::string s = format == "csv" ? "node\n" : "s\tnode\n";
  for (Eigen::Index i = 0; i < nodes.size(); ++i) {
    if (format == "table") s += std::to_string(i) + "\t";
    s += fmt17(nodes(i)) + "\n";
  }
  return s;
}

std::string spectral_text(const SpectralData& q, const std::string& format) {
  if (format == "json") return dump(spectral_to_json(q));
  if (format == "csv") return spectral_to_csv(q);
  std::string s = "s\tnode\tweight\n";
  for (Eigen::Index i = 0; i < q.dim(); ++i)
    s += std::to_string(i) + "\t" + fmt17(q.nodes(i)) + "\t" + fmt17(q.weights(i)) + "\n";
  return s;
}

std::string report_table(const FamilyReport& r) {
  std::ostringstream os;
  os << "# " << r.family << "  max_rel_err " << fmt17(r.max_rel_err) << "  tol " << fmt17(r.tol)
     << (r.passed ? "  PASS" : "  FAIL") << "\n";
  os << "n\tlambda_general\tlambda_closed\tb_general\tb_closed\trel_err\n";
  for (const auto& rec : r.records) {
    os << rec.n << '\t' << fmt17(rec.lambda_general) << '\t' << fmt17(rec.lambda_closed) << '\t'
       << fmt17(rec.b_general) << '\t' << fmt17(rec.b_closed) << '\t' << fmt17(rec.rel_err) << '\n';
  }
  return os.str();
}

std::string_view kind_name(TruncationKind k) {
  switch (k) {
    case TruncationKind::Gap: return "gap";
    case TruncationKind::RootPlus: return "root_plus";
    case TruncationKind::RootMinus: return "root_minus";
  }
  return "";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tridiagonal representations of [Z, X] = Z^2 + Delta and their orthogonal polynomials",
               "trirep"};
  app.require_subcommand(1);

  SeedOptions seeds;
  FamilyOptions fam;
  Output output;
  int size = 10;
  int dim = 0;
  int n_max = -1;
  double tol = 0.0;
  double mass = 1.0;
  std::string gauge = "split_sqrt";
  std::string rep_file;
  TruncationOptions topts;

  auto* build = app.add_subcommand("build", "Build X and Z from algebra seeds and write a .rep.json");
  add_seed_options(build, seeds);
  build->add_option("--size", size, "Number of basis vectors M+1")->check(CLI::PositiveNumber)->capture_default_str();
  build->add_option("--gauge", gauge, "split_sqrt | unit_w")
      ->check(CLI::IsMember({"split_sqrt", "unit_w"}))
      ->capture_default_str();
  add_output_options(build, output, {"json", "table"});

  auto* verify = app.add_subcommand("verify", "Print the relation residual of a .rep.json");
  verify->add_option("file", rep_file, "Representation file")->required()->check(CLI::ExistingFile);
  double verify_tol = 1e-10;
  verify->add_option("--tol", verify_tol, "Largest accepted residual")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* family = app.add_subcommand("family", "Compare the general solution with a family's closed forms");
  add_family_options(family, fam);
  family->add_option("--nmax", n_max, "Largest degree compared (default: N, or 20)");
  family->add_option("--tol", tol, "Largest accepted relative deviation (default 1e-12, 1e-6 for para_krawtchouk)")
      ->check(CLI::PositiveNumber);
  add_output_options(family, output, {"json", "table"});

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Eigenvalues of a family's Jacobi matrix");
  add_family_options(spectrum_cmd, fam);
  spectrum_cmd->add_option("--rep", rep_file, "Use the recurrence of a .rep.json")->check(CLI::ExistingFile);
  spectrum_cmd->add_option("--dim", dim, "Matrix dimension (default: N+1)");
  add_output_options(spectrum_cmd, output, {"json", "csv", "table"});

  auto* quad_cmd = app.add_subcommand("quadrature", "Gauss nodes and weights of a family's Jacobi matrix");
  add_family_options(quad_cmd, fam);
  quad_cmd->add_option("--rep", rep_file, "Use the recurrence of a .rep.json")->check(CLI::ExistingFile);
  quad_cmd->add_option("--dim", dim, "Matrix dimension (default: N+1)");
  quad_cmd->add_option("--mass", mass, "Total mass of the weights")->capture_default_str();
  add_output_options(quad_cmd, output, {"json", "csv", "table"});

  auto* trunc_cmd = app.add_subcommand("truncations", "List truncation dimensions N of algebra seeds");
  add_seed_options(trunc_cmd, seeds);
  trunc_cmd->add_option("--max-n", topts.max_n, "Largest N searched")->capture_default_str();
  trunc_cmd->add_option("--tol", topts.tolerance, "Tolerance on the Delta-dependent condition")
      ->capture_default_str();
  trunc_cmd->add_option("--gap-tol", topts.gap_tolerance, "Tolerance on delta0 - phi0 = N")
      ->capture_default_str();
  add_output_options(trunc_cmd, output, {"json", "table"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*build) {
      if (seeds_are_complex(seeds)) return run_build<Complex>(seeds, size, gauge, output, out, err);
      return run_build<double>(seeds, size, gauge, output, out, err);
    }

    if (*verify) {
      const auto any = representation_from_json(read_json_file(rep_file));
      const double residual = std::visit([](const auto& rep) { return relation_residual(rep); }, any);
      const bool closed = std::visit([](const auto& rep) { return rep.coeffs.closed; }, any);
      out << "residual " << fmt17(residual) << "\n";
      out << "window " << (closed ? "full" : "interior") << "\n";
      if (!(residual <= verify_tol)) {
        err << "residual exceeds tolerance " << fmt17(verify_tol) << "\n";
        return kValidation;
      }
      return kOk;
    }

    if (*family) {
      const auto spec = family_spec(fam);
      if (n_max < 0) n_max = family_truncation(spec).value_or(20);
      if (tol <= 0.0) tol = std::holds_alternative<ParaKrawtchoukFamily>(spec) ? 1e-6 : 1e-12;
      const auto report = family_compare(spec, n_max, tol);
      for (const auto& w : report.warnings) err << "warning: " << w << "\n";
      emit(output, output.format == "table" ? report_table(report) : dump(report_to_json(report)), out);
      if (!report.passed) {
        err << "max relative deviation " << fmt17(report.max_rel_err) << " exceeds " << fmt17(tol) << "\n";
        return kValidation;
      }
      return kOk;
    }

    if (*spectrum_cmd) {
      const auto rec = recurrence_source(fam, rep_file, dim, err);
      emit(output, nodes_text(spectrum(jacobi_matrix(rec, dim)), output.format), out);
      return kOk;
    }

    if (*quad_cmd) {
      const auto rec = recurrence_source(fam, rep_file, dim, err);
      const auto q = quadrature(jacobi_matrix(rec, dim), mass);
      if (q.flushed > 0) err << "warning: " << q.flushed << " weights below 1e-300 flushed to zero\n";
      emit(output, spectral_text(q, output.format), out);
      return kOk;
    }

    if (*trunc_cmd) {
      std::vector<Truncation> found;
      if (seeds_are_complex(seeds)) {
        found = truncation_conditions(seed_params<Complex>(seeds), topts);
      } else {
        found = truncation_conditions(seed_params<double>(seeds), topts);
      }
      if (output.format == "table") {
        std::string s = "N\tdim\tcondition\n";
        for (const auto& t : found)
          s += std::to_string(t.n) + "\t" + std::to_string(t.n + 1) + "\t" + std::string(kind_name(t.kind)) + "\n";
        emit(output, s, out);
      } else {
        Json arr = Json::array();
        for (const auto& t : found) arr.push_back(Json{{"N", t.n}, {"dim", t.n + 1}, {"condition", kind_name(t.kind)}});
        emit(output, dump(Json{{"truncations", arr}}), out);
      }
      return kOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_numerical(e.code()) ? kNumerical : kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kValidation;
}

}  // namespace trirep
