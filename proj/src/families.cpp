#include "trirep/families.hpp"

#include <cmath>
#include <limits>

namespace trirep {

namespace {

constexpr Complex kI{0.0, 1.0};

template <FieldScalar Scalar>
Scalar checked_div(const Scalar& num, const Scalar& den, const char* what) {
  if (den == Scalar(0)) throw Error(ErrorCode::SingularDenominator, what);
  return num / den;
}

void require_degree(int n, int hi) {
  if (n < 0 || n > hi) {
    throw Error(ErrorCode::IndexOutOfRange,
                "n=" + std::to_string(n) + " outside 0.." + std::to_string(hi));
  }
}

AlgebraParams<Complex> widen(const AlgebraParams<double>& p) {
  return {p.delta, p.phi0, p.delta0, p.v0, p.b0};
}

}  // namespace

AlgebraParams<double> jacobi_params(double alpha, double beta) {
  const double s = alpha + beta + 2.0;
  if (s == 0.0) throw Error(ErrorCode::SingularDenominator, "alpha + beta + 2 = 0");
  AlgebraParams<double> p;
  p.delta = 0.0;
  p.phi0 = beta;
  p.delta0 = -alpha - 1.0;
  p.v0 = 2.0 / s;
  p.b0 = 0.5 * (p.delta0 + p.phi0 + 1.0) * p.v0;  // b0_tilde = 0
  return p;
}

MonicCoefficient<double> jacobi_monic_coeffs(double alpha, double beta, int n) {
  require_degree(n, std::numeric_limits<int>::max());
  const double s = 2.0 * n + alpha + beta;
  MonicCoefficient<double> out;
  if (n == 0) {
    out.b = checked_div(beta - alpha, alpha + beta + 2.0, "jacobi b_0");
    return out;
  }
  out.b = checked_div(beta * beta - alpha * alpha, s * (s + 2.0), "jacobi b_n");
  if (n == 1) {
    // n + alpha + beta cancels against 2n + alpha + beta - 1.
    out.lambda = checked_div(4.0 * (1.0 + alpha) * (1.0 + beta), s * s * (s + 1.0), "jacobi lambda_1");
  } else {
    out.lambda = checked_div(4.0 * n * (n + alpha) * (n + beta) * (n + alpha + beta),
                             s * s * (s + 1.0) * (s - 1.0), "jacobi lambda_n");
  }
  return out;
}

AlgebraParams<Complex> chahn_params(Complex a, Complex b, Complex c, Complex d) {
  const Complex s = a + b + c + d;
  if (s == Complex(0)) throw Error(ErrorCode::ZeroParameterSum, "a + b + c + d = 0");
  const Complex phi0 = a + c - 1.0;
  const Complex delta0 = -(b + d);
  const Complex v0 = -kI * (a - b - c + d) / (2.0 * s);
  const Complex b0_tilde = 0.25 * kI * (a + b - c - d);
  return AlgebraParams<Complex>::from_b0_tilde(0.25, phi0, delta0, v0, b0_tilde);
}

MonicCoefficient<Complex> chahn_monic_coeffs(Complex a, Complex b, Complex c, Complex d, int n) {
  require_degree(n, std::numeric_limits<int>::max());
  const Complex s = a + b + c + d;
  const double nn = n;
  MonicCoefficient<Complex> out;
  const Complex lead = checked_div((nn + s - 1.0) * (nn + a + c) * (nn + a + d),
                                   (2.0 * nn + s - 1.0) * (2.0 * nn + s), "chahn b_n");
  Complex tail(0);
  if (n > 0) {
    tail = checked_div(nn * (nn + b + c - 1.0) * (nn + b + d - 1.0),
                       (2.0 * nn + s - 2.0) * (2.0 * nn + s - 1.0), "chahn b_n");
    const Complex den = (2.0 * nn + s - 1.0) * (2.0 * nn + s - 2.0) * (2.0 * nn + s - 2.0) *
                        (2.0 * nn + s - 3.0);
    out.lambda = checked_div((nn + a + c - 1.0) * (nn + b + d - 1.0) * nn * (nn + s - 2.0) *
                                 (nn + a + d - 1.0) * (nn + b + c - 1.0),
                             den, "chahn lambda_n");
  }
  out.b = kI * (-lead + tail + a);
  return out;
}

AlgebraParams<double> hahn_params(double alpha, double beta, int N) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "Hahn N must be >= 1");
  const double s = alpha + beta + 2.0;
  if (s == 0.0) throw Error(ErrorCode::SingularDenominator, "alpha + beta + 2 = 0");
  const double v0 = -(alpha + beta + 2.0 * N + 2.0) / (2.0 * s);
  const double b0_tilde = 0.25 * (2.0 * N - alpha + beta);
  return AlgebraParams<double>::from_b0_tilde(-0.25, beta, -alpha - 1.0, v0, b0_tilde);
}

MonicCoefficient<double> hahn_monic_coeffs(double alpha, double beta, int N, int n) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "Hahn N must be >= 1");
  require_degree(n, N + 1);
  const double ab = alpha + beta;
  MonicCoefficient<double> out;
  if (n == 0) {
    // n + alpha + beta + 1 cancels in the first term; the second carries a factor n.
    out.b = checked_div((alpha + 1.0) * N, ab + 2.0, "hahn b_0");
    return out;
  }
  const double s = 2.0 * n + ab;
  out.b = checked_div((n + ab + 1.0) * (n + alpha + 1.0) * (N - n), (s + 1.0) * (s + 2.0), "hahn b_n") +
          checked_div(n * (n + ab + N + 1.0) * (n + beta), s * (s + 1.0), "hahn b_n");
  if (n == 1) {
    out.lambda = checked_div((1.0 + alpha) * (1.0 + beta) * (ab + N + 2.0) * N,
                             s * s * (s + 1.0), "hahn lambda_1");
  } else {
    out.lambda = checked_div(n * (n + alpha) * (n + beta) * (n + ab) * (n + ab + N + 1.0) * (N - n + 1.0),
                             (s - 1.0) * s * s * (s + 1.0), "hahn lambda_n");
  }
  return out;
}

ParitySplit parity_split(int N) { return {N / 2, N % 2}; }

AlgebraParams<double> parakrawtchouk_params(int N, double gamma, double t) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "para-Krawtchouk N must be >= 1");
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "regulator t must be > 0");
  const auto [j, p] = parity_split(N);
  const double phi0 = -j + t - 1.0;
  const double delta0 = j - t - 1.0 + p;
  const double v0 = (gamma + p - 1.0) / (-2.0 * j + 2.0 * t - p + 1.0);
  const double b0_tilde = 0.5 * (N + gamma - 1.0);
  return AlgebraParams<double>::from_b0_tilde(-1.0, phi0, delta0, v0, b0_tilde);
}

MonicCoefficient<double> parakrawtchouk_monic_coeffs(int N, double gamma, int n) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "para-Krawtchouk N must be >= 1");
  require_degree(n, N + 1);
  const int p = parity_split(N).p;
  const double g = gamma;
  MonicCoefficient<double> out;
  out.lambda = checked_div(n * (N + 1.0 - n) * (N - 2.0 * n + p + g) * (N - 2.0 * n - p + 2.0 - g),
                           4.0 * (2.0 * n - N + p - 1.0) * (2.0 * n - N - p - 1.0),
                           "para-Krawtchouk lambda_n");
  out.b = -checked_div((N - n) * (N - 2.0 * n - 2.0 + p + g), 2.0 * (2.0 * n - N - p + 1.0),
                       "para-Krawtchouk b_n") -
          checked_div(n * (N - 2.0 * n + 2.0 - p - g), 2.0 * (2.0 * n - N + p - 1.0),
                      "para-Krawtchouk b_n");
  return out;
}

std::string family_name(const FamilySpec& spec) {
  struct {
    std::string operator()(const JacobiFamily&) const { return "jacobi"; }
    std::string operator()(const ContinuousHahnFamily&) const { return "continuous_hahn"; }
    std::string operator()(const HahnFamily&) const { return "hahn"; }
    std::string operator()(const ParaKrawtchoukFamily&) const { return "para_krawtchouk"; }
  } visitor;
  return std::visit(visitor, spec);
}

std::vector<std::string> family_warnings(const FamilySpec& spec) {
  std::vector<std::string> w;
  if (const auto* f = std::get_if<JacobiFamily>(&spec)) {
    if (!(f->alpha > -1.0 && f->beta > -1.0))
      w.push_back("alpha, beta outside (-1, inf): recurrence is not positive definite");
  } else if (const auto* f = std::get_if<ContinuousHahnFamily>(&spec)) {
    const bool conj_pair = f->c == std::conj(f->a) && f->d == std::conj(f->b);
    if (!conj_pair || !(f->a.real() > 0.0 && f->b.real() > 0.0))
      w.push_back("parameters outside c = conj(a), d = conj(b), Re a, Re b > 0: coefficients may be complex");
  } else if (const auto* f = std::get_if<HahnFamily>(&spec)) {
    if (f->N < 1) throw Error(ErrorCode::InvalidArgument, "Hahn N must be >= 1");
    if (!(f->alpha > -1.0 && f->beta > -1.0))
      w.push_back("alpha, beta outside (-1, inf): recurrence is not positive definite");
  } else if (const auto* f = std::get_if<ParaKrawtchoukFamily>(&spec)) {
    if (f->N < 1) throw Error(ErrorCode::InvalidArgument, "para-Krawtchouk N must be >= 1");
    if (!(f->t > 0.0)) throw Error(ErrorCode::InvalidArgument, "regulator t must be > 0");
    if (!(f->gamma > 0.0 && f->gamma < 2.0))
      w.push_back("gamma outside (0, 2): spectrum is not a bilattice");
  }
  return w;
}

std::optional<int> family_truncation(const FamilySpec& spec) {
  if (const auto* f = std::get_if<HahnFamily>(&spec)) return f->N;
  if (const auto* f = std::get_if<ParaKrawtchoukFamily>(&spec)) return f->N;
  return std::nullopt;
}

AlgebraParams<Complex> family_params(const FamilySpec& spec) {
  struct {
    AlgebraParams<Complex> operator()(const JacobiFamily& f) const {
      return widen(jacobi_params(f.alpha, f.beta));
    }
    AlgebraParams<Complex> operator()(const ContinuousHahnFamily& f) const {
      return chahn_params(f.a, f.b, f.c, f.d);
    }
    AlgebraParams<Complex> operator()(const HahnFamily& f) const {
      return widen(hahn_params(f.alpha, f.beta, f.N));
    }
    AlgebraParams<Complex> operator()(const ParaKrawtchoukFamily& f) const {
      return widen(parakrawtchouk_params(f.N, f.gamma, f.t));
    }
  } visitor;
  return std::visit(visitor, spec);
}

namespace {

MonicCoefficient<Complex> closed_coeffs(const FamilySpec& spec, int n) {
  auto widen_c = [](const MonicCoefficient<double>& m) {
    return MonicCoefficient<Complex>{m.lambda, m.b};
  };
  if (const auto* f = std::get_if<JacobiFamily>(&spec))
    return widen_c(jacobi_monic_coeffs(f->alpha, f->beta, n));
  if (const auto* f = std::get_if<ContinuousHahnFamily>(&spec))
    return chahn_monic_coeffs(f->a, f->b, f->c, f->d, n);
  if (const auto* f = std::get_if<HahnFamily>(&spec))
    return widen_c(hahn_monic_coeffs(f->alpha, f->beta, f->N, n));
  const auto& f = std::get<ParaKrawtchoukFamily>(spec);
  return widen_c(parakrawtchouk_monic_coeffs(f.N, f.gamma, n));
}

}  // namespace

MonicRecurrence<Complex> family_recurrence(const FamilySpec& spec, int count) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "count must be >= 1");
  MonicRecurrence<Complex> rec;
  rec.lambda.resize(count);
  rec.diag.resize(count);
  for (int n = 0; n < count; ++n) {
    const auto m = closed_coeffs(spec, n);
    rec.lambda(n) = m.lambda;
    rec.diag(n) = m.b;
  }
  return rec;
}

double extrapolate_to_zero(std::span<const double> h, std::span<const double> f) {
  if (h.size() != f.size() || h.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "extrapolation needs matching, non-empty samples");
  }
  // Neville's scheme evaluated at h = 0.
  std::vector<double> table(f.begin(), f.end());
  const std::size_t k = h.size();
  for (std::size_t level = 1; level < k; ++level) {
    for (std::size_t i = 0; i + level < k; ++i) {
      const double hi = h[i];
      const double hj = h[i + level];
      table[i] = (hi * table[i + 1] - hj * table[i]) / (hi - hj);
    }
  }
  return table[0];
}

namespace {

struct GeneralSample {
  std::vector<Complex> lambda;
  std::vector<Complex> b;
};

template <FieldScalar Scalar>
GeneralSample general_solution(const AlgebraParams<Scalar>& p, int n_max) {
  const auto rep = build_representation(p, n_max + 1);
  if (rep.coeffs.dim() <= n_max) {
    throw Error(ErrorCode::IndexOutOfRange,
                "representation closes at dimension " + std::to_string(rep.coeffs.dim()) +
                    ", below n_max + 1 = " + std::to_string(n_max + 1));
  }
  GeneralSample s;
  for (int n = 0; n <= n_max; ++n) {
    s.lambda.emplace_back(rep.coeffs.lambda(n));
    s.b.emplace_back(rep.coeffs.b(n));
  }
  return s;
}

GeneralSample general_limit(const ParaKrawtchoukFamily& f, int n_max, const LimitOptions& limit) {
  const auto& ts = limit.t_values;
  if (ts.empty()) throw Error(ErrorCode::InvalidArgument, "no regulator values");
  std::vector<GeneralSample> samples;
  for (double t : ts) samples.push_back(general_solution(parakrawtchouk_params(f.N, f.gamma, t), f.N));
  GeneralSample out;
  std::vector<double> fl(ts.size()), fb(ts.size());
  for (int n = 0; n <= n_max; ++n) {
    for (std::size_t k = 0; k < ts.size(); ++k) {
      fl[k] = samples[k].lambda[n].real();
      fb[k] = samples[k].b[n].real();
    }
    out.lambda.emplace_back(extrapolate_to_zero(ts, fl));
    out.b.emplace_back(extrapolate_to_zero(ts, fb));
  }
  return out;
}

}  // namespace

FamilyReport family_compare(const FamilySpec& spec, int n_max, double tol, const LimitOptions& limit) {
  if (n_max < 0) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 0");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be > 0");
  FamilyReport report;
  report.family = family_name(spec);
  report.n_max = n_max;
  report.tol = tol;
  report.warnings = family_warnings(spec);
  if (const auto N = family_truncation(spec); N && n_max > *N) {
    throw Error(ErrorCode::IndexOutOfRange,
                "n_max " + std::to_string(n_max) + " exceeds the truncation N = " + std::to_string(*N));
  }

  GeneralSample general;
  if (const auto* f = std::get_if<JacobiFamily>(&spec)) {
    general = general_solution(jacobi_params(f->alpha, f->beta), n_max);
  } else if (const auto* f = std::get_if<ContinuousHahnFamily>(&spec)) {
    report.complex_valued = true;
    general = general_solution(chahn_params(f->a, f->b, f->c, f->d), n_max);
  } else if (const auto* f = std::get_if<HahnFamily>(&spec)) {
    general = general_solution(hahn_params(f->alpha, f->beta, f->N), n_max);
  } else {
    general = general_limit(std::get<ParaKrawtchoukFamily>(spec), n_max, limit);
  }

  for (int n = 0; n <= n_max; ++n) {
    const auto closed = closed_coeffs(spec, n);
    CompareRecord rec;
    rec.n = n;
    rec.lambda_general = general.lambda[n];
    rec.lambda_closed = closed.lambda;
    rec.b_general = general.b[n];
    rec.b_closed = closed.b;
    rec.rel_err = std::max(rel_deviation(rec.lambda_general, rec.lambda_closed),
                           rel_deviation(rec.b_general, rec.b_closed));
    report.max_rel_err = std::max(report.max_rel_err, rec.rel_err);
    report.records.push_back(rec);
  }
  report.passed = report.max_rel_err <= tol;
  return report;
}

}  // namespace trirep
