#include "hs2/bounds.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace hs2 {

namespace {

void check_open_unit(double x, const char* name) {
  if (!(x > 0.0 && x < 1.0)) throw Error(std::string(name) + " must lie in (0, 1)");
}

void check_inputs(const BoundInputs& in) {
  if (in.n == 0) throw Error("n must be positive");
  if (in.k == 0) throw Error("k must be positive");
  if (!(in.beta > 0.0 && in.beta <= 1.0 / static_cast<double>(in.k) + 1e-12)) {
    throw Error("beta must lie in (0, 1/k]");
  }
  if (in.kappa < 1) throw Error("kappa must be at least 1");
  if (in.kappa > in.n) throw Error("kappa exceeds n");
  check_open_unit(in.delta, "delta");
  if (!(in.p >= 0.0 && in.p < 0.5)) throw Error("p must lie in [0, 1/2)");
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

BoundInputs bound_inputs(const StructuralParams& s, double delta, double p) {
  BoundInputs in;
  in.n = s.n;
  in.k = s.k;
  in.beta = s.beta;
  in.m = s.m;
  if (s.kappa && *s.kappa == kInfinite) throw Error("kappa is infinite; no finite budget");
  in.kappa = s.kappa ? *s.kappa : 1;
  in.c_min = s.c_min;
  in.delta = delta;
  in.p = p;
  check_inputs(in);
  return in;
}

double witness_bound(double beta, double delta) {
  check_open_unit(beta, "beta");
  check_open_unit(delta, "delta");
  return std::log(1.0 / (beta * delta)) / std::log(1.0 / (1.0 - beta));
}

std::uint64_t halving_steps(std::uint64_t n, std::uint64_t kappa) {
  if (kappa == 0) throw Error("kappa must be at least 1");
  std::uint64_t t = 0;
  // kappa * 2^t >= n, computed without overflow.
  for (std::uint64_t reach = kappa; reach < n; ++t) reach = reach > n / 2 ? n : reach * 2;
  return t;
}

std::uint64_t ceil_log2(std::uint64_t x) { return halving_steps(x, 1); }

double q_star(const BoundInputs& in) {
  check_inputs(in);
  const double middle = static_cast<double>(in.m) * static_cast<double>(halving_steps(in.n, in.kappa));
  const double last = static_cast<double>(in.c_min) * static_cast<double>(ceil_log2(in.kappa) + 1);
  return witness_bound(in.beta, in.delta) + middle + last;
}

double q_star_pair(const BoundInputs& in) { return static_cast<double>(in.k) * q_star(in); }

double q1_star(const BoundInputs& in) {
  check_inputs(in);
  const double middle = static_cast<double>(in.m) * static_cast<double>(halving_steps(in.n, in.kappa));
  const double last = static_cast<double>(in.c_min) * static_cast<double>(ceil_log2(in.kappa) + 1);
  return middle + last;
}

double bernoulli_kl(double x, double y) {
  if (!(x >= 0.0 && x <= 1.0) || !(y >= 0.0 && y <= 1.0)) throw Error("bernoulli_kl arguments must lie in [0, 1]");
  auto term = [](double a, double b) {
    if (a == 0.0) return 0.0;
    if (b == 0.0) return kInf;
    return a * std::log(a / b);
  };
  return term(x, y) + term(1.0 - x, 1.0 - y);
}

double kl_lower_bound(double x, double y) {
  const double lo = std::min(x, y);
  if (!(lo > 0.0) || !(std::max(x, y) < 1.0)) throw Error("kl_lower_bound needs x, y in (0, 1)");
  return (y - x) * (y - x) / (2.0 * lo);
}

std::vector<MConstraint> m_constraints(std::uint64_t M, std::size_t k, double beta, double p, double delta,
                                       double q_star_quarter) {
  if (k == 0) throw Error("k must be positive");
  check_open_unit(beta, "beta");
  check_open_unit(delta, "delta");
  if (!(p > 0.0 && p < 0.5)) throw Error("sample-size constraints need p in (0, 1/2); use the noiseless path for p = 0");
  if (M < 2) throw Error("M must be at least 2");

  const double kd = static_cast<double>(k);
  const double md = static_cast<double>(M);
  const double gap4 = std::pow(2.0 * p - 1.0, 4);
  std::vector<MConstraint> out(4);

  out[0].name = "M/lnM>=128k/(beta(2p-1)^4)";
  out[0].rhs = 128.0 * kd / (beta * gap4);
  out[0].satisfied = md / std::log(md) >= out[0].rhs;

  out[1].name = "M>=(12/beta)ln(4k/delta)";
  out[1].rhs = 12.0 / beta * std::log(4.0 * kd / delta);
  out[1].satisfied = md >= out[1].rhs;

  out[2].name = "M>=8/delta";
  out[2].rhs = 8.0 / delta;
  out[2].satisfied = md >= out[2].rhs;

  out[3].name = "M>=(2/(beta*D(0.5||p)))ln(8(k-1)q/delta)";
  out[3].rhs = k == 1 ? 0.0
                      : 2.0 / (beta * bernoulli_kl(0.5, p)) * std::log(8.0 * (kd - 1.0) * q_star_quarter / delta);
  out[3].satisfied = md >= out[3].rhs;
  return out;
}

std::uint64_t solve_min_M(std::size_t k, double beta, double p, double delta, double q_star_quarter) {
  auto ok = [&](std::uint64_t M) {
    for (const auto& c : m_constraints(M, k, beta, p, delta, q_star_quarter)) {
      if (!c.satisfied) return false;
    }
    return true;
  };
  // Each constraint is monotone in M for M >= 3, so the conjunction is too.
  std::uint64_t lo = 3;
  if (ok(lo)) return lo;
  std::uint64_t hi = 4;
  while (!ok(hi)) {
    lo = hi;
    if (hi > (std::uint64_t{1} << 60)) throw Error("solve_min_M: no feasible M below 2^61");
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

double noisy_budget(std::size_t k, double p, std::uint64_t M, double q_star_quarter) {
  if (M < 2) throw Error("M must be at least 2");
  if (!(p >= 0.0 && p < 0.5)) throw Error("p must lie in [0, 1/2)");
  const double md = static_cast<double>(M);
  const double kd = static_cast<double>(k);
  return q_star_quarter * md + 128.0 * md * kd * kd * std::log(md) / std::pow(2.0 * p - 1.0, 4);
}

BoundReport bound_report(const BoundInputs& in, bool noisy) {
  BoundReport r;
  r.inputs = in;
  r.witness_term = witness_bound(in.beta, in.delta);
  r.q_star = q_star(in);
  r.q_star_pair = q_star_pair(in);
  r.q1_star = q1_star(in);
  r.halving_steps = halving_steps(in.n, in.kappa);
  r.kappa_log2 = ceil_log2(in.kappa);
  if (noisy) {
    r.noisy = true;
    BoundInputs quarter = in;
    quarter.delta = in.delta / 4.0;
    r.q_star_quarter = q_star(quarter);
    r.min_M = solve_min_M(in.k, in.beta, in.p, in.delta, r.q_star_quarter);
    r.noisy_budget = noisy_budget(in.k, in.p, r.min_M, r.q_star_quarter);
    r.constraints = m_constraints(r.min_M, in.k, in.beta, in.p, in.delta, r.q_star_quarter);
  }
  return r;
}

std::string format_bound_report(const BoundReport& r) {
  std::ostringstream out;
  out.precision(10);
  const auto& in = r.inputs;
  out << "n=" << in.n << "\nk=" << in.k << "\nbeta=" << in.beta << "\nm=" << in.m << "\nkappa=" << in.kappa
      << "\nc_min=" << in.c_min << "\ndelta=" << in.delta << "\np=" << in.p << '\n';
  out << "witness_log_base=e\nhalving_log_base=2\nnoisy_log_base=e\n";
  out << "witness_term=" << r.witness_term << "\nhalving_steps=" << r.halving_steps
      << "\nceil_log2_kappa=" << r.kappa_log2 << "\nq_star=" << r.q_star << "\nq_star_pair=" << r.q_star_pair
      << "\nq1_star=" << r.q1_star << '\n';
  if (r.noisy) {
    out << "q_star_quarter=" << r.q_star_quarter << "\nmin_M=" << r.min_M << "\nnoisy_budget=" << r.noisy_budget
        << '\n';
    for (std::size_t i = 0; i < r.constraints.size(); ++i) {
      const auto& c = r.constraints[i];
      out << "constraint_" << i + 1 << "=" << c.name << " rhs=" << c.rhs << ' '
          << (c.satisfied ? "satisfied" : "violated") << '\n';
    }
  }
  return out.str();
}

}  // namespace hs2
