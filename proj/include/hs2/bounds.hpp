#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hs2/cut_analysis.hpp"

namespace hs2 {

/// Inputs to the query-complexity formulas.
struct BoundInputs {
  std::size_t n = 0;
  std::size_t k = 1;
  double beta = 0.0;
  std::size_t m = 0;
  std::uint64_t kappa = 1;
  std::size_t c_min = 0;  // min(|C|, |∂C|)
  double delta = 0.1;
  double p = 0.0;
};

/// Validates and converts analysis output. An empty cut maps to kappa = 1;
/// an infinite kappa is rejected since no finite budget follows from it.
BoundInputs bound_inputs(const StructuralParams& s, double delta, double p = 0.0);

/// ln(1/(beta*delta)) / ln(1/(1-beta)).
double witness_bound(double beta, double delta);

/// Smallest t >= 0 with kappa * 2^t >= n, i.e. ceil(log2 n - log2 kappa).
std::uint64_t halving_steps(std::uint64_t n, std::uint64_t kappa);
/// ceil(log2 kappa).
std::uint64_t ceil_log2(std::uint64_t x);

double q_star(const BoundInputs& in);
double q_star_pair(const BoundInputs& in);
/// q_star without the witness term.
double q1_star(const BoundInputs& in);

/// D(x || y) for Bernoulli distributions, in nats. Infinite when y is 0 or 1
/// and x differs from it.
double bernoulli_kl(double x, double y);

/// (y-x)^2 / (2 min(x, y)); a lower bound on bernoulli_kl.
double kl_lower_bound(double x, double y);

/// One constraint on the seed-sample size M: the right-hand side, and whether
/// a given M satisfies it.
struct MConstraint {
  std::string name;
  double rhs = 0.0;
  bool satisfied = false;
};

/// Evaluates the four sample-size constraints at M. Natural logarithms
/// throughout; the k = 1 vote constraint is 0.
///   (i)   M / ln M >= 128 k / (beta (2p-1)^4)
///   (ii)  M >= (12 / beta) ln(4k / delta)
///   (iii) M >= 8 / delta
///   (iv)  M >= (2 / (beta D(0.5||p))) ln(8 (k-1) q / delta)
/// where q is Q*(delta/4).
std::vector<MConstraint> m_constraints(std::uint64_t M, std::size_t k, double beta, double p, double delta,
                                       double q_star_quarter);

/// Smallest integer M >= 3 meeting every constraint. p must lie in (0, 1/2).
std::uint64_t solve_min_M(std::size_t k, double beta, double p, double delta, double q_star_quarter);

/// q * M + 128 M k^2 ln M / (2p-1)^4.
double noisy_budget(std::size_t k, double p, std::uint64_t M, double q_star_quarter);

/// Every quantity with its inputs, for printing.
struct BoundReport {
  BoundInputs inputs;
  double witness_term = 0.0;
  double q_star = 0.0;
  double q_star_pair = 0.0;
  double q1_star = 0.0;
  std::uint64_t halving_steps = 0;
  std::uint64_t kappa_log2 = 0;
  // Noisy mode only.
  bool noisy = false;
  double q_star_quarter = 0.0;
  std::uint64_t min_M = 0;
  double noisy_budget = 0.0;
  std::vector<MConstraint> constraints;
};

BoundReport bound_report(const BoundInputs& in, bool noisy);

/// key=value lines.
std::string format_bound_report(const BoundReport& r);

}  // namespace hs2
