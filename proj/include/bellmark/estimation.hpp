#pragma once

#include "bellmark/tableau.hpp"
#include "bellmark/term_index.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace bellmark {

/// Confidence level gamma, stored through its tail 1 - gamma so that
/// 5-sigma-type levels keep full precision.
class Confidence {
public:
  /// gamma in (0, 1).
  static Confidence from_gamma(double gamma);
  /// Two-sided Gaussian mass within k standard deviations, k > 0.
  static Confidence from_sigma(double k_sigma);

  [[nodiscard]] double gamma() const { return 1.0 - tail_; }
  [[nodiscard]] double tail() const { return tail_; }
  /// ln(1 - gamma), finite and negative.
  [[nodiscard]] double log_tail() const { return log_tail_; }

private:
  double tail_ = 1.0;
  double log_tail_ = 0.0;
};

/// gamma = erf(k / sqrt 2). Throws for k <= 0.
[[nodiscard]] double sigma_to_confidence(double k_sigma);
/// Inverse of the two-sided tail: the k with erfc(k / sqrt 2) = p, from ln p
/// so that tails far below the double range still convert. 0 for p >= 1.
[[nodiscard]] double sigma_from_log_tail(double log_p);

struct SamplingPlan {
  double M = 1;      // term count
  std::uint64_t L = 1;
  std::uint64_t K = 1;
  double gamma = 0;
  double t = 0;      // margin theta - C on the scale of <B>
};

/// The real-valued bound ceil(-2 (M/t)^2 ln(1 - gamma)), clamped to >= 1.
/// Kept in floating point because extrapolated values exceed 2^64.
[[nodiscard]] double required_samples(double M, double t, const Confidence& confidence);

/// Number of sampled terms needed at K = 1. Throws Error(NoViolationMargin)
/// for t <= 0.
[[nodiscard]] std::uint64_t required_L(double M, double t, const Confidence& confidence);
/// Repetitions per term for a given L: ceil(required_samples / L).
[[nodiscard]] std::uint64_t required_K(std::uint64_t L, double M, double t,
                                       const Confidence& confidence);
/// Same as required_L with t / M = alpha - 1/D. Throws Error(NoViolationMargin)
/// for alpha <= 1/D.
[[nodiscard]] double required_L_from_alpha(double alpha, double D, const Confidence& confidence);

/// L i.i.d. uniform indices in [0, M), with replacement.
[[nodiscard]] std::vector<std::uint64_t> sample_indices(std::uint64_t M, std::uint64_t L, Rng& rng);
/// L i.i.d. uniform indices in [0, 2^bits), with replacement.
[[nodiscard]] std::vector<TermIndex> sample_term_indices(unsigned bits, std::uint64_t L, Rng& rng);

struct EstimateResult {
  double estimate = 0;
  std::vector<TermIndex> sampled_indices;
  std::vector<int> outcomes;  // L * K values, grouped by sampled term
  double p_value_bound = 1;
  double log_p_value_bound = 0;
  double sigma_equivalent = 0;
};

/// (M / (K L)) * sum of outcomes, with outcomes.size() == K * L. Throws on an
/// empty set or values other than +-1.
[[nodiscard]] double estimate(double M, std::uint64_t K, std::span<const int> outcomes);

/// ln of exp(-t^2 K L / (2 M^2)) with t = estimate - C; 0 when t <= 0.
[[nodiscard]] double log_p_value_bound(double estimate, double C, double M, std::uint64_t K,
                                       std::uint64_t L);
[[nodiscard]] double p_value_bound(double estimate, double C, double M, std::uint64_t K,
                                   std::uint64_t L);

/// Estimator plus Hoeffding p-value bound and its sigma equivalent.
[[nodiscard]] EstimateResult evaluate(double M, double C, std::uint64_t K,
                                      std::vector<TermIndex> indices, std::vector<int> outcomes);

} // namespace bellmark
