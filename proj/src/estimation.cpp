#include "bellmark/estimation.hpp"

#include "bellmark/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace bellmark {

namespace {

/// ln erfc(x) for x >= 0, using the asymptotic series once erfc underflows.
double log_erfc(double x) {
  if (x < 25.0) {
    return std::log(std::erfc(x));
  }
  const double x2 = x * x;
  const double series = 1.0 - 1.0 / (2.0 * x2) + 3.0 / (4.0 * x2 * x2) - 15.0 / (8.0 * x2 * x2 * x2);
  return -x2 - std::log(x * std::sqrt(std::numbers::pi)) + std::log(series);
}

void check_margin(double M, double t) {
  if (!(M > 0.0)) {
    fail(ErrorCode::InvalidArgument, "term count M must be positive");
  }
  if (!(t > 0.0)) {
    fail(ErrorCode::NoViolationMargin,
         "no violation margin (t = " + std::to_string(t) + "); cannot plan");
  }
}

} // namespace

Confidence Confidence::from_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    fail(ErrorCode::InvalidArgument, "confidence gamma must lie in (0, 1)");
  }
  Confidence c;
  c.tail_ = 1.0 - gamma;
  c.log_tail_ = std::log1p(-gamma);
  return c;
}

Confidence Confidence::from_sigma(double k_sigma) {
  if (!(k_sigma > 0.0) || !std::isfinite(k_sigma)) {
    fail(ErrorCode::InvalidArgument, "sigma level must be a positive number");
  }
  Confidence c;
  const double x = k_sigma / std::numbers::sqrt2;
  c.tail_ = std::erfc(x);
  c.log_tail_ = log_erfc(x);
  return c;
}

double sigma_to_confidence(double k_sigma) {
  if (!(k_sigma > 0.0)) {
    fail(ErrorCode::InvalidArgument, "sigma level must be positive");
  }
  return std::erf(k_sigma / std::numbers::sqrt2);
}

double sigma_from_log_tail(double log_p) {
  if (!(log_p < 0.0)) {
    return 0.0;
  }
  // log_erfc is decreasing; bisect on x = k / sqrt 2.
  double lo = 0.0;
  double hi = 1.0;
  while (log_erfc(hi) > log_p) {
    hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (log_erfc(mid) > log_p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi) * std::numbers::sqrt2;
}

double required_samples(double M, double t, const Confidence& confidence) {
  check_margin(M, t);
  const double ratio = M / t;
  const double value = std::ceil(-2.0 * ratio * ratio * confidence.log_tail());
  return value < 1.0 ? 1.0 : value;
}

std::uint64_t required_L(double M, double t, const Confidence& confidence) {
  const double value = required_samples(M, t, confidence);
  if (value >= 18446744073709551615.0) {
    fail(ErrorCode::InvalidArgument, "required L exceeds 2^64");
  }
  return static_cast<std::uint64_t>(value);
}

std::uint64_t required_K(std::uint64_t L, double M, double t, const Confidence& confidence) {
  if (L == 0) {
    fail(ErrorCode::InvalidArgument, "L must be at least 1");
  }
  const double value = std::ceil(required_samples(M, t, confidence) / static_cast<double>(L));
  return value < 1.0 ? 1 : static_cast<std::uint64_t>(value);
}

double required_L_from_alpha(double alpha, double D, const Confidence& confidence) {
  if (!(D > 0.0)) {
    fail(ErrorCode::InvalidArgument, "ratio D must be positive");
  }
  const double margin = alpha - 1.0 / D;
  if (!(margin > 0.0)) {
    fail(ErrorCode::NoViolationMargin, "alpha = " + std::to_string(alpha) +
                                           " is not above the violation threshold 1/D = " +
                                           std::to_string(1.0 / D));
  }
  return required_samples(1.0, margin, confidence);
}

std::vector<std::uint64_t> sample_indices(std::uint64_t M, std::uint64_t L, Rng& rng) {
  if (M == 0 || L == 0) {
    fail(ErrorCode::InvalidArgument, "sample_indices needs M >= 1 and L >= 1");
  }
  std::uniform_int_distribution<std::uint64_t> dist(0, M - 1);
  std::vector<std::uint64_t> out(L);
  for (auto& j : out) {
    j = dist(rng);
  }
  return out;
}

std::vector<TermIndex> sample_term_indices(unsigned bits, std::uint64_t L, Rng& rng) {
  if (L == 0) {
    fail(ErrorCode::InvalidArgument, "sample_term_indices needs L >= 1");
  }
  std::vector<TermIndex> out;
  out.reserve(L);
  for (std::uint64_t l = 0; l < L; ++l) {
    TermIndex j(bits);
    auto& words = j.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
      words[w] = rng();
    }
    if (bits % 64 != 0) {
      words.back() &= (Word{1} << (bits % 64)) - 1;
    }
    out.push_back(std::move(j));
  }
  return out;
}

double estimate(double M, std::uint64_t K, std::span<const int> outcomes) {
  if (outcomes.empty()) {
    fail(ErrorCode::InvalidArgument, "estimate needs at least one outcome");
  }
  if (K == 0 || outcomes.size() % K != 0) {
    fail(ErrorCode::InvalidArgument, "outcome count must be a multiple of K");
  }
  std::int64_t sum = 0;
  for (int b : outcomes) {
    if (b != 1 && b != -1) {
      fail(ErrorCode::InvalidArgument, "outcomes must be +1 or -1");
    }
    sum += b;
  }
  return M * static_cast<double>(sum) / static_cast<double>(outcomes.size());
}

double log_p_value_bound(double estimate, double C, double M, std::uint64_t K, std::uint64_t L) {
  const double t = estimate - C;
  if (!(t > 0.0)) {
    return 0.0;
  }
  const double r = t / M;
  return -r * r * static_cast<double>(K) * static_cast<double>(L) / 2.0;
}

double p_value_bound(double estimate, double C, double M, std::uint64_t K, std::uint64_t L) {
  const double p = std::exp(log_p_value_bound(estimate, C, M, K, L));
  // Keep the bound strictly positive even when it underflows.
  return p > 0.0 ? p : std::numeric_limits<double>::denorm_min();
}

EstimateResult evaluate(double M, double C, std::uint64_t K, std::vector<TermIndex> indices,
                        std::vector<int> outcomes) {
  if (indices.empty() || outcomes.size() != indices.size() * K) {
    fail(ErrorCode::InvalidArgument, "need K outcomes per sampled term");
  }
  EstimateResult r;
  r.estimate = estimate(M, K, outcomes);
  const auto L = static_cast<std::uint64_t>(indices.size());
  r.log_p_value_bound = log_p_value_bound(r.estimate, C, M, K, L);
  r.p_value_bound = p_value_bound(r.estimate, C, M, K, L);
  r.sigma_equivalent = sigma_from_log_tail(r.log_p_value_bound);
  r.sampled_indices = std::move(indices);
  r.outcomes = std::move(outcomes);
  return r;
}

} // namespace bellmark
