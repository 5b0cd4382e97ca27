#pragma once

#include "bellmark/bell.hpp"
#include "bellmark/circuit.hpp"
#include "bellmark/estimation.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bellmark {

/// Average error rates: single-qubit gate, two-qubit gate, readout.
struct NoiseParams {
  double p1 = 0;
  double p2 = 0;
  double pr = 0;

  /// Throws Error(InvalidArgument) unless every rate lies in [0, 1].
  void validate() const;

  static NoiseParams ibm_eagle() { return {4.322e-4, 1.019e-2, 2.434e-2}; }
  static NoiseParams sycamore_isolated() { return {1.5e-3, 3.6e-3, 3.1e-2}; }
  static NoiseParams sycamore_simultaneous() { return {1.6e-3, 6.2e-3, 3.8e-2}; }

  friend bool operator==(const NoiseParams&, const NoiseParams&) = default;
};

/// Probability that no error occurs: (1-p1)^N1 (1-p2)^N2 (1-pr)^n.
[[nodiscard]] double alpha_depolarization(const GateCounts& counts, std::size_t n_measured,
                                          const NoiseParams& p);

/// Gate counts of the reference preparation: the depth-3 path circuit for LC,
/// the sequential star circuit for GHZ.
[[nodiscard]] GateCounts reference_counts(Family family, std::size_t n);

struct Prediction {
  double alpha = 0;
  double violation_fraction = 0;  // alpha * Q / C
  BellBounds bounds;
  double L = 0;
};

/// alpha from the reference gate counts, then the number of terms needed at
/// the given confidence. Throws Error(NoViolationMargin) when alpha <= 1/D.
[[nodiscard]] Prediction predict_required_L(Family family, std::size_t n, const NoiseParams& p,
                                            const Confidence& confidence);

/// Largest n with n < x + sqrt(x^2 - ln2 / a), x = ln2 / (4 a): the range in
/// which GHZ states with alpha = exp(-a n^2) violate. nullopt for a <= 0
/// (no upper limit). Throws Error(NoViolationMargin) when the discriminant is
/// negative.
[[nodiscard]] std::optional<std::uint64_t> violation_window_ghz(double a);

/// ln alpha = -b n + c (linear) or -a n^2 - b n + c (quadratic).
struct ScalingModel {
  enum class Form { Linear, Quadratic };

  Form form = Form::Linear;
  double a = 0;
  double b = 0;
  double c = 0;
  std::vector<double> residuals;  // ln alpha_i - model(n_i)

  [[nodiscard]] double log_alpha(double n) const { return -a * n * n - b * n + c; }
  [[nodiscard]] double alpha(double n) const;
};

[[nodiscard]] std::string_view form_name(ScalingModel::Form f);  // "linear" / "quadratic"
[[nodiscard]] ScalingModel::Form form_from_name(std::string_view name);

struct ScalingPoint {
  double n = 0;
  double alpha = 0;
};

/// Ordinary least squares on ln alpha. Needs 2 (linear) or 3 (quadratic)
/// distinct n values and alpha > 0.
[[nodiscard]] ScalingModel fit_scaling(const std::vector<ScalingPoint>& points,
                                       ScalingModel::Form form);

struct Extrapolation {
  double L = 0;
  double alpha = 0;
  /// L with every coefficient moved by half a unit in its last printed digit,
  /// in the direction that lowers / raises L.
  double L_low = 0;
  double L_high = 0;
  /// Set when L_high / L_low exceeds 10: only the order of magnitude is
  /// meaningful.
  std::string caveat;
};

/// Required L at n for a state with alpha = model.alpha(n) and ratio D.
/// `resolution` is the rounding step of the coefficients (0 disables the
/// interval). Throws Error(NoViolationMargin) when alpha <= 1/D.
[[nodiscard]] Extrapolation extrapolate_L(const ScalingModel& model, double n, double D,
                                          const Confidence& confidence, double resolution = 0);

} // namespace bellmark
