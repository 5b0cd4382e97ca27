#include "bellmark/noise_model.hpp"

#include "bellmark/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <set>
#include <string>

namespace bellmark {

namespace {

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

} // namespace

void NoiseParams::validate() const {
  for (double p : {p1, p2, pr}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      fail(ErrorCode::InvalidArgument, "error rates must lie in [0, 1]");
    }
  }
}

double alpha_depolarization(const GateCounts& counts, std::size_t n_measured, const NoiseParams& p) {
  p.validate();
  // log1p keeps small rates accurate for large gate counts.
  const double log_alpha = static_cast<double>(counts.N1) * std::log1p(-p.p1) +
                           static_cast<double>(counts.N2) * std::log1p(-p.p2) +
                           static_cast<double>(n_measured) * std::log1p(-p.pr);
  return std::exp(log_alpha);
}

GateCounts reference_counts(Family family, std::size_t n) {
  (void)bell_bounds(family, n);
  if (family == Family::LC) {
    std::vector<Vertex> path(n);
    for (std::size_t k = 0; k < n; ++k) {
      path[k] = static_cast<Vertex>(k);
    }
    return gate_counts(prep_lc_path(path));
  }
  return gate_counts(prep_ghz_line(n));
}

Prediction predict_required_L(Family family, std::size_t n, const NoiseParams& p,
                              const Confidence& confidence) {
  Prediction out;
  out.bounds = bell_bounds(family, n);
  out.alpha = alpha_depolarization(reference_counts(family, n), n, p);
  out.violation_fraction = out.alpha * out.bounds.Q / out.bounds.C;
  if (!(out.alpha > out.bounds.alpha_min())) {
    fail(ErrorCode::NoViolationMargin,
         "no predicted violation: alpha = " + short_number(out.alpha) +
             " <= 1/D = " + short_number(out.bounds.alpha_min()));
  }
  out.L = required_L_from_alpha(out.alpha, out.bounds.D, confidence);
  return out;
}

std::optional<std::uint64_t> violation_window_ghz(double a) {
  if (!(a > 0.0)) {
    return std::nullopt;
  }
  const double ln2 = std::numbers::ln2;
  const double x = ln2 / (4.0 * a);
  const double disc = x * x - ln2 / a;
  if (disc < 0.0) {
    fail(ErrorCode::NoViolationMargin, "no violation window for a = " + short_number(a));
  }
  const double bound = x + std::sqrt(disc);
  const double n_max = std::ceil(bound) - 1.0;
  return n_max < 0.0 ? 0 : static_cast<std::uint64_t>(n_max);
}

double ScalingModel::alpha(double n) const { return std::exp(log_alpha(n)); }

std::string_view form_name(ScalingModel::Form f) {
  return f == ScalingModel::Form::Linear ? "linear" : "quadratic";
}

ScalingModel::Form form_from_name(std::string_view name) {
  if (name == "linear") {
    return ScalingModel::Form::Linear;
  }
  if (name == "quadratic") {
    return ScalingModel::Form::Quadratic;
  }
  fail(ErrorCode::InvalidArgument, "unknown fit form '" + std::string(name) + "'");
}

ScalingModel fit_scaling(const std::vector<ScalingPoint>& points, ScalingModel::Form form) {
  const bool quad = form == ScalingModel::Form::Quadratic;
  const std::size_t needed = quad ? 3 : 2;
  std::set<double> distinct;
  for (const auto& p : points) {
    if (!(p.alpha > 0.0) || !std::isfinite(p.alpha) || !std::isfinite(p.n)) {
      fail(ErrorCode::InvalidArgument, "fit needs finite points with alpha > 0");
    }
    distinct.insert(p.n);
  }
  if (distinct.size() < needed) {
    fail(ErrorCode::InvalidArgument, "fit needs at least " + std::to_string(needed) +
                                         " distinct n values");
  }
  const auto rows = static_cast<Eigen::Index>(points.size());
  const Eigen::Index cols = quad ? 3 : 2;
  Eigen::MatrixXd A(rows, cols);
  Eigen::VectorXd y(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double n = points[static_cast<std::size_t>(i)].n;
    Eigen::Index c = 0;
    if (quad) {
      A(i, c++) = n * n;
    }
    A(i, c++) = n;
    A(i, c) = 1.0;
    y(i) = std::log(points[static_cast<std::size_t>(i)].alpha);
  }
  const Eigen::VectorXd coef = A.colPivHouseholderQr().solve(y);
  ScalingModel m;
  m.form = form;
  if (quad) {
    m.a = -coef(0);
    m.b = -coef(1);
    m.c = coef(2);
  } else {
    m.b = -coef(0);
    m.c = coef(1);
  }
  for (const auto& p : points) {
    m.residuals.push_back(std::log(p.alpha) - m.log_alpha(p.n));
  }
  return m;
}

Extrapolation extrapolate_L(const ScalingModel& model, double n, double D,
                            const Confidence& confidence, double resolution) {
  Extrapolation out;
  out.alpha = model.alpha(n);
  out.L = required_L_from_alpha(out.alpha, D, confidence);
  out.L_low = out.L;
  out.L_high = out.L;
  if (resolution > 0.0) {
    const double h = resolution / 2.0;
    const bool quad = model.form == ScalingModel::Form::Quadratic;
    ScalingModel best = model;
    ScalingModel worst = model;
    if (quad) {
      best.a = std::max(0.0, model.a - h);
      worst.a = model.a + h;
    }
    best.b = model.b - h;
    best.c = model.c + h;
    worst.b = model.b + h;
    worst.c = model.c - h;
    out.L_low = required_L_from_alpha(best.alpha(n), D, confidence);
    const double worst_alpha = worst.alpha(n);
    out.L_high = worst_alpha > 1.0 / D ? required_L_from_alpha(worst_alpha, D, confidence)
                                       : std::numeric_limits<double>::infinity();
    if (out.L_high > 10.0 * out.L_low) {
      out.caveat = "coefficients rounded to " + short_number(resolution) + " move L over [" +
                   short_number(out.L_low) + ", " + short_number(out.L_high) +
                   "]; only the order of magnitude is meaningful";
    }
  }
  return out;
}

} // namespace bellmark
