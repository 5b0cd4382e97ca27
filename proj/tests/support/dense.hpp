#pragma once

// Dense state-vector and matrix reference used to cross-check the stabilizer
// code. Qubit q is bit q of the basis index.

#include "bellmark/circuit.hpp"
#include "bellmark/graph.hpp"
#include "bellmark/pauli.hpp"
#include "bellmark/tableau.hpp"

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>

namespace densetest {

using cd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline cd ipow(unsigned k) {
  switch (k & 3U) {
  case 0: return {1, 0};
  case 1: return {0, 1};
  case 2: return {-1, 0};
  default: return {0, -1};
  }
}

inline std::uint64_t xmask(const bellmark::PauliString& p) {
  std::uint64_t m = 0;
  for (std::size_t q = 0; q < p.size(); ++q) {
    m |= static_cast<std::uint64_t>(p.x(q)) << q;
  }
  return m;
}

inline std::uint64_t zmask(const bellmark::PauliString& p) {
  std::uint64_t m = 0;
  for (std::size_t q = 0; q < p.size(); ++q) {
    m |= static_cast<std::uint64_t>(p.z(q)) << q;
  }
  return m;
}

/// Full matrix of i^phase prod X^x Z^z.
inline Mat pauli_matrix(const bellmark::PauliString& p) {
  const std::size_t dim = std::size_t{1} << p.size();
  Mat m = Mat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const auto xm = xmask(p);
  const auto zm = zmask(p);
  const cd ph = ipow(p.phase_exp());
  for (std::uint64_t b = 0; b < dim; ++b) {
    const double s = (std::popcount(b & zm) & 1) ? -1.0 : 1.0;
    m(static_cast<Eigen::Index>(b ^ xm), static_cast<Eigen::Index>(b)) = ph * s;
  }
  return m;
}

inline Eigen::Matrix2cd gate_matrix(bellmark::Gate1 g) {
  using bellmark::Gate1;
  const double r = 1.0 / std::sqrt(2.0);
  const cd i(0, 1);
  Eigen::Matrix2cd m;
  switch (g) {
  case Gate1::I: m << 1, 0, 0, 1; break;
  case Gate1::H: m << r, r, r, -r; break;
  case Gate1::S: m << 1, 0, 0, i; break;
  case Gate1::SDag: m << 1, 0, 0, -i; break;
  case Gate1::SqrtX: m << (1.0 + i) / 2.0, (1.0 - i) / 2.0, (1.0 - i) / 2.0, (1.0 + i) / 2.0; break;
  case Gate1::SqrtXDag: m << (1.0 - i) / 2.0, (1.0 + i) / 2.0, (1.0 + i) / 2.0, (1.0 - i) / 2.0; break;
  case Gate1::X: m << 0, 1, 1, 0; break;
  case Gate1::Y: m << 0, -i, i, 0; break;
  case Gate1::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

inline Vec zero_state(std::size_t n) {
  Vec v = Vec::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
  v(0) = 1;
  return v;
}

inline void apply1(Vec& v, const Eigen::Matrix2cd& u, std::size_t q) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(v.size()); ++b) {
    if (b & bit) {
      continue;
    }
    const auto i0 = static_cast<Eigen::Index>(b);
    const auto i1 = static_cast<Eigen::Index>(b | bit);
    const cd a0 = v(i0);
    const cd a1 = v(i1);
    v(i0) = u(0, 0) * a0 + u(0, 1) * a1;
    v(i1) = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

inline void apply1(Vec& v, bellmark::Gate1 g, std::size_t q) { apply1(v, gate_matrix(g), q); }

inline void apply_cz(Vec& v, std::size_t a, std::size_t b) {
  const std::uint64_t m = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
  for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(v.size()); ++k) {
    if ((k & m) == m) {
      v(static_cast<Eigen::Index>(k)) = -v(static_cast<Eigen::Index>(k));
    }
  }
}

inline void apply_gate(Vec& v, const bellmark::Gate& g) {
  if (g.is_cz()) {
    apply_cz(v, g.q0, g.q1);
    return;
  }
  for (auto op : g.ops) {
    apply1(v, op, g.q0);
  }
}

inline Vec run(const bellmark::Circuit& c) {
  Vec v = zero_state(c.n_qubits);
  for (const auto& layer : c.layers) {
    for (const auto& g : layer) {
      apply_gate(v, g);
    }
  }
  return v;
}

/// |G> = prod_{edges} CZ |+>^n.
inline Vec graph_state(const bellmark::ConnectivityGraph& g) {
  const std::size_t n = g.size();
  const std::size_t dim = std::size_t{1} << n;
  Vec v(static_cast<Eigen::Index>(dim));
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::uint64_t b = 0; b < dim; ++b) {
    int parity = 0;
    for (const auto& [i, j] : g.edges()) {
      parity ^= static_cast<int>(((b >> i) & 1U) & ((b >> j) & 1U));
    }
    v(static_cast<Eigen::Index>(b)) = parity ? -amp : amp;
  }
  return v;
}

inline double expectation(const Vec& v, const bellmark::PauliString& p) {
  return (v.adjoint() * pauli_matrix(p) * v)(0, 0).real();
}

/// |<a|b>|, 1 when the states agree up to a global phase.
inline double overlap(const Vec& a, const Vec& b) { return std::abs(a.dot(b)); }

} // namespace densetest
