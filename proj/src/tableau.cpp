#include "bellmark/tableau.hpp"

#include "bellmark/error.hpp"

#include <array>
#include <string>

namespace bellmark {

namespace {

constexpr std::array<std::string_view, 9> kGate1Names = {
    "I", "H", "S", "S_DAG", "SQRT_X", "SQRT_X_DAG", "X", "Y", "Z"};

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    fail(ErrorCode::InvalidArgument,
         std::string(what) + ": probability " + std::to_string(p) + " outside [0, 1]");
  }
}

} // namespace

std::string_view gate1_name(Gate1 g) { return kGate1Names[static_cast<std::size_t>(g)]; }

Gate1 gate1_from_name(std::string_view name) {
  for (std::size_t k = 0; k < kGate1Names.size(); ++k) {
    if (kGate1Names[k] == name) {
      return static_cast<Gate1>(k);
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown single-qubit gate '" + std::string(name) + "'");
}

bool is_diagonal(Gate1 g) {
  return g == Gate1::I || g == Gate1::S || g == Gate1::SDag || g == Gate1::Z;
}

StabilizerTableau::StabilizerTableau(std::size_t n_qubits)
    : n_(n_qubits), words_(words_for(n_qubits)), x_(2 * n_qubits * words_, 0),
      z_(2 * n_qubits * words_, 0), phase_(2 * n_qubits, 0) {
  for (std::size_t q = 0; q < n_; ++q) {
    xrow(q)[q >> 6] |= Word{1} << (q & 63);
    zrow(n_ + q)[q >> 6] |= Word{1} << (q & 63);
  }
}

PauliString StabilizerTableau::row(std::size_t r) const {
  PauliString p(n_);
  for (std::size_t w = 0; w < words_; ++w) {
    p.x_[w] = xrow(r)[w];
    p.z_[w] = zrow(r)[w];
  }
  p.phase_ = phase_[r];
  return p;
}

void StabilizerTableau::apply(Gate1 g, std::size_t q) {
  if (q >= n_) {
    fail(ErrorCode::InvalidArgument, "gate qubit " + std::to_string(q) + " out of range");
  }
  const std::size_t w = q >> 6;
  const unsigned s = q & 63;
  const Word bit = Word{1} << s;
  for (std::size_t r = 0; r < 2 * n_; ++r) {
    Word& xw = x_[r * words_ + w];
    Word& zw = z_[r * words_ + w];
    const unsigned x = (xw >> s) & 1U;
    const unsigned z = (zw >> s) & 1U;
    unsigned dphase = 0;
    switch (g) {
    case Gate1::I: break;
    case Gate1::H:
      dphase = 2 * (x & z);
      if (x != z) {
        xw ^= bit;
        zw ^= bit;
      }
      break;
    case Gate1::S:
      dphase = x;
      if (x) zw ^= bit;
      break;
    case Gate1::SDag:
      dphase = 3 * x;
      if (x) zw ^= bit;
      break;
    case Gate1::SqrtX:
      dphase = 3 * z;
      if (z) xw ^= bit;
      break;
    case Gate1::SqrtXDag:
      dphase = z;
      if (z) xw ^= bit;
      break;
    case Gate1::X: dphase = 2 * z; break;
    case Gate1::Y: dphase = 2 * (x ^ z); break;
    case Gate1::Z: dphase = 2 * x; break;
    }
    phase_[r] = static_cast<std::uint8_t>((phase_[r] + dphase) & 3U);
  }
}

void StabilizerTableau::apply_cz(std::size_t a, std::size_t b) {
  if (a >= n_ || b >= n_) {
    fail(ErrorCode::InvalidArgument, "CZ qubit out of range");
  }
  if (a == b) {
    fail(ErrorCode::InvalidArgument, "CZ needs two distinct qubits");
  }
  const std::size_t wa = a >> 6;
  const std::size_t wb = b >> 6;
  const unsigned sa = a & 63;
  const unsigned sb = b & 63;
  for (std::size_t r = 0; r < 2 * n_; ++r) {
    Word* xr = xrow(r);
    Word* zr = zrow(r);
    const Word xa = (xr[wa] >> sa) & 1U;
    const Word xb = (xr[wb] >> sb) & 1U;
    zr[wa] ^= xb << sa;
    zr[wb] ^= xa << sb;
    phase_[r] = static_cast<std::uint8_t>((phase_[r] + 2 * (xa & xb)) & 3U);
  }
}

bool StabilizerTableau::row_anticommutes(std::size_t r, const PauliString& p) const {
  return detail::anticommute_words({xrow(r), words_}, {zrow(r), words_}, p.x_words(), p.z_words());
}

bool StabilizerTableau::rows_anticommute(std::size_t a, std::size_t b) const {
  return detail::anticommute_words({xrow(a), words_}, {zrow(a), words_}, {xrow(b), words_},
                                   {zrow(b), words_});
}

void StabilizerTableau::apply_pauli(const PauliString& p) {
  if (p.size() != n_) {
    fail(ErrorCode::InvalidArgument, "Pauli size mismatch");
  }
  for (std::size_t r = 0; r < 2 * n_; ++r) {
    if (row_anticommutes(r, p)) {
      phase_[r] = static_cast<std::uint8_t>((phase_[r] + 2) & 3U);
    }
  }
}

void StabilizerTableau::multiply_row(std::size_t target, std::size_t source) {
  Word* xt = xrow(target);
  Word* zt = zrow(target);
  const Word* xs = xrow(source);
  const Word* zs = zrow(source);
  const unsigned extra = detail::product_phase({zt, words_}, {xs, words_});
  phase_[target] = static_cast<std::uint8_t>((phase_[target] + phase_[source] + extra) & 3U);
  for (std::size_t w = 0; w < words_; ++w) {
    xt[w] ^= xs[w];
    zt[w] ^= zs[w];
  }
}

MeasureResult StabilizerTableau::measure(const PauliString& obs, Rng& rng) {
  if (obs.size() != n_) {
    fail(ErrorCode::InvalidArgument, "observable size mismatch");
  }
  if (!obs.is_hermitian()) {
    fail(ErrorCode::InvalidArgument, "observable " + obs.str() + " is not Hermitian");
  }
  std::size_t pivot = 2 * n_;
  for (std::size_t r = n_; r < 2 * n_; ++r) {
    if (row_anticommutes(r, obs)) {
      pivot = r;
      break;
    }
  }
  if (pivot == 2 * n_) {
    return MeasureResult{expectation(obs), true};
  }

  for (std::size_t r = 0; r < 2 * n_; ++r) {
    if (r != pivot && r != pivot - n_ && row_anticommutes(r, obs)) {
      multiply_row(r, pivot);
    }
  }
  // Old stabilizer becomes the destabilizer of the new one.
  const std::size_t d = pivot - n_;
  for (std::size_t w = 0; w < words_; ++w) {
    xrow(d)[w] = xrow(pivot)[w];
    zrow(d)[w] = zrow(pivot)[w];
  }
  phase_[d] = phase_[pivot];

  std::bernoulli_distribution coin(0.5);
  const int outcome = coin(rng) ? -1 : 1;
  for (std::size_t w = 0; w < words_; ++w) {
    xrow(pivot)[w] = obs.x_words()[w];
    zrow(pivot)[w] = obs.z_words()[w];
  }
  phase_[pivot] = static_cast<std::uint8_t>((obs.phase_exp() + (outcome < 0 ? 2U : 0U)) & 3U);
  return MeasureResult{outcome, false};
}

MeasureResult StabilizerTableau::measure_z(std::size_t q, Rng& rng) {
  return measure(PauliString::single(n_, q, 'Z'), rng);
}

int StabilizerTableau::expectation(const PauliString& obs) const {
  if (obs.size() != n_) {
    fail(ErrorCode::InvalidArgument, "observable size mismatch");
  }
  for (std::size_t r = n_; r < 2 * n_; ++r) {
    if (row_anticommutes(r, obs)) {
      return 0;
    }
  }
  // obs commutes with the whole group, so +-obs is the product of the
  // stabilizers whose destabilizers anticommute with it.
  PauliString product(n_);
  for (std::size_t r = 0; r < n_; ++r) {
    if (row_anticommutes(r, obs)) {
      product *= row(n_ + r);
    }
  }
  return product.phase_exp() == obs.phase_exp() ? 1 : -1;
}

bool StabilizerTableau::check_invariants() const {
  for (std::size_t a = 0; a < n_; ++a) {
    if (!row(n_ + a).is_hermitian()) {
      return false;
    }
    for (std::size_t b = 0; b < n_; ++b) {
      if (rows_anticommute(n_ + a, n_ + b)) {
        return false;
      }
      if (rows_anticommute(a, b)) {
        return false;
      }
      if (rows_anticommute(a, n_ + b) != (a == b)) {
        return false;
      }
    }
  }
  return true;
}

std::vector<PauliString> graph_stabilizers(const ConnectivityGraph& g) {
  std::vector<PauliString> out;
  out.reserve(g.size());
  for (Vertex v = 0; v < g.size(); ++v) {
    PauliString p(g.size());
    p.set_letter(v, 'X');
    for (Vertex u : g.neighbors(v)) {
      p.set_letter(u, 'Z');
    }
    out.push_back(std::move(p));
  }
  return out;
}

bool is_graph_state(const StabilizerTableau& t, const ConnectivityGraph& g) {
  if (t.size() != g.size()) {
    return false;
  }
  for (const auto& gen : graph_stabilizers(g)) {
    if (t.expectation(gen) != 1) {
      return false;
    }
  }
  return true;
}

Gate1 sample_depolarizing1(double p, Rng& rng) {
  check_probability(p, "depolarizing1");
  if (p == 0.0) {
    return Gate1::I;
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (u(rng) >= p) {
    return Gate1::I;
  }
  std::uniform_int_distribution<int> which(0, 2);
  static constexpr Gate1 kPaulis[] = {Gate1::X, Gate1::Y, Gate1::Z};
  return kPaulis[which(rng)];
}

std::pair<Gate1, Gate1> sample_depolarizing2(double p, Rng& rng) {
  check_probability(p, "depolarizing2");
  if (p == 0.0) {
    return {Gate1::I, Gate1::I};
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (u(rng) >= p) {
    return {Gate1::I, Gate1::I};
  }
  std::uniform_int_distribution<int> which(1, 15);
  const int k = which(rng);
  static constexpr Gate1 kPaulis[] = {Gate1::I, Gate1::X, Gate1::Y, Gate1::Z};
  return {kPaulis[k / 4], kPaulis[k % 4]};
}

bool sample_flip(double p, Rng& rng) {
  check_probability(p, "readout");
  if (p == 0.0) {
    return false;
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return u(rng) < p;
}

void apply_depolarizing1(StabilizerTableau& t, std::size_t q, double p, Rng& rng) {
  const Gate1 e = sample_depolarizing1(p, rng);
  if (e != Gate1::I) {
    t.apply(e, q);
  }
}

void apply_depolarizing2(StabilizerTableau& t, std::size_t a, std::size_t b, double p, Rng& rng) {
  const auto [ea, eb] = sample_depolarizing2(p, rng);
  if (ea != Gate1::I) {
    t.apply(ea, a);
  }
  if (eb != Gate1::I) {
    t.apply(eb, b);
  }
}

int apply_readout_flip(int bit, double p, Rng& rng) { return sample_flip(p, rng) ? -bit : bit; }

} // namespace bellmark
