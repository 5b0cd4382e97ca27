#include "bellmark/bell.hpp"

#include "bellmark/error.hpp"
#include "bellmark/tableau.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace bellmark {

std::string_view family_name(Family f) { return f == Family::GHZ ? "ghz" : "lc"; }

Family family_from_name(std::string_view name) {
  if (name == "ghz" || name == "GHZ") {
    return Family::GHZ;
  }
  if (name == "lc" || name == "LC") {
    return Family::LC;
  }
  fail(ErrorCode::InvalidArgument, "unknown family '" + std::string(name) + "' (expected ghz|lc)");
}

BellBounds bell_bounds(Family family, std::size_t n) {
  BellBounds b;
  const int ni = static_cast<int>(n);
  if (family == Family::GHZ) {
    if (n < 2) {
      fail(ErrorCode::InvalidArgument, "GHZ Bell operator needs n >= 2");
    }
    b.Q = std::ldexp(1.0, ni - 1);
    b.C = (n % 2 == 1) ? std::ldexp(1.0, (ni - 1) / 2) : std::ldexp(1.0, ni / 2);
  } else {
    if (n == 0 || n % 3 != 0) {
      fail(ErrorCode::InvalidArgument,
           "LC Bell operator needs n divisible by 3 (got " + std::to_string(n) + ")");
    }
    b.Q = std::ldexp(1.0, 2 * ni / 3);
    b.C = std::ldexp(1.0, ni / 3);
  }
  b.D = b.Q / b.C;
  return b;
}

BellOperator BellOperator::build(Family family, const ConnectivityGraph& state_graph,
                                 std::vector<Vertex> qubit_map) {
  const std::size_t n = state_graph.size();
  (void)bell_bounds(family, n);  // validates n

  BellOperator op;
  op.family_ = family;
  op.graph_ = state_graph;
  if (qubit_map.empty()) {
    qubit_map.resize(n);
    std::iota(qubit_map.begin(), qubit_map.end(), Vertex{0});
  }
  if (qubit_map.size() != n) {
    fail(ErrorCode::InvalidArgument, "qubit_map size does not match the state graph");
  }
  op.qubit_map_ = std::move(qubit_map);
  op.generators_ = graph_stabilizers(state_graph);

  if (family == Family::GHZ) {
    if (state_graph.edge_count() != n - 1) {
      fail(ErrorCode::InvalidArgument, "GHZ operator needs a star graph");
    }
    const Vertex center = max_degree_vertex(state_graph);
    if (state_graph.degree(center) != n - 1) {
      fail(ErrorCode::InvalidArgument, "GHZ operator needs a star graph");
    }
    op.center_ = center;
    for (Vertex v = 0; v < n; ++v) {
      if (v != center) {
        op.order_.push_back(v);
      }
    }
    op.index_bits_ = static_cast<unsigned>(n - 1);
  } else {
    std::vector<Vertex> ends;
    for (Vertex v = 0; v < n; ++v) {
      if (state_graph.degree(v) > 2) {
        fail(ErrorCode::InvalidArgument, "LC operator needs a path graph");
      }
      if (state_graph.degree(v) <= 1) {
        ends.push_back(v);
      }
    }
    if (state_graph.edge_count() != n - 1 || !state_graph.is_connected() ||
        (n > 1 && ends.size() != 2)) {
      fail(ErrorCode::InvalidArgument, "LC operator needs a path graph");
    }
    std::vector<bool> seen(n, false);
    Vertex cur = ends.front();
    seen[cur] = true;
    op.order_.push_back(cur);
    while (op.order_.size() < n) {
      for (Vertex u : state_graph.neighbors(cur)) {
        if (!seen[u]) {
          cur = u;
          break;
        }
      }
      seen[cur] = true;
      op.order_.push_back(cur);
    }
    op.index_bits_ = static_cast<unsigned>(2 * n / 3);
  }
  return op;
}

BellOperator BellOperator::standard(Family family, std::size_t n) {
  return build(family, family == Family::GHZ ? ConnectivityGraph::star(n, 0)
                                             : ConnectivityGraph::path(n));
}

double BellOperator::term_count() const { return std::ldexp(1.0, static_cast<int>(index_bits_)); }

std::optional<std::uint64_t> BellOperator::term_count_exact() const {
  if (index_bits_ >= 64) {
    return std::nullopt;
  }
  return std::uint64_t{1} << index_bits_;
}

PauliString BellOperator::term(const TermIndex& j) const {
  if (j.bits() != index_bits_) {
    fail(ErrorCode::InvalidArgument, "term index width " + std::to_string(j.bits()) +
                                         " does not match operator width " +
                                         std::to_string(index_bits_));
  }
  if (family_ == Family::GHZ) {
    PauliString out = generators_[center_];
    for (unsigned k = 0; k < index_bits_; ++k) {
      if (j.bit(k)) {
        out *= generators_[order_[k]];
      }
    }
    return out;
  }
  PauliString out(size());
  for (std::size_t b = 0; 3 * b < size(); ++b) {
    const bool t = j.bit(static_cast<unsigned>(2 * b));
    const bool s = j.bit(static_cast<unsigned>(2 * b + 1));
    if (s) {
      out *= generators_[order_[3 * b]];
    }
    out *= generators_[order_[3 * b + 1]];
    if (t) {
      out *= generators_[order_[3 * b + 2]];
    }
  }
  return out;
}

PauliString BellOperator::term(std::uint64_t j) const {
  if (index_bits_ < 64 && (j >> index_bits_) != 0) {
    fail(ErrorCode::InvalidArgument, "term index " + std::to_string(j) + " out of range");
  }
  return term(TermIndex(index_bits_, j));
}

std::int64_t lhv_bruteforce_bound(const BellOperator& op) {
  const auto count = op.term_count_exact();
  if (!count || *count > (std::uint64_t{1} << 20)) {
    fail(ErrorCode::InvalidArgument, "operator too large for brute-force LHV bound");
  }
  const std::size_t n = op.size();
  // Variable id for each (qubit, letter) pair that occurs in some term.
  std::vector<std::array<int, 4>> var(n, {-1, -1, -1, -1});
  auto letter_slot = [](char c) { return c == 'X' ? 1 : (c == 'Y' ? 2 : (c == 'Z' ? 3 : 0)); };
  int n_vars = 0;
  struct Row {
    int sign;
    std::uint32_t mask;
  };
  std::vector<PauliString> terms;
  terms.reserve(*count);
  for (std::uint64_t j = 0; j < *count; ++j) {
    terms.push_back(op.term(j));
    for (std::size_t q = 0; q < n; ++q) {
      const int slot = letter_slot(terms.back().letter(q));
      if (slot != 0 && var[q][slot] < 0) {
        var[q][slot] = n_vars++;
      }
    }
  }
  if (n_vars > 24) {
    fail(ErrorCode::InvalidArgument,
         "brute-force LHV bound needs " + std::to_string(n_vars) + " variables (max 24)");
  }
  std::vector<Row> rows;
  rows.reserve(terms.size());
  for (const auto& t : terms) {
    std::uint32_t mask = 0;
    for (std::size_t q = 0; q < n; ++q) {
      const int slot = letter_slot(t.letter(q));
      if (slot != 0) {
        mask |= std::uint32_t{1} << var[q][slot];
      }
    }
    rows.push_back({t.sign(), mask});
  }
  // Bit v of `assignment` set means variable v takes the value -1.
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  for (std::uint32_t assignment = 0; assignment < (std::uint32_t{1} << n_vars); ++assignment) {
    std::int64_t value = 0;
    for (const auto& r : rows) {
      const bool negative = (std::popcount(assignment & r.mask) & 1) != 0;
      value += negative ? -r.sign : r.sign;
    }
    best = std::max(best, value);
  }
  return best;
}

} // namespace bellmark
