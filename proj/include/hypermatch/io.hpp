#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hypermatch/core.hpp"
#include "hypermatch/random.hpp"

namespace hypermatch {

enum class WeightScheme { FromFile, Unit, SizeComplement };

enum class OrderKind { Original, Ascending, Descending, Random };

struct StreamOrder {
  OrderKind kind = OrderKind::Original;
  std::uint64_t seed = 0;  // Random only

  static StreamOrder original() { return {OrderKind::Original, 0}; }
  static StreamOrder ascending() { return {OrderKind::Ascending, 0}; }
  static StreamOrder descending() { return {OrderKind::Descending, 0}; }
  static StreamOrder random(std::uint64_t seed) { return {OrderKind::Random, seed}; }
};

namespace detail {

inline std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

inline std::uint64_t parse_unsigned(std::string_view tok, std::size_t line, const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line, std::string("non-numeric ") + what + " '" + std::string(tok) + "'");
  }
  return value;
}

inline double parse_weight(std::string_view tok, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "non-numeric weight '" + std::string(tok) + "'");
  }
  if (!std::isfinite(value) || value <= 0.0) {
    throw ParseError(line, "weight must be positive, got '" + std::string(tok) + "'");
  }
  return value;
}

inline bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace detail

/// Reads the hMetis-style edge list format:
///
///   % comment
///   m n [fmt]          fmt 1: each edge line starts with its weight
///   [w] v1 v2 ... vk   1-based vertex ids, one line per edge
///
/// LF and CRLF line endings are accepted. Blank lines after the last edge are ignored.
inline Hypergraph parse_hmetis(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;

  auto next_line = [&](std::string_view& out) {
    while (std::getline(in, raw)) {
      ++line_no;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      if (!raw.empty() && raw.front() == '%') continue;
      out = raw;
      return true;
    }
    return false;
  };

  std::string_view line;
  do {
    if (!next_line(line)) throw ParseError(line_no, "missing header line");
  } while (detail::is_blank(line));

  auto header = detail::split_tokens(line);
  if (header.size() < 2 || header.size() > 3) {
    throw ParseError(line_no, "header must be 'm n' or 'm n fmt'");
  }
  const std::uint64_t m = detail::parse_unsigned(header[0], line_no, "edge count");
  const std::uint64_t n = detail::parse_unsigned(header[1], line_no, "vertex count");
  bool weighted = false;
  if (header.size() == 3) {
    const std::uint64_t fmt = detail::parse_unsigned(header[2], line_no, "format flag");
    if (fmt == 1) {
      weighted = true;
    } else if (fmt != 0) {
      throw ParseError(line_no, "unsupported format flag " + std::to_string(fmt));
    }
  }
  if (m >= kNoEdge) throw ParseError(line_no, "edge count too large");
  if (n > std::numeric_limits<VertexId>::max()) throw ParseError(line_no, "vertex count too large");

  std::vector<Hyperedge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (std::uint64_t i = 0; i < m; ++i) {
    if (!next_line(line)) {
      throw ParseError(line_no, "expected " + std::to_string(m) + " edges, found " +
                                    std::to_string(i));
    }
    auto tokens = detail::split_tokens(line);
    std::size_t first = 0;
    Weight w = 1.0;
    if (weighted) {
      if (tokens.empty()) throw ParseError(line_no, "missing edge weight");
      w = detail::parse_weight(tokens[0], line_no);
      first = 1;
    }
    if (tokens.size() <= first) throw ParseError(line_no, "empty edge");
    std::vector<VertexId> vertices;
    vertices.reserve(tokens.size() - first);
    for (std::size_t t = first; t < tokens.size(); ++t) {
      const std::uint64_t v = detail::parse_unsigned(tokens[t], line_no, "vertex id");
      if (v < 1 || v > n) {
        throw ParseError(line_no, "vertex id " + std::to_string(v) + " outside 1.." +
                                      std::to_string(n));
      }
      vertices.push_back(static_cast<VertexId>(v - 1));
    }
    edges.emplace_back(static_cast<EdgeId>(i), std::move(vertices), w);
  }

  while (next_line(line)) {
    if (!detail::is_blank(line)) {
      throw ParseError(line_no, "more edge lines than the declared " + std::to_string(m));
    }
  }
  return Hypergraph(static_cast<std::size_t>(n), std::move(edges));
}

inline Hypergraph parse_hmetis(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_hmetis(in);
}

inline Hypergraph read_hmetis_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  return parse_hmetis(in);
}

/// Writes the weighted variant (fmt 1) with shortest round-trip weights.
inline void write_hmetis(std::ostream& out, const Hypergraph& hg) {
  out << hg.num_edges() << ' ' << hg.num_vertices() << " 1\n";
  char buf[64];
  for (const auto& e : hg.edges()) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), e.weight());
    out.write(buf, ptr - buf);
    for (VertexId v : e.vertices()) out << ' ' << (v + 1);
    out << '\n';
  }
}

inline std::string to_hmetis(const Hypergraph& hg) {
  std::ostringstream out;
  write_hmetis(out, hg);
  return out.str();
}

/// SizeComplement: w(e) = max|e'| - |e| + 1, which keeps the largest edges at weight 1.
inline Hypergraph synthesize_weights(const Hypergraph& hg, WeightScheme scheme) {
  if (scheme == WeightScheme::FromFile) return hg;
  std::vector<Hyperedge> edges;
  edges.reserve(hg.num_edges());
  for (const auto& e : hg.edges()) {
    Weight w = 1.0;
    if (scheme == WeightScheme::SizeComplement) {
      w = static_cast<Weight>(hg.rank() - e.size() + 1);
    }
    edges.emplace_back(e.id(), std::vector<VertexId>(e.vertices().begin(), e.vertices().end()), w);
  }
  return Hypergraph(hg.num_vertices(), std::move(edges));
}

/// Permutation of edge ids. Weight orders break ties by ascending edge id.
inline std::vector<EdgeId> order_stream(const Hypergraph& hg, StreamOrder order) {
  std::vector<EdgeId> ids(hg.num_edges());
  std::iota(ids.begin(), ids.end(), EdgeId{0});
  auto edges = hg.edges();
  switch (order.kind) {
    case OrderKind::Original:
      break;
    case OrderKind::Ascending:
      std::ranges::stable_sort(ids, [&](EdgeId a, EdgeId b) {
        return edges[a].weight() < edges[b].weight();
      });
      break;
    case OrderKind::Descending:
      std::ranges::stable_sort(ids, [&](EdgeId a, EdgeId b) {
        return edges[a].weight() > edges[b].weight();
      });
      break;
    case OrderKind::Random: {
      Rng rng(order.seed);
      rng.shuffle(std::span<EdgeId>(ids));
      break;
    }
  }
  return ids;
}

/// Random instance: sizes uniform in [1, d_max], vertices drawn without
/// replacement, integer weights uniform in [1, w_max].
inline Hypergraph gen_random_hypergraph(std::size_t n, std::size_t m, std::size_t d_max,
                                        std::uint64_t w_max, std::uint64_t seed) {
  if (d_max < 1 || d_max > n) throw InvalidInput("gen: need 1 <= d_max <= n");
  if (w_max < 1) throw InvalidInput("gen: need w_max >= 1");
  if (m >= kNoEdge || n > std::numeric_limits<VertexId>::max()) {
    throw InvalidInput("gen: instance too large");
  }
  Rng rng(seed);
  std::vector<VertexId> pool(n);
  std::iota(pool.begin(), pool.end(), VertexId{0});
  std::vector<Hyperedge> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t size = static_cast<std::size_t>(rng.between(1, d_max));
    // partial Fisher-Yates: the first `size` slots become the sample
    for (std::size_t k = 0; k < size; ++k) {
      std::size_t j = k + static_cast<std::size_t>(rng.below(n - k));
      std::swap(pool[k], pool[j]);
    }
    std::vector<VertexId> vertices(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
    const auto w = static_cast<Weight>(rng.between(1, w_max));
    edges.emplace_back(static_cast<EdgeId>(i), std::move(vertices), w);
  }
  return Hypergraph(n, std::move(edges));
}

}  // namespace hypermatch
