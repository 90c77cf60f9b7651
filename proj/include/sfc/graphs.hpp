#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sfc/problem.hpp"

namespace sfc {

struct Graph {
  std::vector<std::string> vertices;
  std::vector<std::pair<size_t, size_t>> edges;  // (a, b) with a < b, sorted
  std::vector<Rational> dist;

  size_t size() const { return vertices.size(); }
  bool adjacent(size_t a, size_t b) const;
  // Neighbour bitmasks; only valid for graphs with at most 64 vertices.
  std::vector<uint64_t> masks() const;
};

struct Coloring {
  std::vector<size_t> color;  // per vertex, colors numbered in order of first use
  std::vector<Rational> color_dist;
  double entropy = 0;
  size_t num_colors() const { return color_dist.size(); }
};

struct ChromaticResult {
  double bits = 0;
  Coloring coloring;
};

struct CgeResult {
  double bits = 0;
  std::vector<std::vector<size_t>> sets;           // maximal independent sets
  std::vector<std::vector<double>> w_given_x;      // [x][set]
};

constexpr size_t kMaxColoringVertices = 12;
constexpr size_t kMaxCgeVertices = 12;
constexpr double kMaxPowerBits = 20;

Graph characteristic_graph(const Problem& p);
Graph power_graph(const Problem& p, int n);

bool is_proper(const Graph& g, const std::vector<size_t>& color);
Coloring make_coloring(const Graph& g, const std::vector<size_t>& color);
ChromaticResult chromatic_entropy(const Graph& g);

std::vector<std::vector<size_t>> maximal_independent_sets(const Graph& g);
// I(W;X|Y) in bits for p(w|x) over the given sets.
double cge_objective(const Problem& p, const std::vector<std::vector<size_t>>& sets,
                     const std::vector<std::vector<double>>& w_given_x);
CgeResult conditional_graph_entropy(const Problem& p, unsigned threads = 1);

}  // namespace sfc
