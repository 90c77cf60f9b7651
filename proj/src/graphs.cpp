#include "sfc/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sfc/rng.hpp"

namespace sfc {

bool Graph::adjacent(size_t a, size_t b) const {
  if (a > b) std::swap(a, b);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
}

std::vector<uint64_t> Graph::masks() const {
  if (size() > 64) throw SizeError("graph too large for bitmask adjacency");
  std::vector<uint64_t> m(size(), 0);
  for (auto [a, b] : edges) {
    m[a] |= uint64_t{1} << b;
    m[b] |= uint64_t{1} << a;
  }
  return m;
}

Graph characteristic_graph(const Problem& p) {
  require_one_output(p, "characteristic_graph");
  Graph g;
  g.vertices = p.x.labels;
  g.dist = p.px();
  for (size_t a = 0; a < p.nx(); ++a)
    for (size_t b = a + 1; b < p.nx(); ++b)
      for (size_t y = 0; y < p.ny(); ++y)
        if (p.supported(a, y) && p.supported(b, y) && p.row(a, y) != p.row(b, y)) {
          g.edges.emplace_back(a, b);
          break;
        }
  return g;
}

Graph power_graph(const Problem& p, int n) {
  require_one_output(p, "power_graph");
  if (n < 1) throw InputError("power must be at least 1");
  if (n * std::log2(static_cast<double>(p.nx())) > kMaxPowerBits)
    throw SizeError("power graph guard exceeded: n*log2|X| must be at most 20");
  const size_t k = p.nx();
  // Product distributions agree iff every coordinate agrees, so a pair of
  // tuples is adjacent iff every coordinate pair shares a y and some
  // coordinate pair is adjacent in the base graph.
  std::vector<std::vector<char>> share(k, std::vector<char>(k, 0));
  std::vector<std::vector<char>> differ(k, std::vector<char>(k, 0));
  for (size_t a = 0; a < k; ++a)
    for (size_t b = 0; b < k; ++b)
      for (size_t y = 0; y < p.ny(); ++y)
        if (p.supported(a, y) && p.supported(b, y)) {
          share[a][b] = 1;
          if (p.row(a, y) != p.row(b, y)) differ[a][b] = 1;
        }
  size_t count = 1;
  for (int i = 0; i < n; ++i) count *= k;
  auto px = p.px();
  Graph g;
  std::vector<std::vector<size_t>> tuple(count, std::vector<size_t>(n));
  for (size_t v = 0; v < count; ++v) {
    size_t rest = v;
    for (int i = n; i-- > 0;) {
      tuple[v][i] = rest % k;
      rest /= k;
    }
    std::string label;
    Rational mass = 1;
    for (int i = 0; i < n; ++i) {
      if (i) label += ',';
      label += p.x.labels[tuple[v][i]];
      mass *= px[tuple[v][i]];
    }
    g.vertices.push_back(label);
    g.dist.push_back(mass);
  }
  for (size_t a = 0; a < count; ++a)
    for (size_t b = a + 1; b < count; ++b) {
      bool all_share = true, any_differ = false;
      for (int i = 0; i < n && all_share; ++i) {
        all_share = share[tuple[a][i]][tuple[b][i]];
        any_differ = any_differ || differ[tuple[a][i]][tuple[b][i]];
      }
      if (all_share && any_differ) g.edges.emplace_back(a, b);
    }
  return g;
}

bool is_proper(const Graph& g, const std::vector<size_t>& color) {
  if (color.size() != g.size()) return false;
  for (auto [a, b] : g.edges)
    if (color[a] == color[b]) return false;
  return true;
}

Coloring make_coloring(const Graph& g, const std::vector<size_t>& color) {
  if (!is_proper(g, color)) throw InputError("coloring is not proper");
  Coloring c;
  std::vector<long> renum;
  for (size_t v = 0; v < g.size(); ++v) {
    if (color[v] >= renum.size()) renum.resize(color[v] + 1, -1);
    if (renum[color[v]] < 0) {
      renum[color[v]] = static_cast<long>(c.color_dist.size());
      c.color_dist.push_back(0);
    }
    c.color.push_back(static_cast<size_t>(renum[color[v]]));
    c.color_dist[c.color.back()] += g.dist[v];
  }
  c.entropy = entropy_of(c.color_dist);
  return c;
}

ChromaticResult chromatic_entropy(const Graph& g) {
  const size_t n = g.size();
  if (n > kMaxColoringVertices)
    throw SizeError("chromatic entropy is exhaustive and limited to 12 vertices; "
                    "heuristic colorings are out of scope");
  if (n == 0) return {};
  auto adj = g.masks();
  std::vector<double> w(n);
  for (size_t v = 0; v < n; ++v) w[v] = to_double(g.dist[v]);

  constexpr double tie = 1e-12;
  double best = std::numeric_limits<double>::infinity();
  size_t best_k = n + 1;
  std::vector<size_t> best_color;
  std::vector<size_t> color(n);
  std::vector<uint64_t> block;
  std::vector<double> mass;

  // Restricted-growth strings in lexicographic order; a vertex may only join
  // a block it has no edge into.
  auto rec = [&](auto&& self, size_t v) -> void {
    if (v == n) {
      double h = 0;
      for (double m : mass)
        if (m > 0) h -= m * std::log2(m);
      if (h < best - tie || (h <= best + tie && block.size() < best_k)) {
        best = h;
        best_k = block.size();
        best_color = color;
      }
      return;
    }
    for (size_t b = 0; b < block.size(); ++b) {
      if (adj[v] & block[b]) continue;
      block[b] |= uint64_t{1} << v;
      mass[b] += w[v];
      color[v] = b;
      self(self, v + 1);
      block[b] &= ~(uint64_t{1} << v);
      mass[b] -= w[v];
    }
    block.push_back(uint64_t{1} << v);
    mass.push_back(w[v]);
    color[v] = block.size() - 1;
    self(self, v + 1);
    block.pop_back();
    mass.pop_back();
  };
  rec(rec, 0);
  ChromaticResult r;
  r.coloring = make_coloring(g, best_color);
  r.bits = r.coloring.entropy;
  return r;
}

std::vector<std::vector<size_t>> maximal_independent_sets(const Graph& g) {
  const size_t n = g.size();
  if (n > kMaxCgeVertices) throw SizeError("maximal independent sets limited to 12 vertices");
  auto adj = g.masks();
  std::vector<std::vector<size_t>> out;
  const uint64_t full = (uint64_t{1} << n) - 1;
  std::vector<uint64_t> found;
  for (uint64_t s = 1; s <= full; ++s) {
    bool independent = true, maximal = true;
    for (size_t v = 0; v < n && independent; ++v)
      if ((s >> v & 1) && (adj[v] & s)) independent = false;
    if (!independent) continue;
    for (size_t v = 0; v < n && maximal; ++v)
      if (!(s >> v & 1) && !(adj[v] & s)) maximal = false;
    if (maximal) found.push_back(s);
  }
  for (uint64_t s : found) {
    std::vector<size_t> set;
    for (size_t v = 0; v < n; ++v)
      if (s >> v & 1) set.push_back(v);
    out.push_back(set);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct CgeModel {
  size_t nx, ny, nw;
  std::vector<double> pxy;                 // [x*ny+y]
  std::vector<double> px, py;
  std::vector<std::vector<char>> member;   // [x][w]
};

CgeModel build_model(const Problem& p, const std::vector<std::vector<size_t>>& sets) {
  CgeModel m{p.nx(), p.ny(), sets.size(), {}, std::vector<double>(p.nx(), 0),
             std::vector<double>(p.ny(), 0), {}};
  for (size_t x = 0; x < p.nx(); ++x)
    for (size_t y = 0; y < p.ny(); ++y) {
      double v = to_double(p.pxy(x, y));
      m.pxy.push_back(v);
      m.px[x] += v;
      m.py[y] += v;
    }
  m.member.assign(p.nx(), std::vector<char>(sets.size(), 0));
  for (size_t w = 0; w < sets.size(); ++w)
    for (size_t x : sets[w]) m.member[x][w] = 1;
  return m;
}

std::vector<double> w_given_y(const CgeModel& m, const std::vector<std::vector<double>>& pw) {
  std::vector<double> r(m.ny * m.nw, 0);
  for (size_t x = 0; x < m.nx; ++x)
    for (size_t y = 0; y < m.ny; ++y) {
      double v = m.pxy[x * m.ny + y];
      if (v <= 0) continue;
      for (size_t w = 0; w < m.nw; ++w) r[y * m.nw + w] += v / m.py[y] * pw[x][w];
    }
  return r;
}

double objective(const CgeModel& m, const std::vector<std::vector<double>>& pw) {
  auto r = w_given_y(m, pw);
  double total = 0;
  for (size_t x = 0; x < m.nx; ++x)
    for (size_t y = 0; y < m.ny; ++y) {
      double v = m.pxy[x * m.ny + y];
      if (v <= 0) continue;
      for (size_t w = 0; w < m.nw; ++w)
        if (pw[x][w] > 0) total += v * pw[x][w] * std::log2(pw[x][w] / r[y * m.nw + w]);
    }
  return std::max(total, 0.0);
}

struct Run {
  double bits;
  std::vector<std::vector<double>> pw;
};

Run alternate(const CgeModel& m, std::vector<std::vector<double>> pw) {
  constexpr double tol = 1e-10;
  constexpr int max_iter = 10000;
  double prev = objective(m, pw);
  for (int it = 0; it < max_iter; ++it) {
    auto r = w_given_y(m, pw);
    for (size_t x = 0; x < m.nx; ++x) {
      if (m.px[x] <= 0) continue;
      std::vector<double> logw(m.nw, -std::numeric_limits<double>::infinity());
      double top = -std::numeric_limits<double>::infinity();
      for (size_t w = 0; w < m.nw; ++w) {
        if (!m.member[x][w]) continue;
        double s = 0;
        bool dead = false;
        for (size_t y = 0; y < m.ny && !dead; ++y) {
          double v = m.pxy[x * m.ny + y];
          if (v <= 0) continue;
          double rv = r[y * m.nw + w];
          if (rv <= 0) dead = true;
          else s += v / m.px[x] * std::log(rv);
        }
        if (!dead) {
          logw[w] = s;
          top = std::max(top, s);
        }
      }
      double z = 0;
      for (size_t w = 0; w < m.nw; ++w) {
        pw[x][w] = std::isinf(logw[w]) ? 0.0 : std::exp(logw[w] - top);
        z += pw[x][w];
      }
      for (auto& v : pw[x]) v /= z;
    }
    double cur = objective(m, pw);
    bool done = std::abs(prev - cur) < tol;
    prev = cur;
    if (done) break;
  }
  return {prev, pw};
}

}  // namespace

double cge_objective(const Problem& p, const std::vector<std::vector<size_t>>& sets,
                     const std::vector<std::vector<double>>& w_given_x) {
  return objective(build_model(p, sets), w_given_x);
}

CgeResult conditional_graph_entropy(const Problem& p, unsigned threads) {
  Graph g = characteristic_graph(p);
  if (g.size() > kMaxCgeVertices)
    throw SizeError("conditional graph entropy limited to 12 inputs");
  CgeResult res;
  res.sets = maximal_independent_sets(g);
  CgeModel m = build_model(p, res.sets);
  constexpr size_t restarts = 32;
  CounterRng rng(0x5eed);
  std::vector<Run> runs(restarts);
  parallel_for(restarts, threads, [&](size_t k) {
    std::vector<std::vector<double>> pw(m.nx, std::vector<double>(m.nw, 0));
    for (size_t x = 0; x < m.nx; ++x) {
      double z = 0;
      for (size_t w = 0; w < m.nw; ++w)
        if (m.member[x][w]) {
          pw[x][w] = k == 0 ? 1.0 : rng.uniform(k, x * m.nw + w);
          z += pw[x][w];
        }
      for (auto& v : pw[x]) v /= z;
    }
    runs[k] = alternate(m, std::move(pw));
  });
  size_t best = 0;
  for (size_t k = 1; k < restarts; ++k)
    if (runs[k].bits < runs[best].bits - 1e-12) best = k;
  res.bits = runs[best].bits;
  res.w_given_x = std::move(runs[best].pw);
  return res;
}

}  // namespace sfc
