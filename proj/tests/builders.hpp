// Hand-built chains and random instance generators shared by several tests.
#pragma once

#include "oracles.hpp"
#include "sfc/aux_chain.hpp"
#include "sfc/problem.hpp"

namespace build {

using sfc::Rational;
using Rows = std::vector<std::vector<Rational>>;

inline std::vector<Rational> delta(size_t n, size_t i) {
  std::vector<Rational> r(n, 0);
  r[i] = 1;
  return r;
}

// index-and(m): Alice sends J, Bob answers Y_J, Alice sends V and Y_J.
inline sfc::AuxChain index_and_chain(const sfc::Problem& p, int m) {
  const size_t M = static_cast<size_t>(m);
  Rows r1, r2, r3, d1, d2;
  for (size_t x = 0; x < p.nx(); ++x) r1.push_back(delta(M, x % M));
  for (size_t y = 0; y < p.ny(); ++y)
    for (size_t u1 = 0; u1 < M; ++u1) r2.push_back(delta(2, (y >> u1) & 1));
  for (size_t x = 0; x < p.nx(); ++x)
    for (size_t u1 = 0; u1 < M; ++u1)
      for (size_t u2 = 0; u2 < 2; ++u2) r3.push_back(delta(2, (x / M) & u2));
  auto z_of = [&](size_t prefix) {
    size_t u1 = prefix / 4, u3 = prefix % 2;
    return u1 * 2 + u3;
  };
  for (size_t x = 0; x < p.nx(); ++x)
    for (size_t pre = 0; pre < M * 4; ++pre) d1.push_back(delta(p.z1.size(), z_of(pre)));
  for (size_t y = 0; y < p.ny(); ++y)
    for (size_t pre = 0; pre < M * 4; ++pre) d2.push_back(delta(p.z2.size(), z_of(pre)));
  return sfc::make_aux_chain(p, sfc::Party::alice, {M, 2, 2}, {r1, r2, r3}, d1, d2);
}

// One-round chain with U = Z for a one-output problem with |Y| = 1.
inline sfc::AuxChain output_as_message_chain(const sfc::Problem& p) {
  Rows r1, d1, d2;
  const size_t nz = p.nz();
  for (size_t x = 0; x < p.nx(); ++x) r1.push_back(p.row(x, 0));
  for (size_t x = 0; x < p.nx(); ++x)
    for (size_t u = 0; u < nz; ++u) d1.push_back({Rational(1)});
  for (size_t y = 0; y < p.ny(); ++y)
    for (size_t u = 0; u < nz; ++u) d2.push_back(delta(nz, u));
  return sfc::make_aux_chain(p, sfc::Party::alice, {nz}, {r1}, d1, d2);
}

// One-round chain U = X.
inline sfc::AuxChain reveal_input_chain(const sfc::Problem& p) {
  Rows r1, d1, d2;
  const size_t nx = p.nx(), nz = p.nz();
  for (size_t x = 0; x < nx; ++x) r1.push_back(delta(nx, x));
  for (size_t x = 0; x < nx; ++x)
    for (size_t u = 0; u < nx; ++u) d1.push_back({Rational(1)});
  for (size_t y = 0; y < p.ny(); ++y)
    for (size_t u = 0; u < nx; ++u) d2.push_back(p.row(u, y));
  return sfc::make_aux_chain(p, sfc::Party::alice, {nx}, {r1}, d1, d2);
}

// Problem with product input distribution and a random channel.
inline sfc::Problem random_product_problem(oracle::Rng& rng) {
  size_t nx = oracle::uniform_int(rng, 1, 3), ny = oracle::uniform_int(rng, 1, 3);
  size_t nz = oracle::uniform_int(rng, 1, 3);
  auto px = oracle::random_dist(rng, nx, 4), py = oracle::random_dist(rng, ny, 4);
  std::vector<Rational> qxy;
  for (size_t x = 0; x < nx; ++x)
    for (size_t y = 0; y < ny; ++y) qxy.push_back(px[x] * py[y]);
  Rows rows;
  for (size_t c = 0; c < nx * ny; ++c) rows.push_back(oracle::random_dist(rng, nz, 4));
  return sfc::make_one_output(sfc::make_axis("X", nx, "x"), sfc::make_axis("Y", ny, "y"),
                              sfc::make_axis("Z", nz), qxy, rows);
}

// Random alternating two-round chain: U1 from X, U2 from (Y, U1). Decoders
// are arbitrary since only the message structure matters here.
inline sfc::AuxChain random_two_round_chain(oracle::Rng& rng, const sfc::Problem& p) {
  size_t a = oracle::uniform_int(rng, 1, 3), b = oracle::uniform_int(rng, 1, 3);
  Rows r1, r2, d1, d2;
  for (size_t x = 0; x < p.nx(); ++x) r1.push_back(oracle::random_dist(rng, a, 6));
  for (size_t y = 0; y < p.ny(); ++y)
    for (size_t u = 0; u < a; ++u) r2.push_back(oracle::random_dist(rng, b, 6));
  for (size_t k = 0; k < p.nx() * a * b; ++k) d1.push_back({Rational(1)});
  for (size_t k = 0; k < p.ny() * a * b; ++k) d2.push_back(oracle::random_dist(rng, p.nz(), 2));
  return sfc::make_aux_chain(p, sfc::Party::alice, {a, b}, {r1, r2}, d1, d2);
}

// Feasible for privacy against both: inputs are split into blocks, every
// block uses the same output row at each y, and at each y the blocks' output
// supports are disjoint.
inline sfc::Problem random_both_feasible(oracle::Rng& rng) {
  size_t nx = oracle::uniform_int(rng, 1, 5), ny = oracle::uniform_int(rng, 1, 5);
  size_t nz = oracle::uniform_int(rng, 1, 5);
  size_t nb = oracle::uniform_int(rng, 1, std::min(nx, nz));
  std::vector<size_t> block(nx);
  for (size_t x = 0; x < nx; ++x) block[x] = x < nb ? x : oracle::uniform_int(rng, 0, nb - 1);
  std::shuffle(block.begin(), block.end(), rng);
  Rows per_block_row(nb * ny);
  for (size_t y = 0; y < ny; ++y) {
    // Assign each output to a block, every block gets at least one output.
    std::vector<size_t> owner(nz);
    for (size_t z = 0; z < nz; ++z) owner[z] = z < nb ? z : oracle::uniform_int(rng, 0, nb - 1);
    std::shuffle(owner.begin(), owner.end(), rng);
    for (size_t b = 0; b < nb; ++b) {
      std::vector<size_t> mine;
      for (size_t z = 0; z < nz; ++z)
        if (owner[z] == b) mine.push_back(z);
      auto w = oracle::random_dist(rng, mine.size(), 4);
      std::vector<Rational> row(nz, 0);
      for (size_t k = 0; k < mine.size(); ++k) row[mine[k]] = w[k];
      per_block_row[b * ny + y] = row;
    }
  }
  auto qxy = oracle::random_dist(rng, nx * ny, 16);
  Rows rows;
  for (size_t x = 0; x < nx; ++x)
    for (size_t y = 0; y < ny; ++y) rows.push_back(per_block_row[block[x] * ny + y]);
  return sfc::make_one_output(sfc::make_axis("X", nx, "x"), sfc::make_axis("Y", ny, "y"),
                              sfc::make_axis("Z", nz), qxy, rows);
}

// Feasible for privacy against Bob with full support: q(z|x,y) =
// p(w|x) g_{w,y}(z) where the supports of g_{w,y} over w are disjoint per y.
inline sfc::Problem random_bob_feasible(oracle::Rng& rng) {
  size_t nx = oracle::uniform_int(rng, 1, 4), ny = oracle::uniform_int(rng, 1, 3);
  size_t nz = oracle::uniform_int(rng, 1, 5);
  size_t nw = oracle::uniform_int(rng, 1, std::min<size_t>(nz, 3));
  Rows w_given_x;
  for (size_t x = 0; x < nx; ++x) w_given_x.push_back(oracle::random_dist(rng, nw, 4));
  std::vector<Rows> g(ny, Rows(nw));
  for (size_t y = 0; y < ny; ++y) {
    std::vector<size_t> owner(nz);
    for (size_t z = 0; z < nz; ++z) owner[z] = z < nw ? z : oracle::uniform_int(rng, 0, nw - 1);
    std::shuffle(owner.begin(), owner.end(), rng);
    for (size_t w = 0; w < nw; ++w) {
      std::vector<size_t> mine;
      for (size_t z = 0; z < nz; ++z)
        if (owner[z] == w) mine.push_back(z);
      auto d = oracle::random_dist(rng, mine.size(), 4);
      std::vector<Rational> row(nz, 0);
      for (size_t k = 0; k < mine.size(); ++k) row[mine[k]] = d[k];
      g[y][w] = row;
    }
  }
  auto qxy = oracle::random_dist(rng, nx * ny, 16, false);
  Rows rows;
  for (size_t x = 0; x < nx; ++x)
    for (size_t y = 0; y < ny; ++y) {
      std::vector<Rational> row(nz, 0);
      for (size_t w = 0; w < nw; ++w)
        for (size_t z = 0; z < nz; ++z) row[z] += w_given_x[x][w] * g[y][w][z];
      rows.push_back(row);
    }
  return sfc::make_one_output(sfc::make_axis("X", nx, "x"), sfc::make_axis("Y", ny, "y"),
                              sfc::make_axis("Z", nz), qxy, rows);
}

}  // namespace build
