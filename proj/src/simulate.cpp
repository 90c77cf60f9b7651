#include <cmath>
#include <sstream>

#include "sfc/protocol.hpp"
#include "sfc/rng.hpp"

namespace sfc {

namespace {

using u128 = unsigned __int128;

// Thresholds ceil(F_i * 2^64) of the cumulative weights F_i. A draw r selects
// the first i with r < F_i * 2^64, which for integer r is r < threshold_i.
std::vector<u128> thresholds(const std::vector<Rational>& weights) {
  std::vector<u128> out;
  Rational cum = 0;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, 64);
  for (const auto& w : weights) {
    cum += w;
    mpz_class num = cum.get_num() * scale, t;
    mpz_cdiv_q(t.get_mpz_t(), num.get_mpz_t(), cum.get_den().get_mpz_t());
    if (t == scale)
      out.push_back(u128{1} << 64);
    else
      out.push_back(static_cast<u128>(mpz_get_ui(t.get_mpz_t())));
  }
  return out;
}

size_t pick(const std::vector<u128>& t, uint64_t r) {
  for (size_t i = 0; i < t.size(); ++i)
    if (static_cast<u128>(r) < t[i]) return i;
  return t.size() - 1;
}

}  // namespace

SimulationReport simulate(const Protocol& pr, const Problem& p, uint64_t n, uint64_t seed,
                          unsigned threads) {
  if (n < 1) throw InputError("simulation needs at least one sample");
  SimulationReport rep;
  rep.n = n;
  rep.seed = seed;
  rep.target = induced_joint(pr, p);
  const size_t nu = pr.nu(), ny = p.ny(), nz = p.nz();
  auto t_xy = thresholds(p.qxy.entries());
  std::vector<std::vector<u128>> t_enc, t_dec;
  for (const auto& row : pr.encoder.rows) t_enc.push_back(thresholds(row));
  for (const auto& row : pr.decoder.rows) t_dec.push_back(thresholds(row));
  std::vector<double> length(nu, std::ceil(std::log2(static_cast<double>(nu))));
  if (pr.code)
    for (size_t u = 0; u < nu; ++u) length[u] = static_cast<double>((*pr.code)[u].size());

  CounterRng rng(seed);
  unsigned workers = std::max(1u, threads);
  std::vector<std::vector<uint64_t>> counts(workers,
                                            std::vector<uint64_t>(rep.target.cell_count(), 0));
  std::vector<long double> total_len(workers, 0);
  parallel_for(workers, workers, [&](size_t w) {
    uint64_t lo = n * w / workers, hi = n * (w + 1) / workers;
    for (uint64_t i = lo; i < hi; ++i) {
      size_t c = pick(t_xy, rng.draw(i, 0));
      size_t x = c / ny, y = c % ny;
      size_t u = pick(t_enc[x], rng.draw(i, 1));
      size_t z = pick(t_dec[u * ny + y], rng.draw(i, 2));
      ++counts[w][((x * ny + y) * nu + u) * nz + z];
      total_len[w] += length[u];
    }
  });
  rep.counts.assign(rep.target.cell_count(), 0);
  long double len = 0;
  for (size_t w = 0; w < workers; ++w) {
    for (size_t c = 0; c < rep.counts.size(); ++c) rep.counts[c] += counts[w][c];
    len += total_len[w];
  }
  rep.mean_length = static_cast<double>(len / n);
  double tv = 0;
  for (size_t c = 0; c < rep.counts.size(); ++c)
    tv += std::abs(static_cast<double>(rep.counts[c]) / static_cast<double>(n) -
                   to_double(rep.target.entries()[c]));
  rep.tv = tv;
  return rep;
}

std::string render_simulation_csv(const SimulationReport& r) {
  std::ostringstream out;
  out << "cell,count,empirical,target\n";
  for (size_t c = 0; c < r.counts.size(); ++c) {
    if (r.counts[c] == 0 && sgn(r.target.entries()[c]) == 0) continue;
    auto idx = r.target.unflatten(c);
    std::string label;
    for (size_t a = 0; a < idx.size(); ++a) {
      if (a) label += ':';
      label += r.target.axes()[a].labels[idx[a]];
    }
    out << label << ',' << r.counts[c] << ','
        << format_double(static_cast<double>(r.counts[c]) / static_cast<double>(r.n)) << ','
        << to_string(r.target.entries()[c]) << '\n';
  }
  return out.str();
}

}  // namespace sfc
