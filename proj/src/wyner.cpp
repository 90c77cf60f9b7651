#include <algorithm>
#include <cmath>
#include <limits>

#include "sfc/rates.hpp"
#include "sfc/rng.hpp"

namespace sfc {

namespace {

struct Mixture {
  std::vector<double> pw;
  std::vector<std::vector<double>> a, b;  // [w][z1], [w][z2]
};

struct Candidate {
  double estimate = std::numeric_limits<double>::infinity();
  double fit = std::numeric_limits<double>::infinity();
  Mixture mix;
};

constexpr double kFitTolerance = 1e-5;
constexpr size_t kRestarts = 64;

double xlogx(double v) { return v > 0 ? v * std::log(v) : 0.0; }

std::vector<double> softmax(const double* t, size_t n) {
  double top = *std::max_element(t, t + n);
  std::vector<double> p(n);
  double z = 0;
  for (size_t i = 0; i < n; ++i) z += p[i] = std::exp(t[i] - top);
  for (auto& v : p) v /= z;
  return p;
}

// Scores a mixture: the estimate is I(Z1 Z2; W) of the joint q(z1,z2) r(w|z1,z2),
// where r is the mixture's posterior; that joint matches q exactly.
Candidate score(const Mixture& m, const std::vector<double>& q, size_t k1, size_t k2) {
  size_t nw = m.pw.size();
  Candidate c;
  c.mix = m;
  c.fit = 0;
  std::vector<double> post_w(nw, 0);
  std::vector<double> joint(nw * k1 * k2, 0);
  for (size_t i = 0; i < k1; ++i)
    for (size_t j = 0; j < k2; ++j) {
      double mij = 0;
      for (size_t w = 0; w < nw; ++w) mij += m.pw[w] * m.a[w][i] * m.b[w][j];
      double qij = q[i * k2 + j];
      c.fit += std::abs(mij - qij);
      if (qij <= 0) continue;
      for (size_t w = 0; w < nw; ++w) {
        double r = mij > 0 ? m.pw[w] * m.a[w][i] * m.b[w][j] / mij : 1.0 / nw;
        joint[(w * k1 + i) * k2 + j] = qij * r;
        post_w[w] += qij * r;
      }
    }
  double info = 0;
  for (size_t w = 0; w < nw; ++w)
    for (size_t i = 0; i < k1; ++i)
      for (size_t j = 0; j < k2; ++j) {
        double v = joint[(w * k1 + i) * k2 + j];
        if (v > 0) info += v * std::log2(v / (post_w[w] * q[i * k2 + j]));
      }
  c.estimate = std::max(info, 0.0);
  return c;
}

// Penalized descent in logit space: minimize I(Z1Z2;W) of the product mixture
// plus mu * ||mixture - q||^2, with mu raised stage by stage.
Mixture descend(const std::vector<double>& q, size_t k1, size_t k2, size_t nw,
                const CounterRng& rng, uint64_t stream) {
  size_t np = nw + nw * k1 + nw * k2;
  std::vector<double> th(np), g(np), m1(np, 0), m2(np, 0);
  for (size_t i = 0; i < np; ++i) th[i] = 2.0 * (rng.uniform(stream, i) - 0.5);
  double* tp = th.data();
  double* ta = tp + nw;
  double* tb = ta + nw * k1;
  const double beta1 = 0.9, beta2 = 0.999, eps = 1e-12;
  long step = 0;
  Mixture m;
  auto unpack = [&]() {
    m.pw = softmax(tp, nw);
    m.a.assign(nw, {});
    m.b.assign(nw, {});
    for (size_t w = 0; w < nw; ++w) {
      m.a[w] = softmax(ta + w * k1, k1);
      m.b[w] = softmax(tb + w * k2, k2);
    }
  };
  for (double mu : {1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7}) {
    const int iters = 2500;
    for (int it = 0; it < iters; ++it) {
      unpack();
      std::vector<double> mix(k1 * k2, 0), gm(k1 * k2);
      for (size_t w = 0; w < nw; ++w)
        for (size_t i = 0; i < k1; ++i)
          for (size_t j = 0; j < k2; ++j) mix[i * k2 + j] += m.pw[w] * m.a[w][i] * m.b[w][j];
      for (size_t c = 0; c < k1 * k2; ++c)
        gm[c] = -(std::log(std::max(mix[c], 1e-300)) + 1) + 2 * mu * (mix[c] - q[c]);
      std::fill(g.begin(), g.end(), 0.0);
      for (size_t w = 0; w < nw; ++w) {
        double ha = 0, hb = 0;
        for (double v : m.a[w]) ha -= xlogx(v);
        for (double v : m.b[w]) hb -= xlogx(v);
        std::vector<double> ga(k1, 0), gb(k2, 0);
        double gp = -(ha + hb);
        for (size_t i = 0; i < k1; ++i)
          for (size_t j = 0; j < k2; ++j) {
            double gc = gm[i * k2 + j];
            gp += gc * m.a[w][i] * m.b[w][j];
            ga[i] += gc * m.pw[w] * m.b[w][j];
            gb[j] += gc * m.pw[w] * m.a[w][i];
          }
        for (size_t i = 0; i < k1; ++i)
          ga[i] += m.pw[w] * (std::log(std::max(m.a[w][i], 1e-300)) + 1);
        for (size_t j = 0; j < k2; ++j)
          gb[j] += m.pw[w] * (std::log(std::max(m.b[w][j], 1e-300)) + 1);
        g[w] = gp;
        double sa = 0, sb = 0;
        for (size_t i = 0; i < k1; ++i) sa += m.a[w][i] * ga[i];
        for (size_t j = 0; j < k2; ++j) sb += m.b[w][j] * gb[j];
        for (size_t i = 0; i < k1; ++i) g[nw + w * k1 + i] = m.a[w][i] * (ga[i] - sa);
        for (size_t j = 0; j < k2; ++j) g[nw + nw * k1 + w * k2 + j] = m.b[w][j] * (gb[j] - sb);
      }
      double sp = 0;
      for (size_t w = 0; w < nw; ++w) sp += m.pw[w] * g[w];
      for (size_t w = 0; w < nw; ++w) g[w] = m.pw[w] * (g[w] - sp);
      ++step;
      double lr = 0.05 * std::pow(0.02, static_cast<double>(it) / iters);
      for (size_t i = 0; i < np; ++i) {
        m1[i] = beta1 * m1[i] + (1 - beta1) * g[i];
        m2[i] = beta2 * m2[i] + (1 - beta2) * g[i] * g[i];
        double mh = m1[i] / (1 - std::pow(beta1, static_cast<double>(step)));
        double vh = m2[i] / (1 - std::pow(beta2, static_cast<double>(step)));
        th[i] -= lr * mh / (std::sqrt(vh) + eps);
      }
    }
  }
  unpack();
  return m;
}

bool better(const Candidate& a, const Candidate& b) {
  bool fa = a.fit <= kFitTolerance, fb = b.fit <= kFitTolerance;
  if (fa != fb) return fa;
  if (fa) return a.estimate < b.estimate - 1e-12;
  return a.fit < b.fit;
}

}  // namespace

WynerResult wyner_common_information(const JointTable& q, int wmax, unsigned threads) {
  if (wmax < 1) throw InputError("wmax must be at least 1");
  if (q.axes().size() != 2) throw InputError("Wyner common information needs a table over (Z1,Z2)");
  const size_t k1 = q.axes()[0].size(), k2 = q.axes()[1].size();
  std::vector<double> qd;
  for (const auto& e : q.entries()) qd.push_back(to_double(e));
  std::vector<double> q1(k1, 0), q2(k2, 0);
  for (size_t i = 0; i < k1; ++i)
    for (size_t j = 0; j < k2; ++j) {
      q1[i] += qd[i * k2 + j];
      q2[j] += qd[i * k2 + j];
    }

  std::vector<Candidate> cands;
  // Closed-form candidates: constant W, W = Z1, W = Z2.
  cands.push_back(score({{1.0}, {q1}, {q2}}, qd, k1, k2));
  auto conditional_on = [&](bool first) {
    size_t n = first ? k1 : k2, other = first ? k2 : k1;
    Mixture m;
    for (size_t w = 0; w < n; ++w) {
      double pw = first ? q1[w] : q2[w];
      std::vector<double> point(n, 0), cond(other, 0);
      point[w] = 1;
      for (size_t o = 0; o < other; ++o)
        cond[o] = pw > 0 ? (first ? qd[w * k2 + o] : qd[o * k2 + w]) / pw : 1.0 / other;
      m.pw.push_back(pw);
      m.a.push_back(first ? point : cond);
      m.b.push_back(first ? cond : point);
    }
    return m;
  };
  if (static_cast<int>(k1) <= wmax) cands.push_back(score(conditional_on(true), qd, k1, k2));
  if (static_cast<int>(k2) <= wmax) cands.push_back(score(conditional_on(false), qd, k1, k2));

  JointTable t = q;
  const double mi =
      conditional_mutual_information(t, {t.axes()[0].name}, {t.axes()[1].name}, {});
  // C >= I always, so a closed-form candidate that reaches I is optimal.
  bool settled = false;
  for (const auto& c : cands) settled |= c.fit <= kFitTolerance && c.estimate <= mi + 1e-12;

  CounterRng rng(0xc0ffee);
  for (int nw = 2; nw <= wmax && !settled; ++nw) {
    std::vector<Candidate> runs(kRestarts);
    parallel_for(kRestarts, threads, [&](size_t k) {
      auto mix = descend(qd, k1, k2, static_cast<size_t>(nw), rng,
                         static_cast<uint64_t>(nw) * 1000 + k);
      runs[k] = score(mix, qd, k1, k2);
    });
    cands.insert(cands.end(), runs.begin(), runs.end());
  }
  size_t best = 0;
  for (size_t i = 1; i < cands.size(); ++i)
    if (better(cands[i], cands[best])) best = i;

  WynerResult r;
  r.mutual_information = mi;
  r.estimate = cands[best].estimate;
  r.fit_error = cands[best].fit;
  r.w_size = cands[best].mix.pw.size();
  r.pw = cands[best].mix.pw;
  r.z1_given_w = cands[best].mix.a;
  r.z2_given_w = cands[best].mix.b;
  r.matched = r.fit_error <= kFitTolerance;
  if (!r.matched) r.estimate = std::numeric_limits<double>::infinity();
  r.sampleable = r.matched && r.estimate - r.mutual_information < 1e-3;
  return r;
}

}  // namespace sfc
