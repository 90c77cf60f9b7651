#include "sfc/rates.hpp"

#include <algorithm>
#include <cmath>

#include "sfc/feasibility.hpp"

namespace sfc {

CutSet cutset_bounds(const Problem& p) {
  JointTable t = p.target_joint();
  CutSet c;
  c.i_x_z2_given_y = conditional_mutual_information(t, {"X"}, {"Z2"}, {"Y"});
  c.i_y_z1_given_x = conditional_mutual_information(t, {"Y"}, {"Z1"}, {"X"});
  c.i_z1_z2_given_xy = conditional_mutual_information(t, {"Z1"}, {"Z2"}, {"X", "Y"});
  return c;
}

SumRate sum_rate_both_privacy(const Problem& p, double r0) {
  if (!(r0 >= 0)) throw InputError("common randomness rate must be non-negative");
  SumRate s;
  s.cutset = cutset_bounds(p);
  if (!p.two_output) s.feasible = decide_both_privacy(p).verdict == Verdict::feasible;
  s.bits = s.cutset.i_x_z2_given_y + s.cutset.i_y_z1_given_x +
           std::max(s.cutset.i_z1_z2_given_xy - r0, 0.0);
  return s;
}

RateReport rate_region_corner(const Problem& p, const AuxChain& c, Mode mode) {
  RateReport rep;
  rep.mode = mode;
  rep.starter = c.starter;
  rep.chain = verify_aux_chain(p, c, mode);
  if (!rep.chain.passed())
    throw PreconditionError("auxiliary chain fails " + rep.chain.first_failure());
  const ChainReport& ch = rep.chain;
  CutSet cut = cutset_bounds(p);
  double a = 0, b = 0, c1 = 0, call = 0;
  switch (mode) {
    case Mode::both:
      a = cut.i_x_z2_given_y;
      b = cut.i_y_z1_given_x;
      c1 = ch.i_u1_z1z2_given_xy;
      call = cut.i_z1_z2_given_xy;
      rep.simplifications_hold = std::abs(ch.i_x_u_given_y - a) <= 1e-9 &&
                                 std::abs(ch.i_y_u_given_x - b) <= 1e-9 &&
                                 std::abs(ch.i_u_z1z2_given_xy - call) <= 1e-9;
      break;
    case Mode::alice:
      a = ch.i_x_u_given_y;
      b = cut.i_y_z1_given_x;
      c1 = ch.i_u1_z1_given_xy;
      call = ch.i_u_z1_given_xy;
      break;
    case Mode::bob:
      a = cut.i_x_z2_given_y;
      b = ch.i_y_u_given_x;
      c1 = ch.i_u1_z2_given_xy;
      call = ch.i_u_z2_given_xy;
      break;
  }
  rep.r12_lower = a;
  rep.r21_lower = b;
  rep.r0_plus_opening_lower = (c.starter == Party::alice ? a : b) + c1;
  rep.sum_lower = a + b + call;
  return rep;
}

double erasure_noprivacy_objective(double p, double p1) {
  double hp = binary_entropy(p);
  if (p1 >= 1) return 0.5 * hp;
  double p2 = std::clamp(1 - (1 - p) / (1 - p1), 0.0, 1.0);
  return 0.5 * (hp + (1 - p1) * (1 - binary_entropy(p2)));
}

namespace {

double minimize_noprivacy(double p) {
  constexpr double step = 1e-4;
  auto f = [&](double p1) { return erasure_noprivacy_objective(p, p1); };
  double best_x = 0, best = f(0);
  size_t n = static_cast<size_t>(std::ceil(p / step));
  for (size_t i = 1; i <= n; ++i) {
    double x = std::min(p, static_cast<double>(i) * step);
    double v = f(x);
    if (v < best) {
      best = v;
      best_x = x;
    }
  }
  double lo = std::max(0.0, best_x - step), hi = std::min(p, best_x + step);
  const double g = (std::sqrt(5.0) - 1) / 2;
  double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > 1e-10) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - g * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + g * (hi - lo);
      fd = f(d);
    }
  }
  return std::min({best, fc, fd});
}

}  // namespace

ErasureRates erasure_example_rates(const Rational& p) {
  if (p < 0 || p > 1) throw InputError("erasure parameter must lie in [0,1]");
  ErasureRates r;
  r.p = p;
  double pd = to_double(p);
  if (p == 0) r.r_ab = 0.5;
  if (p == 1) r.r_ab = 0.0;
  r.r_a = p < 1 ? 0.5 : 0.0;
  r.r_b = 0.5 * (binary_entropy(pd) + (1 - pd));
  r.r_noprivacy = minimize_noprivacy(pd);
  return r;
}

}  // namespace sfc
