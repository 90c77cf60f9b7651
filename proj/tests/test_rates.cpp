#include <doctest.h>

#include <cmath>

#include "builders.hpp"
#include "oracles.hpp"
#include "sfc/feasibility.hpp"
#include "sfc/protocol.hpp"
#include "sfc/rates.hpp"

using namespace sfc;

namespace {

// One-round chain equivalent to a one-round protocol.
AuxChain chain_of(const Problem& p, const Protocol& pr) {
  build::Rows r1 = pr.encoder.rows, d1, d2;
  const size_t nu = pr.nu();
  for (size_t k = 0; k < p.nx() * nu; ++k) d1.push_back({Rational(1)});
  for (size_t y = 0; y < p.ny(); ++y)
    for (size_t u = 0; u < nu; ++u) d2.push_back(pr.decoder.rows[u * p.ny() + y]);
  return make_aux_chain(p, Party::alice, {nu}, {r1}, d1, d2);
}

JointTable pair_table(std::vector<Rational> e, size_t a, size_t b) {
  return JointTable({make_axis("Z1", a), make_axis("Z2", b)}, e);
}

// Two-output problem with a single input pair and the given output joint.
Problem sampling_problem(const std::vector<Rational>& q, size_t a, size_t b) {
  return make_problem(make_axis("X", 1, "x"), make_axis("Y", 1, "y"), make_axis("Z1", a),
                      make_axis("Z2", b), true, {Rational(1)}, {q});
}

double noprivacy_oracle(double p) {
  double best = 1e9;
  for (int k = 0; k <= 100000; ++k) {
    double p1 = p * k / 100000.0;
    double v;
    if (p1 >= 1) {
      v = oracle::h2(p) / 2;
    } else {
      double p2 = 1 - (1 - p) / (1 - p1);
      v = 0.5 * (oracle::h2(p) + (1 - p1) * (1 - oracle::h2(p2)));
    }
    best = std::min(best, v);
  }
  return best;
}

}  // namespace

TEST_CASE("cut-set bounds") {
  for (auto p : {Rational(0), Rational(1, 4), Rational(1, 2), Rational(1)}) {
    auto c = cutset_bounds(erasure_problem(p));
    CHECK(std::abs(c.i_x_z2_given_y - (1 - p.get_d()) / 2) < 1e-12);
    CHECK(c.i_y_z1_given_x == 0.0);
    CHECK(c.i_z1_z2_given_xy == 0.0);
  }
  auto ia = cutset_bounds(index_and_problem(2));
  CHECK(std::abs(ia.i_x_z2_given_y - 1.5) < 1e-12);
  CHECK(std::abs(cutset_bounds(index_and_problem(4)).i_x_z2_given_y - 2.5) < 1e-12);
}

TEST_CASE("sum rate with privacy against both") {
  auto s = sum_rate_both_privacy(erasure_problem(0), 0);
  CHECK(std::abs(s.bits - 0.5) < 1e-12);
  REQUIRE(s.feasible.has_value());
  CHECK(*s.feasible);
  auto bad = sum_rate_both_privacy(erasure_problem(Rational(1, 2)), 0);
  REQUIRE(bad.feasible.has_value());
  CHECK_FALSE(*bad.feasible);
  CHECK_THROWS_AS(sum_rate_both_privacy(erasure_problem(0), -0.1), InputError);

  // deterministic two-output function: common randomness does not help
  auto ia = index_and_problem(2);
  double base = sum_rate_both_privacy(ia, 0).bits;
  for (double r0 : {0.5, 1.0, 10.0}) CHECK(sum_rate_both_privacy(ia, r0).bits == base);

  // correlated randomized outputs: non-increasing in r0, flat past I(Z1;Z2|XY)
  auto q = sampling_problem({Rational(3, 8), Rational(1, 8), Rational(1, 8), Rational(3, 8)}, 2, 2);
  double cmi = cutset_bounds(q).i_z1_z2_given_xy;
  CHECK(cmi > 0.1);
  double prev = 1e9;
  for (int k = 0; k <= 20; ++k) {
    double r0 = cmi * k / 10.0;
    double v = sum_rate_both_privacy(q, r0).bits;
    CHECK(v <= prev + 1e-15);
    if (r0 >= cmi) CHECK(std::abs(v - sum_rate_both_privacy(q, 2 * cmi + 1).bits) < 1e-15);
    prev = v;
  }
  CHECK(std::abs(sum_rate_both_privacy(q, 0).bits - cmi) < 1e-12);
}

TEST_CASE("rate corners") {
  auto ia = index_and_problem(2);
  auto r = rate_region_corner(ia, build::index_and_chain(ia, 2), Mode::bob);
  CHECK(std::abs(r.sum_lower - 2.5) < 1e-12);
  CHECK(std::abs(r.r12_lower - 1.5) < 1e-12);
  CHECK(std::abs(r.r21_lower - 1.0) < 1e-12);

  auto sel = select_problem(2);
  auto s = rate_region_corner(sel, build::output_as_message_chain(sel), Mode::bob);
  CHECK(std::abs(s.sum_lower - 2.0) < 1e-12);
  CHECK(std::abs(s.r12_lower - 1.0) < 1e-12);

  auto e = erasure_problem(0);
  auto pr = synthesize(e, Mode::both);
  auto b = rate_region_corner(e, chain_of(e, pr), Mode::both);
  CHECK(b.simplifications_hold);
  CHECK(std::abs(b.r12_lower - cutset_bounds(e).i_x_z2_given_y) < 1e-12);

  auto half = erasure_problem(Rational(1, 2));
  CHECK_THROWS_AS(rate_region_corner(half, build::reveal_input_chain(half), Mode::both),
                  PreconditionError);
}

TEST_CASE("property: cut-set bound below the Bob-privacy corner") {
  oracle::Rng rng(202);
  for (int t = 0; t < 40; ++t) {
    auto p = build::random_bob_feasible(rng);
    auto pr = synthesize(p, Mode::bob);
    auto r = rate_region_corner(p, chain_of(p, pr), Mode::bob);
    CHECK(cutset_bounds(p).i_x_z2_given_y <= r.r12_lower + 1e-9);
  }
}

TEST_CASE("Wyner common information") {
  auto ind = pair_table({Rational(1, 12), Rational(1, 6), Rational(1, 4), Rational(1, 12),
                         Rational(1, 6), Rational(1, 4)},
                        2, 3);
  auto a = wyner_common_information(ind, 2);
  CHECK(a.estimate <= 1e-6);
  CHECK(a.mutual_information < 1e-12);
  CHECK(a.sampleable);

  auto same = pair_table({Rational(1, 2), Rational(0), Rational(0), Rational(1, 2)}, 2, 2);
  auto b = wyner_common_information(same, 2);
  CHECK(std::abs(b.estimate - 1.0) < 1e-3);
  CHECK(std::abs(b.mutual_information - 1.0) < 1e-12);
  CHECK(b.sampleable);

  auto dsbs = pair_table({Rational(9, 20), Rational(1, 20), Rational(1, 20), Rational(9, 20)}, 2, 2);
  auto c = wyner_common_information(dsbs, 2);
  CHECK(std::abs(c.estimate - oracle::wyner_dsbs(0.1)) < 1e-3);
  CHECK(c.estimate >= c.mutual_information + 0.05);
  CHECK(std::abs(c.mutual_information - (1 - oracle::h2(0.1))) < 1e-12);
  CHECK_FALSE(c.sampleable);
  CHECK(c.fit_error < 1e-5);

  CHECK_THROWS_AS(wyner_common_information(dsbs, 0), InputError);

  // four equiprobable correlated cells need more than two witness values
  auto wide = marginalize(index_and_problem(2).target_joint(), {"Z1", "Z2"});
  auto d = wyner_common_information(wide, 2);
  CHECK_FALSE(d.matched);
  CHECK(std::isinf(d.estimate));
  CHECK_FALSE(d.sampleable);
  CHECK(c.matched);
}

TEST_CASE("property: Wyner estimate dominates mutual information") {
  oracle::Rng rng(303);
  for (int t = 0; t < 4; ++t) {
    auto q = pair_table(oracle::random_dist(rng, 4, 16), 2, 2);
    auto r = wyner_common_information(q, 2);
    CHECK(r.estimate >= r.mutual_information - 1e-9);
    CHECK(r.fit_error < 1e-5);
  }
}

TEST_CASE("erasure example endpoints") {
  auto z = erasure_example_rates(0);
  REQUIRE(z.r_ab.has_value());
  CHECK(*z.r_ab == 0.5);
  CHECK(z.r_a == 0.5);
  CHECK(std::abs(z.r_b - 0.5) < 1e-12);
  CHECK(std::abs(z.r_noprivacy - 0.5) < 1e-6);

  auto one = erasure_example_rates(1);
  REQUIRE(one.r_ab.has_value());
  CHECK(*one.r_ab == 0.0);
  CHECK(one.r_a == 0.0);
  CHECK(std::abs(one.r_b) < 1e-12);
  CHECK(std::abs(one.r_noprivacy) < 1e-6);

  auto h = erasure_example_rates(Rational(1, 2));
  CHECK_FALSE(h.r_ab.has_value());
  CHECK(h.r_a == 0.5);
  CHECK(std::abs(h.r_b - 0.75) < 1e-12);

  CHECK_THROWS_AS(erasure_example_rates(Rational(-1, 10)), InputError);
  CHECK_THROWS_AS(erasure_example_rates(Rational(11, 10)), InputError);
}

TEST_CASE("erasure example curves on a grid") {
  for (int k = 0; k <= 100; ++k) {
    Rational p(k, 100);
    p.canonicalize();
    double pd = p.get_d();
    auto r = erasure_example_rates(p);
    CHECK(std::abs(r.r_b - (oracle::h2(pd) + 1 - pd) / 2) < 1e-9);
    CHECK(r.r_a == (k < 100 ? 0.5 : 0.0));
    CHECK(r.r_ab.has_value() == (k == 0 || k == 100));
    // no-privacy rate never exceeds either private rate and stays above the cut-set bound
    CHECK(r.r_noprivacy <= std::min(r.r_a, r.r_b) + 1e-6);
    CHECK(r.r_noprivacy >= (1 - pd) / 2 - 1e-9);
    double ref = noprivacy_oracle(pd);
    CHECK(r.r_noprivacy <= ref + 1e-9);
    CHECK(r.r_noprivacy >= ref - 1e-6);
  }
  // For small p the Bob-private rate is above one half, the Alice-private rate.
  auto small = erasure_example_rates(Rational(1, 10));
  CHECK(small.r_b > small.r_a);
}
