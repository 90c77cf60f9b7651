#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sfc/joint_table.hpp"
#include "sfc/problem.hpp"

using namespace sfc;

namespace {

JointTable vec(std::vector<Rational> p) { return JointTable({make_axis("A", p.size())}, p); }

JointTable grid2(std::vector<Rational> p, size_t na, size_t nb) {
  return JointTable({make_axis("A", na), make_axis("B", nb)}, p);
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK(parse_rational(".5") == Rational(1, 2));
  CHECK(parse_rational("010/08") == Rational(5, 4));
  CHECK(to_string(parse_rational("4/8")) == "1/2");
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("abc"), InputError);
  CHECK_THROWS_AS(parse_rational("1//2"), InputError);
  CHECK_THROWS_AS(parse_rational(""), InputError);
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(0.8112781244591328) == "0.811278124");
}

TEST_CASE("table construction validates") {
  CHECK_THROWS_AS(vec({Rational(1, 2), Rational(1, 3)}), InputError);
  CHECK_THROWS_AS(vec({Rational(3, 2), Rational(-1, 2)}), InputError);
  CHECK_THROWS_AS(JointTable({make_axis("A", 2), make_axis("A", 1)},
                             {Rational(1, 2), Rational(1, 2)}),
                  InputError);
  CHECK_THROWS_AS(JointTable({make_axis("A", 3)}, {Rational(1, 2), Rational(1, 2)}), InputError);
}

TEST_CASE("marginalize") {
  auto t = grid2({Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)}, 2, 2);
  auto m = marginalize(t, {"A"});
  CHECK(m.entries() == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK(marginalize(t, {"A", "B"}) == t);
  CHECK_THROWS_AS(marginalize(t, {"C"}), InputError);

  auto e = erasure_problem(0).target_joint_xyz();
  auto px = marginalize(e, {"X"});
  CHECK(px.entries() == std::vector<Rational>{Rational(1, 2), Rational(1, 4), Rational(1, 4)});
}

TEST_CASE("entropy values") {
  CHECK(entropy(vec({Rational(1, 2), Rational(1, 2)})) == doctest::Approx(1.0).epsilon(1e-15));
  double h = entropy(vec({Rational(3, 4), Rational(1, 4)}));
  CHECK(std::abs(h - (2 - 0.75 * std::log2(3.0))) < 1e-12);
  CHECK(std::abs(h - 0.8112781) < 1e-7);
  CHECK(entropy(vec({Rational(1), Rational(0)})) == 0.0);
}

TEST_CASE("mutual information values") {
  auto prod = grid2({Rational(1, 8), Rational(3, 8), Rational(1, 8), Rational(3, 8)}, 2, 2);
  CHECK(std::abs(conditional_mutual_information(prod, {"A"}, {"B"}, {})) < 1e-12);
  auto same = grid2({Rational(1, 2), Rational(0), Rational(0), Rational(1, 2)}, 2, 2);
  CHECK(std::abs(conditional_mutual_information(same, {"A"}, {"B"}, {}) - 1.0) < 1e-12);
  CHECK_THROWS_AS(conditional_mutual_information(same, {"A"}, {"A"}, {}), InputError);

  auto e = erasure_problem(0).target_joint_xyz();
  CHECK(std::abs(conditional_mutual_information(e, {"X"}, {"Z"}, {"Y"}) - 0.5) < 1e-12);
}

TEST_CASE("markov examples") {
  std::vector<Rational> p;
  // a, b, c independent binaries with biases 1/3, 1/4, 1/5
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        p.push_back((a ? Rational(1, 3) : Rational(2, 3)) * (b ? Rational(1, 4) : Rational(3, 4)) *
                    (c ? Rational(1, 5) : Rational(4, 5)));
  JointTable t({make_axis("A", 2), make_axis("B", 2), make_axis("C", 2)}, p);
  CHECK(is_markov(t, {"A"}, {"B"}, {"C"}));

  // a = c uniform, b independent
  std::vector<Rational> q(8, 0);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) q[a * 4 + b * 2 + a] = Rational(1, 4);
  JointTable u({make_axis("A", 2), make_axis("B", 2), make_axis("C", 2)}, q);
  CHECK_FALSE(is_markov(u, {"A"}, {"B"}, {"C"}));
  CHECK(is_markov(u, {"B"}, {"A"}, {"C"}));
}

TEST_CASE("total variation") {
  auto a = vec({Rational(1, 2), Rational(1, 2)});
  auto b = vec({Rational(3, 4), Rational(1, 4)});
  CHECK(total_variation(a, a) == 0);
  CHECK(total_variation(a, b) == Rational(1, 2));
  CHECK(total_variation(vec({Rational(1), Rational(0)}), vec({Rational(0), Rational(1)})) == 2);
  CHECK_THROWS_AS(total_variation(a, vec({Rational(1)})), InputError);
}

TEST_CASE("property: information measures against brute-force oracles") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<size_t> dims;
    for (int i = 0; i < 4; ++i) dims.push_back(oracle::uniform_int(rng, 1, 3));
    // Denominator 6 makes exact conditional independence reasonably common.
    auto t = oracle::random_table(rng, dims, trial % 2 ? 6 : 24);
    std::vector<std::string> n = {"A0", "A1", "A2", "A3"};

    CHECK(entropy(t) >= 0);
    double hab = entropy(marginalize(t, {"A0", "A1"}));
    double ha = entropy(marginalize(t, {"A0"}));
    // H(B|A) by the conditional definition, computed from exact marginals.
    auto mab = oracle::marginal(t, {0, 1});
    auto ma = oracle::marginal(t, {0});
    double hba = 0;
    for (const auto& [k, v] : mab) {
      if (v == 0) continue;
      Rational cond = v / ma.at({k[0]});
      hba -= v.get_d() * std::log2(cond.get_d());
    }
    CHECK(std::abs(hab - (ha + hba)) < 1e-12);

    double mine = conditional_mutual_information(t, {n[0]}, {n[2]}, {n[1], n[3]});
    double ref = oracle::cmi(t, {0}, {2}, {1, 3});
    CHECK(mine >= 0);
    CHECK(std::abs(mine - std::max(0.0, ref)) < 1e-12);

    bool mk = is_markov(t, {n[0]}, {n[1]}, {n[2]});
    CHECK(mk == oracle::markov(t, {0}, {1}, {2}));
    double i = conditional_mutual_information(t, {n[0]}, {n[2]}, {n[1]});
    CHECK(mk == (i < 1e-12));

    auto two = marginalize(marginalize(t, {"A0", "A2", "A3"}), {"A0", "A3"});
    CHECK(two == marginalize(t, {"A0", "A3"}));
  }
}
