#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sfc/aux_chain.hpp"
#include "sfc/problem.hpp"

namespace sfc {

struct CutSet {
  double i_x_z2_given_y = 0;
  double i_y_z1_given_x = 0;
  double i_z1_z2_given_xy = 0;
};

CutSet cutset_bounds(const Problem& p);

struct SumRate {
  double bits = 0;
  // Whether privacy against both users is achievable; empty for two-output
  // problems, where no decision procedure is available.
  std::optional<bool> feasible;
  CutSet cutset;
};

SumRate sum_rate_both_privacy(const Problem& p, double r0);

// Lower bounds on the rates of an r-round protocol realizing the chain.
// r0_plus_opening_lower bounds R0 plus the rate of the party that opens.
struct RateReport {
  Mode mode = Mode::both;
  Party starter = Party::alice;
  double r12_lower = 0;
  double r21_lower = 0;
  double r0_plus_opening_lower = 0;
  double sum_lower = 0;
  // Mode both only: the chain quantities coincide with the cut-set values.
  bool simplifications_hold = true;
  ChainReport chain;
};

RateReport rate_region_corner(const Problem& p, const AuxChain& c, Mode mode);

struct WynerResult {
  double estimate = 0;       // best I(Z1 Z2; W) found, an upper-bound estimate
  double mutual_information = 0;
  bool sampleable = false;   // estimate - I < 1e-3
  size_t w_size = 0;
  std::vector<double> pw;                     // p(w)
  std::vector<std::vector<double>> z1_given_w, z2_given_w;
  double fit_error = 0;      // L1 distance of the witness mixture to q
  bool matched = false;      // some witness with |W| <= wmax fits q; otherwise estimate is +inf
};

// q must have exactly two axes (Z1, Z2).
WynerResult wyner_common_information(const JointTable& q, int wmax, unsigned threads = 1);

struct ErasureRates {
  Rational p;
  std::optional<double> r_ab;  // empty when privacy against both is infeasible
  double r_a = 0;
  double r_b = 0;
  double r_noprivacy = 0;
};

ErasureRates erasure_example_rates(const Rational& p);
// Objective of the constrained no-privacy minimization at split p1.
double erasure_noprivacy_objective(double p, double p1);

}  // namespace sfc
