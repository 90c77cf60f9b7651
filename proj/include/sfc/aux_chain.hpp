#pragma once

#include <string>
#include <vector>

#include "sfc/problem.hpp"

namespace sfc {

enum class Party { alice, bob };

// r-round auxiliary chain. Round i (1-based) is sent by the starter when i is
// odd and by the other party when i is even. Row order of round i: own input
// outermost, then u_1..u_{i-1} with u_1 most significant.
struct AuxChain {
  Party starter = Party::alice;
  std::vector<CondTable> rounds;  // p(u_i | own, u_<i)
  CondTable dec1;                 // p(z1 | x, u_1..u_r)
  CondTable dec2;                 // p(z2 | y, u_1..u_r)

  size_t r() const { return rounds.size(); }
  size_t message_size(size_t i) const { return rounds[i].to[0].size(); }
  Party sender(size_t i) const {
    bool first = i % 2 == 0;
    return first == (starter == Party::alice) ? Party::alice : Party::bob;
  }
};

AuxChain parse_aux_chain(const std::string& text, const Problem& p);
std::string render_aux_chain(const AuxChain& c);

// Builds a chain from plain row tables; free rows ('-') are marked unreachable.
AuxChain make_aux_chain(const Problem& p, Party starter, const std::vector<size_t>& sizes,
                        const std::vector<std::vector<std::vector<Rational>>>& round_rows,
                        const std::vector<std::vector<Rational>>& dec1_rows,
                        const std::vector<std::vector<Rational>>& dec2_rows);

struct ChainReport {
  bool alternation = false;      // rounds follow U_i - (U_<i, own) - other
  size_t failing_round = 0;      // 1-based, 0 when alternation holds
  bool decodable_alice = false;  // Z1 - (U, X) - (Y, Z2)
  bool decodable_bob = false;    // Z2 - (U, Y) - (X, Z1)
  bool private_alice = false;    // U - (X, Z1) - (Y, Z2)
  bool private_bob = false;      // U - (Y, Z2) - (X, Z1)
  bool correct = false;          // (X,Y,Z1,Z2) marginal equals the target exactly

  double i_x_u_given_y = 0;
  double i_y_u_given_x = 0;
  double i_u_z1z2_given_xy = 0;
  double i_u1_z1z2_given_xy = 0;
  double i_u_z1_given_xy = 0;
  double i_u1_z1_given_xy = 0;
  double i_u_z2_given_xy = 0;
  double i_u1_z2_given_xy = 0;
  double i_x_y_given_u = 0;

  Mode mode = Mode::both;
  Party starter = Party::alice;
  JointTable joint;  // X, Y, U1..Ur, Z1, Z2

  bool passed() const;
  // Name of the first failing gated condition, empty when all pass.
  std::string first_failure() const;
};

constexpr double kMaxDenseCells = 1e7;

ChainReport verify_aux_chain(const Problem& p, const AuxChain& c, Mode mode);

}  // namespace sfc
