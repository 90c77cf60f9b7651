#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sfc/problem.hpp"

namespace sfc {

// One-round protocol for a one-output problem: Alice sends U ~ p(U|X), Bob
// outputs Z ~ p(Z|U,Y).
struct Protocol {
  Axis u;
  CondTable encoder;  // from X to U
  CondTable decoder;  // from (U, Y) to Z
  std::optional<std::vector<std::string>> code;

  size_t nu() const { return u.size(); }
};

struct VerifyReport {
  Rational correctness_tv;  // exact; zero means correct
  bool private_alice = false;  // U - X - (Y, Z)
  bool private_bob = false;    // U - (Y, Z) - X
  bool passed = false;         // correctness plus the mode's privacy chains
  std::optional<Rational> expected_length;
  double h_u = 0;
  std::optional<double> h_chi;  // mode both: chromatic entropy of the reduced graph
  std::optional<double> h_w;    // mode bob: entropy of the common part
};

// Builds a protocol from explicit tables. Rows of zero-probability cells are
// recomputed as free; throws InputError on shape or row-sum errors.
Protocol make_protocol(const Problem& p, size_t nu, std::vector<std::vector<Rational>> enc,
                       std::vector<std::vector<Rational>> dec);

Protocol synthesize(const Problem& p, Mode mode);
// Bob-private encoder for the erasure example: U in {u1,u2,u3}.
Protocol erasure_bob_protocol(const Rational& p);

JointTable induced_joint(const Protocol& pr, const Problem& p);  // X, Y, U, Z
std::vector<Rational> message_distribution(const Protocol& pr, const Problem& p);
VerifyReport verify_protocol(const Protocol& pr, const Problem& p, Mode mode);

bool is_prefix_free(const std::vector<std::string>& code);
std::vector<std::string> huffman(const std::vector<Rational>& dist);
Protocol huffman_code(const Protocol& pr, const Problem& p);
Rational expected_length(const Protocol& pr, const Problem& p);

Protocol parse_protocol(const std::string& text, const Problem& p);
std::string render_protocol(const Protocol& pr);

struct SimulationReport {
  uint64_t n = 0;
  uint64_t seed = 0;
  JointTable target;                // exact induced joint over (X, Y, U, Z)
  std::vector<uint64_t> counts;     // per cell of `target`
  double tv = 0;                    // sum |empirical - target|
  double mean_length = 0;           // code length if attached, else ceil(log2 |U|)
};

SimulationReport simulate(const Protocol& pr, const Problem& p, uint64_t n, uint64_t seed,
                          unsigned threads = 1);
std::string render_simulation_csv(const SimulationReport& r);

}  // namespace sfc
