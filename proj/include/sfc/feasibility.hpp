#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sfc/problem.hpp"

namespace sfc {

struct Partition {
  std::vector<std::vector<size_t>> blocks;  // sorted by smallest member
  std::vector<size_t> representatives;      // lowest index of each block
  std::vector<size_t> block_of;             // block index per symbol
};

struct AlphaClass {
  std::vector<size_t> outputs;   // Z_i^(y), ascending
  std::vector<Rational> alpha;   // over X, sums to 1
  std::vector<Rational> gamma;   // over `outputs`
};

struct AlphaSlice {
  size_t y = 0;
  std::vector<size_t> effective;  // Z^(y)
  std::vector<AlphaClass> classes;
  bool empty() const { return effective.empty(); }
  size_t k() const { return classes.size(); }
};

using AlphaDecomposition = std::vector<AlphaSlice>;

struct ViolatingCell {
  size_t x, x2, y, z;
};
struct KMismatch {
  size_t y, y2, k, k2;
};
struct AlphaMismatch {
  size_t y, y2, cls;  // class `cls` at y has no equal alpha vector at y2
};
struct MassMismatch {
  size_t y, y2, cls, x;
};

using Witness = std::variant<std::monostate, Partition, AlphaDecomposition, ViolatingCell,
                             KMismatch, AlphaMismatch, MassMismatch>;

enum class Verdict { feasible, infeasible, unsupported };
std::string to_string(Verdict v);

struct FeasibilityReport {
  Verdict verdict = Verdict::unsupported;
  Witness witness;
  std::string notes;
};

std::vector<std::pair<size_t, size_t>> similarity_pairs(const Problem& p);
Partition equivalence_partition(const Problem& p);
FeasibilityReport decide_both_privacy(const Problem& p);
// Privacy against Alice only is always achievable (Alice may learn nothing beyond her input).
FeasibilityReport decide_alice_privacy(const Problem& p);
FeasibilityReport decide_bob_privacy(const Problem& p);
FeasibilityReport decide(const Problem& p, Mode mode);

Problem reduce_problem(const Problem& p);

AlphaSlice alpha_decomposition(const Problem& p, size_t y);

struct CommonPart {
  size_t k = 0;
  JointTable joint;                  // axes X, Y, W, Z
  CondTable w_given_x;               // p(W|X)
  std::vector<std::vector<Rational>> alphas;  // per class, ordered as at the first y
  // class_at[y][i]: index, within the y-slice, of the class matched to W = i.
  std::vector<std::vector<size_t>> class_at;
  std::vector<std::vector<long>> w_of;  // w_of[y][z], -1 when z is not in Z^(y)
  AlphaDecomposition slices;
  double h_w = 0;
};

CommonPart build_common_part(const Problem& p);

// Human-readable rendering of a witness, using the problem's labels.
std::string describe_witness(const Problem& p, const Witness& w);

}  // namespace sfc
