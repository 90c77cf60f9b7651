#pragma once

#include <string>
#include <vector>

#include "sfc/rational.hpp"

namespace sfc {

struct Axis {
  std::string name;
  std::vector<std::string> labels;

  size_t size() const { return labels.size(); }
};

// Axis with labels "0".."n-1" (or prefix+"1".."n" when a prefix is given).
Axis make_axis(std::string name, size_t n, const std::string& prefix = "");

using AxisNames = std::vector<std::string>;

// Dense probability table. The first axis is the most significant index.
class JointTable {
 public:
  JointTable() = default;
  // Throws InputError if entries are negative, do not sum to 1, or the shape is off.
  JointTable(std::vector<Axis> axes, std::vector<Rational> entries);

  const std::vector<Axis>& axes() const { return axes_; }
  const std::vector<Rational>& entries() const { return entries_; }
  size_t cell_count() const { return entries_.size(); }
  size_t axis_index(const std::string& name) const;
  bool has_axis(const std::string& name) const;

  std::vector<size_t> unflatten(size_t cell) const;
  size_t flatten(const std::vector<size_t>& idx) const;
  const Rational& at(const std::vector<size_t>& idx) const { return entries_[flatten(idx)]; }

  bool operator==(const JointTable& o) const;

 private:
  std::vector<Axis> axes_;
  std::vector<Rational> entries_;
};

// Conditional table p(to | from). Rows are indexed by the flattened `from`
// cell, entries by the flattened `to` cell. Free rows have a zero-probability
// conditioning cell and carry no constraint.
struct CondTable {
  std::vector<Axis> from;
  std::vector<Axis> to;
  std::vector<std::vector<Rational>> rows;
  std::vector<bool> reachable;

  size_t from_size() const;
  size_t to_size() const;
  // Throws InputError naming the first reachable row whose sum is not 1.
  void validate() const;
};

std::vector<Rational> uniform_row(size_t n);

JointTable marginalize(const JointTable& t, const AxisNames& keep);
double entropy(const JointTable& t);
// I(A;B|C) in bits.
double conditional_mutual_information(const JointTable& t, const AxisNames& a,
                                      const AxisNames& b, const AxisNames& c);
// Exact test of A - B - C: p(a,b,c) p(b) = p(a,b) p(b,c) for all cells.
bool is_markov(const JointTable& t, const AxisNames& a, const AxisNames& b,
               const AxisNames& c);
Rational total_variation(const JointTable& p, const JointTable& q);

// Entropy of a probability vector, in bits.
double entropy_of(const std::vector<Rational>& p);
double entropy_of(const std::vector<double>& p);
double binary_entropy(double p);

}  // namespace sfc
