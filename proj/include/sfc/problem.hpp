#pragma once

#include <string>
#include <vector>

#include "sfc/joint_table.hpp"

namespace sfc {

enum class Mode { both, alice, bob };
Mode parse_mode(const std::string& s);
std::string to_string(Mode m);

// A randomized function (q_XY, q_{Z1 Z2|XY}). One-output problems keep Z1 as
// a singleton axis so that every evaluator sees the same shape.
struct Problem {
  Axis x, y, z1, z2;
  bool two_output = false;
  JointTable qxy;     // axes X, Y
  CondTable channel;  // from (X, Y) to (Z1, Z2)

  size_t nx() const { return x.size(); }
  size_t ny() const { return y.size(); }
  size_t nz() const { return z2.size(); }
  bool supported(size_t xi, size_t yi) const { return sgn(pxy(xi, yi)) > 0; }
  const Rational& pxy(size_t xi, size_t yi) const { return qxy.entries()[xi * ny() + yi]; }
  const std::vector<Rational>& row(size_t xi, size_t yi) const {
    return channel.rows[xi * ny() + yi];
  }
  // q(z2|x,y) of a one-output problem.
  const Rational& q(size_t zi, size_t xi, size_t yi) const { return row(xi, yi)[zi]; }
  bool full_support() const;
  std::vector<Rational> px() const;

  // Joint over (X, Y, Z1, Z2).
  JointTable target_joint() const;
  // Joint over (X, Y, Z) for one-output problems.
  JointTable target_joint_xyz() const;

  bool operator==(const Problem& o) const;
};

// Builds a problem from q_XY and channel rows indexed x*|Y|+y. Rows of
// unreachable (x,y) are replaced by the uniform row. Throws InputError.
Problem make_problem(Axis x, Axis y, Axis z1, Axis z2, bool two_output,
                     std::vector<Rational> qxy, std::vector<std::vector<Rational>> rows);
Problem make_one_output(Axis x, Axis y, Axis z, std::vector<Rational> qxy,
                        std::vector<std::vector<Rational>> rows);

void require_one_output(const Problem& p, const char* what);

Problem parse_problem(const std::string& text);
std::string render_problem(const Problem& p);

Problem erasure_problem(const Rational& p);
Problem index_and_problem(int m);
Problem select_problem(int m);
Problem and_full_support_problem();
// name in {erasure, index-and, select, and-full-support}.
Problem builtin_problem(const std::string& name, const std::vector<std::string>& params);

}  // namespace sfc
