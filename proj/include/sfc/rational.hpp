#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sfc {

// Exact rational number, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;

// Bad user input: unknown axis, malformed file, out-of-range parameter.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(size_t line, const std::string& msg)
      : InputError("line " + std::to_string(line) + ": " + msg), line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

// An operation was called on an input that violates its precondition.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A brute-force guard was exceeded.
class SizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Accepts "a", "a/b", "-a/b" and plain decimals such as "0.25".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
double to_double(const Rational& r);

Rational sum(const std::vector<Rational>& v);

// Shortest decimal that prints a double with 9 significant digits.
std::string format_double(double v);

}  // namespace sfc
