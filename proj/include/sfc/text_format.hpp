#pragma once

#include <string>
#include <vector>

#include "sfc/rational.hpp"

namespace sfc {

// Line-oriented tokenizer shared by the .sfc/.sfa/.sfp readers. Blank lines
// and '#' comments are skipped; line numbers refer to the original text.
class LineReader {
 public:
  struct Line {
    size_t number = 0;
    std::vector<std::string> tokens;
  };

  explicit LineReader(const std::string& text);

  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const;
  Line next();
  // Next line must start with `keyword` and have exactly `count` tokens in total.
  Line expect(const std::string& keyword, size_t count);
  size_t expect_size(const std::string& keyword);
  // Reads a row of `width` rationals. A lone '-' marks a free row when allowed;
  // *free is then set and the row returned empty.
  std::vector<Rational> read_row(size_t width, bool allow_free, bool* free);
  size_t line_number() const;

 private:
  std::vector<Line> lines_;
  size_t pos_ = 0;
};

size_t parse_size(const std::string& tok, size_t line);
std::string render_row(const std::vector<Rational>& row);

}  // namespace sfc
