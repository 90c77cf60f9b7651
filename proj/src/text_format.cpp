#include "sfc/text_format.hpp"

#include <sstream>

namespace sfc {

LineReader::LineReader(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    Line line{n, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines_.push_back(std::move(line));
  }
}

const LineReader::Line& LineReader::peek() const {
  if (done()) throw ParseError(line_number(), "unexpected end of input");
  return lines_[pos_];
}

LineReader::Line LineReader::next() {
  const Line& l = peek();
  ++pos_;
  return l;
}

LineReader::Line LineReader::expect(const std::string& keyword, size_t count) {
  Line l = next();
  if (l.tokens[0] != keyword)
    throw ParseError(l.number, "expected '" + keyword + "', found '" + l.tokens[0] + "'");
  if (l.tokens.size() != count)
    throw ParseError(l.number, "'" + keyword + "' expects " + std::to_string(count - 1) +
                                   " argument(s)");
  return l;
}

size_t LineReader::expect_size(const std::string& keyword) {
  Line l = expect(keyword, 2);
  return parse_size(l.tokens[1], l.number);
}

std::vector<Rational> LineReader::read_row(size_t width, bool allow_free, bool* free) {
  Line l = next();
  if (free) *free = false;
  if (l.tokens.size() == 1 && l.tokens[0] == "-") {
    if (!allow_free) throw ParseError(l.number, "'-' row not allowed here");
    if (free) *free = true;
    return {};
  }
  if (l.tokens.size() != width)
    throw ParseError(l.number, "expected " + std::to_string(width) + " values, found " +
                                   std::to_string(l.tokens.size()));
  std::vector<Rational> row;
  for (const auto& t : l.tokens) {
    try {
      row.push_back(parse_rational(t));
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(l.number, e.what());
    }
    if (row.back() < 0) throw ParseError(l.number, "negative probability " + t);
  }
  return row;
}

size_t LineReader::line_number() const {
  if (pos_ < lines_.size()) return lines_[pos_].number;
  return lines_.empty() ? 0 : lines_.back().number;
}

size_t parse_size(const std::string& tok, size_t line) {
  size_t v = 0;
  if (tok.empty() || tok.size() > 9) throw ParseError(line, "bad size '" + tok + "'");
  for (char c : tok) {
    if (c < '0' || c > '9') throw ParseError(line, "bad size '" + tok + "'");
    v = v * 10 + static_cast<size_t>(c - '0');
  }
  if (v == 0) throw ParseError(line, "size must be positive");
  return v;
}

std::string render_row(const std::vector<Rational>& row) {
  std::string s;
  for (size_t i = 0; i < row.size(); ++i) {
    if (i) s += ' ';
    s += to_string(row[i]);
  }
  return s;
}

}  // namespace sfc
