#include "sfc/problem.hpp"

#include <map>
#include <set>
#include <sstream>

#include "sfc/text_format.hpp"

namespace sfc {

Mode parse_mode(const std::string& s) {
  if (s == "both") return Mode::both;
  if (s == "alice") return Mode::alice;
  if (s == "bob") return Mode::bob;
  throw InputError("unknown mode '" + s + "' (expected both, alice or bob)");
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::both: return "both";
    case Mode::alice: return "alice";
    case Mode::bob: return "bob";
  }
  return "?";
}

bool Problem::full_support() const {
  for (const auto& e : qxy.entries())
    if (sgn(e) == 0) return false;
  return true;
}

std::vector<Rational> Problem::px() const {
  std::vector<Rational> out(nx(), 0);
  for (size_t xi = 0; xi < nx(); ++xi)
    for (size_t yi = 0; yi < ny(); ++yi) out[xi] += pxy(xi, yi);
  return out;
}

JointTable Problem::target_joint() const {
  size_t nzz = z1.size() * z2.size();
  std::vector<Rational> e(nx() * ny() * nzz, 0);
  for (size_t c = 0; c < nx() * ny(); ++c) {
    if (sgn(qxy.entries()[c]) == 0) continue;
    for (size_t z = 0; z < nzz; ++z) e[c * nzz + z] = qxy.entries()[c] * channel.rows[c][z];
  }
  Axis ax = x, ay = y, a1 = z1, a2 = z2;
  ax.name = "X";
  ay.name = "Y";
  a1.name = "Z1";
  a2.name = "Z2";
  return JointTable({ax, ay, a1, a2}, std::move(e));
}

JointTable Problem::target_joint_xyz() const {
  require_one_output(*this, "target_joint_xyz");
  std::vector<Rational> e(nx() * ny() * nz(), 0);
  for (size_t c = 0; c < nx() * ny(); ++c) {
    if (sgn(qxy.entries()[c]) == 0) continue;
    for (size_t z = 0; z < nz(); ++z) e[c * nz() + z] = qxy.entries()[c] * channel.rows[c][z];
  }
  Axis ax = x, ay = y, az = z2;
  ax.name = "X";
  ay.name = "Y";
  az.name = "Z";
  return JointTable({ax, ay, az}, std::move(e));
}

bool Problem::operator==(const Problem& o) const {
  return x.labels == o.x.labels && y.labels == o.y.labels && z1.labels == o.z1.labels &&
         z2.labels == o.z2.labels && two_output == o.two_output && qxy == o.qxy &&
         channel.rows == o.channel.rows && channel.reachable == o.channel.reachable;
}

namespace {

void check_labels(const Axis& a) {
  std::set<std::string> seen;
  for (const auto& l : a.labels)
    if (!seen.insert(l).second)
      throw InputError("duplicate label '" + l + "' on axis " + a.name);
  if (a.labels.empty()) throw InputError("axis " + a.name + " is empty");
}

}  // namespace

Problem make_problem(Axis x, Axis y, Axis z1, Axis z2, bool two_output,
                     std::vector<Rational> qxy, std::vector<std::vector<Rational>> rows) {
  x.name = "X";
  y.name = "Y";
  z1.name = "Z1";
  z2.name = "Z2";
  for (const Axis* a : {&x, &y, &z1, &z2}) check_labels(*a);
  if (!two_output && z1.size() != 1) throw InputError("one-output problem needs singleton Z1");
  Problem p;
  p.two_output = two_output;
  p.qxy = JointTable({x, y}, std::move(qxy));
  p.x = x;
  p.y = y;
  p.z1 = z1;
  p.z2 = z2;
  p.channel.from = {x, y};
  p.channel.to = {z1, z2};
  if (rows.size() != x.size() * y.size()) throw InputError("channel has wrong number of rows");
  size_t width = z1.size() * z2.size();
  p.channel.reachable.assign(rows.size(), false);
  for (size_t c = 0; c < rows.size(); ++c) {
    bool reach = sgn(p.qxy.entries()[c]) > 0;
    p.channel.reachable[c] = reach;
    if (!reach) rows[c] = uniform_row(width);
  }
  p.channel.rows = std::move(rows);
  p.channel.validate();
  return p;
}

Problem make_one_output(Axis x, Axis y, Axis z, std::vector<Rational> qxy,
                        std::vector<std::vector<Rational>> rows) {
  Axis z1{"Z1", {"-"}};
  return make_problem(std::move(x), std::move(y), std::move(z1), std::move(z), false,
                      std::move(qxy), std::move(rows));
}

void require_one_output(const Problem& p, const char* what) {
  if (p.two_output)
    throw PreconditionError(std::string(what) + " requires a one-output problem");
}

Problem parse_problem(const std::string& text) {
  LineReader in(text);
  auto head = in.expect("sfc", 2);
  if (head.tokens[1] != "1") throw ParseError(head.number, "unsupported sfc version");
  std::map<std::string, size_t> sizes;
  std::map<std::string, std::pair<size_t, std::vector<std::string>>> labels;
  while (in.peek().tokens[0] != "PXY") {
    auto l = in.next();
    const auto& k = l.tokens[0];
    if (k == "X" || k == "Y" || k == "Z" || k == "Z1" || k == "Z2") {
      if (l.tokens.size() != 2) throw ParseError(l.number, "'" + k + "' expects a size");
      if (sizes.count(k)) throw ParseError(l.number, "duplicate '" + k + "'");
      sizes[k] = parse_size(l.tokens[1], l.number);
    } else if (k == "labels") {
      if (l.tokens.size() < 3) throw ParseError(l.number, "'labels' needs an axis and labels");
      labels[l.tokens[1]] = {l.number, {l.tokens.begin() + 2, l.tokens.end()}};
    } else {
      throw ParseError(l.number, "unexpected '" + k + "'");
    }
  }
  size_t pxy_line = in.line_number();
  bool two = sizes.count("Z1") || sizes.count("Z2");
  if (!sizes.count("X") || !sizes.count("Y"))
    throw ParseError(pxy_line, "missing X or Y size");
  if (two && (sizes.count("Z") || !sizes.count("Z1") || !sizes.count("Z2")))
    throw ParseError(pxy_line, "two-output files need Z1 and Z2 (and no Z)");
  if (!two && !sizes.count("Z")) throw ParseError(pxy_line, "missing Z size");

  Axis x = make_axis("X", sizes["X"], "x");
  Axis y = make_axis("Y", sizes["Y"], "y");
  Axis z1 = two ? make_axis("Z1", sizes["Z1"]) : Axis{"Z1", {"-"}};
  Axis z2 = make_axis("Z2", two ? sizes["Z2"] : sizes["Z"]);
  for (auto& [axis, entry] : labels) {
    Axis* target = nullptr;
    if (axis == "X") target = &x;
    else if (axis == "Y") target = &y;
    else if (axis == "Z" && !two) target = &z2;
    else if (axis == "Z1" && two) target = &z1;
    else if (axis == "Z2" && two) target = &z2;
    else throw ParseError(entry.first, "labels for unknown axis '" + axis + "'");
    if (entry.second.size() != target->size())
      throw ParseError(entry.first, "wrong number of labels for " + axis);
    target->labels = entry.second;
    try {
      check_labels(*target);
    } catch (const InputError& e) {
      throw ParseError(entry.first, e.what());
    }
  }

  in.expect("PXY", 1);
  std::vector<Rational> qxy;
  for (size_t i = 0; i < x.size(); ++i) {
    auto row = in.read_row(y.size(), false, nullptr);
    qxy.insert(qxy.end(), row.begin(), row.end());
  }
  if (sum(qxy) != 1) throw ParseError(in.line_number(), "PXY sums to " + to_string(sum(qxy)));

  in.expect(two ? "PZZXY" : "PZXY", 1);
  size_t width = z1.size() * z2.size();
  std::vector<std::vector<Rational>> rows;
  for (size_t c = 0; c < x.size() * y.size(); ++c) {
    size_t ln = in.line_number();
    bool free = false;
    auto row = in.read_row(width, true, &free);
    bool reach = sgn(qxy[c]) > 0;
    if (free) {
      if (reach) throw ParseError(ln, "'-' used for a reachable (x,y)");
      row = uniform_row(width);
    } else if (reach && sum(row) != 1) {
      throw ParseError(ln, "channel row sums to " + to_string(sum(row)));
    }
    rows.push_back(std::move(row));
  }
  if (!in.done()) throw ParseError(in.line_number(), "trailing content");
  return make_problem(x, y, z1, z2, two, std::move(qxy), std::move(rows));
}

std::string render_problem(const Problem& p) {
  std::ostringstream out;
  out << "sfc 1\n";
  out << "X " << p.nx() << "\nY " << p.ny() << "\n";
  if (p.two_output)
    out << "Z1 " << p.z1.size() << "\nZ2 " << p.z2.size() << "\n";
  else
    out << "Z " << p.nz() << "\n";
  auto emit = [&](const std::string& name, const Axis& a) {
    out << "labels " << name;
    for (const auto& l : a.labels) out << ' ' << l;
    out << '\n';
  };
  emit("X", p.x);
  emit("Y", p.y);
  if (p.two_output) {
    emit("Z1", p.z1);
    emit("Z2", p.z2);
  } else {
    emit("Z", p.z2);
  }
  out << "PXY\n";
  for (size_t xi = 0; xi < p.nx(); ++xi) {
    std::vector<Rational> row;
    for (size_t yi = 0; yi < p.ny(); ++yi) row.push_back(p.pxy(xi, yi));
    out << render_row(row) << '\n';
  }
  out << (p.two_output ? "PZZXY\n" : "PZXY\n");
  for (size_t c = 0; c < p.channel.rows.size(); ++c) {
    if (!p.channel.reachable[c])
      out << "-\n";
    else
      out << render_row(p.channel.rows[c]) << '\n';
  }
  return out.str();
}

Problem erasure_problem(const Rational& p) {
  if (p < 0 || p > 1) throw InputError("erasure parameter must lie in [0,1]");
  Axis x{"X", {"x1", "x2", "x3"}};
  Axis y{"Y", {"y1", "y2"}};
  Axis z{"Z", {"0", "e", "1"}};
  Rational q(1, 4);
  std::vector<Rational> qxy = {q, q, q, 0, 0, q};
  std::vector<std::vector<Rational>> rows(6, std::vector<Rational>(3, 0));
  rows[0] = {0, 1, 0};          // x1,y1
  rows[1] = {1 - p, p, 0};      // x1,y2
  rows[2] = {0, 1, 0};          // x2,y1
  rows[5] = {0, p, 1 - p};      // x3,y2
  return make_one_output(x, y, z, qxy, rows);
}

namespace {

void check_m(int m) {
  if (m < 2) throw InputError("parameter m must be at least 2");
  if (m > 16) throw SizeError("parameter m is too large for a dense table");
}

std::string bits(size_t v, int m) {
  std::string s;
  for (int j = 0; j < m; ++j) s += ((v >> j) & 1) ? '1' : '0';
  return s;
}

Axis jb_axis(const std::string& name, int m) {
  Axis a{name, {}};
  for (int j = 1; j <= m; ++j)
    for (int b = 0; b < 2; ++b) a.labels.push_back("j" + std::to_string(j) + "b" + std::to_string(b));
  return a;
}

}  // namespace

Problem index_and_problem(int m) {
  check_m(m);
  size_t nx = 2 * static_cast<size_t>(m), ny = size_t{1} << m, nz = 2 * static_cast<size_t>(m);
  Axis x{"X", {}};
  for (int v = 0; v < 2; ++v)
    for (int j = 1; j <= m; ++j) x.labels.push_back("v" + std::to_string(v) + "j" + std::to_string(j));
  Axis y{"Y", {}};
  for (size_t yi = 0; yi < ny; ++yi) y.labels.push_back(bits(yi, m));
  std::vector<Rational> qxy(nx * ny, Rational(1, nx * ny));
  std::vector<std::vector<Rational>> rows;
  for (size_t xi = 0; xi < nx; ++xi) {
    size_t v = xi / m, j = xi % m;
    for (size_t yi = 0; yi < ny; ++yi) {
      size_t b = v & ((yi >> j) & 1);
      size_t z = j * 2 + b;
      std::vector<Rational> row(nz * nz, 0);
      row[z * nz + z] = 1;
      rows.push_back(std::move(row));
    }
  }
  return make_problem(x, y, jb_axis("Z1", m), jb_axis("Z2", m), true, qxy, rows);
}

Problem select_problem(int m) {
  check_m(m);
  size_t nx = size_t{1} << m, nz = 2 * static_cast<size_t>(m);
  Axis x{"X", {}};
  for (size_t xi = 0; xi < nx; ++xi) x.labels.push_back(bits(xi, m));
  Axis y{"Y", {"y1"}};
  std::vector<Rational> qxy(nx, Rational(1, nx));
  std::vector<std::vector<Rational>> rows;
  for (size_t xi = 0; xi < nx; ++xi) {
    std::vector<Rational> row(nz, 0);
    for (int j = 0; j < m; ++j) row[j * 2 + ((xi >> j) & 1)] = Rational(1, m);
    rows.push_back(std::move(row));
  }
  return make_one_output(x, y, jb_axis("Z", m), qxy, rows);
}

Problem and_full_support_problem() {
  Axis x{"X", {"0", "1"}}, y{"Y", {"0", "1"}}, z{"Z", {"0", "1"}};
  Rational q(1, 4);
  std::vector<std::vector<Rational>> rows = {{1, 0}, {1, 0}, {1, 0}, {0, 1}};
  return make_one_output(x, y, z, {q, q, q, q}, rows);
}

Problem builtin_problem(const std::string& name, const std::vector<std::string>& params) {
  auto need = [&](size_t n) {
    if (params.size() != n)
      throw InputError(name + " expects " + std::to_string(n) + " parameter(s)");
  };
  auto int_param = [&]() {
    Rational r = parse_rational(params[0]);
    if (r.get_den() != 1 || r > 64) throw InputError(name + " expects a small integer");
    return static_cast<int>(r.get_num().get_si());
  };
  if (name == "erasure") {
    need(1);
    return erasure_problem(parse_rational(params[0]));
  }
  if (name == "index-and") {
    need(1);
    return index_and_problem(int_param());
  }
  if (name == "select") {
    need(1);
    return select_problem(int_param());
  }
  if (name == "and-full-support") {
    need(0);
    return and_full_support_problem();
  }
  throw InputError("unknown builtin '" + name + "'");
}

}  // namespace sfc
