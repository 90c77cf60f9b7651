#include "sfc/aux_chain.hpp"

#include <sstream>

#include "sfc/text_format.hpp"

namespace sfc {

namespace {

std::string u_name(size_t i) { return "U" + std::to_string(i + 1); }

size_t product_sizes(const std::vector<size_t>& sizes, size_t upto) {
  size_t n = 1;
  for (size_t j = 0; j < upto; ++j) n *= sizes[j];
  return n;
}

CondTable make_cond(std::vector<Axis> from, std::vector<Axis> to,
                    const std::vector<std::vector<Rational>>& rows) {
  CondTable t;
  t.from = std::move(from);
  t.to = std::move(to);
  size_t width = t.to_size();
  for (const auto& r : rows) {
    if (r.empty()) {
      t.rows.push_back(uniform_row(width));
      t.reachable.push_back(false);
    } else {
      t.rows.push_back(r);
      t.reachable.push_back(true);
    }
  }
  t.validate();
  return t;
}

Axis named(Axis a, const std::string& name) {
  a.name = name;
  return a;
}

}  // namespace

AuxChain make_aux_chain(const Problem& p, Party starter, const std::vector<size_t>& sizes,
                        const std::vector<std::vector<std::vector<Rational>>>& round_rows,
                        const std::vector<std::vector<Rational>>& dec1_rows,
                        const std::vector<std::vector<Rational>>& dec2_rows) {
  if (sizes.empty() || sizes.size() != round_rows.size())
    throw InputError("chain needs one row table per round");
  AuxChain c;
  c.starter = starter;
  Axis ax = named(p.x, "X"), ay = named(p.y, "Y");
  std::vector<Axis> us;
  for (size_t i = 0; i < sizes.size(); ++i) {
    const Axis& own = c.sender(i) == Party::alice ? ax : ay;
    std::vector<Axis> from = {own};
    from.insert(from.end(), us.begin(), us.end());
    Axis u = make_axis(u_name(i), sizes[i]);
    if (round_rows[i].size() != own.size() * product_sizes(sizes, i))
      throw InputError("round " + std::to_string(i + 1) + " has wrong row count");
    c.rounds.push_back(make_cond(from, {u}, round_rows[i]));
    us.push_back(u);
  }
  std::vector<Axis> f1 = {ax}, f2 = {ay};
  f1.insert(f1.end(), us.begin(), us.end());
  f2.insert(f2.end(), us.begin(), us.end());
  size_t nu = product_sizes(sizes, sizes.size());
  if (dec1_rows.size() != p.nx() * nu || dec2_rows.size() != p.ny() * nu)
    throw InputError("decoder has wrong row count");
  c.dec1 = make_cond(f1, {named(p.z1, "Z1")}, dec1_rows);
  c.dec2 = make_cond(f2, {named(p.z2, "Z2")}, dec2_rows);
  return c;
}

AuxChain parse_aux_chain(const std::string& text, const Problem& p) {
  LineReader in(text);
  auto head = in.expect("sfa", 2);
  if (head.tokens[1] != "1") throw ParseError(head.number, "unsupported sfa version");
  size_t r = in.expect_size("rounds");
  auto st = in.expect("start", 2);
  Party starter;
  if (st.tokens[1] == "A") starter = Party::alice;
  else if (st.tokens[1] == "B") starter = Party::bob;
  else throw ParseError(st.number, "start must be A or B");
  AuxChain probe;
  probe.starter = starter;
  std::vector<size_t> sizes;
  std::vector<std::vector<std::vector<Rational>>> round_rows;
  auto read_block = [&](size_t count, size_t width) {
    std::vector<std::vector<Rational>> rows;
    for (size_t k = 0; k < count; ++k) {
      size_t ln = in.line_number();
      bool free = false;
      auto row = in.read_row(width, true, &free);
      if (!free && sum(row) != 1)
        throw ParseError(ln, "row sums to " + to_string(sum(row)));
      rows.push_back(free ? std::vector<Rational>{} : row);
    }
    return rows;
  };
  for (size_t i = 0; i < r; ++i) {
    sizes.push_back(in.expect_size(u_name(i)));
    in.expect("P" + u_name(i), 1);
    size_t own = probe.sender(i) == Party::alice ? p.nx() : p.ny();
    round_rows.push_back(read_block(own * product_sizes(sizes, i), sizes[i]));
  }
  size_t nu = product_sizes(sizes, r);
  in.expect("DEC1", 1);
  auto d1 = read_block(p.nx() * nu, p.z1.size());
  in.expect("DEC2", 1);
  auto d2 = read_block(p.ny() * nu, p.z2.size());
  if (!in.done()) throw ParseError(in.line_number(), "trailing content");
  return make_aux_chain(p, starter, sizes, round_rows, d1, d2);
}

std::string render_aux_chain(const AuxChain& c) {
  std::ostringstream out;
  out << "sfa 1\nrounds " << c.r() << "\nstart " << (c.starter == Party::alice ? "A" : "B")
      << "\n";
  auto block = [&](const CondTable& t) {
    for (size_t k = 0; k < t.rows.size(); ++k)
      out << (t.reachable[k] ? render_row(t.rows[k]) : std::string("-")) << '\n';
  };
  for (size_t i = 0; i < c.r(); ++i) {
    out << u_name(i) << ' ' << c.message_size(i) << "\nP" << u_name(i) << '\n';
    block(c.rounds[i]);
  }
  out << "DEC1\n";
  block(c.dec1);
  out << "DEC2\n";
  block(c.dec2);
  return out.str();
}

bool ChainReport::passed() const { return first_failure().empty(); }

std::string ChainReport::first_failure() const {
  if (!alternation) return "alternation (round " + std::to_string(failing_round) + ")";
  if (!decodable_alice) return "decodability Z1-(U,X)-(Y,Z2)";
  if (!decodable_bob) return "decodability Z2-(U,Y)-(X,Z1)";
  if (mode != Mode::bob && !private_alice) return "privacy against Alice U-(X,Z1)-(Y,Z2)";
  if (mode != Mode::alice && !private_bob) return "privacy against Bob U-(Y,Z2)-(X,Z1)";
  if (!correct) return "correctness";
  return "";
}

ChainReport verify_aux_chain(const Problem& p, const AuxChain& c, Mode mode) {
  const size_t r = c.r();
  if (r == 0) throw InputError("chain has no rounds");
  std::vector<size_t> sizes;
  for (size_t i = 0; i < r; ++i) sizes.push_back(c.message_size(i));
  const size_t nu = product_sizes(sizes, r);
  const size_t n1 = p.z1.size(), n2 = p.z2.size();
  double cells = static_cast<double>(p.nx()) * p.ny() * nu * n1 * n2;
  if (cells > kMaxDenseCells)
    throw SizeError("auxiliary chain joint would have " + format_double(cells) +
                    " cells (limit 1e7)");
  for (size_t i = 0; i < r; ++i) {
    size_t own = c.sender(i) == Party::alice ? p.nx() : p.ny();
    if (c.rounds[i].rows.size() != own * product_sizes(sizes, i))
      throw InputError("round " + std::to_string(i + 1) + " does not match the problem");
    c.rounds[i].validate();
  }
  if (c.dec1.rows.size() != p.nx() * nu || c.dec1.to_size() != n1 ||
      c.dec2.rows.size() != p.ny() * nu || c.dec2.to_size() != n2)
    throw InputError("decoders do not match the problem");
  c.dec1.validate();
  c.dec2.validate();

  std::vector<Rational> e(static_cast<size_t>(cells), 0);
  for (size_t x = 0; x < p.nx(); ++x)
    for (size_t y = 0; y < p.ny(); ++y) {
      if (!p.supported(x, y)) continue;
      // Depth-first over rounds, pruning zero-probability prefixes.
      auto rec = [&](auto&& self, size_t i, size_t prefix, const Rational& mass) -> void {
        if (i == r) {
          if (!c.dec1.reachable[x * nu + prefix] || !c.dec2.reachable[y * nu + prefix])
            throw InputError("a decoder row marked '-' is reached with positive probability");
          const auto& r1 = c.dec1.rows[x * nu + prefix];
          const auto& r2 = c.dec2.rows[y * nu + prefix];
          size_t base = ((x * p.ny() + y) * nu + prefix) * n1 * n2;
          for (size_t a = 0; a < n1; ++a) {
            if (sgn(r1[a]) == 0) continue;
            Rational ma = mass * r1[a];
            for (size_t b = 0; b < n2; ++b)
              if (sgn(r2[b]) != 0) e[base + a * n2 + b] = ma * r2[b];
          }
          return;
        }
        size_t own = c.sender(i) == Party::alice ? x : y;
        size_t k = own * product_sizes(sizes, i) + prefix;
        if (!c.rounds[i].reachable[k])
          throw InputError("round " + std::to_string(i + 1) +
                           " row marked '-' is reached with positive probability");
        const auto& row = c.rounds[i].rows[k];
        for (size_t v = 0; v < sizes[i]; ++v) {
          if (sgn(row[v]) == 0) continue;
          self(self, i + 1, prefix * sizes[i] + v, mass * row[v]);
        }
      };
      rec(rec, 0, 0, p.pxy(x, y));
    }

  std::vector<Axis> axes = {named(p.x, "X"), named(p.y, "Y")};
  AxisNames us;
  for (size_t i = 0; i < r; ++i) {
    axes.push_back(c.rounds[i].to[0]);
    axes.back().name = u_name(i);
    us.push_back(u_name(i));
  }
  axes.push_back(named(p.z1, "Z1"));
  axes.push_back(named(p.z2, "Z2"));

  ChainReport rep;
  rep.mode = mode;
  rep.starter = c.starter;
  rep.joint = JointTable(std::move(axes), std::move(e));
  const JointTable& j = rep.joint;

  rep.alternation = true;
  for (size_t i = 0; i < r && rep.alternation; ++i) {
    bool alice = c.sender(i) == Party::alice;
    AxisNames given(us.begin(), us.begin() + static_cast<long>(i));
    given.push_back(alice ? "X" : "Y");
    if (!is_markov(j, {us[i]}, given, {alice ? "Y" : "X"})) {
      rep.alternation = false;
      rep.failing_round = i + 1;
    }
  }
  auto with = [&](AxisNames a, const AxisNames& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  rep.decodable_alice = is_markov(j, {"Z1"}, with(us, {"X"}), {"Y", "Z2"});
  rep.decodable_bob = is_markov(j, {"Z2"}, with(us, {"Y"}), {"X", "Z1"});
  rep.private_alice = is_markov(j, us, {"X", "Z1"}, {"Y", "Z2"});
  rep.private_bob = is_markov(j, us, {"Y", "Z2"}, {"X", "Z1"});
  rep.correct = sgn(total_variation(marginalize(j, {"X", "Y", "Z1", "Z2"}), p.target_joint())) == 0;

  rep.i_x_u_given_y = conditional_mutual_information(j, {"X"}, us, {"Y"});
  rep.i_y_u_given_x = conditional_mutual_information(j, {"Y"}, us, {"X"});
  rep.i_u_z1z2_given_xy = conditional_mutual_information(j, us, {"Z1", "Z2"}, {"X", "Y"});
  rep.i_u1_z1z2_given_xy = conditional_mutual_information(j, {"U1"}, {"Z1", "Z2"}, {"X", "Y"});
  rep.i_u_z1_given_xy = conditional_mutual_information(j, us, {"Z1"}, {"X", "Y"});
  rep.i_u1_z1_given_xy = conditional_mutual_information(j, {"U1"}, {"Z1"}, {"X", "Y"});
  rep.i_u_z2_given_xy = conditional_mutual_information(j, us, {"Z2"}, {"X", "Y"});
  rep.i_u1_z2_given_xy = conditional_mutual_information(j, {"U1"}, {"Z2"}, {"X", "Y"});
  rep.i_x_y_given_u = conditional_mutual_information(j, {"X"}, {"Y"}, us);
  return rep;
}

}  // namespace sfc
