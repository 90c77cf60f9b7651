#include "sfc/protocol.hpp"

#include <algorithm>
#include <sstream>

#include "sfc/feasibility.hpp"
#include "sfc/graphs.hpp"
#include "sfc/text_format.hpp"

namespace sfc {

namespace {

Axis named(Axis a, const std::string& name) {
  a.name = name;
  return a;
}

// Lowest x with color u that is supported at y, or -1.
long pick_representative(const Problem& p, const std::vector<size_t>& color, size_t u, size_t y) {
  for (size_t x = 0; x < p.nx(); ++x)
    if (color[x] == u && p.supported(x, y)) return static_cast<long>(x);
  return -1;
}

Protocol from_coloring(const Problem& p, const std::vector<size_t>& color, size_t nu) {
  std::vector<std::vector<Rational>> enc(p.nx(), std::vector<Rational>(nu, 0));
  for (size_t x = 0; x < p.nx(); ++x) enc[x][color[x]] = 1;
  std::vector<std::vector<Rational>> dec;
  for (size_t u = 0; u < nu; ++u)
    for (size_t y = 0; y < p.ny(); ++y) {
      long x = pick_representative(p, color, u, y);
      dec.push_back(x < 0 ? std::vector<Rational>{} : p.row(static_cast<size_t>(x), y));
    }
  return make_protocol(p, nu, std::move(enc), std::move(dec));
}

}  // namespace

Protocol make_protocol(const Problem& p, size_t nu, std::vector<std::vector<Rational>> enc,
                       std::vector<std::vector<Rational>> dec) {
  require_one_output(p, "protocol");
  if (nu == 0) throw InputError("message alphabet is empty");
  if (enc.size() != p.nx() || dec.size() != nu * p.ny())
    throw InputError("protocol tables do not match the problem");
  Protocol pr;
  pr.u = make_axis("U", nu, "u");
  Axis ax = named(p.x, "X"), ay = named(p.y, "Y"), az = named(p.z2, "Z");
  auto px = p.px();
  pr.encoder.from = {ax};
  pr.encoder.to = {pr.u};
  for (size_t x = 0; x < p.nx(); ++x) {
    bool reach = sgn(px[x]) > 0;
    if (enc[x].empty()) {
      if (reach) throw InputError("encoder row for reachable input " + p.x.labels[x] + " is free");
      enc[x] = uniform_row(nu);
    }
    if (enc[x].size() != nu) throw InputError("encoder row has wrong width");
    if (!reach) enc[x] = uniform_row(nu);
    pr.encoder.rows.push_back(enc[x]);
    pr.encoder.reachable.push_back(reach);
  }
  pr.encoder.validate();
  pr.decoder.from = {pr.u, ay};
  pr.decoder.to = {az};
  for (size_t u = 0; u < nu; ++u)
    for (size_t y = 0; y < p.ny(); ++y) {
      Rational puy = 0;
      for (size_t x = 0; x < p.nx(); ++x) puy += p.pxy(x, y) * pr.encoder.rows[x][u];
      bool reach = sgn(puy) > 0;
      auto& row = dec[u * p.ny() + y];
      if (row.empty()) {
        if (reach)
          throw InputError("decoder row for reachable (" + pr.u.labels[u] + "," + p.y.labels[y] +
                           ") is free");
        row = uniform_row(p.nz());
      }
      if (row.size() != p.nz()) throw InputError("decoder row has wrong width");
      if (!reach) row = uniform_row(p.nz());
      pr.decoder.rows.push_back(row);
      pr.decoder.reachable.push_back(reach);
    }
  pr.decoder.validate();
  return pr;
}

Protocol synthesize(const Problem& p, Mode mode) {
  require_one_output(p, "synthesize");
  if (mode == Mode::both) {
    auto rep = decide_both_privacy(p);
    if (rep.verdict != Verdict::feasible)
      throw PreconditionError("not securely computable with privacy against both users: " +
                              describe_witness(p, rep.witness));
    const auto& part = std::get<Partition>(rep.witness);
    // Color the equivalence classes optimally; one message per class when
    // the reduced graph is beyond the exhaustive-coloring guard.
    Graph g = characteristic_graph(reduce_problem(p));
    std::vector<size_t> class_color(part.blocks.size());
    size_t nu = part.blocks.size();
    if (g.size() <= kMaxColoringVertices) {
      auto col = chromatic_entropy(g).coloring;
      class_color = col.color;
      nu = col.num_colors();
    } else {
      for (size_t i = 0; i < nu; ++i) class_color[i] = i;
    }
    std::vector<size_t> color(p.nx());
    for (size_t x = 0; x < p.nx(); ++x) color[x] = class_color[part.block_of[x]];
    return from_coloring(p, color, nu);
  }
  if (mode == Mode::alice) {
    auto col = chromatic_entropy(characteristic_graph(p)).coloring;
    return from_coloring(p, col.color, col.num_colors());
  }
  auto rep = decide_bob_privacy(p);
  if (rep.verdict != Verdict::feasible)
    throw PreconditionError("privacy against Bob: " + to_string(rep.verdict) + " (" +
                            (rep.verdict == Verdict::unsupported ? rep.notes
                                                                 : describe_witness(p, rep.witness)) +
                            ")");
  CommonPart cp = build_common_part(p);
  std::vector<std::vector<Rational>> dec;
  for (size_t i = 0; i < cp.k; ++i)
    for (size_t y = 0; y < p.ny(); ++y) {
      const AlphaClass& cls = cp.slices[y].classes[cp.class_at[y][i]];
      size_t xr = 0;
      while (sgn(cls.alpha[xr]) == 0) ++xr;
      Rational mass = 0;
      for (size_t z : cls.outputs) mass += p.q(z, xr, y);
      std::vector<Rational> row(p.nz(), 0);
      for (size_t z : cls.outputs) row[z] = p.q(z, xr, y) / mass;
      dec.push_back(std::move(row));
    }
  return make_protocol(p, cp.k, cp.w_given_x.rows, std::move(dec));
}

Protocol erasure_bob_protocol(const Rational& p) {
  if (p < 0 || p > 1) throw InputError("erasure parameter must lie in [0,1]");
  Problem prob = erasure_problem(p);
  std::vector<std::vector<Rational>> enc = {{1 - p, p, 0}, {1 - p, p, 0}, {0, p, 1 - p}};
  const std::vector<Rational> zero = {1, 0, 0}, erase = {0, 1, 0}, one = {0, 0, 1};
  // Rows ordered (u, y): u1 erases at y1 and decodes 0 at y2, u2 always erases,
  // u3 decodes 1 at y2 and never meets y1.
  std::vector<std::vector<Rational>> dec = {erase, zero, erase, erase, {}, one};
  return make_protocol(prob, 3, enc, dec);
}

JointTable induced_joint(const Protocol& pr, const Problem& p) {
  if (pr.encoder.rows.size() != p.nx() || pr.decoder.rows.size() != pr.nu() * p.ny() ||
      pr.decoder.to_size() != p.nz())
    throw InputError("protocol does not match the problem");
  size_t nu = pr.nu();
  std::vector<Rational> e(p.nx() * p.ny() * nu * p.nz(), 0);
  for (size_t x = 0; x < p.nx(); ++x)
    for (size_t y = 0; y < p.ny(); ++y) {
      if (!p.supported(x, y)) continue;
      for (size_t u = 0; u < nu; ++u) {
        const Rational& pu = pr.encoder.rows[x][u];
        if (sgn(pu) == 0) continue;
        Rational m = p.pxy(x, y) * pu;
        const auto& row = pr.decoder.rows[u * p.ny() + y];
        for (size_t z = 0; z < p.nz(); ++z)
          if (sgn(row[z]) != 0) e[((x * p.ny() + y) * nu + u) * p.nz() + z] = m * row[z];
      }
    }
  return JointTable({named(p.x, "X"), named(p.y, "Y"), pr.u, named(p.z2, "Z")}, std::move(e));
}

std::vector<Rational> message_distribution(const Protocol& pr, const Problem& p) {
  auto px = p.px();
  std::vector<Rational> d(pr.nu(), 0);
  for (size_t x = 0; x < p.nx(); ++x)
    for (size_t u = 0; u < pr.nu(); ++u) d[u] += px[x] * pr.encoder.rows[x][u];
  return d;
}

VerifyReport verify_protocol(const Protocol& pr, const Problem& p, Mode mode) {
  require_one_output(p, "verify_protocol");
  JointTable j = induced_joint(pr, p);
  VerifyReport r;
  r.correctness_tv = total_variation(marginalize(j, {"X", "Y", "Z"}), p.target_joint_xyz());
  r.private_alice = is_markov(j, {"U"}, {"X"}, {"Y", "Z"});
  r.private_bob = is_markov(j, {"U"}, {"Y", "Z"}, {"X"});
  r.passed = sgn(r.correctness_tv) == 0 && (mode == Mode::bob || r.private_alice) &&
             (mode == Mode::alice || r.private_bob);
  r.h_u = entropy_of(message_distribution(pr, p));
  if (pr.code) r.expected_length = expected_length(pr, p);
  try {
    if (mode == Mode::both && decide_both_privacy(p).verdict == Verdict::feasible) {
      Graph g = characteristic_graph(reduce_problem(p));
      if (g.size() <= kMaxColoringVertices) r.h_chi = chromatic_entropy(g).bits;
    }
    if (mode == Mode::bob && decide_bob_privacy(p).verdict == Verdict::feasible)
      r.h_w = build_common_part(p).h_w;
  } catch (const SizeError&) {
  }
  return r;
}

bool is_prefix_free(const std::vector<std::string>& code) {
  for (size_t i = 0; i < code.size(); ++i)
    for (size_t j = 0; j < code.size(); ++j)
      if (i != j && code[j].compare(0, code[i].size(), code[i]) == 0 &&
          code[i].size() <= code[j].size())
        return false;
  return true;
}

std::vector<std::string> huffman(const std::vector<Rational>& dist) {
  const size_t n = dist.size();
  if (n == 0) return {};
  if (n == 1) return {""};
  struct Node {
    Rational mass;
    size_t first;  // earliest symbol index below this node
    long left = -1, right = -1;
  };
  std::vector<Node> nodes;
  std::vector<size_t> live;
  for (size_t i = 0; i < n; ++i) {
    nodes.push_back({dist[i], i});
    live.push_back(i);
  }
  auto less = [&](size_t a, size_t b) {
    if (nodes[a].mass != nodes[b].mass) return nodes[a].mass < nodes[b].mass;
    return nodes[a].first < nodes[b].first;
  };
  while (live.size() > 1) {
    std::sort(live.begin(), live.end(), less);
    size_t a = live[0], b = live[1];
    nodes.push_back({nodes[a].mass + nodes[b].mass, std::min(nodes[a].first, nodes[b].first),
                     static_cast<long>(a), static_cast<long>(b)});
    live.erase(live.begin(), live.begin() + 2);
    live.push_back(nodes.size() - 1);
  }
  std::vector<std::string> code(n);
  auto walk = [&](auto&& self, size_t v, const std::string& prefix) -> void {
    if (nodes[v].left < 0) {
      code[v] = prefix;
      return;
    }
    self(self, static_cast<size_t>(nodes[v].left), prefix + "0");
    self(self, static_cast<size_t>(nodes[v].right), prefix + "1");
  };
  walk(walk, live[0], "");
  return code;
}

Protocol huffman_code(const Protocol& pr, const Problem& p) {
  Protocol out = pr;
  out.code = huffman(message_distribution(pr, p));
  return out;
}

Rational expected_length(const Protocol& pr, const Problem& p) {
  if (!pr.code) throw PreconditionError("protocol has no code attached");
  auto d = message_distribution(pr, p);
  Rational len = 0;
  for (size_t u = 0; u < pr.nu(); ++u) len += d[u] * static_cast<unsigned long>((*pr.code)[u].size());
  return len;
}

Protocol parse_protocol(const std::string& text, const Problem& p) {
  require_one_output(p, "parse_protocol");
  LineReader in(text);
  auto head = in.expect("sfp", 2);
  if (head.tokens[1] != "1") throw ParseError(head.number, "unsupported sfp version");
  size_t nu = in.expect_size("U");
  auto read_block = [&](size_t count, size_t width) {
    std::vector<std::vector<Rational>> rows;
    for (size_t k = 0; k < count; ++k) {
      size_t ln = in.line_number();
      bool free = false;
      auto row = in.read_row(width, true, &free);
      if (!free && sum(row) != 1) throw ParseError(ln, "row sums to " + to_string(sum(row)));
      rows.push_back(free ? std::vector<Rational>{} : row);
    }
    return rows;
  };
  in.expect("PUX", 1);
  auto enc = read_block(p.nx(), nu);
  in.expect("PZUY", 1);
  auto dec = read_block(nu * p.ny(), p.nz());
  size_t code_line = in.line_number();
  std::optional<std::vector<std::string>> code;
  if (!in.done()) {
    in.expect("CODE", 1);
    code.emplace(nu);
    std::vector<bool> seen(nu, false);
    for (size_t k = 0; k < nu; ++k) {
      auto l = in.next();
      if (l.tokens.size() > 2) throw ParseError(l.number, "code line is 'u<i> <bits>'");
      const auto& name = l.tokens[0];
      size_t idx = 0;
      if (name.size() < 2 || name[0] != 'u') throw ParseError(l.number, "expected u<i>");
      idx = parse_size(name.substr(1), l.number) - 1;
      if (idx >= nu || seen[idx]) throw ParseError(l.number, "bad or repeated message " + name);
      seen[idx] = true;
      std::string bits = l.tokens.size() == 2 ? l.tokens[1] : "";
      if (bits.find_first_not_of("01") != std::string::npos)
        throw ParseError(l.number, "codeword must be a bit string");
      (*code)[idx] = bits;
    }
    if (!is_prefix_free(*code)) throw ParseError(code_line, "code is not prefix-free");
    if (!in.done()) throw ParseError(in.line_number(), "trailing content");
  }
  Protocol pr;
  try {
    pr = make_protocol(p, nu, std::move(enc), std::move(dec));
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& e) {
    throw ParseError(code_line, e.what());
  }
  pr.code = std::move(code);
  return pr;
}

std::string render_protocol(const Protocol& pr) {
  std::ostringstream out;
  out << "sfp 1\nU " << pr.nu() << "\nPUX\n";
  for (size_t k = 0; k < pr.encoder.rows.size(); ++k)
    out << (pr.encoder.reachable[k] ? render_row(pr.encoder.rows[k]) : std::string("-")) << '\n';
  out << "PZUY\n";
  for (size_t k = 0; k < pr.decoder.rows.size(); ++k)
    out << (pr.decoder.reachable[k] ? render_row(pr.decoder.rows[k]) : std::string("-")) << '\n';
  if (pr.code) {
    out << "CODE\n";
    for (size_t u = 0; u < pr.nu(); ++u) {
      out << pr.u.labels[u];
      if (!(*pr.code)[u].empty()) out << ' ' << (*pr.code)[u];
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace sfc
