#include "sfc/feasibility.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sfc {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::feasible: return "feasible";
    case Verdict::infeasible: return "infeasible";
    case Verdict::unsupported: return "unsupported";
  }
  return "?";
}

std::vector<std::pair<size_t, size_t>> similarity_pairs(const Problem& p) {
  require_one_output(p, "similarity_pairs");
  std::vector<std::pair<size_t, size_t>> out;
  for (size_t a = 0; a < p.nx(); ++a)
    for (size_t b = a + 1; b < p.nx(); ++b) {
      bool similar = false;
      for (size_t y = 0; y < p.ny() && !similar; ++y) {
        if (!p.supported(a, y) || !p.supported(b, y)) continue;
        for (size_t z = 0; z < p.nz() && !similar; ++z)
          similar = sgn(p.q(z, a, y)) > 0 && sgn(p.q(z, b, y)) > 0;
      }
      if (similar) out.emplace_back(a, b);
    }
  return out;
}

namespace {

size_t find_root(std::vector<size_t>& parent, size_t v) {
  while (parent[v] != v) v = parent[v] = parent[parent[v]];
  return v;
}

}  // namespace

Partition equivalence_partition(const Problem& p) {
  std::vector<size_t> parent(p.nx());
  std::iota(parent.begin(), parent.end(), 0);
  for (auto [a, b] : similarity_pairs(p)) {
    size_t ra = find_root(parent, a), rb = find_root(parent, b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  Partition part;
  part.block_of.assign(p.nx(), 0);
  std::vector<long> block_for_root(p.nx(), -1);
  for (size_t x = 0; x < p.nx(); ++x) {
    size_t r = find_root(parent, x);
    if (block_for_root[r] < 0) {
      block_for_root[r] = static_cast<long>(part.blocks.size());
      part.blocks.push_back({});
      part.representatives.push_back(x);
    }
    part.block_of[x] = static_cast<size_t>(block_for_root[r]);
    part.blocks[part.block_of[x]].push_back(x);
  }
  return part;
}

FeasibilityReport decide_both_privacy(const Problem& p) {
  require_one_output(p, "decide_both_privacy");
  Partition part = equivalence_partition(p);
  for (const auto& block : part.blocks)
    for (size_t y = 0; y < p.ny(); ++y) {
      long first = -1;
      for (size_t x : block) {
        if (!p.supported(x, y)) continue;
        if (first < 0) {
          first = static_cast<long>(x);
          continue;
        }
        const auto& r0 = p.row(static_cast<size_t>(first), y);
        const auto& r1 = p.row(x, y);
        for (size_t z = 0; z < p.nz(); ++z)
          if (r0[z] != r1[z])
            return {Verdict::infeasible, ViolatingCell{static_cast<size_t>(first), x, y, z},
                    "equivalence block is not column monochromatic"};
      }
    }
  return {Verdict::feasible, part, "every equivalence block is column monochromatic"};
}

FeasibilityReport decide_alice_privacy(const Problem& p) {
  require_one_output(p, "decide_alice_privacy");
  return {Verdict::feasible, std::monostate{},
          "privacy against Alice alone is always achievable (Alice receives nothing)"};
}

AlphaSlice alpha_decomposition(const Problem& p, size_t y) {
  require_one_output(p, "alpha_decomposition");
  if (y >= p.ny()) throw InputError("y out of range");
  AlphaSlice s;
  s.y = y;
  for (size_t z = 0; z < p.nz(); ++z) {
    std::vector<Rational> col(p.nx(), 0);
    Rational mass = 0;
    for (size_t x = 0; x < p.nx(); ++x)
      if (p.supported(x, y)) {
        col[x] = p.q(z, x, y);
        mass += col[x];
      }
    if (sgn(mass) == 0) continue;
    s.effective.push_back(z);
    for (auto& c : col) c /= mass;
    auto it = std::find_if(s.classes.begin(), s.classes.end(),
                           [&](const AlphaClass& a) { return a.alpha == col; });
    if (it == s.classes.end()) {
      s.classes.push_back({{}, col, {}});
      it = s.classes.end() - 1;
    }
    it->outputs.push_back(z);
    it->gamma.push_back(mass);
  }
  return s;
}

FeasibilityReport decide_bob_privacy(const Problem& p) {
  require_one_output(p, "decide_bob_privacy");
  if (!p.full_support())
    return {Verdict::unsupported, std::monostate{},
            "the characterization applies to full-support input distributions only"};
  AlphaDecomposition slices;
  for (size_t y = 0; y < p.ny(); ++y) slices.push_back(alpha_decomposition(p, y));
  const AlphaSlice& base = slices[0];
  for (size_t y = 1; y < p.ny(); ++y) {
    const AlphaSlice& s = slices[y];
    if (s.k() != base.k())
      return {Verdict::infeasible, KMismatch{0, y, base.k(), s.k()},
              "number of alpha classes differs across y"};
    for (size_t i = 0; i < base.k(); ++i) {
      auto it = std::find_if(s.classes.begin(), s.classes.end(), [&](const AlphaClass& c) {
        return c.alpha == base.classes[i].alpha;
      });
      if (it == s.classes.end())
        return {Verdict::infeasible, AlphaMismatch{0, y, i}, "alpha vectors differ across y"};
      for (size_t x = 0; x < p.nx(); ++x) {
        Rational m0 = 0, m1 = 0;
        for (size_t z : base.classes[i].outputs) m0 += p.q(z, x, 0);
        for (size_t z : it->outputs) m1 += p.q(z, x, y);
        if (m0 != m1)
          return {Verdict::infeasible, MassMismatch{0, y, i, x},
                  "class mass depends on y"};
      }
    }
  }
  return {Verdict::feasible, slices, "alpha vectors and class masses agree across y"};
}

FeasibilityReport decide(const Problem& p, Mode mode) {
  switch (mode) {
    case Mode::both: return decide_both_privacy(p);
    case Mode::alice: return decide_alice_privacy(p);
    case Mode::bob: return decide_bob_privacy(p);
  }
  return {};
}

Problem reduce_problem(const Problem& p) {
  auto rep = decide_both_privacy(p);
  if (rep.verdict != Verdict::feasible)
    throw PreconditionError("reduce_problem requires a problem securely computable with privacy "
                            "against both users");
  const auto& part = std::get<Partition>(rep.witness);
  size_t k = part.blocks.size();
  Axis x{"X", {}};
  for (size_t r : part.representatives) x.labels.push_back(p.x.labels[r]);
  std::vector<Rational> qxy(k * p.ny(), 0);
  std::vector<std::vector<Rational>> rows(k * p.ny(), uniform_row(p.nz()));
  for (size_t i = 0; i < k; ++i)
    for (size_t y = 0; y < p.ny(); ++y) {
      bool set = false;
      for (size_t xx : part.blocks[i]) {
        qxy[i * p.ny() + y] += p.pxy(xx, y);
        if (!set && p.supported(xx, y)) {
          rows[i * p.ny() + y] = p.row(xx, y);
          set = true;
        }
      }
    }
  return make_one_output(x, p.y, p.z2, qxy, rows);
}

CommonPart build_common_part(const Problem& p) {
  auto rep = decide_bob_privacy(p);
  if (rep.verdict != Verdict::feasible)
    throw PreconditionError("build_common_part requires a problem securely computable with "
                            "privacy against Bob (full support)");
  CommonPart cp;
  cp.slices = std::get<AlphaDecomposition>(rep.witness);
  const AlphaSlice& base = cp.slices[0];
  cp.k = base.k();
  for (const auto& c : base.classes) cp.alphas.push_back(c.alpha);
  cp.class_at.assign(p.ny(), std::vector<size_t>(cp.k, 0));
  cp.w_of.assign(p.ny(), std::vector<long>(p.nz(), -1));
  for (size_t y = 0; y < p.ny(); ++y) {
    const AlphaSlice& s = cp.slices[y];
    for (size_t i = 0; i < cp.k; ++i) {
      size_t j = 0;
      while (s.classes[j].alpha != cp.alphas[i]) ++j;
      cp.class_at[y][i] = j;
      for (size_t z : s.classes[j].outputs) cp.w_of[y][z] = static_cast<long>(i);
    }
  }
  Axis w = make_axis("W", cp.k, "w");
  Axis ax = p.x, ay = p.y, az = p.z2;
  ax.name = "X";
  ay.name = "Y";
  az.name = "Z";
  std::vector<Rational> e(p.nx() * p.ny() * cp.k * p.nz(), 0);
  for (size_t x = 0; x < p.nx(); ++x)
    for (size_t y = 0; y < p.ny(); ++y)
      for (size_t z = 0; z < p.nz(); ++z) {
        long i = cp.w_of[y][z];
        if (i < 0) continue;
        e[((x * p.ny() + y) * cp.k + static_cast<size_t>(i)) * p.nz() + z] =
            p.pxy(x, y) * p.q(z, x, y);
      }
  cp.joint = JointTable({ax, ay, w, az}, std::move(e));
  cp.w_given_x.from = {ax};
  cp.w_given_x.to = {w};
  for (size_t x = 0; x < p.nx(); ++x) {
    std::vector<Rational> row(cp.k, 0);
    for (size_t i = 0; i < cp.k; ++i)
      for (size_t z : base.classes[i].outputs) row[i] += p.q(z, x, 0);
    cp.w_given_x.rows.push_back(row);
    cp.w_given_x.reachable.push_back(true);
  }
  cp.w_given_x.validate();
  cp.h_w = entropy(marginalize(cp.joint, {"W"}));
  return cp;
}

std::string describe_witness(const Problem& p, const Witness& w) {
  std::ostringstream out;
  auto lx = [&](size_t i) { return p.x.labels[i]; };
  auto ly = [&](size_t i) { return p.y.labels[i]; };
  auto lz = [&](size_t i) { return p.z2.labels[i]; };
  if (auto* part = std::get_if<Partition>(&w)) {
    out << "partition:";
    for (const auto& b : part->blocks) {
      out << " {";
      for (size_t i = 0; i < b.size(); ++i) out << (i ? "," : "") << lx(b[i]);
      out << "}";
    }
  } else if (auto* slices = std::get_if<AlphaDecomposition>(&w)) {
    for (const auto& s : *slices) {
      out << "y=" << ly(s.y) << " k=" << s.k() << ":";
      for (const auto& c : s.classes) {
        out << " [z";
        for (size_t z : c.outputs) out << ' ' << lz(z);
        out << " | alpha";
        for (const auto& a : c.alpha) out << ' ' << to_string(a);
        out << "]";
      }
      out << '\n';
    }
  } else if (auto* v = std::get_if<ViolatingCell>(&w)) {
    out << "violating cell: x=" << lx(v->x) << " x'=" << lx(v->x2) << " y=" << ly(v->y)
        << " z=" << lz(v->z) << " (" << to_string(p.q(v->z, v->x, v->y)) << " vs "
        << to_string(p.q(v->z, v->x2, v->y)) << ")";
  } else if (auto* k = std::get_if<KMismatch>(&w)) {
    out << "k-mismatch: k(" << ly(k->y) << ")=" << k->k << " but k(" << ly(k->y2)
        << ")=" << k->k2;
  } else if (auto* a = std::get_if<AlphaMismatch>(&w)) {
    out << "alpha-mismatch: class " << a->cls + 1 << " at y=" << ly(a->y)
        << " has no matching alpha vector at y=" << ly(a->y2);
  } else if (auto* m = std::get_if<MassMismatch>(&w)) {
    out << "mass-mismatch: class " << m->cls + 1 << " mass at x=" << lx(m->x) << " differs between y="
        << ly(m->y) << " and y=" << ly(m->y2);
  }
  std::string s = out.str();
  while (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

}  // namespace sfc
