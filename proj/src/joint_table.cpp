#include "sfc/joint_table.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace sfc {

Axis make_axis(std::string name, size_t n, const std::string& prefix) {
  Axis a{std::move(name), {}};
  for (size_t i = 0; i < n; ++i)
    a.labels.push_back(prefix.empty() ? std::to_string(i) : prefix + std::to_string(i + 1));
  return a;
}

JointTable::JointTable(std::vector<Axis> axes, std::vector<Rational> entries)
    : axes_(std::move(axes)), entries_(std::move(entries)) {
  size_t cells = 1;
  std::set<std::string> names;
  for (const auto& a : axes_) {
    if (a.size() == 0) throw InputError("axis '" + a.name + "' is empty");
    if (!names.insert(a.name).second) throw InputError("duplicate axis '" + a.name + "'");
    cells *= a.size();
  }
  if (cells != entries_.size())
    throw InputError("table has " + std::to_string(entries_.size()) + " entries, expected " +
                     std::to_string(cells));
  Rational s = 0;
  for (const auto& e : entries_) {
    if (e < 0) throw InputError("negative probability " + to_string(e));
    s += e;
  }
  if (s != 1) throw InputError("table sums to " + to_string(s) + ", not 1");
}

size_t JointTable::axis_index(const std::string& name) const {
  for (size_t i = 0; i < axes_.size(); ++i)
    if (axes_[i].name == name) return i;
  throw InputError("unknown axis '" + name + "'");
}

bool JointTable::has_axis(const std::string& name) const {
  return std::any_of(axes_.begin(), axes_.end(), [&](const Axis& a) { return a.name == name; });
}

std::vector<size_t> JointTable::unflatten(size_t cell) const {
  std::vector<size_t> idx(axes_.size());
  for (size_t i = axes_.size(); i-- > 0;) {
    idx[i] = cell % axes_[i].size();
    cell /= axes_[i].size();
  }
  return idx;
}

size_t JointTable::flatten(const std::vector<size_t>& idx) const {
  size_t cell = 0;
  for (size_t i = 0; i < axes_.size(); ++i) cell = cell * axes_[i].size() + idx[i];
  return cell;
}

bool JointTable::operator==(const JointTable& o) const {
  if (axes_.size() != o.axes_.size()) return false;
  for (size_t i = 0; i < axes_.size(); ++i)
    if (axes_[i].name != o.axes_[i].name || axes_[i].labels != o.axes_[i].labels) return false;
  return entries_ == o.entries_;
}

size_t CondTable::from_size() const {
  size_t n = 1;
  for (const auto& a : from) n *= a.size();
  return n;
}

size_t CondTable::to_size() const {
  size_t n = 1;
  for (const auto& a : to) n *= a.size();
  return n;
}

void CondTable::validate() const {
  if (rows.size() != from_size() || reachable.size() != rows.size())
    throw InputError("conditional table has wrong row count");
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != to_size()) throw InputError("conditional row has wrong width");
    for (const auto& e : rows[r])
      if (e < 0) throw InputError("negative conditional probability in row " + std::to_string(r));
    if (reachable[r] && sum(rows[r]) != 1)
      throw InputError("conditional row " + std::to_string(r) + " sums to " +
                       to_string(sum(rows[r])));
  }
}

std::vector<Rational> uniform_row(size_t n) { return std::vector<Rational>(n, Rational(1, n)); }

namespace {

std::vector<size_t> resolve(const JointTable& t, const AxisNames& names) {
  std::vector<size_t> out;
  for (const auto& n : names) out.push_back(t.axis_index(n));
  return out;
}

// For each cell of t, the flat index of its projection onto `sub` (in the given order).
std::vector<size_t> projection(const JointTable& t, const std::vector<size_t>& sub) {
  const auto& axes = t.axes();
  std::vector<size_t> stride(axes.size(), 0);
  size_t s = 1;
  for (size_t k = sub.size(); k-- > 0;) {
    stride[sub[k]] = s;
    s *= axes[sub[k]].size();
  }
  std::vector<size_t> out(t.cell_count());
  std::vector<size_t> idx(axes.size(), 0);
  size_t flat = 0;
  for (size_t c = 0; c < t.cell_count(); ++c) {
    out[c] = flat;
    for (size_t i = axes.size(); i-- > 0;) {
      if (++idx[i] < axes[i].size()) {
        flat += stride[i];
        break;
      }
      flat -= stride[i] * (axes[i].size() - 1);
      idx[i] = 0;
    }
  }
  return out;
}

size_t sub_size(const JointTable& t, const std::vector<size_t>& sub) {
  size_t n = 1;
  for (auto i : sub) n *= t.axes()[i].size();
  return n;
}

std::vector<Rational> marginal_vector(const JointTable& t, const std::vector<size_t>& sub,
                                      const std::vector<size_t>& proj) {
  std::vector<Rational> m(sub_size(t, sub), 0);
  for (size_t c = 0; c < t.cell_count(); ++c)
    if (sgn(t.entries()[c]) != 0) m[proj[c]] += t.entries()[c];
  return m;
}

std::vector<size_t> concat(std::initializer_list<const std::vector<size_t>*> parts) {
  std::vector<size_t> out;
  for (auto* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

void check_disjoint(const std::vector<size_t>& all) {
  std::set<size_t> s(all.begin(), all.end());
  if (s.size() != all.size()) throw InputError("axis groups overlap");
}

}  // namespace

JointTable marginalize(const JointTable& t, const AxisNames& keep) {
  auto sub = resolve(t, keep);
  check_disjoint(sub);
  std::sort(sub.begin(), sub.end());
  auto proj = projection(t, sub);
  std::vector<Axis> axes;
  for (auto i : sub) axes.push_back(t.axes()[i]);
  return JointTable(std::move(axes), marginal_vector(t, sub, proj));
}

double entropy_of(const std::vector<Rational>& p) {
  double h = 0;
  for (const auto& e : p)
    if (sgn(e) > 0) {
      double v = to_double(e);
      h -= v * std::log2(v);
    }
  return h;
}

double entropy_of(const std::vector<double>& p) {
  double h = 0;
  for (double v : p)
    if (v > 0) h -= v * std::log2(v);
  return h;
}

double binary_entropy(double p) { return entropy_of(std::vector<double>{p, 1 - p}); }

double entropy(const JointTable& t) { return entropy_of(t.entries()); }

double conditional_mutual_information(const JointTable& t, const AxisNames& a,
                                      const AxisNames& b, const AxisNames& c) {
  auto ia = resolve(t, a), ib = resolve(t, b), ic = resolve(t, c);
  auto abc = concat({&ia, &ib, &ic});
  check_disjoint(abc);
  auto ac = concat({&ia, &ic});
  auto bc = concat({&ib, &ic});
  auto p_abc_proj = projection(t, abc);
  auto p_ac_proj = projection(t, ac);
  auto p_bc_proj = projection(t, bc);
  auto p_c_proj = projection(t, ic);
  auto m_abc = marginal_vector(t, abc, p_abc_proj);
  auto m_ac = marginal_vector(t, ac, p_ac_proj);
  auto m_bc = marginal_vector(t, bc, p_bc_proj);
  auto m_c = marginal_vector(t, ic, p_c_proj);
  // Map each abc cell to its ac/bc/c cells through any full cell that projects onto it.
  std::vector<size_t> to_ac(m_abc.size()), to_bc(m_abc.size()), to_c(m_abc.size());
  for (size_t cell = 0; cell < t.cell_count(); ++cell) {
    size_t k = p_abc_proj[cell];
    to_ac[k] = p_ac_proj[cell];
    to_bc[k] = p_bc_proj[cell];
    to_c[k] = p_c_proj[cell];
  }
  double total = 0;
  for (size_t k = 0; k < m_abc.size(); ++k) {
    if (sgn(m_abc[k]) == 0) continue;
    Rational ratio = m_abc[k] * m_c[to_c[k]] / (m_ac[to_ac[k]] * m_bc[to_bc[k]]);
    if (ratio == 1) continue;
    total += to_double(m_abc[k]) * std::log2(to_double(ratio));
  }
  return std::max(total, 0.0);
}

bool is_markov(const JointTable& t, const AxisNames& a, const AxisNames& b, const AxisNames& c) {
  auto ia = resolve(t, a), ib = resolve(t, b), ic = resolve(t, c);
  auto abc = concat({&ia, &ib, &ic});
  check_disjoint(abc);
  auto ab = concat({&ia, &ib});
  auto bc = concat({&ib, &ic});
  auto pr_abc = projection(t, abc);
  auto pr_ab = projection(t, ab);
  auto pr_bc = projection(t, bc);
  auto pr_b = projection(t, ib);
  auto m_abc = marginal_vector(t, abc, pr_abc);
  auto m_ab = marginal_vector(t, ab, pr_ab);
  auto m_bc = marginal_vector(t, bc, pr_bc);
  auto m_b = marginal_vector(t, ib, pr_b);
  std::vector<char> seen(m_abc.size(), 0);
  for (size_t cell = 0; cell < t.cell_count(); ++cell) {
    size_t k = pr_abc[cell];
    if (seen[k]) continue;
    seen[k] = 1;
    const Rational& pb = m_b[pr_b[cell]];
    if (sgn(pb) == 0) continue;
    if (m_abc[k] * pb != m_ab[pr_ab[cell]] * m_bc[pr_bc[cell]]) return false;
  }
  return true;
}

Rational total_variation(const JointTable& p, const JointTable& q) {
  if (p.axes().size() != q.axes().size()) throw InputError("tables differ in shape");
  for (size_t i = 0; i < p.axes().size(); ++i)
    if (p.axes()[i].name != q.axes()[i].name || p.axes()[i].size() != q.axes()[i].size())
      throw InputError("tables differ in shape");
  Rational tv = 0;
  for (size_t c = 0; c < p.cell_count(); ++c) tv += abs(p.entries()[c] - q.entries()[c]);
  return tv;
}

}  // namespace sfc
