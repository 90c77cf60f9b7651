// Command-line front end: feasibility checks, graphs, rates, protocol
// synthesis/verification and simulation for two-party randomized functions.
#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sfc/aux_chain.hpp"
#include "sfc/feasibility.hpp"
#include "sfc/graphs.hpp"
#include "sfc/protocol.hpp"
#include "sfc/rates.hpp"

namespace {

using namespace sfc;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

// Writes to `path`, or to stdout when the path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty())
    std::cout << text;
  else
    write_file(path, text);
}

Problem load_problem(const std::string& path) { return parse_problem(read_file(path)); }

std::string fmt(double v) { return format_double(v); }

std::string row_text(const std::vector<double>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + fmt(v[i]);
  return s;
}

struct Options {
  unsigned threads = 1;
  std::string problem, chain, protocol, out, csv, mode = "both", grid, p;
  int power = 1;
  bool chromatic = false, reduced = false;
  double r0 = 0;
  uint64_t n = 0, seed = 0;
  int wmax = 0;
  std::string builtin_name;
  std::vector<std::string> builtin_params;
  std::string bob_protocol;
};

int cmd_check(const Options& o) {
  Problem p = load_problem(o.problem);
  Mode mode = parse_mode(o.mode);
  auto rep = decide(p, mode);
  std::cout << "mode: " << to_string(mode) << "\n";
  std::cout << "verdict: " << to_string(rep.verdict) << "\n";
  std::string w = describe_witness(p, rep.witness);
  if (!w.empty()) std::cout << w << "\n";
  std::cout << "note: " << rep.notes << "\n";
  if (rep.verdict == Verdict::feasible && mode == Mode::bob)
    std::cout << "H(W): " << fmt(build_common_part(p).h_w) << "\n";
  return rep.verdict == Verdict::feasible ? kOk : kFail;
}

int cmd_reduce(const Options& o) {
  Problem p = load_problem(o.problem);
  auto rep = decide_both_privacy(p);
  if (rep.verdict != Verdict::feasible) {
    std::cout << "verdict: infeasible\n" << describe_witness(p, rep.witness) << "\n";
    return kFail;
  }
  emit(o.out, render_problem(reduce_problem(p)));
  return kOk;
}

int cmd_graph(const Options& o) {
  Problem p = load_problem(o.problem);
  if (o.reduced) p = reduce_problem(p);
  Graph g = o.power == 1 ? characteristic_graph(p) : power_graph(p, o.power);
  std::cout << "# vertices " << g.size() << " edges " << g.edges.size() << "\n";
  for (auto [a, b] : g.edges) std::cout << g.vertices[a] << ' ' << g.vertices[b] << "\n";
  if (o.chromatic) {
    auto r = chromatic_entropy(g);
    std::cout << "# chromatic_entropy " << fmt(r.bits) << " colors " << r.coloring.num_colors()
              << "\n";
    for (size_t v = 0; v < g.size(); ++v)
      std::cout << g.vertices[v] << ' ' << r.coloring.color[v] + 1 << "\n";
  }
  return kOk;
}

int cmd_cge(const Options& o) {
  Problem p = load_problem(o.problem);
  auto r = conditional_graph_entropy(p, o.threads);
  std::cout << "conditional_graph_entropy: " << fmt(r.bits) << "\n";
  std::cout << "# maximal independent sets\n";
  for (size_t w = 0; w < r.sets.size(); ++w) {
    std::cout << "w" << w + 1 << ":";
    for (size_t x : r.sets[w]) std::cout << ' ' << p.x.labels[x];
    std::cout << "\n";
  }
  std::cout << "# p(w|x)\n";
  for (size_t x = 0; x < p.nx(); ++x)
    std::cout << p.x.labels[x] << ' ' << row_text(r.w_given_x[x]) << "\n";
  return kOk;
}

int cmd_rates(const Options& o) {
  Problem p = load_problem(o.problem);
  auto s = sum_rate_both_privacy(p, o.r0);
  std::cout << "I(X;Z2|Y): " << fmt(s.cutset.i_x_z2_given_y) << "\n";
  std::cout << "I(Y;Z1|X): " << fmt(s.cutset.i_y_z1_given_x) << "\n";
  std::cout << "I(Z1;Z2|X,Y): " << fmt(s.cutset.i_z1_z2_given_xy) << "\n";
  std::cout << "sum_rate_both_privacy(r0=" << fmt(o.r0) << "): " << fmt(s.bits) << "\n";
  if (!s.feasible)
    std::cout << "caveat: feasibility with privacy against both users is not decided for "
                 "two-output problems\n";
  else if (!*s.feasible)
    std::cout << "caveat: not securely computable with privacy against both users\n";
  return kOk;
}

int cmd_chain_verify(const Options& o) {
  Problem p = load_problem(o.problem);
  AuxChain c = parse_aux_chain(read_file(o.chain), p);
  Mode mode = parse_mode(o.mode);
  ChainReport r = verify_aux_chain(p, c, mode);
  auto flag = [](bool b) { return b ? "pass" : "fail"; };
  std::cout << "mode: " << to_string(mode) << "\n";
  std::cout << "alternation: " << flag(r.alternation) << "\n";
  std::cout << "decodability_alice: " << flag(r.decodable_alice) << "\n";
  std::cout << "decodability_bob: " << flag(r.decodable_bob) << "\n";
  std::cout << "privacy_against_alice: " << flag(r.private_alice) << "\n";
  std::cout << "privacy_against_bob: " << flag(r.private_bob) << "\n";
  std::cout << "correctness: " << flag(r.correct) << "\n";
  std::cout << "I(X;U|Y): " << fmt(r.i_x_u_given_y) << "\n";
  std::cout << "I(Y;U|X): " << fmt(r.i_y_u_given_x) << "\n";
  std::cout << "I(U;Z1,Z2|X,Y): " << fmt(r.i_u_z1z2_given_xy) << "\n";
  std::cout << "I(U1;Z1,Z2|X,Y): " << fmt(r.i_u1_z1z2_given_xy) << "\n";
  if (!r.passed()) {
    std::cout << "result: fail (" << r.first_failure() << ")\n";
    return kFail;
  }
  RateReport rr = rate_region_corner(p, c, mode);
  std::cout << "R12_lower: " << fmt(rr.r12_lower) << "\n";
  std::cout << "R21_lower: " << fmt(rr.r21_lower) << "\n";
  std::cout << (c.starter == Party::alice ? "R0_plus_R12_lower: " : "R0_plus_R21_lower: ")
            << fmt(rr.r0_plus_opening_lower) << "\n";
  std::cout << "sum_lower: " << fmt(rr.sum_lower) << "\n";
  if (mode == Mode::both)
    std::cout << "simplifications: " << (rr.simplifications_hold ? "hold" : "violated") << "\n";
  std::cout << "result: pass\n";
  return kOk;
}

int cmd_synth(const Options& o) {
  Problem p = load_problem(o.problem);
  Mode mode = parse_mode(o.mode);
  Protocol pr;
  try {
    pr = synthesize(p, mode);
  } catch (const PreconditionError& e) {
    std::cout << "error: " << e.what() << "\n";
    return kFail;
  }
  emit(o.out, render_protocol(pr));
  return kOk;
}

int cmd_verify(const Options& o) {
  Problem p = load_problem(o.problem);
  Protocol pr = parse_protocol(read_file(o.protocol), p);
  Mode mode = parse_mode(o.mode);
  auto r = verify_protocol(pr, p, mode);
  std::cout << "mode: " << to_string(mode) << "\n";
  std::cout << "correctness_tv: " << to_string(r.correctness_tv) << "\n";
  std::cout << "privacy_against_alice: " << (r.private_alice ? "pass" : "fail") << "\n";
  std::cout << "privacy_against_bob: " << (r.private_bob ? "pass" : "fail") << "\n";
  std::cout << "H(U): " << fmt(r.h_u) << "\n";
  if (r.expected_length)
    std::cout << "E[L]: " << to_string(*r.expected_length) << " (" << fmt(to_double(*r.expected_length))
              << ")\n";
  if (r.h_chi) std::cout << "H_chi(G_EQ): " << fmt(*r.h_chi) << "\n";
  if (r.h_w) std::cout << "H(W): " << fmt(*r.h_w) << "\n";
  std::cout << "result: " << (r.passed ? "pass" : "fail") << "\n";
  return r.passed ? kOk : kFail;
}

int cmd_code(const Options& o) {
  Problem p = load_problem(o.problem);
  Protocol pr = huffman_code(parse_protocol(read_file(o.protocol), p), p);
  emit(o.out, render_protocol(pr));
  if (!o.out.empty())
    std::cout << "E[L]: " << to_string(expected_length(pr, p)) << "\n";
  return kOk;
}

int cmd_simulate(const Options& o) {
  Problem p = load_problem(o.problem);
  Protocol pr = parse_protocol(read_file(o.protocol), p);
  auto r = simulate(pr, p, o.n, o.seed, o.threads);
  std::cout << "samples: " << r.n << "\nseed: " << r.seed << "\n";
  std::cout << "empirical_tv: " << fmt(r.tv) << "\n";
  std::cout << "mean_message_length: " << fmt(r.mean_length) << "\n";
  if (!o.csv.empty()) write_file(o.csv, render_simulation_csv(r));
  return kOk;
}

int cmd_wyner(const Options& o) {
  Problem p = load_problem(o.problem);
  JointTable q = marginalize(p.target_joint(), {"Z1", "Z2"});
  int wmax = o.wmax > 0 ? o.wmax : static_cast<int>(std::min<size_t>(q.cell_count(), 4));
  auto r = wyner_common_information(q, wmax, o.threads);
  std::cout << "I(Z1;Z2): " << fmt(r.mutual_information) << "\n";
  if (r.matched)
    std::cout << "C(Z1;Z2) estimate: " << fmt(r.estimate) << "\n";
  else
    std::cout << "C(Z1;Z2) estimate: none (no witness with |W| <= " << wmax << " fits)\n";
  std::cout << (r.matched ? "witness" : "closest mixture") << " |W|: " << r.w_size << " fit_error: " << fmt(r.fit_error) << "\n";
  std::cout << "p(w): " << row_text(r.pw) << "\n";
  for (size_t w = 0; w < r.w_size; ++w)
    std::cout << "w" << w + 1 << " p(z1|w): " << row_text(r.z1_given_w[w])
              << " p(z2|w): " << row_text(r.z2_given_w[w]) << "\n";
  std::cout << "securely_sampleable: " << (r.sampleable ? "yes" : "no") << "\n";
  return r.sampleable ? kOk : kFail;
}

std::vector<Rational> grid_points(const std::string& range) {
  std::vector<std::string> parts;
  std::stringstream ss(range);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw InputError("grid must be a:b:step");
  Rational a = parse_rational(parts[0]), b = parse_rational(parts[1]),
           step = parse_rational(parts[2]);
  if (step <= 0 || a > b) throw InputError("grid needs a <= b and a positive step");
  std::vector<Rational> out;
  for (Rational v = a; v <= b; v += step) out.push_back(v);
  return out;
}

int cmd_example_erasure(const Options& o) {
  if (o.p.empty() == o.grid.empty()) throw InputError("give exactly one of --p or --grid");
  auto points = o.grid.empty() ? std::vector<Rational>{parse_rational(o.p)} : grid_points(o.grid);
  std::ostringstream csv;
  csv << "p,R_AB,R_A,R_B,R_noprivacy\n";
  for (const auto& pt : points) {
    auto r = erasure_example_rates(pt);
    std::string ab = r.r_ab ? fmt(*r.r_ab) : "infeasible";
    csv << fmt(to_double(pt)) << ',' << ab << ',' << fmt(r.r_a) << ',' << fmt(r.r_b) << ','
        << fmt(r.r_noprivacy) << "\n";
  }
  if (o.csv.empty())
    std::cout << csv.str();
  else
    write_file(o.csv, csv.str());
  if (!o.bob_protocol.empty()) {
    if (points.size() != 1) throw InputError("--bob-protocol needs a single --p");
    write_file(o.bob_protocol, render_protocol(erasure_bob_protocol(points[0])));
  }
  return kOk;
}

int cmd_builtin(const Options& o) {
  emit(o.out, render_problem(builtin_problem(o.builtin_name, o.builtin_params)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secure computability analysis for two-party randomized functions"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1u, 256u));

  auto mode_opt = [&](CLI::App* c) {
    c->add_option("--mode", o.mode, "both | alice | bob")
        ->check(CLI::IsMember({"both", "alice", "bob"}));
  };
  auto problem_opt = [&](CLI::App* c) {
    c->add_option("--problem", o.problem, ".sfc problem file")->required();
  };

  auto* check = app.add_subcommand("check", "Decide secure computability");
  problem_opt(check);
  mode_opt(check);
  auto* reduce = app.add_subcommand("reduce", "Emit the reduced problem");
  problem_opt(reduce);
  reduce->add_option("-o,--out", o.out);
  auto* graph = app.add_subcommand("graph", "Characteristic graph as an edge list");
  problem_opt(graph);
  graph->add_option("--power", o.power)->check(CLI::PositiveNumber);
  graph->add_flag("--chromatic-entropy", o.chromatic);
  graph->add_flag("--reduced", o.reduced, "Use the graph of the reduced problem");
  auto* cge = app.add_subcommand("cge", "Conditional graph entropy");
  problem_opt(cge);
  auto* rates = app.add_subcommand("rates", "Cut-set bounds and sum rate");
  problem_opt(rates);
  rates->add_option("--r0", o.r0, "Common randomness rate")->check(CLI::NonNegativeNumber);
  auto* chain = app.add_subcommand("chain-verify", "Verify an auxiliary chain");
  problem_opt(chain);
  chain->add_option("--chain", o.chain, ".sfa file")->required();
  mode_opt(chain);
  auto* synth = app.add_subcommand("synth", "Synthesize a one-round protocol");
  problem_opt(synth);
  mode_opt(synth);
  synth->add_option("-o,--out", o.out);
  auto* verify = app.add_subcommand("verify", "Verify a protocol exactly");
  problem_opt(verify);
  verify->add_option("--protocol", o.protocol)->required();
  mode_opt(verify);
  auto* code = app.add_subcommand("code", "Attach a Huffman code to a protocol");
  problem_opt(code);
  code->add_option("--protocol", o.protocol)->required();
  code->add_option("-o,--out", o.out);
  auto* sim = app.add_subcommand("simulate", "Monte Carlo run of a protocol");
  problem_opt(sim);
  sim->add_option("--protocol", o.protocol)->required();
  sim->add_option("-n", o.n, "Samples")->required()->check(CLI::PositiveNumber);
  sim->add_option("--seed", o.seed);
  sim->add_option("--csv", o.csv);
  auto* wyner = app.add_subcommand("wyner", "Wyner common information of (Z1,Z2)");
  problem_opt(wyner);
  wyner->add_option("--wmax", o.wmax)->check(CLI::PositiveNumber);
  auto* example = app.add_subcommand("example", "Worked examples");
  example->require_subcommand(1);
  auto* erasure = example->add_subcommand("erasure", "Erasure example rate curves");
  erasure->add_option("--p", o.p);
  erasure->add_option("--grid", o.grid, "a:b:step");
  erasure->add_option("--csv", o.csv);
  erasure->add_option("--bob-protocol", o.bob_protocol, "Write the Bob-private protocol (.sfp)");
  auto* builtin = app.add_subcommand("builtin", "Emit a builtin problem (.sfc)");
  builtin->add_option("name", o.builtin_name)->required();
  builtin->add_option("params", o.builtin_params);
  builtin->add_option("-o,--out", o.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    if (rc == 0) return kOk;
    std::cerr << app.help();
    return kUsage;
  }

  try {
    if (*check) return cmd_check(o);
    if (*reduce) return cmd_reduce(o);
    if (*graph) return cmd_graph(o);
    if (*cge) return cmd_cge(o);
    if (*rates) return cmd_rates(o);
    if (*chain) return cmd_chain_verify(o);
    if (*synth) return cmd_synth(o);
    if (*verify) return cmd_verify(o);
    if (*code) return cmd_code(o);
    if (*sim) return cmd_simulate(o);
    if (*wyner) return cmd_wyner(o);
    if (*erasure) return cmd_example_erasure(o);
    if (*builtin) return cmd_builtin(o);
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
