// mw: merge-width sequences, widths, flips, games, and FO model checking.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mw/builders.hpp"
#include "mw/flip.hpp"
#include "mw/game_ef.hpp"
#include "mw/gen.hpp"
#include "mw/interp.hpp"
#include "mw/io.hpp"
#include "mw/modelcheck.hpp"
#include "mw/selftest.hpp"

using namespace mw;

namespace {

std::vector<int> parse_radii(const std::string& spec) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "inf")
      out.push_back(kRadiusInf);
    else
      out.push_back(std::stoi(tok));
  }
  if (out.empty()) throw Error("empty radius list");
  for (int r : out)
    if (r != kRadiusInf && r < 1) throw Error("radii must be >= 1 or 'inf'");
  return out;
}

std::string radius_name(int r) { return r == kRadiusInf ? "inf" : std::to_string(r); }

ConstructionSequence load_cs(const std::string& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_construction(in, g);
}

MergeSequence load_ms(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_merge(in, n);
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw Error("cannot open " + path + " for writing");
  return file;
}

FormulaPtr load_formula(const std::string& path, const FormulaSignature& sig) {
  return parse_formula(read_text_file(path), sig);
}

FormulaSignature graph_signature() {
  FormulaSignature sig;
  sig.binary = {intern_name("E"), intern_name("N")};
  return sig;
}

int cmd_validate(const std::string& graph_path, const std::string& seq_path,
                 const std::string& merge_path) {
  Graph g = read_graph_file(graph_path);
  ValidationReport report;
  if (!merge_path.empty()) {
    report = validate_merge(load_ms(merge_path, g.n()), g);
  } else {
    report = validate_construction(load_cs(seq_path, g));
  }
  std::cout << "# schema: field\tvalue\n";
  std::cout << "ok\t" << (report.ok ? 1 : 0) << '\n';
  if (!report.ok) std::cout << "error\t" << report.error << '\n';
  for (const auto& d : report.diagnostics) std::cout << "diagnostic\t" << d << '\n';
  return report.ok ? 0 : 1;
}

int cmd_width(const std::string& graph_path, const std::string& seq_path,
              const std::string& merge_path, const std::string& radii_spec) {
  Graph g = read_graph_file(graph_path);
  auto radii = parse_radii(radii_spec);
  std::cout << "# schema: radius\twidth\n";
  if (!merge_path.empty()) {
    auto ms = load_ms(merge_path, g.n());
    auto rep = validate_merge(ms, g);
    if (!rep.ok) throw Error("invalid merge sequence: " + rep.error);
    for (int r : radii)
      std::cout << radius_name(r) << '\t' << width_of_merge(ms, r) << '\n';
  } else {
    auto cs = load_cs(seq_path, g);
    auto rep = validate_construction(cs, {.homogeneity_diagnostics = false});
    if (!rep.ok) throw Error("invalid construction sequence: " + rep.error);
    for (int r : radii)
      std::cout << radius_name(r) << '\t' << width_of_construction(cs, r) << '\n';
  }
  return 0;
}

int cmd_convert(const std::string& graph_path, const std::string& seq_path,
                const std::string& to, const std::string& out_path) {
  Graph g = read_graph_file(graph_path);
  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  if (to == "merge") {
    auto ms = construction_to_merge(load_cs(seq_path, g));
    write_merge(out, ms);
  } else if (to == "construction") {
    auto cs = merge_to_construction(load_ms(seq_path, g.n()), g);
    write_construction(out, cs);
  } else {
    throw Error("--to must be merge or construction");
  }
  return 0;
}

int cmd_build(const std::string& graph_path, const std::string& from, int r,
              const std::string& order_path, const std::string& contraction_path,
              const std::string& out_path) {
  Graph g = read_graph_file(graph_path);
  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  if (from == "trivial") {
    write_construction(out, trivial_sequence(g));
  } else if (from == "degeneracy") {
    VertexOrder order = order_path.empty() ? degeneracy_order(g).first
                                           : VertexOrder(read_order_file(order_path, g.n()));
    write_construction(out, from_degeneracy(g, order));
  } else if (from == "wcol") {
    VertexOrder order = order_path.empty() ? degeneracy_order(g).first
                                           : VertexOrder(read_order_file(order_path, g.n()));
    write_merge(out, from_wcol_order(g, order, std::max(1, r)));
  } else if (from == "contraction") {
    ContractionSequence c;
    if (contraction_path.empty()) {
      c = greedy_contraction(g);
    } else {
      std::ifstream in(contraction_path);
      if (!in) throw Error("cannot open " + contraction_path);
      c = read_contraction(in, g.n());
    }
    write_merge(out, from_contraction(g, c).ms);
  } else {
    throw Error("--from must be trivial, degeneracy, wcol or contraction");
  }
  return 0;
}

int cmd_stats(const std::string& graph_path, int pi_s, bool near_twins,
              const std::string& sides_path, uint64_t seed) {
  Graph g = read_graph_file(graph_path);
  std::cout << "# schema: stat\tvalue\textra\n";
  std::cout << "n\t" << g.n() << "\t\n";
  std::cout << "m\t" << g.m() << "\t\n";
  auto [order, d] = degeneracy_order(g);
  std::cout << "degeneracy\t" << d << "\t\n";
  if (pi_s >= 0) {
    auto pi = atomic_complexity(g, pi_s, seed);
    std::cout << "pi\t" << pi.value << '\t' << (pi.exact ? "exact" : "sampled-lower-bound")
              << '\n';
  }
  if (near_twins) {
    std::optional<std::vector<uint8_t>> sides;
    if (!sides_path.empty()) {
      std::vector<uint8_t> s(g.n() + 1, 0);
      std::ifstream in(sides_path);
      if (!in) throw Error("cannot open " + sides_path);
      Vertex v;
      while (in >> v) {
        if (v < 1 || v > g.n()) throw Error("sides file: vertex out of range");
        s[v] = 1;
      }
      sides = std::move(s);
    }
    auto tg = min_near_twin_gap(g, sides);
    std::cout << "near-twin-gap\t" << tg.gap << '\t' << tg.u << ' ' << tg.v << '\n';
  }
  return 0;
}

int cmd_game(const std::string& graph_path, const std::string& merge_path, int r,
             const std::string& runner, uint64_t seed, const std::string& strategy,
             int games) {
  Graph g = read_graph_file(graph_path);
  MergeSequence ms;
  if (merge_path.empty()) {
    auto [order, d] = degeneracy_order(g);
    ms = compact_merge(construction_to_merge(from_degeneracy(g, order)));
  } else {
    ms = compact_merge(load_ms(merge_path, g.n()));
  }
  auto rfs = merge_to_restrained_flip(g, ms);
  bool poly = strategy == "poly";
  if (strategy != "std" && strategy != "poly") throw Error("--strategy must be std or poly");
  if (runner == "exhaustive") {
    auto res = exhaustive_game(g, rfs, r, poly);
    std::cout << "# schema: field\tvalue\n";
    std::cout << "flipper-always-wins\t" << (res.flipper_always_wins ? 1 : 0) << '\n';
    std::cout << "max-flip-parts\t" << res.max_flip_parts << '\n';
    return res.flipper_always_wins ? 0 : 1;
  }
  RunnerKind kind;
  if (runner == "random")
    kind = RunnerKind::Random;
  else if (runner == "greedy")
    kind = RunnerKind::GreedyFar;
  else
    throw Error("--runner must be random, greedy or exhaustive");
  int losses = 0;
  for (int i = 0; i < games; ++i) {
    auto tr = play_game(g, rfs, r, {.runner = kind, .seed = seed + i, .poly_strategy = poly});
    std::cout << "# game " << i << " start " << tr.start << '\n';
    for (size_t t = 0; t < tr.rounds.size(); ++t)
      std::cout << "round " << (t + 1) << ": flip-parts " << tr.rounds[t].flip_parts
                << ", runner " << tr.rounds[t].runner << '\n';
    std::cout << "# outcome: " << (tr.flipper_won ? "flipper wins" : "runner survives")
              << " after " << tr.rounds.size() << " rounds\n";
    if (!tr.flipper_won) ++losses;
  }
  return losses == 0 ? 0 : 1;
}

int cmd_game_ef(const std::string& a_path, const std::string& b_path, int k, int q) {
  BinaryStructure a = read_structure_file(a_path);
  BinaryStructure b = read_structure_file(b_path);
  bool game = duplicator_wins_global(a, b, {}, {}, k, q);
  TypeContext ca(a), cb(b);
  bool types = compute_tp(ca, ca.full_mask(), {}, 0, q) ==
               compute_tp(cb, cb.full_mask(), {}, 0, q);
  std::cout << "# schema: field\tvalue\n";
  std::cout << "duplicator-wins\t" << (game ? 1 : 0) << '\n';
  std::cout << "types-equal\t" << (types ? 1 : 0) << '\n';
  if (game != types) {
    std::cout << "error\tgame and type normal form disagree\n";
    return 1;
  }
  return 0;
}

int cmd_type(const std::string& struct_path, int k, int q, Vertex vertex) {
  BinaryStructure s = read_structure_file(struct_path);
  if (vertex < 1 || vertex > s.n()) throw Error("vertex out of range");
  PartitionedStructure ps(s, Partition(s.n()));
  TypeContext ctx(ps);
  LtpId ltp = compute_ltp(ctx, {vertex}, k, q);
  TypeId tp = compute_tp(ctx, ctx.full_mask(), {vertex}, k, q);
  std::cout << "# schema: field\tvalue\n";
  std::cout << "rho\t" << rho_clamped(k, q, 1 << 30) << '\n';
  std::cout << "reach\t";
  const auto& reach = MaskTable::instance().preds(LtpTable::instance().reach(ltp));
  for (size_t i = 0; i < reach.size(); ++i)
    std::cout << (i ? " " : "") << pred_name(reach[i]);
  std::cout << '\n';
  std::cout << "ltp-id\t" << ltp << '\n';
  std::cout << "tp-id\t" << tp << '\n';
  std::cout << "extension-classes\t" << TypeTable::instance().node(tp).children.size()
            << '\n';
  return 0;
}

int cmd_mc(const std::string& graph_path, const std::string& seq_path,
           const std::string& sentence_path, int q, bool verify, bool stats) {
  Graph g = read_graph_file(graph_path);
  auto cs = load_cs(seq_path, g);
  auto sentence = load_formula(sentence_path, graph_signature());
  if (q >= 0 && quantifier_rank(sentence) > q)
    throw Error("sentence rank exceeds the requested q");
  WitnessCache cache;
  MCOptions opt;
  opt.verify = verify;
  MCStats run_stats;
  bool truth = model_check_sentence(g, cs, sentence, cache, opt, &run_stats);
  std::cout << "# schema: field\tvalue\n";
  std::cout << "sentence-holds\t" << (truth ? 1 : 0) << '\n';
  if (stats) {
    std::cout << "steps\t" << (run_stats.merges + run_stats.resolves) << '\n';
    std::cout << "merges\t" << run_stats.merges << '\n';
    std::cout << "resolves\t" << run_stats.resolves << '\n';
    std::cout << "ltp-classes-max\t" << run_stats.ltp_classes_max << '\n';
    std::cout << "cache-lookups\t" << cache.stats().lookups << '\n';
    std::cout << "cache-hits\t" << cache.stats().hits << '\n';
    std::cout << "cache-size\t" << cache.size() << '\n';
    std::cout << "seconds\t" << run_stats.total_seconds << '\n';
  }
  return truth ? 0 : 1;
}

int cmd_interpret(const std::string& graph_path, const std::string& seq_path,
                  const std::string& formula_path, const std::string& radii_spec,
                  bool full_check, const std::string& out_path) {
  Graph g = read_graph_file(graph_path);
  auto cs = load_cs(seq_path, g);
  auto phi = load_formula(formula_path, graph_signature());
  DeriveOptions opt;
  opt.radii = parse_radii(radii_spec);
  opt.full_check = full_check;
  auto lifted = lift_to_structure(normalize_effective(cs));
  auto report = derive_merge_sequence(lifted, phi, opt);
  std::cout << "# schema: field\tvalue\n";
  std::cout << "interpreted-edges\t" << report.interpreted.m() << '\n';
  std::cout << "symmetric\t" << (report.symmetric ? 1 : 0) << '\n';
  std::cout << "steps\t" << report.derived.steps.size() << '\n';
  std::cout << "final-type-count\t" << report.final_type_count << '\n';
  std::cout << "valid\t" << (report.verdict.ok ? 1 : 0) << '\n';
  for (auto [r, w] : report.widths)
    std::cout << "width-r" << radius_name(r) << '\t' << w << '\n';
  std::cout << "checked-pairs\t" << report.checked_pairs << '\n';
  if (!report.failed_claim.empty())
    std::cout << "failed-claim\t" << report.failed_claim << '\n';
  if (!out_path.empty()) {
    std::ofstream file;
    write_merge(open_output(file, out_path), report.derived);
  }
  return report.verdict.ok && report.failed_claim.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"merge-width sequences, widths, flips, games, and FO model checking"};
  app.require_subcommand(1);

  std::string graph_path, seq_path, merge_path, out_path, order_path, contraction_path;
  std::string sides_path, sentence_path, formula_path, a_path, b_path;
  std::string radii_spec = "1";
  std::string from, to, runner = "random", strategy = "std", scale = "small";
  int r = 1, k = 0, q = 0, pi_s = -1, games = 1;
  Vertex vertex = 1;
  uint64_t seed = 0;
  bool near_twins = false, verify = false, stats = false, full_check = false;

  auto* validate = app.add_subcommand("validate", "validate a construction or merge sequence");
  validate->add_option("graph", graph_path)->required();
  validate->add_option("cseq", seq_path);
  validate->add_option("--merge", merge_path, "validate this merge-sequence file instead");

  auto* width = app.add_subcommand("width", "radius-r widths of a sequence");
  width->add_option("graph", graph_path)->required();
  width->add_option("cseq", seq_path);
  width->add_option("--merge", merge_path);
  width->add_option("-r,--radii", radii_spec, "comma-separated radii, e.g. 1,2,inf");

  auto* convert = app.add_subcommand("convert", "convert between sequence kinds");
  convert->add_option("graph", graph_path)->required();
  convert->add_option("seq", seq_path)->required();
  convert->add_option("--to", to, "merge | construction")->required();
  convert->add_option("-o,--output", out_path);

  auto* build = app.add_subcommand("build", "produce a witnessing sequence");
  build->add_option("graph", graph_path)->required();
  build->add_option("--from", from, "trivial | degeneracy | wcol | contraction")->required();
  build->add_option("-r", r, "radius for the wcol builder");
  build->add_option("--order", order_path);
  build->add_option("--contraction", contraction_path);
  build->add_option("-o,--output", out_path);

  auto* stats_cmd = app.add_subcommand("stats", "graph statistics");
  stats_cmd->add_option("graph", graph_path)->required();
  stats_cmd->add_option("--pi", pi_s, "atomic complexity pi_G(s)");
  stats_cmd->add_flag("--near-twins", near_twins);
  stats_cmd->add_option("--sides", sides_path, "one side of a bipartition, vertex ids");
  stats_cmd->add_option("--seed", seed);

  auto* game = app.add_subcommand("game", "simulate the flip-width game");
  game->add_option("graph", graph_path)->required();
  game->add_option("--merge", merge_path, "merge sequence (default: degeneracy pipeline)");
  game->add_option("-r", r)->required();
  game->add_option("--runner", runner, "random | greedy | exhaustive");
  game->add_option("--seed", seed);
  game->add_option("--strategy", strategy, "std | poly");
  game->add_option("--games", games);

  auto* game_ef = app.add_subcommand("game-ef", "global EF game vs type equality");
  game_ef->add_option("a", a_path)->required();
  game_ef->add_option("b", b_path)->required();
  game_ef->add_option("--kq", k)->required();
  game_ef->add_option("q", q)->required();

  auto* type_cmd = app.add_subcommand("type", "local/global type of a vertex");
  type_cmd->add_option("struct", a_path)->required();
  type_cmd->add_option("--kq", k)->required();
  type_cmd->add_option("q", q)->required();
  type_cmd->add_option("--vertex", vertex)->required();

  auto* mc = app.add_subcommand("mc", "model-check a plain FO sentence");
  mc->add_option("graph", graph_path)->required();
  mc->add_option("cseq", seq_path)->required();
  mc->add_option("--sentence", sentence_path)->required();
  mc->add_option("--q", q)->default_val(-1);
  mc->add_flag("--verify", verify);
  mc->add_flag("--stats", stats);

  auto* interpret = app.add_subcommand("interpret", "interpretation closure");
  interpret->add_option("graph", graph_path)->required();
  interpret->add_option("cseq", seq_path)->required();
  interpret->add_option("--formula", formula_path)->required();
  interpret->add_option("-r,--radii", radii_spec);
  interpret->add_flag("--full-check", full_check);
  interpret->add_option("-o,--output", out_path);

  auto* selftest_cmd = app.add_subcommand("selftest", "run the property suites");
  selftest_cmd->add_option("--scale", scale, "small | full");
  selftest_cmd->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(validate)) {
      if (seq_path.empty() && merge_path.empty())
        throw Error("validate needs a construction file or --merge");
      return cmd_validate(graph_path, seq_path, merge_path);
    }
    if (app.got_subcommand(width)) {
      if (seq_path.empty() && merge_path.empty())
        throw Error("width needs a construction file or --merge");
      return cmd_width(graph_path, seq_path, merge_path, radii_spec);
    }
    if (app.got_subcommand(convert)) return cmd_convert(graph_path, seq_path, to, out_path);
    if (app.got_subcommand(build))
      return cmd_build(graph_path, from, r, order_path, contraction_path, out_path);
    if (app.got_subcommand(stats_cmd))
      return cmd_stats(graph_path, pi_s, near_twins, sides_path, seed);
    if (app.got_subcommand(game))
      return cmd_game(graph_path, merge_path, r, runner, seed, strategy, games);
    if (app.got_subcommand(game_ef)) return cmd_game_ef(a_path, b_path, k, q);
    if (app.got_subcommand(type_cmd)) return cmd_type(a_path, k, q, vertex);
    if (app.got_subcommand(mc))
      return cmd_mc(graph_path, seq_path, sentence_path, q, verify, stats);
    if (app.got_subcommand(interpret))
      return cmd_interpret(graph_path, seq_path, formula_path, radii_spec, full_check,
                           out_path);
    if (app.got_subcommand(selftest_cmd)) {
      SelftestScale s = scale == "full" ? SelftestScale::Full : SelftestScale::Small;
      return selftest(s, seed, std::cout) ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
