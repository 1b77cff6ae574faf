#include "mw/selftest.hpp"

#include <ostream>

#include "mw/builders.hpp"
#include "mw/flip.hpp"
#include "mw/game_ef.hpp"
#include "mw/gen.hpp"
#include "mw/interp.hpp"
#include "mw/modelcheck.hpp"

namespace mw {

namespace {

struct Suite {
  std::ostream& out;
  bool ok = true;

  void check(const std::string& name, bool pass) {
    out << name << ": " << (pass ? "ok" : "FALSIFIED") << '\n';
    ok = ok && pass;
  }
};

FormulaSignature graph_sig() {
  FormulaSignature sig;
  sig.binary = {intern_name("E")};
  return sig;
}

}  // namespace

bool selftest(SelftestScale scale, uint64_t seed, std::ostream& out) {
  int graphs = scale == SelftestScale::Small ? 4 : 12;
  int nmax = scale == SelftestScale::Small ? 14 : 26;
  Suite suite{out};
  try {
    // width bounds of the builders
    bool widths_ok = true;
    for (int i = 0; i < graphs; ++i) {
      Graph g = gen::gnm(8 + (i * 5) % nmax, 12 + (i * 7) % (2 * nmax), seed + i);
      auto [order, d] = degeneracy_order(g);
      auto cs = from_degeneracy(g, order);
      widths_ok = widths_ok && validate_construction(cs).ok;
      widths_ok = widths_ok && width_of_construction(cs, 1) <= d + 2;
      auto triv = trivial_sequence(g);
      int delta = g.max_degree();
      long long bound = 1, pw = 1;
      for (int r = 1; r <= 2; ++r) {
        pw *= delta;
        bound += pw;
      }
      widths_ok = widths_ok && width_of_construction(triv, 2) <= bound;
      auto ms = from_wcol_order(g, order, 1);
      widths_ok = widths_ok && validate_merge(ms, g).ok;
      widths_ok =
          widths_ok && width_of_merge(ms, 1) <= 3 * (1 << wcol_value(g, order, 2));
    }
    suite.check("width-bounds", widths_ok);

    // conversion round trips preserve widths
    bool conv_ok = true;
    for (int i = 0; i < graphs; ++i) {
      Graph g = gen::d_degenerate(10 + (i * 3) % nmax, 2, seed + 40 + i);
      auto cs = from_degeneracy(g, degeneracy_order(g).first);
      auto ms = construction_to_merge(cs);
      auto cs2 = merge_to_construction(ms, g);
      conv_ok = conv_ok && validate_construction(cs2).ok;
      for (int r : {1, 2, kRadiusInf})
        conv_ok = conv_ok && width_of_construction(cs, r) == width_of_merge(ms, r) &&
                  width_of_merge(ms, r) == width_of_merge(construction_to_merge(cs2), r);
      auto norm = normalize_effective(cs);
      int w = width_of_construction(norm, 1);
      conv_ok = conv_ok && static_cast<int>(norm.ops.size()) <= (2 * w + 1) * g.n();
    }
    suite.check("sequence-equivalence", conv_ok);

    // flip games
    bool flip_ok = true;
    for (int i = 0; i < graphs; ++i) {
      Graph g = gen::tree(8 + (i * 3) % nmax, seed + 80 + i);
      auto ms = compact_merge(construction_to_merge(from_degeneracy(g, degeneracy_order(g).first)));
      auto rfs = merge_to_restrained_flip(g, ms);
      flip_ok = flip_ok && validate_rfs(rfs, g).ok;
      auto tr = play_game(g, rfs, 1, {.runner = RunnerKind::GreedyFar, .seed = seed + i});
      flip_ok = flip_ok && tr.flipper_won &&
                tr.rounds.size() <= static_cast<size_t>(g.n());
      int s = width_of_merge(ms, 1);
      long long bound = 1;
      for (int b = 0; b < s; ++b) bound *= 4;
      flip_ok = flip_ok && tr.max_flip_parts <= bound;
    }
    suite.check("flip-games", flip_ok);

    // logic: types against the game oracle
    bool logic_ok = true;
    for (int i = 0; i < graphs * 4; ++i) {
      auto s1 = gen::structure(4 + i % 4, 1, 1, 0.35, seed + 200 + i);
      auto s2 = (i % 3 == 0) ? s1 : gen::structure(4 + (i / 2) % 4, 1, 1, 0.35, seed + 300 + i);
      TypeContext c1(s1), c2(s2);
      int q = i % 2 + 1;
      Vertex v1 = 1 + i % s1.n(), v2 = 1 + (i / 3) % s2.n();
      bool types = compute_tp(c1, c1.full_mask(), {v1}, 1, q) ==
                   compute_tp(c2, c2.full_mask(), {v2}, 1, q);
      logic_ok = logic_ok && types == duplicator_wins_global(s1, s2, {v1}, {v2}, 1, q);
    }
    suite.check("logic-game-agreement", logic_ok);

    // locality: no witness-cache violations in verify mode
    bool locality_ok = true;
    WitnessCache cache;
    for (int i = 0; i < graphs * 6; ++i) {
      auto s = gen::structure(5 + i % 8, 1, 1, 0.3, seed + 400 + i, 1 + i % 2);
      PartitionedStructure ps(s, Partition(s.n()));
      TypeContext ctx(ps);
      std::vector<LtpId> ltps(s.n() + 1);
      int q = 1 + i % 2;
      for (Vertex v = 1; v <= s.n(); ++v) ltps[v] = compute_ltp(ctx, {v}, 1, q);
      auto tps = local_to_global_all(ctx, ltps, 1, q, cache,
                                     {.verify = true, .source = "selftest"});
      for (Vertex v = 1; v <= s.n(); ++v)
        locality_ok =
            locality_ok && tps[v] == compute_tp(ctx, ctx.full_mask(), {v}, 1, q);
    }
    locality_ok = locality_ok && cache.stats().violations == 0;
    suite.check("locality-cache", locality_ok);

    // model checking against the naive evaluator
    bool mc_ok = true;
    auto sig = graph_sig();
    std::vector<FormulaPtr> sentences = {
        parse_formula("exists x. exists y. E(x,y)", sig),
        parse_formula("forall x. exists y. E(x,y)", sig),
        parse_formula("exists x. forall y. (x=y | E(x,y))", sig),
        parse_formula("exists x. forall y. !E(x,y)", sig),
    };
    WitnessCache mc_cache;
    for (int i = 0; i < graphs; ++i) {
      Graph g = gen::gnm(6 + (i * 4) % nmax, 9 + (i * 5) % (2 * nmax), seed + 500 + i);
      auto cs = from_degeneracy(g, degeneracy_order(g).first);
      auto got = model_check_sentences(g, cs, sentences, mc_cache, {.verify = i == 0});
      BinaryStructure subject = graph_subject_structure(g);
      for (size_t j = 0; j < sentences.size(); ++j)
        mc_ok = mc_ok && got[j] == naive_evaluate(subject, sentences[j]);
    }
    suite.check("model-checking", mc_ok);

    // interpretation closure
    bool interp_ok = true;
    auto ident = parse_formula("E(x,y)", sig);
    auto comp = parse_formula("!(x=y) & !E(x,y)", sig);
    for (int i = 0; i < std::max(2, graphs / 2); ++i) {
      Graph g = gen::tree(8 + (i * 3) % nmax, seed + 600 + i);
      auto cs = lift_to_structure(
          normalize_effective(from_degeneracy(g, degeneracy_order(g).first)));
      for (const auto& phi : {ident, comp}) {
        auto rep = derive_merge_sequence(cs, phi, {.radii = {1}});
        interp_ok = interp_ok && rep.verdict.ok && rep.failed_claim.empty();
      }
    }
    suite.check("interpretation", interp_ok);
  } catch (const Error& e) {
    out << "selftest error: " << e.what() << '\n';
    return false;
  }
  return suite.ok;
}

}  // namespace mw
