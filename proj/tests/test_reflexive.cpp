#include <algorithm>
#include <functional>

#include "brute.hpp"
#include "doctest.h"
#include "figures.hpp"
#include "recolor/oracle.hpp"
#include "recolor/reflexive.hpp"
#include "recolor/solve.hpp"

using namespace recolor;

namespace {

Walk W(const std::vector<int>& vs) { return Walk::from_vertices(vs); }

Digraph reflexive_path(int n) {
  Digraph h(n);
  for (int i = 0; i + 1 < n; ++i) figures::edge(h, i, i + 1);
  h.add_all_loops();
  return h;
}

// Closed walk with no alpha-trivial edge and no alpha-backtrack, cyclically.
bool brute_tight(const brute::Vs& c, const Homomorphism& alpha) {
  std::size_t m = c.size() - 1;
  if (m < 2 || c.front() != c.back()) return false;
  for (std::size_t i = 0; i < m; ++i) {
    int u = c[i], v = c[(i + 1) % m], w = c[(i + 2) % m];
    if (alpha[u] == alpha[v] || alpha[u] == alpha[w]) return false;
  }
  return true;
}

// Any tight closed walk of length <= len, by exhaustive search.
bool brute_has_tight(const Digraph& g, const Homomorphism& alpha, int len) {
  brute::Vs cur;
  std::function<bool()> go = [&]() -> bool {
    if (cur.size() > 2 && cur.back() == cur.front() && brute_tight(cur, alpha)) return true;
    if (static_cast<int>(cur.size()) - 1 == len) return false;
    for (int w : brute::neighbours(g, cur.back())) {
      cur.push_back(w);
      if (go()) return true;
      cur.pop_back();
    }
    return false;
  };
  for (int s = 0; s < g.n(); ++s) {
    cur = {s};
    if (go()) return true;
  }
  return false;
}

Instance swap_across_edge() {
  Instance inst;
  inst.semantics = Semantics::Reflexive;
  inst.H = reflexive_path(2);
  inst.G = Digraph(3);
  figures::edge(inst.G, 0, 1);
  inst.G.add_arc(1, 2);
  inst.G.add_all_loops();
  inst.alpha = {0, 1, 0};
  inst.beta = {1, 0, 1};
  return inst;
}

}  // namespace

TEST_CASE("find_tight_cycle") {
  Digraph g(3);
  figures::edge(g, 0, 1);
  figures::edge(g, 1, 2);
  figures::edge(g, 2, 0);
  g.add_all_loops();
  CHECK_FALSE(find_tight_cycle(g, {0, 0, 0}));
  auto tc = find_tight_cycle(g, {0, 1, 2});
  REQUIRE(tc);
  CHECK(tc->cycle.closed());
  Instance fig = figures::hexagon_square(false);
  tc = find_tight_cycle(fig.G, fig.alpha);
  REQUIRE(tc);
  std::vector<int> vs = tc->cycle.vertices();
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  CHECK(vs == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(frozen_vertices(fig.G, fig.alpha) == std::vector<int>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("find_tight_cycle against exhaustive closed-walk search") {
  int found = 0, tested = 0;
  for (int t = 0; t < 300; ++t) {
    const char* fam = t % 2 == 0 ? "cycle" : "girth5";
    Instance inst = random_instance(family_params(Semantics::Reflexive, fam), 2300 + static_cast<std::uint64_t>(t));
    if (inst.G.n() > 6) continue;
    ++tested;
    auto tc = find_tight_cycle(inst.G, inst.alpha);
    if (tc) {
      ++found;
      CHECK(brute_tight(tc->cycle.vertices(), inst.alpha));
    } else {
      CHECK_FALSE(brute_has_tight(inst.G, inst.alpha, 8));
    }
  }
  CHECK(tested > 100);
  CHECK(found > 0);
}

TEST_CASE("frozen_moved") {
  Instance fig = figures::hexagon_square(false);
  auto frozen = frozen_vertices(fig.G, fig.alpha);
  CHECK_FALSE(frozen_moved(fig, frozen));
  Instance moved = fig;
  moved.beta[0] = 6;
  CHECK(frozen_moved(moved, frozen));
}

TEST_CASE("pinned walk and realizable_characterization on the figures") {
  Instance first = figures::hexagon_square(false);
  Walk drawn = W({6, 9, 8, 7, 6, 9, 8, 7, 6});
  CHECK(pinned_walk(first, 0, 10) == drawn);
  CHECK(realizable_characterization(drawn, first, 10));
  CHECK_FALSE(realizable_characterization(Walk(6), first, 10));
  Instance second = figures::hexagon_square(true);
  // the BFS walk u0 v0 q pins the empty walk, and the long walk around the
  // cycle pins alpha(C)^-2; neither conjugates alpha(C) to beta(C)
  CHECK(pinned_walk(second, 0, 11) == Walk(6));
  Walk c = reduce(image_walk(second.alpha, W({11, 6, 7, 8, 9, 10, 11})), true);
  CHECK(reduce(image_walk(second.beta, W({11, 6, 7, 8, 9, 10, 11})), true) == invert(c));
  Walk w = W({0, 6, 7, 8, 9, 10, 11});
  Walk q = compose(invert(image_walk(second.alpha, w)), image_walk(second.beta, w), true);
  CHECK(q == power(c, -2, true));
  CHECK_FALSE(realizable_characterization(q, second, 11));
  CHECK_FALSE(realizable_characterization(Walk(6), second, 11));
}

TEST_CASE("realizable_characterization without tight cycles is topological validity") {
  Instance inst;
  inst.semantics = Semantics::Reflexive;
  inst.H = reflexive_path(3);
  inst.G = Digraph(2);
  inst.G.add_arc(0, 1);
  inst.G.add_all_loops();
  inst.alpha = {0, 0};
  inst.beta = {2, 2};
  CHECK(realizable_characterization(W({0, 1, 2}), inst, 0));
  CHECK(realizable_characterization(W({0, 1, 2}), inst, 0) == is_topologically_valid(W({0, 1, 2}), inst, 0));
}

TEST_CASE("classify_reflexive on the figures") {
  Instance first = figures::hexagon_square(false);
  WalkClassification c1 = classify_reflexive(first, 10);
  CHECK(c1.tag == WalkCase::Single);
  CHECK(c1.Q == W({6, 9, 8, 7, 6, 9, 8, 7, 6}));
  CHECK(classify_reflexive(figures::hexagon_square(true), 11).tag == WalkCase::Empty);
  // hexagon vertices keep their colours in the restricted sequence
  SolveOptions r;
  r.restricted = true;
  Decision d = solve(first, r);
  REQUIRE(d.answer == Answer::Yes);
  for (const Move& m : d.sequence->moves) CHECK(m.vertex >= 6);
}

TEST_CASE("classify_reflexive on a reflexive tree") {
  Instance inst;
  inst.semantics = Semantics::Reflexive;
  inst.H = reflexive_path(3);
  inst.G = Digraph(3);
  inst.G.add_arc(0, 1);
  inst.G.add_arc(2, 1);
  inst.G.add_all_loops();
  inst.alpha = {0, 1, 2};
  inst.beta = {1, 1, 1};
  CHECK(classify_reflexive(inst, 0).tag == WalkCase::All);
}

TEST_CASE("build_dag_sequence") {
  Instance inst;
  inst.semantics = Semantics::Reflexive;
  inst.H = reflexive_path(2);
  inst.G = Digraph(2);
  figures::edge(inst.G, 0, 1);
  inst.G.add_all_loops();
  inst.alpha = {0, 1};
  inst.beta = inst.alpha;
  SequenceResult e = build_dag_sequence(Walk(0), inst, 0);
  CHECK(e.ok);
  CHECK(e.seq.moves.empty());
  // two adjacent vertices swap colours across a symmetric edge
  inst.beta = {1, 0};
  SequenceResult s = build_dag_sequence(W({0, 1}), inst, 0);
  REQUIRE(s.ok);
  CHECK(s.seq.moves.size() == 2);
  CHECK(verify_sequence(inst, s.seq, Adjacency::Rh).ok);
  CHECK(push_or_pull(inst, s.seq));
  CHECK(brute::push_or_pull(inst, s.seq));
}

TEST_CASE("move_forward") {
  Instance inst;
  inst.semantics = Semantics::Reflexive;
  inst.H = reflexive_path(3);
  inst.G = Digraph(2);
  inst.G.add_arc(0, 1);
  inst.G.add_all_loops();
  inst.alpha = {0, 0};
  Instance same = inst;
  same.beta = same.alpha;
  CHECK(move_forward(Walk(0), same, 0).seq.moves.empty());
  // both vertices walk a -> b -> c; the oracle also finds a sequence
  inst.beta = {2, 2};
  SequenceResult r = move_forward(W({0, 1, 2}), inst, 0);
  REQUIRE(r.ok);
  CHECK(r.seq.moves == std::vector<Move>{{0, 0, 1}, {1, 0, 1}, {0, 1, 2}, {1, 1, 2}});
  CHECK(verify_sequence(inst, r.seq, Adjacency::Rh).ok);
  CHECK(oracle_decide(inst).has_value());
}

TEST_CASE("move_forward lets neighbours swap across an edge in either order") {
  Instance inst = swap_across_edge();
  SequenceResult r = move_forward(W({0, 1}), inst, 0);
  REQUIRE(r.ok);
  CHECK(verify_sequence(inst, r.seq, Adjacency::Rh).ok);
  CHECK(brute::push_or_pull(inst, r.seq));
  CHECK(oracle_decide(inst).has_value());
  CHECK(solve_reflexive(inst).answer == Answer::Yes);
}

TEST_CASE("move_forward respects a one-way arc") {
  // u -> v in G, H has 0 -> 1 one way: v must reach 1 before u can follow
  Instance inst;
  inst.semantics = Semantics::Reflexive;
  inst.H = Digraph(2);
  inst.H.add_arc(0, 1);
  inst.H.add_all_loops();
  inst.G = Digraph(2);
  inst.G.add_arc(0, 1);
  inst.G.add_all_loops();
  inst.alpha = {0, 0};
  inst.beta = {1, 1};
  SequenceResult r = move_forward(W({0, 1}), inst, 0);
  REQUIRE(r.ok);
  CHECK(r.seq.moves == std::vector<Move>{{1, 0, 1}, {0, 0, 1}});
  // the reverse walk would need u first, which the arc forbids
  Instance back = inst;
  back.alpha = {1, 1};
  back.beta = {0, 0};
  CHECK(oracle_decide(back).has_value() == move_forward(W({1, 0}), back, 0).ok);
}

TEST_CASE("rnp_bound and rnp_order") {
  RnpBound b = rnp_bound(W({0, 1, 2, 0}), W({0, 1}), 4);
  CHECK(b.a0 == 2);
  CHECK(b.b0 == 2);
  CHECK(b.n0 == 4);
  CHECK(b.N == 8);
  CHECK(rnp_order(2) == std::vector<long>{0, -1, 1, -2, 2});
}

TEST_CASE("bounded_rnp_search with a trivial root tests P once") {
  Instance inst;
  inst.semantics = Semantics::Reflexive;
  inst.H = reflexive_path(3);
  inst.G = Digraph(2);
  inst.G.add_arc(0, 1);
  inst.G.add_all_loops();
  inst.alpha = {0, 0};
  inst.beta = {2, 2};
  RnpResult r = bounded_rnp_search(Walk(0), W({0, 1, 2}), inst, 0);
  REQUIRE(r.result.ok);
  CHECK(r.n == 0);
  CHECK(verify_sequence(inst, r.result.seq, Adjacency::Rh).ok);
}

TEST_CASE("all_walks_case") {
  // no directed closed walk apart from loops
  Instance inst;
  inst.semantics = Semantics::Reflexive;
  inst.H = reflexive_path(3);
  inst.G = Digraph(3);
  inst.G.add_arc(0, 1);
  inst.G.add_arc(1, 2);
  inst.G.add_all_loops();
  inst.alpha = {0, 0, 0};
  inst.beta = {2, 2, 2};
  AllWalksResult r = all_walks_case(inst, 0);
  REQUIRE(r.result.ok);
  CHECK(verify_sequence(inst, r.result.seq, Adjacency::Rh).ok);
  // a symmetric edge in G needs a symmetric walk, and H has only one-way arcs
  Instance one_way;
  one_way.semantics = Semantics::Reflexive;
  one_way.H = Digraph(2);
  one_way.H.add_arc(0, 1);
  one_way.H.add_all_loops();
  one_way.G = Digraph(2);
  figures::edge(one_way.G, 0, 1);
  one_way.G.add_all_loops();
  one_way.alpha = {0, 0};
  one_way.beta = {1, 1};
  CHECK_FALSE(all_walks_case(one_way, 0).result.ok);
  CHECK_FALSE(oracle_decide(one_way).has_value());
}

TEST_CASE("rotated pentagon") {
  Instance p = figures::rotated_pentagon();
  CHECK_FALSE(template_admissible(p.H, Semantics::Reflexive).admissible);
  // the directed cycle is tight, so its vertices cannot move one at a time
  // under push-or-pull, while unrestricted single moves rotate it in five steps
  CHECK(find_tight_cycle(p.G, p.alpha));
  CHECK(classify_reflexive(p, 0).tag == WalkCase::Empty);
  CHECK_FALSE(brute::push_or_pull_reachable(p));
  SolveOptions r;
  r.restricted = true;
  Decision d = solve(p, r);
  CHECK(d.answer == Answer::No);
  CHECK(d.restricted);
  auto rh = oracle_decide(p);
  REQUIRE(rh);
  CHECK(rh->moves.size() == 5);
  Instance h1 = p;
  h1.adjacency = Adjacency::Hom1;
  auto hom1 = oracle_decide(h1);
  REQUIRE(hom1);
  CHECK(hom1->moves.size() == 5);
}

TEST_CASE("convert_rh_to_hom1") {
  Instance inst;
  inst.semantics = Semantics::Reflexive;
  inst.H = reflexive_path(3);
  inst.G = Digraph(2);
  inst.G.add_arc(0, 1);
  inst.G.add_all_loops();
  inst.alpha = {0, 0};
  inst.beta = {2, 2};
  RecoloringSequence along{inst.alpha, {{0, 0, 1}, {1, 0, 1}, {0, 1, 2}, {1, 1, 2}}};
  CHECK(convert_rh_to_hom1(inst, along).moves == along.moves);
  int converted = 0;
  for (int t = 0; t < 400; ++t) {
    const char* fam = t % 3 == 0 ? "random" : t % 3 == 1 ? "cycle" : "girth5";
    Instance r = random_instance(family_params(Semantics::Reflexive, fam), 2700 + static_cast<std::uint64_t>(t));
    if (!weakly_connected(r.G) || r.G.n() < 2) continue;
    r.G.add_all_loops();
    Decision d = solve_reflexive(r);
    if (!d.sequence) continue;
    RecoloringSequence h = convert_rh_to_hom1(r, *d.sequence);
    ++converted;
    CHECK(verify_sequence(r, h, Adjacency::Hom1).ok);
    CHECK(h.moves.size() <= 2 * d.sequence->moves.size());
  }
  CHECK(converted > 50);
}

TEST_CASE("solve_reflexive") {
  Instance inst = swap_across_edge();
  Instance same = inst;
  same.beta = same.alpha;
  Decision d = solve_reflexive(same);
  CHECK(d.answer == Answer::Yes);
  REQUIRE(d.sequence);
  CHECK(d.sequence->moves.empty());
  CHECK_THROWS_AS(solve_reflexive(figures::rotated_pentagon()), InputError);
  Instance h1 = inst;
  h1.adjacency = Adjacency::Hom1;
  d = solve_reflexive(h1);
  REQUIRE(d.answer == Answer::Yes);
  CHECK(verify_sequence(h1, *d.sequence, Adjacency::Hom1).ok);
}

TEST_CASE("solve_reflexive agrees with the oracle on cycles and girth-five templates") {
  const char* families[] = {"cycle", "girth5"};
  int yes = 0, total = 0;
  for (int t = 0; t < 120; ++t) {
    Instance inst = random_instance(family_params(Semantics::Reflexive, families[t % 2]), 3100 + static_cast<std::uint64_t>(t));
    inst.adjacency = t % 4 < 2 ? Adjacency::Rh : Adjacency::Hom1;
    SolveOptions o;
    o.oracle_fallback = false;
    Decision d = solve(inst, o);
    bool truth = oracle_decide(inst).has_value();
    ++total;
    yes += truth;
    CHECK((d.answer == Answer::Yes) == truth);
    if (!d.sequence) continue;
    CHECK(verify_sequence(inst, *d.sequence, inst.adjacency).ok);
    if (inst.adjacency == Adjacency::Rh) CHECK(brute::push_or_pull(inst, *d.sequence));
  }
  CHECK(yes > 0);
  CHECK(yes < total);
}

TEST_CASE("vertex traces satisfy the conjugation law along edges") {
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    Instance inst = random_instance(family_params(Semantics::Reflexive, "cycle"), 3500 + static_cast<std::uint64_t>(t));
    SolveOptions o;
    o.oracle_fallback = false;
    Decision d = solve(inst, o);
    if (!d.sequence || d.sequence->moves.empty()) continue;
    std::vector<brute::Vs> trace(inst.G.n());
    for (int v = 0; v < inst.G.n(); ++v) trace[v] = {inst.alpha[v]};
    for (const Move& m : d.sequence->moves) trace[m.vertex].push_back(m.to);
    for (auto [u, v] : inst.G.edges()) {
      ++checked;
      brute::Vs rhs = brute::join(brute::join(brute::Vs{inst.alpha[v], inst.alpha[u]}, trace[u]),
                                  brute::Vs{inst.beta[u], inst.beta[v]});
      CHECK(brute::reduce(trace[v], true) == brute::reduce(rhs, true));
    }
  }
  CHECK(checked > 50);
}
