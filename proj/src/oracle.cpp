#include "recolor/oracle.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <unordered_map>

namespace recolor {

bool within_cap(int n_g, int n_h, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (int i = 0; i < n_g; ++i) {
    if (n_h != 0 && total > cap / static_cast<std::uint64_t>(n_h)) return false;
    total *= static_cast<std::uint64_t>(n_h);
  }
  return total <= cap;
}

namespace {

std::vector<int> bfs_order(const Digraph& G) {
  std::vector<int> order;
  std::vector<char> seen(G.n(), 0);
  for (int s = 0; s < G.n(); ++s) {
    if (seen[s]) continue;
    BfsTree t = bfs_tree(G, s);
    for (int v : t.order) seen[v] = 1;
    order.insert(order.end(), t.order.begin(), t.order.end());
  }
  return order;
}

// Colour c at v is consistent with every assigned vertex (assigned[w] != 0).
bool consistent(const Digraph& G, const Digraph& H, const Homomorphism& m,
                const std::vector<char>& assigned, int v, int c) {
  if (G.has_loop(v) && !H.has_loop(c)) return false;
  for (int w : G.out(v))
    if (w != v && assigned[w] && !H.has_arc(c, m[w])) return false;
  for (int w : G.in(v))
    if (w != v && assigned[w] && !H.has_arc(m[w], c)) return false;
  return true;
}

// Recolouring v to c keeps a homomorphism, and is a Hom1 step when asked.
bool move_ok(const Instance& inst, const Homomorphism& cur, int v, int c) {
  const Digraph& G = inst.G;
  const Digraph& H = inst.H;
  if (G.has_loop(v) && !H.has_loop(c)) return false;
  for (int w : G.out(v))
    if (w != v && !H.has_arc(c, cur[w])) return false;
  for (int w : G.in(v))
    if (w != v && !H.has_arc(cur[w], c)) return false;
  if (inst.adjacency == Adjacency::Hom1 && !hom1_step_ok(G, H, v, cur[v], c)) return false;
  return true;
}

std::uint64_t encode(const Homomorphism& m, int base) {
  std::uint64_t k = 0;
  for (auto it = m.rbegin(); it != m.rend(); ++it) k = k * base + static_cast<std::uint64_t>(*it);
  return k;
}

void decode(std::uint64_t k, int base, Homomorphism& m) {
  for (auto& x : m) {
    x = static_cast<int>(k % base);
    k /= base;
  }
}

}  // namespace

std::vector<Homomorphism> enumerate_homs(const Digraph& G, const Digraph& H, std::uint64_t cap) {
  if (!within_cap(G.n(), H.n(), cap)) throw OracleScaleError("instance exceeds the oracle cap");
  std::vector<Homomorphism> out;
  std::vector<int> order = bfs_order(G);
  Homomorphism m(G.n(), 0);
  std::vector<char> assigned(G.n(), 0);
  const int n = G.n();
  std::vector<int> next(n + 1, 0);
  int depth = 0;
  if (n == 0) return {m};
  // iterative backtracking; next[d] is the next colour to try at depth d
  while (depth >= 0) {
    if (depth == n) {
      out.push_back(m);
      --depth;
      continue;
    }
    int v = order[depth];
    assigned[v] = 0;
    bool placed = false;
    while (next[depth] < H.n()) {
      int c = next[depth]++;
      if (consistent(G, H, m, assigned, v, c)) {
        m[v] = c;
        assigned[v] = 1;
        placed = true;
        break;
      }
    }
    if (placed) {
      ++depth;
      if (depth < n) next[depth] = 0;
    } else {
      next[depth] = 0;
      --depth;
    }
  }
  return out;
}

std::optional<RecoloringSequence> oracle_decide(const Instance& inst, std::uint64_t cap) {
  const int n = inst.G.n(), base = inst.H.n();
  if (!within_cap(n, base, cap)) throw OracleScaleError("instance exceeds the oracle cap");
  RecoloringSequence seq;
  seq.start = inst.alpha;
  if (inst.alpha == inst.beta) return seq;
  struct Link {
    std::uint64_t parent;
    Move move;
  };
  std::unordered_map<std::uint64_t, Link> seen;
  const std::uint64_t source = encode(inst.alpha, base), target = encode(inst.beta, base);
  seen.emplace(source, Link{source, {}});
  std::deque<std::uint64_t> queue{source};
  Homomorphism cur(n);
  bool found = false;
  while (!queue.empty() && !found) {
    std::uint64_t k = queue.front();
    queue.pop_front();
    decode(k, base, cur);
    for (int v = 0; v < n && !found; ++v) {
      int old = cur[v];
      for (int c = 0; c < base; ++c) {
        if (c == old || !move_ok(inst, cur, v, c)) continue;
        cur[v] = c;
        std::uint64_t k2 = encode(cur, base);
        cur[v] = old;
        if (seen.count(k2)) continue;
        seen.emplace(k2, Link{k, {v, old, c}});
        if (k2 == target) {
          found = true;
          break;
        }
        queue.push_back(k2);
      }
    }
  }
  if (!found) return std::nullopt;
  for (std::uint64_t k = target; k != source;) {
    const Link& l = seen.at(k);
    seq.moves.push_back(l.move);
    k = l.parent;
  }
  std::reverse(seq.moves.begin(), seq.moves.end());
  return seq;
}

namespace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

bool chance(Rng& rng, double p) { return static_cast<double>(rng() % 1'000'000) < p * 1e6; }

void add_oriented(Digraph& g, int u, int v, Rng& rng, bool allow_both) {
  int r = uniform(rng, 0, allow_both ? 2 : 1);
  if (r != 1) g.add_arc(u, v);
  if (r != 0) g.add_arc(v, u);
}

// Random tree plus extra edges, each oriented at random.
Digraph random_connected(int n, double extra, Rng& rng, bool allow_both) {
  Digraph g(n);
  for (int v = 1; v < n; ++v) add_oriented(g, uniform(rng, 0, v - 1), v, rng, allow_both);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!g.adjacent(u, v) && chance(rng, extra)) add_oriented(g, u, v, rng, allow_both);
  return g;
}

int distance(const Digraph& g, int s, int t) {
  BfsTree tr = bfs_tree(g, s);
  return tr.parent[t] == -1 ? -1 : tr.dist[t];
}

Digraph random_template(const RandomParams& p, Rng& rng) {
  for (int attempt = 0; attempt < p.budget; ++attempt) {
    int n = uniform(rng, p.h_min, p.h_max);
    Digraph h(n);
    if (p.semantics == Semantics::Loopless) {
      if (p.family == "k3") {
        h = Digraph(3);
        for (int u = 0; u < 3; ++u)
          for (int v = 0; v < 3; ++v)
            if (u != v) h.add_arc(u, v);
      } else if (p.family == "tree") {
        for (int v = 1; v < n; ++v) add_oriented(h, uniform(rng, 0, v - 1), v, rng, false);
      } else {
        h = random_connected(n, p.arc_prob, rng, true);
      }
    } else {
      if (p.family == "cycle") {
        n = std::max(n, 3);
        h = Digraph(n);
        for (int v = 0; v < n; ++v) add_oriented(h, v, (v + 1) % n, rng, true);
      } else if (p.family == "girth5") {
        // a cycle of length 5..n with pendant trees, then chords that keep girth >= 5
        n = std::max(n, 5);
        h = Digraph(n);
        int len = uniform(rng, 5, n);
        for (int v = 0; v < len; ++v) {
          h.add_arc(v, (v + 1) % len);
          h.add_arc((v + 1) % len, v);
        }
        for (int v = len; v < n; ++v) {
          int u = uniform(rng, 0, v - 1);
          h.add_arc(u, v);
          h.add_arc(v, u);
        }
        for (int u = 0; u < n; ++u)
          for (int v = u + 1; v < n; ++v)
            if (!h.adjacent(u, v) && distance(h, u, v) >= 4 && chance(rng, p.arc_prob)) {
              h.add_arc(u, v);
              h.add_arc(v, u);
            }
      } else {
        h = random_connected(n, p.arc_prob, rng, true);
      }
      h.add_all_loops();
    }
    h.set_name(p.family);
    if (template_admissible(h, p.semantics).admissible) return h;
  }
  throw GenerationError("no admissible template within the rejection budget");
}

// Random homomorphism by randomized backtracking, or nullopt. Entries of
// `fixed` that are not -1 are kept.
std::optional<Homomorphism> random_hom(const Digraph& G, const Digraph& H, Rng& rng,
                                       const std::vector<int>& fixed = {}) {
  std::vector<int> order = bfs_order(G);
  const int n = G.n();
  Homomorphism m(n, 0);
  std::vector<char> assigned(n, 0);
  std::vector<std::vector<int>> choices(n);
  std::vector<std::size_t> next(n, 0);
  int depth = 0;
  auto fresh = [&](int d) {
    choices[d].resize(H.n());
    std::iota(choices[d].begin(), choices[d].end(), 0);
    for (int i = H.n() - 1; i > 0; --i) std::swap(choices[d][i], choices[d][uniform(rng, 0, i)]);
    if (!fixed.empty() && fixed[order[d]] >= 0) choices[d] = {fixed[order[d]]};
    next[d] = 0;
  };
  if (n == 0) return m;
  fresh(0);
  while (depth >= 0) {
    if (depth == n) return m;
    int v = order[depth];
    assigned[v] = 0;
    bool placed = false;
    while (next[depth] < choices[depth].size()) {
      int c = choices[depth][next[depth]++];
      if (consistent(G, H, m, assigned, v, c)) {
        m[v] = c;
        assigned[v] = 1;
        placed = true;
        break;
      }
    }
    if (placed) {
      ++depth;
      if (depth < n) fresh(depth);
    } else {
      --depth;
    }
  }
  return std::nullopt;
}

// Vertices of a shortest cycle of the symmetric closure (loops ignored), or empty.
std::vector<int> shortest_cycle(const Digraph& H) {
  std::vector<int> best;
  for (int s = 0; s < H.n(); ++s) {
    BfsTree t = bfs_tree(H, s);
    for (auto [u, v] : H.edges()) {
      if (t.parent[u] == -1 || t.parent[u] == v || t.parent[v] == u) continue;
      std::vector<int> pu, pv;
      for (int x = u;; x = t.parent[x]) {
        pu.push_back(x);
        if (x == s) break;
      }
      for (int x = v;; x = t.parent[x]) {
        pv.push_back(x);
        if (x == s) break;
      }
      // only cycles whose two tree paths meet at s alone
      if (pu.size() > 1 && pv.size() > 1 && pu[pu.size() - 2] == pv[pv.size() - 2]) continue;
      std::vector<int> cyc(pu.rbegin(), pu.rend());
      cyc.insert(cyc.end(), pv.begin(), pv.end() - 1);
      if (best.empty() || cyc.size() < best.size()) best = cyc;
    }
  }
  return best;
}

// G containing a cycle mapped once around the cycle `cyc` of H, with the
// images of the cycle vertices returned in `fixed`.
Digraph wrapped_instance(const RandomParams& p, const Digraph& H, const std::vector<int>& cyc, Rng& rng,
                         std::vector<int>& fixed) {
  const int len = static_cast<int>(cyc.size());
  // a stutter repeats one colour along the G-cycle, so the cycle is not tight
  const int glen = len + (p.semantics == Semantics::Reflexive && chance(rng, p.stutter_prob) ? 1 : 0);
  const int n = std::max(glen, uniform(rng, p.g_min, p.g_max));
  Digraph g(n);
  int shift = uniform(rng, 0, len - 1);
  bool flip = chance(rng, 0.5);
  fixed.assign(n, -1);
  for (int i = 0; i < len; ++i) fixed[i] = cyc[(flip ? shift + len - i : shift + i) % len];
  if (glen > len) fixed[len] = fixed[len - 1];
  for (int i = 0; i < glen; ++i) {
    int j = (i + 1) % glen, a = fixed[i], b = fixed[j];
    bool fw = H.has_arc(a, b), bw = H.has_arc(b, a);
    if (fw && bw) {
      add_oriented(g, i, j, rng, true);
    } else {
      if (fw) g.add_arc(i, j);
      if (bw) g.add_arc(j, i);
    }
  }
  for (int v = glen; v < n; ++v) add_oriented(g, uniform(rng, 0, v - 1), v, rng, true);
  return g;
}

}  // namespace

RandomParams family_params(Semantics semantics, const std::string& family) {
  RandomParams p;
  p.semantics = semantics;
  p.family = family;
  bool known = semantics == Semantics::Loopless ? (family == "random" || family == "tree" || family == "k3")
                                                : (family == "random" || family == "cycle" || family == "girth5");
  if (!known) throw InputError("unknown family " + family);
  if (family == "girth5") {
    p.h_min = 5;
    p.h_max = 7;
    p.wrap_prob = 0.5;
    p.stutter_prob = 0.5;
  } else if (family == "cycle") {
    p.wrap_prob = 0.5;
    p.stutter_prob = 0.5;
  }
  return p;
}

Instance random_instance(const RandomParams& p, std::uint64_t seed) {
  Rng rng(seed);
  Instance inst;
  inst.semantics = p.semantics;
  inst.H = random_template(p, rng);
  std::vector<int> cyc = shortest_cycle(inst.H);
  const bool wrap = !cyc.empty() && chance(rng, p.wrap_prob);
  for (int attempt = 0; attempt < p.budget; ++attempt) {
    std::vector<int> fixed;
    Digraph g = wrap ? wrapped_instance(p, inst.H, cyc, rng, fixed)
                     : random_connected(uniform(rng, p.g_min, p.g_max), p.extra_edge_prob, rng, true);
    if (p.semantics == Semantics::Reflexive && chance(rng, 0.5)) g.add_all_loops();
    g.set_name("g");
    auto a = random_hom(g, inst.H, rng, fixed);
    if (!a) continue;
    inst.G = g;
    inst.alpha = *a;
    break;
  }
  if (inst.alpha.empty()) throw GenerationError("no homomorphism within the rejection budget");
  if (chance(rng, p.connected_bias)) {
    Homomorphism cur = inst.alpha;
    for (int step = 0; step < p.walk_steps; ++step) {
      std::vector<std::pair<int, int>> moves;
      for (int v = 0; v < inst.G.n(); ++v)
        for (int c = 0; c < inst.H.n(); ++c)
          if (c != cur[v] && move_ok(inst, cur, v, c)) moves.push_back({v, c});
      if (moves.empty()) break;
      auto [v, c] = moves[uniform(rng, 0, static_cast<int>(moves.size()) - 1)];
      cur[v] = c;
    }
    inst.beta = cur;
  } else {
    inst.beta = *random_hom(inst.G, inst.H, rng);
  }
  return inst;
}

}  // namespace recolor
