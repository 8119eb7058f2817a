#include "recolor/digraph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

#include "recolor/walk.hpp"

namespace recolor {

namespace {

void sorted_insert(std::vector<int>& v, int x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) v.insert(it, x);
}

}  // namespace

Digraph::Digraph(int n, std::string name)
    : n_(n), name_(std::move(name)), out_(n), in_(n), nbr_(n) {
  if (n < 0) throw InputError("negative vertex count");
}

bool Digraph::add_arc(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw InputError("endpoint out of range");
  if (has_arc(u, v)) return false;
  sorted_insert(out_[u], v);
  sorted_insert(in_[v], u);
  if (u != v) {
    sorted_insert(nbr_[u], v);
    sorted_insert(nbr_[v], u);
  }
  ++arc_count_;
  return true;
}

void Digraph::add_all_loops() {
  for (int u = 0; u < n_; ++u) add_arc(u, u);
}

bool Digraph::has_arc(int u, int v) const {
  if (u < 0 || u >= n_) return false;
  const auto& o = out_[u];
  return std::binary_search(o.begin(), o.end(), v);
}

std::vector<std::pair<int, int>> Digraph::arcs() const {
  std::vector<std::pair<int, int>> r;
  r.reserve(arc_count_);
  for (int u = 0; u < n_; ++u)
    for (int v : out_[u]) r.emplace_back(u, v);
  return r;
}

std::vector<std::pair<int, int>> Digraph::edges() const {
  std::vector<std::pair<int, int>> r;
  for (int u = 0; u < n_; ++u)
    for (int v : nbr_[u])
      if (u < v) r.emplace_back(u, v);
  return r;
}

bool Digraph::is_reflexive() const {
  for (int u = 0; u < n_; ++u)
    if (!has_loop(u)) return false;
  return true;
}

bool Digraph::is_symmetric() const {
  for (int u = 0; u < n_; ++u)
    for (int v : out_[u])
      if (!has_arc(v, u)) return false;
  return true;
}

bool Digraph::has_any_loop() const {
  for (int u = 0; u < n_; ++u)
    if (has_loop(u)) return true;
  return false;
}

Digraph parse_digraph(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  int stage = 0;  // 0: expect header, 1: expect vertices, 2: body
  Digraph g;
  std::string name;
  bool saw_arc = false;
  auto fail = [&](const std::string& what) {
    throw ParseError(what + ", line " + std::to_string(lineno));
  };
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string word;
    if (!(ls >> word)) continue;
    std::string extra;
    if (stage == 0) {
      if (word != "digraph") fail("expected 'digraph <name>'");
      if (!(ls >> name)) fail("missing graph name");
      if (ls >> extra) fail("trailing text");
      stage = 1;
    } else if (stage == 1) {
      long long n = -1;
      if (word != "vertices" || !(ls >> n)) fail("expected 'vertices <n>'");
      if (ls >> extra) fail("trailing text");
      if (n < 0 || n > 10000000) fail("bad vertex count");
      g = Digraph(static_cast<int>(n), name);
      stage = 2;
    } else if (word == "reflexive") {
      if (ls >> extra) fail("trailing text");
      if (saw_arc) fail("'reflexive' must precede arcs");
      g.add_all_loops();
    } else if (word == "arc") {
      long long u = -1, v = -1;
      if (!(ls >> u >> v)) fail("malformed arc");
      if (ls >> extra) fail("trailing text");
      if (u < 0 || v < 0 || u >= g.n() || v >= g.n()) fail("endpoint out of range");
      saw_arc = true;
      if (!g.add_arc(static_cast<int>(u), static_cast<int>(v))) {
        // loops from a 'reflexive' line may be restated
        if (!(u == v && g.is_reflexive())) fail("duplicate arc");
      }
    } else {
      fail("unknown directive '" + word + "'");
    }
  }
  if (stage < 2) {
    lineno = lineno == 0 ? 1 : lineno;
    fail(stage == 0 ? "missing 'digraph' header" : "missing 'vertices' line");
  }
  return g;
}

std::string format_digraph(const Digraph& g) {
  std::ostringstream os;
  os << "digraph " << (g.name().empty() ? "g" : g.name()) << "\n";
  os << "vertices " << g.n() << "\n";
  for (auto [u, v] : g.arcs()) os << "arc " << u << " " << v << "\n";
  return os.str();
}

bool check_homomorphism(const Digraph& G, const Digraph& H, const Homomorphism& m) {
  if (static_cast<int>(m.size()) != G.n()) throw InputError("mapping length differs from |V(G)|");
  for (int x : m)
    if (x < 0 || x >= H.n()) throw InputError("image out of range");
  for (int u = 0; u < G.n(); ++u)
    for (int v : G.out(u))
      if (!H.has_arc(m[u], m[v])) return false;
  return true;
}

BfsTree bfs_tree(const Digraph& G, int root) {
  BfsTree t;
  t.root = root;
  t.parent.assign(G.n(), -1);
  t.dist.assign(G.n(), -1);
  std::deque<int> queue{root};
  t.parent[root] = root;
  t.dist[root] = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    t.order.push_back(u);
    for (int v : G.nbr(u)) {
      if (t.parent[v] != -1) continue;
      t.parent[v] = u;
      t.dist[v] = t.dist[u] + 1;
      queue.push_back(v);
    }
  }
  return t;
}

Walk tree_walk(const BfsTree& t, int v) {
  if (t.parent[v] == -1) throw InputError("no walk: vertices in different weak components");
  std::vector<int> path;
  for (int x = v; x != t.root; x = t.parent[x]) path.push_back(x);
  path.push_back(t.root);
  std::reverse(path.begin(), path.end());
  return Walk::from_vertices(path);
}

Walk bfs_walk(const Digraph& G, int u, int v) {
  return tree_walk(bfs_tree(G, u), v);
}

std::vector<Walk> fundamental_cycles(const Digraph& G, int q) {
  BfsTree t = bfs_tree(G, q);
  for (int v = 0; v < G.n(); ++v)
    if (t.parent[v] == -1) throw InputError("graph is not weakly connected");
  std::vector<int> pos(G.n());
  for (std::size_t i = 0; i < t.order.size(); ++i) pos[t.order[i]] = static_cast<int>(i);
  std::vector<Walk> cycles;
  // non-tree edges in BFS discovery order
  for (int u : t.order) {
    for (int v : G.nbr(u)) {
      if (t.parent[v] == u || t.parent[u] == v) continue;
      if (pos[v] < pos[u]) continue;
      Walk c = tree_walk(t, u);
      c.edges.push_back({u, v});
      Walk back = invert(tree_walk(t, v));
      c.edges.insert(c.edges.end(), back.edges.begin(), back.edges.end());
      cycles.push_back(std::move(c));
    }
  }
  return cycles;
}

SccResult scc(const Digraph& G, bool count_loops) {
  const int n = G.n();
  SccResult r;
  r.comp.assign(n, -1);
  r.on_closed_walk.assign(n, 0);
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<char> on_stack(n, 0);
  int counter = 0;
  // iterative Tarjan
  struct Frame {
    int v;
    std::size_t next;
  };
  for (int s = 0; s < n; ++s) {
    if (index[s] != -1) continue;
    std::vector<Frame> call{{s, 0}};
    index[s] = low[s] = counter++;
    stack.push_back(s);
    on_stack[s] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto& out = G.out(f.v);
      if (f.next < out.size()) {
        int w = out[f.next++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      int v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<int> component;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          r.comp[w] = static_cast<int>(r.components.size());
          component.push_back(w);
        } while (w != v);
        std::sort(component.begin(), component.end());
        r.components.push_back(std::move(component));
      }
    }
  }
  for (const auto& c : r.components) {
    if (c.size() >= 2) {
      for (int v : c) r.on_closed_walk[v] = 1;
    } else if (count_loops && G.has_loop(c[0])) {
      r.on_closed_walk[c[0]] = 1;
    }
  }
  return r;
}

std::vector<std::vector<int>> weak_components(const Digraph& G) {
  std::vector<int> seen(G.n(), 0);
  std::vector<std::vector<int>> comps;
  for (int s = 0; s < G.n(); ++s) {
    if (seen[s]) continue;
    BfsTree t = bfs_tree(G, s);
    std::vector<int> c = t.order;
    for (int v : c) seen[v] = 1;
    std::sort(c.begin(), c.end());
    comps.push_back(std::move(c));
  }
  return comps;
}

bool weakly_connected(const Digraph& G) {
  return G.n() == 0 || weak_components(G).size() == 1;
}

namespace {

// Orientation choices per edge of the symmetric closure: +1 if a->b exists,
// -1 if b->a exists. Returns all achievable forward-minus-backward sums.
void girth_sums(const Digraph& H, const std::vector<int>& cyc, std::size_t i, int acc,
                std::vector<int>& out) {
  if (i == cyc.size()) {
    out.push_back(acc);
    return;
  }
  int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
  if (H.has_arc(a, b)) girth_sums(H, cyc, i + 1, acc + 1, out);
  if (H.has_arc(b, a)) girth_sums(H, cyc, i + 1, acc - 1, out);
}

bool cycle_with_girth(const Digraph& H, const std::vector<int>& cyc, int girth) {
  for (std::size_t i = 0; i < cyc.size(); ++i)
    if (!H.adjacent(cyc[i], cyc[(i + 1) % cyc.size()])) return false;
  std::vector<int> sums;
  girth_sums(H, cyc, 0, 0, sums);
  for (int s : sums)
    if (std::abs(s) == girth) return true;
  return false;
}

}  // namespace

AdmissibilityReport template_admissible(const Digraph& H, Semantics mode) {
  AdmissibilityReport rep;
  const int n = H.n();
  for (int u = 0; u < n; ++u) {
    if (mode == Semantics::Loopless && H.has_loop(u)) rep.violations.push_back({"loop", {u}});
    if (mode == Semantics::Reflexive && !H.has_loop(u))
      rep.violations.push_back({"missing-loop", {u}});
  }
  // 4-cycles a-b-c-d-a with a the smallest vertex and b < d to list each once
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = a + 1; c < n; ++c)
        for (int d = b + 1; d < n; ++d) {
          if (c == b || c == d) continue;
          std::vector<int> cyc{a, b, c, d};
          if (cycle_with_girth(H, cyc, 0)) rep.violations.push_back({"4-cycle", cyc});
        }
  if (mode == Semantics::Reflexive) {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c) {
          std::vector<int> cyc{a, b, c};
          if (cycle_with_girth(H, cyc, 1)) rep.violations.push_back({"triangle", cyc});
        }
  }
  rep.admissible = rep.violations.empty();
  return rep;
}

bool hom1_step_ok(const Digraph& G, const Digraph& H, int v, int from, int to) {
  // Arcs away from v already hold in both maps; only a loop at v couples the
  // old and the new colour. Adjacency of the Hom-graph is read undirected.
  if (!G.has_loop(v)) return true;
  return H.adjacent(from, to);
}

VerifyResult verify_sequence(const Instance& inst, const RecoloringSequence& seq,
                             Adjacency adjacency) {
  const Digraph& G = inst.G;
  const Digraph& H = inst.H;
  VerifyResult res;
  auto fail = [&](std::size_t i, std::string why) {
    res.ok = false;
    res.failed_at = i;
    res.reason = std::move(why);
    return res;
  };
  if (seq.start != inst.alpha) return fail(0, "start differs from alpha");
  Homomorphism cur = seq.start;
  for (std::size_t i = 0; i < seq.moves.size(); ++i) {
    const Move& m = seq.moves[i];
    if (m.vertex < 0 || m.vertex >= G.n() || m.to < 0 || m.to >= H.n())
      return fail(i, "move out of range");
    if (cur[m.vertex] != m.from) return fail(i, "move does not start at current colour");
    if (m.from == m.to) return fail(i, "move does not change the colour");
    int v = m.vertex;
    for (int w : G.out(v)) {
      int cw = w == v ? m.to : cur[w];
      if (!H.has_arc(m.to, cw)) return fail(i, "arc violated after move");
    }
    for (int w : G.in(v)) {
      int cw = w == v ? m.to : cur[w];
      if (!H.has_arc(cw, m.to)) return fail(i, "arc violated after move");
    }
    if (adjacency == Adjacency::Hom1 && !hom1_step_ok(G, H, v, m.from, m.to))
      return fail(i, "not a Hom1 step");
    cur[v] = m.to;
  }
  if (cur != inst.beta) return fail(seq.moves.size(), "final state differs from beta");
  return res;
}

}  // namespace recolor
