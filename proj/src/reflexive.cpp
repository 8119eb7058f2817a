#include "recolor/reflexive.hpp"

#include <algorithm>
#include <deque>
#include <queue>

#include "recolor/oracle.hpp"

namespace recolor {

TightDigraph build_tight_digraph(const Digraph& G, const Homomorphism& alpha) {
  const int n = G.n();
  std::vector<int> offset(n + 1, 0);
  for (int u = 0; u < n; ++u) offset[u + 1] = offset[u] + static_cast<int>(G.nbr(u).size());
  // id of oriented edge u->nbr(u)[k] is offset[u] + k, or -1 when alpha(u) == alpha(v)
  std::vector<int> id(offset[n], -1);
  TightDigraph td;
  for (int u = 0; u < n; ++u) {
    const auto& nu = G.nbr(u);
    for (std::size_t k = 0; k < nu.size(); ++k) {
      if (alpha[u] == alpha[nu[k]]) continue;
      id[offset[u] + k] = static_cast<int>(td.label.size());
      td.label.push_back({u, nu[k]});
    }
  }
  td.D = Digraph(static_cast<int>(td.label.size()), "tight");
  for (int u = 0; u < n; ++u) {
    const auto& nu = G.nbr(u);
    for (std::size_t k = 0; k < nu.size(); ++k) {
      int x = id[offset[u] + k];
      if (x < 0) continue;
      int v = nu[k];
      const auto& nv = G.nbr(v);
      for (std::size_t j = 0; j < nv.size(); ++j) {
        int y = id[offset[v] + j];
        if (y < 0 || alpha[nv[j]] == alpha[u]) continue;
        td.D.add_arc(x, y);
      }
    }
  }
  return td;
}

std::optional<TightCycle> find_tight_cycle(const Digraph& G, const Homomorphism& alpha) {
  TightDigraph td = build_tight_digraph(G, alpha);
  SccResult s = scc(td.D, false);
  for (const auto& comp : s.components) {
    if (comp.size() < 2) continue;
    // BFS inside the component from x back to x
    int x = comp.front();
    std::vector<int> prev(td.D.n(), -2);
    std::deque<int> queue{x};
    prev[x] = -1;
    int last = -1;
    while (!queue.empty() && last < 0) {
      int a = queue.front();
      queue.pop_front();
      for (int b : td.D.out(a)) {
        if (s.comp[b] != s.comp[x]) continue;
        if (b == x) {
          last = a;
          break;
        }
        if (prev[b] != -2) continue;
        prev[b] = a;
        queue.push_back(b);
      }
    }
    std::vector<int> chain;
    for (int a = last; a != -1; a = prev[a]) chain.push_back(a);
    std::reverse(chain.begin(), chain.end());
    TightCycle tc;
    tc.cycle = Walk(td.label[chain.front()].from);
    for (int a : chain) tc.cycle.edges.push_back(td.label[a]);
    tc.witness = image_walk(alpha, tc.cycle);
    return tc;
  }
  return std::nullopt;
}

std::vector<int> frozen_vertices(const Digraph& G, const Homomorphism& alpha) {
  TightDigraph td = build_tight_digraph(G, alpha);
  SccResult s = scc(td.D, false);
  std::vector<char> mark(G.n(), 0);
  for (const auto& comp : s.components) {
    if (comp.size() < 2) continue;
    for (int a : comp) mark[td.label[a].from] = mark[td.label[a].to] = 1;
  }
  std::vector<int> out;
  for (int v = 0; v < G.n(); ++v)
    if (mark[v]) out.push_back(v);
  return out;
}

bool frozen_moved(const Instance& inst, const std::vector<int>& frozen) {
  for (int f : frozen)
    if (inst.alpha[f] != inst.beta[f]) return true;
  return false;
}

Walk pinned_walk(const Instance& inst, int f, int q) {
  Walk W = bfs_walk(inst.G, f, q);
  Walk a = invert(image_walk(inst.alpha, W));
  Walk b = image_walk(inst.beta, W);
  return compose(a, b, inst.reflexive());
}

std::vector<Walk> vertex_walks(const Walk& Q, const Instance& inst, int q) {
  return generate_all_vertex_walks(Q, inst, bfs_tree(inst.G, q));
}

bool realizable_characterization(const Walk& Q, const Instance& inst, int q) {
  if (!is_topologically_valid(Q, inst, q)) return false;
  std::vector<int> frozen = frozen_vertices(inst.G, inst.alpha);
  if (frozen.empty()) return true;
  std::vector<Walk> S = vertex_walks(Q, inst, q);
  for (int f : frozen)
    if (!S[f].empty()) return false;
  return true;
}

namespace {

SequenceResult finish(const Instance& inst, SequenceResult r) {
  if (!r.ok) return r;
  VerifyResult v = verify_sequence(inst, r.seq, Adjacency::Rh);
  if (!v.ok) {
    r.ok = false;
    r.reason = "replay failed at move " + std::to_string(v.failed_at) + ": " + v.reason;
  }
  return r;
}

}  // namespace

SequenceResult build_dag_sequence(const Walk& Q, const Instance& inst, int q) {
  const Digraph& G = inst.G;
  const int n = G.n();
  std::vector<Walk> S = vertex_walks(Q, inst, q);
  std::vector<std::vector<int>> succ(n);
  std::vector<int> indeg(n, 0);
  for (auto [u, v] : G.edges()) {
    if (S[u].empty() || S[v].empty()) continue;
    int a0 = S[u].edges[0].from, a1 = S[u].edges[0].to;
    int b0 = S[v].edges[0].from, b1 = S[v].edges[0].to;
    bool ab = a1 == b0, ba = b1 == a0;
    if (ab && !ba) {
      succ[u].push_back(v);
      ++indeg[v];
    } else if (!ab && ba) {
      succ[v].push_back(u);
      ++indeg[u];
    }
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push(v);
  std::vector<int> order;
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int w : succ[v])
      if (--indeg[w] == 0) ready.push(w);
  }
  SequenceResult r;
  r.seq.start = inst.alpha;
  if (static_cast<int>(order.size()) != n) {
    r.reason = "precedence cycle";
    for (int v = 0; v < n; ++v)
      if (indeg[v] > 0) r.obstruction.push_back(v);
    return r;
  }
  std::vector<std::size_t> pos(n, 0);
  bool moved = true;
  while (moved) {
    moved = false;
    for (int v : order) {
      if (pos[v] == S[v].size()) continue;
      const Edge& e = S[v].edges[pos[v]++];
      r.seq.moves.push_back({v, e.from, e.to});
      moved = true;
    }
  }
  r.ok = true;
  return finish(inst, std::move(r));
}

SequenceResult move_forward_walks(const Instance& inst, const std::vector<Walk>& S) {
  const Digraph& G = inst.G;
  const Digraph& H = inst.H;
  const int n = G.n();
  std::vector<std::vector<int>> col(n);
  for (int v = 0; v < n; ++v) col[v] = S[v].vertices();
  std::vector<std::size_t> pos(n, 0);
  auto finished = [&](int v) { return pos[v] + 1 >= col[v].size(); };
  auto color = [&](int v) { return col[v][pos[v]]; };
  // x must move forward before its neighbour y
  auto less = [&](int x, int y) {
    if (finished(x)) return false;
    int ai = col[x][pos[x]], an = col[x][pos[x] + 1];
    int cy = color(y);
    // neighbours swapping across one edge may go in either order
    if (cy == an) return finished(y) || col[y][pos[y] + 1] != ai;
    if (cy != ai) return false;
    if (G.has_arc(x, y) && !H.has_arc(ai, an)) return true;
    if (G.has_arc(y, x) && !H.has_arc(an, ai)) return true;
    return false;
  };
  // rev[x][k]: index of x in nbr(nbr(x)[k])
  std::vector<std::vector<int>> rev(n), lt(n);
  std::vector<int> b(n, 0);
  for (int x = 0; x < n; ++x) {
    const auto& nx = G.nbr(x);
    rev[x].resize(nx.size());
    lt[x].resize(nx.size());
    for (std::size_t k = 0; k < nx.size(); ++k) {
      const auto& ny = G.nbr(nx[k]);
      rev[x][k] = static_cast<int>(std::lower_bound(ny.begin(), ny.end(), x) - ny.begin());
      lt[x][k] = less(x, nx[k]);
      if (lt[x][k]) ++b[nx[k]];
    }
  }
  std::deque<int> M;
  std::vector<char> queued(n, 0);
  auto offer = [&](int v) {
    if (!queued[v] && b[v] == 0 && !finished(v)) {
      queued[v] = 1;
      M.push_back(v);
    }
  };
  for (int v = 0; v < n; ++v) offer(v);
  SequenceResult r;
  r.seq.start = inst.alpha;
  while (!M.empty()) {
    int x = M.front();
    M.pop_front();
    queued[x] = 0;
    if (b[x] != 0 || finished(x)) continue;
    r.seq.moves.push_back({x, col[x][pos[x]], col[x][pos[x] + 1]});
    ++pos[x];
    const auto& nx = G.nbr(x);
    for (std::size_t k = 0; k < nx.size(); ++k) {
      int y = nx[k];
      int now = less(x, y);
      if (now != lt[x][k]) {
        b[y] += now ? 1 : -1;
        lt[x][k] = now;
      }
      int& back = lt[y][rev[x][k]];
      int then = less(y, x);
      if (then != back) {
        b[x] += then ? 1 : -1;
        back = then;
      }
      offer(y);
    }
    offer(x);
  }
  int stuck = -1;
  for (int v = 0; v < n && stuck < 0; ++v)
    if (!finished(v)) stuck = v;
  if (stuck >= 0) {
    // every unfinished vertex has a blocker; follow blockers until one repeats
    std::vector<int> seen(n, -1), path;
    int x = stuck;
    while (seen[x] < 0) {
      seen[x] = static_cast<int>(path.size());
      path.push_back(x);
      const auto& nx = G.nbr(x);
      int next = -1;
      for (std::size_t k = 0; k < nx.size() && next < 0; ++k)
        if (lt[nx[k]][rev[x][k]]) next = nx[k];
      if (next < 0) break;
      x = next;
    }
    if (seen[x] >= 0) {
      // path holds x_0 > x_1 > ...; report the cycle in "<" order
      r.obstruction.assign(path.begin() + seen[x], path.end());
      std::reverse(r.obstruction.begin(), r.obstruction.end());
    }
    r.reason = "move forward blocked";
    return r;
  }
  r.ok = true;
  return finish(inst, std::move(r));
}

SequenceResult move_forward(const Walk& Q, const Instance& inst, int q) {
  return move_forward_walks(inst, vertex_walks(Q, inst, q));
}

WalkClassification classify_reflexive(const Instance& inst, int q) {
  if (!inst.G.is_reflexive()) throw InputError("classify_reflexive needs a reflexive G");
  std::vector<int> frozen = frozen_vertices(inst.G, inst.alpha);
  if (frozen.empty()) return classify_valid_walks(inst, q);
  WalkClassification wc;
  wc.from = inst.alpha[q];
  wc.to = inst.beta[q];
  if (frozen_moved(inst, frozen)) return wc;
  Walk Q = pinned_walk(inst, frozen.front(), q);
  if (realizable_characterization(Q, inst, q)) {
    wc.tag = WalkCase::Single;
    wc.Q = Q;
  }
  return wc;
}

RnpBound rnp_bound(const Walk& R, const Walk& P, int n_vertices) {
  RnpBound b;
  CyclicDecomposition d = cyclic_reduce(reduce(R));
  long r0 = static_cast<long>(d.core.size());
  if (r0 == 0) return b;
  auto ceil_div = [](long x, long y) { return (x + y - 1) / y; };
  b.a0 = ceil_div(n_vertices, r0);
  b.b0 = ceil_div(static_cast<long>(P.size()) + n_vertices, r0);
  b.n0 = b.a0 + b.b0;
  b.N = b.n0 + 2 * b.a0;
  return b;
}

std::vector<long> rnp_order(long N) {
  std::vector<long> out{0};
  for (long m = 1; m <= N; ++m) {
    out.push_back(-m);
    out.push_back(m);
  }
  return out;
}

RnpResult bounded_rnp_search(const Walk& R, const Walk& P, const Instance& inst, int q) {
  RnpResult out;
  out.bound = rnp_bound(R, P, inst.G.n());
  for (long n : rnp_order(out.bound.N)) {
    Walk Rn = power(R, n, inst.reflexive());
    Walk Q = compose(Rn, P, inst.reflexive());
    SequenceResult r = move_forward(Q, inst, q);
    if (r.ok) {
      out.result = std::move(r);
      out.n = n;
      return out;
    }
    out.result = std::move(r);
  }
  out.result.ok = false;
  out.result.reason = "no R^n P with |n| <= N is realizable";
  return out;
}

namespace {

// Shortest walk from s to t using symmetric arcs only, if symmetric_only.
std::optional<Walk> host_walk(const Digraph& H, int s, int t, bool symmetric_only) {
  std::vector<int> prev(H.n(), -2);
  std::deque<int> queue{s};
  prev[s] = -1;
  while (!queue.empty()) {
    int a = queue.front();
    queue.pop_front();
    if (a == t) break;
    for (int b : H.nbr(a)) {
      if (prev[b] != -2) continue;
      if (symmetric_only && !H.symmetric_edge(a, b)) continue;
      prev[b] = a;
      queue.push_back(b);
    }
  }
  if (prev[t] == -2) return std::nullopt;
  std::vector<int> path;
  for (int a = t; a != -1; a = prev[a]) path.push_back(a);
  std::reverse(path.begin(), path.end());
  return Walk::from_vertices(path);
}

}  // namespace

AllWalksResult all_walks_case(const Instance& inst, int q) {
  AllWalksResult out;
  const Digraph& G = inst.G;
  SccResult s = scc(G, false);
  std::vector<int> vprime;
  for (int v = 0; v < G.n(); ++v)
    if (s.on_closed_walk[v]) vprime.push_back(v);
  out.transcript.push_back("closed-walk vertices " + std::to_string(vprime.size()));
  if (vprime.empty()) {
    auto Q = host_walk(inst.H, inst.alpha[q], inst.beta[q], false);
    if (!Q) {
      out.result.reason = "no walk in H";
      return out;
    }
    out.transcript.push_back("Q " + format_walk(*Q));
    out.result = move_forward(*Q, inst, q);
    return out;
  }
  int q0 = vprime.front();
  BfsTree t = bfs_tree(G, q0);
  std::vector<Walk> walks(G.n());
  for (int v : vprime) walks[v] = tree_walk(t, v);
  SymFilterResult f = symmetric_filter(inst, q0, vprime, walks);
  out.transcript.push_back("q0 " + std::to_string(q0));
  switch (f.tag) {
    case SymCase::Empty:
      out.transcript.push_back("symmetric EMPTY");
      out.result.reason = "no walk generates symmetric walks";
      return out;
    case SymCase::Single:
      out.transcript.push_back("symmetric SINGLE");
      out.transcript.push_back("Q " + format_walk(f.Q));
      out.result = move_forward(f.Q, inst, q0);
      return out;
    case SymCase::AllSymmetric: {
      out.transcript.push_back("symmetric ALL");
      auto Q = host_walk(inst.H, inst.alpha[q0], inst.beta[q0], true);
      if (!Q) {
        out.result.reason = "no symmetric walk in H";
        return out;
      }
      out.transcript.push_back("Q " + format_walk(*Q));
      out.result = move_forward(*Q, inst, q0);
      out.symmetric_candidate_failed = !out.result.ok;
      return out;
    }
  }
  return out;
}

RecoloringSequence convert_rh_to_hom1(const Instance& inst, const RecoloringSequence& seq) {
  const Digraph& G = inst.G;
  const Digraph& H = inst.H;
  if (!H.is_reflexive()) throw InputError("hom1 conversion needs a reflexive template");
  RecoloringSequence out;
  out.start = seq.start;
  Homomorphism cur = seq.start;
  auto fits = [&](int v, int c) {
    for (int w : G.out(v))
      if (!H.has_arc(c, w == v ? c : cur[w])) return false;
    for (int w : G.in(v))
      if (!H.has_arc(w == v ? c : cur[w], c)) return false;
    return true;
  };
  for (const Move& m : seq.moves) {
    if (hom1_step_ok(G, H, m.vertex, m.from, m.to)) {
      out.moves.push_back(m);
      cur[m.vertex] = m.to;
      continue;
    }
    int mid = -1;
    for (int h = 0; h < H.n() && mid < 0; ++h) {
      if (h == m.from || h == m.to) continue;
      if (H.adjacent(m.from, h) && H.adjacent(h, m.to) && fits(m.vertex, h)) mid = h;
    }
    if (mid < 0) throw InputError("move cannot be split through a common neighbour");
    out.moves.push_back({m.vertex, m.from, mid});
    out.moves.push_back({m.vertex, mid, m.to});
    cur[m.vertex] = m.to;
  }
  return out;
}

bool push_or_pull(const Instance& inst, const RecoloringSequence& seq) {
  Homomorphism cur = seq.start;
  for (const Move& m : seq.moves) {
    for (int w : inst.G.nbr(m.vertex))
      if (cur[w] != m.from && cur[w] != m.to) return false;
    cur[m.vertex] = m.to;
  }
  return true;
}

namespace {

Decision solve_reflexive_connected(const Instance& orig, const SolveOptions& opts) {
  Instance inst = orig;
  inst.G.add_all_loops();
  inst.adjacency = Adjacency::Rh;
  const int q = 0;
  Decision d;
  d.transcript.push_back("q " + std::to_string(q));
  WalkClassification wc = classify_reflexive(inst, q);
  d.transcript.push_back(std::string("case ") + case_name(wc.tag));
  SequenceResult r;
  switch (wc.tag) {
    case WalkCase::Empty:
      return d;
    case WalkCase::Single:
      d.transcript.push_back("Q " + format_walk(wc.Q));
      r = move_forward(wc.Q, inst, q);
      break;
    case WalkCase::PowerCoset: {
      d.transcript.push_back("R " + format_walk(wc.R));
      d.transcript.push_back("P " + format_walk(wc.P));
      RnpResult rr = bounded_rnp_search(wc.R, wc.P, inst, q);
      d.transcript.push_back("N " + std::to_string(rr.bound.N));
      if (rr.result.ok) d.transcript.push_back("n " + std::to_string(rr.n));
      r = std::move(rr.result);
      break;
    }
    case WalkCase::All: {
      AllWalksResult ar = all_walks_case(inst, q);
      d.transcript.insert(d.transcript.end(), ar.transcript.begin(), ar.transcript.end());
      r = std::move(ar.result);
      if (ar.symmetric_candidate_failed && opts.oracle_fallback &&
          within_cap(inst.G.n(), inst.H.n(), opts.cap)) {
        d.transcript.push_back("fallback oracle");
        d.used_fallback = true;
        auto seq = oracle_decide(inst, opts.cap);
        if (seq) {
          d.answer = Answer::Yes;
          d.sequence = std::move(*seq);
        }
        return d;
      }
      break;
    }
  }
  if (r.ok) {
    d.answer = Answer::Yes;
    d.sequence = std::move(r.seq);
  } else if (!r.reason.empty()) {
    d.transcript.push_back("fail " + r.reason);
  }
  return d;
}

}  // namespace

Decision solve_reflexive(const Instance& inst, const SolveOptions& opts) {
  if (inst.semantics != Semantics::Reflexive) throw InputError("solve_reflexive needs reflexive semantics");
  if (!inst.H.is_reflexive()) throw InputError("template is not reflexive");
  bool admissible = template_admissible(inst.H, Semantics::Reflexive).admissible;
  if (!admissible && !opts.restricted)
    throw InputError("template is not admissible; use restricted mode");
  Decision d = solve_by_components(inst, [&](const Instance& sub) {
    return solve_reflexive_connected(sub, opts);
  });
  d.restricted = !admissible;
  if (d.answer == Answer::Yes && inst.adjacency == Adjacency::Hom1)
    d.sequence = convert_rh_to_hom1(inst, *d.sequence);
  return d;
}

}  // namespace recolor
