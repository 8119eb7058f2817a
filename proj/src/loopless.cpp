#include "recolor/loopless.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "recolor/reflexive.hpp"

namespace recolor {

const char* type_name(VertexType t) {
  switch (t) {
    case VertexType::In: return "IN";
    case VertexType::Out: return "OUT";
    case VertexType::Sym: return "SYM";
  }
  return "?";
}

std::vector<VertexType> vertex_types(const Digraph& G) {
  std::vector<VertexType> t(G.n());
  for (int v = 0; v < G.n(); ++v) {
    bool in = false, out = false;
    for (int u : G.in(v)) in = in || u != v;
    for (int u : G.out(v)) out = out || u != v;
    if (!in && !out) throw InputError("isolated vertex " + std::to_string(v));
    t[v] = in && out ? VertexType::Sym : in ? VertexType::In : VertexType::Out;
  }
  return t;
}

bool zigzag_pattern(const Walk& s, bool in_pattern, const Digraph& H) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Edge& e = s.edges[i];
    // IN: even positions run against an arc, odd positions along one
    bool against = (i % 2 == 0) == in_pattern;
    if (against ? !H.has_arc(e.to, e.from) : !H.has_arc(e.from, e.to)) return false;
  }
  return true;
}

Zigzag zigzag_ok(const Walk& s, VertexType t, const Digraph& H) {
  if (s.size() % 2 != 0) return Zigzag::OddLength;
  bool ok = true;
  if (t != VertexType::Out) ok = ok && zigzag_pattern(s, true, H);
  if (t != VertexType::In) ok = ok && zigzag_pattern(s, false, H);
  return ok ? Zigzag::Ok : Zigzag::Violated;
}

OrientationResult classify_orientation_compatible(const Instance& inst, int q0,
                                                  const std::vector<Walk>& walks) {
  std::vector<VertexType> types = vertex_types(inst.G);
  std::vector<int> sym;
  for (int v = 0; v < inst.G.n(); ++v)
    if (types[v] == VertexType::Sym) sym.push_back(v);
  OrientationResult r;
  r.q = q0;
  if (sym.empty()) {
    r.tag = OrientationCase::AllZigzag;
    return r;
  }
  r.q = sym.front();
  Walk back = invert(walks.at(r.q));
  std::vector<Walk> system(inst.G.n());
  for (int v : sym) {
    if (walks.at(v).start != q0 || walks[v].end() != v) throw InputError("walk system endpoints");
    system[v] = compose(back, walks[v]);
  }
  SymFilterResult f = symmetric_filter(inst, r.q, sym, system);
  switch (f.tag) {
    case SymCase::Empty:
      r.tag = OrientationCase::Empty;
      break;
    case SymCase::Single:
      if (f.Q.size() % 2 == 0) {
        r.tag = OrientationCase::Single;
        r.Q = f.Q;
      }
      break;
    case SymCase::AllSymmetric:
      r.tag = OrientationCase::AllZigzag;
      break;
  }
  return r;
}

ScheduleResult schedule_monochromatic(const Instance& inst, const std::vector<Walk>& S) {
  const Digraph& G = inst.G;
  const int n = G.n();
  ScheduleResult r;
  r.seq.start = inst.alpha;
  std::vector<std::vector<int>> col(n);
  for (int v = 0; v < n; ++v) {
    if (S[v].size() % 2 != 0) {
      r.reason = "odd vertex walk at " + std::to_string(v);
      return r;
    }
    col[v] = S[v].vertices();
  }
  std::vector<std::size_t> pos(n, 0);
  std::vector<int> cnt(n, 0);
  auto finished = [&](int v) { return pos[v] + 1 >= col[v].size(); };
  auto color = [&](int v) { return col[v][pos[v]]; };
  auto mid = [&](int v) { return col[v][pos[v] + 1]; };
  auto recount = [&](int v) {
    cnt[v] = 0;
    if (finished(v)) return;
    for (int w : G.nbr(v)) cnt[v] += color(w) == mid(v);
  };
  std::set<int> enabled;
  auto refresh = [&](int v) {
    if (!finished(v) && cnt[v] == static_cast<int>(G.nbr(v).size()))
      enabled.insert(v);
    else
      enabled.erase(v);
  };
  for (int v = 0; v < n; ++v) recount(v);
  for (int v = 0; v < n; ++v) refresh(v);
  while (!enabled.empty()) {
    int v = *enabled.begin();
    int from = color(v), to = col[v][pos[v] + 2];
    r.seq.moves.push_back({v, from, to});
    pos[v] += 2;
    for (int w : G.nbr(v)) {
      if (finished(w)) continue;
      int m = mid(w);
      cnt[w] += (m == to) - (m == from);
      refresh(w);
    }
    recount(v);
    refresh(v);
  }
  for (int v = 0; v < n; ++v)
    if (!finished(v)) r.blocked.push_back(v);
  if (!r.blocked.empty()) {
    r.reason = "deadlock with " + std::to_string(r.blocked.size()) + " blocked vertices";
    return r;
  }
  VerifyResult vr = verify_sequence(inst, r.seq, Adjacency::Rh);
  if (!vr.ok) {
    r.reason = "replay failed at move " + std::to_string(vr.failed_at) + ": " + vr.reason;
    return r;
  }
  r.ok = true;
  return r;
}

ScheduleResult schedule_monochromatic(const Instance& inst, int q, const Walk& Q) {
  return schedule_monochromatic(inst, generate_all_vertex_walks(Q, inst, bfs_tree(inst.G, q)));
}

RealizeResult realize(const Walk& Q0, const Instance& inst, int q) {
  RealizeResult r;
  if (Q0.start != inst.alpha.at(q) || Q0.end() != inst.beta.at(q)) {
    r.reason = "endpoints differ from alpha(q), beta(q)";
    return r;
  }
  Walk Q = reduce(Q0);
  if (Q.size() % 2 != 0) {
    r.reason = "odd length";
    return r;
  }
  if (!is_topologically_valid(Q, inst, q)) {
    r.reason = "not topologically valid";
    return r;
  }
  std::vector<Walk> S = generate_all_vertex_walks(Q, inst, bfs_tree(inst.G, q));
  std::vector<VertexType> types = vertex_types(inst.G);
  for (int v = 0; v < inst.G.n(); ++v) {
    if (zigzag_ok(S[v], types[v], inst.H) != Zigzag::Ok) {
      r.reason = "zigzag fails at " + std::to_string(v);
      return r;
    }
  }
  ScheduleResult s = schedule_monochromatic(inst, S);
  if (!s.ok) {
    r.reason = s.reason;
    return r;
  }
  r.ok = true;
  r.seq = std::move(s.seq);
  return r;
}

bool is_realizable(const Walk& Q, const Instance& inst, int q) { return realize(Q, inst, q).ok; }

std::optional<Walk> zigzag_walk(const Digraph& H, int from, int to, VertexType t) {
  // states (vertex, parity of the next edge index)
  auto allowed = [&](int a, int b, int parity) {
    bool in_ok = parity == 0 ? H.has_arc(b, a) : H.has_arc(a, b);
    bool out_ok = parity == 0 ? H.has_arc(a, b) : H.has_arc(b, a);
    if (t == VertexType::In) return in_ok;
    if (t == VertexType::Out) return out_ok;
    return in_ok && out_ok;
  };
  const int n = H.n();
  std::vector<int> prev(2 * n, -2);
  std::deque<int> queue{2 * from};
  prev[2 * from] = -1;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    if (s == 2 * to) break;
    int a = s / 2, p = s % 2;
    for (int b : H.nbr(a)) {
      if (!allowed(a, b, p)) continue;
      int s2 = 2 * b + (1 - p);
      if (prev[s2] != -2) continue;
      prev[s2] = s;
      queue.push_back(s2);
    }
  }
  if (prev[2 * to] == -2) return std::nullopt;
  std::vector<int> path;
  for (int s = 2 * to; s != -1; s = prev[s]) path.push_back(s / 2);
  std::reverse(path.begin(), path.end());
  return reduce(Walk::from_vertices(path));
}

namespace {

struct Builder {
  const Instance& inst;
  RealizableClassification& out;

  void single(const Walk& Q) {
    RealizeResult r = realize(Q, inst, out.q);
    out.transcript.push_back("test " + format_walk(Q) + (r.ok ? " ok" : " fail " + r.reason));
    if (r.ok) {
      out.cls.tag = WalkCase::Single;
      out.cls.Q = reduce(Q);
      out.sequence = std::move(r.seq);
    }
  }
};

}  // namespace

RealizableClassification classify_realizable(const Instance& inst) {
  const Digraph& G = inst.G;
  RealizableClassification out;
  const int q0 = 0;
  std::vector<VertexType> types = vertex_types(G);
  BfsTree t0 = bfs_tree(G, q0);
  std::vector<Walk> walks(G.n());
  for (int v = 0; v < G.n(); ++v)
    if (types[v] == VertexType::Sym) walks[v] = tree_walk(t0, v);
  OrientationResult oc = classify_orientation_compatible(inst, q0, walks);
  const int q = oc.q;
  out.q = q;
  out.cls.from = inst.alpha[q];
  out.cls.to = inst.beta[q];
  out.transcript.push_back("q " + std::to_string(q) + " " + type_name(types[q]));
  Builder b{inst, out};
  if (oc.tag == OrientationCase::Empty) {
    out.transcript.push_back("orientation EMPTY");
    return out;
  }
  if (oc.tag == OrientationCase::Single) {
    out.transcript.push_back("orientation SINGLE");
    b.single(oc.Q);
    return out;
  }
  out.transcript.push_back("orientation ALL");
  std::vector<int> frozen = frozen_vertices(G, inst.alpha);
  if (!frozen.empty()) {
    out.transcript.push_back("frozen " + std::to_string(frozen.size()));
    if (frozen_moved(inst, frozen)) return out;
    b.single(pinned_walk(inst, frozen.front(), q));
    return out;
  }
  WalkClassification T = classify_valid_walks(inst, q);
  out.transcript.push_back(std::string("topological ") + case_name(T.tag));
  const VertexType tq = types[q];
  switch (T.tag) {
    case WalkCase::Empty:
      return out;
    case WalkCase::Single:
      b.single(T.Q);
      return out;
    case WalkCase::PowerCoset: {
      Walk R = T.R, P = T.P;
      if (R.size() % 2 != 0) {
        if (P.size() % 2 != 0) P = compose(R, P);
        R = compose(R, R);
      } else if (P.size() % 2 != 0) {
        out.transcript.push_back("odd coset");
        return out;
      }
      out.transcript.push_back("R " + format_walk(R));
      out.transcript.push_back("P " + format_walk(P));
      if (zigzag_ok(R, tq, inst.H) == Zigzag::Ok) {
        out.transcript.push_back("R zigzag");
        RealizeResult r = realize(P, inst, q);
        if (r.ok) {
          out.cls.tag = WalkCase::PowerCoset;
          out.cls.R = R;
          out.cls.P = P;
          out.sequence = std::move(r.seq);
        } else {
          out.transcript.push_back("P fail " + r.reason);
        }
        return out;
      }
      // R = A R0 A^-1; shift n until neither R0 nor R0^-1 cancels with R0^n A^-1 P
      CyclicDecomposition d = cyclic_reduce(R);
      Walk Y = compose(d.A, P);
      Walk r0 = d.core, r0i = invert(d.core);
      auto starts_with = [](const Walk& w, const Walk& p) {
        if (w.size() < p.size()) return false;
        return std::equal(p.edges.begin(), p.edges.end(), w.edges.begin());
      };
      long n0 = 0;
      for (;;) {
        if (starts_with(Y, r0i)) {
          Y = Walk(Y.edges[r0.size() - 1].to,
                   std::vector<Edge>(Y.edges.begin() + r0.size(), Y.edges.end()));
          ++n0;
        } else if (starts_with(Y, r0)) {
          Y = Walk(Y.edges[r0.size() - 1].to,
                   std::vector<Edge>(Y.edges.begin() + r0.size(), Y.edges.end()));
          --n0;
        } else {
          break;
        }
      }
      out.transcript.push_back("n0 " + std::to_string(n0));
      for (long n : {n0 - 1, n0, n0 + 1}) {
        Walk Q = compose(power(R, n), P);
        if (zigzag_ok(Q, tq, inst.H) != Zigzag::Ok) continue;
        b.single(Q);
        if (out.cls.tag == WalkCase::Single) return out;
      }
      return out;
    }
    case WalkCase::All: {
      auto Q = zigzag_walk(inst.H, inst.alpha[q], inst.beta[q], tq);
      if (!Q) {
        out.transcript.push_back("no zigzag walk");
        return out;
      }
      RealizeResult r = realize(*Q, inst, q);
      out.transcript.push_back("test " + format_walk(*Q) + (r.ok ? " ok" : " fail " + r.reason));
      if (r.ok) {
        out.cls.tag = WalkCase::All;
        out.sequence = std::move(r.seq);
      }
      return out;
    }
  }
  return out;
}

bool monochromatic(const Instance& inst, const RecoloringSequence& seq) {
  Homomorphism cur = seq.start;
  for (const Move& m : seq.moves) {
    const auto& nb = inst.G.nbr(m.vertex);
    for (int w : nb)
      if (cur[w] != cur[nb.front()]) return false;
    cur[m.vertex] = m.to;
  }
  return true;
}

Decision solve_loopless(const Instance& inst, const SolveOptions& opts) {
  if (inst.semantics != Semantics::Loopless) throw InputError("solve_loopless needs loopless semantics");
  if (inst.H.has_any_loop()) throw InputError("template has loops");
  if (inst.G.has_any_loop()) throw InputError("instance has loops");
  bool admissible = template_admissible(inst.H, Semantics::Loopless).admissible;
  if (!admissible && !opts.restricted)
    throw InputError("template is not admissible; use restricted mode");
  Decision d = solve_by_components(inst, [&](const Instance& sub) {
    Decision c;
    RealizableClassification rc = classify_realizable(sub);
    c.transcript = std::move(rc.transcript);
    c.transcript.push_back(std::string("case ") + case_name(rc.cls.tag));
    if (rc.sequence) {
      c.answer = Answer::Yes;
      c.sequence = std::move(rc.sequence);
    }
    return c;
  });
  d.restricted = !admissible;
  return d;
}

}  // namespace recolor
