#include "recolor/solve.hpp"

#include <deque>

#include "recolor/loopless.hpp"
#include "recolor/reflexive.hpp"

namespace recolor {

const char* answer_name(Answer a) {
  switch (a) {
    case Answer::Yes: return "YES";
    case Answer::No: return "NO";
    case Answer::Unsupported: return "UNSUPPORTED";
  }
  return "?";
}

namespace {

// Shortest recolouring of an isolated vertex. A looped vertex under Hom1
// must step along edges of H; otherwise any two colours are one move apart.
std::optional<std::vector<Move>> isolated_moves(const Instance& inst, int v) {
  int a = inst.alpha[v], b = inst.beta[v];
  if (a == b) return std::vector<Move>{};
  if (!(inst.adjacency == Adjacency::Hom1 && inst.G.has_loop(v))) return std::vector<Move>{{v, a, b}};
  const Digraph& H = inst.H;
  std::vector<int> parent(H.n(), -1);
  parent[a] = a;
  std::deque<int> queue{a};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int y : H.nbr(x))
      if (parent[y] == -1 && H.has_loop(y)) {
        parent[y] = x;
        queue.push_back(y);
      }
  }
  if (parent[b] == -1) return std::nullopt;
  std::vector<Move> out;
  for (int y = b; y != a; y = parent[y]) out.push_back({v, parent[y], y});
  return std::vector<Move>(out.rbegin(), out.rend());
}

Instance induced(const Instance& inst, const std::vector<int>& verts, std::vector<int>& local) {
  Instance sub;
  sub.H = inst.H;
  sub.semantics = inst.semantics;
  sub.adjacency = inst.adjacency;
  sub.G = Digraph(static_cast<int>(verts.size()));
  sub.G.set_name(inst.G.name());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    local[verts[i]] = static_cast<int>(i);
    sub.alpha.push_back(inst.alpha[verts[i]]);
    sub.beta.push_back(inst.beta[verts[i]]);
  }
  for (int v : verts)
    for (int w : inst.G.out(v)) sub.G.add_arc(local[v], local[w]);
  return sub;
}

}  // namespace

Decision solve_by_components(const Instance& inst, const ConnectedSolver& connected) {
  Decision d;
  d.answer = Answer::Yes;
  RecoloringSequence seq;
  seq.start = inst.alpha;
  const auto comps = weak_components(inst.G);
  const auto hcomp = weak_components(inst.H);
  std::vector<int> hid(inst.H.n());
  for (std::size_t i = 0; i < hcomp.size(); ++i)
    for (int x : hcomp[i]) hid[x] = static_cast<int>(i);
  std::vector<int> local(inst.G.n(), -1);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto& verts = comps[c];
    bool same = true;
    for (int v : verts) same = same && inst.alpha[v] == inst.beta[v];
    if (same) continue;
    if (comps.size() > 1) d.transcript.push_back("component " + std::to_string(c));
    if (verts.size() == 1) {
      auto moves = isolated_moves(inst, verts[0]);
      if (!moves) {
        d.transcript.push_back("fail isolated vertex " + std::to_string(verts[0]));
        d.answer = Answer::No;
        d.sequence.reset();
        return d;
      }
      seq.moves.insert(seq.moves.end(), moves->begin(), moves->end());
      continue;
    }
    if (hid[inst.alpha[verts[0]]] != hid[inst.beta[verts[0]]]) {
      d.transcript.push_back("fail images in different components of H");
      d.answer = Answer::No;
      return d;
    }
    Decision part = connected(induced(inst, verts, local));
    d.transcript.insert(d.transcript.end(), part.transcript.begin(), part.transcript.end());
    d.used_fallback = d.used_fallback || part.used_fallback;
    if (part.answer != Answer::Yes) {
      d.answer = part.answer;
      return d;
    }
    for (Move m : part.sequence->moves) {
      m.vertex = verts[m.vertex];
      seq.moves.push_back(m);
    }
  }
  VerifyResult vr = verify_sequence(inst, seq, Adjacency::Rh);
  if (!vr.ok) throw std::logic_error("internal error: emitted sequence fails verification: " + vr.reason);
  d.sequence = std::move(seq);
  return d;
}

std::optional<Semantics> infer_semantics(const Digraph& H) {
  if (H.is_reflexive()) return Semantics::Reflexive;
  if (!H.has_any_loop()) return Semantics::Loopless;
  return std::nullopt;
}

Decision solve(const Instance& inst, const SolveOptions& opts) {
  auto inferred = infer_semantics(inst.H);
  if (!inferred || *inferred != inst.semantics) {
    Decision d;
    d.answer = Answer::Unsupported;
    d.transcript.push_back(inferred ? "template loop pattern does not match the semantics"
                                    : "template has a mixed loop pattern");
    return d;
  }
  if (inst.semantics == Semantics::Loopless && inst.G.has_any_loop()) {
    Decision d;
    d.answer = Answer::No;
    d.transcript.push_back("instance has loops but the template has none");
    return d;
  }
  Decision d = inst.semantics == Semantics::Loopless ? solve_loopless(inst, opts) : solve_reflexive(inst, opts);
  if (d.answer == Answer::Yes) {
    VerifyResult vr = verify_sequence(inst, *d.sequence, inst.adjacency);
    if (!vr.ok) throw std::logic_error("internal error: emitted sequence fails verification: " + vr.reason);
  }
  return d;
}

}  // namespace recolor
