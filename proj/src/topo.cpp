#include "recolor/topo.hpp"

#include <cstdlib>

namespace recolor {

const char* case_name(WalkCase c) {
  switch (c) {
    case WalkCase::Empty: return "EMPTY";
    case WalkCase::Single: return "SINGLE";
    case WalkCase::PowerCoset: return "POWER_COSET";
    case WalkCase::All: return "ALL";
  }
  return "?";
}

namespace {

// Is the reduced closed walk x equal to R^n for some n?
bool is_power_of(const Walk& x, const Walk& R) {
  if (x.start != R.start) return false;
  if (x.empty()) return true;
  if (R.empty()) return false;
  CyclicDecomposition d = cyclic_reduce(R);
  Walk inv = invert(d.A);
  // x = A^-1 y A with y a power of the core
  Walk y = compose({&d.A, &x, &inv});
  std::size_t len = d.core.size();
  if (y.size() % len != 0) return false;
  long k = static_cast<long>(y.size() / len);
  return power(d.core, k) == y || power(d.core, -k) == y;
}

}  // namespace

bool WalkClassification::contains(const Walk& w) const {
  if (w.start != from || w.end() != to) return false;
  switch (tag) {
    case WalkCase::Empty: return false;
    case WalkCase::Single: return w == Q;
    case WalkCase::All: return true;
    case WalkCase::PowerCoset: {
      Walk pinv = invert(P);
      return is_power_of(compose(w, pinv), R);
    }
  }
  return false;
}

CycleImages cycle_images(const Instance& inst, int q) {
  CycleImages ci;
  ci.q = q;
  ci.cycles = fundamental_cycles(inst.G, q);
  for (const Walk& c : ci.cycles) {
    ci.a.push_back(reduce(image_walk(inst.alpha, c), inst.reflexive()));
    ci.b.push_back(reduce(image_walk(inst.beta, c), inst.reflexive()));
  }
  return ci;
}

bool is_topologically_valid(const Walk& Q, const CycleImages& ci, bool reflexive_host) {
  Walk Qr = reduce(Q, reflexive_host);
  Walk Qi = invert(Qr);
  for (std::size_t i = 0; i < ci.a.size(); ++i) {
    if (compose({&Qi, &ci.a[i], &Qr}) != ci.b[i]) return false;
  }
  return true;
}

bool is_topologically_valid(const Walk& Q, const Instance& inst, int q) {
  if (Q.start != inst.alpha.at(q) || Q.end() != inst.beta.at(q))
    throw InputError("walk endpoints differ from alpha(q), beta(q)");
  return is_topologically_valid(Q, cycle_images(inst, q), inst.reflexive());
}

ExponentSet conjugating_exponents(const Walk& root, const Walk& d, const Walk& f) {
  ExponentSet r;
  if (is_power_of(d, root)) {
    r.kind = d == f ? ExponentSet::Every : ExponentSet::None;
    return r;
  }
  long bound = static_cast<long>((d.size() + f.size()) / root.size()) + 2;
  for (long m = 0; m <= bound; ++m) {
    for (long n : {m, -m}) {
      Walk rn = power(root, n), rni = power(root, -n);
      if (compose({&rni, &d, &rn}) == f) {
        r.kind = ExponentSet::One;
        r.n = n;
        return r;
      }
      if (m == 0) break;
    }
  }
  return r;
}

WalkClassification classify_valid_walks(const Instance& inst, const CycleImages& ci) {
  WalkClassification wc;
  const int q = ci.q;
  wc.from = inst.alpha.at(q);
  wc.to = inst.beta.at(q);
  std::size_t first = ci.a.size();
  for (std::size_t i = 0; i < ci.a.size(); ++i)
    if (!ci.a[i].empty()) {
      first = i;
      break;
    }
  if (first == ci.a.size()) {
    bool all_b = true;
    for (const Walk& b : ci.b) all_b = all_b && b.empty();
    wc.tag = all_b ? WalkCase::All : WalkCase::Empty;
    return wc;
  }
  ConjugacySolution sol = solve_conjugacy(ci.a[first], ci.b[first]);
  if (sol.empty) return wc;
  // family Q_n = K root^n K^-1 P0
  const Walk& K = sol.conjA;
  Walk Ki = invert(K);
  const Walk& P0 = sol.particular;
  Walk P0i = invert(P0);
  bool pinned = false;
  long pin = 0;
  for (std::size_t j = 0; j < ci.a.size(); ++j) {
    if (j == first) continue;
    // root^-n d root^n = f
    Walk d = compose({&Ki, &ci.a[j], &K});
    Walk f = compose({&Ki, &P0, &ci.b[j], &P0i, &K});
    ExponentSet es = conjugating_exponents(sol.root, d, f);
    if (es.kind == ExponentSet::None) return wc;
    if (es.kind == ExponentSet::One) {
      if (pinned && pin != es.n) return wc;
      pinned = true;
      pin = es.n;
    }
  }
  if (pinned) {
    wc.tag = WalkCase::Single;
    wc.Q = sol.member(pin);
  } else {
    wc.tag = WalkCase::PowerCoset;
    wc.R = compose({&K, &sol.root, &Ki});
    wc.P = P0;
  }
  return wc;
}

WalkClassification classify_valid_walks(const Instance& inst, int q) {
  return classify_valid_walks(inst, cycle_images(inst, q));
}

Walk generate_vertex_walk(const Walk& Q, const Instance& inst, int q, int v, const Walk& W_v) {
  if (W_v.start != q || W_v.end() != v) throw InputError("W_v must run from q to v");
  Walk a = invert(image_walk(inst.alpha, W_v));
  Walk b = image_walk(inst.beta, W_v);
  return compose({&a, &Q, &b}, inst.reflexive());
}

std::vector<Walk> generate_all_vertex_walks(const Walk& Q, const Instance& inst, const BfsTree& t) {
  const bool refl = inst.reflexive();
  std::vector<Walk> S(inst.G.n());
  for (int v : t.order) {
    if (v == t.root) {
      S[v] = reduce(Q, refl);
      continue;
    }
    int p = t.parent[v];
    const Walk& sp = S[p];
    Walk s(inst.alpha[v]);
    s.edges.reserve(sp.size() + 2);
    Edge left{inst.alpha[v], inst.alpha[p]};
    Edge right{inst.beta[p], inst.beta[v]};
    std::size_t lo = 0, hi = sp.size();
    bool keep_left = !(refl && left.is_loop());
    bool keep_right = !(refl && right.is_loop());
    if (keep_left && lo < hi && sp.edges[lo] == left.inverse()) {
      ++lo;
      keep_left = false;
    }
    if (keep_right && lo < hi && sp.edges[hi - 1] == right.inverse()) {
      --hi;
      keep_right = false;
    }
    if (keep_left) s.edges.push_back(left);
    s.edges.insert(s.edges.end(), sp.edges.begin() + lo, sp.edges.begin() + hi);
    if (keep_right) s.edges.push_back(right);
    // the two outer edges may still meet when the middle vanished
    S[v] = lo == hi ? reduce(s, refl) : s;
  }
  return S;
}

SymFilterResult symmetric_filter(const Instance& inst, int q, const std::vector<int>& vset,
                                 const std::vector<Walk>& walks) {
  const bool refl = inst.reflexive();
  const Digraph& H = inst.H;
  SymFilterResult res;
  bool fixed = false;
  Walk Q;
  for (int v : vset) {
    const Walk& W = walks.at(v);
    if (W.start != q || W.end() != v) throw InputError("symmetric_filter walk endpoints");
    Walk A = reduce(image_walk(inst.alpha, W), refl);
    Walk B = reduce(image_walk(inst.beta, W), refl);
    std::vector<std::size_t> na, nb;
    for (std::size_t i = 0; i < A.size(); ++i)
      if (!H.symmetric_edge(A.edges[i].from, A.edges[i].to)) na.push_back(i);
    for (std::size_t i = 0; i < B.size(); ++i)
      if (!H.symmetric_edge(B.edges[i].from, B.edges[i].to)) nb.push_back(i);
    if (na.empty() && nb.empty()) continue;
    if (na.size() != nb.size()) return res;
    for (std::size_t i = 0; i < na.size(); ++i)
      if (!(A.edges[na[i]] == B.edges[nb[i]])) return res;
    // A = A1 e1 ..., B = B1 e1 ...; the pin is A1 B1^-1
    Walk A1(A.start, std::vector<Edge>(A.edges.begin(), A.edges.begin() + na[0]));
    Walk B1(B.start, std::vector<Edge>(B.edges.begin(), B.edges.begin() + nb[0]));
    Walk pin = compose(A1, invert(B1));
    if (fixed && pin != Q) return res;
    fixed = true;
    Q = pin;
    // the inner segments must cancel pairwise, which is the same as S_v symmetric
    Walk Ai = invert(A);
    Walk S = compose({&Ai, &Q, &B});
    if (!is_symmetric(S, H)) return res;
  }
  if (fixed) {
    res.tag = SymCase::Single;
    res.Q = Q;
  } else {
    res.tag = SymCase::AllSymmetric;
  }
  return res;
}

}  // namespace recolor
