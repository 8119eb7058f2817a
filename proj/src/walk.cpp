#include "recolor/walk.hpp"

#include <cstdint>
#include <sstream>

namespace recolor {

Walk Walk::from_vertices(const std::vector<int>& vs) {
  if (vs.empty()) throw InputError("walk needs at least one vertex");
  Walk w(vs.front());
  for (std::size_t i = 1; i < vs.size(); ++i) w.edges.push_back({vs[i - 1], vs[i]});
  return w;
}

std::vector<int> Walk::vertices() const {
  std::vector<int> vs{start};
  for (const Edge& e : edges) vs.push_back(e.to);
  return vs;
}

Orientation edge_orientation(const Digraph& H, const Edge& e) {
  bool f = H.has_arc(e.from, e.to), b = H.has_arc(e.to, e.from);
  if (f && b) return Orientation::Symmetric;
  return f ? Orientation::Forward : Orientation::Backward;
}

bool well_formed(const Walk& w) {
  int at = w.start;
  for (const Edge& e : w.edges) {
    if (e.from != at) return false;
    at = e.to;
  }
  return true;
}

bool walk_in(const Walk& w, const Digraph& host) {
  if (!well_formed(w) || w.start < 0 || w.start >= host.n()) return false;
  for (const Edge& e : w.edges)
    if (!host.adjacent(e.from, e.to)) return false;
  return true;
}

Walk reduce(const Walk& w, bool reflexive_host) {
  Walk r(w.start);
  r.edges.reserve(w.edges.size());
  for (const Edge& e : w.edges) {
    if (reflexive_host && e.is_loop()) continue;
    if (!r.edges.empty() && r.edges.back() == e.inverse()) {
      r.edges.pop_back();
    } else {
      r.edges.push_back(e);
    }
  }
  return r;
}

bool is_reduced(const Walk& w, bool reflexive_host) {
  for (std::size_t i = 0; i < w.edges.size(); ++i) {
    if (reflexive_host && w.edges[i].is_loop()) return false;
    if (i > 0 && w.edges[i - 1] == w.edges[i].inverse()) return false;
  }
  return true;
}

Walk concat(const Walk& a, const Walk& b) {
  if (a.end() != b.start) throw InputError("composition of walks with mismatched endpoints");
  Walk r = a;
  r.edges.insert(r.edges.end(), b.edges.begin(), b.edges.end());
  return r;
}

Walk compose(const Walk& a, const Walk& b, bool reflexive_host) {
  return reduce(concat(a, b), reflexive_host);
}

Walk compose(std::initializer_list<const Walk*> parts, bool reflexive_host) {
  auto it = parts.begin();
  Walk r = **it;
  for (++it; it != parts.end(); ++it) r = concat(r, **it);
  return reduce(r, reflexive_host);
}

Walk invert(const Walk& w) {
  Walk r(w.end());
  r.edges.reserve(w.edges.size());
  for (auto it = w.edges.rbegin(); it != w.edges.rend(); ++it) r.edges.push_back(it->inverse());
  return r;
}

Walk power(const Walk& closed, long n, bool reflexive_host) {
  if (!closed.closed()) throw InputError("power of a walk that is not closed");
  Walk base = n < 0 ? invert(closed) : closed;
  Walk r(closed.start);
  for (long i = 0; i < (n < 0 ? -n : n); ++i)
    r.edges.insert(r.edges.end(), base.edges.begin(), base.edges.end());
  return reduce(r, reflexive_host);
}

Walk image_walk(const Homomorphism& f, const Walk& w) {
  Walk r(f.at(w.start));
  r.edges.reserve(w.edges.size());
  for (const Edge& e : w.edges) r.edges.push_back({f.at(e.from), f.at(e.to)});
  return r;
}

bool is_cyclically_reduced(const Walk& c) {
  if (!c.closed() || !is_reduced(c)) return false;
  if (c.edges.size() < 2) return true;
  return !(c.edges.front() == c.edges.back().inverse());
}

CyclicDecomposition cyclic_reduce(const Walk& c) {
  if (!c.closed()) throw InputError("cyclic reduction of an open walk");
  std::size_t lo = 0, hi = c.edges.size();
  while (hi - lo >= 2 && c.edges[lo] == c.edges[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  CyclicDecomposition d;
  // input = A^-1 core A, so A^-1 is the peeled prefix
  Walk prefix(c.start, std::vector<Edge>(c.edges.begin(), c.edges.begin() + lo));
  d.A = invert(prefix);
  d.core = Walk(prefix.end(), std::vector<Edge>(c.edges.begin() + lo, c.edges.begin() + hi));
  return d;
}

Walk recompose(const CyclicDecomposition& d) {
  Walk inv = invert(d.A);
  return compose({&inv, &d.core, &d.A});
}

namespace {

using Letter = std::uint64_t;

Letter letter(const Edge& e) {
  return (static_cast<Letter>(static_cast<std::uint32_t>(e.from)) << 32) |
         static_cast<std::uint32_t>(e.to);
}

std::vector<Letter> letters(const Walk& w) {
  std::vector<Letter> r;
  r.reserve(w.edges.size());
  for (const Edge& e : w.edges) r.push_back(letter(e));
  return r;
}

std::vector<std::size_t> failure_function(const std::vector<Letter>& p) {
  std::vector<std::size_t> f(p.size(), 0);
  for (std::size_t i = 1, k = 0; i < p.size(); ++i) {
    while (k > 0 && p[i] != p[k]) k = f[k - 1];
    if (p[i] == p[k]) ++k;
    f[i] = k;
  }
  return f;
}

}  // namespace

std::pair<Walk, int> primitive_root(const Walk& c0) {
  if (c0.empty()) throw std::domain_error("primitive root of the empty walk");
  auto p = letters(c0);
  auto f = failure_function(p);
  std::size_t n = p.size();
  std::size_t period = n - f[n - 1];
  if (n % period != 0) period = n;
  Walk root(c0.start, std::vector<Edge>(c0.edges.begin(), c0.edges.begin() + period));
  return {root, static_cast<int>(n / period)};
}

std::optional<std::size_t> rotation_offset(const Walk& a, const Walk& b) {
  if (a.size() != b.size()) return std::nullopt;
  if (a.empty()) return a.start == b.start ? std::optional<std::size_t>(0) : std::nullopt;
  // search b inside a·a
  auto pat = letters(b);
  auto once = letters(a);
  std::vector<Letter> text = once;
  text.insert(text.end(), once.begin(), once.end() - 1);
  auto f = failure_function(pat);
  for (std::size_t i = 0, k = 0; i < text.size(); ++i) {
    while (k > 0 && text[i] != pat[k]) k = f[k - 1];
    if (text[i] == pat[k]) ++k;
    if (k == pat.size()) return i + 1 - pat.size();
  }
  return std::nullopt;
}

Walk ConjugacySolution::member(long n) const {
  Walk rn = power(root, n);
  Walk inv = invert(conjA);
  return compose({&conjA, &rn, &inv, &particular});
}

ConjugacySolution solve_conjugacy(const Walk& a, const Walk& b) {
  if (a.empty()) throw std::logic_error("solve_conjugacy needs a nontrivial left side");
  ConjugacySolution sol;
  if (!a.closed() || !b.closed()) throw InputError("conjugacy of open walks");
  Walk ra = reduce(a), rb = reduce(b);
  if (ra.empty() || rb.empty()) return sol;
  CyclicDecomposition da = cyclic_reduce(ra), db = cyclic_reduce(rb);
  auto k = rotation_offset(da.core, db.core);
  if (!k) return sol;
  // core_a = U V, core_b = V U, T = U solves T^-1 core_a T = core_b
  Walk U(da.core.start, std::vector<Edge>(da.core.edges.begin(), da.core.edges.begin() + *k));
  sol.empty = false;
  sol.conjA = invert(da.A);
  sol.root = primitive_root(da.core).first;
  sol.particular = compose({&sol.conjA, &U, &db.A});
  return sol;
}

bool is_symmetric(const Walk& w, const Digraph& H) {
  for (const Edge& e : w.edges)
    if (!H.symmetric_edge(e.from, e.to)) return false;
  return true;
}

bool is_directed(const Walk& w, const Digraph& H) {
  for (const Edge& e : w.edges)
    if (!H.has_arc(e.from, e.to)) return false;
  return true;
}

std::string format_walk(const Walk& w) {
  std::ostringstream os;
  os << "walk";
  for (int v : w.vertices()) os << " " << v;
  return os.str();
}

Walk parse_walk(const std::string& line) {
  std::istringstream is(line);
  std::string word;
  if (!(is >> word) || word != "walk") throw ParseError("expected 'walk x0 ... xk'");
  std::vector<int> vs;
  int x;
  while (is >> x) vs.push_back(x);
  if (!is.eof()) throw ParseError("malformed walk");
  if (vs.empty()) throw ParseError("walk without vertices");
  return Walk::from_vertices(vs);
}

}  // namespace recolor
