#pragma once

#include <optional>
#include <string>
#include <vector>

#include "recolor/decision.hpp"
#include "recolor/digraph.hpp"
#include "recolor/topo.hpp"
#include "recolor/walk.hpp"

namespace recolor {

// Auxiliary digraph on oriented edges u->v of the symmetric closure with
// alpha(u) != alpha(v); (u->v) -> (v->w) when alpha(u) != alpha(w).
struct TightDigraph {
  Digraph D;
  std::vector<Edge> label;  // G-edge of each D-vertex
};

TightDigraph build_tight_digraph(const Digraph& G, const Homomorphism& alpha);

struct TightCycle {
  Walk cycle;    // closed walk in G
  Walk witness;  // its alpha-image, cyclically reduced
};

std::optional<TightCycle> find_tight_cycle(const Digraph& G, const Homomorphism& alpha);

// Vertices lying on some alpha-tight closed walk, ascending.
std::vector<int> frozen_vertices(const Digraph& G, const Homomorphism& alpha);

// A frozen vertex whose colour differs between alpha and beta.
bool frozen_moved(const Instance& inst, const std::vector<int>& frozen);
// reduce(alpha(W)^-1 beta(W)) for W a walk from f to q.
Walk pinned_walk(const Instance& inst, int f, int q);

bool realizable_characterization(const Walk& Q, const Instance& inst, int q);

struct SequenceResult {
  bool ok = false;
  RecoloringSequence seq;
  std::vector<int> obstruction;  // "<"-cycle or blocked vertices on failure
  std::string reason;
};

// Vertex walks S_v for every v, from Q at q along a BFS tree.
std::vector<Walk> vertex_walks(const Walk& Q, const Instance& inst, int q);

SequenceResult build_dag_sequence(const Walk& Q, const Instance& inst, int q);
SequenceResult move_forward(const Walk& Q, const Instance& inst, int q);
SequenceResult move_forward_walks(const Instance& inst, const std::vector<Walk>& S);

WalkClassification classify_reflexive(const Instance& inst, int q);

struct RnpBound {
  long a0 = 0;
  long b0 = 0;
  long n0 = 0;
  long N = 0;
};
RnpBound rnp_bound(const Walk& R, const Walk& P, int n_vertices);

// Order in which exponents are tried: 0, -1, 1, -2, 2, ...
std::vector<long> rnp_order(long N);

struct RnpResult {
  SequenceResult result;
  long n = 0;
  RnpBound bound;
};
RnpResult bounded_rnp_search(const Walk& R, const Walk& P, const Instance& inst, int q);

struct AllWalksResult {
  SequenceResult result;
  std::vector<std::string> transcript;
  // Set when the scheduler failed on a symmetric candidate chosen by BFS.
  bool symmetric_candidate_failed = false;
};
AllWalksResult all_walks_case(const Instance& inst, int q);

RecoloringSequence convert_rh_to_hom1(const Instance& inst, const RecoloringSequence& seq);

// Push-or-pull: at each move a->b every neighbour holds a or b.
bool push_or_pull(const Instance& inst, const RecoloringSequence& seq);

Decision solve_reflexive(const Instance& inst, const SolveOptions& opts = {});

}  // namespace recolor
