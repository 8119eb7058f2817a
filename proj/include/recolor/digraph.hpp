#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace recolor {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Dense vertices 0..n-1. Adjacency lists are kept sorted so every traversal
// visits neighbours in ascending id order.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int n, std::string name = "");

  int n() const { return n_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  // Returns false when the arc was already present.
  bool add_arc(int u, int v);
  void add_all_loops();

  bool has_arc(int u, int v) const;
  bool has_loop(int u) const { return has_arc(u, u); }
  // Adjacency in the symmetric closure; u == v asks for a loop.
  bool adjacent(int u, int v) const { return has_arc(u, v) || has_arc(v, u); }
  bool symmetric_edge(int u, int v) const { return has_arc(u, v) && has_arc(v, u); }

  const std::vector<int>& out(int u) const { return out_[u]; }
  const std::vector<int>& in(int u) const { return in_[u]; }
  // Neighbours in the symmetric closure, excluding u itself.
  const std::vector<int>& nbr(int u) const { return nbr_[u]; }

  std::size_t arc_count() const { return arc_count_; }
  std::vector<std::pair<int, int>> arcs() const;
  // Edges {u, v} of the symmetric closure with u < v (loops excluded).
  std::vector<std::pair<int, int>> edges() const;

  bool is_reflexive() const;
  bool is_symmetric() const;
  bool has_any_loop() const;

 private:
  int n_ = 0;
  std::string name_;
  std::size_t arc_count_ = 0;
  std::vector<std::vector<int>> out_, in_, nbr_;
};

Digraph parse_digraph(const std::string& text);
std::string format_digraph(const Digraph& g);

using Homomorphism = std::vector<int>;

bool check_homomorphism(const Digraph& G, const Digraph& H, const Homomorphism& m);

struct Move {
  int vertex = 0;
  int from = 0;
  int to = 0;
  bool operator==(const Move&) const = default;
};

struct RecoloringSequence {
  Homomorphism start;
  std::vector<Move> moves;
};

// Breadth first tree in the symmetric closure; parent[root] == root and
// parent[v] == -1 for vertices outside the root's weak component.
struct BfsTree {
  int root = 0;
  std::vector<int> parent;
  std::vector<int> dist;
  std::vector<int> order;
};

BfsTree bfs_tree(const Digraph& G, int root);

struct Walk;
Walk bfs_walk(const Digraph& G, int u, int v);
Walk tree_walk(const BfsTree& t, int v);
std::vector<Walk> fundamental_cycles(const Digraph& G, int q);

struct SccResult {
  std::vector<int> comp;
  std::vector<std::vector<int>> components;
  // Vertices on some directed closed walk.
  std::vector<char> on_closed_walk;
};

// With count_loops == false a loop alone does not put its vertex on a closed walk.
SccResult scc(const Digraph& G, bool count_loops = true);

std::vector<std::vector<int>> weak_components(const Digraph& G);
bool weakly_connected(const Digraph& G);

enum class Semantics { Loopless, Reflexive };
enum class Adjacency { Rh, Hom1 };

struct Violation {
  std::string kind;  // "loop", "missing-loop", "4-cycle", "triangle"
  std::vector<int> witness;
};

struct AdmissibilityReport {
  bool admissible = true;
  std::vector<Violation> violations;
};

AdmissibilityReport template_admissible(const Digraph& H, Semantics mode);

struct Instance {
  Digraph H;
  Digraph G;
  Homomorphism alpha;
  Homomorphism beta;
  Semantics semantics = Semantics::Loopless;
  Adjacency adjacency = Adjacency::Rh;

  bool reflexive() const { return semantics == Semantics::Reflexive; }
};

struct VerifyResult {
  bool ok = true;
  // Index of the first offending move, or moves.size() when the final
  // state differs from beta.
  std::size_t failed_at = 0;
  std::string reason;
};

VerifyResult verify_sequence(const Instance& inst, const RecoloringSequence& seq,
                             Adjacency adjacency);

// Hom-graph condition restricted to a single-vertex change at v.
bool hom1_step_ok(const Digraph& G, const Digraph& H, int v, int from, int to);

}  // namespace recolor
