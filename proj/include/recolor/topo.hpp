#pragma once

#include <string>
#include <vector>

#include "recolor/digraph.hpp"
#include "recolor/walk.hpp"

namespace recolor {

enum class WalkCase { Empty, Single, PowerCoset, All };
const char* case_name(WalkCase c);

struct WalkClassification {
  WalkCase tag = WalkCase::Empty;
  Walk Q;  // Single
  Walk R;  // PowerCoset: closed at alpha(q)
  Walk P;  // PowerCoset: alpha(q) -> beta(q)
  int from = 0;
  int to = 0;

  // Membership of a reduced walk in the described set.
  bool contains(const Walk& w) const;
};

// Reduced images of the fundamental cycles at q.
struct CycleImages {
  int q = 0;
  std::vector<Walk> cycles;
  std::vector<Walk> a;  // reduce(alpha(C_i))
  std::vector<Walk> b;  // reduce(beta(C_i))
};

CycleImages cycle_images(const Instance& inst, int q);

bool is_topologically_valid(const Walk& Q, const Instance& inst, int q);
bool is_topologically_valid(const Walk& Q, const CycleImages& ci, bool reflexive_host);

WalkClassification classify_valid_walks(const Instance& inst, int q);
WalkClassification classify_valid_walks(const Instance& inst, const CycleImages& ci);

Walk generate_vertex_walk(const Walk& Q, const Instance& inst, int q, int v, const Walk& W_v);

// S_v for every vertex along the BFS tree rooted at q, built edge by edge.
std::vector<Walk> generate_all_vertex_walks(const Walk& Q, const Instance& inst, const BfsTree& t);

enum class SymCase { Empty, Single, AllSymmetric };

struct SymFilterResult {
  SymCase tag = SymCase::Empty;
  Walk Q;
};

// walks[v] is a walk q -> v for every v in vset.
SymFilterResult symmetric_filter(const Instance& inst, int q, const std::vector<int>& vset,
                                 const std::vector<Walk>& walks);

// Decides whether d conjugated by root^n equals f, for which n.
struct ExponentSet {
  enum Kind { None, Every, One } kind = None;
  long n = 0;
};
ExponentSet conjugating_exponents(const Walk& root, const Walk& d, const Walk& f);

}  // namespace recolor
