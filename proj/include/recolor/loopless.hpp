#pragma once

#include <optional>
#include <string>
#include <vector>

#include "recolor/decision.hpp"
#include "recolor/digraph.hpp"
#include "recolor/topo.hpp"
#include "recolor/walk.hpp"

namespace recolor {

enum class VertexType { In, Out, Sym };
const char* type_name(VertexType t);

std::vector<VertexType> vertex_types(const Digraph& G);

enum class Zigzag { Ok, Violated, OddLength };

// in_pattern: a1 <- a2 -> a3 <- ... ; otherwise a1 -> a2 <- a3 -> ...
bool zigzag_pattern(const Walk& s, bool in_pattern, const Digraph& H);
Zigzag zigzag_ok(const Walk& s, VertexType t, const Digraph& H);

enum class OrientationCase { Empty, Single, AllZigzag };

struct OrientationResult {
  int q = 0;
  OrientationCase tag = OrientationCase::Empty;
  Walk Q;
};

// walks[v] runs from q0 to v for every vertex.
OrientationResult classify_orientation_compatible(const Instance& inst, int q0,
                                                  const std::vector<Walk>& walks);

struct ScheduleResult {
  bool ok = false;
  RecoloringSequence seq;
  std::vector<int> blocked;
  std::string reason;
};

// Advances each v along S_v two edges at a time while its whole
// neighbourhood sits on the intermediate colour.
ScheduleResult schedule_monochromatic(const Instance& inst, const std::vector<Walk>& S);
ScheduleResult schedule_monochromatic(const Instance& inst, int q, const Walk& Q);

struct RealizeResult {
  bool ok = false;
  RecoloringSequence seq;
  std::string reason;
};

RealizeResult realize(const Walk& Q, const Instance& inst, int q);
bool is_realizable(const Walk& Q, const Instance& inst, int q);

struct RealizableClassification {
  int q = 0;
  // All means every reduced even walk alpha(q) -> beta(q) satisfying the
  // zigzag condition at q.
  WalkClassification cls;
  std::vector<std::string> transcript;
  // Sequence realizing the walk that was tested, when one succeeded.
  std::optional<RecoloringSequence> sequence;
};

RealizableClassification classify_realizable(const Instance& inst);

// Shortest even walk alpha(q) -> beta(q) with the zigzag pattern of type t, reduced.
std::optional<Walk> zigzag_walk(const Digraph& H, int from, int to, VertexType t);

bool monochromatic(const Instance& inst, const RecoloringSequence& seq);

Decision solve_loopless(const Instance& inst, const SolveOptions& opts = {});

}  // namespace recolor
