#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "recolor/digraph.hpp"

namespace recolor {

enum class Answer { Yes, No, Unsupported };
const char* answer_name(Answer a);

struct Decision {
  Answer answer = Answer::No;
  std::optional<RecoloringSequence> sequence;
  std::vector<std::string> transcript;
  // True when the answer concerns the restricted relation on an inadmissible template.
  bool restricted = false;
  // True when a small-instance oracle fallback produced the answer.
  bool used_fallback = false;
};

struct SolveOptions {
  bool restricted = false;
  // Escalate to the oracle when the scheduler fails on a symmetric candidate.
  bool oracle_fallback = true;
  std::uint64_t cap = 10'000'000;
};

// Splits G into weak components, hands each connected sub-instance with at
// least two vertices to `connected`, and stitches the answers together.
using ConnectedSolver = std::function<Decision(const Instance&)>;
Decision solve_by_components(const Instance& inst, const ConnectedSolver& connected);

}  // namespace recolor
