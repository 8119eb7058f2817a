#pragma once

#include <optional>

#include "recolor/decision.hpp"
#include "recolor/digraph.hpp"

namespace recolor {

// Reflexive when every vertex of H has a loop, loopless when none does.
std::optional<Semantics> infer_semantics(const Digraph& H);

// Dispatches on inst.semantics. Mixed loop patterns yield Unsupported.
Decision solve(const Instance& inst, const SolveOptions& opts = {});

}  // namespace recolor
