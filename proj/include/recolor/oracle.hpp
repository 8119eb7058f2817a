#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "recolor/digraph.hpp"

namespace recolor {

struct OracleScaleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr std::uint64_t kDefaultCap = 10'000'000;

// |V(H)|^|V(G)| <= cap, without overflow.
bool within_cap(int n_g, int n_h, std::uint64_t cap);

std::vector<Homomorphism> enumerate_homs(const Digraph& G, const Digraph& H,
                                         std::uint64_t cap = kDefaultCap);

// Shortest sequence in the reconfiguration graph under inst.adjacency.
std::optional<RecoloringSequence> oracle_decide(const Instance& inst,
                                                std::uint64_t cap = kDefaultCap);

struct RandomParams {
  Semantics semantics = Semantics::Loopless;
  // loopless: random | tree | k3; reflexive: random | cycle | girth5
  std::string family = "random";
  int h_min = 3;
  int h_max = 5;
  int g_min = 2;
  int g_max = 6;
  double arc_prob = 0.35;
  double extra_edge_prob = 0.3;
  // Probability that beta is reached from alpha by a random reconfiguration walk.
  double connected_bias = 0.5;
  int walk_steps = 12;
  // Probability that G contains a cycle wrapped once around a shortest cycle of H.
  double wrap_prob = 0.0;
  // Probability that the wrapped cycle repeats one colour (reflexive only).
  double stutter_prob = 0.0;
  int budget = 2000;
};

struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Campaign defaults for a named family; throws InputError for an unknown one.
RandomParams family_params(Semantics semantics, const std::string& family);

Instance random_instance(const RandomParams& p, std::uint64_t seed);

}  // namespace recolor
