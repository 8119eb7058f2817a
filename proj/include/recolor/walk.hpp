#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recolor/digraph.hpp"

namespace recolor {

struct Edge {
  int from = 0;
  int to = 0;
  bool operator==(const Edge&) const = default;
  Edge inverse() const { return {to, from}; }
  bool is_loop() const { return from == to; }
};

// A walk in the symmetric closure of its host, stored edge by edge.
struct Walk {
  int start = 0;
  std::vector<Edge> edges;

  Walk() = default;
  explicit Walk(int s) : start(s) {}
  Walk(int s, std::vector<Edge> e) : start(s), edges(std::move(e)) {}

  static Walk from_vertices(const std::vector<int>& vs);

  int end() const { return edges.empty() ? start : edges.back().to; }
  std::size_t size() const { return edges.size(); }
  bool empty() const { return edges.empty(); }
  bool closed() const { return start == end(); }
  std::vector<int> vertices() const;

  bool operator==(const Walk&) const = default;
};

enum class Orientation { Forward, Backward, Symmetric };
Orientation edge_orientation(const Digraph& H, const Edge& e);

bool well_formed(const Walk& w);
bool walk_in(const Walk& w, const Digraph& host);

Walk reduce(const Walk& w, bool reflexive_host = false);
bool is_reduced(const Walk& w, bool reflexive_host = false);

// Plain concatenation without reduction.
Walk concat(const Walk& a, const Walk& b);
Walk compose(const Walk& a, const Walk& b, bool reflexive_host = false);
Walk compose(std::initializer_list<const Walk*> parts, bool reflexive_host = false);
Walk invert(const Walk& w);
Walk power(const Walk& closed, long n, bool reflexive_host = false);

Walk image_walk(const Homomorphism& f, const Walk& w);

struct CyclicDecomposition {
  Walk A;     // from the core's basepoint to the input's basepoint
  Walk core;  // closed and cyclically reduced
};

bool is_cyclically_reduced(const Walk& c);
CyclicDecomposition cyclic_reduce(const Walk& c);
Walk recompose(const CyclicDecomposition& d);

// Smallest period of the edge sequence of a nonempty cyclically reduced
// closed walk; returns (root, k) with root^k == c0.
std::pair<Walk, int> primitive_root(const Walk& c0);

// Index k with b == rotation of a by k edges, or nullopt.
std::optional<std::size_t> rotation_offset(const Walk& a, const Walk& b);

struct ConjugacySolution {
  bool empty = true;
  Walk conjA;       // from a's basepoint to the root's basepoint
  Walk root;        // closed, primitive, cyclically reduced
  Walk particular;  // a particular solution
  // Member conjA * root^n * conjA^-1 * particular, reduced.
  Walk member(long n) const;
};

ConjugacySolution solve_conjugacy(const Walk& a, const Walk& b);

bool is_symmetric(const Walk& w, const Digraph& H);
// True iff walk follows arcs in its own direction.
bool is_directed(const Walk& w, const Digraph& H);

std::string format_walk(const Walk& w);
Walk parse_walk(const std::string& line);

}  // namespace recolor
