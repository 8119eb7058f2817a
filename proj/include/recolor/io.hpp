#pragma once

#include <string>

#include "recolor/digraph.hpp"

namespace recolor {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// One H-vertex per line; blank lines and '#' comments ignored.
Homomorphism parse_hom(const std::string& text);
std::string format_hom(const Homomorphism& m);

// "sequence <k>" followed by k lines "move <v> <from> <to>".
RecoloringSequence parse_sequence(const std::string& text, const Homomorphism& start);
std::string format_sequence(const RecoloringSequence& seq);

std::string dot_digraph(const Digraph& g);
// Auxiliary digraph of oriented edges used to find tight closed walks.
std::string dot_tight(const Digraph& G, const Homomorphism& alpha);

}  // namespace recolor
