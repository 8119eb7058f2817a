#include "recolor/io.hpp"

#include <fstream>
#include <sstream>

#include "recolor/reflexive.hpp"

namespace recolor {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

namespace {

// Lines with comments stripped, paired with their 1-based numbers.
std::vector<std::pair<int, std::string>> content_lines(const std::string& text) {
  std::vector<std::pair<int, std::string>> out;
  std::istringstream is(text);
  std::string line;
  int no = 0;
  while (std::getline(is, line)) {
    ++no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.emplace_back(no, line);
  }
  return out;
}

std::string at_line(const std::string& what, int no) { return what + ", line " + std::to_string(no); }

}  // namespace

Homomorphism parse_hom(const std::string& text) {
  Homomorphism m;
  for (auto& [no, line] : content_lines(text)) {
    std::istringstream ls(line);
    int x;
    std::string rest;
    if (!(ls >> x) || (ls >> rest)) throw ParseError(at_line("malformed homomorphism entry", no));
    if (x < 0) throw ParseError(at_line("negative colour", no));
    m.push_back(x);
  }
  return m;
}

std::string format_hom(const Homomorphism& m) {
  std::ostringstream os;
  for (int x : m) os << x << "\n";
  return os.str();
}

RecoloringSequence parse_sequence(const std::string& text, const Homomorphism& start) {
  auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("empty sequence file");
  std::istringstream head(lines[0].second);
  std::string word, rest;
  long k = -1;
  if (!(head >> word >> k) || word != "sequence" || k < 0 || (head >> rest))
    throw ParseError(at_line("expected 'sequence <k>'", lines[0].first));
  if (static_cast<long>(lines.size()) - 1 != k)
    throw ParseError("sequence declares " + std::to_string(k) + " moves but lists " +
                     std::to_string(lines.size() - 1));
  RecoloringSequence seq;
  seq.start = start;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream ls(lines[i].second);
    Move m;
    if (!(ls >> word >> m.vertex >> m.from >> m.to) || word != "move" || (ls >> rest))
      throw ParseError(at_line("expected 'move <v> <from> <to>'", lines[i].first));
    seq.moves.push_back(m);
  }
  return seq;
}

std::string format_sequence(const RecoloringSequence& seq) {
  std::ostringstream os;
  os << "sequence " << seq.moves.size() << "\n";
  for (const Move& m : seq.moves) os << "move " << m.vertex << " " << m.from << " " << m.to << "\n";
  return os.str();
}

std::string dot_digraph(const Digraph& g) {
  std::ostringstream os;
  os << "digraph \"" << (g.name().empty() ? "g" : g.name()) << "\" {\n";
  for (int v = 0; v < g.n(); ++v) os << "  " << v << ";\n";
  for (auto [u, v] : g.arcs()) os << "  " << u << " -> " << v << ";\n";
  os << "}\n";
  return os.str();
}

std::string dot_tight(const Digraph& G, const Homomorphism& alpha) {
  TightDigraph td = build_tight_digraph(G, alpha);
  std::ostringstream os;
  os << "digraph \"tight\" {\n";
  for (int x = 0; x < td.D.n(); ++x)
    os << "  " << x << " [label=\"" << td.label[x].from << "->" << td.label[x].to << "\"];\n";
  for (auto [x, y] : td.D.arcs()) os << "  " << x << " -> " << y << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace recolor
