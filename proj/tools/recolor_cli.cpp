#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

#include "recolor/io.hpp"
#include "recolor/loopless.hpp"
#include "recolor/oracle.hpp"
#include "recolor/reflexive.hpp"
#include "recolor/solve.hpp"
#include "recolor/topo.hpp"

using namespace recolor;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string h_path, g_path, alpha_path, beta_path;
  std::string semantics = "auto";
  std::string adjacency = "rh";
  bool restricted = false;
  bool as_json = false;
  std::uint64_t cap = kDefaultCap;
  std::string dot_prefix;
};

void add_instance_flags(CLI::App* app, Common& c) {
  app->add_option("-H", c.h_path, "template digraph file")->required();
  app->add_option("-G", c.g_path, "instance digraph file")->required();
  app->add_option("--alpha", c.alpha_path, "source homomorphism file")->required();
  app->add_option("--beta", c.beta_path, "target homomorphism file")->required();
  app->add_option("--semantics", c.semantics)->check(CLI::IsMember({"auto", "loopless", "reflexive"}));
  app->add_option("--adjacency", c.adjacency)->check(CLI::IsMember({"rh", "hom1"}));
  app->add_flag("--restricted", c.restricted, "allow inadmissible loopless templates");
  app->add_flag("--json", c.as_json);
  app->add_option("--cap", c.cap, "oracle state cap");
  app->add_option("--dot", c.dot_prefix, "write <prefix>.G.dot, <prefix>.H.dot and <prefix>.D.dot");
}

Semantics semantics_for(const std::string& s, const Digraph& H) {
  auto inferred = infer_semantics(H);
  if (!inferred) throw UnsupportedError("template has a mixed loop pattern");
  if (s == "auto") return *inferred;
  Semantics want = s == "loopless" ? Semantics::Loopless : Semantics::Reflexive;
  if (want != *inferred) throw UsageError("template loop pattern does not match --semantics " + s);
  return want;
}

Instance load_instance(const Common& c) {
  Instance inst;
  inst.H = parse_digraph(read_file(c.h_path));
  inst.G = parse_digraph(read_file(c.g_path));
  inst.alpha = parse_hom(read_file(c.alpha_path));
  inst.beta = parse_hom(read_file(c.beta_path));
  inst.semantics = semantics_for(c.semantics, inst.H);
  inst.adjacency = c.adjacency == "hom1" ? Adjacency::Hom1 : Adjacency::Rh;
  for (const auto* m : {&inst.alpha, &inst.beta}) {
    if (static_cast<int>(m->size()) != inst.G.n())
      throw UsageError("homomorphism has " + std::to_string(m->size()) + " entries, G has " +
                       std::to_string(inst.G.n()) + " vertices");
    for (int x : *m)
      if (x >= inst.H.n()) throw UsageError("colour " + std::to_string(x) + " is not a vertex of H");
    if (!check_homomorphism(inst.G, inst.H, *m)) throw UsageError("map is not a homomorphism G -> H");
  }
  if (!c.dot_prefix.empty()) {
    write_file(c.dot_prefix + ".G.dot", dot_digraph(inst.G));
    write_file(c.dot_prefix + ".H.dot", dot_digraph(inst.H));
    write_file(c.dot_prefix + ".D.dot", dot_tight(inst.G, inst.alpha));
  }
  return inst;
}

json sequence_json(const RecoloringSequence& s) {
  json moves = json::array();
  for (const Move& m : s.moves) moves.push_back({m.vertex, m.from, m.to});
  return {{"start", s.start}, {"moves", moves}};
}

json decision_json(const Decision& d) {
  json j = {{"answer", answer_name(d.answer)},
            {"transcript", d.transcript},
            {"restricted", d.restricted},
            {"used_fallback", d.used_fallback}};
  j["sequence"] = d.sequence ? sequence_json(*d.sequence) : json(nullptr);
  return j;
}

int report(const Decision& d, const Common& c, bool with_sequence) {
  if (c.as_json) {
    std::cout << decision_json(d).dump() << "\n";
  } else {
    std::cout << answer_name(d.answer) << "\n";
    if (d.restricted) std::cout << "restricted\n";
    for (const auto& line : d.transcript) std::cout << line << "\n";
    if (with_sequence && d.sequence) std::cout << format_sequence(*d.sequence);
  }
  if (d.answer == Answer::Unsupported) return 2;
  return d.answer == Answer::Yes ? 0 : 1;
}

SolveOptions options_for(const Common& c) {
  SolveOptions o;
  o.restricted = c.restricted;
  o.cap = c.cap;
  return o;
}

int run_classify(const Common& c) {
  Instance inst = load_instance(c);
  if (!weakly_connected(inst.G) || inst.G.n() == 0) throw UsageError("classify needs a connected G");
  WalkClassification cls;
  std::vector<std::string> extra;
  if (inst.semantics == Semantics::Loopless) {
    if (!c.restricted && !template_admissible(inst.H, Semantics::Loopless).admissible)
      throw UsageError("template is not admissible; use --restricted");
    RealizableClassification rc = classify_realizable(inst);
    cls = rc.cls;
    extra = rc.transcript;
  } else {
    Instance full = inst;
    full.G.add_all_loops();
    cls = classify_reflexive(full, 0);
    extra.push_back("q 0");
  }
  json j = {{"case", case_name(cls.tag)}};
  std::ostringstream os;
  os << "case " << case_name(cls.tag) << "\n";
  if (cls.tag == WalkCase::Single) {
    os << "Q " << format_walk(cls.Q) << "\n";
    j["Q"] = format_walk(cls.Q);
  } else if (cls.tag == WalkCase::PowerCoset) {
    os << "R " << format_walk(cls.R) << "\nP " << format_walk(cls.P) << "\n";
    j["R"] = format_walk(cls.R);
    j["P"] = format_walk(cls.P);
  }
  for (const auto& line : extra) os << line << "\n";
  j["transcript"] = extra;
  std::cout << (c.as_json ? j.dump() + "\n" : os.str());
  return 0;
}

int run_verify(const Common& c, const std::string& seq_path) {
  Instance inst = load_instance(c);
  RecoloringSequence seq = parse_sequence(read_file(seq_path), inst.alpha);
  VerifyResult vr = verify_sequence(inst, seq, inst.adjacency);
  if (c.as_json) {
    std::cout << json{{"valid", vr.ok}, {"failed_at", vr.failed_at}, {"reason", vr.reason}}.dump() << "\n";
  } else if (vr.ok) {
    std::cout << "VALID\n";
  } else {
    std::cout << "INVALID\nmove " << vr.failed_at << ": " << vr.reason << "\n";
  }
  return vr.ok ? 0 : 1;
}

int run_oracle(const Common& c) {
  Instance inst = load_instance(c);
  if (!within_cap(inst.G.n(), inst.H.n(), c.cap)) throw UsageError("instance exceeds --cap");
  Decision d;
  d.transcript.push_back("oracle");
  if (auto seq = oracle_decide(inst, c.cap)) {
    d.answer = Answer::Yes;
    d.sequence = std::move(seq);
  }
  return report(d, c, true);
}

int run_check_template(const std::string& path, const std::string& mode, bool as_json) {
  Digraph H = parse_digraph(read_file(path));
  AdmissibilityReport r = template_admissible(H, mode == "loopless" ? Semantics::Loopless : Semantics::Reflexive);
  if (as_json) {
    json v = json::array();
    for (const auto& x : r.violations) v.push_back({{"kind", x.kind}, {"witness", x.witness}});
    std::cout << json{{"admissible", r.admissible}, {"violations", v}}.dump() << "\n";
  } else {
    std::cout << (r.admissible ? "ADMISSIBLE" : "INADMISSIBLE") << "\n";
    for (const auto& x : r.violations) {
      std::cout << "violation " << x.kind;
      for (int w : x.witness) std::cout << " " << w;
      std::cout << "\n";
    }
  }
  return r.admissible ? 0 : 1;
}

RandomParams params_for(const std::string& semantics, const std::string& family) {
  return family_params(semantics == "reflexive" ? Semantics::Reflexive : Semantics::Loopless, family);
}

int run_gen(const std::string& semantics, const std::string& family, std::uint64_t seed,
            const std::string& out) {
  Instance inst = random_instance(params_for(semantics, family), seed);
  write_file(out + ".H.dg", format_digraph(inst.H));
  write_file(out + ".G.dg", format_digraph(inst.G));
  write_file(out + ".alpha.hom", format_hom(inst.alpha));
  write_file(out + ".beta.hom", format_hom(inst.beta));
  std::cout << out << ".H.dg " << out << ".G.dg " << out << ".alpha.hom " << out << ".beta.hom\n";
  return 0;
}

int run_campaign(const std::string& semantics, const std::string& family, std::uint64_t seed, int count,
                 const std::string& adjacency, std::uint64_t cap) {
  RandomParams p = params_for(semantics, family);
  int yes = 0, no = 0, mismatch = 0;
  for (int i = 0; i < count; ++i) {
    Instance inst = random_instance(p, seed + static_cast<std::uint64_t>(i));
    inst.adjacency = adjacency == "hom1" ? Adjacency::Hom1 : Adjacency::Rh;
    SolveOptions o;
    o.oracle_fallback = false;
    o.cap = cap;
    Decision d = solve(inst, o);
    bool truth = oracle_decide(inst, cap).has_value();
    bool got = d.answer == Answer::Yes;
    (truth ? yes : no)++;
    if (got != truth) {
      ++mismatch;
      std::cout << "mismatch seed " << seed + static_cast<std::uint64_t>(i) << " solver "
                << answer_name(d.answer) << " oracle " << (truth ? "YES" : "NO") << "\n";
    }
  }
  std::cout << "instances " << count << " yes " << yes << " no " << no << " mismatches " << mismatch << "\n";
  return mismatch == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"H-recolouring of digraphs"};
  app.require_subcommand(1);
  Common c;

  auto* check = app.add_subcommand("check-template", "test a template for admissibility");
  std::string check_path, check_mode = "loopless";
  check->add_option("template", check_path)->required();
  check->add_option("--mode", check_mode)->check(CLI::IsMember({"loopless", "reflexive"}));
  check->add_flag("--json", c.as_json);

  auto* decide = app.add_subcommand("decide", "decide reachability");
  add_instance_flags(decide, c);
  auto* sequence = app.add_subcommand("sequence", "decide and print a recolouring sequence");
  add_instance_flags(sequence, c);
  auto* classify = app.add_subcommand("classify", "classify candidate walks");
  add_instance_flags(classify, c);
  auto* verify = app.add_subcommand("verify", "check a recolouring sequence");
  add_instance_flags(verify, c);
  std::string seq_path;
  verify->add_option("--sequence", seq_path)->required();
  auto* oracle = app.add_subcommand("oracle", "brute force reachability");
  add_instance_flags(oracle, c);

  std::string gen_semantics = "loopless", family = "random", out;
  std::uint64_t seed = 1;
  int count = 100;
  auto* gen = app.add_subcommand("gen", "write a random instance");
  gen->add_option("--semantics", gen_semantics)->check(CLI::IsMember({"loopless", "reflexive"}));
  gen->add_option("--family", family);
  gen->add_option("--seed", seed);
  gen->add_option("--out", out, "file prefix")->required();

  auto* campaign = app.add_subcommand("campaign", "compare the solver against the oracle on random instances");
  campaign->add_option("--semantics", gen_semantics)->check(CLI::IsMember({"loopless", "reflexive"}));
  campaign->add_option("--family", family);
  campaign->add_option("--seed", seed);
  campaign->add_option("--count", count);
  campaign->add_option("--adjacency", c.adjacency)->check(CLI::IsMember({"rh", "hom1"}));
  campaign->add_option("--cap", c.cap);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) return run_check_template(check_path, check_mode, c.as_json);
    if (*decide) return report(solve(load_instance(c), options_for(c)), c, false);
    if (*sequence) return report(solve(load_instance(c), options_for(c)), c, true);
    if (*classify) return run_classify(c);
    if (*verify) return run_verify(c, seq_path);
    if (*oracle) return run_oracle(c);
    if (*gen) return run_gen(gen_semantics, family, seed, out);
    if (*campaign) return run_campaign(gen_semantics, family, seed, count, c.adjacency, c.cap);
  } catch (const UnsupportedError& e) {
    std::cout << "UNSUPPORTED\n" << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const OracleScaleError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const GenerationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 2;
}
