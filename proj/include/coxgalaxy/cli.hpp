#pragma once

// The command-line surface. run_cli is the whole program minus main() so
// tests can drive it in-process. Subcommands: classify, moves, explore,
// iso, starlet, verify. Exit codes: 0 success (iso: decided), 1 error or
// failed verification, 2 undecided within budget / inconclusive.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coxgalaxy/classify.hpp"
#include "coxgalaxy/coxsys.hpp"
#include "coxgalaxy/galaxy.hpp"
#include "coxgalaxy/io.hpp"
#include "coxgalaxy/moves.hpp"
#include "coxgalaxy/oracle.hpp"
#include "coxgalaxy/witness.hpp"

namespace coxgalaxy {

namespace detail {

inline std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw MalformedInputError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline std::size_t default_vertex_budget() {
  if (const char* env = std::getenv("COXGALAXY_BUDGET_VERTICES")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return Budget{}.max_vertices;
}

inline void print_classification(const CoxeterMatrix& m, std::ostream& out) {
  out << "rank: " << m.rank() << "\n";
  for (const auto& comp : irreducible_components(m)) {
    auto type = spherical_type(m, comp);
    out << "component " << subset_names(m, comp) << ": "
        << (type ? type->str() : "not spherical") << "\n";
  }
  auto order = group_order(m);
  out << "spherical: " << (order ? "yes" : "no") << "\n";
  out << "order: " << (order ? std::to_string(*order) : "infinite") << "\n";
  out << "abelianization rank: " << abelianization_rank(m) << "\n";
  MoveStatistics st = statistics(m);
  out << "u=" << st.u << " d=" << st.d << " p=" << st.p << "\n";
}

inline void print_moves(const CoxeterMatrix& m, std::ostream& out) {
  auto pts = find_pseudo_transpositions(m);
  out << "pseudo-transpositions (" << pts.size() << "):\n";
  for (const auto& pt : pts) out << "  " << describe(m, pt) << "\n";
  auto downs = find_blow_downs(m);
  out << "blow-downs (" << downs.size() << "):\n";
  for (const auto& bd : downs)
    out << "  x=" << m.name(bd.x) << " w=" << m.name(bd.w) << " target="
        << canonical_key(bd.target) << " via " << describe(bd.target, bd.move) << "\n";
  auto twists = enumerate_twists(m);
  out << "twists (" << twists.size() << "):\n";
  for (const auto& d : twists)
    out << "  " << describe(m, d) << " trivial=" << (is_twist_trivial(m, d) ? "yes" : "no")
        << "\n";
  MoveStatistics st = statistics(m);
  out << "u=" << st.u << " d=" << st.d << " p=" << st.p << "\n";
}

inline void print_verify_report(const CoxeterMatrix& m, const MoveWitness& w,
                                const VerifyReport& rep, std::ostream& out) {
  for (const auto& e : rep.entries) {
    const auto& claimed = w.claimed;
    std::string what = e.i == e.j
                           ? claimed.name(e.i) + " involution"
                           : claimed.name(e.i) + "*" + claimed.name(e.j) + " claimed " +
                                 claimed.label(e.i, e.j).str();
    const char* status = e.status == EntryCheck::Verified     ? "verified"
                         : e.status == EntryCheck::Consistent ? "consistent"
                         : e.status == EntryCheck::Failed     ? "FAILED"
                                                              : "inconclusive";
    out << "entry " << what << ": " << status << " (" << e.note << ")\n";
  }
  if (rep.generation_checked)
    out << "generation: " << (rep.generation_ok ? "ok" : "FAILED") << "\n";
  else
    out << "generation: not checked (group beyond cap)\n";
  out << "result: " << (rep.ok ? (rep.finite_entries_verified ? "ok" : "inconclusive")
                               : "failed")
      << "\n";
  (void)m;
}

}  // namespace detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"complete Coxeter graphs, their moves and galaxy fragments"};
  app.name("coxgalaxy");
  app.require_subcommand(1);

  std::string file1, file2, movefile;
  std::string format = "json";
  bool core = false, do_spine = false;
  Budget budget;
  budget.max_vertices = detail::default_vertex_budget();
  std::uint64_t cap = 100000;
  std::vector<int> ks;

  CLI::App* classify_cmd = app.add_subcommand("classify", "spherical decomposition and statistics");
  classify_cmd->add_option("file", file1, "system JSON file")->required();

  CLI::App* moves_cmd = app.add_subcommand("moves", "available blow-ups, blow-downs and twists");
  moves_cmd->add_option("file", file1, "system JSON file")->required();

  CLI::App* explore_cmd = app.add_subcommand("explore", "walk the galaxy fragment");
  explore_cmd->add_option("file", file1, "system JSON file")->required();
  explore_cmd->add_option("--max-vertices", budget.max_vertices, "vertex budget");
  explore_cmd->add_option("--max-rank", budget.max_rank, "largest rank to blow up to");
  explore_cmd->add_option("--max-seconds", budget.max_seconds, "time budget");
  explore_cmd->add_flag("--core", core, "keep only edges between adjacent layers");
  explore_cmd->add_flag("--spine", do_spine, "spanning forest of the core (implies --core)");
  explore_cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "dot"}));

  CLI::App* iso_cmd = app.add_subcommand("iso", "decide whether two systems give isomorphic groups");
  iso_cmd->add_option("file1", file1, "first system")->required();
  iso_cmd->add_option("file2", file2, "second system")->required();
  iso_cmd->add_option("--max-vertices", budget.max_vertices, "vertex budget");
  iso_cmd->add_option("--max-rank", budget.max_rank, "largest rank to blow up to");
  iso_cmd->add_option("--max-seconds", budget.max_seconds, "time budget");

  CLI::App* starlet_cmd = app.add_subcommand("starlet", "build a star system with labels 4k+2");
  starlet_cmd->add_option("k", ks, "distinct parameters k >= 1")->required()->expected(-1);
  starlet_cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "dot"}));

  CLI::App* verify_cmd = app.add_subcommand("verify", "check a move's presentation by exact orders");
  verify_cmd->add_option("file", file1, "system JSON file")->required();
  verify_cmd->add_option("move", movefile, "move JSON file")->required();
  verify_cmd->add_option("--cap", cap, "group size cap for exact computations");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(classify_cmd)) {
      detail::print_classification(parse_system_text(detail::slurp(file1)), out);
      return 0;
    }
    if (app.got_subcommand(moves_cmd)) {
      detail::print_moves(parse_system_text(detail::slurp(file1)), out);
      return 0;
    }
    if (app.got_subcommand(explore_cmd)) {
      CoxeterMatrix m = parse_system_text(detail::slurp(file1));
      GalaxyFragment frag = explore(m, budget);
      if (do_spine) frag = spine(frag);
      else if (core) frag = vertical_core(frag);
      if (format == "dot") out << fragment_to_dot(frag);
      else out << fragment_to_json(frag).dump(2) << "\n";
      return 0;
    }
    if (app.got_subcommand(iso_cmd)) {
      CoxeterMatrix m1 = parse_system_text(detail::slurp(file1));
      CoxeterMatrix m2 = parse_system_text(detail::slurp(file2));
      IsoResult r = decide_isomorphic(m1, m2, budget);
      out << "outcome: "
          << (r.outcome == IsoOutcome::Isomorphic       ? "isomorphic"
              : r.outcome == IsoOutcome::NonIsomorphic ? "not isomorphic"
                                                       : "unknown")
          << "\n";
      out << "certificate: " << r.certificate << "\n";
      if (!r.path.empty()) {
        out << "path:\n";
        for (const auto& rec : r.path)
          out << "  " << move_kind_name(rec.kind) << ": " << rec.description << " ["
              << rec.from_canon << " -> " << rec.to_canon << "]\n";
      }
      return r.outcome == IsoOutcome::Unknown ? 2 : 0;
    }
    if (app.got_subcommand(starlet_cmd)) {
      CoxeterMatrix m = starlet(ks);
      if (format == "dot") out << system_to_dot(m);
      else out << system_to_json(m).dump(2) << "\n";
      return 0;
    }
    if (app.got_subcommand(verify_cmd)) {
      CoxeterMatrix m = parse_system_text(detail::slurp(file1));
      nlohmann::json mj;
      try {
        mj = nlohmann::json::parse(detail::slurp(movefile));
      } catch (const nlohmann::json::parse_error& e) {
        throw MalformedInputError(std::string("invalid JSON: ") + e.what());
      }
      MoveDescriptor mv = parse_move(m, mj);
      std::optional<MoveWitness> w;
      std::optional<VerifyReport> rep;
      if (auto* pt = std::get_if<PseudoTransposition>(&mv)) {
        w = blow_up_witness(m, *pt, cap);
        if (w) rep = verify_generating_set(m, w->words, w->claimed, cap);
      } else {
        auto* d = std::get_if<TwistDescriptor>(&mv);
        w = twist_witness(m, *d, cap);
        if (w) rep = verify_generating_set(m, w->words, w->claimed, cap);
      }
      if (!w || !rep) {
        out << "result: inconclusive (cap too small for the move's parabolic)\n";
        return 2;
      }
      detail::print_verify_report(m, *w, *rep, out);
      if (!rep->ok) return 1;
      return rep->finite_entries_verified ? 0 : 2;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace coxgalaxy
