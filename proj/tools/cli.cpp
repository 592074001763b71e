#include "cli.hpp"

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tak/board.hpp"
#include "tak/combinatorics.hpp"
#include "tak/errors.hpp"
#include "tak/lines.hpp"
#include "tak/moves.hpp"
#include "tak/notation.hpp"
#include "tak/service.hpp"
#include "tak/solver.hpp"

namespace tak::cli {

namespace {

using nlohmann::json;

std::vector<std::string> split_opening(const std::string& text) {
  std::string spaced = text;
  for (char& c : spaced)
    if (c == ',') c = ' ';
  std::istringstream in(spaced);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

json value_json(const GameValue& v) {
  json j;
  j["kind"] = v.kind == GameValue::Kind::ProvenWin    ? "proven-win"
              : v.kind == GameValue::Kind::ProvenLoss ? "proven-loss"
                                                      : "unknown";
  j["color"] = std::string(color_name(v.color));
  const auto winner = v.winner();
  j["winner"] = winner ? json(std::string(color_name(*winner))) : json(nullptr);
  j["plies"] = winner ? json(v.plies) : json(nullptr);
  j["bound"] = v.bound;
  return j;
}

json pv_json(const std::vector<Move>& pv) {
  json out = json::array();
  for (const Move& m : pv) out.push_back(format_move(m));
  return out;
}

std::string pv_text(const std::vector<Move>& pv) {
  std::string out;
  for (const Move& m : pv) out += (out.empty() ? "" : " ") + format_move(m);
  return out;
}

struct Options {
  int size = 3;
  int depth = 1;
  std::string opening;
  bool aturan = false;
  int max_depth = 20;
  int threads = 1;
  std::size_t tt_size = std::size_t{1} << 20;
  bool json_out = false;
  int height = 1;
  int carry = 1;
  bool count_only = false;
  std::vector<std::string> paths;
  int leaf_depth = 8;
  int refute_depth = 2;
  bool all_entries = false;
  std::string color = "black";
  bool auto_play = false;
  unsigned seed = 1;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string log_dir;
  std::string static_dir;
};

int cmd_perft(const Options& o, std::ostream& out) {
  const Position pos = opening_position(split_opening(o.opening), o.size);
  const std::uint64_t nodes = perft(pos, o.depth);
  if (o.json_out) {
    out << json{{"size", o.size}, {"depth", o.depth}, {"nodes", nodes}}.dump(2) << '\n';
  } else {
    out << nodes << '\n';
  }
  return 0;
}

int cmd_falls(const Options& o, std::ostream& out) {
  const std::uint64_t count = fall_count(o.height, o.carry);
  if (o.json_out) {
    json j{{"height", o.height}, {"carry", o.carry}, {"count", count}};
    if (!o.count_only) {
      json patterns = json::array();
      for (const FallPattern& p : fall_patterns(o.height, o.carry)) patterns.push_back(p.drops);
      j["patterns"] = std::move(patterns);
    }
    out << j.dump(2) << '\n';
    return 0;
  }
  if (o.count_only) {
    out << count << '\n';
    return 0;
  }
  for (const FallPattern& p : fall_patterns(o.height, o.carry)) {
    for (int d : p.drops) out << d;
    out << '\n';
  }
  return 0;
}

int cmd_solve(const Options& o, std::ostream& out) {
  SolverConfig config;
  config.max_depth = o.max_depth;
  config.threads = o.threads;
  config.tt_entries = o.tt_size;
  Solver solver(config);
  const auto t0 = std::chrono::steady_clock::now();

  if (o.aturan) {
    if (o.size != 3) throw DomainError("--aturan is defined for --size 3");
    const std::vector<AturanEntry> entries = solve_all_aturan(solver, o.max_depth, o.size);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool all_white = true;
    for (const AturanEntry& e : entries)
      all_white = all_white && e.result.value.winner() == std::optional<Color>(Color::White);
    if (o.json_out) {
      json rows = json::array();
      for (const AturanEntry& e : entries) {
        rows.push_back({{"black", format_square(e.black)},
                        {"white", format_square(e.white)},
                        {"value", value_json(e.result.value)},
                        {"depth", e.result.depth},
                        {"pv", pv_json(e.result.pv)},
                        {"representative", e.representative}});
      }
      out << json{{"size", o.size},    {"max_depth", o.max_depth}, {"entries", rows},
                  {"all_white_wins", all_white}, {"seconds", seconds}}
                 .dump(2)
          << '\n';
    } else {
      for (const AturanEntry& e : entries) {
        out << "black " << format_square(e.black) << " white " << format_square(e.white) << "  "
            << to_string(e.result.value) << "  pv " << pv_text(e.result.pv) << '\n';
      }
      out << entries.size() << " openings, " << (all_white ? "all White wins" : "NOT all White wins")
          << ", " << seconds << " s\n";
    }
    return all_white ? 0 : 1;
  }

  const Position pos = opening_position(split_opening(o.opening), o.size);
  const SolveResult r = solver.solve(pos, o.max_depth);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.json_out) {
    out << json{{"position", serialize(pos)}, {"value", value_json(r.value)}, {"depth", r.depth},
                {"pv", pv_json(r.pv)},         {"nodes", r.nodes},           {"seconds", seconds}}
               .dump(2)
        << '\n';
  } else {
    out << render(pos) << to_string(r.value) << '\n';
    if (!r.pv.empty()) out << "pv " << pv_text(r.pv) << '\n';
    out << r.nodes << " nodes, " << seconds << " s\n";
  }
  return r.value.kind == GameValue::Kind::Unknown ? 1 : 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
  std::vector<LineFile> files;
  if (o.paths.empty()) {
    files = bundled_dataset();
  } else {
    for (const std::string& p : o.paths) files.push_back(load_line_file(p));
  }
  VerifyOptions options;
  options.leaf_depth = o.leaf_depth;
  options.refute_depth = o.refute_depth;
  bool passed = true;
  json reports = json::array();
  for (const LineFile& f : files) {
    const VerifyReport r = verify(f, options);
    passed = passed && r.passed();
    if (o.json_out) {
      reports.push_back(json::parse(r.to_json()));
    } else {
      out << r.to_text(o.all_entries);
    }
  }
  if (o.json_out) out << json{{"passed", passed}, {"reports", reports}}.dump(2) << '\n';
  return passed ? 0 : 1;
}

int cmd_play(const Options& o, std::istream& in, std::ostream& out) {
  const Color human = o.color == "white" ? Color::White : Color::Black;
  Position pos = opening_position(split_opening(o.opening), o.size);
  SolverConfig config;
  config.max_depth = o.max_depth;
  config.tt_entries = o.tt_size;
  Solver solver(config);
  std::mt19937 rng(o.seed);

  out << render(pos);
  while (!outcome(pos).terminal()) {
    Move m;
    if (pos.to_move() == human) {
      const std::vector<Move> legal = sorted_by_text(legal_moves(pos));
      if (o.auto_play) {
        m = legal[std::uniform_int_distribution<std::size_t>(0, legal.size() - 1)(rng)];
        out << color_name(human) << " plays " << format_move(m) << '\n';
      } else {
        out << color_name(human) << " to move> " << std::flush;
        std::string line;
        if (!std::getline(in, line)) {
          out << "\ninput ended\n";
          return 1;
        }
        const std::vector<std::string> words = split_opening(line);
        if (words.empty()) continue;
        try {
          m = parse_move(words[0], pos);
        } catch (const ParseError& e) {
          out << "bad move: " << e.what() << '\n';
          continue;
        }
        if (std::find(legal.begin(), legal.end(), m) == legal.end()) {
          out << "illegal move " << format_move(m) << ": "
              << illegal_reason(pos, m).value_or("not legal here") << '\n';
          continue;
        }
      }
    } else {
      m = solver.best_move(pos);
      out << color_name(pos.to_move()) << " (engine) plays " << format_move(m) << '\n';
    }
    apply(pos, m);
    out << render(pos);
  }
  out << "result: " << to_string(outcome(pos)) << '\n';
  return 0;
}

int cmd_serve(const Options& o, std::ostream& out) {
  ServiceConfig config;
  config.default_depth = o.max_depth;
  if (!o.log_dir.empty()) config.log_dir = o.log_dir;
  GameService service(config);
  const std::optional<std::string> static_dir =
      o.static_dir.empty() ? std::nullopt : std::optional<std::string>(o.static_dir);
  HttpServer server(service, static_dir);
  const int port = server.bind(o.host, o.port);
  out << "listening on http://" << o.host << ":" << port << std::endl;
  server.serve();
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Tak rules engine, 3x3 solver and diagram verifier", "tak"};
  app.require_subcommand(1);

  auto size_opt = [&o](CLI::App* sub) {
    sub->add_option("--size", o.size, "board size")->check(CLI::Range(kMinSize, kMaxSize));
  };
  auto opening_opt = [&o](CLI::App* sub) {
    sub->add_option("--opening", o.opening,
                    "opening moves, optionally starting with b:<sq> w:<sq> flats");
  };
  auto json_opt = [&o](CLI::App* sub) { sub->add_flag("--json", o.json_out, "JSON output"); };

  CLI::App* perft_cmd = app.add_subcommand("perft", "count move sequences to a depth");
  size_opt(perft_cmd);
  opening_opt(perft_cmd);
  perft_cmd->add_option("--depth", o.depth, "plies")->check(CLI::Range(0, 12));
  json_opt(perft_cmd);

  CLI::App* solve_cmd = app.add_subcommand("solve", "prove the game value of a position");
  size_opt(solve_cmd);
  opening_opt(solve_cmd);
  solve_cmd->add_flag("--aturan", o.aturan, "solve all 72 opening flat pairs on 3x3");
  solve_cmd->add_option("--max-depth", o.max_depth, "ply bound")->check(CLI::Range(1, 60));
  solve_cmd->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1, 256));
  solve_cmd->add_option("--tt-size", o.tt_size, "transposition table entries (0 disables)")
      ->check(CLI::Range(std::size_t{0}, std::size_t{1} << 30));
  json_opt(solve_cmd);

  CLI::App* falls_cmd = app.add_subcommand("falls", "ways a tower can fall in one direction");
  falls_cmd->add_option("--height", o.height, "tower height")->required()->check(CLI::Range(1, 62));
  falls_cmd->add_option("--carry", o.carry, "carry limit")->required()->check(CLI::Range(1, 62));
  falls_cmd->add_flag("--count", o.count_only, "print only the number of patterns");
  json_opt(falls_cmd);

  CLI::App* verify_cmd = app.add_subcommand("verify-lines", "check .lines files (bundled set when none given)");
  verify_cmd->add_option("paths", o.paths, ".lines files")->check(CLI::ExistingFile);
  verify_cmd->add_option("--leaf-depth", o.leaf_depth, "plies allowed to prove a leaf")
      ->check(CLI::Range(0, 30));
  verify_cmd->add_option("--refute-depth", o.refute_depth,
                         "plies, counting Black's move, within which an unlisted move must lose")
      ->check(CLI::Range(1, 30));
  verify_cmd->add_flag("--all", o.all_entries, "list every entry, not just failures");
  json_opt(verify_cmd);

  CLI::App* play_cmd = app.add_subcommand("play", "play against the solver on stdin/stdout");
  size_opt(play_cmd);
  opening_opt(play_cmd);
  play_cmd->add_option("--color", o.color, "your color")->check(CLI::IsMember({"white", "black"}));
  play_cmd->add_option("--depth", o.max_depth, "engine proof depth")->check(CLI::Range(1, 60));
  play_cmd->add_option("--tt-size", o.tt_size, "transposition table entries")
      ->check(CLI::Range(std::size_t{0}, std::size_t{1} << 30));
  play_cmd->add_flag("--auto", o.auto_play, "play your side with random legal moves");
  play_cmd->add_option("--seed", o.seed, "random seed for --auto");

  CLI::App* serve_cmd = app.add_subcommand("serve", "run the HTTP/JSON game service");
  serve_cmd->add_option("--host", o.host, "address to bind");
  serve_cmd->add_option("--port", o.port, "port, 0 for any free port")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--depth", o.max_depth, "default engine depth")->check(CLI::Range(1, 60));
  serve_cmd->add_option("--log-dir", o.log_dir, "directory for session logs");
  serve_cmd->add_option("--static", o.static_dir, "directory served at /")->check(CLI::ExistingDirectory);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (perft_cmd->parsed()) return cmd_perft(o, out);
    if (falls_cmd->parsed()) return cmd_falls(o, out);
    if (solve_cmd->parsed()) return cmd_solve(o, out);
    if (verify_cmd->parsed()) return cmd_verify(o, out);
    if (play_cmd->parsed()) return cmd_play(o, in, out);
    if (serve_cmd->parsed()) return cmd_serve(o, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const IllegalMove& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const LineFileError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace tak::cli
