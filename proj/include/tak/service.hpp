#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "tak/board.hpp"
#include "tak/types.hpp"

namespace tak {

// JSON document describing a position. Board, reserves, side to move and
// the move counters are enough to rebuild the position exactly.
//
//   {"size": 3, "to_move": "white", "phase": "normal", "ply": 4,
//    "plies_since_placement": 0,
//    "reserves": {"white": {"flats": 8, "capstones": 0}, "black": {...}},
//    "board": [["wF", ...]],          // board[rank][file], rank 1 first
//    "status": {"kind": "ongoing", "winner": null, "text": "ongoing"}}
//
// Each board cell is the list of piece codes, bottom to top.
std::string state_document(const Position& pos);
// Throws ParseError on malformed documents or states the rules forbid.
Position position_from_state_document(std::string_view json);

struct ServiceConfig {
  int default_depth = 20;
  std::size_t tt_entries = std::size_t{1} << 16;  // per session
  // Directory for append-only session logs; sessions found there are
  // restored on startup.
  std::optional<std::string> log_dir;
#ifdef NDEBUG
  bool check_replay = false;
#else
  bool check_replay = true;
#endif
};

struct HttpResult {
  int status = 200;
  std::string body;  // JSON
};

// Sessions of a human playing against the solver. Every entry point takes
// and returns JSON text; `handle` routes a method and path to them. Calls
// for different sessions may run concurrently.
class GameService {
 public:
  explicit GameService(ServiceConfig config = {});
  ~GameService();
  GameService(const GameService&) = delete;
  GameService& operator=(const GameService&) = delete;

  // {"size": 3, "human": "black", "depth": 20,
  //  "opening": {"type": "standard"}
  //           | {"type": "aturan", "black": "a1", "white": "b1"}
  //           | {"type": "moves", "moves": ["a1", "c3"]}}
  // All fields are optional.
  HttpResult create_game(std::string_view body);
  HttpResult get_game(const std::string& id);
  HttpResult submit_move(const std::string& id, std::string_view body);  // {"move": "a1"}
  HttpResult legal(const std::string& id);
  HttpResult analysis(const std::string& id);

  HttpResult handle(std::string_view method, std::string_view path, std::string_view body);

  std::size_t session_count() const;
  const ServiceConfig& config() const noexcept { return config_; }

 private:
  struct Session;

  std::shared_ptr<Session> find(const std::string& id) const;
  std::string new_id();
  void engine_turns(Session& s);
  void check(const Session& s) const;
  std::string document(const Session& s) const;
  void log_create(const Session& s, const std::string& settings);
  void log_move(const Session& s, const std::string& move);
  void restore();

  ServiceConfig config_;
  mutable std::shared_mutex sessions_lock_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex id_lock_;
};

// HTTP front end for a GameService. Files under `static_dir`, if given, are
// served at "/".
class HttpServer {
 public:
  explicit HttpServer(GameService& service,
                      const std::optional<std::string>& static_dir = std::nullopt);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port; throws on failure.
  int bind(const std::string& host, int port);
  // Blocks until stop() is called from another thread.
  void serve();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Binds and serves until the process is stopped; 1 when the port cannot be
// bound.
int run_server(GameService& service, const std::string& host, int port,
               const std::optional<std::string>& static_dir = std::nullopt);

}  // namespace tak
