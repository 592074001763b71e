#include "tak/service.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "tak/errors.hpp"
#include "tak/moves.hpp"
#include "tak/notation.hpp"
#include "tak/solver.hpp"

namespace tak {

using nlohmann::json;

namespace {

json status_json(const Outcome& o) {
  json j;
  switch (o.kind) {
    case Outcome::Kind::Ongoing: j["kind"] = "ongoing"; break;
    case Outcome::Kind::RoadWin: j["kind"] = "road-win"; break;
    case Outcome::Kind::FlatWin: j["kind"] = "flat-win"; break;
    case Outcome::Kind::Draw: j["kind"] = "draw"; break;
  }
  j["winner"] = o.is_win() ? json(std::string(color_name(o.winner))) : json(nullptr);
  j["text"] = to_string(o);
  return j;
}

json position_json(const Position& pos) {
  json j;
  j["size"] = pos.size();
  j["to_move"] = std::string(color_name(pos.to_move()));
  j["phase"] = pos.phase() == Phase::Swap ? "swap" : "normal";
  j["ply"] = pos.ply();
  j["plies_since_placement"] = pos.plies_since_placement();
  for (Color c : {Color::White, Color::Black}) {
    j["reserves"][std::string(color_name(c))] = {{"flats", pos.reserves().flats_of(c)},
                                                 {"capstones", pos.reserves().capstones_of(c)}};
  }
  json board = json::array();
  for (int r = 0; r < pos.size(); ++r) {
    json rank = json::array();
    for (int f = 0; f < pos.size(); ++f) {
      const Stack& s = pos[Square{f, r}];
      json cell = json::array();
      for (int i = 0; i < s.height(); ++i) cell.push_back(std::string(piece_code(s.at(i))));
      rank.push_back(std::move(cell));
    }
    board.push_back(std::move(rank));
  }
  j["board"] = std::move(board);
  j["status"] = status_json(outcome(pos));
  return j;
}

std::vector<std::string> legal_texts(const Position& pos) {
  std::vector<std::string> out;
  if (outcome(pos).terminal()) return out;
  for (const Move& m : sorted_by_text(legal_moves(pos))) out.push_back(format_move(m));
  return out;
}

HttpResult error(int status, const std::string& message, const json& extra = json::object()) {
  json j = extra;
  j["error"] = message;
  return {status, j.dump()};
}

Color parse_color(const std::string& s) {
  if (s == "white") return Color::White;
  if (s == "black") return Color::Black;
  throw DomainError("color must be \"white\" or \"black\"");
}

// Reads an integer field with bounds, keeping messages specific.
int int_field(const json& j, const char* key, int fallback, int lo, int hi) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) throw DomainError(std::string(key) + " must be an integer");
  const int v = j[key].get<int>();
  if (v < lo || v > hi)
    throw DomainError(std::string(key) + " must be in " + std::to_string(lo) + ".." +
                      std::to_string(hi));
  return v;
}

}  // namespace

std::string state_document(const Position& pos) { return position_json(pos).dump(); }

Position position_from_state_document(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  try {
    const int size = j.at("size").get<int>();
    if (size < kMinSize || size > kMaxSize) throw ParseError("size must be in 3..8", 0);
    const json& board = j.at("board");
    if (!board.is_array() || static_cast<int>(board.size()) != size)
      throw ParseError("board must have one array per rank", 0);
    // Build the canonical text form and let its parser do the validation.
    std::string out;
    for (int r = size - 1; r >= 0; --r) {
      const json& rank = board[static_cast<std::size_t>(r)];
      if (!rank.is_array() || static_cast<int>(rank.size()) != size)
        throw ParseError("rank " + std::to_string(r + 1) + " must have one cell per file", 0);
      for (int f = 0; f < size; ++f) {
        const json& cell = rank[static_cast<std::size_t>(f)];
        if (!cell.is_array()) throw ParseError("board cells must be arrays", 0);
        std::string square;
        for (const json& code : cell) square += code.get<std::string>();
        out += square.empty() ? "x" : square;
        if (f + 1 < size) out += ',';
      }
      if (r > 0) out += '/';
    }
    const std::string to_move = j.at("to_move").get<std::string>();
    if (to_move != "white" && to_move != "black") throw ParseError("bad to_move", 0);
    const json& res = j.at("reserves");
    out += ' ';
    out += to_move == "white" ? 'w' : 'b';
    out += ' ' + std::to_string(j.at("ply").get<int>());
    out += ' ' + std::to_string(j.at("plies_since_placement").get<int>());
    for (const char* c : {"white", "black"}) {
      out += ' ' + std::to_string(res.at(c).at("flats").get<int>()) + ',' +
             std::to_string(res.at(c).at("capstones").get<int>());
    }
    Position pos = parse_position(out);
    if (j.contains("phase")) {
      const std::string phase = j["phase"].get<std::string>();
      if (phase != (pos.phase() == Phase::Swap ? "swap" : "normal"))
        throw ParseError("phase does not match ply", 0);
    }
    return pos;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad state document: ") + e.what(), 0);
  }
}

// ---------------------------------------------------------------- sessions

struct GameService::Session {
  Session(int depth, std::size_t tt) : solver(SolverConfig{depth, 1, tt, true}) {}

  std::string id;
  json settings;  // normalized creation request
  Position start;
  std::vector<Move> history;  // from `start`
  Position pos;
  Color human = Color::Black;
  int depth = 20;
  std::optional<Move> last_engine_move;
  std::optional<std::pair<std::size_t, std::string>> analysis_cache;  // history size, body
  Solver solver;
  std::mutex lock;
};

GameService::GameService(ServiceConfig config) : config_(std::move(config)) {
  if (config_.log_dir) {
    std::filesystem::create_directories(*config_.log_dir);
    restore();
  }
}

GameService::~GameService() = default;

std::size_t GameService::session_count() const {
  std::shared_lock lock(sessions_lock_);
  return sessions_.size();
}

std::shared_ptr<GameService::Session> GameService::find(const std::string& id) const {
  std::shared_lock lock(sessions_lock_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::string GameService::new_id() {
  std::lock_guard lock(id_lock_);
  static std::random_device device;
  std::ostringstream out;
  out << std::hex;
  for (int i = 0; i < 4; ++i) {
    out.width(8);
    out.fill('0');
    out << device();
  }
  return out.str();
}

void GameService::check(const Session& s) const {
  if (!config_.check_replay) return;
  Position replay = s.start;
  for (const Move& m : s.history) apply(replay, m);
  if (!(replay == s.pos)) throw ContractError("session " + s.id + " history does not replay");
}

std::string GameService::document(const Session& s) const {
  json j = position_json(s.pos);
  j["id"] = s.id;
  j["human"] = std::string(color_name(s.human));
  j["depth"] = s.depth;
  j["opening"] = s.settings.at("opening");
  j["start"] = position_json(s.start);
  json history = json::array();
  for (const Move& m : s.history) history.push_back(format_move(m));
  j["history"] = std::move(history);
  j["last_engine_move"] =
      s.last_engine_move ? json(format_move(*s.last_engine_move)) : json(nullptr);
  j["legal"] = legal_texts(s.pos);
  return j.dump();
}

void GameService::engine_turns(Session& s) {
  while (!outcome(s.pos).terminal() && s.pos.to_move() != s.human) {
    const Move m = s.solver.best_move(s.pos);
    apply(s.pos, m);
    s.history.push_back(m);
    s.last_engine_move = m;
    log_move(s, format_move(m));
  }
}

HttpResult GameService::create_game(std::string_view body) {
  json req;
  try {
    req = body.empty() ? json::object() : json::parse(body);
  } catch (const json::parse_error& e) {
    return error(400, std::string("invalid JSON: ") + e.what());
  }
  if (!req.is_object()) return error(400, "request body must be a JSON object");

  std::shared_ptr<Session> session;
  try {
    const int size = int_field(req, "size", 3, kMinSize, kMaxSize);
    const int depth = int_field(req, "depth", config_.default_depth, 1, 40);
    const Color human = parse_color(req.value("human", std::string("black")));
    json opening = req.value("opening", json{{"type", "standard"}});
    if (opening.is_string()) opening = json{{"type", opening}};
    const std::string type = opening.value("type", std::string("standard"));

    session = std::make_shared<Session>(depth, config_.tt_entries);
    session->human = human;
    session->depth = depth;
    Position start = new_position(size);
    if (type == "aturan") {
      const Square black = parse_square(opening.at("black").get<std::string>(), size);
      const Square white = parse_square(opening.at("white").get<std::string>(), size);
      start = aturan_position(black, white, size);
    } else if (type == "moves") {
      for (const json& m : opening.at("moves")) apply(start, parse_move(m.get<std::string>(), start));
    } else if (type != "standard") {
      return error(400, "opening type must be standard, aturan or moves");
    }
    if (outcome(start).terminal()) return error(400, "opening ends the game");
    session->start = start;
    session->pos = start;
    session->settings = {{"size", size}, {"human", color_name(human)}, {"depth", depth},
                         {"opening", opening}};
  } catch (const json::exception& e) {
    return error(400, std::string("bad opening: ") + e.what());
  } catch (const std::invalid_argument& e) {  // DomainError, IllegalMove
    return error(400, e.what());
  } catch (const ParseError& e) {
    return error(400, e.what());
  }

  session->id = new_id();
  {
    std::unique_lock lock(sessions_lock_);
    sessions_[session->id] = session;
  }
  std::lock_guard lock(session->lock);
  log_create(*session, session->settings.dump());
  engine_turns(*session);
  check(*session);
  return {201, document(*session)};
}

HttpResult GameService::get_game(const std::string& id) {
  auto s = find(id);
  if (!s) return error(404, "no game with id " + id);
  std::lock_guard lock(s->lock);
  check(*s);
  return {200, document(*s)};
}

HttpResult GameService::legal(const std::string& id) {
  auto s = find(id);
  if (!s) return error(404, "no game with id " + id);
  std::lock_guard lock(s->lock);
  check(*s);
  json j;
  j["id"] = id;
  j["to_move"] = std::string(color_name(s->pos.to_move()));
  j["legal"] = legal_texts(s->pos);
  return {200, j.dump()};
}

HttpResult GameService::submit_move(const std::string& id, std::string_view body) {
  auto s = find(id);
  if (!s) return error(404, "no game with id " + id);
  std::string text;
  try {
    const json req = json::parse(body);
    text = req.at("move").get<std::string>();
  } catch (const json::exception& e) {
    return error(400, std::string("expected {\"move\": \"<move>\"}: ") + e.what());
  }

  std::lock_guard lock(s->lock);
  check(*s);
  const Outcome o = outcome(s->pos);
  if (o.terminal()) return error(409, "game is over: " + to_string(o));
  if (s->pos.to_move() != s->human) return error(409, "not your turn");
  const json legal_list = legal_texts(s->pos);
  Move m;
  try {
    m = parse_move(text, s->pos);
  } catch (const ParseError& e) {
    return error(422, e.what(), {{"legal", legal_list}});
  }
  if (auto why = illegal_reason(s->pos, m))
    return error(422, "illegal move " + format_move(m) + ": " + *why, {{"legal", legal_list}});

  apply(s->pos, m);
  s->history.push_back(m);
  s->last_engine_move.reset();
  log_move(*s, format_move(m));
  engine_turns(*s);
  check(*s);
  return {200, document(*s)};
}

HttpResult GameService::analysis(const std::string& id) {
  auto s = find(id);
  if (!s) return error(404, "no game with id " + id);
  std::lock_guard lock(s->lock);
  check(*s);
  if (s->analysis_cache && s->analysis_cache->first == s->history.size())
    return {200, s->analysis_cache->second};

  json j;
  j["id"] = id;
  j["to_move"] = std::string(color_name(s->pos.to_move()));
  const Outcome o = outcome(s->pos);
  json value;
  if (o.terminal()) {
    value["color"] = std::string(color_name(s->pos.to_move()));
    value["kind"] = o.kind == Outcome::Kind::Draw             ? "draw"
                    : o.is_win_for(s->pos.to_move())          ? "proven-win"
                                                              : "proven-loss";
    value["plies"] = 0;
    value["winner"] = o.is_win() ? json(std::string(color_name(o.winner))) : json(nullptr);
    j["depth"] = 0;
    j["pv"] = json::array();
    j["text"] = to_string(o);
  } else {
    const SolveResult r = s->solver.solve(s->pos, s->depth);
    value["color"] = std::string(color_name(r.value.color));
    value["kind"] = r.value.kind == GameValue::Kind::ProvenWin    ? "proven-win"
                    : r.value.kind == GameValue::Kind::ProvenLoss ? "proven-loss"
                                                                  : "unknown";
    value["plies"] = r.value.is_win() || r.value.kind == GameValue::Kind::ProvenLoss
                         ? json(r.value.plies)
                         : json(nullptr);
    const auto winner = r.value.winner();
    value["winner"] = winner ? json(std::string(color_name(*winner))) : json(nullptr);
    j["depth"] = r.depth;
    json pv = json::array();
    for (const Move& m : r.pv) pv.push_back(format_move(m));
    j["pv"] = std::move(pv);
    j["text"] = to_string(r.value);
  }
  j["value"] = std::move(value);
  j["bound"] = s->depth;
  s->analysis_cache = std::pair{s->history.size(), j.dump()};
  return {200, s->analysis_cache->second};
}

HttpResult GameService::handle(std::string_view method, std::string_view path,
                               std::string_view body) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : path) {
    if (c == '?') break;
    if (c == '/') {
      if (!current.empty()) parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) parts.push_back(current);

  try {
    if (parts.empty() || parts[0] != "games") return error(404, "not found");
    if (parts.size() == 1) {
      if (method == "POST") return create_game(body);
      return error(405, "use POST /games");
    }
    const std::string& id = parts[1];
    if (parts.size() == 2) {
      if (method == "GET") return get_game(id);
      return error(405, "use GET /games/{id}");
    }
    if (parts.size() == 3 && parts[2] == "moves") {
      if (method == "POST") return submit_move(id, body);
      return error(405, "use POST /games/{id}/moves");
    }
    if (parts.size() == 3 && parts[2] == "legal") {
      if (method == "GET") return legal(id);
      return error(405, "use GET /games/{id}/legal");
    }
    if (parts.size() == 3 && parts[2] == "analysis") {
      if (method == "GET") return analysis(id);
      return error(405, "use GET /games/{id}/analysis");
    }
    return error(404, "not found");
  } catch (const std::exception& e) {
    return error(500, e.what());
  }
}

// ---------------------------------------------------------------- persistence

void GameService::log_create(const Session& s, const std::string& settings) {
  if (!config_.log_dir) return;
  std::ofstream out(std::filesystem::path(*config_.log_dir) / (s.id + ".log"), std::ios::app);
  out << settings << '\n';
}

void GameService::log_move(const Session& s, const std::string& move) {
  if (!config_.log_dir) return;
  std::ofstream out(std::filesystem::path(*config_.log_dir) / (s.id + ".log"), std::ios::app);
  out << move << '\n';
}

void GameService::restore() {
  for (const auto& entry : std::filesystem::directory_iterator(*config_.log_dir)) {
    if (entry.path().extension() != ".log") continue;
    std::ifstream in(entry.path());
    std::string line;
    if (!std::getline(in, line)) continue;
    const json settings = json::parse(line);
    const int depth = settings.at("depth").get<int>();
    auto s = std::make_shared<Session>(depth, config_.tt_entries);
    s->id = entry.path().stem().string();
    s->settings = settings;
    s->depth = depth;
    s->human = parse_color(settings.at("human").get<std::string>());
    const int size = settings.at("size").get<int>();
    const json& opening = settings.at("opening");
    const std::string type = opening.value("type", std::string("standard"));
    Position start = new_position(size);
    if (type == "aturan") {
      start = aturan_position(parse_square(opening.at("black").get<std::string>(), size),
                              parse_square(opening.at("white").get<std::string>(), size), size);
    } else if (type == "moves") {
      for (const json& m : opening.at("moves")) apply(start, parse_move(m.get<std::string>(), start));
    }
    s->start = start;
    s->pos = start;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const Move m = parse_move(line, s->pos);
      apply(s->pos, m);
      s->history.push_back(m);
      s->last_engine_move = s->pos.to_move() == s->human ? std::optional<Move>(m) : std::nullopt;
    }
    sessions_[s->id] = s;
  }
}

// ---------------------------------------------------------------- http

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(GameService& service, const std::optional<std::string>& static_dir)
    : impl_(std::make_unique<Impl>()) {
  httplib::Server& server = impl_->server;
  auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
    const HttpResult r = service.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
    res.set_header("Access-Control-Allow-Origin", "*");
  };
  server.Post("/games", forward);
  server.Get(R"(/games/[^/]+)", forward);
  server.Post(R"(/games/[^/]+/moves)", forward);
  server.Get(R"(/games/[^/]+/legal)", forward);
  server.Get(R"(/games/[^/]+/analysis)", forward);
  server.Options(R"(/games.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
  if (static_dir && !server.set_mount_point("/", *static_dir))
    throw std::runtime_error("cannot serve " + *static_dir);
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw std::runtime_error("cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port))
    throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void HttpServer::serve() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

int run_server(GameService& service, const std::string& host, int port,
               const std::optional<std::string>& static_dir) {
  HttpServer server(service, static_dir);
  try {
    server.bind(host, port);
  } catch (const std::runtime_error&) {
    return 1;
  }
  server.serve();
  return 0;
}

}  // namespace tak
