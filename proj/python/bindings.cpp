#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tak/board.hpp"
#include "tak/combinatorics.hpp"
#include "tak/errors.hpp"
#include "tak/lines.hpp"
#include "tak/moves.hpp"
#include "tak/notation.hpp"
#include "tak/service.hpp"
#include "tak/solver.hpp"

namespace py = pybind11;
using namespace tak;

namespace {

std::vector<std::string> texts(const std::vector<Move>& moves) {
  std::vector<std::string> out;
  out.reserve(moves.size());
  for (const Move& m : moves) out.push_back(format_move(m));
  return out;
}

py::dict value_dict(const GameValue& v) {
  py::dict d;
  d["kind"] = v.kind == GameValue::Kind::ProvenWin    ? "proven-win"
              : v.kind == GameValue::Kind::ProvenLoss ? "proven-loss"
                                                      : "unknown";
  d["color"] = std::string(color_name(v.color));
  const auto winner = v.winner();
  d["winner"] = winner ? py::object(py::str(std::string(color_name(*winner)))) : py::none();
  d["plies"] = winner ? py::object(py::int_(v.plies)) : py::none();
  d["bound"] = v.bound;
  return d;
}

py::object loads(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Tak rules engine and 3x3 proof solver";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<IllegalMove>(m, "IllegalMove", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<LineFileError>(m, "LineFileError", PyExc_ValueError);
  py::register_exception<ContractError>(m, "ContractError", PyExc_RuntimeError);

  py::class_<Position>(m, "Position")
      .def(py::init<int>(), py::arg("size") = 3)
      .def_static("parse", [](const std::string& text) { return parse_position(text); })
      .def_static("from_state_document",
                  [](const std::string& text) { return position_from_state_document(text); })
      .def_property_readonly("size", &Position::size)
      .def_property_readonly("ply", &Position::ply)
      .def_property_readonly("to_move",
                             [](const Position& p) { return std::string(color_name(p.to_move())); })
      .def("serialize", [](const Position& p) { return serialize(p); })
      .def("render", [](const Position& p) { return render(p); })
      .def("state_document", [](const Position& p) { return state_document(p); },
           "The position as StateDocument JSON text.")
      .def("legal_moves", [](const Position& p) { return texts(sorted_by_text(legal_moves(p))); })
      .def("play",
           [](const Position& p, const std::string& text) {
             Position next = p;
             apply(next, parse_move(text, next));
             return next;
           },
           py::arg("move"), "A new position after the move. Raises IllegalMove or ParseError.")
      .def("outcome", [](const Position& p) { return to_string(outcome(p)); })
      .def("is_terminal", [](const Position& p) { return outcome(p).terminal(); })
      .def("__eq__", [](const Position& a, const Position& b) { return a == b; })
      .def("__repr__",
           [](const Position& p) { return "Position.parse('" + serialize(p) + "')"; });

  m.def("perft", &tak::perft, py::arg("position"), py::arg("depth"),
        py::call_guard<py::gil_scoped_release>());
  m.def("fall_count", &fall_count, py::arg("height"), py::arg("carry"));
  m.def(
      "fall_patterns",
      [](int height, int carry) {
        std::vector<std::vector<int>> out;
        for (const FallPattern& p : tak::fall_patterns(height, carry)) out.push_back(p.drops);
        return out;
      },
      py::arg("height"), py::arg("carry"));
  m.def("game_length_bound", &game_length_bound, py::arg("size"), py::arg("k"));
  m.def(
      "aturan_position",
      [](const std::string& black, const std::string& white, int size) {
        return aturan_position(parse_square(black, size), parse_square(white, size), size);
      },
      py::arg("black"), py::arg("white"), py::arg("size") = 3);

  py::class_<Solver>(m, "Solver")
      .def(py::init([](int max_depth, int threads, std::size_t tt_entries) {
             return Solver(SolverConfig{max_depth, threads, tt_entries, true});
           }),
           py::arg("max_depth") = 20, py::arg("threads") = 1,
           py::arg("tt_entries") = std::size_t{1} << 20)
      .def(
          "solve",
          [](Solver& s, const Position& pos, std::optional<int> max_depth) {
            SolveResult r;
            {
              py::gil_scoped_release release;
              r = s.solve(pos, max_depth);
            }
            py::dict d;
            d["value"] = value_dict(r.value);
            d["depth"] = r.depth;
            d["pv"] = texts(r.pv);
            d["nodes"] = r.nodes;
            return d;
          },
          py::arg("position"), py::arg("max_depth") = py::none())
      .def(
          "best_move",
          [](Solver& s, const Position& pos) {
            Move mv;
            {
              py::gil_scoped_release release;
              mv = s.best_move(pos);
            }
            return format_move(mv);
          },
          py::arg("position"))
      .def("win_distance", &Solver::win_distance, py::arg("position"), py::arg("attacker"),
           py::arg("max_depth"), py::call_guard<py::gil_scoped_release>());

  py::enum_<Color>(m, "Color").value("WHITE", Color::White).value("BLACK", Color::Black);

  m.def("bundled_line_files", [] {
    std::vector<std::string> names;
    for (const LineFile& f : bundled_dataset()) names.push_back(f.name);
    return names;
  });
  m.def(
      "verify_line_file",
      [](const std::string& name_or_path, int leaf_depth, int refute_depth) {
        std::string json;
        {
          py::gil_scoped_release release;
          LineFile f;
          try {
            f = bundled_line_file(name_or_path);
          } catch (const DomainError&) {
            f = load_line_file(name_or_path);
          }
          json = verify(f, leaf_depth, refute_depth).to_json();
        }
        return loads(json);
      },
      py::arg("name"), py::arg("leaf_depth") = 8, py::arg("refute_depth") = 2,
      "Verify a bundled diagram (game1, gameA, ...) or a .lines file; returns the report.");

  py::class_<GameService>(m, "GameService")
      .def(py::init([](int depth, std::optional<std::string> log_dir) {
             ServiceConfig c;
             c.default_depth = depth;
             c.log_dir = std::move(log_dir);
             return std::make_unique<GameService>(c);
           }),
           py::arg("depth") = 20, py::arg("log_dir") = py::none())
      .def(
          "handle",
          [](GameService& s, const std::string& method, const std::string& path,
             const std::string& body) {
            HttpResult r;
            {
              py::gil_scoped_release release;
              r = s.handle(method, path, body);
            }
            return py::make_tuple(r.status, loads(r.body));
          },
          py::arg("method"), py::arg("path"), py::arg("body") = "",
          "Route a request; returns (status, parsed JSON body).")
      .def_property_readonly("session_count", &GameService::session_count);
}
