#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cricrec/corpus/ingest.h"
#include "cricrec/corpus/snapshot.h"
#include "cricrec/interface/cli.h"
#include "cricrec/interface/engine.h"
#include "cricrec/rating/monte_carlo.h"

namespace py = pybind11;
using namespace cricrec;

namespace {

// Results cross the boundary as JSON text; the Python package decodes them.
std::string moments_json(double r, double avg) {
  const InningsModel model = InningsModel::make(r, avg);
  const InningsMoments m = innings_moments(model);
  return Json{{"r", r},
              {"avg", avg},
              {"p_out", model.dismissal_probability()},
              {"clamped", model.clamped()},
              {"mean", m.e_runs},
              {"std", m.sigma_runs},
              {"p_allout", m.p_allout},
              {"total_probability", m.total_probability}}
      .dump();
}

std::string simulate_json(double r, double avg, std::int64_t trials, std::uint64_t seed, unsigned threads) {
  const MonteCarloEstimate e = estimate_moments(InningsModel::make(r, avg), trials, seed, threads);
  return Json{{"trials", e.trials},
              {"seed", seed},
              {"mean", e.mean},
              {"std", e.std},
              {"standard_error", e.standard_error},
              {"p_allout", e.p_allout}}
      .dump();
}

std::string ingest_json(const std::string& input, const std::string& roster, const std::string& out,
                        unsigned threads) {
  IngestResult r = ingest(read_sources(input), Roster::load(roster), threads);
  snapshot_save(r.corpus, out);
  Json rejected = Json::array();
  for (const auto& x : r.rejected) rejected.push_back({{"file", x.file}, {"reason", x.reason}});
  return Json{{"matches", r.corpus.matches().size()},
              {"players", r.corpus.registry().players.size()},
              {"deliveries", r.corpus.deliveries().size()},
              {"rejected", rejected}}
      .dump();
}

py::tuple cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = 0;
  {
    py::gil_scoped_release release;
    code = run_cli(args, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

struct PyEngine {
  std::shared_ptr<const Engine> engine;

  PyEngine(const std::string& snapshot, const std::string& overrides, unsigned threads) {
    const RecommendConfig config = apply_overrides({}, overrides.empty() ? Json(nullptr) : Json::parse(overrides));
    engine = std::make_shared<const Engine>(std::make_shared<const Corpus>(snapshot_load(snapshot)), config, threads);
  }

  template <class Fn>
  std::string call(Fn&& fn) const {
    py::gil_scoped_release release;
    return fn(*engine).dump();
  }
};

}  // namespace

PYBIND11_MODULE(_cricrec, m) {
  m.doc() = "Ratings, embeddings and team recommendations (native core)";

  static py::exception<Error> error_type(m, "NativeError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error_type, error_json(e).dump().c_str());
    }
  });

  m.def("innings_moments", &moments_json, py::arg("r"), py::arg("avg"));
  m.def("simulate", &simulate_json, py::arg("r"), py::arg("avg"), py::arg("trials"), py::arg("seed"),
        py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
  m.def("ingest", &ingest_json, py::arg("input"), py::arg("roster"), py::arg("out"), py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("run_cli", &cli, py::arg("args"));

  py::class_<PyEngine>(m, "Engine")
      .def(py::init<const std::string&, const std::string&, unsigned>(), py::arg("snapshot"),
           py::arg("overrides") = "", py::arg("threads") = 0)
      .def("health", [](const PyEngine& e) { return e.call([](const Engine& x) { return x.health(); }); })
      .def("players", [](const PyEngine& e) { return e.call([](const Engine& x) { return x.players(); }); })
      .def("player",
           [](const PyEngine& e, const std::string& id) { return e.call([&](const Engine& x) { return x.player(id); }); })
      .def("rating",
           [](const PyEngine& e, const std::string& id, std::optional<int> year) {
             return e.call([&](const Engine& x) { return x.rating(id, year); });
           },
           py::arg("player"), py::arg("year") = py::none())
      .def("embedding",
           [](const PyEngine& e, const std::string& id, int level) {
             return e.call([&](const Engine& x) { return x.embedding(id, level); });
           },
           py::arg("player"), py::arg("level") = 1)
      .def("matchup",
           [](const PyEngine& e, const std::string& bat, const std::string& bowl) {
             return e.call([&](const Engine& x) { return x.matchup(bat, bowl); });
           })
      .def("recommend", [](const PyEngine& e, const std::string& body) {
        return e.call([&](const Engine& x) {
          Json doc = Json::parse(body, nullptr, false);
          if (doc.is_discarded()) throw malformed("request is not valid JSON");
          return recommendation_json(x.recommend(parse_recommend_call(doc)));
        });
      });
}
