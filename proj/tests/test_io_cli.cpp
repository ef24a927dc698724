#include "support.hpp"

#include "aotoc/cli.hpp"

#include <doctest.h>

#include <regex>
#include <sstream>

using namespace aotoc;
using namespace aotoc::test;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "aotoc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

void write(const std::string& path, const std::string& text) { write_text_file(path, text); }

Json rotated_basis(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return Json::array({Json::array({c, -s}), Json::array({s, c})});
}

}  // namespace

TEST_CASE("matrix JSON round trip") {
  Rng rng(101);
  for (int d : {1, 2, 5}) {
    const Operator m = random_square(d, rng);
    const JsonDocument doc = JsonDocument::parse(matrix_to_json(m).dump(), "m.json");
    CHECK(max_abs(matrix_from_json(JsonView(doc, "")) - m) == 0.0);
  }
  const JsonDocument mixed = JsonDocument::parse("[[1, [0, 2]], [[0, -2], 3]]", "mixed.json");
  const Operator m = matrix_from_json(JsonView(mixed, ""));
  CHECK(m(0, 1) == Complex(0, 2));
  CHECK(m(1, 1) == Complex(3, 0));

  const JsonDocument ragged = JsonDocument::parse("[[1, 2],\n [3]]", "ragged.json");
  CHECK_THROWS_AS(matrix_from_json(JsonView(ragged, "")), ConfigError);
}

TEST_CASE("error positions") {
  CHECK(position_of_offset("ab\ncd", 4).line == 2);
  CHECK(position_of_offset("ab\ncd", 4).column == 2);
  const JsonDocument doc = JsonDocument::parse("{\n  \"n\": 3,\n  \"edges\": [{\"i\": 0, \"j\": 7, \"J\": 1}]\n}", "g.json");
  try {
    (void)graph_from_json(JsonView(doc, ""));
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).rfind("g.json:3:", 0) == 0);
    CHECK(std::string(e.what()).find("out of range") != std::string::npos);
  }
  CHECK_THROWS_AS(JsonDocument::parse("{\"n\": }", "bad.json"), ConfigError);
}

TEST_CASE("algebra report") {
  write("masa2.json", R"({"type": "masa", "d": 2})");
  const Run r = run({"algebra", "--spec", "masa2.json", "--report"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["d"] == 2);
  CHECK(j["dimA"] == 2);
  CHECK(j["dimAprime"] == 2);
  CHECK(j["blocks"] == Json::parse("[[1, 1], [1, 1]]"));
  CHECK(j["abelian"] == true);

  write("bip.json", R"({"type": "bipartite", "dA": 2, "dB": 3})");
  const Json b = Json::parse(run({"algebra", "--spec", "bip.json"}).out);
  CHECK(b["dimA"] == 4);
  CHECK(b["dimAprime"] == 9);
  CHECK(b["factor"] == true);
}

TEST_CASE("rate over a rotated qubit basis is |sin theta|") {
  write("sz.json", R"({"matrix": [[1, 0], [0, -1]]})");
  for (int k = 0; k <= 16; ++k) {
    const double theta = M_PI * k / 8;
    write("masa_theta.json", Json{{"type", "masa"}, {"d", 2}, {"basis", rotated_basis(theta)}}.dump());
    const Run r = run({"rate", "--hamiltonian", "sz.json", "--algebra", "masa_theta.json"});
    REQUIRE(r.code == kExitOk);
    CHECK(std::abs(Json::parse(r.out)["rate"].get<double>() - std::abs(std::sin(theta))) < 1e-9);
  }

  write("family.json", R"({"kind": "theta_grid", "hamiltonian": {"matrix": [[1, 0], [0, -1]]},
    "base": {"type": "masa", "d": 2}, "generator": [[0, [0, -0.5]], [[0, 0.5], 0]],
    "thetas": {"start": 0, "stop": 2, "count": 17, "unit": "pi"}})");
  const Run s = run({"rate-sweep", "--family", "family.json"});
  REQUIRE(s.code == kExitOk);
  std::istringstream lines(s.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "theta,rate");
  int rows = 0;
  while (std::getline(lines, line)) {
    const auto comma = line.find(',');
    const double theta = std::stod(line.substr(0, comma)), rate = std::stod(line.substr(comma + 1));
    CHECK(std::abs(rate - std::abs(std::sin(theta))) < 1e-9);
    ++rows;
  }
  CHECK(rows == 17);
}

TEST_CASE("mincut on a chain") {
  write("chain10.json", graph_to_json(chain(10)).dump(1));
  const Run r = run({"mincut", "--graph", "chain10.json"});
  REQUIRE(r.code == kExitOk);
  CHECK(Json::parse(r.out)["weight"] == 1.0);

  const Json all = Json::parse(run({"mincut", "--graph", "chain10.json", "--brute-force"}).out);
  CHECK(all["minimizers"].size() == 9);
  const Json half = Json::parse(run({"mincut", "--graph", "chain10.json", "--constrain-size", "5"}).out);
  CHECK(half["minimizers"].size() == 1);
  CHECK(half["minimizers"][0]["S"] == Json::parse("[0, 1, 2, 3, 4]"));
}

TEST_CASE("CLI output equals library output") {
  Rng rng(102);
  write("rand_graph.json", graph_to_json(random_graph(8, 0.5, rng)).dump());
  CHECK(run({"mincut", "--graph", "rand_graph.json"}).out ==
        cut_to_json(stoer_wagner(load_graph("rand_graph.json"))).dump(2) + "\n");

  write("bip22.json", R"({"type": "bipartite", "dA": 2, "dB": 2})");
  const Operator h = random_herm(4, rng);
  write("h4.json", Json{{"matrix", matrix_to_json(h)}}.dump());
  Json expect = rate_report_to_json(gaussian_rate(load_hamiltonian("h4.json"), bipartite_algebra({2, 2}, Side::A)));
  expect["form"] = "general";
  CHECK(run({"rate", "--hamiltonian", "h4.json", "--algebra", "bip22.json"}).out == expect.dump(2) + "\n");

  write("haar4.json", R"({"haar": {"d": 4, "seed": 7}})");
  const Json exact = {{"value", a_otoc_exact(bipartite_algebra({2, 2}, Side::A), haar_unitary(4, 7))}, {"form", "exact"}};
  CHECK(run({"otoc", "--algebra", "bip22.json", "--unitary", "haar4.json"}).out == exact.dump(2) + "\n");
  const double bip = Json::parse(run({"otoc", "--algebra", "bip22.json", "--unitary", "haar4.json", "--form", "bipartite"}).out)["value"];
  CHECK(std::abs(bip - exact["value"].get<double>()) < 1e-9);
}

TEST_CASE("sweep config parsing") {
  write("sweep.json", R"({
  "lattice": {"rows": 4, "cols": 5, "periodic": true, "nnn": true, "pauli_pair": "ZZ"},
  "x_grid": {"start": 0, "stop": 1, "step": 0.25},
  "samples_per_x": 40,
  "base_seed": 11,
  "nn_sigma": 0.5
})");
  const SweepConfig cfg = load_sweep_config("sweep.json");
  CHECK(cfg.lattice.rows == 4);
  CHECK(cfg.lattice.cols == 5);
  CHECK(cfg.lattice.periodic);
  CHECK(cfg.lattice.nnn);
  CHECK(cfg.lattice.pauli_pair == "ZZ");
  CHECK(cfg.x_grid == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(cfg.samples_per_x == 40);
  CHECK(cfg.base_seed == 11);
  CHECK(cfg.nn_sigma == 0.5);

  // Round trip through the writer.
  write("sweep_rt.json", sweep_config_to_json(cfg).dump());
  const SweepConfig back = load_sweep_config("sweep_rt.json");
  CHECK(back.x_grid == cfg.x_grid);
  CHECK(back.base_seed == cfg.base_seed);

  write("neg.json", R"({"lattice": {"rows": 3, "cols": 3}, "x_grid": [0], "samples_per_x": -5})");
  CHECK_THROWS_WITH_AS(load_sweep_config("neg.json"), doctest::Contains("samples_per_x"), ConfigError);
  const Run r = run({"experiment", "sweep", "--config", "neg.json", "--out", "neg.csv"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("neg.json:1:") != std::string::npos);

  write("small_torus.json", R"({"lattice": {"rows": 2, "cols": 4, "periodic": true}, "x_grid": [0], "samples_per_x": 3})");
  CHECK_THROWS_AS(load_sweep_config("small_torus.json"), ConfigError);
}

TEST_CASE("experiment sweep writes CSV and SVG") {
  write("sweep3.json", R"({"lattice": {"rows": 3, "cols": 3, "periodic": true, "nnn": true},
    "x_grid": [0, 0.5, 1], "samples_per_x": 10, "base_seed": 5})");
  const Run r = run({"experiment", "sweep", "--config", "sweep3.json", "--out", "sweep3.csv", "--svg", "sweep3.svg"});
  REQUIRE(r.code == kExitOk);
  CHECK(Json::parse(r.out)["records"] == 3);
  CHECK(from_csv(read_text_file("sweep3.csv")) == run_sweep(load_sweep_config("sweep3.json")));
  CHECK(read_text_file("sweep3.svg").find("<svg") != std::string::npos);
  CHECK(run({"experiment", "sweep", "--config", "sweep3.json"}).code == kExitUsage);
}

TEST_CASE("config errors name the key and position") {
  write("no_edges.json", "{\n  \"n\": 4\n}\n");
  const Run r = run({"mincut", "--graph", "no_edges.json"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("\"edges\"") != std::string::npos);
  CHECK(std::regex_search(r.err, std::regex("no_edges\\.json:[0-9]+:[0-9]+:")));

  write("bad_type.json", R"({"type": "octonion", "d": 2})");
  const Run t = run({"algebra", "--spec", "bad_type.json"});
  CHECK(t.code == kExitUsage);
  CHECK(t.err.find("bad_type.json:1:") != std::string::npos);

  CHECK_NOTHROW(validate_config("masa2.json", ConfigKind::algebra));
  CHECK_THROWS_AS(validate_config("no_edges.json", ConfigKind::graph), ConfigError);
  CHECK_THROWS_AS(validate_config("does_not_exist.json", ConfigKind::sweep), ConfigError);
}

TEST_CASE("help lists flags") {
  const std::vector<std::pair<std::vector<std::string>, std::string>> subs = {
      {{"algebra"}, "--spec"},       {{"otoc"}, "--unitary"},  {{"rate"}, "--hamiltonian"},
      {{"rate-sweep"}, "--family"},  {{"minimize"}, "--family"}, {{"mincut"}, "--constrain-size"},
      {{"experiment", "sweep"}, "--config"}};
  for (const auto& [words, flag] : subs) {
    std::vector<std::string> args = words;
    args.push_back("--help");
    const Run r = run(args);
    CAPTURE(words.back());
    CHECK(r.code == kExitOk);
    for (const std::string f : {flag, std::string("--seed"), std::string("--tolerance"), std::string("--threads")})
      CHECK(r.out.find(f) != std::string::npos);
  }
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"algebra"}).code == kExitUsage);  // missing --spec
  CHECK(run({"otoc", "--algebra", "masa2.json", "--unitary", "haar4.json", "--form", "nope"}).code == kExitUsage);
  CHECK(run({"otoc", "--algebra", "masa2.json", "--unitary", "haar4.json"}).code == kExitUsage);  // d mismatch
  CHECK(run({"--seed", "3", "algebra", "--spec", "masa2.json"}).code == kExitOk);
  // Unwritable output is a runtime failure, not a usage error.
  const Run w = run({"rate-sweep", "--family", "family.json", "--out", "/nonexistent-dir/out.csv"});
  CHECK(w.code == kExitRuntime);
}

TEST_CASE("alternate spec forms") {
  const auto spec = [](const std::string& text) {
    const JsonDocument doc = JsonDocument::parse(text, "alt.json");
    return algebra_from_json(JsonView(doc, ""), 0, kDefaultTolerances);
  };
  const AlgebraSpec gen = spec(R"({"generators": [[[1, 0], [0, -1]]]})");
  CHECK(gen.type == "generators");
  CHECK(gen.algebra.size() == 2);
  CHECK(spec(R"({"type": "collective_spin", "n_qubits": 2})").algebra.size() ==
        spec(R"({"type": "collective_spin", "n": 2})").algebra.size());
  const AlgebraSpec m = spec(R"({"type": "masa", "basis": [[1, 0], [0, 1]]})");
  CHECK(m.algebra.dim() == 2);
  CHECK_THROWS_WITH_AS(spec(R"({"type": "masa"})"), doctest::Contains("\"d\""), ConfigError);

  const JsonDocument u = JsonDocument::parse(R"({"hamiltonian": "1.0 ZZ; 0.5 XI", "t": 0.1})", "u.json");
  PauliHamiltonian h(2);
  h.add(1.0, "ZZ");
  h.add(0.5, "XI");
  CHECK(max_abs(unitary_from_json(JsonView(u, "")) - evolution(to_matrix(h), 0.1)) < 1e-14);
}
