#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "qgabor/io.hpp"

using namespace qgabor;
using namespace qgabor::test;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::numerical;
}

}  // namespace

TEST_CASE("model descriptors") {
  const ModelOrder fin = model_from_json(json::parse(R"({"kind": "finite", "L": 12})"));
  CHECK(std::get<FiniteModel>(fin).L == 12);
  const ModelOrder cont = model_from_json(json::parse(R"({"kind": "continuum"})"));
  CHECK(std::get<ContinuumModel>(cont) == default_continuum_model());
  CHECK(model_from_json(to_json(cont)).index() == 1);
  CHECK(std::get<FiniteModel>(model_from_json(to_json(fin))).L == 12);

  CHECK(code_of([] { model_from_json(json::parse(R"({"kind": "torus"})")); }) == ErrorCode::io);
  CHECK(code_of([] { model_from_json(json::parse(R"({"L": 4})")); }) == ErrorCode::io);
  CHECK(code_of([] { model_from_json(json::parse(R"({"kind": "finite", "L": "x"})")); }) ==
        ErrorCode::io);
}

TEST_CASE("lattice descriptors") {
  const ModelOrder fin = FiniteModel{12};
  const auto D = std::get<FiniteLattice>(lattice_from_json(json::parse(R"({"a": 3, "b": 4})"), fin));
  CHECK(D == make_finite_lattice(12, 3, 4));
  CHECK(std::get<FiniteLattice>(lattice_from_json(to_json(SeparableLattice(D)), fin)) == D);
  CHECK(code_of([&] { lattice_from_json(json::parse(R"({"a": 5, "b": 4})"), fin); }) ==
        ErrorCode::invalid_argument);
  CHECK(code_of([&] { lattice_from_json(json::parse("[1, 2]"), fin); }) == ErrorCode::io);

  const auto C = std::get<ContinuumLattice>(
      lattice_from_json(json::parse(R"({"a": 0.8, "b": 0.5})"), default_continuum_model()));
  CHECK(C.a == 0.8);
  CHECK(C.b == 0.5);
}

TEST_CASE("window descriptors") {
  const ModelOrder fin = FiniteModel{8};
  const Window d = window_from_json(json("delta"), fin, ".");
  CHECK(std::get<FiniteSignal>(d.signal)(0) == cplx(1.0));
  CHECK(std::get<FiniteSignal>(d.signal).norm() == 1.0);
  CHECK(window_from_json(json::parse(R"({"delta": {}})"), fin, ".").descriptor == "delta");

  const Window g = window_from_json(json::parse(R"({"gaussian": 3.141592653589793})"), fin, ".");
  CHECK((std::get<FiniteSignal>(g.signal) -
         gaussian_window(SiegelMatrix::scalar(kPi), FiniteModel{8}))
            .norm() == 0.0);
  const Window gc =
      window_from_json(json::parse(R"({"gaussian": {"re": 1.0, "im": 0.5}})"),
                       default_continuum_model(), ".");
  CHECK(std::get<GridFunction>(gc.signal).samples.size() == 256);
  CHECK(gc.descriptor == "gaussian(T=1+0.5i)");

  CHECK(code_of([&] { window_from_json(json::parse(R"({"gaussian": -1})"), fin, "."); }) ==
        ErrorCode::invalid_argument);
  CHECK(code_of([&] { window_from_json(json::parse(R"({"box": 1})"), fin, "."); }) ==
        ErrorCode::io);
  CHECK(code_of([&] { window_from_json(json::parse(R"({"file": "missing.csv"})"), fin, "."); }) ==
        ErrorCode::io);
}

TEST_CASE("signal csv round trip") {
  const CVector f = random_vector(6);
  std::stringstream ss;
  write_signal_csv(Signal(f), ss);
  CHECK(ss.str().rfind("index,re,im\n", 0) == 0);
  const CVector back = std::get<FiniteSignal>(read_signal_csv(ss, FiniteModel{6}));
  CHECK(back == f);

  const ContinuumModel m = make_continuum_model(1, 2.0, 0.25);
  GridFunction g = GridFunction::zeros(m);
  g.samples = random_vector(m.size());
  std::stringstream gs;
  write_signal_csv(Signal(g), gs);
  CHECK(std::get<GridFunction>(read_signal_csv(gs, m)).samples == g.samples);

  // through a file referenced by a window descriptor
  const auto dir = std::filesystem::temp_directory_path() / "qgabor_io_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "sig.csv");
    write_signal_csv(Signal(f), out);
  }
  const Window w = window_from_json(json::parse(R"({"file": "sig.csv"})"), FiniteModel{6}, dir);
  CHECK(std::get<FiniteSignal>(w.signal) == f);
  std::filesystem::remove_all(dir);
}

TEST_CASE("malformed signal files") {
  auto parse = [](const std::string& text, int L) {
    std::istringstream in(text);
    return read_signal_csv(in, FiniteModel{L});
  };
  CHECK(code_of([&] { parse("", 2); }) == ErrorCode::io);
  CHECK(code_of([&] { parse("t,re,im\n0,1,0\n1,0,0\n", 2); }) == ErrorCode::io);
  CHECK(code_of([&] { parse("index,re,im\n0,1,0\n", 2); }) == ErrorCode::io);
  CHECK(code_of([&] { parse("index,re,im\n0,1,0\n0,1,0\n", 2); }) == ErrorCode::io);
  CHECK(code_of([&] { parse("index,re,im\n0,1,0\n1,x,0\n", 2); }) == ErrorCode::io);
  CHECK(code_of([&] { parse("index,re,im\n0,1\n1,0,0\n", 2); }) == ErrorCode::io);
  CHECK(std::get<FiniteSignal>(parse("index,re,im\n1,2,3\n0,4,5\n\n", 2))(1) == cplx(2.0, 3.0));
}

TEST_CASE("sequence json round trip") {
  const FiniteLattice D = make_finite_lattice(12, 2, 3);
  TwistedSequence a(D, 1.5, Twist::conjugate);
  a.add({1, 2}, cplx(0.5, -0.25));
  a.add({5, 3}, cplx(-1.0, 2.0));
  const TwistedSequence b = sequence_from_json(json::parse(to_json(a).dump()));
  CHECK(b.lattice == a.lattice);
  CHECK(b.s == 1.5);
  CHECK(b.twist == Twist::conjugate);
  CHECK(max_coefficient_distance(a, b) == 0.0);

  TwistedSequence c(make_continuum_lattice(0.8, 1.25));
  c.truncation_radius = 6.0;
  c.add({-3, 2}, cplx(0.1, 0.2));
  const TwistedSequence d = sequence_from_json(json::parse(to_json(c).dump()));
  CHECK(d.truncation_radius == 6.0);
  CHECK(d.at({-3, 2}) == cplx(0.1, 0.2));

  CHECK(code_of([] { sequence_from_json(json::parse(R"({"coeffs": []})")); }) == ErrorCode::io);
}

TEST_CASE("report serialization") {
  const ProbeReport p{0.81, 150, 5, 25, 0.8333, 0.1, 0.5, 0.2, true};
  const json j = to_json(p);
  CHECK(j.at("verdict") == "invertible");
  CHECK(j.at("A_over_B") == 0.2);

  CMatrix T(2, 2);
  T << cplx(1.0, 0.5), 0.2, 0.2, cplx(2.0, -0.1);
  const SiegelMatrix S(T, SiegelTag::decay);
  const json sj = to_json(S);
  CHECK(sj.at("tag") == "decay");
  json arr = json::array();
  for (const auto& row : sj.at("T")) arr.push_back(row);
  CHECK(siegel_from_json(arr).T() == T);
  CHECK(siegel_from_json(json::parse("[[{\"re\":0,\"im\":1}]]"), SiegelTag::siegel).dim() == 1);
  CHECK(code_of([] { siegel_from_json(json::parse("[[1, 0]]")); }) == ErrorCode::io);
}
