// qgabor: spectrogram, framecheck, theta and verify-all.
//
// Exit status: 0 success or verdict, 1 tolerance failure, 2 I/O or config,
// 3 invalid mathematical input, 4 convergence or truncation.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "qgabor/io.hpp"
#include "qgabor/verify.hpp"

namespace fs = std::filesystem;
using namespace qgabor;

namespace {

struct Options {
  std::string config;
  std::string out = ".";
  bool deterministic = false;
  std::uint64_t seed = VerifyOptions{}.seed;
};

struct Config {
  json j;
  fs::path base_dir;
};

Config load_config(const std::string& path) {
  require(!path.empty(), ErrorCode::io, "--config is required");
  std::ifstream in(path);
  require(in.good(), ErrorCode::io, "cannot read config " + path);
  Config c;
  try {
    c.j = json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::io, "malformed config " + path + ": " + e.what());
  }
  require(c.j.is_object(), ErrorCode::io, "config must be a JSON object");
  c.base_dir = fs::path(path).parent_path();
  return c;
}

const json& section(const Config& c, const char* key) {
  require(c.j.contains(key), ErrorCode::io, std::string("config lacks \"") + key + "\"");
  return c.j.at(key);
}

double number_or(const Config& c, const char* key, double fallback) {
  if (!c.j.contains(key)) return fallback;
  require(c.j.at(key).is_number(), ErrorCode::io, std::string("\"") + key + "\" must be a number");
  return c.j.at(key).get<double>();
}

fs::path output_dir(const Options& o) {
  fs::path dir = o.out;
  std::error_code ec;
  fs::create_directories(dir, ec);
  require(!ec, ErrorCode::io, "cannot create output directory " + dir.string());
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  require(out.good(), ErrorCode::io, "cannot write " + p.string());
  out << text;
  require(out.good(), ErrorCode::io, "write failed for " + p.string());
}

void emit_report(const json& report, const fs::path& p) {
  const std::string text = report.dump(2) + "\n";
  write_file(p, text);
  std::cout << text;
}

int cmd_spectrogram(const Options& o) {
  const Config c = load_config(o.config);
  const ModelOrder model = model_from_json(section(c, "model"));
  const Window window = window_from_json(section(c, "window"), model, c.base_dir);
  const Window signal = window_from_json(section(c, "signal"), model, c.base_dir);

  const TFMatrix V = std::visit(
      [&](const auto& f) -> TFMatrix {
        using S = std::decay_t<decltype(f)>;
        return stft(f, std::get<S>(window.signal));
      },
      signal.signal);

  const fs::path dir = output_dir(o);
  std::ostringstream pgm, csv;
  write_pgm(V, pgm);
  write_csv(V, csv);
  write_file(dir / "spectrogram.pgm", pgm.str());
  write_file(dir / "spectrogram.csv", csv.str());
  std::cout << json{{"model", to_json(model)},
                    {"window", window.descriptor},
                    {"signal", signal.descriptor},
                    {"rows", V.values.rows()},
                    {"cols", V.values.cols()},
                    {"pgm", (dir / "spectrogram.pgm").string()},
                    {"csv", (dir / "spectrogram.csv").string()}}
                   .dump(2)
            << "\n";
  return 0;
}

int cmd_framecheck(const Options& o) {
  const Config c = load_config(o.config);
  const ModelOrder model = model_from_json(section(c, "model"));
  const auto* fm = std::get_if<FiniteModel>(&model);
  require(fm != nullptr, ErrorCode::unsupported, "framecheck needs a finite model");
  const auto D = std::get<FiniteLattice>(lattice_from_json(section(c, "lattice"), model));
  const Window window = window_from_json(section(c, "window"), model, c.base_dir);
  const double tol = number_or(c, "tolerance", 1e-10);

  const FiniteGaborSystem sys = make_gabor_system(std::get<FiniteSignal>(window.signal), D);
  const FrameReport report = frame_report(sys, window.descriptor);

  const CMatrix direct = frame_operator_matrix(sys);
  const CMatrix side = representation_matrix(janssen_operator(sys, sys.atom).coeffs);
  const double janssen_res = (direct - side).norm();

  std::mt19937_64 rng(o.seed);
  std::normal_distribution<double> nd;
  auto unit = [&] {
    CVector v(fm->L);
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(nd(rng), nd(rng));
    return CVector(v / v.norm());
  };
  const CVector f1 = unit(), f2 = unit();
  const double figa_res = figa_residual(f1, f2, sys.atom, sys.atom, D);

  json j = to_json(report);
  j["janssen_residual"] = janssen_res;
  j["figa_residual"] = figa_res;
  j["tolerance"] = tol;
  bool ok = janssen_res <= tol && figa_res <= tol;
  if (report.bounds.is_frame()) {
    const FiniteGaborSystem dsys = make_gabor_system(dual_window(sys, DualMode::dual), D);
    const double rec = (frame_type_operator(dsys, sys.atom, f1) - f1).norm();
    j["reconstruction_residual"] = rec;
    ok = ok && rec <= tol;
  }
  j["verdict"] = report.bounds.is_frame() ? "frame" : "not-a-frame";
  emit_report(j, output_dir(o) / "framecheck.json");
  return ok ? 0 : 1;
}

int cmd_theta(const Options& o) {
  const Config c = load_config(o.config);
  const SiegelMatrix T = siegel_from_json(section(c, "T"));
  require(T.dim() == 1, ErrorCode::unsupported, "theta reports use N = 1");
  const auto D = std::get<ContinuumLattice>(
      lattice_from_json(section(c, "lattice"), default_continuum_model()));
  const double tail_tol = number_or(c, "tail_tolerance", 1e-12);
  const double eq_tol = number_or(c, "tolerance", 1e-8);
  const double radius =
      c.j.contains("radius") ? number_or(c, "radius", 0.0) : default_truncation_radius(T, D, tail_tol);

  const QuantumTheta qt = quantum_theta(T, D, radius, tail_tol);
  const GeneralLattice G = GeneralLattice::from(D);
  const RVector zero = RVector::Zero(2);
  const ThetaValue v0 = theta_series(T, G, zero, radius, tail_tol);

  double eq_res = functional_equation_residual(T, G, zero, radius, tail_tol);
  if (c.j.contains("points")) {
    for (const auto& p : c.j.at("points")) {
      require(p.is_array() && p.size() == 2 && p[0].is_number() && p[1].is_number(),
              ErrorCode::io, "points must be [x, omega] pairs");
      RVector x(2);
      x << p[0].get<double>(), p[1].get<double>();
      eq_res = std::max(eq_res, functional_equation_residual(T, G, x, radius, tail_tol));
    }
  }

  int L = 144;
  std::vector<double> sweep{0.49, 0.64, 0.81, 1.0, 1.21};
  if (c.j.contains("sweep")) {
    const json& s = c.j.at("sweep");
    try {
      if (s.contains("L")) L = s.at("L").get<int>();
      if (s.contains("ab")) sweep = s.at("ab").get<std::vector<double>>();
    } catch (const json::exception& e) {
      fail(ErrorCode::io, std::string("malformed sweep: ") + e.what());
    }
  }
  json table = json::array();
  for (double ab : sweep) {
    require(ab > 0.0, ErrorCode::invalid_argument, "sweep densities must be positive");
    table.push_back(to_json(invertibility_probe(std::sqrt(ab), std::sqrt(ab), L)));
  }

  json j = to_json(T);
  j["lattice"] = to_json(SeparableLattice(D));
  j["radius"] = radius;
  j["tail_bound"] = qt.tail_bound;
  j["coeff_count"] = qt.coeffs.coeffs.size();
  j["value_at_0"] = {{"re", v0.value.real()}, {"im", v0.value.imag()}};
  j["quasi_periodicity_residual"] = quasi_periodicity_residual(qt.coeffs, T);
  j["functional_eq_residual"] = eq_res;
  j["tolerance"] = eq_tol;
  j["sweep"] = table;
  emit_report(j, output_dir(o) / "theta.json");
  return eq_res <= eq_tol ? 0 : 1;
}

int cmd_verify_all(const Options& o) {
  VerifyOptions v;
  v.seed = o.seed;
  const auto results = run_all_criteria(v);
  print_matrix(results, std::cout);
  for (const auto& r : results) {
    if (!r.passed) return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gabor analysis, twisted lattice algebras and theta functions"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--config", o.config, "JSON configuration file");
  app.add_option("--out", o.out, "output directory");
  app.add_flag("--deterministic", o.deterministic, "sequential kernels");
  app.add_option("--seed", o.seed, "random seed");

  int (*run)(const Options&) = nullptr;
  app.add_subcommand("spectrogram", "STFT magnitude (PGM) and values (CSV)")
      ->callback([&] { run = cmd_spectrogram; });
  app.add_subcommand("framecheck", "frame bounds, Janssen and FIGA residuals")
      ->callback([&] { run = cmd_framecheck; });
  app.add_subcommand("theta", "theta coefficients, functional equation, density sweep")
      ->callback([&] { run = cmd_theta; });
  app.add_subcommand("verify-all", "run the acceptance suite")
      ->callback([&] { run = cmd_verify_all; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (o.deterministic) set_default_exec(Exec::sequential);

  try {
    return run(o);
  } catch (const Error& e) {
    std::cerr << "qgabor: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_status(e.code());
  } catch (const json::exception& e) {
    std::cerr << "qgabor: io: " << e.what() << "\n";
    return 2;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "qgabor: io: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "qgabor: " << e.what() << "\n";
    return 3;
  }
}
