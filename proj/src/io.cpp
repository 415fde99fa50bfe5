#include "qgabor/io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace qgabor {

namespace {

[[noreturn]] void config_error(const std::string& what) { fail(ErrorCode::io, what); }

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    config_error(std::string("expected a number for \"") + key + "\"");
  }
  return j.at(key).get<double>();
}

int integer(const json& j, const char* key) {
  const double v = number(j, key);
  if (v != std::floor(v)) config_error(std::string("\"") + key + "\" must be an integer");
  return static_cast<int>(v);
}

cplx complex_entry(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_object()) {
    return {j.contains("re") ? number(j, "re") : 0.0, j.contains("im") ? number(j, "im") : 0.0};
  }
  config_error("expected a number or {\"re\", \"im\"}");
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  return s;
}

double parse_double(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (trim(s.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  config_error("malformed number \"" + s + "\" on line " + std::to_string(line));
}

}  // namespace

ModelOrder model_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    config_error("model descriptor needs a \"kind\"");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "finite") return make_finite_model(integer(j, "L"));
  if (kind == "continuum") {
    const int N = j.contains("N") ? integer(j, "N") : 1;
    const ContinuumModel d = default_continuum_model();
    return make_continuum_model(N, j.contains("extent") ? number(j, "extent") : d.extent,
                                j.contains("step") ? number(j, "step") : d.step);
  }
  config_error("unknown model kind \"" + kind + "\"");
}

json to_json(const ModelOrder& model) {
  if (const auto* f = std::get_if<FiniteModel>(&model)) return {{"kind", "finite"}, {"L", f->L}};
  const auto& c = std::get<ContinuumModel>(model);
  return {{"kind", "continuum"}, {"N", c.N}, {"extent", c.extent}, {"step", c.step}};
}

SeparableLattice lattice_from_json(const json& j, const ModelOrder& model) {
  if (!j.is_object()) config_error("lattice descriptor must be an object");
  if (const auto* f = std::get_if<FiniteModel>(&model)) {
    return make_finite_lattice(f->L, integer(j, "a"), integer(j, "b"));
  }
  return make_continuum_lattice(number(j, "a"), number(j, "b"));
}

json to_json(const SeparableLattice& lattice) {
  if (const auto* f = std::get_if<FiniteLattice>(&lattice)) {
    return {{"kind", "finite"}, {"L", f->L}, {"a", f->a}, {"b", f->b}};
  }
  const auto& c = std::get<ContinuumLattice>(lattice);
  return {{"kind", "continuum"}, {"a", c.a}, {"b", c.b}};
}

Window window_from_json(const json& j, const ModelOrder& model,
                        const std::filesystem::path& base_dir) {
  const auto* fm = std::get_if<FiniteModel>(&model);
  if ((j.is_string() && j.get<std::string>() == "delta") || (j.is_object() && j.contains("delta"))) {
    if (fm != nullptr) {
      FiniteSignal d = FiniteSignal::Zero(fm->L);
      d[0] = 1.0;
      return {d, "delta"};
    }
    const auto& cm = std::get<ContinuumModel>(model);
    GridFunction d = GridFunction::zeros(cm);
    d.samples[cm.size() / 2] = 1.0;
    return {d, "delta"};
  }
  if (j.is_object() && j.contains("gaussian")) {
    const SiegelMatrix T = siegel_from_json(j.at("gaussian"));
    std::ostringstream desc;
    desc << "gaussian(T=" << T.T()(0, 0).real();
    if (T.T()(0, 0).imag() != 0.0) desc << (T.T()(0, 0).imag() > 0 ? "+" : "") << T.T()(0, 0).imag() << "i";
    desc << ")";
    if (fm != nullptr) return {gaussian_window(T, *fm), desc.str()};
    return {gaussian_window(T, std::get<ContinuumModel>(model)), desc.str()};
  }
  if (j.is_object() && j.contains("file") && j.at("file").is_string()) {
    std::filesystem::path p = j.at("file").get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    return {read_signal_csv(p, model), "file(" + p.filename().string() + ")"};
  }
  config_error("window descriptor must be {\"gaussian\": T}, \"delta\" or {\"file\": path}");
}

Signal read_signal_csv(std::istream& in, const ModelOrder& model) {
  std::string line;
  if (!std::getline(in, line)) config_error("empty signal file");
  const auto* fm = std::get_if<FiniteModel>(&model);
  const std::string expected = fm != nullptr ? "index,re,im" : "t,re,im";
  if (trim(line) != expected) {
    config_error("signal header must be \"" + expected + "\", got \"" + trim(line) + "\"");
  }
  std::vector<std::array<double, 3>> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (fields.size() != 3) config_error("expected 3 fields on line " + std::to_string(lineno));
    rows.push_back({parse_double(fields[0], lineno), parse_double(fields[1], lineno),
                    parse_double(fields[2], lineno)});
  }
  if (fm != nullptr) {
    if (static_cast<int>(rows.size()) != fm->L) {
      config_error("signal has " + std::to_string(rows.size()) + " samples, model needs " +
                   std::to_string(fm->L));
    }
    FiniteSignal f = FiniteSignal::Zero(fm->L);
    std::vector<bool> seen(fm->L, false);
    for (const auto& r : rows) {
      const double idx = r[0];
      if (idx != std::floor(idx) || idx < 0 || idx >= fm->L || seen[static_cast<int>(idx)]) {
        config_error("signal indices must be 0..L-1, each once");
      }
      seen[static_cast<int>(idx)] = true;
      f[static_cast<int>(idx)] = {r[1], r[2]};
    }
    return f;
  }
  const auto& cm = std::get<ContinuumModel>(model);
  if (static_cast<int>(rows.size()) != cm.size()) {
    config_error("signal has " + std::to_string(rows.size()) + " samples, grid needs " +
                 std::to_string(cm.size()));
  }
  GridFunction g = GridFunction::zeros(cm);
  for (std::size_t m = 0; m < rows.size(); ++m) {
    if (std::abs(rows[m][0] - cm.time(static_cast<int>(m))) > 1e-9 * std::max(1.0, cm.extent)) {
      config_error("sample times must follow the grid in increasing order");
    }
    g.samples[static_cast<Eigen::Index>(m)] = {rows[m][1], rows[m][2]};
  }
  return g;
}

Signal read_signal_csv(const std::filesystem::path& path, const ModelOrder& model) {
  std::ifstream in(path);
  if (!in) config_error("cannot open signal file " + path.string());
  return read_signal_csv(in, model);
}

void write_signal_csv(const Signal& s, std::ostream& out) {
  char buf[128];
  if (const auto* f = std::get_if<FiniteSignal>(&s)) {
    out << "index,re,im\n";
    for (Eigen::Index t = 0; t < f->size(); ++t) {
      std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g\n", static_cast<long>(t), (*f)[t].real(),
                    (*f)[t].imag());
      out << buf;
    }
    return;
  }
  const auto& g = std::get<GridFunction>(s);
  out << "t,re,im\n";
  for (int m = 0; m < g.model.size(); ++m) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", g.model.time(m),
                  g.samples[m].real(), g.samples[m].imag());
    out << buf;
  }
}

json to_json(const TwistedSequence& a) {
  json coeffs = json::array();
  for (const auto& [k, v] : a.coeffs) {
    const TFPoint p = a.point(k);
    json h;
    if (const auto* fp = std::get_if<FinitePoint>(&p)) {
      h = {fp->x, fp->w};
    } else {
      const auto& rp = std::get<RPoint>(p);
      h = {rp.x, rp.w};
    }
    coeffs.push_back({{"h", h}, {"re", v.real()}, {"im", v.imag()}});
  }
  json out = {{"lattice", to_json(a.lattice)}, {"s", a.s}, {"coeffs", coeffs}};
  if (a.twist == Twist::conjugate) out["twist"] = "conjugate";
  if (a.truncation_radius > 0.0) out["truncation_radius"] = a.truncation_radius;
  return out;
}

TwistedSequence sequence_from_json(const json& j) {
  if (!j.is_object() || !j.contains("lattice") || !j.contains("coeffs")) {
    config_error("sequence needs \"lattice\" and \"coeffs\"");
  }
  const json& lj = j.at("lattice");
  SeparableLattice lattice;
  if (lj.value("kind", "") == "finite") {
    lattice = make_finite_lattice(integer(lj, "L"), integer(lj, "a"), integer(lj, "b"));
  } else {
    lattice = make_continuum_lattice(number(lj, "a"), number(lj, "b"));
  }
  const Twist twist = j.value("twist", "standard") == "conjugate" ? Twist::conjugate
                                                                  : Twist::standard;
  TwistedSequence out(lattice, j.value("s", 0.0), twist);
  out.truncation_radius = j.value("truncation_radius", 0.0);
  for (const json& c : j.at("coeffs")) {
    if (!c.contains("h") || !c.at("h").is_array() || c.at("h").size() != 2) {
      config_error("coefficient entries need \"h\": [hx, hw]");
    }
    const double hx = c.at("h")[0].get<double>();
    const double hw = c.at("h")[1].get<double>();
    LatticeIndex k;
    if (const auto* f = std::get_if<FiniteLattice>(&lattice)) {
      const auto x = static_cast<std::int64_t>(hx);
      const auto w = static_cast<std::int64_t>(hw);
      if (x % f->a != 0 || w % f->b != 0) config_error("coefficient point is not on the lattice");
      k = {x / f->a, w / f->b};
    } else {
      const auto& cl = std::get<ContinuumLattice>(lattice);
      k = {std::llround(hx / cl.a), std::llround(hw / cl.b)};
    }
    out.add(k, {c.value("re", 0.0), c.value("im", 0.0)});
  }
  return out;
}

json to_json(const FrameReport& r) {
  return {{"lattice", to_json(SeparableLattice(r.lattice))},
          {"atom_descriptor", r.atom_descriptor},
          {"A", r.bounds.A},
          {"B", r.bounds.B},
          {"redundancy", r.redundancy},
          {"is_frame", r.bounds.is_frame()},
          {"janssen_tail", r.janssen_tail},
          {"truncation_radius", r.truncation_radius}};
}

json to_json(const ProbeReport& r) {
  return {{"ab", r.ab},         {"L", r.L}, {"a", r.a},         {"b", r.b},
          {"density", r.density}, {"A", r.A}, {"B", r.B},         {"A_over_B", r.ratio},
          {"verdict", r.invertible ? "invertible" : "not-invertible"}};
}

json to_json(const SiegelMatrix& T) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < T.T().rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < T.T().cols(); ++c) {
      row.push_back({{"re", T.T()(r, c).real()}, {"im", T.T()(r, c).imag()}});
    }
    rows.push_back(row);
  }
  return {{"T", rows}, {"tag", T.tag() == SiegelTag::decay ? "decay" : "siegel"}};
}

SiegelMatrix siegel_from_json(const json& j, SiegelTag tag) {
  if (j.is_array()) {
    const auto n = static_cast<Eigen::Index>(j.size());
    CMatrix T(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != n) {
        config_error("T must be a square array");
      }
      for (Eigen::Index c = 0; c < n; ++c) T(r, c) = complex_entry(j[r][c]);
    }
    return SiegelMatrix(T, tag);
  }
  return SiegelMatrix::scalar(complex_entry(j), tag);
}

}  // namespace qgabor
