#pragma once

// JSON and CSV plumbing: configuration descriptors, signal files, and the
// serialized forms of sequences and reports.

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "qgabor/gabor.hpp"
#include "qgabor/nctorus.hpp"
#include "qgabor/theta.hpp"

namespace qgabor {

using json = nlohmann::json;

// {"kind": "finite", "L": 144} | {"kind": "continuum", "N": 1, "extent": 16,
// "step": 0.0625}
ModelOrder model_from_json(const json& j);
json to_json(const ModelOrder& model);

// {"a": .., "b": ..}; finite steps must be integers dividing L.
SeparableLattice lattice_from_json(const json& j, const ModelOrder& model);
json to_json(const SeparableLattice& lattice);

using Signal = std::variant<FiniteSignal, GridFunction>;

struct Window {
  Signal signal;
  std::string descriptor;
};

// {"gaussian": T} with T a number or {"re": .., "im": ..}, "delta" or
// {"delta": {}}, or {"file": path} (relative to base_dir).
Window window_from_json(const json& j, const ModelOrder& model,
                        const std::filesystem::path& base_dir);

// "index,re,im" for finite signals, "t,re,im" for grid functions.
Signal read_signal_csv(std::istream& in, const ModelOrder& model);
Signal read_signal_csv(const std::filesystem::path& path, const ModelOrder& model);
void write_signal_csv(const Signal& s, std::ostream& out);

json to_json(const TwistedSequence& a);
TwistedSequence sequence_from_json(const json& j);

json to_json(const FrameReport& r);
json to_json(const ProbeReport& r);
json to_json(const SiegelMatrix& T);
SiegelMatrix siegel_from_json(const json& j, SiegelTag tag = SiegelTag::decay);

}  // namespace qgabor
