#pragma once

// Model-file loading (JSON) and CSV emission for the experiment runner.

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "trotterchem/charge_bath.hpp"
#include "trotterchem/fermion_map.hpp"

namespace trotterchem {

// Input-file problems carry the offending field so the CLI can report it.
struct ModelError : std::runtime_error {
  explicit ModelError(const std::string& msg) : std::runtime_error(msg) {}
};

struct H2Model {
  std::optional<ElectronicIntegrals> integrals;  // present when given as tables
  ReducedCoefficients reduced;                   // always populated
};

inline nlohmann::json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ModelError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

// Accepts either integral tables (`n_orbitals`, `one_body`, `two_body`, with
// 1-based indices) or a `reduced` coefficient object.
inline H2Model load_h2_model(const std::string& path) {
  nlohmann::json j = parse_json_file(path);
  H2Model model;
  try {
    if (j.contains("reduced")) {
      const auto& r = j.at("reduced");
      ReducedCoefficients c;
      c.h11 = r.at("h11").get<double>();
      c.h22 = r.at("h22").get<double>();
      c.h33 = r.at("h33").get<double>();
      c.h44 = r.at("h44").get<double>();
      c.hA = r.at("hA").get<double>();
      c.hB = r.at("hB").get<double>();
      c.hC = r.at("hC").get<double>();
      c.hD = r.at("hD").get<double>();
      model.reduced = c;
      return model;
    }
    ElectronicIntegrals ints;
    ints.n_orbitals = j.at("n_orbitals").get<int>();
    for (const auto& row : j.at("one_body")) {
      if (!row.is_array() || row.size() != 3)
        throw ModelError("field one_body: each entry must be [i, j, value]");
      ints.one_body[{row[0].get<int>(), row[1].get<int>()}] = row[2].get<double>();
    }
    for (const auto& row : j.at("two_body")) {
      if (!row.is_array() || row.size() != 5)
        throw ModelError("field two_body: each entry must be [i, j, k, l, value]");
      ints.two_body[{row[0].get<int>(), row[1].get<int>(), row[2].get<int>(),
                     row[3].get<int>()}] = row[4].get<double>();
    }
    ints.validate();
    model.reduced = derive_reduced_coeffs(ints);
    model.integrals = std::move(ints);
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("model file ") + path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ModelError(std::string("model file ") + path + ": " + e.what());
  } catch (const std::out_of_range& e) {
    throw ModelError(std::string("model file ") + path + ": " + e.what());
  }
}

struct BathModelFile {
  ChargeBathModel model;
  int truncation = 4;
};

// Bath file: `sites` (3 energies), `hopping`, then either an explicit
// `lambda` matrix with `modes` frequencies, or a `cavity` object
// {g0, n_modes, truncation, beta} with mode frequencies derived as
// omega_i = omega0 * (i+1) unless `modes` is given.
inline BathModelFile load_bath_model(const std::string& path) {
  nlohmann::json j = parse_json_file(path);
  BathModelFile out;
  try {
    const auto& sites = j.at("sites");
    if (!sites.is_array() || sites.size() != 3)
      throw ModelError("field sites: expected exactly 3 site energies");
    for (int k = 0; k < 3; ++k) out.model.site_energies[k] = sites[k].get<double>();
    out.model.hopping = j.at("hopping").get<double>();

    if (j.contains("cavity")) {
      const auto& c = j.at("cavity");
      CavitySpec spec;
      spec.g0 = c.at("g0").get<double>();
      spec.n_modes = c.at("n_modes").get<int>();
      spec.truncation = c.at("truncation").get<int>();
      if (c.contains("beta")) {
        const auto& b = c.at("beta");
        if (!b.is_array() || b.size() != 3)
          throw ModelError("field cavity.beta: expected 3 multipliers");
        for (int k = 0; k < 3; ++k) spec.beta[k] = b[k].get<double>();
      }
      out.model.couplings = cavity_couplings(spec);
      out.truncation = spec.truncation;
      if (j.contains("modes")) {
        for (const auto& w : j.at("modes")) out.model.mode_freqs.push_back(w.get<double>());
      } else {
        double w0 = c.contains("omega0") ? c.at("omega0").get<double>() : 1.0;
        for (int i = 0; i < spec.n_modes; ++i) out.model.mode_freqs.push_back(w0 * (i + 1));
      }
    } else {
      for (const auto& w : j.at("modes")) out.model.mode_freqs.push_back(w.get<double>());
      const auto& lam = j.at("lambda");
      for (const auto& row : lam) {
        if (!row.is_array() || row.size() != 3)
          throw ModelError("field lambda: each row must hold 3 site couplings");
        out.model.couplings.push_back({row[0].get<double>(), row[1].get<double>(),
                                       row[2].get<double>()});
      }
      if (j.contains("truncation")) out.truncation = j.at("truncation").get<int>();
    }
    out.model.validate();
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("bath model ") + path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ModelError(std::string("bath model ") + path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// CSV output
// ---------------------------------------------------------------------------

inline std::string format_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) throw std::logic_error("csv row arity mismatch");
    rows_.push_back(std::move(cells));
  }

  void write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (size_t i = 0; i < header_.size(); ++i) out << (i ? "," : "") << header_[i];
    out << '\n';
    for (const auto& row : rows_) {
      for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
      out << '\n';
    }
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace trotterchem
