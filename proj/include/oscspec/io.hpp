#pragma once

// File formats: tabulated-potential CSV ingestion, spectrum JSON document,
// plot-ready CSV writers.  All output uses '.' decimals and '\n' endings.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "oscspec/exact.hpp"
#include "oscspec/model.hpp"
#include "oscspec/spectral.hpp"

namespace oscspec {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Two-column CSV (x,V), optional header, strictly increasing x.
Tabulated load_tabulated_csv(const std::string& path,
                             InterpOrder order = InterpOrder::Cubic);
Tabulated parse_tabulated_csv(std::istream& in, InterpOrder order = InterpOrder::Cubic);

std::string spectrum_to_json(const std::vector<Eigenpair>& levels, const SolverSetup& setup);

struct SpectrumLevel {
  std::size_t n;
  double energy;
  std::size_t nodes;
  double norm_residual;
  double mismatch_residual;
};

struct SpectrumDocument {
  std::string potential;
  double hbar, mass;
  std::string convention;
  double x_min, x_max;
  std::size_t n_points;
  std::vector<SpectrumLevel> levels;
};

SpectrumDocument parse_spectrum_json(const std::string& text);

void write_sweep_csv(const std::vector<ShootingReport>& reports, std::ostream& out);
void write_verify_csv(const std::vector<ReverseDirectionReport>& reports, std::ostream& out);

std::string format_double(double v);  // shortest round-trip, locale-independent

}  // namespace oscspec
