#pragma once

// Physical constants, spatial grid, potential definitions and the
// frequency-profile map omega^2(x) = c * (E - V(x)).

#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace oscspec {

struct PhysicalConstants {
  double hbar = 1.0;
  double mass = 1.0;

  PhysicalConstants() = default;
  PhysicalConstants(double hbar_, double mass_) : hbar(hbar_), mass(mass_) {
    if (!(hbar > 0.0) || !(mass > 0.0))
      throw std::invalid_argument("PhysicalConstants: hbar and mass must be positive");
  }

  // coupling between potential and squared frequency, 2m/hbar^2
  double kappa() const { return 2.0 * mass / (hbar * hbar); }
};

struct Grid {
  double x_min = 0.0;
  double x_max = 1.0;
  std::size_t n_points = 2;

  Grid() = default;
  Grid(double x_min_, double x_max_, std::size_t n_points_)
      : x_min(x_min_), x_max(x_max_), n_points(n_points_) {
    if (!(x_min < x_max)) throw std::invalid_argument("Grid: x_min must be < x_max");
    if (n_points < 3) throw std::invalid_argument("Grid: need at least 3 points");
  }

  double spacing() const { return (x_max - x_min) / static_cast<double>(n_points - 1); }

  double x(std::size_t i) const {
    if (i + 1 == n_points) return x_max;
    return x_min + static_cast<double>(i) * spacing();
  }

  bool operator==(const Grid&) const = default;
};

// --- potentials -------------------------------------------------------------

struct Harmonic {
  double omega0;  // V(x) = (1/2) m omega0^2 x^2
};

struct InfiniteWell {
  double width;  // V = 0 on [0, width], hard walls outside
};

struct PoschlTeller {
  double depth;  // V(x) = -depth / cosh^2(x)
};

enum class InterpOrder { Linear = 1, Cubic = 3 };

class Tabulated {
 public:
  Tabulated(std::vector<double> xs, std::vector<double> vs,
            InterpOrder order = InterpOrder::Cubic);

  double evaluate(double x) const;  // throws std::domain_error outside [xs.front(), xs.back()]

  double x_min() const { return xs_.front(); }
  double x_max() const { return xs_.back(); }
  InterpOrder order() const { return order_; }
  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& vs() const { return vs_; }

 private:
  std::vector<double> xs_, vs_;
  std::vector<double> m_;  // natural-spline second derivatives (cubic only)
  InterpOrder order_;
};

using PotentialSpec = std::variant<Harmonic, InfiniteWell, PoschlTeller, Tabulated>;

double evaluate_potential(const PotentialSpec& spec, const PhysicalConstants& constants,
                          double x);

std::string potential_name(const PotentialSpec& spec);

// --- frequency profile ------------------------------------------------------

// Faithful: omega^2 = (2m/hbar^2)(E - V), whose oscillator equation is the
// Schroedinger eigenvalue equation itself.  PaperEq11: omega^2 = (m/hbar^2)(E - V).
enum class Convention { Faithful, PaperEq11 };

struct FrequencyProfile {
  Grid grid;
  std::vector<double> omega_sq;  // sign-indefinite
  Convention convention = Convention::Faithful;
};

FrequencyProfile frequency_profile(const PhysicalConstants& constants,
                                   const PotentialSpec& spec, double energy,
                                   const Grid& grid,
                                   Convention convention = Convention::Faithful);

enum class Region { Allowed, Forbidden, Turning };

constexpr double kTurnTolerance = 1e-12;

Region classify_region(const FrequencyProfile& profile, std::size_t index,
                       double tau_turn = kTurnTolerance);

}  // namespace oscspec
