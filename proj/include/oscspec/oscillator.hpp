#pragma once

// Numerov integration of psi'' + omega^2(x) psi = 0 and trajectory-level
// diagnostics (equation residual, Wronskian).

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "oscspec/model.hpp"

namespace oscspec {

enum class Direction { LeftToRight, RightToLeft };

struct Integrated {
  Direction direction;
};
struct ClosedForm {
  std::string label;
};
using Provenance = std::variant<Integrated, ClosedForm>;

struct Trajectory {
  Grid grid;
  std::vector<double> psi;
  std::vector<double> dpsi;
  Provenance provenance = ClosedForm{""};
  // True amplitude is psi * 2^rescale_exponent; kept separate so that
  // exponentially growing non-eigen trajectories stay representable.
  int rescale_exponent = 0;
};

struct InitialConditions {
  std::size_t start_index = 0;
  double psi0 = 0.0;
  double dpsi0 = 1.0;
  Direction direction = Direction::LeftToRight;
};

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, std::size_t index)
      : std::runtime_error(what + " at index " + std::to_string(index)), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// Numerov scheme, local error O(h^6).  Samples outside the swept range
// (before start_index for LeftToRight, after it for RightToLeft) are zero.
Trajectory integrate(const FrequencyProfile& profile, const InitialConditions& ic);

// max over interior points of |psi''_fd + omega^2 psi| / max|psi| with a
// centered 5-point second-derivative stencil.
double residual(const Trajectory& traj, const FrequencyProfile& profile);

// W_i = psi1_i dpsi2_i - psi2_i dpsi1_i.
std::vector<double> wronskian(const Trajectory& t1, const Trajectory& t2);

void export_trajectory_csv(const Trajectory& traj, const FrequencyProfile& profile,
                           const std::string& path);

}  // namespace oscspec
