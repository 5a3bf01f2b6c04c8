#include "oscspec/model.hpp"

#include <algorithm>
#include <cmath>

namespace oscspec {

Tabulated::Tabulated(std::vector<double> xs, std::vector<double> vs, InterpOrder order)
    : xs_(std::move(xs)), vs_(std::move(vs)), order_(order) {
  if (xs_.size() != vs_.size())
    throw std::invalid_argument("Tabulated: x and V sample counts differ");
  if (xs_.size() < 2) throw std::invalid_argument("Tabulated: need at least 2 samples");
  for (std::size_t i = 1; i < xs_.size(); ++i)
    if (!(xs_[i] > xs_[i - 1]))
      throw std::invalid_argument("Tabulated: x samples must be strictly increasing");

  if (order_ == InterpOrder::Cubic && xs_.size() >= 3) {
    // natural cubic spline: tridiagonal solve for second derivatives
    const std::size_t n = xs_.size();
    m_.assign(n, 0.0);
    std::vector<double> c(n, 0.0), rhs(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double hl = xs_[i] - xs_[i - 1];
      const double hr = xs_[i + 1] - xs_[i];
      double b = 2.0 * (hl + hr);
      double r = 6.0 * ((vs_[i + 1] - vs_[i]) / hr - (vs_[i] - vs_[i - 1]) / hl);
      b -= hl * c[i - 1];
      r -= hl * rhs[i - 1];
      c[i] = hr / b;
      rhs[i] = r / b;
    }
    m_[n - 1] = 0.0;
    for (std::size_t i = n - 1; i-- > 1;) m_[i] = rhs[i] - c[i] * m_[i + 1];
    m_[0] = 0.0;
  } else {
    order_ = InterpOrder::Linear;
  }
}

double Tabulated::evaluate(double x) const {
  if (x < xs_.front() || x > xs_.back())
    throw std::domain_error("Tabulated potential evaluated outside tabulated range");
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t i = (it == xs_.begin()) ? 0 : static_cast<std::size_t>(it - xs_.begin()) - 1;
  if (i + 1 >= xs_.size()) i = xs_.size() - 2;
  const double h = xs_[i + 1] - xs_[i];
  const double t = (x - xs_[i]) / h;
  if (order_ == InterpOrder::Linear || m_.empty())
    return (1.0 - t) * vs_[i] + t * vs_[i + 1];
  const double a = 1.0 - t;
  return a * vs_[i] + t * vs_[i + 1] +
         h * h / 6.0 * ((a * a * a - a) * m_[i] + (t * t * t - t) * m_[i + 1]);
}

double evaluate_potential(const PotentialSpec& spec, const PhysicalConstants& constants,
                          double x) {
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Harmonic>) {
          return 0.5 * constants.mass * v.omega0 * v.omega0 * x * x;
        } else if constexpr (std::is_same_v<T, InfiniteWell>) {
          if (x < 0.0 || x > v.width)
            throw std::domain_error("InfiniteWell potential evaluated outside [0, width]");
          return 0.0;
        } else if constexpr (std::is_same_v<T, PoschlTeller>) {
          const double c = std::cosh(x);
          return -v.depth / (c * c);
        } else {
          return v.evaluate(x);
        }
      },
      spec);
}

std::string potential_name(const PotentialSpec& spec) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Harmonic>)
          return "harmonic";
        else if constexpr (std::is_same_v<T, InfiniteWell>)
          return "well";
        else if constexpr (std::is_same_v<T, PoschlTeller>)
          return "poschl-teller";
        else
          return "tabulated";
      },
      spec);
}

FrequencyProfile frequency_profile(const PhysicalConstants& constants,
                                   const PotentialSpec& spec, double energy,
                                   const Grid& grid, Convention convention) {
  const double c = (convention == Convention::Faithful)
                       ? constants.kappa()
                       : constants.mass / (constants.hbar * constants.hbar);
  FrequencyProfile profile{grid, std::vector<double>(grid.n_points), convention};
  for (std::size_t i = 0; i < grid.n_points; ++i)
    profile.omega_sq[i] = c * (energy - evaluate_potential(spec, constants, grid.x(i)));
  return profile;
}

Region classify_region(const FrequencyProfile& profile, std::size_t index,
                       double tau_turn) {
  if (index >= profile.omega_sq.size())
    throw std::out_of_range("classify_region: index outside grid");
  const double w2 = profile.omega_sq[index];
  if (w2 > tau_turn) return Region::Allowed;
  if (w2 < -tau_turn) return Region::Forbidden;
  return Region::Turning;
}

}  // namespace oscspec
