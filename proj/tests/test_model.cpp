#include <doctest.h>

#include <cmath>
#include <random>

#include "oscspec/model.hpp"

using namespace oscspec;

TEST_CASE("physical constants validate and expose the coupling") {
  PhysicalConstants c(1.0, 1.0);
  CHECK(c.kappa() == doctest::Approx(2.0));
  CHECK(PhysicalConstants(2.0, 3.0).kappa() == doctest::Approx(6.0 / 4.0));
  CHECK_THROWS_AS(PhysicalConstants(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PhysicalConstants(1.0, -2.0), std::invalid_argument);
}

TEST_CASE("grid points are uniform and strictly increasing") {
  Grid g(-1.0, 1.0, 5);
  CHECK(g.spacing() == doctest::Approx(0.5));
  CHECK(g.x(0) == -1.0);
  CHECK(g.x(4) == 1.0);
  for (std::size_t i = 1; i < g.n_points; ++i) CHECK(g.x(i) > g.x(i - 1));
  CHECK_THROWS_AS(Grid(1.0, -1.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(Grid(0.0, 1.0, 2), std::invalid_argument);
}

TEST_CASE("potential evaluation") {
  PhysicalConstants c(1.0, 1.0);
  SUBCASE("harmonic") {
    PotentialSpec spec = Harmonic{1.0};
    CHECK(evaluate_potential(spec, c, 0.0) == 0.0);
    CHECK(evaluate_potential(spec, c, 2.0) == doctest::Approx(2.0));
    // mass placement: V = (1/2) m omega0^2 x^2
    PhysicalConstants heavy(1.0, 3.0);
    CHECK(evaluate_potential(spec, heavy, 2.0) == doctest::Approx(6.0));
  }
  SUBCASE("tabulated linear midpoint") {
    PotentialSpec spec = Tabulated({0.0, 1.0}, {0.0, 1.0}, InterpOrder::Linear);
    CHECK(evaluate_potential(spec, c, 0.5) == doctest::Approx(0.5));
    CHECK_THROWS_AS(evaluate_potential(spec, c, 1.5), std::domain_error);
    CHECK_THROWS_AS(evaluate_potential(spec, c, -0.1), std::domain_error);
  }
  SUBCASE("tabulated cubic reproduces a smooth function") {
    std::vector<double> xs, vs;
    for (int i = 0; i <= 40; ++i) {
      const double x = -2.0 + 0.1 * i;
      xs.push_back(x);
      vs.push_back(std::sin(x));
    }
    PotentialSpec spec = Tabulated(xs, vs, InterpOrder::Cubic);
    // interior points; natural boundary conditions degrade accuracy near the ends
    for (double x : {-1.15, -0.3, 0.55, 1.13})
      CHECK(evaluate_potential(spec, c, x) == doctest::Approx(std::sin(x)).epsilon(1e-4));
  }
  SUBCASE("tabulated rejects non-increasing samples") {
    CHECK_THROWS_AS(Tabulated({0.0, 0.0}, {1.0, 2.0}), std::invalid_argument);
  }
  SUBCASE("well domain") {
    PotentialSpec spec = InfiniteWell{2.0};
    CHECK(evaluate_potential(spec, c, 1.0) == 0.0);
    CHECK_THROWS_AS(evaluate_potential(spec, c, 2.5), std::domain_error);
  }
}

TEST_CASE("frequency profile encodes c*(E - V)") {
  PhysicalConstants c(1.0, 1.0);
  PotentialSpec spec = Harmonic{1.0};
  Grid grid(-2.0, 2.0, 401);

  auto faithful = frequency_profile(c, spec, 0.5, grid, Convention::Faithful);
  auto paper = frequency_profile(c, spec, 0.5, grid, Convention::PaperEq11);

  // x = 0 is grid point 200
  CHECK(faithful.omega_sq[200] == doctest::Approx(1.0));
  CHECK(paper.omega_sq[200] == doctest::Approx(0.5));

  SUBCASE("conventions differ pointwise by exactly the factor 2") {
    for (std::size_t i = 0; i < grid.n_points; ++i)
      CHECK(faithful.omega_sq[i] ==
            doctest::Approx(2.0 * paper.omega_sq[i]).epsilon(1e-15));
  }
  SUBCASE("turning point gives zero") {
    PotentialSpec flat = Tabulated({-1.0, 1.0}, {0.25, 0.25}, InterpOrder::Linear);
    auto p = frequency_profile(c, flat, 0.25, Grid(-1.0, 1.0, 11));
    for (double w2 : p.omega_sq) CHECK(w2 == doctest::Approx(0.0));
  }
}

TEST_CASE("omega_sq decreases wherever a random tabulated potential increases") {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> step(0.01, 1.0);
  PhysicalConstants c(1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> xs, vs;
    double v = -1.0;
    for (int i = 0; i <= 50; ++i) {
      xs.push_back(-5.0 + 0.2 * i);
      v += step(rng);  // monotone increasing potential
      vs.push_back(v);
    }
    PotentialSpec spec = Tabulated(xs, vs, InterpOrder::Linear);
    auto profile = frequency_profile(c, spec, 3.0, Grid(-5.0, 5.0, 201));
    for (std::size_t i = 1; i < profile.omega_sq.size(); ++i)
      CHECK(profile.omega_sq[i] <= profile.omega_sq[i - 1] + 1e-12);
  }
}

TEST_CASE("region classification on the harmonic ground profile") {
  PhysicalConstants c(1.0, 1.0);
  Grid grid(-5.0, 5.0, 10001);  // x = 0, +-1, +-5 are grid points
  auto profile = frequency_profile(c, Harmonic{1.0}, 0.5, grid);

  auto at = [&](double x) {
    return static_cast<std::size_t>(std::lround((x - grid.x_min) / grid.spacing()));
  };
  CHECK(classify_region(profile, at(0.0)) == Region::Allowed);
  CHECK(classify_region(profile, at(5.0)) == Region::Forbidden);
  CHECK(classify_region(profile, at(1.0)) == Region::Turning);
  CHECK(classify_region(profile, at(-1.0)) == Region::Turning);
  CHECK_THROWS_AS(classify_region(profile, 100000), std::out_of_range);

  SUBCASE("classification is symmetric for the even potential") {
    for (std::size_t i = 0; i < grid.n_points; ++i)
      CHECK(classify_region(profile, i) ==
            classify_region(profile, grid.n_points - 1 - i));
  }
}
