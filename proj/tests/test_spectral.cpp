#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "isodrum/drums.hpp"
#include "isodrum/errors.hpp"
#include "isodrum/pipeline.hpp"
#include "isodrum/spectral.hpp"

using namespace isodrum;

namespace {

constexpr double kPi = std::numbers::pi;

const char* kSystemA =
    "tiles: 7\n"
    "sides: 3\n"
    "side 1: (3 4) (5 7) ; boundary: 1 2 6\n"
    "side 2: (2 3) (4 6) ; boundary: 1 5 7\n"
    "side 3: (1 2) (4 7) ; boundary: 3 5 6\n";

const char* kSystemB =
    "tiles: 7\n"
    "sides: 3\n"
    "side 1: (1 2) (3 4) ; boundary: 5 6 7\n"
    "side 2: (2 3) (5 7) ; boundary: 1 4 6\n"
    "side 3: (3 6) (4 5) ; boundary: 1 2 7\n";

std::vector<Vec2> drum(const char* text) {
  return boundary_polygon(unfold(InvolutionSystem::from_text(text), BaseTile::half_square()));
}

// Closed-form spectrum of the 5-point Laplacian on an m x m interior grid.
std::vector<double> discrete_square(std::size_t m, std::size_t k) {
  double h = 1.0 / static_cast<double>(m + 1);
  std::vector<double> all;
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 1; j <= m; ++j) {
      double si = std::sin(static_cast<double>(i) * kPi * h / 2);
      double sj = std::sin(static_cast<double>(j) * kPi * h / 2);
      all.push_back(4 / (h * h) * (si * si + sj * sj));
    }
  std::sort(all.begin(), all.end());
  all.resize(k);
  return all;
}

}  // namespace

TEST_CASE("rasterizing the unit square") {
  auto m4 = rasterize_rectangle(1, 1, Rational(1, 4));
  CHECK(m4.count() == 9);
  auto m8 = rasterize_rectangle(1, 1, Rational(1, 8));
  CHECK(m8.count() == 49);
  // The same square shifted off the grid lines.
  std::vector<Vec2> shifted{{Surd(Rational(1, 16)), Surd(0)},
                            {Surd(Rational(17, 16)), Surd(0)},
                            {Surd(Rational(17, 16)), Surd(1)},
                            {Surd(Rational(1, 16)), Surd(1)}};
  CHECK(rasterize(shifted, Rational(1, 8)).count() == 56);
  CHECK_THROWS_AS(rasterize_rectangle(1, 1, 0), InvalidInput);
  CHECK_THROWS_AS(rasterize({{Surd(0), Surd(0)}, {Surd(1), Surd(1)}}, Rational(1, 4)),
                  InvalidInput);
  CHECK_THROWS_AS(
      rasterize({{Surd(0), Surd(0)}, {Surd(1), Surd(1)}, {Surd(2), Surd(2)}}, Rational(1, 4)),
      InvalidInput);
}

TEST_CASE("mask area converges to the polygon area") {
  auto pa = drum(kSystemA);
  double e32 = std::abs(rasterize(pa, Rational(1, 32)).area() - 3.5);
  double e64 = std::abs(rasterize(pa, Rational(1, 64)).area() - 3.5);
  CHECK(e32 < 0.05 * 3.5);
  CHECK(e64 < e32);

  // An equilateral triangle: irrational vertices go through the exact surd path.
  Surd r3(Rational(0), Rational(1, 2), 3);
  std::vector<Vec2> tri{{Surd(0), Surd(0)}, {Surd(1), Surd(0)}, {Surd(Rational(1, 2)), r3}};
  double exact = std::sqrt(3.0) / 4;
  double t16 = std::abs(rasterize(tri, Rational(1, 16)).area() - exact);
  double t32 = std::abs(rasterize(tri, Rational(1, 32)).area() - exact);
  CHECK(t32 < t16);
  CHECK(t32 < 0.1 * exact);
}

TEST_CASE("square spectrum matches the closed-form discrete spectrum") {
  auto mask = rasterize_rectangle(1, 1, Rational(1, 16));
  auto s = dirichlet_eigenvalues(mask, 20);
  auto ref = discrete_square(15, 20);
  REQUIRE(s.eigenvalues.size() == 20);
  for (std::size_t i = 0; i < 20; ++i) CHECK(std::abs(s.eigenvalues[i] / ref[i] - 1) < 1e-9);
  CHECK(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
  CHECK(s.eigenvalues.front() > 0);
}

TEST_CASE("continuum benchmarks") {
  auto sq = dirichlet_eigenvalues(rasterize_rectangle(1, 1, Rational(1, 64)), 1);
  CHECK(std::abs(sq.eigenvalues[0] / (2 * kPi * kPi) - 1) < 0.005);
  auto rect = dirichlet_eigenvalues(rasterize_rectangle(1, 2, Rational(1, 32)), 1);
  CHECK(std::abs(rect.eigenvalues[0] / (kPi * kPi * 1.25) - 1) < 0.005);
}

TEST_CASE("eigenvalues are reproducible and seed independent") {
  auto mask = rasterize(drum(kSystemA), Rational(1, 32));
  auto a = dirichlet_eigenvalues(mask, 10);
  auto b = dirichlet_eigenvalues(mask, 10);
  EigenOptions other;
  other.seed = 12345;
  other.block = 3;
  auto c = dirichlet_eigenvalues(mask, 10, other);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(a.eigenvalues[i] == b.eigenvalues[i]);
    CHECK(std::abs(a.eigenvalues[i] / c.eigenvalues[i] - 1) < 1e-8);
  }
  CHECK_THROWS_AS(dirichlet_eigenvalues(rasterize_rectangle(1, 1, Rational(1, 4)), 10),
                  InvalidInput);
  CHECK_THROWS_AS(dirichlet_eigenvalues(mask, 0), InvalidInput);
  EigenOptions tiny;
  tiny.max_dimension = 8;
  CHECK_THROWS_AS(dirichlet_eigenvalues(mask, 6, tiny), NonConvergence);
}

TEST_CASE("Weyl counting on the square") {
  auto s = dirichlet_eigenvalues(rasterize_rectangle(1, 1, Rational(1, 64)), 20);
  double E = s.eigenvalues[19];
  double counted = static_cast<double>(
      std::count_if(s.eigenvalues.begin(), s.eigenvalues.end(),
                    [&](double x) { return x <= E * (1 + 1e-9); }));
  CHECK(std::abs(weyl_count(1, 4, E) / counted - 1) < 0.15);
}

TEST_CASE("the seven-tile drums are isospectral") {
  auto pair = gww_systems();
  auto pa = boundary_polygon(unfold(pair.a, BaseTile::half_square()));
  auto pb = boundary_polygon(unfold(pair.b, BaseTile::half_square()));
  REQUIRE_FALSE(congruent(pa, pb));
  auto ma = rasterize(pa, Rational(1, 64));
  auto mb = rasterize(pb, Rational(1, 64));
  CHECK(ma.count() == mb.count());
  auto a = dirichlet_eigenvalues(ma, 10);
  auto b = dirichlet_eigenvalues(mb, 10);
  auto ab = compare_spectra(a, b);
  auto ba = compare_spectra(b, a);
  CHECK(ab.within(0.01));
  CHECK(ab.relative_gaps == ba.relative_gaps);
  // Both drums sit inside a 3 x 3 box; their eigenvalues dominate its continuum ones.
  for (std::size_t i = 0; i < 10; ++i)
    CHECK(a.eigenvalues[i] >= 0.9 * kPi * kPi * 2 / 9);
  SpectrumResult shorter = a;
  shorter.eigenvalues.pop_back();
  CHECK_THROWS_AS(compare_spectra(shorter, b), InvalidInput);
}

TEST_CASE("the drum pipeline stops at the first failing stage") {
  GwwOptions coarse;
  coarse.h = Rational(1, 32);
  auto rep = run_gww_pipeline(coarse);
  CHECK(rep.pass);
  CHECK(rep.tolerance == 0.02);
  CHECK(rep.witness_fixed_sum == 9);
  CHECK(rep.fixed_sum == 9);
  REQUIRE(rep.solution.has_value());
  CHECK_FALSE(rep.solution->permutation_solution.has_value());
  CHECK(rep.to_text().ends_with("PASS\n"));

  GwwOptions tri;
  tri.tile = "equilateral";
  auto eq = run_gww_pipeline(tri);
  CHECK_FALSE(eq.pass);
  CHECK(eq.failed_stage() == "noncongruent");
  CHECK_FALSE(eq.spectrum_a.has_value());
  CHECK(eq.to_text().ends_with("FAIL at stage noncongruent\n"));
}
