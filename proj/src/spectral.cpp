#include "isodrum/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "isodrum/errors.hpp"

namespace isodrum {

namespace {

int sign_of(__int128 v) { return (v > 0) - (v < 0); }
int sign_of(const Surd& v) { return v.sign(); }

// Strictly inside a closed polygon; points on an edge are outside.
template <class T>
bool strictly_inside(const std::vector<std::pair<T, T>>& poly, const T& px, const T& py) {
  bool in = false;
  std::size_t n = poly.size();
  for (std::size_t e = 0; e < n; ++e) {
    const auto& [ax, ay] = poly[e];
    const auto& [bx, by] = poly[(e + 1) % n];
    int o = sign_of((bx - ax) * (py - ay) - (by - ay) * (px - ax));
    if (o == 0 && sign_of(std::min(ax, bx) - px) <= 0 && sign_of(std::max(ax, bx) - px) >= 0 &&
        sign_of(std::min(ay, by) - py) <= 0 && sign_of(std::max(ay, by) - py) >= 0)
      return false;
    bool a_above = sign_of(ay - py) > 0, b_above = sign_of(by - py) > 0;
    if (a_above != b_above && (b_above ? o > 0 : o < 0)) in = !in;
  }
  return in;
}

bool fits(const mpz_class& z) {
  // Coordinates stay far below 2^40 so that products fit in 128 bits.
  return mpz_sizeinbase(z.get_mpz_t(), 2) < 40;
}

}  // namespace

std::size_t GridMask::count() const {
  return static_cast<std::size_t>(std::count(inside.begin(), inside.end(), 1));
}

double GridMask::area() const {
  double hh = h.get_d();
  return static_cast<double>(count()) * hh * hh;
}

GridMask rasterize(const std::vector<Vec2>& poly, const Rational& h) {
  if (poly.size() < 3) throw InvalidInput("rasterize: polygon needs three vertices");
  if (sgn(h) <= 0) throw InvalidInput("rasterize: spacing must be positive");
  Surd twice_area = 0;
  for (std::size_t i = 0; i < poly.size(); ++i)
    twice_area = twice_area + cross(poly[i], poly[(i + 1) % poly.size()]);
  if (twice_area.sign() == 0) throw InvalidInput("rasterize: degenerate polygon");

  double lo_x = std::numeric_limits<double>::max(), hi_x = -lo_x, lo_y = lo_x, hi_y = -lo_x;
  bool rational = true;
  for (const auto& v : poly) {
    lo_x = std::min(lo_x, v.x.to_double());
    hi_x = std::max(hi_x, v.x.to_double());
    lo_y = std::min(lo_y, v.y.to_double());
    hi_y = std::max(hi_y, v.y.to_double());
    rational = rational && v.x.is_rational() && v.y.is_rational();
  }
  double hd = h.get_d();
  GridMask m;
  m.h = h;
  m.i0 = static_cast<long>(std::floor(lo_x / hd));
  m.j0 = static_cast<long>(std::floor(lo_y / hd));
  m.nx = static_cast<std::size_t>(std::ceil(hi_x / hd) - m.i0 + 1);
  m.ny = static_cast<std::size_t>(std::ceil(hi_y / hd) - m.j0 + 1);
  m.inside.assign(m.nx * m.ny, 0);

  if (rational) {
    // Scale everything to integers by the common denominator.
    mpz_class den = h.get_den();
    for (const auto& v : poly) {
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.x.rational_part().get_den_mpz_t());
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.y.rational_part().get_den_mpz_t());
    }
    std::vector<std::pair<__int128, __int128>> ip;
    bool ok = true;
    for (const auto& v : poly) {
      mpz_class x(Rational(v.x.rational_part() * den)), y(Rational(v.y.rational_part() * den));
      ok = ok && fits(x) && fits(y);
      if (ok) ip.emplace_back(x.get_si(), y.get_si());
    }
    mpz_class step(Rational(h * den));
    if (ok && fits(step) && fits(step * (std::abs(m.i0) + static_cast<long>(m.nx))) &&
        fits(step * (std::abs(m.j0) + static_cast<long>(m.ny)))) {
      __int128 s = step.get_si();
      for (std::size_t y = 0; y < m.ny; ++y)
        for (std::size_t x = 0; x < m.nx; ++x)
          m.inside[y * m.nx + x] = strictly_inside<__int128>(
              ip, s * (m.i0 + static_cast<long>(x)), s * (m.j0 + static_cast<long>(y)));
      return m;
    }
  }

  std::vector<std::pair<Surd, Surd>> sp;
  for (const auto& v : poly) sp.emplace_back(v.x, v.y);
  for (std::size_t y = 0; y < m.ny; ++y)
    for (std::size_t x = 0; x < m.nx; ++x) {
      Surd px(Rational(h * (m.i0 + static_cast<long>(x))));
      Surd py(Rational(h * (m.j0 + static_cast<long>(y))));
      m.inside[y * m.nx + x] = strictly_inside<Surd>(sp, px, py);
    }
  return m;
}

GridMask rasterize_rectangle(const Rational& w, const Rational& ht, const Rational& h) {
  return rasterize({{Surd(0), Surd(0)}, {Surd(w), Surd(0)}, {Surd(w), Surd(ht)}, {Surd(0), Surd(ht)}},
                   h);
}

SpectrumResult dirichlet_eigenvalues(const GridMask& mask, std::size_t k,
                                     const EigenOptions& options) {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;

  std::vector<long> index(mask.inside.size(), -1);
  long n = 0;
  for (std::size_t c = 0; c < mask.inside.size(); ++c)
    if (mask.inside[c]) index[c] = n++;
  if (k == 0 || k > static_cast<std::size_t>(n))
    throw InvalidInput("dirichlet_eigenvalues: k must be between 1 and the node count");

  std::vector<Eigen::Triplet<double>> entries;
  for (std::size_t y = 0; y < mask.ny; ++y)
    for (std::size_t x = 0; x < mask.nx; ++x) {
      long i = index[y * mask.nx + x];
      if (i < 0) continue;
      entries.emplace_back(i, i, 4.0);
      auto link = [&](std::size_t xx, std::size_t yy) {
        long j = index[yy * mask.nx + xx];
        if (j >= 0) entries.emplace_back(i, j, -1.0);
      };
      if (x > 0) link(x - 1, y);
      if (x + 1 < mask.nx) link(x + 1, y);
      if (y > 0) link(x, y - 1);
      if (y + 1 < mask.ny) link(x, y + 1);
    }
  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(entries.begin(), entries.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(A);
  if (solver.info() != Eigen::Success) throw NonConvergence("factorization of the Laplacian failed");

  std::mt19937_64 rng(options.seed);
  auto random_vector = [&]() {
    VectorXd v(n);
    for (long i = 0; i < n; ++i) v[i] = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
    return v;
  };

  const long cap = std::min<long>(n, static_cast<long>(options.max_dimension));
  const long block = std::max<long>(1, std::min<long>(static_cast<long>(options.block), n));
  MatrixXd V(n, cap), AV(n, cap);
  long m = 0;  // columns of V
  long done = 0;  // columns of V whose image under A^{-1} is in AV

  // Orthonormalize w against V and append it; fresh random directions
  // replace vectors that collapse.
  auto append = [&](VectorXd w) {
    for (int attempt = 0; attempt < 8; ++attempt) {
      double before = w.norm();
      for (int pass = 0; pass < 2; ++pass)
        if (m > 0) w -= V.leftCols(m) * (V.leftCols(m).transpose() * w);
      double after = w.norm();
      if (after > 1e-8 * before && after > 0) {
        V.col(m++) = w / after;
        return;
      }
      w = random_vector();
    }
    throw NonConvergence("block Lanczos: cannot extend the Krylov basis");
  };

  for (long c = 0; c < block && m < cap; ++c) append(random_vector());

  std::vector<double> theta;
  while (true) {
    for (; done < m; ++done) AV.col(done) = solver.solve(V.col(done));
    MatrixXd H = V.leftCols(m).transpose() * AV.leftCols(m);
    H = 0.5 * (H + H.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(H);
    const VectorXd& vals = eig.eigenvalues();  // ascending; we need the largest
    const long want = std::min<long>(static_cast<long>(k), m);
    bool converged = want == static_cast<long>(k);
    theta.clear();
    for (long t = 0; t < want; ++t) {
      long col = m - 1 - t;
      double th = vals[col];
      theta.push_back(th);
      if (!converged || m == n) continue;
      VectorXd y = eig.eigenvectors().col(col);
      VectorXd r = AV.leftCols(m) * y - th * (V.leftCols(m) * y);
      if (r.norm() > options.tolerance * std::abs(th)) converged = false;
    }
    if (converged && static_cast<long>(theta.size()) == static_cast<long>(k)) break;
    if (m >= cap) {
      if (m == n) break;
      throw NonConvergence("block Lanczos: iteration cap reached before convergence");
    }
    // The next block is A^{-1} applied to the newest block.
    long stop = m;
    for (long c = m - std::min(block, m); c < stop && m < cap; ++c) append(AV.col(c));
  }

  SpectrumResult out;
  out.k = k;
  out.h = mask.h.get_d();
  for (double th : theta) out.eigenvalues.push_back(1.0 / (th * out.h * out.h));
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  return out;
}

SpectrumComparison compare_spectra(const SpectrumResult& a, const SpectrumResult& b) {
  if (a.eigenvalues.size() != b.eigenvalues.size())
    throw InvalidInput("compare_spectra: spectra of different lengths");
  SpectrumComparison out;
  for (std::size_t i = 0; i < a.eigenvalues.size(); ++i) {
    double x = a.eigenvalues[i], y = b.eigenvalues[i];
    double gap = std::abs(x - y) / std::max(x, y);
    out.relative_gaps.push_back(gap);
    out.max_gap = std::max(out.max_gap, gap);
  }
  return out;
}

double weyl_count(double area, double perimeter, double E) {
  return (area * E - perimeter * std::sqrt(E)) / (4 * std::numbers::pi);
}

}  // namespace isodrum
