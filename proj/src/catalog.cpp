#include "isodrum/catalog.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "isodrum/errors.hpp"

namespace isodrum {

SmallField::SmallField(unsigned q) : q_(q) {
  if (q != 2 && q != 3 && q != 4) throw InvalidInput("supported fields are F_2, F_3 and F_4");
  for (unsigned a = 0; a < q; ++a)
    for (unsigned b = 0; b < q; ++b) {
      if (q == 3) {
        add_[a][b] = (a + b) % 3;
        mul_[a][b] = (a * b) % 3;
        continue;
      }
      add_[a][b] = a ^ b;
      // Polynomials over F_2 in x with bit k the coefficient of x^k.
      unsigned p = 0;
      for (unsigned k = 0; k < 2; ++k)
        if (b >> k & 1) p ^= a << k;
      if (p & 4) p ^= 0b111;  // x^2 = x + 1
      mul_[a][b] = p;
    }
}

unsigned SmallField::neg(unsigned a) const {
  for (unsigned b = 0; b < q_; ++b)
    if (add_[a][b] == 0) return b;
  throw std::logic_error("field table without additive inverse");
}

unsigned SmallField::inv(unsigned a) const {
  for (unsigned b = 1; b < q_; ++b)
    if (mul_[a][b] == 1) return b;
  throw InvalidInput("zero has no inverse");
}

namespace {

// Every normalized nonzero vector of length n in lexicographic order.
std::vector<FieldVector> normalized_vectors(std::size_t n, unsigned q) {
  std::vector<FieldVector> out;
  FieldVector v(n, 0);
  while (true) {
    std::size_t i = n;
    while (i > 0 && v[i - 1] == q - 1) v[--i] = 0;
    if (i == 0) break;
    ++v[i - 1];
    auto first = std::find_if(v.begin(), v.end(), [](unsigned c) { return c != 0; });
    if (*first == 1) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

FieldMatrix inverse(const FieldMatrix& g, const SmallField& F) {
  std::size_t n = g.size();
  FieldMatrix a = g, inv(n, FieldVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw InvalidInput("singular matrix");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    unsigned s = F.inv(a[c][c]);
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] = F.mul(s, a[c][j]);
      inv[c][j] = F.mul(s, inv[c][j]);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      unsigned f = F.neg(a[r][c]);
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] = F.add(a[r][j], F.mul(f, a[c][j]));
        inv[r][j] = F.add(inv[r][j], F.mul(f, inv[c][j]));
      }
    }
  }
  return inv;
}

std::uint64_t psl_order(std::size_t n, unsigned q) {
  std::uint64_t order = 1;
  for (std::size_t i = 0; i < n * (n - 1) / 2; ++i) order *= q;
  std::uint64_t qi = q;
  for (std::size_t i = 2; i <= n; ++i) {
    qi *= q;
    order *= qi - 1;
  }
  return order / std::gcd<std::uint64_t, std::uint64_t>(n, q - 1);
}

}  // namespace

ProjectiveSpace::ProjectiveSpace(std::size_t n_, unsigned q) : n(n_), field(q) {
  if (n < 2) throw InvalidInput("projective space needs n >= 2");
  points = normalized_vectors(n, q);
  hyperplanes = points;
}

bool ProjectiveSpace::incident(std::size_t point, std::size_t hyperplane) const {
  unsigned s = 0;
  for (std::size_t i = 0; i < n; ++i)
    s = field.add(s, field.mul(hyperplanes[hyperplane][i], points[point][i]));
  return s == 0;
}

FieldVector ProjectiveSpace::normalize(FieldVector v) const {
  auto first = std::find_if(v.begin(), v.end(), [](unsigned c) { return c != 0; });
  if (first == v.end()) throw InvalidInput("the zero vector spans no point");
  unsigned s = field.inv(*first);
  for (auto& c : v) c = field.mul(s, c);
  return v;
}

std::size_t ProjectiveSpace::point_index(const FieldVector& v) const {
  auto w = normalize(v);
  return static_cast<std::size_t>(std::lower_bound(points.begin(), points.end(), w) -
                                  points.begin());
}

std::size_t ProjectiveSpace::hyperplane_index(const FieldVector& u) const {
  auto w = normalize(u);
  return static_cast<std::size_t>(std::lower_bound(hyperplanes.begin(), hyperplanes.end(), w) -
                                  hyperplanes.begin());
}

Permutation ProjectiveSpace::action(const FieldMatrix& g) const {
  FieldMatrix gi = inverse(g, field);
  std::size_t N = size();
  std::vector<Point> img(2 * N);
  for (std::size_t p = 0; p < N; ++p) {
    FieldVector y(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) y[i] = field.add(y[i], field.mul(g[i][j], points[p][j]));
    img[p] = static_cast<Point>(point_index(y));
  }
  for (std::size_t h = 0; h < N; ++h) {
    FieldVector u(n, 0);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        u[j] = field.add(u[j], field.mul(hyperplanes[h][i], gi[i][j]));
    img[N + h] = static_cast<Point>(N + hyperplane_index(u));
  }
  return Permutation(std::move(img));
}

std::vector<FieldMatrix> sl_generators(std::size_t n, const SmallField& field) {
  std::vector<unsigned> basis{1};
  if (field.order() == 4) basis.push_back(2);
  std::vector<FieldMatrix> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (unsigned c : basis) {
        FieldMatrix m(n, FieldVector(n, 0));
        for (std::size_t k = 0; k < n; ++k) m[k][k] = 1;
        m[i][j] = c;
        out.push_back(std::move(m));
      }
    }
  return out;
}

Triple psl_triple(std::size_t n, unsigned q) {
  ProjectiveSpace P(n, q);
  std::vector<Permutation> gens;
  for (const auto& m : sl_generators(n, P.field)) gens.push_back(P.action(m));
  PermGroup G(2 * P.size(), gens);
  PermGroup H = G.stabilizer(0);
  PermGroup K = G.stabilizer(static_cast<Point>(P.size()));
  return Triple(G, H, K, "psl(" + std::to_string(n) + "," + std::to_string(q) + ")");
}

Permutation duality_permutation(std::size_t n, unsigned q) {
  std::size_t N = ProjectiveSpace(n, q).size();
  std::vector<Point> img(2 * N);
  for (std::size_t i = 0; i < N; ++i) {
    img[i] = static_cast<Point>(N + i);
    img[N + i] = static_cast<Point>(i);
  }
  return Permutation(std::move(img));
}

std::vector<Permutation> duality_automorphism(std::size_t n, unsigned q) {
  Permutation delta = duality_permutation(n, q);
  Triple t = psl_triple(n, q);
  std::vector<Permutation> out;
  for (const auto& g : t.G.generators()) out.push_back(delta * g * delta);
  return out;
}

std::size_t model_fixed_coset(std::size_t n, unsigned q, const Permutation& a,
                              const Permutation& b) {
  std::size_t N = ProjectiveSpace(n, q).size();
  if (a.degree() != 2 * N || b.degree() != 2 * N)
    throw InvalidInput("model_fixed_coset: degree does not match the projective space");
  bool common = false;
  for (std::size_t h = N; h < 2 * N && !common; ++h)
    common = a(static_cast<Point>(h)) == h && b(static_cast<Point>(h)) == h;
  if (!common) throw InvalidInput("model_fixed_coset: no common stabilized hyperplane");
  for (std::size_t y = 0; y < N; ++y)
    if (a(static_cast<Point>(y)) == b(static_cast<Point>(y))) return y;
  throw std::logic_error("model_fixed_coset: a b^-1 fixes no point");
}

std::vector<CatalogEntry> catalog_entries() {
  std::vector<CatalogEntry> out;
  for (auto [n, q] : {std::pair<std::size_t, unsigned>{3, 2}, {3, 3}, {4, 2}, {3, 4}}) {
    std::size_t points = 0, qi = 1;
    for (std::size_t i = 0; i < n; ++i, qi *= q) points += qi;
    out.push_back({n, q, points, psl_order(n, q),
                   "psl(" + std::to_string(n) + "," + std::to_string(q) + ")"});
  }
  return out;
}

}  // namespace isodrum
