#include "isodrum/rational.hpp"

#include "isodrum/errors.hpp"

namespace isodrum {

RationalMatrix zero_matrix(std::size_t rows, std::size_t cols) {
  return RationalMatrix(rows, std::vector<Rational>(cols, 0));
}

RationalMatrix identity_matrix(std::size_t n) {
  auto m = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.empty()) return {};
  if (a[0].size() != b.size()) throw InvalidInput("matrix product: inner dimensions differ");
  std::size_t cols = b.empty() ? 0 : b[0].size();
  auto out = zero_matrix(a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (sgn(a[i][k]) == 0) continue;
      for (std::size_t j = 0; j < cols; ++j)
        if (sgn(b[k][j]) != 0) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

Rational determinant(const RationalMatrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw InvalidInput("determinant of a non-square matrix");
  if (n == 0) return 1;

  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
  mpz_class scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class l = 1;
    for (const auto& v : m[i]) l = lcm(l, mpz_class(v.get_den()));
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j].get_num() * (l / m[i][j].get_den());
    scale *= l;
  }

  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  Rational det(a[n - 1][n - 1] * sign, scale);
  det.canonicalize();
  return det;
}

void SparseSystem::add_equation(Row row) {
  for (auto it = row.begin(); it != row.end();) {
    if (it->first >= unknowns_) throw InvalidInput("equation refers to an unknown out of range");
    it = sgn(it->second) == 0 ? row.erase(it) : std::next(it);
  }
  // Eliminate pivot columns in increasing order; subtracting a pivot row only
  // touches columns to the right of its leading one.
  auto it = row.begin();
  while (it != row.end()) {
    auto piv = pivots_.find(it->first);
    if (piv == pivots_.end()) {
      ++it;
      continue;
    }
    Rational factor = it->second;
    std::size_t col = it->first;
    for (const auto& [c, v] : piv->second) {
      Rational& entry = row[c];
      entry -= factor * v;
    }
    for (auto jt = row.begin(); jt != row.end();)
      jt = sgn(jt->second) == 0 ? row.erase(jt) : std::next(jt);
    it = row.upper_bound(col);
  }
  if (row.empty()) return;
  Rational lead = row.begin()->second;
  for (auto& [c, v] : row) v /= lead;
  pivots_.emplace(row.begin()->first, std::move(row));
}

std::vector<std::vector<Rational>> SparseSystem::nullspace() const {
  // Back substitution to reduced echelon form, last pivot first.
  std::map<std::size_t, Row> reduced;
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    Row row = it->second;
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [c, v] : row) {
        if (c == it->first) continue;
        auto r = reduced.find(c);
        if (r == reduced.end()) continue;
        Rational factor = v;
        for (const auto& [c2, v2] : r->second) row[c2] -= factor * v2;
        for (auto jt = row.begin(); jt != row.end();)
          jt = sgn(jt->second) == 0 ? row.erase(jt) : std::next(jt);
        changed = true;
        break;
      }
    }
    reduced.emplace(it->first, std::move(row));
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < unknowns_; ++f) {
    if (reduced.count(f)) continue;
    std::vector<Rational> v(unknowns_, 0);
    v[f] = 1;
    for (const auto& [p, row] : reduced) {
      auto e = row.find(f);
      if (e != row.end()) v[p] = -e->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace isodrum
