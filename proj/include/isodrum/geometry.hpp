#pragma once

#include <array>
#include <string>

#include "isodrum/rational.hpp"

namespace isodrum {

/// Exact a + b sqrt(d) with rational a, b and a fixed squarefree d >= 1
/// (d = 1 means the value is rational and b stays 0).
class Surd {
public:
  Surd() = default;
  Surd(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Surd(Rational a) : a_(std::move(a)) { a_.canonicalize(); }  // NOLINT
  Surd(Rational a, Rational b, long d);

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }
  long radicand() const { return d_; }
  bool is_rational() const { return sgn(b_) == 0; }

  int sign() const;
  double to_double() const;

  Surd operator-() const;
  friend Surd operator+(const Surd& x, const Surd& y);
  friend Surd operator-(const Surd& x, const Surd& y);
  friend Surd operator*(const Surd& x, const Surd& y);
  friend Surd operator/(const Surd& x, const Surd& y);
  friend bool operator==(const Surd& x, const Surd& y);
  friend bool operator<(const Surd& x, const Surd& y) { return (x - y).sign() < 0; }

  std::string to_string() const;

private:
  static long common_radicand(const Surd& x, const Surd& y);

  Rational a_ = 0;
  Rational b_ = 0;
  long d_ = 1;
};

struct Vec2 {
  Surd x, y;
  friend bool operator==(const Vec2&, const Vec2&) = default;
  friend bool operator<(const Vec2& p, const Vec2& q) {
    if (!(p.x == q.x)) return p.x < q.x;
    return p.y < q.y;
  }
};

Vec2 operator+(const Vec2& p, const Vec2& q);
Vec2 operator-(const Vec2& p, const Vec2& q);
Vec2 operator*(const Surd& s, const Vec2& p);
Surd dot(const Vec2& p, const Vec2& q);
Surd cross(const Vec2& p, const Vec2& q);

/// Sign of the turn p -> q -> r (positive when counterclockwise).
int orientation(const Vec2& p, const Vec2& q, const Vec2& r);

/// Mirror image of p across the line through a and b.
Vec2 reflect(const Vec2& p, const Vec2& a, const Vec2& b);

using Triangle = std::array<Vec2, 3>;

/// Twice the signed area.
Surd doubled_signed_area(const Triangle& t);

/// Interiors intersect (shared edges or vertices do not count).
bool interiors_overlap(const Triangle& s, const Triangle& t);

}  // namespace isodrum
