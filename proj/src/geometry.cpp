#include "isodrum/geometry.hpp"

#include <cmath>
#include <sstream>

#include "isodrum/errors.hpp"

namespace isodrum {

Surd::Surd(Rational a, Rational b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (d_ < 1) throw InvalidInput("surd radicand must be positive");
  a_.canonicalize();
  b_.canonicalize();
  if (d_ == 1) {
    a_ += b_;
    b_ = 0;
  }
  if (sgn(b_) == 0) d_ = 1;
}

long Surd::common_radicand(const Surd& x, const Surd& y) {
  if (x.d_ == 1) return y.d_;
  if (y.d_ == 1 || x.d_ == y.d_) return x.d_;
  throw InvalidInput("mixing surds with different radicands");
}

int Surd::sign() const {
  int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // a and b sqrt(d) have opposite signs: compare a^2 with b^2 d.
  Rational lhs = a_ * a_, rhs = b_ * b_ * d_;
  int c = cmp(lhs, rhs);
  if (c == 0) return 0;
  return c > 0 ? sa : sb;
}

double Surd::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(d_));
}

Surd Surd::operator-() const { return Surd(-a_, -b_, d_); }

Surd operator+(const Surd& x, const Surd& y) {
  return Surd(x.a_ + y.a_, x.b_ + y.b_, Surd::common_radicand(x, y));
}

Surd operator-(const Surd& x, const Surd& y) {
  return Surd(x.a_ - y.a_, x.b_ - y.b_, Surd::common_radicand(x, y));
}

Surd operator*(const Surd& x, const Surd& y) {
  long d = Surd::common_radicand(x, y);
  return Surd(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d);
}

Surd operator/(const Surd& x, const Surd& y) {
  long d = Surd::common_radicand(x, y);
  Rational norm = y.a_ * y.a_ - y.b_ * y.b_ * d;
  if (sgn(norm) == 0) throw InvalidInput("division by zero surd");
  Surd conj(y.a_ / norm, -y.b_ / norm, d);
  return x * conj;
}

bool operator==(const Surd& x, const Surd& y) {
  return cmp(x.a_, y.a_) == 0 && cmp(x.b_, y.b_) == 0 && (x.d_ == y.d_ || sgn(x.b_) == 0);
}

std::string Surd::to_string() const {
  std::ostringstream os;
  if (is_rational() || sgn(a_) != 0) os << a_.get_str();
  if (!is_rational())
    os << (sgn(b_) > 0 && sgn(a_) != 0 ? "+" : "") << b_.get_str() << "*sqrt(" << d_ << ")";
  return os.str();
}

Vec2 operator+(const Vec2& p, const Vec2& q) { return {p.x + q.x, p.y + q.y}; }
Vec2 operator-(const Vec2& p, const Vec2& q) { return {p.x - q.x, p.y - q.y}; }
Vec2 operator*(const Surd& s, const Vec2& p) { return {s * p.x, s * p.y}; }
Surd dot(const Vec2& p, const Vec2& q) { return p.x * q.x + p.y * q.y; }
Surd cross(const Vec2& p, const Vec2& q) { return p.x * q.y - p.y * q.x; }

int orientation(const Vec2& p, const Vec2& q, const Vec2& r) {
  return cross(q - p, r - p).sign();
}

Vec2 reflect(const Vec2& p, const Vec2& a, const Vec2& b) {
  Vec2 u = b - a, v = p - a;
  Surd uu = dot(u, u);
  if (uu.sign() == 0) throw InvalidInput("reflection across a degenerate segment");
  Vec2 proj = (dot(v, u) / uu) * u;
  return a + Surd(2) * proj - v;
}

Surd doubled_signed_area(const Triangle& t) { return cross(t[1] - t[0], t[2] - t[0]); }

bool interiors_overlap(const Triangle& s, const Triangle& t) {
  // Separating axis over the six edges: the interiors are disjoint iff some
  // edge line has the other triangle in its closed outer half-plane.
  auto separated_by_edges_of = [](const Triangle& a, const Triangle& b) {
    int orient = doubled_signed_area(a).sign();
    for (int e = 0; e < 3; ++e) {
      const Vec2& p = a[e];
      const Vec2& q = a[(e + 1) % 3];
      bool all_out = true;
      for (const auto& x : b)
        if (orientation(p, q, x) * orient > 0) {
          all_out = false;
          break;
        }
      if (all_out) return true;
    }
    return false;
  };
  return !separated_by_edges_of(s, t) && !separated_by_edges_of(t, s);
}

}  // namespace isodrum
