#include "isodrum/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "isodrum/errors.hpp"

namespace isodrum {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x]) {
      throw InvalidInput("image table is not a bijection");
    }
    seen[x] = true;
  }
}

Permutation Permutation::from_cycle_list(const std::vector<std::vector<Point>>& cycles,
                                         std::size_t degree) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<bool> used(degree, false);
  for (const auto& cyc : cycles) {
    for (Point x : cyc) {
      if (x >= degree) throw InvalidInput("cycle point out of range");
      if (used[x]) throw InvalidInput("point repeated within disjoint cycles");
      used[x] = true;
    }
    for (std::size_t i = 0; i < cyc.size(); ++i) img[cyc[i]] = cyc[(i + 1) % cyc.size()];
  }
  return Permutation(std::move(img));
}

Permutation Permutation::from_cycles(std::string_view text, std::size_t degree,
                                     bool one_based) {
  // Juxtaposed cycles compose left to right; they need not be disjoint.
  Permutation result(degree);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' ||
                               text[i] == '\r'))
      ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') {
      throw ParseError("expected '(' in cycle string: " + std::string(text));
    }
    ++i;
    std::vector<Point> cyc;
    while (true) {
      skip_ws();
      if (i >= text.size()) throw ParseError("unterminated cycle: " + std::string(text));
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (text[i] < '0' || text[i] > '9') {
        throw ParseError("unexpected character in cycle string: " + std::string(text));
      }
      unsigned long long v = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        v = v * 10 + static_cast<unsigned long long>(text[i] - '0');
        if (v > (1ULL << 31)) throw ParseError("point index too large");
        ++i;
      }
      if (one_based) {
        if (v == 0) throw ParseError("point 0 in 1-based cycle string");
        --v;
      }
      if (v >= degree) {
        throw ParseError("point " + std::to_string(one_based ? v + 1 : v) +
                         " exceeds degree " + std::to_string(degree));
      }
      cyc.push_back(static_cast<Point>(v));
    }
    std::vector<Point> sorted = cyc;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ParseError("point repeated inside a cycle: " + std::string(text));
    }
    if (cyc.size() > 1) result = result * from_cycle_list({cyc}, degree);
    skip_ws();
  }
  return result;
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) inv[images_[x]] = static_cast<Point>(x);
  Permutation p;
  p.images_ = std::move(inv);
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t x = 0; x < images_.size(); ++x)
    if (images_[x] != x) return false;
  return true;
}

std::size_t Permutation::order() const {
  std::size_t result = 1;
  for (std::size_t len : cycle_type()) result = std::lcm(result, len);
  return result;
}

std::size_t Permutation::fixed_point_count() const {
  std::size_t n = 0;
  for (std::size_t x = 0; x < images_.size(); ++x)
    if (images_[x] == x) ++n;
  return n;
}

std::vector<std::size_t> Permutation::cycle_type() const {
  std::vector<std::size_t> lens;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (seen[x]) continue;
    std::size_t len = 0;
    for (Point y = static_cast<Point>(x); !seen[y]; y = images_[y]) {
      seen[y] = true;
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end());
  return lens;
}

std::vector<std::vector<Point>> Permutation::cycles() const {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (seen[x] || images_[x] == x) continue;
    std::vector<Point> cyc;
    for (Point y = static_cast<Point>(x); !seen[y]; y = images_[y]) {
      seen[y] = true;
      cyc.push_back(y);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

std::string Permutation::to_cycle_string(bool one_based) const {
  auto cyc = cycles();
  if (cyc.empty()) return "()";
  std::ostringstream os;
  for (const auto& c : cyc) {
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) os << ' ';
      os << (c[i] + (one_based ? 1 : 0));
    }
    os << ')';
  }
  return os.str();
}

Permutation Permutation::extended(std::size_t degree) const {
  if (degree < images_.size()) throw InvalidInput("cannot shrink a permutation");
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  std::copy(images_.begin(), images_.end(), img.begin());
  Permutation p;
  p.images_ = std::move(img);
  return p;
}

Permutation Permutation::shifted(std::size_t offset, std::size_t degree) const {
  if (offset + images_.size() > degree) throw InvalidInput("shift exceeds target degree");
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  for (std::size_t x = 0; x < images_.size(); ++x)
    img[x + offset] = static_cast<Point>(images_[x] + offset);
  Permutation p;
  p.images_ = std::move(img);
  return p;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw InvalidInput("degree mismatch in compose");
  std::vector<Point> img(p.degree());
  for (std::size_t x = 0; x < img.size(); ++x) img[x] = q(p(static_cast<Point>(x)));
  return Permutation::from_images_unchecked(std::move(img));
}

Permutation conjugate(const Permutation& a, const Permutation& g) {
  // g^-1 * a * g sends g(y) to g(a(y)).
  if (a.degree() != g.degree()) throw InvalidInput("degree mismatch in conjugate");
  std::vector<Point> img(a.degree());
  for (Point y = 0; y < img.size(); ++y) img[g(y)] = g(a(y));
  return Permutation::from_images_unchecked(std::move(img));
}

Permutation power(const Permutation& p, long long e) {
  Permutation base = e < 0 ? p.inverse() : p;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e)
                                : static_cast<unsigned long long>(e);
  Permutation result(p.degree());
  while (k) {
    if (k & 1ULL) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace isodrum
