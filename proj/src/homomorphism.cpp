#include "isodrum/homomorphism.hpp"

#include <numeric>

#include "isodrum/errors.hpp"

namespace isodrum {

namespace {

Permutation pair_permutation(const Permutation& a, const Permutation& b) {
  std::size_t d = a.degree();
  std::vector<Point> img(d + b.degree());
  for (Point x = 0; x < d; ++x) img[x] = a(x);
  for (Point y = 0; y < b.degree(); ++y) img[d + y] = static_cast<Point>(d + b(y));
  return Permutation::from_images_unchecked(std::move(img));
}

}  // namespace

Homomorphism::Homomorphism(const PermGroup& source, std::vector<Permutation> images,
                           std::size_t target_degree)
    : source_(source), images_(std::move(images)), target_degree_(target_degree) {
  if (images_.size() != source_.generators().size()) {
    throw InvalidInput("homomorphism: need one image per generator");
  }
  std::vector<Permutation> pairs;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i].degree() != target_degree_) {
      throw InvalidInput("homomorphism: image degree mismatch");
    }
    pairs.push_back(pair_permutation(source_.generators()[i], images_[i]));
  }
  std::vector<Point> prefix(source_.degree());
  std::iota(prefix.begin(), prefix.end(), Point{0});
  std::size_t degree = source_.degree() + target_degree_;
  StabilizerChain probe(degree, pairs, prefix);
  if (probe.order() != source_.order()) {
    throw InvalidInput("generator images do not define a homomorphism");
  }
  graph_chain_ = std::move(probe);
}

Permutation Homomorphism::operator()(const Permutation& g) const {
  if (!source_.contains(g)) throw InvalidInput("homomorphism: argument not in source group");
  std::vector<Point> images;
  for (const auto& lev : graph_chain_.levels()) images.push_back(g(lev.base));
  auto pair = graph_chain_.element_from_base_images(images);
  if (!pair) throw std::logic_error("graph group lookup failed");
  std::size_t d = source_.degree();
  std::vector<Point> img(target_degree_);
  for (Point y = 0; y < target_degree_; ++y) img[y] = static_cast<Point>((*pair)(d + y) - d);
  return Permutation::from_images_unchecked(std::move(img));
}

PermGroup Homomorphism::image() const { return PermGroup(target_degree_, images_); }

bool Homomorphism::is_automorphism() const {
  if (target_degree_ != source_.degree()) return false;
  PermGroup img = image();
  return img.order() == source_.order() && source_.contains_group(img);
}

}  // namespace isodrum
