#include "opcorr/space.hpp"

#include "opcorr/error.hpp"

namespace opcorr {

SpaceRef FiniteSpace::make(std::string id, std::vector<std::string> points) {
  if (points.empty()) throw Error(ErrorKind::ValidationError, "space '" + id + "' has no points");
  std::shared_ptr<FiniteSpace> space(new FiniteSpace());
  space->id_ = std::move(id);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].empty()) throw Error(ErrorKind::ValidationError, "space '" + space->id_ + "' has an empty point label");
    if (!space->index_.emplace(points[i], i).second) {
      throw Error(ErrorKind::ValidationError, "space '" + space->id_ + "' repeats point '" + points[i] + "'");
    }
  }
  space->labels_ = std::move(points);
  return space;
}

SpaceRef FiniteSpace::product(const SpaceRef& left, const SpaceRef& right) {
  std::shared_ptr<FiniteSpace> space(new FiniteSpace());
  space->id_ = left->id() + "*" + right->id();
  space->labels_.reserve(left->size() * right->size());
  for (const auto& a : left->points()) {
    for (const auto& b : right->points()) {
      space->labels_.push_back("(" + a + "," + b + ")");
    }
  }
  // Factor labels may themselves contain commas, so pair lookup goes through
  // index_of_pair rather than the rendered label.
  for (std::size_t i = 0; i < space->labels_.size(); ++i) space->index_.emplace(space->labels_[i], i);
  space->left_ = left;
  space->right_ = right;
  return space;
}

std::optional<std::size_t> FiniteSpace::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FiniteSpace::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw Error(ErrorKind::UnknownPoint, "'" + std::string(label) + "' is not a point of space '" + id_ + "'");
}

const SpaceRef& FiniteSpace::left() const {
  if (!left_) throw Error(ErrorKind::NotProductSpace, "space '" + id_ + "' is not a declared product");
  return left_;
}

const SpaceRef& FiniteSpace::right() const {
  if (!right_) throw Error(ErrorKind::NotProductSpace, "space '" + id_ + "' is not a declared product");
  return right_;
}

std::pair<std::size_t, std::size_t> FiniteSpace::split(std::size_t i) const {
  const std::size_t n2 = right()->size();
  return {i / n2, i % n2};
}

std::size_t FiniteSpace::join(std::size_t i1, std::size_t i2) const { return i1 * right()->size() + i2; }

std::size_t FiniteSpace::index_of_pair(std::string_view l1, std::string_view l2) const {
  return join(left()->index_of(l1), right()->index_of(l2));
}

bool same_space(const FiniteSpace& a, const FiniteSpace& b) {
  if (&a == &b) return true;
  if (a.id() != b.id() || a.points() != b.points() || a.is_product() != b.is_product()) return false;
  if (!a.is_product()) return true;
  return same_space(a.left(), b.left()) && same_space(a.right(), b.right());
}

void require_same_space(const SpaceRef& a, const SpaceRef& b, std::string_view context) {
  if (!same_space(a, b)) {
    throw Error(ErrorKind::SpaceMismatch,
                std::string(context) + ": space '" + a->id() + "' differs from space '" + b->id() + "'");
  }
}

}  // namespace opcorr
