#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace opcorr {

class FiniteSpace;
using SpaceRef = std::shared_ptr<const FiniteSpace>;

/// A finite measurable space. Every subset of points is measurable, so the
/// space is nothing more than an ordered list of distinct labels. A product
/// space keeps references to its two factors and orders its points
/// lexicographically: index(i1, i2) = i1 * |right| + i2.
class FiniteSpace {
 public:
  static SpaceRef make(std::string id, std::vector<std::string> points);
  static SpaceRef product(const SpaceRef& left, const SpaceRef& right);

  const std::string& id() const noexcept { return id_; }
  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& points() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  std::optional<std::size_t> find(std::string_view label) const;
  /// Throws Error(UnknownPoint) naming the space.
  std::size_t index_of(std::string_view label) const;

  bool is_product() const noexcept { return left_ != nullptr; }
  /// Factor spaces; both throw Error(NotProductSpace) on a plain space.
  const SpaceRef& left() const;
  const SpaceRef& right() const;
  std::pair<std::size_t, std::size_t> split(std::size_t i) const;
  std::size_t join(std::size_t i1, std::size_t i2) const;
  /// Index of the pair (l1, l2) of factor labels.
  std::size_t index_of_pair(std::string_view l1, std::string_view l2) const;

 private:
  FiniteSpace() = default;

  std::string id_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
  SpaceRef left_;
  SpaceRef right_;
};

/// Structural equality: same id, same points, same factors.
bool same_space(const FiniteSpace& a, const FiniteSpace& b);
inline bool same_space(const SpaceRef& a, const SpaceRef& b) { return a == b || same_space(*a, *b); }

/// Throws Error(SpaceMismatch) with `context` in the message unless the spaces agree.
void require_same_space(const SpaceRef& a, const SpaceRef& b, std::string_view context);

}  // namespace opcorr
