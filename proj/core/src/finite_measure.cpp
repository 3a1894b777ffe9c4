#include "mexch/finite_measure.hpp"

#include <algorithm>

namespace mexch {

FiniteMeasure::FiniteMeasure(std::vector<Tuple> space, std::vector<Rational> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
  if (space_.size() != weights_.size()) {
    throw std::invalid_argument("finite measure needs one weight per point");
  }
  lexicographic_ = std::is_sorted(space_.begin(), space_.end());
  auto sorted = space_;
  if (!lexicographic_) std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("finite measure space has repeated points");
  }
}

FiniteMeasure FiniteMeasure::zero_on_product(const std::vector<std::size_t>& alphabet_sizes) {
  std::vector<Tuple> space;
  Tuple point(alphabet_sizes.size(), 0);
  if (std::find(alphabet_sizes.begin(), alphabet_sizes.end(), 0) != alphabet_sizes.end()) {
    return FiniteMeasure({}, {});
  }
  while (true) {
    space.push_back(point);
    std::size_t j = point.size();
    bool carried = true;
    while (carried && j-- > 0) {
      if (++point[j] < alphabet_sizes[j]) {
        carried = false;
      } else {
        point[j] = 0;
      }
    }
    if (carried) break;
  }
  std::vector<Rational> weights(space.size());
  return FiniteMeasure(std::move(space), std::move(weights));
}

std::size_t FiniteMeasure::index_of(const Tuple& point) const {
  if (lexicographic_) {
    const auto it = std::lower_bound(space_.begin(), space_.end(), point);
    if (it != space_.end() && *it == point) return static_cast<std::size_t>(it - space_.begin());
  } else {
    const auto it = std::find(space_.begin(), space_.end(), point);
    if (it != space_.end()) return static_cast<std::size_t>(it - space_.begin());
  }
  throw std::out_of_range("point outside the measure's space");
}

const Rational& FiniteMeasure::weight(const Tuple& point) const {
  return weights_[index_of(point)];
}

Rational& FiniteMeasure::weight(const Tuple& point) { return weights_[index_of(point)]; }

Rational FiniteMeasure::total_mass() const {
  Rational total = 0;
  for (const auto& w : weights_) total += w;
  return total;
}

}  // namespace mexch
