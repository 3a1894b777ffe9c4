#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "mexch/types.hpp"

namespace mexch {

/// Class count, class sizes and per-class alphabets of a finite multi-class
/// system. Class i has `size(i)` particles taking values in `alphabet(i)`.
class SystemShape {
 public:
  SystemShape(std::vector<std::size_t> class_sizes,
              std::vector<std::vector<std::string>> alphabets);

  /// Alphabets labelled "0", "1", ... of the given sizes.
  static SystemShape with_alphabet_sizes(std::vector<std::size_t> class_sizes,
                                         const std::vector<std::size_t>& alphabet_sizes);

  std::size_t class_count() const { return sizes_.size(); }
  std::size_t size(std::size_t i) const { return sizes_.at(i); }
  std::size_t alphabet_size(std::size_t i) const { return alphabets_.at(i).size(); }
  const std::vector<std::size_t>& class_sizes() const { return sizes_; }
  const std::vector<std::string>& alphabet(std::size_t i) const { return alphabets_.at(i); }
  const std::vector<std::vector<std::string>>& alphabets() const { return alphabets_; }

  /// prod_i A_i^{N_i}, saturating at UINT64_MAX.
  std::uint64_t configuration_count() const;
  /// prod_i N_i!, saturating at UINT64_MAX.
  std::uint64_t permutation_count() const;

  bool operator==(const SystemShape&) const = default;

 private:
  std::vector<std::size_t> sizes_;
  std::vector<std::vector<std::string>> alphabets_;
};

/// One realization of a finite multi-class system: `classes[i][n]` is the
/// alphabet index of particle n of class i. Ordering is lexicographic,
/// class-major then particle-minor.
struct Configuration {
  std::vector<Tuple> classes;

  auto operator<=>(const Configuration&) const = default;
  bool operator==(const Configuration&) const = default;
};

/// Throws std::invalid_argument unless `config` fits `shape`.
void validate(const SystemShape& shape, const Configuration& config);

/// A permutation of {0..N_i-1} for each class. `perms[i][n]` is the image of n.
class ClassPermutationVector {
 public:
  explicit ClassPermutationVector(std::vector<std::vector<std::size_t>> perms);

  static ClassPermutationVector identity(const SystemShape& shape);

  /// Only class `cls` moves: positions n and n+1 are swapped.
  static ClassPermutationVector adjacent_transposition(const SystemShape& shape,
                                                       std::size_t cls, std::size_t n);

  std::size_t class_count() const { return perms_.size(); }
  const std::vector<std::size_t>& of(std::size_t i) const { return perms_.at(i); }
  ClassPermutationVector inverse() const;

  bool operator==(const ClassPermutationVector&) const = default;

 private:
  std::vector<std::vector<std::size_t>> perms_;
};

/// All configurations of `shape` in lexicographic order.
/// Throws CapExceeded when prod_i A_i^{N_i} > cap.
std::vector<Configuration> enumerate_configurations(
    const SystemShape& shape, std::uint64_t cap = kDefaultEnumerationCap);

/// Particle n of class i in the result is particle perms[i][n] of the input.
Configuration permute_within_classes(const Configuration& config,
                                     const ClassPermutationVector& perms);

/// Visits every element of Sigma(N_1) x ... x Sigma(N_C).
/// Throws CapExceeded when prod_i N_i! > cap.
void for_each_permutation_vector(const SystemShape& shape,
                                 const std::function<void(const ClassPermutationVector&)>& visit,
                                 std::uint64_t cap = kDefaultPermutationCap);

}  // namespace mexch
