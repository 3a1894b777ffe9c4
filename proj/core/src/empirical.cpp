#include "mexch/empirical.hpp"

#include <string>

namespace mexch {

namespace {

std::vector<std::size_t> count_symbols(std::span<const State> states, std::size_t alphabet_size) {
  std::vector<std::size_t> counts(alphabet_size, 0);
  for (const auto s : states) {
    if (s >= alphabet_size) {
      throw std::invalid_argument("state " + std::to_string(s) + " outside alphabet of size " +
                                  std::to_string(alphabet_size));
    }
    ++counts[s];
  }
  return counts;
}

}  // namespace

EmpiricalMeasureVector::EmpiricalMeasureVector(SystemShape shape,
                                               std::vector<std::vector<Rational>> freqs)
    : shape_(std::move(shape)), freqs_(std::move(freqs)) {
  if (freqs_.size() != shape_.class_count()) {
    throw std::invalid_argument("frequency vector count does not match class count");
  }
  for (std::size_t i = 0; i < freqs_.size(); ++i) {
    const auto& f = freqs_[i];
    if (f.size() != shape_.alphabet_size(i)) {
      throw std::invalid_argument("class " + std::to_string(i) +
                                  " frequency vector has the wrong length");
    }
    Rational total = 0;
    for (const auto& x : f) {
      if (x < 0) throw std::invalid_argument("negative frequency in class " + std::to_string(i));
      const Rational scaled = x * shape_.size(i);
      if (boost::multiprecision::denominator(scaled) != 1) {
        throw std::invalid_argument("frequency " + to_string(x) + " in class " +
                                    std::to_string(i) + " is not a multiple of 1/" +
                                    std::to_string(shape_.size(i)));
      }
      total += x;
    }
    if (total != 1) {
      throw std::invalid_argument("class " + std::to_string(i) + " frequencies sum to " +
                                  to_string(total));
    }
  }
}

std::vector<std::vector<std::size_t>> EmpiricalMeasureVector::counts() const {
  std::vector<std::vector<std::size_t>> out(freqs_.size());
  for (std::size_t i = 0; i < freqs_.size(); ++i) {
    for (const auto& x : freqs_[i]) {
      const Rational scaled = x * shape_.size(i);
      out[i].push_back(static_cast<std::size_t>(boost::multiprecision::numerator(scaled)));
    }
  }
  return out;
}

EmpiricalMeasureVector empirical_measure_vector(const SystemShape& shape,
                                                const Configuration& config) {
  validate(shape, config);
  std::vector<std::vector<Rational>> freqs(shape.class_count());
  for (std::size_t i = 0; i < shape.class_count(); ++i) {
    const auto counts = count_symbols(config.classes[i], shape.alphabet_size(i));
    for (const auto c : counts) freqs[i].emplace_back(c, shape.size(i));
  }
  return EmpiricalMeasureVector(shape, std::move(freqs));
}

std::vector<Rational> estimate_directing_measure(std::span<const State> prefix,
                                                 std::size_t alphabet_size) {
  if (prefix.empty()) throw std::invalid_argument("directing measure estimate needs a non-empty prefix");
  const auto counts = count_symbols(prefix, alphabet_size);
  std::vector<Rational> out;
  out.reserve(alphabet_size);
  for (const auto c : counts) out.emplace_back(c, prefix.size());
  return out;
}

std::vector<double> estimate_directing_measure_fp(std::span<const State> prefix,
                                                  std::size_t alphabet_size) {
  if (prefix.empty()) throw std::invalid_argument("directing measure estimate needs a non-empty prefix");
  const auto counts = count_symbols(prefix, alphabet_size);
  std::vector<double> out;
  out.reserve(alphabet_size);
  for (const auto c : counts) out.push_back(static_cast<double>(c) / static_cast<double>(prefix.size()));
  return out;
}

}  // namespace mexch
