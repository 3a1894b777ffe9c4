#include "mexch/system.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <set>
#include <string>

namespace mexch {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::string count_text(std::uint64_t n) {
  return n == kSaturated ? std::string(">= 2^64") : std::to_string(n);
}

}  // namespace

std::string to_string(const Rational& r) {
  const auto& den = boost::multiprecision::denominator(r);
  if (den == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
  auto parse_int = [&](const std::string& s) {
    const auto digits = s.starts_with('-') || s.starts_with('+') ? s.substr(1) : s;
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw std::invalid_argument("malformed rational: '" + text + "'");
    }
    return BigInt(s.starts_with('+') ? digits : s);
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  const BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

SystemShape::SystemShape(std::vector<std::size_t> class_sizes,
                         std::vector<std::vector<std::string>> alphabets)
    : sizes_(std::move(class_sizes)), alphabets_(std::move(alphabets)) {
  if (sizes_.empty()) throw std::invalid_argument("a system needs at least one class");
  if (alphabets_.size() != sizes_.size()) {
    throw std::invalid_argument("expected " + std::to_string(sizes_.size()) +
                                " alphabets, got " + std::to_string(alphabets_.size()));
  }
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (sizes_[i] == 0) {
      throw std::invalid_argument("class " + std::to_string(i) + " has size 0");
    }
    const auto& alpha = alphabets_[i];
    if (alpha.empty()) {
      throw std::invalid_argument("class " + std::to_string(i) + " has an empty alphabet");
    }
    if (alpha.size() > std::numeric_limits<State>::max()) {
      throw std::invalid_argument("class " + std::to_string(i) + " alphabet too large");
    }
    if (std::set<std::string>(alpha.begin(), alpha.end()).size() != alpha.size()) {
      throw std::invalid_argument("class " + std::to_string(i) + " alphabet has duplicate labels");
    }
  }
}

SystemShape SystemShape::with_alphabet_sizes(std::vector<std::size_t> class_sizes,
                                             const std::vector<std::size_t>& alphabet_sizes) {
  std::vector<std::vector<std::string>> alphabets;
  alphabets.reserve(alphabet_sizes.size());
  for (const auto a : alphabet_sizes) {
    std::vector<std::string> labels(a);
    for (std::size_t s = 0; s < a; ++s) labels[s] = std::to_string(s);
    alphabets.push_back(std::move(labels));
  }
  return SystemShape(std::move(class_sizes), std::move(alphabets));
}

std::uint64_t SystemShape::configuration_count() const {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    for (std::size_t n = 0; n < sizes_[i]; ++n) {
      total = saturating_mul(total, alphabets_[i].size());
    }
  }
  return total;
}

std::uint64_t SystemShape::permutation_count() const {
  std::uint64_t total = 1;
  for (const auto n : sizes_) {
    for (std::uint64_t f = 2; f <= n; ++f) total = saturating_mul(total, f);
  }
  return total;
}

void validate(const SystemShape& shape, const Configuration& config) {
  if (config.classes.size() != shape.class_count()) {
    throw std::invalid_argument("configuration has " + std::to_string(config.classes.size()) +
                                " classes, shape has " + std::to_string(shape.class_count()));
  }
  for (std::size_t i = 0; i < shape.class_count(); ++i) {
    const auto& cls = config.classes[i];
    if (cls.size() != shape.size(i)) {
      throw std::invalid_argument("class " + std::to_string(i) + " has " +
                                  std::to_string(cls.size()) + " particles, expected " +
                                  std::to_string(shape.size(i)));
    }
    for (const auto s : cls) {
      if (s >= shape.alphabet_size(i)) {
        throw std::invalid_argument("state " + std::to_string(s) + " out of range in class " +
                                    std::to_string(i));
      }
    }
  }
}

ClassPermutationVector::ClassPermutationVector(std::vector<std::vector<std::size_t>> perms)
    : perms_(std::move(perms)) {
  for (std::size_t i = 0; i < perms_.size(); ++i) {
    std::vector<bool> seen(perms_[i].size(), false);
    for (const auto image : perms_[i]) {
      if (image >= seen.size() || seen[image]) {
        throw std::invalid_argument("permutation of class " + std::to_string(i) +
                                    " is not a bijection");
      }
      seen[image] = true;
    }
  }
}

ClassPermutationVector ClassPermutationVector::identity(const SystemShape& shape) {
  std::vector<std::vector<std::size_t>> perms(shape.class_count());
  for (std::size_t i = 0; i < perms.size(); ++i) {
    perms[i].resize(shape.size(i));
    std::iota(perms[i].begin(), perms[i].end(), std::size_t{0});
  }
  return ClassPermutationVector(std::move(perms));
}

ClassPermutationVector ClassPermutationVector::adjacent_transposition(const SystemShape& shape,
                                                                      std::size_t cls,
                                                                      std::size_t n) {
  auto result = identity(shape);
  auto& p = result.perms_.at(cls);
  if (n + 1 >= p.size()) throw std::out_of_range("transposition index out of range");
  std::swap(p[n], p[n + 1]);
  return result;
}

ClassPermutationVector ClassPermutationVector::inverse() const {
  auto inv = perms_;
  for (std::size_t i = 0; i < perms_.size(); ++i) {
    for (std::size_t n = 0; n < perms_[i].size(); ++n) inv[i][perms_[i][n]] = n;
  }
  return ClassPermutationVector(std::move(inv));
}

std::vector<Configuration> enumerate_configurations(const SystemShape& shape, std::uint64_t cap) {
  const auto total = shape.configuration_count();
  if (total > cap) {
    throw CapExceeded("state space too large: " + count_text(total) +
                      " configurations exceed the enumeration cap of " + std::to_string(cap));
  }
  Configuration current;
  for (std::size_t i = 0; i < shape.class_count(); ++i) {
    current.classes.emplace_back(shape.size(i), State{0});
  }
  std::vector<Configuration> out;
  out.reserve(total);
  while (true) {
    out.push_back(current);
    // Odometer increment, last particle of last class fastest.
    std::size_t i = shape.class_count();
    bool carried = true;
    while (carried && i-- > 0) {
      auto& cls = current.classes[i];
      std::size_t n = cls.size();
      while (carried && n-- > 0) {
        if (++cls[n] < shape.alphabet_size(i)) {
          carried = false;
        } else {
          cls[n] = 0;
        }
      }
    }
    if (carried) break;
  }
  return out;
}

Configuration permute_within_classes(const Configuration& config,
                                     const ClassPermutationVector& perms) {
  if (perms.class_count() != config.classes.size()) {
    throw std::invalid_argument("permutation vector has " + std::to_string(perms.class_count()) +
                                " classes, configuration has " +
                                std::to_string(config.classes.size()));
  }
  Configuration out;
  out.classes.reserve(config.classes.size());
  for (std::size_t i = 0; i < config.classes.size(); ++i) {
    const auto& sigma = perms.of(i);
    const auto& src = config.classes[i];
    if (sigma.size() != src.size()) {
      throw std::invalid_argument("permutation of class " + std::to_string(i) +
                                  " has the wrong degree");
    }
    Tuple dst(src.size());
    for (std::size_t n = 0; n < src.size(); ++n) dst[n] = src[sigma[n]];
    out.classes.push_back(std::move(dst));
  }
  return out;
}

void for_each_permutation_vector(const SystemShape& shape,
                                 const std::function<void(const ClassPermutationVector&)>& visit,
                                 std::uint64_t cap) {
  const auto total = shape.permutation_count();
  if (total > cap) {
    throw CapExceeded("too many permutation tuples: prod N_i! = " + count_text(total) +
                      " exceeds the permutation cap of " + std::to_string(cap));
  }
  std::vector<std::vector<std::size_t>> perms(shape.class_count());
  for (std::size_t i = 0; i < perms.size(); ++i) {
    perms[i].resize(shape.size(i));
    std::iota(perms[i].begin(), perms[i].end(), std::size_t{0});
  }
  while (true) {
    visit(ClassPermutationVector(perms));
    std::size_t i = perms.size();
    bool advanced = false;
    while (!advanced && i-- > 0) {
      // next_permutation wraps back to the identity when it returns false.
      advanced = std::next_permutation(perms[i].begin(), perms[i].end());
    }
    if (!advanced) break;
  }
}

}  // namespace mexch
