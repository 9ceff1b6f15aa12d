#include "l2s/space.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "l2s/errors.hpp"

namespace l2s {

std::size_t Structure::count(value_type value) const noexcept {
  return static_cast<std::size_t>(std::count(values_.begin(), values_.end(), value));
}

std::size_t Structure::hamming_distance(const Structure& other) const {
  if (other.size() != size()) throw PreconditionError("hamming_distance: length mismatch");
  std::size_t distance = 0;
  for (std::size_t i = 0; i < size(); ++i) distance += values_[i] != other.values_[i];
  return distance;
}

std::string Structure::to_string() const {
  std::string out;
  out.reserve(values_.size() * 2);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) out.push_back('-');
    out += std::to_string(values_[i]);
  }
  return out;
}

Structure Structure::parse(const std::string& text) {
  std::vector<value_type> values;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, '-')) {
    if (token.empty()) throw PreconditionError("Structure::parse: empty field in '" + text + "'");
    int v = -1;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || end != token.data() + token.size() || v < 0 ||
        v > std::numeric_limits<value_type>::max())
      throw PreconditionError("Structure::parse: value out of range in '" + text + "'");
    values.push_back(static_cast<value_type>(v));
  }
  return Structure(std::move(values));
}

std::size_t StructureHash::operator()(const Structure& x) const noexcept {
  // FNV-1a
  std::uint64_t h = 1469598103934665603ULL;
  for (auto v : x) {
    h ^= v;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

Neighborhood Neighborhood::swap_all(std::size_t dims) {
  std::vector<std::size_t> all(dims);
  for (std::size_t i = 0; i < dims; ++i) all[i] = i;
  return swap({std::move(all)});
}

DiscreteSpace::DiscreteSpace(std::vector<std::size_t> domain_sizes, ValidityPredicate validity,
                             std::string constraint_name)
    : domain_sizes_(std::move(domain_sizes)),
      validity_(std::move(validity)),
      constraint_name_(std::move(constraint_name)) {
  if (domain_sizes_.empty()) throw PreconditionError("DiscreteSpace: need at least one variable");
  for (auto size : domain_sizes_) {
    if (size < 2) throw PreconditionError("DiscreteSpace: every domain needs at least 2 values");
    if (size > std::numeric_limits<Structure::value_type>::max() + std::size_t{1})
      throw PreconditionError("DiscreteSpace: domain too large");
  }
  const auto product = product_size();
  if (product && *product <= kCountingLimit) {
    if (!validity_) {
      valid_count_ = *product;
    } else {
      std::uint64_t count = 0;
      for_each_valid([&count](const Structure&) { ++count; });
      valid_count_ = count;
    }
  }
}

DiscreteSpace DiscreteSpace::binary(std::size_t dims, ValidityPredicate validity,
                                    std::string constraint_name) {
  return DiscreteSpace(std::vector<std::size_t>(dims, 2), std::move(validity),
                       std::move(constraint_name));
}

bool DiscreteSpace::is_binary() const noexcept {
  return std::all_of(domain_sizes_.begin(), domain_sizes_.end(),
                     [](std::size_t s) { return s == 2; });
}

bool DiscreteSpace::in_domain(const Structure& x) const noexcept {
  if (x.size() != dims()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] >= domain_sizes_[i]) return false;
  return true;
}

bool DiscreteSpace::is_valid(const Structure& x) const {
  return in_domain(x) && (!validity_ || validity_(x));
}

void DiscreteSpace::require_valid(const Structure& x) const {
  if (!in_domain(x))
    throw PreconditionError("structure '" + x.to_string() + "' is outside the space domains");
  if (validity_ && !validity_(x))
    throw PreconditionError("structure '" + x.to_string() + "' violates constraint '" +
                            constraint_name_ + "'");
}

std::optional<std::uint64_t> DiscreteSpace::product_size() const noexcept {
  std::uint64_t product = 1;
  for (auto size : domain_sizes_) {
    if (product > std::numeric_limits<std::uint64_t>::max() / size) return std::nullopt;
    product *= size;
  }
  return product;
}

double DiscreteSpace::log_product_size() const noexcept {
  double total = 0.0;
  for (auto size : domain_sizes_) total += std::log(static_cast<double>(size));
  return total;
}

double DiscreteSpace::log_cardinality() const noexcept {
  if (valid_count_ && *valid_count_ > 0) return std::log(static_cast<double>(*valid_count_));
  return log_product_size();
}

std::vector<Structure> DiscreteSpace::neighbors(const Structure& x, const Neighborhood& kind) const {
  require_valid(x);
  std::vector<Structure> out;
  Structure y = x;
  if (kind.kind() == Neighborhood::Kind::hamming1) {
    for (std::size_t i = 0; i < dims(); ++i) {
      const auto original = x[i];
      for (std::size_t v = 0; v < domain_sizes_[i]; ++v) {
        if (v == original) continue;
        y[i] = static_cast<Structure::value_type>(v);
        if (!validity_ || validity_(y)) out.push_back(y);
      }
      y[i] = original;
    }
    return out;
  }

  std::vector<std::ptrdiff_t> group_of(dims(), -1);
  for (std::size_t g = 0; g < kind.groups().size(); ++g) {
    for (auto i : kind.groups()[g]) {
      if (i >= dims()) throw PreconditionError("swap neighbourhood: variable index out of range");
      group_of[i] = static_cast<std::ptrdiff_t>(g);
    }
  }
  for (std::size_t i = 0; i < dims(); ++i) {
    if (group_of[i] < 0) continue;
    for (std::size_t j = i + 1; j < dims(); ++j) {
      if (group_of[j] != group_of[i] || x[i] == x[j]) continue;
      if (x[j] >= domain_sizes_[i] || x[i] >= domain_sizes_[j]) continue;
      std::swap(y[i], y[j]);
      if (!validity_ || validity_(y)) out.push_back(y);
      std::swap(y[i], y[j]);
    }
  }
  return out;
}

Structure DiscreteSpace::sample_valid(Rng& rng) const {
  Structure x(dims());
  for (std::size_t attempt = 0; attempt < kRejectionBudget; ++attempt) {
    for (std::size_t i = 0; i < dims(); ++i) {
      std::uniform_int_distribution<std::size_t> pick(0, domain_sizes_[i] - 1);
      x[i] = static_cast<Structure::value_type>(pick(rng));
    }
    if (!validity_ || validity_(x)) return x;
  }
  throw SpaceTooConstrained("space too constrained: no valid structure in " +
                            std::to_string(kRejectionBudget) + " rejection-sampling attempts");
}

void DiscreteSpace::require_enumerable() const {
  const auto product = product_size();
  if (!product || *product > kEnumerationLimit)
    throw SpaceTooLarge("space too large to enumerate: size exceeds 2^24 = " +
                        std::to_string(kEnumerationLimit) + " structures");
}

void DiscreteSpace::for_each_valid(const std::function<void(const Structure&)>& visit) const {
  require_enumerable();
  Structure x(dims());
  while (true) {
    if (!validity_ || validity_(x)) visit(x);
    // Odometer increment, last variable fastest (lexicographic order).
    std::size_t i = dims();
    while (i > 0) {
      --i;
      if (x[i] + std::size_t{1} < domain_sizes_[i]) {
        ++x[i];
        break;
      }
      x[i] = 0;
      if (i == 0) return;
    }
  }
}

std::vector<Structure> DiscreteSpace::enumerate() const {
  std::vector<Structure> out;
  for_each_valid([&out](const Structure& x) { out.push_back(x); });
  return out;
}

}  // namespace l2s
