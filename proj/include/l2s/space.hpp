#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace l2s {

using Rng = std::mt19937_64;

/// A complete assignment: values[i] indexes into the candidate set of variable i.
class Structure {
 public:
  using value_type = std::uint8_t;

  Structure() = default;
  explicit Structure(std::size_t dims, value_type fill = 0) : values_(dims, fill) {}
  Structure(std::initializer_list<value_type> values) : values_(values) {}
  explicit Structure(std::vector<value_type> values) : values_(std::move(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  value_type operator[](std::size_t i) const noexcept { return values_[i]; }
  value_type& operator[](std::size_t i) noexcept { return values_[i]; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }
  const std::vector<value_type>& values() const noexcept { return values_; }

  /// Number of positions holding `value`.
  std::size_t count(value_type value) const noexcept;
  std::size_t hamming_distance(const Structure& other) const;

  /// Dash-joined indices, e.g. "0-1-0".
  std::string to_string() const;
  static Structure parse(const std::string& text);

  friend bool operator==(const Structure&, const Structure&) = default;
  friend auto operator<=>(const Structure&, const Structure&) = default;

 private:
  std::vector<value_type> values_;
};

struct StructureHash {
  std::size_t operator()(const Structure& x) const noexcept;
};

/// Move set used by local search.
///
/// hamming1 changes one variable to any other value of its domain. swap exchanges
/// the values of two variables from the same group, so per-value counts inside
/// each group are preserved (cardinality-constrained spaces have no valid
/// Hamming-1 moves).
class Neighborhood {
 public:
  enum class Kind { hamming1, swap };

  static Neighborhood hamming1() { return Neighborhood(Kind::hamming1, {}); }
  static Neighborhood swap(std::vector<std::vector<std::size_t>> groups) {
    return Neighborhood(Kind::swap, std::move(groups));
  }
  /// Swap moves among all `dims` variables.
  static Neighborhood swap_all(std::size_t dims);

  Kind kind() const noexcept { return kind_; }
  const std::vector<std::vector<std::size_t>>& groups() const noexcept { return groups_; }
  std::string name() const { return kind_ == Kind::hamming1 ? "hamming1" : "swap"; }

 private:
  Neighborhood(Kind kind, std::vector<std::vector<std::size_t>> groups)
      : kind_(kind), groups_(std::move(groups)) {}

  Kind kind_;
  std::vector<std::vector<std::size_t>> groups_;
};

using ValidityPredicate = std::function<bool(const Structure&)>;

/// Variable domains plus an opaque validity predicate. Immutable after construction.
class DiscreteSpace {
 public:
  static constexpr std::size_t kRejectionBudget = 10'000;
  static constexpr std::uint64_t kEnumerationLimit = std::uint64_t{1} << 24;
  /// Spaces at most this large have their valid count computed at construction.
  static constexpr std::uint64_t kCountingLimit = std::uint64_t{1} << 16;

  explicit DiscreteSpace(std::vector<std::size_t> domain_sizes, ValidityPredicate validity = {},
                         std::string constraint_name = "none");

  static DiscreteSpace binary(std::size_t dims, ValidityPredicate validity = {},
                              std::string constraint_name = "none");

  std::size_t dims() const noexcept { return domain_sizes_.size(); }
  std::size_t domain_size(std::size_t i) const { return domain_sizes_.at(i); }
  const std::vector<std::size_t>& domain_sizes() const noexcept { return domain_sizes_; }
  bool is_binary() const noexcept;
  bool constrained() const noexcept { return static_cast<bool>(validity_); }
  const std::string& constraint_name() const noexcept { return constraint_name_; }

  /// Length and range check only.
  bool in_domain(const Structure& x) const noexcept;
  /// In domain and accepted by the validity predicate.
  bool is_valid(const Structure& x) const;
  /// Throws PreconditionError unless is_valid(x).
  void require_valid(const Structure& x) const;

  /// Product of domain sizes, absent on overflow.
  std::optional<std::uint64_t> product_size() const noexcept;
  double log_product_size() const noexcept;
  /// Exact number of valid structures when the space is small enough to count cheaply.
  std::optional<std::uint64_t> valid_count() const noexcept { return valid_count_; }
  /// log |X|: exact valid count when known, else the unconstrained product.
  double log_cardinality() const noexcept;

  /// All valid neighbours of a valid x, ordered by variable index, then domain index.
  /// For swap moves the order is by the pair (i, j), i < j, ascending.
  std::vector<Structure> neighbors(const Structure& x, const Neighborhood& kind) const;

  /// Uniform valid structure by rejection sampling.
  Structure sample_valid(Rng& rng) const;

  /// Every valid structure in lexicographic order. Throws SpaceTooLarge beyond 2^24.
  std::vector<Structure> enumerate() const;
  /// Visits valid structures in lexicographic order without materialising them.
  void for_each_valid(const std::function<void(const Structure&)>& visit) const;

 private:
  void require_enumerable() const;

  std::vector<std::size_t> domain_sizes_;
  ValidityPredicate validity_;
  std::string constraint_name_;
  std::optional<std::uint64_t> valid_count_;
};

}  // namespace l2s
