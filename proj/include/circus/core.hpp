#pragma once

#include <boost/dynamic_bitset.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace circus {

using BigInt = boost::multiprecision::cpp_int;
using Bits = boost::dynamic_bitset<std::uint64_t>;
using VarId = std::size_t;

/// Exhaustive checks refuse universes larger than this unless told otherwise.
inline constexpr std::size_t kDefaultOracleLimit = 20;

enum class Errc {
  universe_too_large,
  universe_mismatch,
  unknown_variable,
  invalid_variable,
  duplicate_variable,
  duplicate_id,
  unknown_id,
  cyclic_graph,
  missing_branch,
  sink_with_out_edge,
  stray_epsilon,
  invalid_structure,
  mode_precondition_violated,
  not_complete,
  not_free,
  not_deterministic,
  not_decomposable,
  not_smooth,
  not_structured,
  not_a_forest,
  semantics_mismatch,
  unknown_letter,
  invalid_alphabet,
  empty_order,
  not_full_binary,
  leaf_set_mismatch,
  parse_error,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// True iff `name` is a nonempty run of letters, digits and underscores.
bool is_valid_variable_name(std::string_view name);

/// Ordered set of variable names. Order is used for display, for truth-table
/// indexing and for tie-breaking; it carries no semantics.
class VarUniverse {
 public:
  VarUniverse() = default;
  explicit VarUniverse(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(VarId v) const { return names_.at(v); }

  std::optional<VarId> find(std::string_view name) const;
  /// Throws unknown_variable.
  VarId at(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name).has_value(); }

  /// Throws duplicate_variable / invalid_variable.
  VarId add(std::string name);

  /// Same variable set, regardless of order.
  bool same_set(const VarUniverse& other) const;

  friend bool operator==(const VarUniverse& a, const VarUniverse& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VarId> index_;
};

/// Total assignment over a universe, stored positionally.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::size_t size) : values_(size, 0) {}
  explicit Assignment(std::vector<std::uint8_t> values) : values_(std::move(values)) {}

  /// Row `row` of the binary counter over `size` variables; variable 0 is the
  /// most significant bit.
  static Assignment from_row(std::size_t size, std::uint64_t row);
  /// Missing variables default to 0; unknown names throw unknown_variable.
  static Assignment from_map(const VarUniverse& u, const std::map<std::string, bool>& values);

  std::size_t size() const noexcept { return values_.size(); }
  bool operator[](VarId v) const { return values_[v] != 0; }
  void set(VarId v, bool value) { values_.at(v) = value ? 1 : 0; }
  std::uint64_t row() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::uint8_t> values_;
};

/// Exhaustive table of a Boolean function; bit i is the value on
/// Assignment::from_row(n, i).
class TruthTable {
 public:
  TruthTable(VarUniverse universe, Bits bits);

  const VarUniverse& universe() const noexcept { return universe_; }
  const Bits& bits() const noexcept { return bits_; }
  std::size_t rows() const noexcept { return bits_.size(); }
  bool operator[](std::uint64_t row) const { return bits_[row]; }

  /// Same function expressed over `order` (a permutation of the universe).
  TruthTable reindexed(const VarUniverse& order) const;

 private:
  VarUniverse universe_;
  Bits bits_;
};

/// Throws universe_too_large when |u| > limit.
void require_within_limit(const VarUniverse& u, std::size_t limit);

/// Calls `visit` on every assignment in binary-counter order.
void for_each_assignment(const VarUniverse& u, const std::function<void(const Assignment&)>& visit,
                         std::size_t limit = kDefaultOracleLimit);

std::vector<Assignment> enumerate_assignments(const VarUniverse& u,
                                              std::size_t limit = kDefaultOracleLimit);

TruthTable oracle_table(const std::function<bool(const Assignment&)>& eval, const VarUniverse& u,
                        std::size_t limit = kDefaultOracleLimit);

/// Throws universe_mismatch when the variable sets differ.
bool oracle_equivalent(const TruthTable& a, const TruthTable& b);

BigInt oracle_count(const TruthTable& t);

/// Mask of rows where variable v is 1, over |universe| = n variables.
Bits projection_bits(std::size_t n, VarId v);

/// 2^k as an exact integer.
BigInt pow2(std::size_t k);

std::string to_string(const BigInt& value);

}  // namespace circus
