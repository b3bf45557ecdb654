#include "circus/core.hpp"

#include <algorithm>
#include <cctype>

namespace circus {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::universe_too_large: return "universe-too-large";
    case Errc::universe_mismatch: return "universe-mismatch";
    case Errc::unknown_variable: return "unknown-variable";
    case Errc::invalid_variable: return "invalid-variable";
    case Errc::duplicate_variable: return "duplicate-variable";
    case Errc::duplicate_id: return "duplicate-id";
    case Errc::unknown_id: return "unknown-id";
    case Errc::cyclic_graph: return "cyclic-graph";
    case Errc::missing_branch: return "missing-branch";
    case Errc::sink_with_out_edge: return "sink-with-out-edge";
    case Errc::stray_epsilon: return "stray-epsilon";
    case Errc::invalid_structure: return "invalid-structure";
    case Errc::mode_precondition_violated: return "mode-precondition-violated";
    case Errc::not_complete: return "not-complete";
    case Errc::not_free: return "not-free";
    case Errc::not_deterministic: return "not-deterministic";
    case Errc::not_decomposable: return "not-decomposable";
    case Errc::not_smooth: return "not-smooth";
    case Errc::not_structured: return "not-structured";
    case Errc::not_a_forest: return "not-a-forest";
    case Errc::semantics_mismatch: return "semantics-flag-mismatch";
    case Errc::unknown_letter: return "unknown-letter";
    case Errc::invalid_alphabet: return "invalid-alphabet";
    case Errc::empty_order: return "empty-order";
    case Errc::not_full_binary: return "not-full-binary";
    case Errc::leaf_set_mismatch: return "leaf-set-mismatch";
    case Errc::parse_error: return "parse-error";
  }
  return "unknown-error";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

bool is_valid_variable_name(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](unsigned char c) {
    return std::isalnum(c) != 0 || c == '_';
  });
}

VarUniverse::VarUniverse(std::vector<std::string> names) {
  for (auto& n : names) add(std::move(n));
}

std::optional<VarId> VarUniverse::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VarId VarUniverse::at(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw Error(Errc::unknown_variable, std::string(name));
}

VarId VarUniverse::add(std::string name) {
  if (!is_valid_variable_name(name)) throw Error(Errc::invalid_variable, "'" + name + "'");
  if (index_.count(name) != 0) throw Error(Errc::duplicate_variable, name);
  VarId id = names_.size();
  index_.emplace(name, id);
  names_.push_back(std::move(name));
  return id;
}

bool VarUniverse::same_set(const VarUniverse& other) const {
  if (size() != other.size()) return false;
  return std::all_of(names_.begin(), names_.end(),
                     [&](const std::string& n) { return other.contains(n); });
}

Assignment Assignment::from_row(std::size_t size, std::uint64_t row) {
  Assignment a(size);
  for (std::size_t v = 0; v < size; ++v) a.values_[v] = (row >> (size - 1 - v)) & 1U;
  return a;
}

Assignment Assignment::from_map(const VarUniverse& u, const std::map<std::string, bool>& values) {
  Assignment a(u.size());
  for (const auto& [name, value] : values) a.set(u.at(name), value);
  return a;
}

std::uint64_t Assignment::row() const {
  std::uint64_t r = 0;
  for (auto v : values_) r = (r << 1) | v;
  return r;
}

TruthTable::TruthTable(VarUniverse universe, Bits bits)
    : universe_(std::move(universe)), bits_(std::move(bits)) {
  if (bits_.size() != (std::size_t{1} << universe_.size()))
    throw Error(Errc::invalid_structure, "truth table length does not match universe");
}

TruthTable TruthTable::reindexed(const VarUniverse& order) const {
  if (!universe_.same_set(order)) throw Error(Errc::universe_mismatch, "cannot reindex");
  const std::size_t n = order.size();
  std::vector<VarId> to_mine(n);
  for (VarId v = 0; v < n; ++v) to_mine[v] = universe_.at(order.name(v));
  Bits out(bits_.size());
  for (std::uint64_t row = 0; row < bits_.size(); ++row) {
    std::uint64_t mine = 0;
    for (VarId v = 0; v < n; ++v) {
      if ((row >> (n - 1 - v)) & 1U) mine |= std::uint64_t{1} << (n - 1 - to_mine[v]);
    }
    out[row] = bits_[mine];
  }
  return TruthTable(order, std::move(out));
}

void require_within_limit(const VarUniverse& u, std::size_t limit) {
  if (u.size() > limit || u.size() >= 63) {
    throw Error(Errc::universe_too_large,
                std::to_string(u.size()) + " variables exceed the limit of " + std::to_string(limit));
  }
}

void for_each_assignment(const VarUniverse& u, const std::function<void(const Assignment&)>& visit,
                         std::size_t limit) {
  require_within_limit(u, limit);
  const std::uint64_t rows = std::uint64_t{1} << u.size();
  for (std::uint64_t row = 0; row < rows; ++row) visit(Assignment::from_row(u.size(), row));
}

std::vector<Assignment> enumerate_assignments(const VarUniverse& u, std::size_t limit) {
  std::vector<Assignment> out;
  for_each_assignment(u, [&](const Assignment& a) { out.push_back(a); }, limit);
  return out;
}

TruthTable oracle_table(const std::function<bool(const Assignment&)>& eval, const VarUniverse& u,
                        std::size_t limit) {
  require_within_limit(u, limit);
  Bits bits(std::size_t{1} << u.size());
  for_each_assignment(u, [&](const Assignment& a) { bits[a.row()] = eval(a); }, limit);
  return TruthTable(u, std::move(bits));
}

bool oracle_equivalent(const TruthTable& a, const TruthTable& b) {
  if (!a.universe().same_set(b.universe())) {
    throw Error(Errc::universe_mismatch, "truth tables range over different variables");
  }
  if (a.universe() == b.universe()) return a.bits() == b.bits();
  return a.bits() == b.reindexed(a.universe()).bits();
}

BigInt oracle_count(const TruthTable& t) { return BigInt(t.bits().count()); }

Bits projection_bits(std::size_t n, VarId v) {
  Bits out(std::size_t{1} << n);
  const std::size_t shift = n - 1 - v;
  for (std::size_t row = 0; row < out.size(); ++row) out[row] = (row >> shift) & 1U;
  return out;
}

BigInt pow2(std::size_t k) {
  BigInt r = 1;
  r <<= k;
  return r;
}

std::string to_string(const BigInt& value) { return value.str(); }

}  // namespace circus
