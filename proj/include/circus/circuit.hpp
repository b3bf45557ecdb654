#pragma once

#include "circus/core.hpp"
#include "circus/vtree.hpp"

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace circus {

using GateIndex = std::size_t;

enum class GateKind : std::uint8_t { const_true, const_false, var, neg, conj, disj };

std::string_view to_string(GateKind k);

struct Gate {
  std::string id;
  GateKind kind = GateKind::const_true;
  VarId var = 0;  // var and neg gates
  std::vector<GateIndex> inputs;
};

/// Boolean circuit in negation normal form with a single output gate.
class Circuit {
 public:
  explicit Circuit(VarUniverse universe);

  GateIndex add_const(std::string id, bool value);
  GateIndex add_var(std::string id, VarId v);
  GateIndex add_var(std::string id, std::string_view name) { return add_var(std::move(id), universe_.at(name)); }
  GateIndex add_neg(std::string id, VarId v);
  GateIndex add_neg(std::string id, std::string_view name) { return add_neg(std::move(id), universe_.at(name)); }
  GateIndex add_and(std::string id, std::vector<GateIndex> inputs = {});
  GateIndex add_or(std::string id, std::vector<GateIndex> inputs = {});
  void set_inputs(GateIndex g, std::vector<GateIndex> inputs);
  void set_output(GateIndex g);

  const VarUniverse& universe() const noexcept { return universe_; }
  std::size_t gate_count() const noexcept { return gates_.size(); }
  std::size_t wire_count() const;
  const Gate& gate(GateIndex i) const { return gates_.at(i); }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  bool has_output() const noexcept { return output_.has_value(); }
  /// Throws invalid_structure when unset.
  GateIndex output() const;

  std::optional<GateIndex> find(std::string_view id) const;
  GateIndex at(std::string_view id) const;

  /// Inputs before the gates that read them. Throws cyclic_graph.
  std::vector<GateIndex> topological_order() const;

 private:
  GateIndex push(Gate g);

  VarUniverse universe_;
  std::vector<Gate> gates_;
  std::unordered_map<std::string, GateIndex> index_;
  std::optional<GateIndex> output_;
};

/// Throws cyclic_graph or invalid_structure.
void validate(const Circuit& c);

bool evaluate_circuit(const Circuit& c, const Assignment& a);

/// Truth table of every gate's sub-circuit over the full universe.
std::vector<Bits> gate_tables(const Circuit& c, std::size_t limit = kDefaultOracleLimit);
TruthTable circuit_table(const Circuit& c, std::size_t limit = kDefaultOracleLimit);

std::vector<Bits> gate_vars(const Circuit& c);

struct CircuitClassReport {
  bool decomposable = false;
  bool decision = false;
  bool smooth = false;
  bool formula = false;
  bool read_once = false;
  // semantic flags, filled in by callers that can afford them
  std::optional<bool> deterministic;
  std::optional<bool> structured;
  std::optional<bool> strongly_deterministic;
  std::optional<bool> sdd;
};

CircuitClassReport classify_syntactic(const Circuit& c);
bool is_decomposable(const Circuit& c);
bool is_smooth(const Circuit& c);

struct StructureResult {
  bool ok = false;
  /// and-gate -> v-tree node.
  std::map<GateIndex, TreeIndex> rho;
  std::optional<GateIndex> witness;
};

/// Lowest admissible v-tree node for every and-gate, either child order.
/// Throws not_decomposable, or leaf_set_mismatch when `t` does not fit.
StructureResult check_structured(const Circuit& c, const VTree& t);

/// Pairwise disjointness of or-gate inputs. Throws universe_too_large.
bool check_deterministic(const Circuit& c, std::size_t limit = kDefaultOracleLimit);

struct StrongDeterminism {
  bool strongly_deterministic = false;
  bool sdd = false;
};

/// Throws not_decomposable, not_structured or universe_too_large.
StrongDeterminism check_strong_det_and_sdd(const Circuit& c, const VTree& t,
                                           std::size_t limit = kDefaultOracleLimit);

/// Pads each or-gate input with tautologies X or not X for the variables it
/// misses.
Circuit smooth_circuit(const Circuit& c);

/// Replaces literals of fixed variables by constants and drops those
/// variables from the universe. Throws unknown_variable.
Circuit condition(const Circuit& c, const std::map<std::string, bool>& partial);

struct CountOptions {
  std::size_t limit = kDefaultOracleLimit;
  /// Skip the determinism check for universes above `limit`.
  bool attest_deterministic = false;
};

struct CountResult {
  BigInt value;
  bool determinism_verified = false;
};

/// Product over and-gates, sum over or-gates. Throws not_decomposable,
/// not_smooth, not_deterministic, or universe_too_large without attestation.
CountResult count_models_smooth_ddnnf(const Circuit& c, const CountOptions& options = {});

}  // namespace circus
