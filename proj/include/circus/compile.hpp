#pragma once

#include "circus/automata.hpp"
#include "circus/bdd.hpp"
#include "circus/circuit.hpp"
#include "circus/vtree.hpp"

#include <optional>

namespace circus {

struct PreservationReport {
  struct Input {
    bool free = false;
    bool ordered = false;
    std::optional<bool> unambiguous;
    bool deterministic = false;
    bool tree = false;
    bool complete = false;
  } input;
  /// Circuit properties guaranteed by the input flags.
  struct Claims {
    bool decomposable = false;
    bool structured = false;
    bool deterministic = false;
    bool decision = false;
    bool formula = false;
    bool smooth = false;
  } claims;
};

struct CompiledDiagram {
  Circuit circuit;
  /// Right-linear v-tree along the witness order, for ordered inputs.
  std::optional<VTree> vtree;
  PreservationReport report;
};

/// Each node on X becomes (X and g1) or (not X and g0), where g_b joins the
/// translations of the b-successors. Several sources are joined by one or-gate.
/// Throws invalid_structure on or-nodes, semantics_mismatch on zero-suppressed
/// input.
CompiledDiagram bdd_to_circuit(const NBdd& d, std::size_t limit = kDefaultOracleLimit);

/// Variable names used for word positions 1..n.
std::vector<std::string> position_variables(std::size_t n);

/// Complete ordered diagram over X1..Xn accepting exactly the words of
/// length n the automaton accepts. Throws invalid_alphabet unless the
/// alphabet is {0,1}.
NBdd nfa_provenance(const Nfa& a, std::size_t n);

struct TreeProvenance {
  Circuit circuit;
  VTree vtree;
  /// States dropped by trimming the automaton first.
  std::size_t trimmed_states = 0;
};

/// Smooth structured DNNF over the skeleton's node ids, true exactly on the
/// labelings the automaton accepts; structured by leaf_push(t).
TreeProvenance nfta_provenance(const Nfta& a, const TreeSkeleton& t);

}  // namespace circus
