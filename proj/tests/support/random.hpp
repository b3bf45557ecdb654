#pragma once

#include "circus/automata.hpp"
#include "circus/bdd.hpp"
#include "circus/circuit.hpp"
#include "circus/vtree.hpp"

#include <random>
#include <string>
#include <vector>

namespace circus::testing {

using Rng = std::mt19937_64;

enum class Ambiguity { nondeterministic, unambiguous, deterministic };
enum class Shape { any, free, ordered };

struct DiagramParams {
  std::size_t vars = 4;
  std::size_t nodes = 8;
  Ambiguity ambiguity = Ambiguity::nondeterministic;
  Shape shape = Shape::any;
};

/// Valid standard-semantics diagram in the requested class. Unambiguous
/// requests may fall back to a deterministic diagram with extra edges into a
/// false sink, which keeps at most one accepting run.
NBdd random_diagram(Rng& rng, const DiagramParams& p);

/// Diagram with or-nodes mixed in among the test nodes.
NBdd random_or_diagram(Rng& rng, std::size_t vars, std::size_t nodes);

/// Decision forest; variables may repeat along a branch.
NBdd random_decision_tree(Rng& rng, std::size_t vars, std::size_t depth, bool nondeterministic);

/// Complete deterministic free diagram.
NBdd random_complete_fbdd(Rng& rng, std::size_t vars, std::size_t nodes);

/// Decomposable circuit; decision-shaped or-gates when `deterministic`.
Circuit random_dnnf(Rng& rng, std::size_t vars, std::size_t depth, bool deterministic);

Nfa random_nfa(Rng& rng, std::size_t states, double density, bool deterministic);
Nfta random_nfta(Rng& rng, std::size_t states, double density, bool deterministic);

/// Every full binary skeleton with at most `max_nodes` nodes.
std::vector<TreeSkeleton> all_skeletons(std::size_t max_nodes);

/// All words of length n over {0,1} as letter strings.
std::vector<std::vector<std::string>> binary_words(std::size_t n);

/// Exact ambiguity decision independent of the product construction: closes
/// the set of per-state run counts (capped at 2) reachable over all inputs.
bool ambiguous_by_counts(const Nfa& a);
bool ambiguous_by_counts(const Nfta& a);

/// Path of a file under tests/fixtures.
std::string fixture(const std::string& name);

std::string read_file(const std::string& path);

}  // namespace circus::testing
