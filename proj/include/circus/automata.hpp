#pragma once

#include "circus/core.hpp"
#include "circus/vtree.hpp"

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace circus {

using StateIndex = std::size_t;
using LetterIndex = std::size_t;

/// Indexed set of named states shared by both automaton kinds.
class StateSet {
 public:
  StateIndex add(std::string id);
  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(StateIndex q) const { return names_.at(q); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<StateIndex> find(std::string_view id) const;
  /// Throws unknown_id.
  StateIndex at(std::string_view id) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, StateIndex> index_;
};

struct NfaTransition {
  StateIndex from;
  LetterIndex letter;
  StateIndex to;
  friend auto operator<=>(const NfaTransition&, const NfaTransition&) = default;
};

/// Nondeterministic word automaton over a finite alphabet of string letters.
class Nfa {
 public:
  /// Throws invalid_alphabet on an empty or repeated letter.
  explicit Nfa(std::vector<std::string> alphabet);

  StateIndex add_state(std::string id);
  void set_initial(StateIndex q, bool on = true);
  void set_final(StateIndex q, bool on = true);
  /// Returns false for a duplicate.
  bool add_transition(StateIndex from, LetterIndex letter, StateIndex to);
  bool add_transition(std::string_view from, std::string_view letter, std::string_view to);

  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  std::optional<LetterIndex> find_letter(std::string_view letter) const;
  /// Throws unknown_letter.
  LetterIndex letter(std::string_view letter) const;
  const StateSet& states() const noexcept { return states_; }
  std::size_t state_count() const noexcept { return states_.size(); }
  bool is_initial(StateIndex q) const { return initial_.at(q) != 0; }
  bool is_final(StateIndex q) const { return final_.at(q) != 0; }
  std::vector<StateIndex> initial_states() const;
  std::vector<StateIndex> final_states() const;
  const std::vector<NfaTransition>& transitions() const noexcept { return transitions_; }
  /// |alphabet| + |states| + |transitions|.
  std::size_t size() const noexcept { return alphabet_.size() + states_.size() + transitions_.size(); }

 private:
  std::vector<std::string> alphabet_;
  std::unordered_map<std::string, LetterIndex> letter_index_;
  StateSet states_;
  std::vector<std::uint8_t> initial_;
  std::vector<std::uint8_t> final_;
  std::vector<NfaTransition> transitions_;
  std::map<NfaTransition, std::size_t> transition_set_;
};

using Word = std::vector<LetterIndex>;

/// Letters of `tokens` looked up in the alphabet. Throws unknown_letter.
Word to_word(const Nfa& a, const std::vector<std::string>& tokens);

bool nfa_accepts(const Nfa& a, const Word& w);
bool nfa_accepts(const Nfa& a, const std::vector<std::string>& w);

/// Number of accepting runs on `w`, by dynamic programming over positions.
BigInt nfa_count_runs(const Nfa& a, const Word& w);
/// Number of runs on `w` from an initial state that end in `q`.
BigInt nfa_count_runs_to(const Nfa& a, const Word& w, StateIndex q);

/// Keeps the states that are both accessible and co-accessible.
Nfa nfa_trim(const Nfa& a);

/// Adds one non-accepting sink receiving every missing (state, letter).
Nfa nfa_complete(const Nfa& a);

struct AutomatonClassReport {
  bool deterministic = false;
  bool unambiguous = false;
};

/// Unambiguity through the trimmed self-product.
AutomatonClassReport nfa_classify(const Nfa& a);

struct Binarization {
  Nfa automaton;
  /// Letters in code order.
  std::vector<std::string> letters;
  std::size_t width = 1;
  std::map<std::string, std::string> codes;
};

/// Reads each letter as its fixed-width big-endian code over {0,1}.
Binarization binarize_alphabet(const Nfa& a);

/// Bit word for `w` under the encoding. Throws unknown_letter.
std::vector<std::string> encode_word(const Binarization& b, const std::vector<std::string>& w);

struct NftaTransition {
  StateIndex left;
  StateIndex right;
  bool letter;
  StateIndex to;
  friend auto operator<=>(const NftaTransition&, const NftaTransition&) = default;
};

struct NftaInit {
  bool letter;
  StateIndex to;
  friend auto operator<=>(const NftaInit&, const NftaInit&) = default;
};

/// Bottom-up automaton over binary trees labeled with 0 and 1.
class Nfta {
 public:
  StateIndex add_state(std::string id);
  void set_final(StateIndex q, bool on = true);
  bool add_init(bool letter, StateIndex q);
  bool add_transition(StateIndex left, StateIndex right, bool letter, StateIndex to);

  const StateSet& states() const noexcept { return states_; }
  std::size_t state_count() const noexcept { return states_.size(); }
  bool is_final(StateIndex q) const { return final_.at(q) != 0; }
  std::vector<StateIndex> final_states() const;
  const std::vector<NftaInit>& inits() const noexcept { return inits_; }
  const std::vector<NftaTransition>& transitions() const noexcept { return transitions_; }
  /// |alphabet| + |states| + |transitions| + |init|.
  std::size_t size() const noexcept { return 2 + states_.size() + transitions_.size() + inits_.size(); }

 private:
  StateSet states_;
  std::vector<std::uint8_t> final_;
  std::vector<NftaInit> inits_;
  std::vector<NftaTransition> transitions_;
  std::map<NftaInit, std::size_t> init_set_;
  std::map<NftaTransition, std::size_t> transition_set_;
};

/// Skeleton plus a 0/1 label per node.
struct SigmaTree {
  TreeSkeleton skeleton;
  std::vector<std::uint8_t> labels;  // by TreeIndex
};

bool nfta_accepts(const Nfta& a, const SigmaTree& t);
BigInt nfta_count_runs(const Nfta& a, const SigmaTree& t);
/// Runs on `t` whose root state is `q`.
BigInt nfta_count_runs_to(const Nfta& a, const SigmaTree& t, StateIndex q);

/// Keeps the states that are buildable and co-reachable from a final state
/// through contexts whose sibling is buildable.
Nfta nfta_trim(const Nfta& a);

AutomatonClassReport nfta_classify(const Nfta& a);

}  // namespace circus
