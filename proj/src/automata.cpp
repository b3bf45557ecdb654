#include "circus/automata.hpp"
#include "id_pool.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace circus {

StateIndex StateSet::add(std::string id) {
  if (id.empty()) throw Error(Errc::invalid_structure, "empty state name");
  if (index_.count(id) != 0) throw Error(Errc::duplicate_id, id);
  StateIndex q = names_.size();
  index_.emplace(id, q);
  names_.push_back(std::move(id));
  return q;
}

std::optional<StateIndex> StateSet::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

StateIndex StateSet::at(std::string_view id) const {
  if (auto q = find(id)) return *q;
  throw Error(Errc::unknown_id, "state '" + std::string(id) + "'");
}

// ---------------------------------------------------------------- words

Nfa::Nfa(std::vector<std::string> alphabet) : alphabet_(std::move(alphabet)) {
  if (alphabet_.empty()) throw Error(Errc::invalid_alphabet, "alphabet is empty");
  for (LetterIndex i = 0; i < alphabet_.size(); ++i) {
    if (alphabet_[i].empty()) throw Error(Errc::invalid_alphabet, "empty letter");
    if (!letter_index_.emplace(alphabet_[i], i).second)
      throw Error(Errc::invalid_alphabet, "letter '" + alphabet_[i] + "' repeated");
  }
}

StateIndex Nfa::add_state(std::string id) {
  StateIndex q = states_.add(std::move(id));
  initial_.push_back(0);
  final_.push_back(0);
  return q;
}

void Nfa::set_initial(StateIndex q, bool on) { initial_.at(q) = on ? 1 : 0; }
void Nfa::set_final(StateIndex q, bool on) { final_.at(q) = on ? 1 : 0; }

bool Nfa::add_transition(StateIndex from, LetterIndex letter, StateIndex to) {
  if (from >= states_.size() || to >= states_.size()) throw Error(Errc::unknown_id, "transition state out of range");
  if (letter >= alphabet_.size()) throw Error(Errc::unknown_letter, "letter index out of range");
  NfaTransition t{from, letter, to};
  if (!transition_set_.emplace(t, transitions_.size()).second) return false;
  transitions_.push_back(t);
  return true;
}

bool Nfa::add_transition(std::string_view from, std::string_view letter, std::string_view to) {
  return add_transition(states_.at(from), this->letter(letter), states_.at(to));
}

std::optional<LetterIndex> Nfa::find_letter(std::string_view letter) const {
  auto it = letter_index_.find(std::string(letter));
  if (it == letter_index_.end()) return std::nullopt;
  return it->second;
}

LetterIndex Nfa::letter(std::string_view letter) const {
  if (auto l = find_letter(letter)) return *l;
  throw Error(Errc::unknown_letter, "'" + std::string(letter) + "'");
}

std::vector<StateIndex> Nfa::initial_states() const {
  std::vector<StateIndex> out;
  for (StateIndex q = 0; q < initial_.size(); ++q)
    if (initial_[q]) out.push_back(q);
  return out;
}

std::vector<StateIndex> Nfa::final_states() const {
  std::vector<StateIndex> out;
  for (StateIndex q = 0; q < final_.size(); ++q)
    if (final_[q]) out.push_back(q);
  return out;
}

Word to_word(const Nfa& a, const std::vector<std::string>& tokens) {
  Word w;
  w.reserve(tokens.size());
  for (const auto& t : tokens) w.push_back(a.letter(t));
  return w;
}

namespace {

std::vector<std::vector<NfaTransition>> by_source(const Nfa& a) {
  std::vector<std::vector<NfaTransition>> out(a.state_count());
  for (const auto& t : a.transitions()) out[t.from].push_back(t);
  return out;
}

std::vector<BigInt> runs_per_state(const Nfa& a, const Word& w) {
  std::vector<BigInt> cur(a.state_count());
  for (StateIndex q : a.initial_states()) cur[q] = 1;
  for (LetterIndex l : w) {
    if (l >= a.alphabet().size()) throw Error(Errc::unknown_letter, "letter index out of range");
    std::vector<BigInt> next(a.state_count());
    for (const auto& t : a.transitions())
      if (t.letter == l) next[t.to] += cur[t.from];
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

bool nfa_accepts(const Nfa& a, const Word& w) {
  std::vector<std::uint8_t> cur(a.state_count(), 0);
  for (StateIndex q : a.initial_states()) cur[q] = 1;
  for (LetterIndex l : w) {
    if (l >= a.alphabet().size()) throw Error(Errc::unknown_letter, "letter index out of range");
    std::vector<std::uint8_t> next(a.state_count(), 0);
    for (const auto& t : a.transitions())
      if (t.letter == l && cur[t.from]) next[t.to] = 1;
    cur = std::move(next);
  }
  for (StateIndex q = 0; q < cur.size(); ++q)
    if (cur[q] && a.is_final(q)) return true;
  return false;
}

bool nfa_accepts(const Nfa& a, const std::vector<std::string>& w) { return nfa_accepts(a, to_word(a, w)); }

BigInt nfa_count_runs(const Nfa& a, const Word& w) {
  auto per_state = runs_per_state(a, w);
  BigInt total = 0;
  for (StateIndex q : a.final_states()) total += per_state[q];
  return total;
}

BigInt nfa_count_runs_to(const Nfa& a, const Word& w, StateIndex q) { return runs_per_state(a, w).at(q); }

namespace {

std::vector<std::uint8_t> accessible(const Nfa& a) {
  std::vector<std::uint8_t> seen(a.state_count(), 0);
  auto out = by_source(a);
  std::deque<StateIndex> work;
  for (StateIndex q : a.initial_states()) {
    seen[q] = 1;
    work.push_back(q);
  }
  while (!work.empty()) {
    StateIndex q = work.front();
    work.pop_front();
    for (const auto& t : out[q])
      if (!seen[t.to]) {
        seen[t.to] = 1;
        work.push_back(t.to);
      }
  }
  return seen;
}

std::vector<std::uint8_t> co_accessible(const Nfa& a) {
  std::vector<std::uint8_t> seen(a.state_count(), 0);
  std::vector<std::vector<StateIndex>> in(a.state_count());
  for (const auto& t : a.transitions()) in[t.to].push_back(t.from);
  std::deque<StateIndex> work;
  for (StateIndex q : a.final_states()) {
    seen[q] = 1;
    work.push_back(q);
  }
  while (!work.empty()) {
    StateIndex q = work.front();
    work.pop_front();
    for (StateIndex p : in[q])
      if (!seen[p]) {
        seen[p] = 1;
        work.push_back(p);
      }
  }
  return seen;
}

Nfa restrict_states(const Nfa& a, const std::vector<std::uint8_t>& keep) {
  Nfa out(a.alphabet());
  std::vector<std::optional<StateIndex>> map(a.state_count());
  for (StateIndex q = 0; q < a.state_count(); ++q) {
    if (!keep[q]) continue;
    map[q] = out.add_state(a.states().name(q));
    out.set_initial(*map[q], a.is_initial(q));
    out.set_final(*map[q], a.is_final(q));
  }
  for (const auto& t : a.transitions())
    if (map[t.from] && map[t.to]) out.add_transition(*map[t.from], t.letter, *map[t.to]);
  return out;
}

}  // namespace

Nfa nfa_trim(const Nfa& a) {
  auto fwd = accessible(a);
  auto bwd = co_accessible(a);
  for (StateIndex q = 0; q < fwd.size(); ++q) fwd[q] = fwd[q] && bwd[q];
  return restrict_states(a, fwd);
}

Nfa nfa_complete(const Nfa& a) {
  const std::size_t k = a.alphabet().size();
  std::vector<std::uint8_t> has(a.state_count() * k, 0);
  for (const auto& t : a.transitions()) has[t.from * k + t.letter] = 1;
  if (std::all_of(has.begin(), has.end(), [](std::uint8_t h) { return h != 0; })) return a;
  Nfa out = restrict_states(a, std::vector<std::uint8_t>(a.state_count(), 1));
  detail::IdPool ids;
  for (const auto& n : a.states().names()) ids.reserve(n);
  StateIndex sink = out.add_state(ids.fresh("sink"));
  for (StateIndex q = 0; q < a.state_count(); ++q)
    for (LetterIndex l = 0; l < k; ++l)
      if (!has[q * k + l]) out.add_transition(q, l, sink);
  for (LetterIndex l = 0; l < k; ++l) out.add_transition(sink, l, sink);
  return out;
}

AutomatonClassReport nfa_classify(const Nfa& a) {
  AutomatonClassReport r;
  {
    std::set<std::pair<StateIndex, LetterIndex>> seen;
    bool functional = true;
    for (const auto& t : a.transitions())
      if (!seen.emplace(t.from, t.letter).second) functional = false;
    r.deterministic = functional && a.initial_states().size() == 1;
  }
  const Nfa t = nfa_trim(a);
  const std::size_t n = t.state_count();
  auto pair = [n](StateIndex p, StateIndex q) { return p * n + q; };
  // letter-synchronised pair transitions
  std::vector<std::vector<std::size_t>> succ(n * n), pred(n * n);
  auto out = by_source(t);
  for (StateIndex p = 0; p < n; ++p)
    for (StateIndex q = 0; q < n; ++q)
      for (const auto& tp : out[p])
        for (const auto& tq : out[q])
          if (tp.letter == tq.letter) {
            succ[pair(p, q)].push_back(pair(tp.to, tq.to));
            pred[pair(tp.to, tq.to)].push_back(pair(p, q));
          }
  auto closure = [&](std::vector<std::size_t> start, const std::vector<std::vector<std::size_t>>& edges) {
    std::vector<std::uint8_t> seen(n * n, 0);
    for (auto s : start) seen[s] = 1;
    while (!start.empty()) {
      auto x = start.back();
      start.pop_back();
      for (auto y : edges[x])
        if (!seen[y]) {
          seen[y] = 1;
          start.push_back(y);
        }
    }
    return seen;
  };
  std::vector<std::size_t> init, fin;
  for (StateIndex p : t.initial_states())
    for (StateIndex q : t.initial_states()) init.push_back(pair(p, q));
  for (StateIndex p : t.final_states())
    for (StateIndex q : t.final_states()) fin.push_back(pair(p, q));
  auto reach = closure(init, succ);
  auto coreach = closure(fin, pred);
  r.unambiguous = true;
  for (StateIndex p = 0; p < n; ++p)
    for (StateIndex q = 0; q < n; ++q)
      if (p != q && reach[pair(p, q)] && coreach[pair(p, q)]) r.unambiguous = false;
  return r;
}

Binarization binarize_alphabet(const Nfa& a) {
  std::vector<std::string> letters = a.alphabet();
  std::sort(letters.begin(), letters.end());
  std::size_t width = 1;
  while ((std::size_t{1} << width) < letters.size()) ++width;
  std::map<std::string, std::string> codes;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    std::string code(width, '0');
    for (std::size_t b = 0; b < width; ++b)
      if ((i >> (width - 1 - b)) & 1U) code[b] = '1';
    codes.emplace(letters[i], code);
  }
  Nfa out(std::vector<std::string>{"0", "1"});
  detail::IdPool ids;
  for (const auto& n : a.states().names()) ids.reserve(n);
  for (StateIndex q = 0; q < a.state_count(); ++q) {
    out.add_state(a.states().name(q));
    out.set_initial(q, a.is_initial(q));
    out.set_final(q, a.is_final(q));
  }
  // one intermediate state per (source state, proper code prefix)
  std::map<std::pair<StateIndex, std::string>, StateIndex> middle;
  for (const auto& t : a.transitions()) {
    const std::string& code = codes.at(a.alphabet()[t.letter]);
    StateIndex at = t.from;
    for (std::size_t b = 0; b + 1 < width; ++b) {
      auto key = std::make_pair(t.from, code.substr(0, b + 1));
      auto it = middle.find(key);
      if (it == middle.end())
        it = middle.emplace(key, out.add_state(ids.fresh(a.states().name(t.from) + "_" + key.second))).first;
      out.add_transition(at, code[b] == '1' ? 1 : 0, it->second);
      at = it->second;
    }
    out.add_transition(at, code.back() == '1' ? 1 : 0, t.to);
  }
  return {std::move(out), std::move(letters), width, std::move(codes)};
}

std::vector<std::string> encode_word(const Binarization& b, const std::vector<std::string>& w) {
  std::vector<std::string> bits;
  for (const auto& letter : w) {
    auto it = b.codes.find(letter);
    if (it == b.codes.end()) throw Error(Errc::unknown_letter, "'" + letter + "'");
    for (char c : it->second) bits.emplace_back(1, c);
  }
  return bits;
}

// ---------------------------------------------------------------- trees

StateIndex Nfta::add_state(std::string id) {
  StateIndex q = states_.add(std::move(id));
  final_.push_back(0);
  return q;
}

void Nfta::set_final(StateIndex q, bool on) { final_.at(q) = on ? 1 : 0; }

bool Nfta::add_init(bool letter, StateIndex q) {
  if (q >= states_.size()) throw Error(Errc::unknown_id, "init state out of range");
  NftaInit i{letter, q};
  if (!init_set_.emplace(i, inits_.size()).second) return false;
  inits_.push_back(i);
  return true;
}

bool Nfta::add_transition(StateIndex left, StateIndex right, bool letter, StateIndex to) {
  const std::size_t n = states_.size();
  if (left >= n || right >= n || to >= n) throw Error(Errc::unknown_id, "transition state out of range");
  NftaTransition t{left, right, letter, to};
  if (!transition_set_.emplace(t, transitions_.size()).second) return false;
  transitions_.push_back(t);
  return true;
}

std::vector<StateIndex> Nfta::final_states() const {
  std::vector<StateIndex> out;
  for (StateIndex q = 0; q < final_.size(); ++q)
    if (final_[q]) out.push_back(q);
  return out;
}

namespace {

std::vector<std::vector<BigInt>> tree_runs(const Nfta& a, const SigmaTree& t) {
  if (t.labels.size() != t.skeleton.size()) throw Error(Errc::invalid_structure, "tree labeling is not total");
  std::vector<std::vector<BigInt>> runs(t.skeleton.size());
  for (TreeIndex i : t.skeleton.postorder()) {
    auto& here = runs[i];
    here.assign(a.state_count(), 0);
    const bool label = t.labels[i] != 0;
    if (t.skeleton.is_leaf(i)) {
      for (const auto& init : a.inits())
        if (init.letter == label) here[init.to] += 1;
      continue;
    }
    const auto& l = runs[t.skeleton.left(i)];
    const auto& r = runs[t.skeleton.right(i)];
    for (const auto& tr : a.transitions())
      if (tr.letter == label) here[tr.to] += l[tr.left] * r[tr.right];
  }
  return runs;
}

}  // namespace

bool nfta_accepts(const Nfta& a, const SigmaTree& t) {
  if (t.labels.size() != t.skeleton.size()) throw Error(Errc::invalid_structure, "tree labeling is not total");
  std::vector<std::vector<std::uint8_t>> reach(t.skeleton.size());
  for (TreeIndex i : t.skeleton.postorder()) {
    auto& here = reach[i];
    here.assign(a.state_count(), 0);
    const bool label = t.labels[i] != 0;
    if (t.skeleton.is_leaf(i)) {
      for (const auto& init : a.inits())
        if (init.letter == label) here[init.to] = 1;
      continue;
    }
    const auto& l = reach[t.skeleton.left(i)];
    const auto& r = reach[t.skeleton.right(i)];
    for (const auto& tr : a.transitions())
      if (tr.letter == label && l[tr.left] && r[tr.right]) here[tr.to] = 1;
  }
  const auto& root = reach[t.skeleton.root()];
  for (StateIndex q : a.final_states())
    if (root[q]) return true;
  return false;
}

BigInt nfta_count_runs(const Nfta& a, const SigmaTree& t) {
  auto runs = tree_runs(a, t);
  BigInt total = 0;
  for (StateIndex q : a.final_states()) total += runs[t.skeleton.root()][q];
  return total;
}

BigInt nfta_count_runs_to(const Nfta& a, const SigmaTree& t, StateIndex q) {
  return tree_runs(a, t)[t.skeleton.root()].at(q);
}

namespace {

std::vector<std::uint8_t> buildable(const Nfta& a) {
  std::vector<std::uint8_t> b(a.state_count(), 0);
  for (const auto& i : a.inits()) b[i.to] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& t : a.transitions())
      if (b[t.left] && b[t.right] && !b[t.to]) b[t.to] = 1, changed = true;
  }
  return b;
}

}  // namespace

Nfta nfta_trim(const Nfta& a) {
  auto build = buildable(a);
  std::vector<std::uint8_t> useful(a.state_count(), 0);
  for (StateIndex q : a.final_states())
    if (build[q]) useful[q] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& t : a.transitions()) {
      if (!useful[t.to] || !build[t.left] || !build[t.right]) continue;
      for (StateIndex c : {t.left, t.right})
        if (!useful[c]) useful[c] = 1, changed = true;
    }
  }
  Nfta out;
  std::vector<std::optional<StateIndex>> map(a.state_count());
  for (StateIndex q = 0; q < a.state_count(); ++q) {
    if (!useful[q]) continue;
    map[q] = out.add_state(a.states().name(q));
    out.set_final(*map[q], a.is_final(q));
  }
  for (const auto& i : a.inits())
    if (map[i.to]) out.add_init(i.letter, *map[i.to]);
  for (const auto& t : a.transitions())
    if (map[t.left] && map[t.right] && map[t.to]) out.add_transition(*map[t.left], *map[t.right], t.letter, *map[t.to]);
  return out;
}

AutomatonClassReport nfta_classify(const Nfta& a) {
  AutomatonClassReport r;
  {
    std::set<bool> init_letters;
    std::set<std::tuple<StateIndex, StateIndex, bool>> keys;
    bool functional = true;
    for (const auto& i : a.inits())
      if (!init_letters.insert(i.letter).second) functional = false;
    for (const auto& t : a.transitions())
      if (!keys.emplace(t.left, t.right, t.letter).second) functional = false;
    r.deterministic = functional;
  }
  const Nfta t = nfta_trim(a);
  const std::size_t n = t.state_count();
  auto pair = [n](StateIndex p, StateIndex q) { return p * n + q; };
  std::vector<std::uint8_t> build(n * n, 0);
  for (const auto& i : t.inits())
    for (const auto& j : t.inits())
      if (i.letter == j.letter) build[pair(i.to, j.to)] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& x : t.transitions())
      for (const auto& y : t.transitions()) {
        if (x.letter != y.letter || build[pair(x.to, y.to)]) continue;
        if (build[pair(x.left, y.left)] && build[pair(x.right, y.right)]) build[pair(x.to, y.to)] = 1, changed = true;
      }
  }
  std::vector<std::uint8_t> useful(n * n, 0);
  for (StateIndex p : t.final_states())
    for (StateIndex q : t.final_states())
      if (build[pair(p, q)]) useful[pair(p, q)] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& x : t.transitions())
      for (const auto& y : t.transitions()) {
        if (x.letter != y.letter || !useful[pair(x.to, y.to)]) continue;
        auto l = pair(x.left, y.left), rr = pair(x.right, y.right);
        if (!build[l] || !build[rr]) continue;
        for (auto c : {l, rr})
          if (!useful[c]) useful[c] = 1, changed = true;
      }
  }
  r.unambiguous = true;
  for (StateIndex p = 0; p < n; ++p)
    for (StateIndex q = 0; q < n; ++q)
      if (p != q && useful[pair(p, q)]) r.unambiguous = false;
  return r;
}

}  // namespace circus
