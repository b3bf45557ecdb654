#pragma once

#include "circus/automata.hpp"
#include "circus/bdd.hpp"
#include "circus/circuit.hpp"
#include "circus/vtree.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace circus {

enum class DocumentKind { nbdd, nnf, vtree, nfa, nfta, tree };

std::string_view to_string(DocumentKind k);

using Payload = std::variant<NBdd, Circuit, VTree, Nfa, Nfta, TreeSkeleton>;

struct Document {
  DocumentKind kind;
  Payload payload;
  std::string source;  // path, or empty for in-memory text
};

// All parsers throw parse_error (message starts with "line N:") on grammar
// violations and forward the module's validation errors otherwise.
NBdd parse_nbdd(std::string_view text);
Circuit parse_nnf(std::string_view text);
VTree parse_vtree(std::string_view text);
Nfa parse_nfa(std::string_view text);
Nfta parse_nfta(std::string_view text);
TreeSkeleton parse_tree(std::string_view text);

/// Kind named by the header line. Throws parse_error.
DocumentKind detect_kind(std::string_view text);
Document parse_document(std::string_view text, std::string source = {});
/// Throws parse_error when the file cannot be read.
Document load_document(const std::string& path);

std::string serialize(const NBdd& d);
std::string serialize(const Circuit& c);
std::string serialize(const VTree& v);
std::string serialize(const Nfa& a);
std::string serialize(const Nfta& a);
std::string serialize(const TreeSkeleton& t);
std::string serialize(const Payload& p);

}  // namespace circus
