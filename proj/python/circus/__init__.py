"""Knowledge compilation toolkit: decision diagrams, NNF circuits, v-trees, automata."""

from ._core import (
    DEFAULT_ORACLE_LIMIT,
    Circuit,
    Error,
    NBdd,
    Nfa,
    Nfta,
    TreeSkeleton,
    VTree,
    bdd_to_circuit,
    detect_kind,
    nfa_provenance,
    nfta_provenance,
    parse_nbdd,
    parse_nfa,
    parse_nfta,
    parse_nnf,
    parse_tree,
    parse_vtree,
    run_cli,
)

_PARSERS = {
    "nbdd": parse_nbdd,
    "nnf": parse_nnf,
    "vtree": parse_vtree,
    "nfa": parse_nfa,
    "nfta": parse_nfta,
    "tree": parse_tree,
}


def parse(text):
    """Parse any supported document, dispatching on its header."""
    return _PARSERS[detect_kind(text)](text)


def load(path):
    with open(path, encoding="utf-8") as f:
        return parse(f.read())


__all__ = [name for name in dir() if not name.startswith("_")]
