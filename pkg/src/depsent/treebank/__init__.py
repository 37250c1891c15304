from .conll import DepTree, Token, Treebank, parse_conll, read_conll, write_conll, write_conll_file

__all__ = [
    "DepTree",
    "Token",
    "Treebank",
    "parse_conll",
    "read_conll",
    "write_conll",
    "write_conll_file",
]
