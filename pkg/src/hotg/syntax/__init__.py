"""Concrete syntax: lexer, parser, desugaring to kernel terms and printing."""

from .desugar import Desugarer, Local, Scope, desugar, desugar_type
from .lexer import Token, tokenize
from .parser import Parser, parse_article, parse_script, parse_term, parse_type
from .printer import print_term, print_type, term_to_surface, type_to_surface
from .surface import format_article, format_decl, format_step, format_term, format_type

__all__ = [
    "Desugarer", "Local", "Scope", "desugar", "desugar_type", "Token", "tokenize", "Parser",
    "parse_article", "parse_script", "parse_term", "parse_type", "print_term", "print_type",
    "term_to_surface", "type_to_surface", "format_article", "format_decl", "format_step",
    "format_term", "format_type",
]
