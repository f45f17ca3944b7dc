"""Controlled-English semantic wiki engine.

Build formal knowledge as controlled-English sentences: a lookahead grammar
drives a predictive editor, sentences translate to discourse boxes and on to
description-logic axioms, a tableau reasoner keeps the wiki consistent and
answers controlled-English questions, and the ontology exports as OWL
functional syntax.
"""

from .grammar import CompletionMenu, Grammar, Token, render_tokens, tokenize, verbalize
from .lexicon import (
    LexEntry,
    Lexicon,
    WordCategory,
    add_entry,
    empty_lexicon,
    remove_entry,
    resolve_token,
    set_abbreviation,
    validate_word_form,
)
from .logic import Drs, drs_to_fol, render_fol
from .semantics import (
    ClassQuery,
    IndividualQuery,
    InOwl,
    OutsideOwl,
    build_drs,
    map_to_owl,
    suggest_every,
    translate_question,
)
from .reasoner import check_consistency, classify, is_subsumed, realize, retrieve
from .oracle import finite_model_check
from .stats import CorpusStats, analyze_corpus, classify_complexity
from . import dl, wiki

__version__ = "0.1.0"
