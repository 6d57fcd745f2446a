#*------------------------------------------------------------------------------*
#* MODELFORGE -                                                                 *
#*                                                                              *
#* A finite-model-theory workbench: reduced products, coherent families,        *
#* Delta-embeddings and Ehrenfeucht-Fraisse games on finite structures.         *
#* Copyright (C) 2026  MODELFORGE developers                                    *
#*                                                                              *
#* This program is free software: you can redistribute it and/or modify         *
#* it under the terms of the GNU General Public License as published by         *
#* the Free Software Foundation, either version 3 of the License, or            *
#* (at your option) any later version.                                          *
#*                                                                              *
#* This program is distributed in the hope that it will be useful,              *
#* but WITHOUT ANY WARRANTY; without even the implied warranty of               *
#* MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the                *
#* GNU General Public License for more details.                                 *
#*                                                                              *
#* You should have received a copy of the GNU General Public License            *
#* along with this program.  If not, see <https://www.gnu.org/licenses/>.       *
#*                                                                              *
#*------------------------------------------------------------------------------*

from functools import lru_cache
from typing import List

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import LarkError, UnexpectedInput, VisitError

from modelforge.errors import FormulaSyntaxError, VocabularyError
from modelforge.logic.formula import And, Atom, Equals, Exists, Forall, Formula, Not, Or, BOTTOM, TOP
from modelforge.logic.vocabulary import Vocabulary

# Quantified subformulas close to the right as late as possible: the
# shift/reduce conflict between a quantifier body and a trailing "&" or
# "|" is resolved by shifting, which is the LALR default.
FORMULA_GRAMMAR = r"""
    start: formula

    ?formula: disjunction

    ?disjunction: conjunction
        | conjunction ("|" conjunction)+         -> disjunction_list

    ?conjunction: unary
        | unary ("&" unary)+                     -> conjunction_list

    ?unary: "!" unary                            -> negation
        | "exists" VAR "." formula               -> existential
        | "forall" VAR "." formula               -> universal
        | primary

    ?primary: NAME "(" VAR ("," VAR)* ")"        -> atom
        | VAR "=" VAR                            -> equality
        | "true"                                 -> top
        | "false"                                -> bottom
        | "&" "(" formula ")"                    -> single_conjunction
        | "|" "(" formula ")"                    -> single_disjunction
        | "(" formula ")"

    VAR.2: /x[0-9]+(?![A-Za-z0-9_])/
    NAME: /[A-Za-z_][A-Za-z0-9_]*/

    %import common.WS
    %ignore WS
"""


@lru_cache(maxsize=1)
def _lark_parser() -> Lark:
    return Lark(FORMULA_GRAMMAR, parser="lalr", start="start")


def _variable_index(token: Token) -> int:
    return int(str(token)[1:])


@v_args(inline=True)
class FormulaBuilder(Transformer):
    """Turns the lark parse tree into Formula values and checks every
    atom against the vocabulary."""

    def __init__(self, vocabulary: Vocabulary) -> None:
        super().__init__()
        self.vocabulary = vocabulary

    def start(self, formula: Formula) -> Formula:
        return formula

    def disjunction_list(self, *parts: Formula) -> Formula:
        return Or(tuple(parts))

    def conjunction_list(self, *parts: Formula) -> Formula:
        return And(tuple(parts))

    def single_conjunction(self, part: Formula) -> Formula:
        return And((part,))

    def single_disjunction(self, part: Formula) -> Formula:
        return Or((part,))

    def negation(self, body: Formula) -> Formula:
        return Not(body)

    def existential(self, var: Token, body: Formula) -> Formula:
        return Exists(_variable_index(var), body)

    def universal(self, var: Token, body: Formula) -> Formula:
        return Forall(_variable_index(var), body)

    def atom(self, name: Token, *args: Token) -> Formula:
        symbol = str(name)
        if symbol not in self.vocabulary:
            raise VocabularyError("unknown symbol '%s' at position %d" % (symbol, name.start_pos))
        arity = self.vocabulary.arity(symbol)
        if arity != len(args):
            raise VocabularyError("symbol '%s' has arity %d but is applied to %d variables at position %d"
                % (symbol, arity, len(args), name.start_pos))
        return Atom(symbol, tuple(_variable_index(arg) for arg in args))

    def equality(self, left: Token, right: Token) -> Formula:
        return Equals(_variable_index(left), _variable_index(right))

    def top(self) -> Formula:
        return TOP

    def bottom(self) -> Formula:
        return BOTTOM


def parse_formula(text: str, vocabulary: Vocabulary) -> Formula:
    """Parses formula text over a vocabulary.

    :param text: Formula in the ASCII syntax, e.g. "forall x0. exists x1. R(x0,x1)".
    :type text: str
    :param vocabulary: Vocabulary the atoms are checked against.
    :type vocabulary: Vocabulary
    :raises FormulaSyntaxError: Text does not conform to the grammar.
    :raises VocabularyError: Unknown symbol or arity mismatch.
    :return: The formula.
    :rtype: Formula
    """
    try:
        tree = _lark_parser().parse(text)
    except UnexpectedInput as error:
        position = getattr(error, "pos_in_stream", None)
        if position is None or position < 0:
            position = len(text)
        raise FormulaSyntaxError("unexpected input", position) from error
    except LarkError as error:
        raise FormulaSyntaxError(str(error), len(text)) from error

    try:
        return FormulaBuilder(vocabulary).transform(tree)
    except VisitError as error:
        raise error.orig_exc from error


def parse_formulas(texts: List[str], vocabulary: Vocabulary) -> List[Formula]:
    return [parse_formula(text, vocabulary) for text in texts]
