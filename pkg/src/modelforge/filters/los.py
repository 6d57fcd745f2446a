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

from dataclasses import dataclass
from typing import Iterable, Sequence

from modelforge.errors import InputError, NotUltrafilterError
from modelforge.filters.filter_on_index import FilterOnIndex
from modelforge.filters.reduced_product import DEFAULT_PRODUCT_BUDGET, ReducedProduct
from modelforge.logic.evaluator import evaluate
from modelforge.logic.formula import Formula
from modelforge.logic.structure import FinStructure
from modelforge.report import CheckReport


@dataclass(frozen=True)
class LosVerdict:
    product_verdict: bool
    factor_verdict: bool
    index: int

    @property
    def agrees(self) -> bool:
        return self.product_verdict == self.factor_verdict


def los_check(factors: Sequence[FinStructure], ultrafilter: FilterOnIndex, sentence: Formula,
        budget: int = DEFAULT_PRODUCT_BUDGET) -> LosVerdict:
    """Evaluates a sentence in the ultraproduct and in the factor M_j the
    ultrafilter is principal at. The two verdicts are expected to agree.

    :param factors: Factors M_i.
    :type factors: Sequence[FinStructure]
    :param ultrafilter: Ultrafilter on the index set.
    :type ultrafilter: FilterOnIndex
    :param sentence: Sentence over the common vocabulary.
    :type sentence: Formula
    :raises NotUltrafilterError: The filter is not an ultrafilter.
    :return: Product verdict, factor verdict and the index j.
    :rtype: LosVerdict
    """
    if not ultrafilter.is_ultrafilter():
        raise NotUltrafilterError("los_check needs an ultrafilter, kernel is %s" % sorted(ultrafilter.kernel))
    if not sentence.is_sentence():
        raise InputError("%s is not a sentence" % sentence)

    j = ultrafilter.ultrafilter_index()
    product = ReducedProduct(factors, ultrafilter, budget)
    quotient = product.materialize()
    return LosVerdict(evaluate(quotient, sentence, {}), evaluate(factors[j], sentence, {}), j)


def los_agreement(factors: Sequence[FinStructure], ultrafilter: FilterOnIndex, sentences: Iterable[Formula],
        budget: int = DEFAULT_PRODUCT_BUDGET) -> CheckReport:
    """Runs los_check over a corpus of sentences and reports the first
    sentence on which the verdicts differ."""
    report = CheckReport("los agreement")
    checked = 0
    disagreement = None
    for sentence in sentences:
        verdict = los_check(factors, ultrafilter, sentence, budget)
        checked += 1
        if not verdict.agrees:
            disagreement = {"sentence": str(sentence), "product": verdict.product_verdict,
                "factor": verdict.factor_verdict, "index": verdict.index}
            break
    report.add("agreement", disagreement is None, disagreement, checked=checked)
    return report
