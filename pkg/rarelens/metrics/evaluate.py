"""
One-call evaluation of a prediction batch
"""

import logging

from ..errors import UndefinedMetricError
from ..models import EvalReport, PredictionBatch
from .sera import DEFAULT_STEP, EXACT, ser_curve, sera
from .standard import mae, mse
from .utility import UtilityContext, f_score, precision_u, recall_u


log = logging.getLogger(__name__)


def evaluate_batch(batch: PredictionBatch, ctx: UtilityContext, scheme: str = EXACT,
                   step: float = DEFAULT_STEP, with_curve: bool = False) -> EvalReport:
    """
    MSE, MAE, SERA and utility-based precision, recall and F1.

    An undefined precision or recall is reported as None and named in
    the report's `undefined` list; F1 is then None as well.
    """
    phi = ctx.relevance(batch.y_true)
    report = EvalReport(
        mse=mse(batch),
        mae=mae(batch),
        sera=sera(batch, phi, scheme=scheme, step=step),
    )

    for side, metric in (('precision', precision_u), ('recall', recall_u)):
        try:
            setattr(report, side, metric(batch, ctx))
        except UndefinedMetricError as e:
            log.debug("%s", e)
            report.undefined.append(side)

    if report.precision is not None and report.recall is not None:
        report.f1 = f_score(report.precision, report.recall, ctx.beta)

    if with_curve:
        report.ser_curve = ser_curve(batch, phi).to_list()

    return report
