"""
Re-run a dumped instance: {"check": name, "params": {...}}.

Parameters are decoded generically: set dicts go through the set-file
serializer, step-function dicts become StepFunctions and "p/q" strings
become Fractions.
"""
import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, Union

from group_core.exceptions import DiffrepError
from group_core.serializers import parse_gset
from constructions.services import measure0_check, measure0_witness, sidon_check
from continuous.services import (StepFunction, autocorrelation_checks, omega_k_report,
                                 theorem_fan_check)
from energy_tcount.services import verify_id_ax

from . import services, sweeps
from .reports import CheckReport

logger = logging.getLogger(__name__)

CHECKS: Dict[str, Callable[..., CheckReport]] = {
    'intopt': services.verify_intopt,
    'convexity': services.convexity_check,
    'majorization': services.majorization_check,
    'chain': services.check_basic_chain,
    'energy-commutation': services.energy_commutation_check,
    'energy-mu': services.energy_mu_bound_check,
    'cauchy-davenport': services.cauchy_davenport_check,
    'closed-form': services.interval_closed_form_check,
    'corollary': services.corollary_check,
    'dense-bound': services.dense_bound_check,
    'modp': services.theorem_modp_check,
    'intverd': services.theorem_intverD_check,
    'intverl': services.theorem_intverL_check,
    'extd': services.theorem_extD_check,
    'arbg': services.theorem_arbG_check,
    'tightness': services.tightness_check,
    'id-ax': verify_id_ax,
    'sidon': sidon_check,
    'measure0': lambda epsilon: measure0_check(measure0_witness(epsilon)),
    'fan': theorem_fan_check,
    'omega-k': omega_k_report,
    'autocorrelation': autocorrelation_checks,
    **sweeps.SWEEPS,
}


def decode_param(value: Any) -> Any:
    if isinstance(value, dict):
        if 'group' in value:
            return parse_gset(value)
        if 'cells' in value and 'values' in value:
            return StepFunction(tuple(value['values']))
        return {k: decode_param(v) for k, v in value.items()}
    if isinstance(value, list):
        return [decode_param(v) for v in value]
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError:
            return value
    return value


def replay(instance: dict) -> CheckReport:
    try:
        name = instance['check']
        params = instance.get('params', {})
    except (KeyError, TypeError, AttributeError):
        raise DiffrepError("instance must look like {\"check\": ..., \"params\": {...}}")
    check = CHECKS.get(name)
    if check is None:
        raise DiffrepError(f"unknown check {name!r}")

    logger.info(f"replaying {name} with {sorted(params)}")
    return check(**{key: decode_param(value) for key, value in params.items()})


def load_instance(path: Union[str, Path]) -> dict:
    with open(path, encoding='utf-8') as fh:
        return json.load(fh)
