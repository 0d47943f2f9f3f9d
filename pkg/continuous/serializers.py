"""
Step-function JSON ({"cells": N, "values": [...]}) and the breakpoint CSV of
its autocorrelation.
"""
import csv
import io
import json
from pathlib import Path
from typing import Union

from rest_framework import serializers

from group_core.exceptions import DiffrepError
from extremal_verify.reports import to_json_value

from .services import PiecewiseLinear, StepFunction, as_rational


class RationalField(serializers.Field):
    """Accepts integers or "p/q" strings; floats are refused"""

    def to_internal_value(self, data):
        if isinstance(data, float) or isinstance(data, bool):
            raise serializers.ValidationError("use an integer or a \"p/q\" string, not a float")
        try:
            return as_rational(data)
        except (TypeError, ValueError, ZeroDivisionError):
            raise serializers.ValidationError(f"{data!r} is not a rational")

    def to_representation(self, value):
        return to_json_value(value)


class StepFunctionSerializer(serializers.Serializer):
    cells = serializers.IntegerField(min_value=1)
    values = serializers.ListField(child=RationalField(), allow_empty=False)

    def validate(self, attrs):
        if len(attrs['values']) != attrs['cells']:
            raise serializers.ValidationError(
                f"cells = {attrs['cells']} but {len(attrs['values'])} values given"
            )
        try:
            attrs['function'] = StepFunction(tuple(attrs['values']))
        except DiffrepError as e:
            raise serializers.ValidationError({'values': str(e)})
        return attrs

    def to_representation(self, instance: StepFunction):
        return instance.to_dict()


def parse_step_function(data: dict) -> StepFunction:
    serializer = StepFunctionSerializer(data=data)
    serializer.is_valid(raise_exception=True)
    return serializer.validated_data['function']


def load_step_function(path: Union[str, Path]) -> StepFunction:
    with open(path, encoding='utf-8') as fh:
        return parse_step_function(json.load(fh))


def piecewise_linear_csv(g: PiecewiseLinear) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(['x', 'value'])
    for x, value in g.breakpoints():
        writer.writerow([to_json_value(x), to_json_value(value)])
    return buffer.getvalue()
