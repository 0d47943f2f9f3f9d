"""
Serializers for the JSON set file:
    {"group": {"kind": "cyclic", "order": 101}, "elements": [1, 2, 3]}
"""
import json
from pathlib import Path
from typing import Union

from rest_framework import serializers

from .exceptions import DiffrepError
from .services import CYCLIC, GROUP_KINDS, INTEGER_WINDOW, GroupSpec, GSet


class GroupSpecSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=GROUP_KINDS)
    order = serializers.IntegerField(min_value=1, required=False)
    halfwidth = serializers.IntegerField(min_value=1, required=False)
    orders = serializers.ListField(child=serializers.IntegerField(min_value=2), required=False)

    def validate(self, attrs):
        kind = attrs['kind']
        try:
            if kind == CYCLIC:
                group = GroupSpec.cyclic(attrs['order'])
            elif kind == INTEGER_WINDOW:
                group = GroupSpec.integer_window(attrs['halfwidth'])
            else:
                group = GroupSpec.product(*attrs['orders'])
        except KeyError as missing:
            raise serializers.ValidationError(f"{kind} group needs field {missing}")
        except DiffrepError as e:
            raise serializers.ValidationError(str(e))
        attrs['spec'] = group
        return attrs

    def to_representation(self, instance: GroupSpec):
        return instance.to_dict()


class GSetFileSerializer(serializers.Serializer):
    group = GroupSpecSerializer()
    elements = serializers.ListField(child=serializers.JSONField(), allow_empty=True)

    def validate(self, attrs):
        group = attrs['group']['spec']
        try:
            attrs['gset'] = GSet.from_elements(
                group, [tuple(e) if isinstance(e, list) else e for e in attrs['elements']]
            )
        except (ValueError, TypeError) as e:
            raise serializers.ValidationError({'elements': str(e)})
        return attrs

    def to_representation(self, instance: GSet):
        return instance.to_dict()


def parse_gset(data: dict) -> GSet:
    serializer = GSetFileSerializer(data=data)
    serializer.is_valid(raise_exception=True)
    return serializer.validated_data['gset']


def load_gset(path: Union[str, Path]) -> GSet:
    with open(path, encoding='utf-8') as fh:
        return parse_gset(json.load(fh))


def dump_gset(A: GSet) -> dict:
    return GSetFileSerializer(A).data
