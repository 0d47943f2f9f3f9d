from rest_framework import serializers

from .reports import RELATIONS, VERDICT_CHOICES, CheckReport


class CheckReportSerializer(serializers.Serializer):
    """CheckReport as JSON; exact values are integers or "p/q" strings"""
    name = serializers.CharField()
    hypotheses_met = serializers.BooleanField()
    lhs = serializers.JSONField(allow_null=True)
    rhs = serializers.JSONField(allow_null=True)
    relation = serializers.ChoiceField(choices=list(RELATIONS))
    witness = serializers.JSONField(allow_null=True)
    verdict = serializers.ChoiceField(choices=VERDICT_CHOICES)
    details = serializers.JSONField()
    instance = serializers.JSONField(allow_null=True)

    def to_representation(self, instance):
        data = instance.to_dict() if isinstance(instance, CheckReport) else dict(instance)
        # subclasses such as FanReport carry extra top-level fields
        return {**data, **super().to_representation(data)}
