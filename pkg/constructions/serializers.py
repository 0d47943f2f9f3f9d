from rest_framework import serializers

from group_core.serializers import GSetFileSerializer

from .services import Measure0Witness


class Measure0WitnessSerializer(serializers.Serializer):
    """Everything needed to rebuild the witness: epsilon, n, the Sidon base and the multiplier"""
    epsilon = serializers.CharField(read_only=True)
    n = serializers.IntegerField(read_only=True)
    base = serializers.ListField(child=serializers.IntegerField(), read_only=True)
    multiplier = serializers.IntegerField(read_only=True)
    size = serializers.IntegerField(read_only=True)
    difference_size = serializers.IntegerField(read_only=True)
    threshold_count = serializers.IntegerField(read_only=True)
    bound = serializers.CharField(read_only=True)
    invariants = serializers.DictField(child=serializers.BooleanField(), read_only=True)
    set = GSetFileSerializer(read_only=True)

    def to_representation(self, instance: Measure0Witness):
        return instance.to_dict()
