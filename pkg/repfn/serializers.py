"""
RepTable export: JSON through DRF, CSV with columns element,count.
"""
import csv
import io

from rest_framework import serializers

from .services import RepTable


class RepCountSerializer(serializers.Serializer):
    element = serializers.JSONField()
    count = serializers.IntegerField(min_value=1)


class RepTableSerializer(serializers.Serializer):
    group = serializers.DictField(read_only=True)
    set_size = serializers.IntegerField(read_only=True)
    total = serializers.IntegerField(read_only=True)
    counts = RepCountSerializer(many=True, read_only=True)

    def to_representation(self, instance: RepTable):
        decode = instance.group.decode
        return {
            'group': instance.group.to_dict(),
            'set_size': instance.size,
            'total': instance.total(),
            'counts': [
                {'element': list(decode(d)) if isinstance(decode(d), tuple) else d, 'count': c}
                for d, c in instance.items()
            ],
        }


def rep_table_csv(table: RepTable) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(['element', 'count'])
    for d, c in table.items():
        decoded = table.group.decode(d)
        writer.writerow([' '.join(map(str, decoded)) if isinstance(decoded, tuple) else decoded, c])
    return buffer.getvalue()
