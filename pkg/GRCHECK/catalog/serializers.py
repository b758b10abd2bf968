from rest_framework import serializers


class ParameterSerializer(serializers.Serializer):
    name = serializers.CharField()
    kind = serializers.CharField()
    required = serializers.BooleanField()
    default = serializers.SerializerMethodField()

    def get_default(self, parameter):
        return None if parameter.required else parameter.default


class CatalogEntrySerializer(serializers.Serializer):
    id = serializers.CharField()
    signature = serializers.CharField()
    reference = serializers.CharField()
    parameters = ParameterSerializer(many=True)
