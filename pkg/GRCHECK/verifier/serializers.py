from rest_framework import serializers


class SamplesSerializer(serializers.Serializer):
    requested = serializers.IntegerField()
    excluded = serializers.IntegerField()
    seed = serializers.IntegerField(allow_null=True)


class ResidualReportSerializer(serializers.Serializer):
    name = serializers.CharField()
    entry = serializers.CharField()
    samples = SamplesSerializer()
    norms = serializers.SerializerMethodField()
    tol = serializers.FloatField()
    worst_point = serializers.ListField(child=serializers.FloatField())

    def get_fields(self):
        # 'pass' is a keyword, so it cannot be declared as a class attribute
        fields = super().get_fields()
        ordered = {}
        for name, value in fields.items():
            ordered[name] = value
            if name == 'tol':
                ordered['pass'] = serializers.BooleanField(source='passed')
        return ordered

    def get_norms(self, report):
        return {label: {'linf': norm.linf, 'rms': norm.rms} for label, norm in report.norms.items()}


class VerificationSerializer(serializers.Serializer):
    version = serializers.IntegerField()
    checks = ResidualReportSerializer(many=True, source='reports')


class DiagnosticSerializer(serializers.Serializer):
    severity = serializers.CharField()
    message = serializers.CharField()
    line = serializers.IntegerField()
    column = serializers.IntegerField()


class VerifyRequestSerializer(serializers.Serializer):
    source = serializers.CharField(trim_whitespace=False)
    tol = serializers.FloatField(required=False)
    points = serializers.IntegerField(required=False, min_value=1)
    seed = serializers.IntegerField(required=False)
    fail_fast = serializers.BooleanField(default=False)

    def validate_tol(self, value):
        if not value > 0:
            raise serializers.ValidationError("tol must be positive.")
        return value


class EvalRequestSerializer(serializers.Serializer):
    expr = serializers.CharField()
    at = serializers.DictField(child=serializers.FloatField(), required=False, default=dict)
