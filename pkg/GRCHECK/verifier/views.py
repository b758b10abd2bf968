# verifier/views.py
from rest_framework import permissions, status
from rest_framework.response import Response
from rest_framework.views import APIView

from core.exceptions import GRCheckError
from dsl.binder import evaluate_expression, load_text
from dsl.models import SpecError

from .models import RunConfig, run
from .serializers import DiagnosticSerializer, EvalRequestSerializer, VerificationSerializer, VerifyRequestSerializer


def error_response(exc):
    if isinstance(exc, SpecError):
        body = {'diagnostics': DiagnosticSerializer(exc.diagnostics, many=True).data}
    else:
        body = {'detail': str(exc)}
    return Response(body, status=status.HTTP_400_BAD_REQUEST)


# VERIFY a spec document sent as text

class VerifyView(APIView):
    permission_classes = [permissions.AllowAny]

    def post(self, request):
        serializer = VerifyRequestSerializer(data=request.data)
        if not serializer.is_valid():
            return Response(serializer.errors, status=status.HTTP_400_BAD_REQUEST)
        data = serializer.validated_data
        try:
            config = RunConfig(
                tol=data.get('tol'), points=data.get('points'), seed=data.get('seed'), fail_fast=data['fail_fast'],
            )
            result = run(load_text(data['source']), config)
        except GRCheckError as exc:
            return error_response(exc)
        return Response(VerificationSerializer(result).data, status=status.HTTP_200_OK)


# EVAL one expression at a point

class EvalView(APIView):
    permission_classes = [permissions.AllowAny]

    def post(self, request):
        serializer = EvalRequestSerializer(data=request.data)
        if not serializer.is_valid():
            return Response(serializer.errors, status=status.HTTP_400_BAD_REQUEST)
        expr, at = serializer.validated_data['expr'], serializer.validated_data['at']
        try:
            value = evaluate_expression(expr, at)
        except GRCheckError as exc:
            return error_response(exc)
        return Response({'expr': expr, 'real': value.real, 'imag': value.imag}, status=status.HTTP_200_OK)
