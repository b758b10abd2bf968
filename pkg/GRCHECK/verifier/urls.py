from django.urls import path

from .views import EvalView, VerifyView

urlpatterns = [
    path("verify/", VerifyView.as_view(), name="verify"),
    path("eval/", EvalView.as_view(), name="eval"),
]
