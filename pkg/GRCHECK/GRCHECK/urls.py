from django.urls import include, path

urlpatterns = [
    # catalog listing + verification / evaluation endpoints
    path('api/', include('catalog.urls')),
    path('api/', include('verifier.urls')),
]
