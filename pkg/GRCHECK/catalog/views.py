# catalog/views.py
from rest_framework import generics, permissions

from .models import catalog_list
from .serializers import CatalogEntrySerializer


# LIST (read-only, alphabetical by id)

class CatalogListView(generics.ListAPIView):
    serializer_class = CatalogEntrySerializer
    permission_classes = [permissions.AllowAny]

    def get_queryset(self):
        return catalog_list()
