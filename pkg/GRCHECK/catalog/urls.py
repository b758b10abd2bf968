from django.urls import path

from .views import CatalogListView

urlpatterns = [
    # Every entry with its parameter signature and reference
    path("catalog/", CatalogListView.as_view(), name="catalog-list"),
]
