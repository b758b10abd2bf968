from django.apps import AppConfig


class CatalogConfig(AppConfig):
    name = 'catalog'

    def ready(self):
        # registers every entry
        from . import entries  # noqa: F401
