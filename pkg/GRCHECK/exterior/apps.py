from django.apps import AppConfig


class ExteriorConfig(AppConfig):
    name = 'exterior'
