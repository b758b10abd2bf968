from django.apps import AppConfig


class DiffopsConfig(AppConfig):
    name = 'diffops'
