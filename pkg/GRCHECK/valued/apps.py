from django.apps import AppConfig


class ValuedConfig(AppConfig):
    name = 'valued'
