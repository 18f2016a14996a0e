from django.apps import AppConfig


class NumericsConfig(AppConfig):
    name = "numerics"
    verbose_name = "Exact and ball coefficient arithmetic"
