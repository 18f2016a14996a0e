from django.apps import AppConfig


class LpdiagConfig(AppConfig):
    name = "lpdiag"
    verbose_name = "Laguerre-Polya diagnostics"
