from django.apps import AppConfig


class RealrootsConfig(AppConfig):
    name = "realroots"
    verbose_name = "Certified real roots"
