from django.apps import AppConfig


class PowerseriesConfig(AppConfig):
    name = "powerseries"
    verbose_name = "Normalized power series"
