from django.apps import AppConfig


class ZetacoeffsConfig(AppConfig):
    name = "zetacoeffs"
    verbose_name = "Riemann xi coefficients"
