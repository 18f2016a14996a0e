"""
Django settings for the brenke_lab project.

The project has no web surface: Django provides the app registry, the
management-command CLI, logging configuration and the test runner.

Every knob below can be overridden from the environment or a ``.env`` file
at the project root.
"""

import os
from pathlib import Path

import environ

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Initialize environment variables
env = environ.Env(
    DEBUG=(bool, False),
)

# Read .env file if it exists (override=False so the real environment wins)
environ.Env.read_env(os.path.join(BASE_DIR, ".env"), override=False)

# Only used by Django internals that sign data; nothing here is secret.
SECRET_KEY = env("SECRET_KEY", default="brenke-lab-local-key")

DEBUG = env("DEBUG")

ALLOWED_HOSTS: list = []


# Application definition

INSTALLED_APPS = [
    # Project apps
    "numerics",
    "powerseries",
    "operators",
    "realroots",
    "lpdiag",
    "zetacoeffs",
    "families",
    "cli",
]

# No app stores anything in a database; the gamma cache is a JSON file.
DATABASES: dict = {}

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True


# ============================================================
# BALL ARITHMETIC
# ============================================================

# Working precision of ball arithmetic, doubled on escalation up to the cap.
BRENKE_DEFAULT_BITS = env.int("BRENKE_DEFAULT_BITS", default=128)
BRENKE_MAX_BITS = env.int("BRENKE_MAX_BITS", default=4096)


# ============================================================
# ZETA COEFFICIENTS
# ============================================================

BRENKE_CACHE = env("BRENKE_CACHE", default=str(BASE_DIR / "var" / "gamma_cache.json"))
BRENKE_GAMMA_BITS = env.int("BRENKE_GAMMA_BITS", default=256)
BRENKE_GAMMA_MAX_N = env.int("BRENKE_GAMMA_MAX_N", default=50)

# Quadrature of the Phi moments. Rationals are given as "p/q" strings.
BRENKE_QUADRATURE_CUTOFF = env("BRENKE_QUADRATURE_CUTOFF", default="6")
BRENKE_QUADRATURE_STEP = env("BRENKE_QUADRATURE_STEP", default="1/32")
# 0 means: derive the Taylor order from the requested precision.
BRENKE_QUADRATURE_ORDER = env.int("BRENKE_QUADRATURE_ORDER", default=0)


# ============================================================
# FAMILIES AND REPORTS
# ============================================================

BRENKE_CONVERGENCE_FACTOR = env.float("BRENKE_CONVERGENCE_FACTOR", default=1e-3)
BRENKE_SAMPLE_POINTS = env.int("BRENKE_SAMPLE_POINTS", default=32)
BRENKE_SEGMENT_POINTS = env.int("BRENKE_SEGMENT_POINTS", default=9)
BRENKE_SEED = env.int("BRENKE_SEED", default=20240611)
BRENKE_JOBS = env.int("BRENKE_JOBS", default=1)


# ============================================================
# LOGGING
# ============================================================

BRENKE_LOG_LEVEL = env("BRENKE_LOG_LEVEL", default="INFO")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{asctime} {levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        # stdout carries JSON/CSV output only
        "console": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "verbose",
        },
    },
    "loggers": {
        app: {"handlers": ["console"], "level": BRENKE_LOG_LEVEL, "propagate": False}
        for app in INSTALLED_APPS
    },
}
