from django.conf import settings

# Fallbacks when a key is absent from settings.GRCHECK
DEFAULTS = {
    'DEFAULT_TOL': 1e-9,
    'DEFAULT_POINTS': 1000,
    'DEFAULT_SEED': 7,
    'WORKERS': 1,
    'SPEC_DIR': None,
    'SINGULAR_DIVISOR': 1e-300,
    'DEGENERACY_THRESHOLD': 1e-12,
    'IDEMPOTENCE_TOL': 1e-10,
}


def grcheck_settings(name):
    """Return a verifier tunable from settings.GRCHECK, falling back to DEFAULTS."""
    if name not in DEFAULTS:
        raise KeyError(f"Unknown GRCHECK setting: {name}")
    configured = getattr(settings, 'GRCHECK', {})
    return configured.get(name, DEFAULTS[name])
