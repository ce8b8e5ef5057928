"""Small shared utilities for the test suite."""

# Registry filled by test_acceptance.py; one entry per criterion, rendered
# as a summary block by the hook in conftest.py.
ACCEPTANCE_RESULTS = {}


def record_criterion(number, description, passed, detail=""):
    ACCEPTANCE_RESULTS[number] = (description, passed, detail)


def draw_spectral(rng, n):
    """Random additive spectral parameters in the standard comparison box."""
    re = rng.uniform(0.1, 0.9, n)
    im = rng.uniform(-0.05, 0.05, n)
    return [complex(a, b) for a, b in zip(re, im)]


def draw_multiplicative(rng, n, lo=0.5, hi=1.5):
    re = rng.uniform(lo, hi, n)
    im = rng.uniform(-0.1, 0.1, n)
    return [complex(a, b) for a, b in zip(re, im)]


def rel_diff(a, b):
    denom = max(abs(a), abs(b))
    if denom == 0.0:
        return 0.0
    return abs(a - b) / denom
