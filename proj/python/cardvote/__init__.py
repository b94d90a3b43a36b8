"""Exact evaluation of randomized cardinal voting schemes.

Profiles are lists of voters, each a list of utilities in [0, 1]. Utilities
may be given as Fraction, int or "p/q" strings; results come back as Fraction.
"""

from fractions import Fraction
import json

from . import _cardvote
from ._cardvote import CardvoteError

__all__ = [
    "CardvoteError",
    "evaluate",
    "ratio",
    "welfares",
    "sample",
    "verify",
    "gen_negative",
    "gen_dk",
    "gen_cyclic",
    "discretize",
    "g_value",
    "gbar_value",
    "lower_bound_formula",
    "run_cli",
]


def _cell(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or a 'p/q' string")
    return str(x)


def _rows(profile):
    return [[_cell(x) for x in voter] for voter in profile]


def _fractions(xs):
    return [Fraction(x) for x in xs]


def _profile(rows):
    return [_fractions(r) for r in rows]


def evaluate(spec, profile, relaxed=False):
    """Exact winning probability of each candidate under mechanism `spec`."""
    return _fractions(_cardvote.evaluate(spec, _rows(profile), relaxed))


def ratio(spec, profile, relaxed=False):
    return Fraction(_cardvote.ratio(spec, _rows(profile), relaxed))


def welfares(profile, relaxed=False):
    return _fractions(_cardvote.welfares(_rows(profile), relaxed))


def sample(spec, profile, seed, draws=1):
    """Seeded draws of the winning candidate (1-based)."""
    return _cardvote.sample(spec, _rows(profile), seed, draws)


def verify(prop, spec, m, n, k, tie_free=False, budget=50_000_000):
    """Exhaustive property check; returns the report as a dict."""
    return json.loads(_cardvote.verify(prop, spec, m, n, k, tie_free, budget))


def gen_negative(m, repeat=1):
    return _profile(_cardvote.gen_negative(m, repeat))


def gen_dk(m, k, a, b, c, seed=0):
    return _profile(_cardvote.gen_dk(m, k, a, b, c, seed))


def gen_cyclic(m, star, eps):
    return _profile(_cardvote.gen_cyclic(m, star, _cell(Fraction(eps))))


def discretize(profile, k):
    return _profile(_cardvote.discretize(_rows(profile), k))


def g_value(profile):
    return Fraction(_cardvote.g_value(_rows(profile)))


def gbar_value(profile):
    return Fraction(_cardvote.gbar_value(_rows(profile)))


def lower_bound_formula(a, b, c, n, m):
    return Fraction(_cardvote.lower_bound_formula(a, b, c, n, m))


def run_cli(args):
    """Runs the command-line tool in-process: (exit code, stdout, stderr)."""
    return _cardvote.run_cli(list(args))
