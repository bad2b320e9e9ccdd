"""Python access to the MIXMAX generator and its analysis tools."""

import json

from ._mixmax import (
    Generator,
    MixmaxError,
    Modulus,
    OperatorSpec,
    brute_force_period,
    char_poly_mod,
    det_mod,
    q_of,
    run_cli,
)
from . import _mixmax

MERSENNE_61 = 2305843009213693951


def spectrum(spec):
    return json.loads(_mixmax.spectrum_json(spec))


def entropy(spec):
    return spectrum(spec)["entropy"]["entropy"]


def certify(spec, modulus):
    return json.loads(_mixmax.certify_json(spec, modulus))


def stats(draws, bins=1000, grid=32, max_lag=64):
    return json.loads(_mixmax.stats_json(list(draws), bins, grid, max_lag))


__all__ = [
    "Generator",
    "MERSENNE_61",
    "MixmaxError",
    "Modulus",
    "OperatorSpec",
    "brute_force_period",
    "certify",
    "char_poly_mod",
    "det_mod",
    "entropy",
    "q_of",
    "run_cli",
    "spectrum",
    "stats",
]
