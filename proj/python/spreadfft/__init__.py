"""Spread option pricing by two-dimensional FFT with a Monte Carlo cross-check."""

import csv
import io
import json

from ._spreadfft import SpreadFftError, compare_csv, payoff_hat, price_json, select_step, sweep_csv

__all__ = ["SpreadFftError", "price", "compare", "sweep", "payoff_hat", "select_step"]


def price(config: str, overrides=()) -> dict:
    """FFT price record for a config given as text."""
    return json.loads(price_json(config, list(overrides)))


def compare(config: str, strikes, overrides=()) -> list:
    """Rows of K, mc_price, mc_stderr, fft_price, rel_err_percent."""
    return list(csv.DictReader(io.StringIO(compare_csv(config, list(strikes), list(overrides)))))


def sweep(config: str, overrides=(), threads: int = 0) -> str:
    """Sweep table as CSV text."""
    return sweep_csv(config, list(overrides), threads)
