#!/usr/bin/env python
from functools import lru_cache
from pathlib import Path

from pygrowth import build_automaton, build_ball, parse_config
from pygrowth.config import bundled_configs


def example_path(name: str) -> Path:
    for path in bundled_configs():
        if path.stem == name:
            return path
    raise LookupError(name)


@lru_cache(maxsize=None)
def config(name: str):
    return parse_config(example_path(name))


def rewriting(name: str):
    return config(name).rewriting


def word(name: str, text: str):
    return config(name).alphabet.parse(text)


@lru_cache(maxsize=None)
def ball(name: str, radius: int):
    return build_ball(rewriting(name), radius)


@lru_cache(maxsize=None)
def automaton(name: str, K: int, radius: int | None = None):
    return build_automaton(ball(name, radius or 2 * K + 2), K)
