"""Shared cached fixtures for the test modules."""
import functools

from coxalt.complex import build_coxeter_complex
from coxalt.coxeter import parse_graph
from coxalt.groups import enumerate_group


@functools.lru_cache(maxsize=None)
def group(name: str):
    return enumerate_group(parse_graph(name))


@functools.lru_cache(maxsize=None)
def cx(name: str):
    return build_coxeter_complex(group(name))
