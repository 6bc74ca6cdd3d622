"""Resource limits shared by every module.

Defaults can be overridden through environment variables
(``SYMCAY_MAX_AUT_VERTICES``, ``SYMCAY_MAX_GROUP_ORDER``,
``SYMCAY_MAX_COSET_INDEX``) or temporarily with :func:`override`.
"""

from __future__ import annotations

import contextlib
import dataclasses
import os
import threading


class BoundExceeded(RuntimeError):
    """A configured resource limit would be exceeded."""


class HypothesisError(ValueError):
    """Parameters violate a construction's hypotheses.

    The message names the violated hypothesis.
    """


@dataclasses.dataclass(frozen=True)
class Limits:
    max_aut_vertices: int = 1500
    max_group_order: int = 100_000
    max_coset_index: int = 100_000
    max_normalizer_order: int = 1_000_000
    max_aut_G_S_order: int = 2048
    max_field_size: int = 2**20


_ENV = {
    "max_aut_vertices": "SYMCAY_MAX_AUT_VERTICES",
    "max_group_order": "SYMCAY_MAX_GROUP_ORDER",
    "max_coset_index": "SYMCAY_MAX_COSET_INDEX",
}

_local = threading.local()


def _from_env() -> Limits:
    kwargs = {}
    for field, var in _ENV.items():
        value = os.environ.get(var)
        if value:
            kwargs[field] = int(value)
    return Limits(**kwargs)


def current() -> Limits:
    lim = getattr(_local, "limits", None)
    if lim is None:
        lim = _from_env()
    return lim


@contextlib.contextmanager
def override(**kwargs):
    """Temporarily replace some limits in the current thread."""
    old = getattr(_local, "limits", None)
    _local.limits = dataclasses.replace(current(), **kwargs)
    try:
        yield _local.limits
    finally:
        _local.limits = old


def check(value: int, limit: int, what: str) -> None:
    if value > limit:
        raise BoundExceeded(f"{what} {value} exceeds limit {limit}")
