"""ID-keyed store for objects that must not cross the tool boundary.

Tools exchange session IDs; the engine objects behind them stay here.
"""

from __future__ import annotations
from dataclasses import dataclass, field
from typing import Any
import uuid

from wres_verifier.errors import WresError


class UnknownSession(WresError, KeyError):
    """No object is registered under the requested ID."""


@dataclass
class ObjectRegistry:
    """Stores objects keyed by generated ``<prefix>_<hex>`` IDs."""

    _store: dict[str, Any] = field(default_factory=dict)

    def put(self, obj: Any, prefix: str) -> str:
        """Stores an object and returns its generated ID.

        Args:
            obj: Object to store.
            prefix: ID prefix grouping objects by type (e.g. "ses").

        Returns:
            Generated object ID.
        """
        oid = f"{prefix}_{uuid.uuid4().hex}"
        self._store[oid] = obj
        return oid

    def get(self, oid: str, expected_type: type | tuple[type, ...] | None = None) -> Any:
        """Looks up a stored object by ID, optionally enforcing its type.

        Args:
            oid: ID previously returned by :meth:`put`.
            expected_type: Type (or tuple of types) the object must be an
                instance of; ``None`` skips the check.

        Returns:
            The stored object.

        Raises:
            UnknownSession: If the ID does not exist. Also a ``KeyError``.
            TypeError: If ``expected_type`` is given and the object is not an
                instance of it.
        """
        if oid not in self._store:
            raise UnknownSession(f"Unknown id: {oid}")
        obj = self._store[oid]
        if expected_type is not None and not isinstance(obj, expected_type):
            raise TypeError(f"{oid} is {type(obj).__name__}, expected {expected_type}")
        return obj

    def delete(self, oid: str) -> bool:
        """Removes an ID; returns False when it was not registered."""
        return self._store.pop(oid, None) is not None

    def ids(self, prefix: str = "") -> list[str]:
        return sorted(k for k in self._store if k.startswith(prefix))
