"""Interned symbols with a fixed total order.

Every coordinate the engine manipulates (independent variables, jet
coordinates, fiber variables, group parameters) is a :class:`Symbol`.
Symbols are interned: two symbols with the same display name are the same
object.  The total order used for canonical monomial ordering is the
lexicographic order on display names, which makes every canonical form
independent of declaration order.
"""

from __future__ import annotations

import threading


class Symbol:
    __slots__ = ("name", "_hash")

    _registry: dict[str, "Symbol"] = {}
    _lock = threading.Lock()

    def __new__(cls, name: str) -> "Symbol":
        sym = cls._registry.get(name)
        if sym is not None:
            return sym
        with cls._lock:
            sym = cls._registry.get(name)
            if sym is None:
                if not name:
                    raise ValueError("symbol name must be non-empty")
                sym = object.__new__(cls)
                sym.name = name
                sym._hash = hash(name)
                cls._registry[name] = sym
        return sym

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Symbol") -> bool:
        return self.name < other.name

    def __le__(self, other: "Symbol") -> bool:
        return self.name <= other.name

    def __repr__(self) -> str:
        return self.name


def symbols(names: str) -> tuple[Symbol, ...]:
    """Create several symbols at once from a whitespace-separated string."""
    return tuple(Symbol(n) for n in names.split())
