from __future__ import annotations


class XclinError(Exception):
    """Base class for every error raised by this package."""


class PreconditionError(XclinError, ValueError):
    pass


class NotNormalError(PreconditionError):
    pass


class CatalogError(XclinError, LookupError):
    """Requested order or id is not covered by the bundled catalog."""


class CatalogFormatError(XclinError, ValueError):
    pass


class EnumerationOverflow(XclinError, RuntimeError):
    """Coset enumeration needed more cosets than allowed."""

    def __init__(self, max_cosets: int):
        super().__init__(f"coset enumeration exceeded {max_cosets} cosets")
        self.max_cosets = max_cosets


class IncompleteTableError(XclinError, ValueError):
    pass


class CrossedModuleAxiomError(XclinError, ValueError):
    def __init__(self, axiom: str, witness: tuple):
        super().__init__(f"{axiom} fails at {witness}")
        self.axiom = axiom
        self.witness = witness


class ConsistencyError(XclinError, AssertionError):
    """An internal invariant that the theory guarantees was violated."""


class NotFoundError(XclinError, LookupError):
    pass
