"""Exception types shared across the workbench."""


class DualityError(Exception):
    """Base class for every error raised by dualbench."""


class LatticeError(DualityError):
    """A lattice / poset law failed at build time.

    ``code`` is a stable machine identifier (``not-a-poset``,
    ``missing-meet``, ``missing-join``, ``not-distributive``,
    ``wrong-bounds``, ``unknown-element``, ``equal-elements``,
    ``duplicate-element``) and ``witness`` names the offending elements.
    """

    def __init__(self, code, message, witness=None):
        super().__init__(message)
        self.code = code
        self.witness = witness


class AlgebraError(DualityError):
    """Invalid algebra construction or mismatched signatures/carriers."""

    def __init__(self, code, message, witness=None):
        super().__init__(message)
        self.code = code
        self.witness = witness


class SpaceError(DualityError):
    """Invalid topological-space construction."""

    def __init__(self, code, message, witness=None):
        super().__init__(message)
        self.code = code
        self.witness = witness


class BudgetExceeded(DualityError):
    """An enumeration would exceed the configured size budget."""


class DocumentError(DualityError):
    """A workspace document failed to parse or validate.

    Carries the location (line number, field) so diagnostics point at the
    offending input, not at internal state.
    """

    def __init__(self, code, message, line=None, fieldname=None):
        loc = ""
        if line is not None:
            loc = f" (line {line})"
        super().__init__(message + loc)
        self.code = code
        self.line = line
        self.fieldname = fieldname
