"""Exception hierarchy shared across the package."""


class HilbconeError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(HilbconeError):
    """Operands have incompatible shapes or lengths."""


class SingularMatrixError(HilbconeError):
    """A square matrix expected to be invertible is singular.

    Carries the exact rank found during elimination.
    """

    def __init__(self, message, rank):
        super().__init__(f"{message} (rank {rank})")
        self.rank = rank


class ZeroRayError(HilbconeError):
    """The zero vector cannot be canonicalized to a ray."""


class SchemaError(HilbconeError):
    """A dataset file violates the JSON schema.

    Carries a JSON-pointer-style path to the offending element.
    """

    def __init__(self, message, pointer=""):
        super().__init__(f"{pointer}: {message}" if pointer else message)
        self.pointer = pointer


class DataInvariantError(HilbconeError):
    """A structurally valid dataset violates a semantic invariant."""


class UnknownClassError(HilbconeError):
    """No class registered under the requested name."""

    def __init__(self, name, near_matches=()):
        msg = f"unknown class {name!r}"
        if near_matches:
            msg += " (did you mean: " + ", ".join(sorted(near_matches)) + "?)"
        super().__init__(msg)
        self.name = name
        self.near_matches = tuple(near_matches)


class UnknownLabelError(HilbconeError):
    """An expression label does not belong to the target basis."""


class UnknownCheckError(HilbconeError):
    """No worksheet check registered under the requested id."""


class ParseError(HilbconeError):
    """Class-expression syntax error, with position and expectation info."""

    def __init__(self, message, offset, expected=()):
        detail = f"at offset {offset}: {message}"
        if expected:
            detail += " (expected " + " or ".join(expected) + ")"
        super().__init__(detail)
        self.offset = offset
        self.expected = tuple(expected)


class NoPairingPathError(HilbconeError):
    """No registered pairing connects the two bases, even via conversions."""


class NoConversionPathError(HilbconeError):
    """No registered basis-change path connects the two bases."""
