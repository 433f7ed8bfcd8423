"""Exception types shared across the package.

The CLI maps any ConceptSpaceError to exit code 2 (data/model error);
the HTTP service maps them to status 422.
"""


class ConceptSpaceError(Exception):
    """Base class for all domain errors raised by this package."""


class InvalidInputError(ConceptSpaceError):
    """A value, override, or configuration entry is malformed."""


class InsufficientDataError(ConceptSpaceError):
    """Not enough training instances to estimate a parameter."""


class NotFoundError(ConceptSpaceError):
    """A named resource (fixture, synset, concept) does not exist."""


class NoOverlapError(ConceptSpaceError):
    """Instance and concept share no quality dimension."""


class InvalidModelError(ConceptSpaceError):
    """A model file or in-memory space violates its schema."""
