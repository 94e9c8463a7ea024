"""Exception types shared across the package."""


class AbsClozeError(Exception):
    """Base class for all package errors."""


class LexParseError(AbsClozeError):
    """A lexical database file could not be parsed.

    Carries the offending file and line number in the message.
    """

    def __init__(self, path, line_no, reason):
        super().__init__(f"{path}:{line_no}: {reason}")
        self.path = str(path)
        self.line_no = line_no
        self.reason = reason


class LinkError(AbsClozeError):
    """A relation points at a synset that does not exist, or the graph is broken."""


class UnknownSynsetError(AbsClozeError):
    """A synset id was looked up that is not in the database."""


class NoSenseError(AbsClozeError):
    """A word required to have at least one sense has none."""


class EmptyOptionError(AbsClozeError):
    """A candidate option produced zero tokens."""


class MalformedSampleError(AbsClozeError):
    """A sample violates its invariants (placeholder count, option count)."""


class QuestionOverflowError(AbsClozeError):
    """The question plus reserved special tokens exceed the model length budget."""


class ChunkingError(AbsClozeError):
    """Chunk layout is impossible for the given budget and stride."""


class ShapeError(AbsClozeError):
    """Inputs that must agree in length or cardinality do not."""


class CapabilityError(AbsClozeError):
    """The scorer backend does not support a required capability."""


class TransportError(AbsClozeError):
    """A request to the external inference service failed."""


class BuildError(AbsClozeError):
    """A component could not be constructed from its inputs."""


class EvaluationError(AbsClozeError):
    """Evaluation was asked to run on unusable inputs (e.g. unlabeled samples)."""
