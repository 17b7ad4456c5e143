"""Exception hierarchy shared by every stage of the pipeline."""


class BenfordForensicsError(Exception):
    """Base class for all errors raised by this package."""


# image ingest

class UnreadableFile(BenfordForensicsError, OSError):
    pass


class UnsupportedFormat(BenfordForensicsError, ValueError):
    pass


class BitDepthUnsupported(UnsupportedFormat):
    pass


class EmptyDataset(BenfordForensicsError, ValueError):
    pass


class UnknownLabelDirectory(BenfordForensicsError, ValueError):
    pass


# jpeg model

class QfOutOfRange(BenfordForensicsError, ValueError):
    pass


# benford

class ZeroHasNoFirstDigit(BenfordForensicsError, ValueError):
    pass


class NonFiniteInput(BenfordForensicsError, ValueError):
    pass


class InvalidParams(BenfordForensicsError, ValueError):
    pass


class EmptyStream(BenfordForensicsError, ValueError):
    pass


class ModelHasZeroBin(BenfordForensicsError, ValueError):
    pass


class NoValidStart(BenfordForensicsError, ValueError):
    pass


class ParamFileError(BenfordForensicsError, ValueError):
    pass


# features

class DegenerateImage(BenfordForensicsError, ValueError):
    pass


class AllImagesDegenerate(BenfordForensicsError, ValueError):
    pass


class HeaderMismatch(BenfordForensicsError, ValueError):
    pass


class MalformedRow(BenfordForensicsError, ValueError):
    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")


class SinkWriteFailure(BenfordForensicsError, OSError):
    pass


# learn

class ClassTooSmall(BenfordForensicsError, ValueError):
    pass


class ClassAbsent(BenfordForensicsError, ValueError):
    pass


class SingleClass(BenfordForensicsError, ValueError):
    pass


class ArityMismatch(BenfordForensicsError, ValueError):
    pass


class ModelFormatError(BenfordForensicsError, ValueError):
    pass
