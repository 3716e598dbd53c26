"""Exception hierarchy shared by all synthesis modules."""


class SynthesisError(Exception):
    """Base class for every error raised by :mod:`mcsynth`."""


class SingularInput(SynthesisError, ValueError):
    pass


class DegenerateSpectrum(SynthesisError, ValueError):
    pass


class NotSU2(SynthesisError, ValueError):
    pass


class NotRealMainDiag(SynthesisError, ValueError):
    pass


class InvalidGate(SynthesisError, ValueError):
    pass


class QubitOutOfRange(InvalidGate):
    pass


class DuplicateQubit(InvalidGate):
    pass


class WidthMismatch(SynthesisError, ValueError):
    pass


class NotEnoughAncillas(SynthesisError, ValueError):
    pass


class TooWide(SynthesisError, ValueError):
    pass


class DimMismatch(SynthesisError, ValueError):
    pass


class InvalidWeight(SynthesisError, ValueError):
    pass


class NotNormalized(SynthesisError, ValueError):
    pass


class DuplicatePattern(SynthesisError, ValueError):
    pass


class InfeasibleDensity(SynthesisError, ValueError):
    pass
