"""Typed errors raised by netmttf computations."""


class NetMTTFError(Exception):
    """Base class for every computation error in the package."""


class VariableMismatch(NetMTTFError, ValueError):
    pass


class NonzeroRemainder(NetMTTFError, ArithmeticError):
    pass


class SeriesPrecondition(NetMTTFError, ValueError):
    pass


class DegenerateRoot(NetMTTFError, ArithmeticError):
    pass


class UnsupportedArchitecture(NetMTTFError, ValueError):
    pass


class NoGraphRealization(NetMTTFError, ValueError):
    pass


class DivergentMoment(NetMTTFError, ArithmeticError):
    pass


class DivergentMGF(NetMTTFError, ArithmeticError):
    pass


class QuadratureError(NetMTTFError, RuntimeError):
    pass


class MissingCoefficient(NetMTTFError, KeyError):
    pass


class NonzeroFirstCut(NetMTTFError, ValueError):
    pass


class InconsistentSizes(NetMTTFError, ArithmeticError):
    pass


class TooManyEdges(NetMTTFError, ValueError):
    pass


class Inconclusive(NetMTTFError, ArithmeticError):
    pass
