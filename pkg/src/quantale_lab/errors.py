"""Exception hierarchy.

Every error carries a ``witness``: the element names (or other concrete data)
that exhibit the failure.
"""


class QuantaleLabError(Exception):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAPoset(QuantaleLabError):
    pass


class NotALattice(QuantaleLabError):
    pass


class NoBounds(QuantaleLabError):
    pass


class UnknownElement(QuantaleLabError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class NotJoinPreserving(QuantaleLabError):
    pass


class BottomNotPreserved(QuantaleLabError):
    pass


class DomainMismatch(QuantaleLabError):
    pass


class NotAssociative(QuantaleLabError):
    pass


class NotBimorphic(QuantaleLabError):
    pass


class BadUnit(QuantaleLabError):
    pass


class BadInvolution(QuantaleLabError):
    pass


class NoInvolution(QuantaleLabError):
    pass


class NotSemiIntegral(QuantaleLabError):
    pass


class NotSemiUnital(QuantaleLabError):
    pass


class CarrierTooLarge(QuantaleLabError):
    pass


class SizeCapExceeded(QuantaleLabError):
    pass


class HypothesisFailed(QuantaleLabError):
    pass


class NotPrime(QuantaleLabError):
    pass


class StructureMissing(QuantaleLabError):
    pass


class UnknownName(QuantaleLabError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class InconsistentExtension(QuantaleLabError):
    pass


class Eq22Violated(QuantaleLabError):
    pass


class NotInvolutive(QuantaleLabError):
    pass


class NotAHom(QuantaleLabError):
    pass


class NotHoms(QuantaleLabError):
    pass


class NucleusNotInvolutive(QuantaleLabError):
    pass


class PreconditionFailed(QuantaleLabError):
    pass


class NotAQuanticFrame(QuantaleLabError):
    pass


class NotAFilter(QuantaleLabError):
    pass


class NotReduced(QuantaleLabError):
    pass


class NotInjective(QuantaleLabError):
    pass


class ParseError(QuantaleLabError):
    def __init__(self, message, line=None, witness=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, witness)
        self.line = line
