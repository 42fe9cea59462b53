"""Exception hierarchy shared by every module of the package."""


class ExceptionalPrimesError(Exception):
    """Base class for all errors raised by this package."""


class InvariantViolation(ExceptionalPrimesError):
    """An internal consistency check failed; indicates an arithmetic bug."""


# integer arithmetic

class FactorizationTimeout(ExceptionalPrimesError):
    """Pollard rho exhausted its budget on a composite cofactor.

    ``partial`` holds the factorization found so far (prime, exponent pairs)
    and ``composites`` the cofactors that could not be split.
    """

    def __init__(self, n, partial, composites):
        self.n = n
        self.partial = partial
        self.composites = composites
        super().__init__(f"could not fully factor {n}: unsplit cofactors {composites}")


# polynomials

class NotInMonoid(ExceptionalPrimesError):
    """Polynomial is not monic or vanishes at zero."""


class InternalInconsistency(InvariantViolation):
    """A coefficient that must vanish by construction did not."""


class ZeroPolynomial(ExceptionalPrimesError):
    pass


# finite fields

class ZeroModP(ExceptionalPrimesError):
    pass


class DegreeDropped(ExceptionalPrimesError):
    pass


class EvenCharacteristic(ExceptionalPrimesError):
    pass


class FieldTooLargeForEnumeration(ExceptionalPrimesError):
    pass


class FieldMismatch(ExceptionalPrimesError):
    """Arithmetic between elements of two different finite fields."""


# number fields and curves

class NotLIntegral(ExceptionalPrimesError):
    pass


class IndexDivisor(ExceptionalPrimesError):
    def __init__(self, ell):
        self.ell = ell
        super().__init__(f"{ell} divides the index [O_K : Z[theta]]; supply an ideal override")


class BadReductionAtIdeal(ExceptionalPrimesError):
    pass


class BadReductionPrime(ExceptionalPrimesError):
    pass


class SingularCurve(ExceptionalPrimesError):
    pass


# criteria

class WrongDegree(ExceptionalPrimesError):
    pass


class NormMismatch(ExceptionalPrimesError):
    pass


class NoUsablePrimes(ExceptionalPrimesError):
    pass


class IllegalPhiOrder(ExceptionalPrimesError):
    pass


class BadDiscriminant(ExceptionalPrimesError):
    pass


# configuration

class ConfigError(ExceptionalPrimesError):
    pass


class ParseError(ConfigError):
    pass


class ValidationError(ConfigError):
    def __init__(self, location, message):
        self.location = location
        super().__init__(f"{location}: {message}")
