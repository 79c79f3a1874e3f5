"""Exception hierarchy shared by every owenset module."""


class OwenSetError(Exception):
    """Base class for all owenset errors."""


# Graph kernel
class InvalidVertex(OwenSetError):
    """A vertex id lies outside 0..n-1 or source equals sink."""


class CycleDetected(OwenSetError):
    """A graph expected to be acyclic contains a directed cycle."""


# Linear programming
class MalformedModel(OwenSetError):
    """Coefficient indices do not match the declared variables."""


class DimensionMismatch(OwenSetError):
    """A point has the wrong number of coordinates for its model."""


class RoundLimitExceeded(OwenSetError):
    """Constraint generation did not converge within its round budget."""


class OracleContractViolation(OwenSetError):
    """A separation oracle returned a constraint the candidate satisfies."""


class SolverError(OwenSetError):
    """An internal certificate (duality, integrality, feasibility) failed to verify."""


# Leximin engine
class InfeasibleBase(OwenSetError):
    """The base LP of a leximin problem has no feasible point."""


class UnboundedBase(OwenSetError):
    """The base LP of a leximin problem is unbounded."""


class NoPositiveDual(OwenSetError):
    """A fixing round found no agent with a nonzero share dual."""


# Games
class NotOptimalDual(OwenSetError):
    """A dual solution is infeasible or its objective differs from the game worth."""


class NotAnImputation(OwenSetError):
    """Shares do not cover the agents or do not sum to the game worth."""


class Disconnected(OwenSetError):
    """Some vertex of a branching instance cannot reach the root."""


class BoundExceeded(OwenSetError):
    """The duplication reduction would exceed its size guard."""


class TooLarge(OwenSetError):
    """Exhaustive coalition enumeration exceeds the agent bound."""


# Files and command line
class ParseError(OwenSetError):
    """An instance or share file could not be read."""


class InstanceValidationError(OwenSetError):
    """An instance is well-formed but violates a game invariant."""


class UnsupportedMethod(OwenSetError):
    """The requested method is not available for this game and command."""


class AgentBoundExceeded(OwenSetError):
    """The instance has more agents than the configured bound allows."""
