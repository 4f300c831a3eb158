"""Exception hierarchy shared by the library and the command line."""


class NewtonOscError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 1
    kind = "error"

    def to_dict(self):
        return {"error": self.kind, "message": str(self)}


class InputError(NewtonOscError, ValueError):
    exit_code = 2
    kind = "input_error"


class PolynomialSyntaxError(InputError):
    kind = "syntax_error"

    def __init__(self, message, position=None):
        if position is not None:
            message = "%s (at position %d)" % (message, position)
        super().__init__(message)
        self.position = position

    def to_dict(self):
        d = super().to_dict()
        d["position"] = self.position
        return d


class HypothesisError(NewtonOscError):
    """The phase violates f(0) = 0, grad f(0) = 0, or is the zero polynomial."""

    exit_code = 3
    kind = "hypothesis_violation"


class DegeneratePhaseError(HypothesisError):
    """Some compact face fails the nondegeneracy gate."""

    kind = "degenerate_phase"

    def __init__(self, message, face=None, verdict=None, witness=None):
        super().__init__(message)
        self.face = face
        self.verdict = verdict
        self.witness = witness

    def to_dict(self):
        d = super().to_dict()
        d["verdict"] = self.verdict
        d["face_vertices"] = None if self.face is None else [list(v) for v in self.face.vertices]
        d["witness"] = None if self.witness is None else [str(c) for c in self.witness]
        return d


class ConvergenceError(NewtonOscError, ArithmeticError):
    exit_code = 4
    kind = "non_convergence"

    def __init__(self, message, last_delta=None, nodes=None):
        super().__init__(message)
        self.last_delta = last_delta
        self.nodes = nodes

    def to_dict(self):
        d = super().to_dict()
        d["last_delta"] = self.last_delta
        d["nodes_per_axis"] = self.nodes
        return d


class FitToleranceError(NewtonOscError):
    exit_code = 5
    kind = "fit_tolerance"
