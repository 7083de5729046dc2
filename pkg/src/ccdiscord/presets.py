"""Reference-state constructors and seeded random states.

The main parametric family is the mixture of a phased Bell state with
|00>,

    rho(p, phi) = p |Psi_phi><Psi_phi| + (1 - p) |00><00|,
    |Psi_phi> = (|01> + e^{i phi} |10>) / sqrt(2),

whose Bloch data are x = y = [0, 0, 1-p] and

    T = [[p cos phi, -p sin phi, 0],
         [p sin phi,  p cos phi, 0],
         [0,          0,         1 - 2p]].

Three fixed benchmark states (example1..3) exercise the bounds and the
iteration procedure.  Random states are Ginibre-induced: rho = G G+ /
tr(G G+) with G a 4 x rank matrix of standard complex normal entries
from numpy's PCG64 generator (ziggurat normal variates), so ensembles
are bit-reproducible per (rank, seed) within this implementation.
"""

from __future__ import annotations

import numpy as np

from .bloch import BlochForm, InvalidParameters, to_bloch

_REGISTRY = {}


def _register(name):
    def deco(fn):
        _REGISTRY[name] = fn
        return fn

    return deco


@_register("hstate")
def h_state(p: float, phi: float = 0.0) -> BlochForm:
    """Mixture of the phased Bell state with |00>, 0 <= p <= 1."""
    if not 0.0 <= p <= 1.0:
        raise InvalidParameters(f"p must be in [0, 1], got {p}")
    c, s = np.cos(phi), np.sin(phi)
    T = np.array([[p * c, -p * s, 0.0], [p * s, p * c, 0.0], [0.0, 0.0, 1.0 - 2.0 * p]])
    v = np.array([0.0, 0.0, 1.0 - p])
    return BlochForm(v, v.copy(), T)


@_register("bell_diagonal")
def bell_diagonal(c1: float, c2: float, c3: float) -> BlochForm:
    """Zero-marginal state with T = diag(c1, c2, c3).

    The c-vector must lie in the physical tetrahedron; this is enforced
    by the eigenvalues (1 +- c3 -+ c1 -+ c2)/4 being nonnegative.
    """
    c = np.array([c1, c2, c3], dtype=float)
    eigs = 0.25 * np.array(
        [
            1 - c1 - c2 - c3,
            1 - c1 + c2 + c3,
            1 + c1 - c2 + c3,
            1 + c1 + c2 - c3,
        ]
    )
    if eigs.min() < -1e-12:
        raise InvalidParameters(f"({c1}, {c2}, {c3}) is outside the Bell tetrahedron")
    return BlochForm(np.zeros(3), np.zeros(3), np.diag(c))


@_register("werner")
def werner(p: float) -> BlochForm:
    """p |Psi-><Psi-| + (1 - p) I/4, a Bell-diagonal convenience."""
    if not 0.0 <= p <= 1.0:
        raise InvalidParameters(f"p must be in [0, 1], got {p}")
    return bell_diagonal(-p, -p, -p)


@_register("pure")
def pure(amplitudes) -> BlochForm:
    """Projector onto a normalized 4-component amplitude vector."""
    a = np.asarray(amplitudes, dtype=complex).reshape(4)
    n = np.linalg.norm(a)
    if n < 1e-12:
        raise InvalidParameters("amplitudes must not all vanish")
    if abs(n - 1.0) > 1e-9:
        raise InvalidParameters("amplitudes must be normalized")
    a = a / n
    return to_bloch(np.outer(a, a.conj()))


@_register("cc_diag")
def cc_diag(probabilities) -> BlochForm:
    """State diagonal in the computational basis (a CC state)."""
    p = np.asarray(probabilities, dtype=float).reshape(4)
    if p.min() < -1e-12 or abs(p.sum() - 1.0) > 1e-9:
        raise InvalidParameters("need four nonnegative probabilities summing to 1")
    return to_bloch(np.diag(p.astype(complex)))


@_register("example1")
def example1() -> BlochForm:
    """x = y = [1,1,1]/4, T = diag(1, -1, 0)/4."""
    v = np.full(3, 0.25)
    return BlochForm(v, v.copy(), np.diag([0.25, -0.25, 0.0]))


@_register("example2")
def example2() -> BlochForm:
    """As example1 but with T = diag(1, 1, 0)/4."""
    v = np.full(3, 0.25)
    return BlochForm(v, v.copy(), np.diag([0.25, 0.25, 0.0]))


@_register("example3")
def example3() -> BlochForm:
    """x = [1,2,3]/6, y = (6/7) x, T = diag(1, 2, 3)/8."""
    x = np.array([1.0, 2.0, 3.0]) / 6.0
    return BlochForm(x, (6.0 / 7.0) * x, np.diag([1.0, 2.0, 3.0]) / 8.0)


def random_state(rank: int, seed: int) -> BlochForm:
    """Ginibre-induced random state of the given rank, deterministic
    per (rank, seed)."""
    if rank not in (1, 2, 3, 4):
        raise InvalidParameters(f"rank must be 1..4, got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((4, rank)) + 1j * rng.standard_normal((4, rank))
    rho = g @ g.conj().T
    rho /= rho.trace().real
    return to_bloch(rho)


def make(spec: str) -> BlochForm:
    """Build a preset from a CLI string, e.g. "hstate:p=0.6667,phi=1.5708".

    Scalar parameters are floats; `pure` takes a0..a3 (complex literals
    accepted) and `cc_diag` takes p00, p01, p10, p11.
    """
    name, _, argstr = spec.partition(":")
    name = name.strip().replace("-", "_")
    if name == "h_state":
        name = "hstate"
    if name not in _REGISTRY:
        raise InvalidParameters(
            f"unknown preset {name!r}; choose from {sorted(_REGISTRY)}"
        )
    kwargs = {}
    if argstr.strip():
        for item in argstr.split(","):
            key, _, val = item.partition("=")
            if not _:
                raise InvalidParameters(f"malformed parameter {item!r}")
            kwargs[key.strip()] = val.strip()
    if name == "pure":
        amps = [complex(kwargs.pop(f"a{i}", 0)) for i in range(4)]
        _reject_extras(kwargs)
        return pure(amps)
    if name == "cc_diag":
        probs = [float(kwargs.pop(k, 0)) for k in ("p00", "p01", "p10", "p11")]
        _reject_extras(kwargs)
        return cc_diag(probs)
    try:
        numeric = {k: float(v) for k, v in kwargs.items()}
    except ValueError as exc:
        raise InvalidParameters(str(exc)) from exc
    try:
        return _REGISTRY[name](**numeric)
    except TypeError as exc:
        raise InvalidParameters(f"bad parameters for {name}: {exc}") from exc


def _reject_extras(kwargs: dict) -> None:
    if kwargs:
        raise InvalidParameters(f"unexpected parameters: {sorted(kwargs)}")


def preset_names() -> list[str]:
    return sorted(_REGISTRY)
