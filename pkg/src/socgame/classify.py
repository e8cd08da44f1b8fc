"""Stationary states and dynamic regimes.

Everything observable about the long-run behaviour of the four-strategy flow
is decided by closed-form sign conditions on the parameters:

* which pure states and mixed edge states exist and how the flow crosses
  them (planar eigenvalue signs on the no-isolation face),
* which of the known planar phase portraits each boundary face realises
  (reported as a portrait number ``pp`` and a panel tag ``figure``),
* which states attract from the full simplex: a state is globally attractive
  exactly when it is attractive inside every boundary face containing it.

The analytic path is the product; a finite-difference Jacobian
(``numeric_jacobian``) serves as the independent oracle in tests and decides
the one question the sign tables leave open, the stability type of interior
states.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .model import (
    DEFAULT_TOL,
    STRATEGIES,
    DegenerateParameterError,
    InvalidParameterError,
    Params,
    SimplexState,
    ValidationReport,
    coexistence_payoff,
    payoff_matrix,
    require_valid,
    validate,
)
from .dynamics import LVState, _rep_rhs_raw, lv_rhs_2d

# numeric eigenvalues closer to zero than this get the "degenerate" sign
SIGN_TOL = 1e-7

_IDX = {s: i for i, s in enumerate(STRATEGIES)}

# boundary faces named by the strategy that is absent
FACES = ("S_N", "S_O", "S_H", "S_P")
_FACE_ABSENT = {"S_N": 3, "S_O": 0, "S_H": 1, "S_P": 2}


class NonStationaryPointError(ValueError):
    """numeric_jacobian was handed a point the flow does not fix."""


class InfeasibleLocationError(ValueError):
    """A stationary-state solve landed outside its face."""


def _sign(v: float, tol: float) -> str:
    if abs(v) <= tol:
        return "degenerate"
    return "+" if v > 0.0 else "-"


def _stability(signs: Sequence[tuple[str, str]]) -> str:
    vals = [s for _, s in signs]
    if any(s == "degenerate" for s in vals):
        return "degenerate"
    if all(s == "-" for s in vals):
        return "attractive"
    if all(s == "+" for s in vals):
        return "repulsive"
    return "saddle"


@dataclass(frozen=True)
class NormalizedMatrix:
    """Payoff matrix of the no-isolation face with each column shifted so the
    offline row is zero; planar sign conditions read directly off a..f::

        O   0  0  0
        H   a  b  c
        P   d  e  f
    """

    a: float
    b: float
    c: float
    d: float
    e: float
    f: float

    def as_array(self) -> np.ndarray:
        return np.array([
            [0.0, 0.0, 0.0],
            [self.a, self.b, self.c],
            [self.d, self.e, self.f],
        ])


def normalize_matrix(p: Params) -> NormalizedMatrix:
    return NormalizedMatrix(a=-p.alpha, b=p.beta, c=p.gamma,
                            d=-p.alpha, e=-p.delta, f=p.epsilon)


@dataclass(frozen=True)
class StationaryState:
    label: str  # e.g. "O", "H+P", "O+H+P", "O+H+P+N"
    kind: str  # "vertex" | "edge-interior" | "face-interior" | "full-interior"
    location: SimplexState
    support: tuple[str, ...]
    payoff: float  # common payoff of the supported strategies
    eigen_signs: tuple[tuple[str, str], ...]
    stability: str  # "attractive" | "repulsive" | "saddle" | "degenerate"

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "kind": self.kind,
            "location": list(self.location.as_tuple()),
            "support": list(self.support),
            "payoff": self.payoff,
            "eigen_signs": [[d, s] for d, s in self.eigen_signs],
            "stability": self.stability,
        }


@dataclass(frozen=True)
class EdgeRegime:
    """Dynamic regime of one boundary face: portrait number, panel tag, and
    the states attractive within that face."""

    edge: str
    pp: int
    figure: str
    attractors: tuple[StationaryState, ...]

    def as_dict(self) -> dict:
        return {
            "edge": self.edge,
            "pp": self.pp,
            "figure": self.figure,
            "attractors": [s.as_dict() for s in self.attractors],
        }


@dataclass(frozen=True)
class RegimeReport:
    params: Params
    validation: ValidationReport
    edges: tuple[EdgeRegime | None, ...]  # S_N, S_O, S_H, S_P
    global_attractors: tuple[StationaryState, ...]
    global_case: str  # branch tag naming the composition case
    welfare: "object | None"  # WelfareReport, None when degenerate
    degenerate: bool

    def as_dict(self) -> dict:
        return {
            "params": self.params.as_dict(),
            "branch": self.validation.branch,
            "validation": self.validation.as_dict(),
            "degenerate": self.degenerate,
            "edges": [e.as_dict() if e is not None else None for e in self.edges],
            "global": {
                "case": self.global_case,
                "attractors": [s.as_dict() for s in self.global_attractors],
                "welfare": self.welfare.as_dict() if self.welfare is not None else None,
            },
        }


# ---------------------------------------------------------------------------
# helpers shared by the analytic tables


def _vertex_location(idx: int) -> SimplexState:
    xs = [0.0] * 4
    xs[idx] = 1.0
    return SimplexState(*xs)


def _vertex_state_in_face(p: Params, face: str, v: str, tol: float) -> StationaryState:
    """Vertex as seen inside one boundary face: two eigen directions, one
    toward each co-resident vertex.  The eigenvalue toward W at pure state V
    is W's payoff advantage there, A[W,V] - A[V,V]."""
    A = payoff_matrix(p)
    vi = _IDX[v]
    others = [i for i in range(4) if i != vi and i != _FACE_ABSENT[face]]
    signs = tuple(
        (f"toward {STRATEGIES[o]}", _sign(A[o, vi] - A[vi, vi], tol)) for o in others
    )
    return StationaryState(
        label=v,
        kind="vertex",
        location=_vertex_location(vi),
        support=(v,),
        payoff=float(A[vi, vi]),
        eigen_signs=signs,
        stability=_stability(signs),
    )


def _vertex_state_global(p: Params, v: str, tol: float) -> StationaryState:
    """Vertex with all three eigen directions of the full simplex."""
    A = payoff_matrix(p)
    vi = _IDX[v]
    signs = tuple(
        (f"toward {STRATEGIES[o]}", _sign(A[o, vi] - A[vi, vi], tol))
        for o in range(4) if o != vi
    )
    return StationaryState(
        label=v,
        kind="vertex",
        location=_vertex_location(vi),
        support=(v,),
        payoff=float(A[vi, vi]),
        eigen_signs=signs,
        stability=_stability(signs),
    )


def hp_mix_share(p: Params) -> float:
    """Uncivil share x2* at the H/P mixed state on the H-P edge."""
    den = (p.epsilon - p.gamma) + (p.beta + p.delta)
    return (p.epsilon - p.gamma) / den


def _hp_coexistence_state(p: Params, tol: float, directions: str) -> StationaryState:
    """The H/P mixed state with eigen signs for the requested context:
    'S_N' (along edge + toward O), 'S_O' (along edge + toward N), or
    'global' (all three)."""
    mb = normalize_matrix(p)
    den = (mb.e - mb.b) + (mb.c - mb.f)  # -(beta+delta) - (epsilon-gamma), nonzero when valid
    along = (mb.e - mb.b) * (mb.f - mb.c) / den
    pay = coexistence_payoff(p)
    sign_along = ("along H-P", _sign(along, tol))
    sign_o = ("toward O", _sign(-pay, tol))
    sign_n = ("toward N", _sign(p.eta - pay, tol))
    if directions == "S_N":
        signs = (sign_along, sign_o)
    elif directions == "S_O":
        signs = (sign_along, sign_n)
    else:
        signs = (sign_along, sign_o, sign_n)
    x2 = hp_mix_share(p)
    return StationaryState(
        label="H+P",
        kind="edge-interior",
        location=SimplexState(0.0, x2, 1.0 - x2, 0.0),
        support=("H", "P"),
        payoff=pay,
        eigen_signs=signs,
        stability=_stability(signs),
    )


# ---------------------------------------------------------------------------
# analytic eigen-sign tables for the no-isolation face


def vertex_eigensigns(p: Params, tol: float = DEFAULT_TOL) -> dict[str, tuple[tuple[str, str], ...]]:
    """Eigenvalue signs at the O, H, P corners of the no-isolation face.

    O repels nothing (both directions carry -alpha); H is guarded by -beta
    and -(beta+delta); P by -epsilon and gamma-epsilon.
    """
    require_valid(p, tol)
    return {
        "O": (("toward H", _sign(-p.alpha, tol)), ("toward P", _sign(-p.alpha, tol))),
        "H": (("toward O", _sign(-p.beta, tol)), ("toward P", _sign(-p.beta - p.delta, tol))),
        "P": (("toward O", _sign(-p.epsilon, tol)), ("toward H", _sign(p.gamma - p.epsilon, tol))),
    }


def edge_interior_states(p: Params, tol: float = DEFAULT_TOL) -> list[StationaryState]:
    """Mixed stationary states on the three edges of the no-isolation face.

    The O-P and H-P edges always carry one; the O-H edge only when beta > 0.
    Eigen signs follow the planar tables: along-edge and transversal (into
    the face interior) directions.
    """
    require_valid(p, tol)
    if abs(p.beta) <= tol:
        raise DegenerateParameterError(f"O-H edge state existence boundary: |beta| <= {tol}")
    out: list[StationaryState] = []

    if p.beta > 0.0:
        # O-H edge: payoffs equalize at x1 = beta/(alpha+beta)
        x1 = p.beta / (p.alpha + p.beta)
        signs = (
            ("along O-H", _sign(p.alpha, tol)),
            ("toward face interior", _sign(-(p.alpha / p.beta) * (p.beta + p.delta), tol)),
        )
        out.append(StationaryState(
            label="O+H",
            kind="edge-interior",
            location=SimplexState(x1, 1.0 - x1, 0.0, 0.0),
            support=("O", "H"),
            payoff=p.alpha * p.beta / (p.alpha + p.beta),
            eigen_signs=signs,
            stability=_stability(signs),
        ))

    # O-P edge: always present
    x1 = p.epsilon / (p.alpha + p.epsilon)
    signs = (
        ("along O-P", _sign(p.alpha, tol)),
        ("toward face interior", _sign((p.alpha / p.epsilon) * (p.gamma - p.epsilon), tol)),
    )
    out.append(StationaryState(
        label="O+P",
        kind="edge-interior",
        location=SimplexState(x1, 0.0, 1.0 - x1, 0.0),
        support=("O", "P"),
        payoff=p.alpha * p.epsilon / (p.alpha + p.epsilon),
        eigen_signs=signs,
        stability=_stability(signs),
    ))

    # H-P edge: always present in both admissible branches
    out.append(_hp_coexistence_state(p, tol, directions="S_N"))
    return out


def face_interior_state(p: Params, tol: float = DEFAULT_TOL) -> StationaryState | None:
    """Stationary state interior to the no-isolation face, if any.

    Exists exactly when beta*epsilon+gamma*delta, alpha*(beta+delta) and
    alpha*(epsilon-gamma) share one strict sign.  Location solves the equal-
    payoff system; stability is read off the numeric Jacobian of the face
    flow (the sign tables do not cover this point).
    """
    require_valid(p, tol)
    exprs = (
        p.beta * p.epsilon + p.gamma * p.delta,
        p.alpha * (p.beta + p.delta),
        p.alpha * (p.epsilon - p.gamma),
    )
    signs = {_sign(v, tol) for v in exprs}
    if "degenerate" in signs:
        raise DegenerateParameterError("face-interior existence expressions on boundary")
    if len(signs) != 1:
        return None

    # P_O = P_H, P_O = P_P, shares sum to 1 (x4 = 0)
    m = np.array([
        [p.alpha, -p.beta, -p.gamma],
        [p.alpha, p.delta, -p.epsilon],
        [1.0, 1.0, 1.0],
    ])
    x1, x2, x3 = np.linalg.solve(m, np.array([0.0, 0.0, 1.0]))
    if min(x1, x2, x3) <= tol or max(x1, x2, x3) >= 1.0 - tol:
        raise InfeasibleLocationError(
            f"equal-payoff solve left the open face: ({x1}, {x2}, {x3})"
        )
    loc = SimplexState(x1, x2, x3, 0.0)
    eigs = numeric_jacobian(loc, p, system="replicator-face")
    esigns = tuple(
        (f"face eig {i + 1}", _sign(float(ev.real), SIGN_TOL)) for i, ev in enumerate(eigs)
    )
    return StationaryState(
        label="O+H+P",
        kind="face-interior",
        location=loc,
        support=("O", "H", "P"),
        payoff=p.alpha * float(x1),
        eigen_signs=esigns,
        stability=_stability(esigns),
    )


def full_interior_state(p: Params, tol: float = DEFAULT_TOL) -> StationaryState | None:
    """Stationary state interior to the whole simplex, if any.

    All four payoffs equal the fallback eta there.  In orthant coordinates it
    always carries the strictly positive eigenvalue eta*w, so it is never
    attractive; the full sign pattern is read off the numeric Jacobian of the
    orthant system.
    """
    require_valid(p, tol)
    x1 = p.eta / p.alpha
    det = p.beta * p.epsilon + p.gamma * p.delta  # nonzero when valid
    x2 = p.eta * (p.epsilon - p.gamma) / det
    x3 = p.eta * (p.beta + p.delta) / det
    x4 = 1.0 - x1 - x2 - x3
    coords = (x1, x2, x3, x4)
    if any(abs(v) <= tol for v in coords):
        raise DegenerateParameterError("full-interior state on a boundary face")
    if any(v < 0.0 for v in coords):
        return None
    loc = SimplexState(*coords)
    lv = LVState(x2 / x1, x3 / x1, x4 / x1)
    eigs = numeric_jacobian(lv, p, system="lv-3d")
    esigns = tuple(
        (f"orthant eig {i + 1}", _sign(float(ev.real), SIGN_TOL)) for i, ev in enumerate(eigs)
    )
    state = StationaryState(
        label="O+H+P+N",
        kind="full-interior",
        location=loc,
        support=("O", "H", "P", "N"),
        payoff=p.eta,
        eigen_signs=esigns,
        stability=_stability(esigns),
    )
    return state


# ---------------------------------------------------------------------------
# numeric Jacobian oracle


def _fd_jacobian(f: Callable[[tuple[float, ...]], tuple[float, ...]],
                 u: tuple[float, ...], step: float = 1e-6) -> np.ndarray:
    n = len(u)
    jac = np.empty((n, n))
    for j in range(n):
        h = step * max(1.0, abs(u[j]))
        up = list(u)
        um = list(u)
        up[j] += h
        um[j] -= h
        fp = f(tuple(up))
        fm = f(tuple(um))
        for i in range(n):
            jac[i, j] = (fp[i] - fm[i]) / (2.0 * h)
    return jac


def _face_reduced_rhs(p: Params, active: tuple[int, int, int]):
    """Flow on a boundary face in the coordinates of its first two actives;
    the third share is 1 - u0 - u1 and the absent strategy is pinned at 0."""
    i, j, k = active

    def f(u: tuple[float, ...]) -> tuple[float, float]:
        x = [0.0, 0.0, 0.0, 0.0]
        x[i] = u[0]
        x[j] = u[1]
        x[k] = 1.0 - u[0] - u[1]
        d = _rep_rhs_raw(tuple(x), p)
        return (d[i], d[j])

    return f


def _sorted_eigs(jac: np.ndarray) -> np.ndarray:
    eigs = np.linalg.eigvals(jac)
    order = np.lexsort((eigs.imag, eigs.real))
    return eigs[order]


def numeric_jacobian(loc, p: Params, system: str = "replicator-face",
                     step: float = 1e-6,
                     stationarity_tol: float = 1e-10) -> np.ndarray:
    """Finite-difference Jacobian eigenvalues at a stationary point.

    system: "replicator-face" (SimplexState on the x4=0 face, reduced to two
    coordinates), "lv-2d" (LVState, planar orthant system), or "lv-3d"
    (LVState, full orthant system).  Eigenvalues come back sorted by real
    part.  Raises if the point is not stationary within ``stationarity_tol``.
    """
    if system == "replicator-face":
        if not isinstance(loc, SimplexState):
            raise TypeError("replicator-face expects a SimplexState")
        if loc.x4 != 0.0:
            raise ValueError("replicator-face expects a state on the x4=0 face")
        f = _face_reduced_rhs(p, (0, 1, 2))
        u: tuple[float, ...] = (loc.x1, loc.x2)
    elif system == "lv-2d":
        if not isinstance(loc, LVState):
            raise TypeError("lv-2d expects an LVState")
        f = lambda u: lv_rhs_2d(u[0], u[1], p)
        u = (loc.y, loc.z)
    elif system == "lv-3d":
        if not isinstance(loc, LVState):
            raise TypeError("lv-3d expects an LVState")

        def f(u: tuple[float, ...]) -> tuple[float, float, float]:
            dy, dz = lv_rhs_2d(u[0], u[1], p)
            return (dy, dz, u[2] * (-p.alpha + p.eta * (1.0 + u[0] + u[1] + u[2])))

        u = (loc.y, loc.z, loc.w)
    else:
        raise ValueError(f"unknown system {system!r}")

    resid = max(abs(v) for v in f(u))
    if resid > stationarity_tol:
        raise NonStationaryPointError(
            f"point is not stationary for {system}: RHS max-norm {resid:.3e}"
        )
    return _sorted_eigs(_fd_jacobian(f, u, step))


# ---------------------------------------------------------------------------
# generic per-face inventory (numeric stability), used by the portrait


def face_states(p: Params, face: str, tol: float = DEFAULT_TOL) -> list[StationaryState]:
    """All stationary states on one boundary face, with stability judged by
    the numeric Jacobian of the face flow.  Vertex eigen directions stay
    analytic (payoff differences); everything else is solved for, then
    differentiated.
    """
    require_valid(p, tol)
    if face not in FACES:
        raise ValueError(f"unknown face {face!r}")
    absent = _FACE_ABSENT[face]
    active = tuple(i for i in range(4) if i != absent)
    A = payoff_matrix(p)
    f_red = _face_reduced_rhs(p, active)  # coordinates: shares of active[0], active[1]
    out: list[StationaryState] = []

    for v in active:
        out.append(_vertex_state_in_face(p, face, STRATEGIES[v], tol))

    def numeric_state(label: str, kind: str, xs: list[float],
                      support: tuple[str, ...], payoff: float) -> StationaryState:
        u = (xs[active[0]], xs[active[1]])
        eigs = _sorted_eigs(_fd_jacobian(f_red, u))
        signs = tuple(
            (f"face eig {i + 1}", _sign(float(ev.real), SIGN_TOL)) for i, ev in enumerate(eigs)
        )
        return StationaryState(
            label=label, kind=kind, location=SimplexState(*xs), support=support,
            payoff=payoff, eigen_signs=signs, stability=_stability(signs),
        )

    # edge-interior states: payoff gap g(s) is affine in the share s of the
    # first edge strategy; an interior root needs a strict sign change
    for ai in range(3):
        for bi in range(ai + 1, 3):
            a, b = active[ai], active[bi]
            g0 = A[a, b] - A[b, b]
            g1 = A[a, a] - A[b, a]
            if abs(g0) <= tol or abs(g1) <= tol:
                raise DegenerateParameterError(
                    f"edge {STRATEGIES[a]}-{STRATEGIES[b]} state existence boundary"
                )
            if g0 * g1 >= 0.0:
                continue
            s = g0 / (g0 - g1)
            xs = [0.0] * 4
            xs[a] = s
            xs[b] = 1.0 - s
            label = f"{STRATEGIES[a]}+{STRATEGIES[b]}"
            pay = float(A[a, a] * s + A[a, b] * (1.0 - s))
            out.append(numeric_state(label, "edge-interior", xs,
                                     (STRATEGIES[a], STRATEGIES[b]), pay))

    # face-interior: equal payoffs among the three actives, shares sum to 1
    m = np.zeros((3, 3))
    rhs = np.array([0.0, 0.0, 1.0])
    for col, s in enumerate(active):
        m[0, col] = A[active[0], s] - A[active[1], s]
        m[1, col] = A[active[0], s] - A[active[2], s]
        m[2, col] = 1.0
    try:
        sol = np.linalg.solve(m, rhs)
    except np.linalg.LinAlgError:
        sol = None
    if sol is not None and min(sol) > tol and max(sol) < 1.0 - tol:
        xs = [0.0] * 4
        for s_idx, share in zip(active, sol):
            xs[s_idx] = float(share)
        label = "+".join(STRATEGIES[i] for i in active)
        pay = float(A[active[0]] @ np.array(xs))
        out.append(numeric_state(label, "face-interior", xs,
                                 tuple(STRATEGIES[i] for i in active), pay))
    return out


# ---------------------------------------------------------------------------
# per-face regime tables


def classify_edge_SN(p: Params, tol: float = DEFAULT_TOL) -> EdgeRegime:
    """Regime of the no-isolation face (O, H, P)."""
    require_valid(p, tol)
    if abs(p.beta) <= tol:
        raise DegenerateParameterError(f"face S_N case boundary: |beta| <= {tol}")
    hp_det = p.beta * p.epsilon + p.gamma * p.delta  # det of the H/P payoff block
    v_o = _vertex_state_in_face(p, "S_N", "O", tol)
    v_h = _vertex_state_in_face(p, "S_N", "H", tol)
    v_p = _vertex_state_in_face(p, "S_N", "P", tol)

    if p.gamma < p.epsilon and p.beta > 0.0:
        pp, fig = (7, "2a") if hp_det > 0.0 else (35, "2b")
        attractors: tuple[StationaryState, ...] = (v_o, v_h, v_p)
    elif p.gamma < p.epsilon:
        pp, fig = (9, "2c") if hp_det > 0.0 else (37, "2d")
        attractors = (v_o, v_p)
    else:
        # branch B-minus: coexistence on the H-P edge attracts when the H/P
        # block determinant is negative
        if hp_det < 0.0:
            pp, fig = 11, "2e"
            attractors = (v_o, _hp_coexistence_state(p, tol, directions="S_N"))
        else:
            pp, fig = 36, "2f"
            attractors = (v_o,)
    return EdgeRegime("S_N", pp, fig, attractors)


def classify_edge_SO(p: Params, tol: float = DEFAULT_TOL) -> EdgeRegime:
    """Regime of the no-offline face (H, P, N)."""
    require_valid(p, tol)
    coex_pay = coexistence_payoff(p)
    if abs(p.eta - coex_pay) <= tol:
        raise DegenerateParameterError("fallback payoff on the coexistence-payoff boundary")
    coex_beats_fallback = p.eta < coex_pay
    v_h = _vertex_state_in_face(p, "S_O", "H", tol)
    v_p = _vertex_state_in_face(p, "S_O", "P", tol)
    v_n = _vertex_state_in_face(p, "S_O", "N", tol)

    if p.gamma < p.epsilon:
        if abs(p.beta - p.eta) <= tol:
            raise DegenerateParameterError(f"face S_O case boundary: |beta-eta| <= {tol}")
        if p.beta > p.eta:
            pp, fig = (7, "3a") if coex_beats_fallback else (35, "3b")
            attractors: tuple[StationaryState, ...] = (v_h, v_p, v_n)
        else:
            pp, fig = (9, "3c") if coex_beats_fallback else (37, "3d")
            attractors = (v_p, v_n)
    else:
        if coex_beats_fallback:
            pp, fig = 11, "3e"
            attractors = (v_n, _hp_coexistence_state(p, tol, directions="S_O"))
        else:
            pp, fig = 36, "3f"
            attractors = (v_n,)
    return EdgeRegime("S_O", pp, fig, attractors)


def classify_edge_SH(p: Params, tol: float = DEFAULT_TOL) -> EdgeRegime:
    """Regime of the no-uncivil face (O, P, N)."""
    require_valid(p, tol)
    # payoff at the O-P mixed state vs the fallback decides the panel
    op_pay = p.alpha * p.epsilon / (p.alpha + p.epsilon)
    if abs(p.eta - op_pay) <= tol:
        raise DegenerateParameterError("fallback payoff on the O-P edge-state boundary")
    pp, fig = (7, "4a") if p.eta < op_pay else (35, "4b")
    attractors = (
        _vertex_state_in_face(p, "S_H", "O", tol),
        _vertex_state_in_face(p, "S_H", "P", tol),
        _vertex_state_in_face(p, "S_H", "N", tol),
    )
    return EdgeRegime("S_H", pp, fig, attractors)


def classify_edge_SP(p: Params, tol: float = DEFAULT_TOL) -> EdgeRegime:
    """Regime of the no-polite face (O, H, N)."""
    require_valid(p, tol)
    if abs(p.beta - p.eta) <= tol:
        raise DegenerateParameterError(f"face S_P case boundary: |beta-eta| <= {tol}")
    v_o = _vertex_state_in_face(p, "S_P", "O", tol)
    v_h = _vertex_state_in_face(p, "S_P", "H", tol)
    v_n = _vertex_state_in_face(p, "S_P", "N", tol)
    if p.beta > p.eta:
        oh_pay = p.alpha * p.beta / (p.alpha + p.beta)
        if abs(p.eta - oh_pay) <= tol:
            raise DegenerateParameterError("fallback payoff on the O-H edge-state boundary")
        pp, fig = (7, "5a") if p.eta < oh_pay else (35, "5b")
        attractors: tuple[StationaryState, ...] = (v_o, v_h, v_n)
    else:
        pp, fig = 37, "5c"
        attractors = (v_o, v_n)
    return EdgeRegime("S_P", pp, fig, attractors)


# faces containing each candidate global attractor
_MEMBERSHIP = {
    "O": ("S_N", "S_H", "S_P"),
    "H": ("S_N", "S_O", "S_P"),
    "P": ("S_N", "S_O", "S_H"),
    "N": ("S_O", "S_H", "S_P"),
    "H+P": ("S_N", "S_O"),
}


def classify_global(p: Params, tol: float = DEFAULT_TOL, strict: bool = True) -> RegimeReport:
    """Classify all four boundary faces and compose the global attractor set.

    A state attracts from the full simplex exactly when it attracts within
    every boundary face containing it.  With ``strict=False`` a face whose
    classification hits a degenerate boundary is reported as None instead of
    raising, the global set is left empty, and the report is flagged.
    """
    if strict:
        validation = require_valid(p, tol)
    else:
        # degeneracy outranks the admissibility checks, matching require_valid:
        # a boundary point is reported as degenerate, not rejected as invalid
        validation = validate(p, tol)
        if not validation.degenerate_quantities and not (
            validation.positivity_ok and validation.nondominance_ok
        ):
            raise InvalidParameterError("; ".join(validation.messages) or "invalid parameters")

    edge_fns = (classify_edge_SN, classify_edge_SO, classify_edge_SH, classify_edge_SP)
    edges: list[EdgeRegime | None] = []
    degenerate = bool(validation.degenerate_quantities)
    for fn in edge_fns:
        try:
            edges.append(fn(p, tol))
        except DegenerateParameterError:
            if strict:
                raise
            edges.append(None)
            degenerate = True

    global_attractors: tuple[StationaryState, ...] = ()
    welfare = None
    if not degenerate:
        by_face = {e.edge: {s.label for s in e.attractors} for e in edges}
        winners: list[StationaryState] = []
        for label, faces in _MEMBERSHIP.items():
            if all(label in by_face[f] for f in faces):
                if label == "H+P":
                    winners.append(_hp_coexistence_state(p, tol, directions="global"))
                else:
                    winners.append(_vertex_state_global(p, label, tol))
        global_attractors = tuple(winners)

        from .welfare import welfare_report  # deferred: welfare consumes these types

        welfare = welfare_report(global_attractors, p, tol)

    return RegimeReport(
        params=p,
        validation=validation,
        edges=tuple(edges),
        global_attractors=global_attractors,
        global_case=validation.branch or "none",
        welfare=welfare,
        degenerate=degenerate,
    )
