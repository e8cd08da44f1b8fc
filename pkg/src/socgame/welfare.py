"""Welfare comparison of the attracting states.

Every attractor pays its supported strategies one common value, so attractors
are ranked by that single number.  Two facts hold for every admissible
parameter point and are enforced here rather than assumed: the isolation
state N pays strictly less than any other attractor (whatever traps the
population in N is never welfare-optimal), and when the uncivil/polite
coexistence state attracts, its payoff lies strictly between the all-polite
payoff epsilon and the all-uncivil payoff beta, above the fallback eta.

The one comparison deliberately left open is all-offline O versus the
coexistence state: their payoffs can fall either way depending on parameters,
so the pair is reported as incomparable instead of ordered by this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

from .model import DEFAULT_TOL, Params, payoff_vector

if TYPE_CHECKING:  # pragma: no cover
    from .classify import StationaryState


class OrderingViolationError(ValueError):
    """A proven welfare inequality failed; inputs are inconsistent."""


@dataclass(frozen=True)
class WelfareReport:
    payoffs: tuple[tuple[str, float], ...]  # (label, payoff), best first
    ordering: tuple[tuple[str, ...], ...]  # payoff-tie groups, best first
    trap_dominated: bool  # some attractor strictly beats isolation
    incomparable: tuple[tuple[str, str], ...]

    def as_dict(self) -> dict:
        return {
            "payoffs": {label: v for label, v in self.payoffs},
            "ordering": [list(g) for g in self.ordering],
            "trap_dominated": self.trap_dominated,
            "incomparable": [list(pair) for pair in self.incomparable],
        }


def stationary_payoff(state: "StationaryState", p: Params) -> float:
    """Common payoff of the supported strategies at a stationary state.

    Stationarity means every supported strategy earns exactly the population
    mean; a spread across the support beyond rounding is a non-stationary
    input and is rejected.
    """
    pi = payoff_vector(state.location, p)
    idx = {"O": 0, "H": 1, "P": 2, "N": 3}
    vals = [pi[idx[s]] for s in state.support]
    scale = max(1.0, max(abs(v) for v in vals))
    if max(vals) - min(vals) > 1e-9 * scale:
        raise ValueError(
            f"supported payoffs differ at {state.label}: {vals}; not a stationary state"
        )
    return vals[0]


def welfare_report(attractors: Sequence["StationaryState"], p: Params,
                   tol: float = DEFAULT_TOL) -> WelfareReport:
    """Rank the attractors by payoff and check the proven inequalities.

    Raises OrderingViolationError if isolation is not strictly the worst
    attractor, or if an attracting coexistence state escapes the open
    interval (beta, epsilon) or fails to beat eta.
    """
    pay = {a.label: stationary_payoff(a, p) for a in attractors}

    if "N" in pay:
        for label, v in pay.items():
            if label != "N" and v <= p.eta + tol:
                raise OrderingViolationError(
                    f"attractor {label} pays {v}, not strictly above isolation {p.eta}"
                )
    if "H+P" in pay:
        v = pay["H+P"]
        if not (p.beta + tol < v < p.epsilon - tol):
            raise OrderingViolationError(
                f"coexistence payoff {v} outside ({p.beta}, {p.epsilon})"
            )
        if v <= p.eta + tol:
            raise OrderingViolationError(
                f"coexistence payoff {v} does not beat the fallback {p.eta}"
            )

    ranked = sorted(pay.items(), key=lambda kv: (-kv[1], kv[0]))
    groups: list[list[str]] = []
    group_val: float | None = None
    for label, v in ranked:
        if group_val is not None and abs(v - group_val) <= tol:
            groups[-1].append(label)
        else:
            groups.append([label])
            group_val = v

    incomparable: tuple[tuple[str, str], ...] = ()
    if "O" in pay and "H+P" in pay:
        incomparable = (("O", "H+P"),)

    return WelfareReport(
        payoffs=tuple(ranked),
        ordering=tuple(tuple(g) for g in groups),
        trap_dominated=len(pay) >= 2,
        incomparable=incomparable,
    )
