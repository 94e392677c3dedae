"""Evidential-support scoring for partial explanations.

The central score is the generalized Bayes factor GBF(x; e), the
likelihood ratio P(e|x) / P(e|not-x) of a hypothesis against everything
else.  It is computed here in odds form,

    GBF = [P(x|e) (1 - P(x))] / [P(x) (1 - P(x|e))],

which needs only two inference calls and is algebraically identical to
the likelihood-ratio definition.  The ratio-of-belief-update-ratios form
is kept as an explicit cross-check.

Scores are extended non-negative reals: 0.0 and float('inf') are legal
values; hypotheses with prior exactly 0 or 1 are rejected instead of
scored, since "alternatives to x" would be empty or everything.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateExplanation
from .inference import posterior_probability, prior_probability
from .network import Assignment, Network, require_disjoint


@dataclass(frozen=True)
class ScoreBundle:
    """A score together with the probabilities it was derived from."""

    gbf: float
    prior: float
    posterior: float
    belief_update_ratio: float


def ratio_from_probabilities(prior: float, posterior: float) -> float:
    """posterior/prior with the degenerate corners pinned down."""
    if prior > 0.0:
        return posterior / prior
    return math.inf if posterior > 0.0 else 1.0


def gbf_from_probabilities(prior: float, posterior: float) -> float:
    """Odds-form score from P(x) and P(x|e).

    Raises for prior 0 or 1; maps posterior 0 / 1 to the extreme scores.
    """
    if prior <= 0.0:
        raise DegenerateExplanation("explanation has prior probability 0")
    if prior >= 1.0:
        raise DegenerateExplanation(
            "explanation has prior probability 1; no alternative exists"
        )
    if posterior <= 0.0:
        return 0.0
    if posterior >= 1.0:
        return math.inf
    return (posterior * (1.0 - prior)) / (prior * (1.0 - posterior))


def bundle_from_probabilities(prior: float, posterior: float) -> ScoreBundle:
    return ScoreBundle(
        gbf=gbf_from_probabilities(prior, posterior),
        prior=prior,
        posterior=posterior,
        belief_update_ratio=ratio_from_probabilities(prior, posterior),
    )


def belief_update_ratio(net: Network, x: Assignment, e: Assignment) -> float:
    """P(x|e) / P(x); 1.0 when both vanish, +inf when only the prior does."""
    require_disjoint(("x", x), ("e", e))
    prior = prior_probability(net, x)
    posterior = posterior_probability(net, x, e)
    return ratio_from_probabilities(prior, posterior)


def gbf(net: Network, x: Assignment, e: Assignment) -> float:
    """Generalized Bayes factor of x given e, in odds form."""
    require_disjoint(("x", x), ("e", e))
    prior = prior_probability(net, x)
    posterior = posterior_probability(net, x, e)
    return gbf_from_probabilities(prior, posterior)


def score_bundle(net: Network, x: Assignment, e: Assignment) -> ScoreBundle:
    require_disjoint(("x", x), ("e", e))
    prior = prior_probability(net, x)
    posterior = posterior_probability(net, x, e)
    return bundle_from_probabilities(prior, posterior)


def gbf_ratio_form(net: Network, x: Assignment, e: Assignment) -> float:
    """GBF as r(x;e) / r(not-x;e); exists as a numerical cross-check."""
    require_disjoint(("x", x), ("e", e))
    prior = prior_probability(net, x)
    posterior = posterior_probability(net, x, e)
    if prior <= 0.0:
        raise DegenerateExplanation("explanation has prior probability 0")
    if prior >= 1.0:
        raise DegenerateExplanation(
            "explanation has prior probability 1; no alternative exists"
        )
    r_x = posterior / prior
    r_alt = (1.0 - posterior) / (1.0 - prior)
    if r_alt <= 0.0:
        return math.inf
    return r_x / r_alt


def cbf(net: Network, y: Assignment, x: Assignment, e: Assignment) -> float:
    """Conditional Bayes factor of the addition y given the explanation x.

    Computed in conditional odds form from P(y|x) and P(y|x,e); low values
    mean y adds nothing once x is assumed (the explaining-away signature).
    """
    if not y:
        raise ValueError("y must be non-empty")
    if not x:
        raise ValueError("x must be non-empty")
    require_disjoint(("y", y), ("x", x), ("e", e))
    p_x = prior_probability(net, x)
    if p_x <= 0.0:
        raise DegenerateExplanation("conditioning explanation has prior 0")
    p_y_x = prior_probability(net, {**x, **y}) / p_x
    p_y_xe = posterior_probability(net, y, {**x, **e})
    if p_y_x <= 0.0 or p_y_x >= 1.0:
        raise DegenerateExplanation(
            "P(y|x) is 0 or 1; the conditional alternative is degenerate"
        )
    if p_y_xe <= 0.0:
        return 0.0
    if p_y_xe >= 1.0:
        return math.inf
    return (p_y_xe * (1.0 - p_y_x)) / (p_y_x * (1.0 - p_y_xe))


def inclusion_boundary(net: Network, x: Assignment, e: Assignment) -> float:
    """Relevance threshold for growing x: (1 - P(x)) / (1 - P(x|e)).

    An addition y raises the GBF of x exactly when its conditional Bayes
    factor exceeds this value.
    """
    require_disjoint(("x", x), ("e", e))
    prior = prior_probability(net, x)
    posterior = posterior_probability(net, x, e)
    if prior <= 0.0:
        raise DegenerateExplanation("explanation has prior probability 0")
    if prior >= 1.0:
        raise DegenerateExplanation(
            "explanation has prior probability 1; no alternative exists"
        )
    if posterior >= 1.0:
        raise DegenerateExplanation(
            "posterior is 1; the inclusion boundary is infinite"
        )
    return (1.0 - prior) / (1.0 - posterior)
