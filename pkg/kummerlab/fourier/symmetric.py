"""Elementary symmetric polynomials of nonnegative weights."""
from typing import Sequence, Tuple

from kummerlab.utils.exceptions import ValidationError


def elem_sym(weights: Sequence[float], a: int) -> float:
    """e_a(weights) by the one-dimensional recurrence; e_0 = 1."""
    if not 0 <= a <= len(weights):
        raise ValidationError(f"order {a} outside 0..{len(weights)}", {"a": a, "length": len(weights)})
    e = [1.0] + [0.0] * a
    for i, w in enumerate(weights):
        for j in range(min(i + 1, a), 0, -1):
            e[j] += w * e[j - 1]
    return e[a]


def pivot_identity(weights: Sequence[float], k: int) -> Tuple[float, float]:
    """(sum_p w_p e_{k-1}(w without p), k e_k(w)); the two sides agree."""
    if not 1 <= k <= len(weights):
        raise ValidationError(f"pivot order {k} outside 1..{len(weights)}", {"k": k, "length": len(weights)})
    lhs = sum(w * elem_sym(list(weights[:i]) + list(weights[i + 1:]), k - 1) for i, w in enumerate(weights))
    return lhs, k * elem_sym(weights, k)
