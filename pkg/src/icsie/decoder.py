"""Syndrome decoding at a receiver with a partly corrupted cache.

Works on the error-free broadcast channel (delta_c = 0).  The receiver
projects the cache-corrected codeword through a matrix H annihilating
both the demand row and the interference rows; the resulting syndrome
is matched by a low-support combination of cache rows (the suspected
cache errors); subtracting that correction leaves the demand visible
through a second matrix H_e that annihilates only the interference rows.
Which admissible correction is found does not matter: all of them differ
by interference-row combinations only, which H_e removes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DegenerateError, InconsistentError, NoSolutionError
from .linalg import Matrix, vec_sub
from .sigraph import SideInfoGraph


@dataclass(frozen=True)
class ReceiverContext:
    receiver: int
    demand: int                       # packet index f(i)
    cache: tuple[int, ...]            # X_i ascending
    interference: tuple[int, ...]     # Y_i ascending
    demand_row: tuple[int, ...]       # G_{f(i)}
    G_cache: Matrix                   # rows G_{X_i}
    H: Matrix                         # annihilates demand + interference rows
    H_e: Matrix                       # annihilates interference rows only


@dataclass(frozen=True)
class DecodeTrace:
    syndrome: tuple[int, ...]
    correction: tuple[int, ...]
    suspected: tuple[int, ...]        # cache packet indices blamed by the correction
    value: int


def build_context(G: Matrix, graph: SideInfoGraph, i: int) -> ReceiverContext:
    """Precompute the per-receiver decoding matrices.

    H and H_e are full null-space bases (deterministic, echelon-derived);
    callers comparing against externally given matrices should compare
    row spaces, not entries.
    """
    if G.nrows != graph.n:
        raise ValueError(f"G must have n = {graph.n} rows")
    fpkt = graph.f[i - 1]
    cache = tuple(sorted(graph.X[i - 1]))
    interf = tuple(sorted(graph.y_set(i)))
    demand_row = G.row(fpkt)
    G_y = G.submatrix_rows(interf) if interf else Matrix(G.field, [], ncols=G.ncols)
    if G_y.in_row_span(demand_row):
        raise DegenerateError(
            f"demand row of receiver {i} lies in the interference row span; "
            f"G is not a valid generator for this instance")
    H = G.submatrix_rows(set(interf) | {fpkt}).null_space_basis()
    H_e = G_y.null_space_basis()
    return ReceiverContext(
        receiver=i, demand=fpkt, cache=cache, interference=interf,
        demand_row=demand_row, G_cache=G.submatrix_rows(cache), H=H, H_e=H_e)


def find_correction(ctx: ReceiverContext, syndrome, delta_s: int
                    ) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """A combination of at most delta_s cache rows matching the syndrome.

    Searched by support size, then lexicographically over supports and
    coefficients, so the result is deterministic.  Returns the
    correction vector and the blamed cache packet indices.
    """
    field = ctx.G_cache.field
    q = field.q
    rows = ctx.G_cache.rows
    syndrome = tuple(syndrome)
    zero = tuple([0] * ctx.G_cache.ncols)
    for t in range(0, delta_s + 1):
        for support in itertools.combinations(range(len(rows)), t):
            for coeffs in itertools.product(range(1, q), repeat=t):
                p = zero
                for j, c in zip(support, coeffs):
                    p = tuple(field.add(a, field.mul(c, b))
                              for a, b in zip(p, rows[j]))
                if tuple(ctx.H.mul_col(p)) == syndrome:
                    return p, tuple(ctx.cache[j] for j in support)
    raise NoSolutionError(
        f"receiver {ctx.receiver}: no correction with support <= {delta_s}; "
        f"more cache errors than allowed, or an invalid generator")


def decode_receiver(G: Matrix, graph: SideInfoGraph, i: int, y, x_hat,
                    delta_s: int,
                    forced_correction=None) -> tuple[int, DecodeTrace]:
    """Recover the demanded symbol of receiver i from codeword y and the
    cache snapshot x_hat (entries in ascending cache order).

    Requires an error-free channel (y = xG exactly) and at most delta_s
    wrong cache entries.  forced_correction bypasses the search, for
    exercising alternative admissible corrections.
    """
    ctx = build_context(G, graph, i)
    field = G.field
    if len(x_hat) != len(ctx.cache):
        raise ValueError(
            f"receiver {i} caches {len(ctx.cache)} packets, got {len(x_hat)}")
    corrected = vec_sub(field, y, ctx.G_cache.vec_mul(x_hat))
    syndrome = tuple(ctx.H.mul_col(corrected))
    if forced_correction is not None:
        p = tuple(forced_correction)
        if tuple(ctx.H.mul_col(p)) != syndrome:
            raise InconsistentError("forced correction does not match the syndrome")
        suspected: tuple[int, ...] = ()
    else:
        p, suspected = find_correction(ctx, syndrome, delta_s)
    cleaned = vec_sub(field, corrected, p)
    # cleaned = x_f * demand_row + (interference combination); project by H_e
    value = None
    for h in ctx.H_e.rows:
        a = _dot(field, h, ctx.demand_row)
        b = _dot(field, h, cleaned)
        if a != 0:
            v = field.mul(b, field.inv(a))
            if value is None:
                value = v
            elif value != v:
                raise InconsistentError(
                    f"receiver {i}: projection rows disagree on the demand value")
        elif b != 0:
            raise InconsistentError(
                f"receiver {i}: cleaned word not in the expected row span")
    if value is None:
        raise DegenerateError(
            f"receiver {i}: no projection row sees the demand row")
    return value, DecodeTrace(syndrome=syndrome, correction=p,
                              suspected=suspected, value=value)


def _dot(field, a, b):
    acc = 0
    for x, y in zip(a, b, strict=True):
        acc = field.add(acc, field.mul(x, y))
    return acc


def decode_all(G: Matrix, graph: SideInfoGraph, y, x_hat_by_receiver: dict,
               delta_s: int) -> dict[int, tuple[int, DecodeTrace]]:
    """decode_receiver for every receiver with a provided cache snapshot."""
    out = {}
    for i, x_hat in sorted(x_hat_by_receiver.items()):
        out[i] = decode_receiver(G, graph, i, y, x_hat, delta_s)
    return out
