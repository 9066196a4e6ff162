"""
Variety Logic Module

Point counting over F_{q^m}, smoothness probing and the dimension/Betti
bookkeeping that fixes the degrees of the Weil factorization.

Projective points are walked as normalized representatives: block k holds the
points whose first nonzero coordinate is x_k = 1, with x_{k+1}..x_n free. All
coordinates are carried as discrete logarithms so a form is evaluated with
additions of exponents and one Zech lookup per term.
"""

import itertools
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from finite_field import LOG_ZERO, GaloisField, make_field
from utils.config import get_config
from utils.exceptions import InputError, SizeExceeded, UnsupportedVariety
from utils.logging import get_logger, log_enumeration
from variety.schemas import (
    CountVector,
    Exponents,
    HomogeneousPolynomial,
    Hypersurface,
    PlaneCurve,
    Product,
    ProjectiveSpace,
    SmoothnessVerdict,
)

logger = get_logger(__name__)

# (coefficient log, ((variable index, exponent), ...)) per nonzero term mod p
CompiledForm = Tuple[Tuple[int, Tuple[Tuple[int, int], ...]], ...]


def dimension(v) -> int:
    """Dimension of the variety described by ``v``."""
    if isinstance(v, ProjectiveSpace):
        return v.n
    if isinstance(v, (Hypersurface, PlaneCurve)):
        return v.n - 1
    if isinstance(v, Product):
        return dimension(v.left) + dimension(v.right)
    raise UnsupportedVariety(f"unknown variety kind {type(v).__name__}", kind=type(v).__name__)


def betti_degrees(v, hodge_provider: Optional[Callable] = None) -> List[int]:
    """
    Betti numbers b_0..b_{2d}.

    Args:
        v: Variety expression
        hodge_provider: Callable returning a diamond with ``d`` and ``h[j][i]``;
            defaults to the hodge module

    Returns:
        List of 2d+1 Betti numbers; products use the Künneth convolution of
        the factors' vectors
    """
    if isinstance(v, Product):
        left = betti_degrees(v.left, hodge_provider)
        right = betti_degrees(v.right, hodge_provider)
        out = [0] * (len(left) + len(right) - 1)
        for i, a in enumerate(left):
            for j, b in enumerate(right):
                out[i + j] += a * b
        return out
    if hodge_provider is None:
        from hodge import hodge_of

        hodge_provider = hodge_of
    diamond = hodge_provider(v)
    d = diamond.d
    return [
        sum(diamond.h[j][m - j] for j in range(max(0, m - d), min(m, d) + 1))
        for m in range(2 * d + 1)
    ]


def _projective_size(Q: int, n: int) -> int:
    return (Q ** (n + 1) - 1) // (Q - 1)


def _check_guard(requested: int, max_points: Optional[int]) -> None:
    bound = max_points or get_config().max_points
    if requested > bound:
        raise SizeExceeded(
            f"search space of {requested} points exceeds bound {bound}", bound=bound, requested=requested
        )


def compile_form(terms: Dict[Exponents, int], field: GaloisField) -> CompiledForm:
    """Reduce integer coefficients into the field and switch them to log form."""
    log = field.log_table
    compiled = []
    for exps, c in sorted(terms.items()):
        code = field.from_integer(c)
        if code == 0:
            continue
        powers = tuple((i, e) for i, e in enumerate(exps) if e)
        compiled.append((log[code], powers))
    return tuple(compiled)


def evaluate_log(form: CompiledForm, coords: Sequence[int], order: int, zech: Sequence[int]) -> int:
    """Value of a compiled form at a point given in log coordinates, in log form."""
    acc = LOG_ZERO
    for coef_log, powers in form:
        t = coef_log
        for i, e in powers:
            x = coords[i]
            if x == LOG_ZERO:
                t = LOG_ZERO
                break
            t += e * x
        if t == LOG_ZERO:
            continue
        t %= order
        if acc == LOG_ZERO:
            acc = t
        else:
            z = zech[(t - acc) % order]
            acc = LOG_ZERO if z == LOG_ZERO else (acc + z) % order
    return acc


def normalized_points(
    nvars: int, order: int, block: int, heads: Optional[Sequence[int]] = None
) -> Iterator[Tuple[int, ...]]:
    """
    Normalized representatives of block ``block`` in log coordinates.

    ``heads`` restricts the first free coordinate to the given log values, which
    is how the enumeration is partitioned across workers.
    """
    values = [LOG_ZERO] + list(range(order))
    prefix = (LOG_ZERO,) * block + (0,)
    free = nvars - block - 1
    if free == 0:
        yield prefix
        return
    first = values if heads is None else heads
    for head in first:
        for tail in itertools.product(values, repeat=free - 1):
            yield prefix + (head,) + tail


def _count_zeros_task(payload) -> int:
    p, degree, form, nvars, block, heads = payload
    field = make_field(p, degree)
    order = field.q - 1
    zech = field.zech_table
    return sum(
        1
        for point in normalized_points(nvars, order, block, heads)
        if evaluate_log(form, point, order, zech) == LOG_ZERO
    )


def _partition(nvars: int, order: int, workers: int) -> List[Tuple[int, Optional[Tuple[int, ...]]]]:
    values = [LOG_ZERO] + list(range(order))
    tasks: List[Tuple[int, Optional[Tuple[int, ...]]]] = []
    for block in range(nvars):
        if block == nvars - 1 or workers <= 1:
            tasks.append((block, None))
            continue
        step = -(-len(values) // workers)
        for start in range(0, len(values), step):
            tasks.append((block, tuple(values[start:start + step])))
    return tasks


def count_hypersurface(
    f: HomogeneousPolynomial,
    field: GaloisField,
    m: int,
    max_points: Optional[int] = None,
    workers: Optional[int] = None,
) -> int:
    """
    Number of F_{q^m}-points of V(f) in P^{nvars-1}.

    The result does not depend on ``workers``: the same disjoint blocks are
    summed either in-process or across a process pool.
    """
    ext = field.extension(m)
    nvars = f.nvars
    _check_guard(_projective_size(ext.q, nvars - 1), max_points)
    form = compile_form(f.as_dict(), ext)
    workers = workers or get_config().count_workers
    tasks = [
        (ext.p, ext.k, form, nvars, block, heads)
        for block, heads in _partition(nvars, ext.q - 1, workers)
    ]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            total = sum(pool.map(_count_zeros_task, tasks))
    else:
        total = sum(_count_zeros_task(task) for task in tasks)
    log_enumeration("count_points", _projective_size(ext.q, nvars - 1))
    logger.debug("counted hypersurface points", q=ext.q, m=m, points=total, workers=workers)
    return total


def count_points(
    v,
    field: GaloisField,
    m: int,
    max_points: Optional[int] = None,
    workers: Optional[int] = None,
    by_enumeration: bool = False,
) -> int:
    """
    Exact number of F_{q^m}-rational points of ``v``.

    Args:
        v: Variety expression
        field: Base field F_q
        m: Extension degree
        max_points: Override of the configured enumeration bound
        workers: Worker processes for hypersurface enumeration
        by_enumeration: Walk the normalized points of P^n instead of using the
            closed form (used to cross-check the enumerator)

    Returns:
        N_m as an integer

    Raises:
        SizeExceeded: if an enumerated search space is above the bound
    """
    if m < 1:
        raise InputError(f"extension degree must be positive, got {m}", error_code="VALIDATION_ERROR")
    if isinstance(v, ProjectiveSpace):
        Q = field.q ** m
        if not by_enumeration:
            return _projective_size(Q, v.n)
        _check_guard(_projective_size(Q, v.n), max_points)
        order = Q - 1
        total = sum(
            1 for block in range(v.n + 1) for _ in normalized_points(v.n + 1, order, block)
        )
        log_enumeration("count_points", total)
        return total
    if isinstance(v, (Hypersurface, PlaneCurve)):
        return count_hypersurface(v.f, field, m, max_points=max_points, workers=workers)
    if isinstance(v, Product):
        return count_points(v.left, field, m, max_points, workers, by_enumeration) * count_points(
            v.right, field, m, max_points, workers, by_enumeration
        )
    raise UnsupportedVariety(f"cannot count points of {type(v).__name__}", kind=type(v).__name__)


def count_vector(
    v, field: GaloisField, terms: int, max_points: Optional[int] = None, workers: Optional[int] = None
) -> CountVector:
    """N_1..N_terms by direct counting."""
    counts = [count_points(v, field, m, max_points=max_points, workers=workers) for m in range(1, terms + 1)]
    logger.info("point counts collected", variety=str(v), q=field.q, counts=counts)
    return CountVector(p=field.p, k=field.k, counts=counts)


def _probe_hypersurface(
    f: HomogeneousPolynomial, field: GaloisField, depth: int, max_points: Optional[int]
) -> SmoothnessVerdict:
    nvars = f.nvars
    for m in range(1, depth + 1):
        ext = field.extension(m)
        _check_guard(_projective_size(ext.q, nvars - 1), max_points)
        order = ext.q - 1
        zech = ext.zech_table
        forms = [compile_form(f.as_dict(), ext)] + [
            compile_form(f.derivative(i), ext) for i in range(nvars)
        ]
        walked = 0
        for block in range(nvars):
            for point in normalized_points(nvars, order, block):
                walked += 1
                if all(evaluate_log(form, point, order, zech) == LOG_ZERO for form in forms):
                    log_enumeration("smoothness_probe", walked)
                    witness = [
                        list(ext.decode(0 if x == LOG_ZERO else ext.exp_table[x])) for x in point
                    ]
                    logger.warning("singular point found", m=m, witness=witness)
                    return SmoothnessVerdict(
                        verdict="singular_point_found", depth=depth, extension_degree=m, witness=witness
                    )
        log_enumeration("smoothness_probe", walked)
    return SmoothnessVerdict(verdict="probably_smooth", depth=depth)


def smoothness_probe(v, field: GaloisField, depth: int = 1, max_points: Optional[int] = None) -> SmoothnessVerdict:
    """
    Search for a common zero of f and all its partials over F_{q^m}, m <= depth.

    ``probably_smooth`` only means no singular point was seen; it is not a proof.
    Projective spaces are smooth; a product is probed factor by factor.
    """
    if depth < 1:
        raise InputError("probe depth must be positive", error_code="VALIDATION_ERROR")
    if isinstance(v, ProjectiveSpace):
        return SmoothnessVerdict(verdict="probably_smooth", depth=depth)
    if isinstance(v, (Hypersurface, PlaneCurve)):
        return _probe_hypersurface(v.f, field, depth, max_points)
    if isinstance(v, Product):
        for side in (v.left, v.right):
            verdict = smoothness_probe(side, field, depth, max_points)
            if not verdict.is_smooth:
                return verdict
        return SmoothnessVerdict(verdict="probably_smooth", depth=depth)
    raise UnsupportedVariety(f"cannot probe {type(v).__name__}", kind=type(v).__name__)
