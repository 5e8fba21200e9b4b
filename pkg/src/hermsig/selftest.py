"""Built-in verification suites.

Three suites, each a list of named checks:

``paper-values``
    recomputes the closed-form trace signatures of the standard algebras
    over the rationals and the nil locus of the shipped twisted
    quaternion algebra, then confirms the shipped reference constants.

``oracles``
    draws random diagonal hermitian forms over split models and checks
    the pairing signature and the absolute signature against the
    classical eigenvalue count computed through the splitting.

``properties``
    structural identities of twisted signatures: continuity at
    breakpoints, additivity, multiplicativity under quadratic twists,
    the pivot identity, and the rank bound.

Every check runs to completion even when earlier ones fail; a failing
check carries the counterexample in its detail string.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random
from typing import Callable

from .azumaya import (
    AlgebraPresentation,
    classify_at,
    matrix_algebra,
    nil_set,
    product_with_exchange,
    quaternion_algebra,
    split_model,
    tensor_product,
)
from .constructible import HalfSpace, sets_equal
from .errors import ValidationError
from .hermitian import (
    HermitianForm,
    abs_signature_at,
    classical_signature_oracle,
    find_reference_form,
    quad_tensor,
    star,
    star_signature,
    total_eta_signature,
)
from .polynomials import Polynomial
from .quadform import QuadraticForm, total_signature
from .sper import Ring, TheOrdering, point_at
from .stepfun import continuity_failures, step_combine

Check = tuple[str, bool, str]

SUITES = ("paper-values", "oracles", "properties")

_Q = Ring.rationals()
_ORD = TheOrdering()
_X = Polynomial.x()


def _run(name: str, fn: Callable[[], str]) -> Check:
    try:
        return name, True, fn()
    except Exception as exc:  # counterexamples surface as failures
        return name, False, f"{type(exc).__name__}: {exc}"


def _expect(cond: bool, detail: str) -> None:
    if not cond:
        raise AssertionError(detail)


# -- paper-values ------------------------------------------------------


def _check_quaternion_trace_gram() -> str:
    cases = [(_Q, -1, -1), (_Q, 2, -3), (Ring.polynomials(), _X, -1)]
    for ring, a, b in cases:
        alg = quaternion_algebra(ring, a, b)
        a_, b_ = ring.coerce(a), ring.coerce(b)
        want = [ring.coerce(2), 2 * a_, 2 * b_, -2 * a_ * b_]
        got = alg.trace_form().diagonal_entries()
        _expect(got == want, f"({a},{b}): trace gram {got}, expected {want}")
    return f"{len(cases)} quaternion trace grams"


def _check_trace_signatures() -> str:
    table: list[tuple[str, AlgebraPresentation, int]] = [
        ("hamilton", quaternion_algebra(_Q, -1, -1), -2),
    ]
    for n in (1, 2, 3):
        table.append((f"matrix-{n}", matrix_algebra(_Q, n), n))
    table.append(
        (
            "matrix-2-hamilton",
            tensor_product(matrix_algebra(_Q, 2), quaternion_algebra(_Q, -1, -1)),
            -4,
        )
    )
    for n in (1, 2):
        table.append(
            (f"exchange-matrix-{n}", product_with_exchange(matrix_algebra(_Q, n)), 2 * n)
        )
    table.append(
        ("exchange-hamilton", product_with_exchange(quaternion_algebra(_Q, -1, -1)), -4)
    )
    for name, alg, want in table:
        got = classify_at(alg, _ORD).trace_signature
        _expect(got == want, f"{name}: trace signature {got}, expected {want}")
    return f"{len(table)} closed-form signatures"


def _check_nil_locus() -> str:
    alg = quaternion_algebra(Ring.localized(_X), _X, -1)
    _expect(
        sets_equal(alg.ring, nil_set(alg), HalfSpace(_X)),
        "nil locus of the twisted quaternions is not the open half line",
    )
    neg = classify_at(alg, point_at(Fraction(-1)))
    _expect(neg.divisor == 2, f"divisor {neg.divisor} at -1, expected 2")
    return "nil locus and divisor confirmed"


def _check_reference_constants() -> str:
    targets = [
        ("matrix line", matrix_algebra(Ring.polynomials(), 2), 2),
        ("hamilton", quaternion_algebra(_Q, -1, -1), 1),
        ("twisted line", quaternion_algebra(Ring.localized(_X), _X, -1), 1),
    ]
    for name, alg, want in targets:
        ref = find_reference_form(alg)
        _expect(
            ref.constant == want,
            f"{name}: reference constant {ref.constant}, expected {want}",
        )
    return f"{len(targets)} reference constants"


def paper_values_suite(seed: int = 0) -> list[Check]:
    return [
        _run("quaternion-trace-gram", _check_quaternion_trace_gram),
        _run("trace-signatures", _check_trace_signatures),
        _run("nil-locus", _check_nil_locus),
        _run("reference-constants", _check_reference_constants),
    ]


# -- oracles -----------------------------------------------------------


def _random_diagonal(a: AlgebraPresentation, rng: Random) -> HermitianForm:
    sd = a.split_data
    fib, n, mf = sd.fiber, sd.n, sd.fiber.m
    vec = [Fraction(0)] * a.m
    for p in range(n):
        vec[(p * n + p) * mf] = Fraction(rng.randint(-3, 3))
    for p in range(n):
        for q in range(p + 1, n):
            coords = [Fraction(rng.randint(-2, 2)) for _ in range(mf)]
            for u, c in enumerate(coords):
                vec[(p * n + q) * mf + u] = c
            for u, c in enumerate(fib.apply_involution(coords)):
                vec[(q * n + p) * mf + u] = c
    return HermitianForm.diagonal(a, [vec])


def _oracle_models() -> list[AlgebraPresentation]:
    return [
        split_model(_Q, n, kind)
        for kind in ("rational", "gauss", "hamilton")
        for n in (1, 2)
    ]


def _check_pairing_oracle(seed: int) -> str:
    rng = Random(seed)
    pairs = 0
    for a in _oracle_models():
        lam = classify_at(a, _ORD).divisor
        rz = a.centre_rank
        for _ in range(2):
            h1, h2 = _random_diagonal(a, rng), _random_diagonal(a, rng)
            s1 = classical_signature_oracle(h1)
            s2 = classical_signature_oracle(h2)
            got = star_signature(h1, h2, _ORD)
            want = rz * lam * lam * s1 * s2
            _expect(
                got == want,
                f"{a.label}: pairing {got}, expected {want} "
                f"(counts {s1}, {s2}, divisor {lam})",
            )
            pairs += 1
    return f"{pairs} random pairs against the eigenvalue count"


def _check_abs_oracle(seed: int) -> str:
    rng = Random(seed + 1)
    forms = 0
    for a in _oracle_models():
        for _ in range(3):
            h = _random_diagonal(a, rng)
            got = abs_signature_at(h, _ORD)
            want = abs(classical_signature_oracle(h))
            _expect(got == want, f"{a.label}: absolute {got}, expected {want}")
            forms += 1
    return f"{forms} random forms against the eigenvalue count"


def oracles_suite(seed: int = 0) -> list[Check]:
    return [
        _run("pairing-matches-count", lambda: _check_pairing_oracle(seed)),
        _run("absolute-matches-count", lambda: _check_abs_oracle(seed)),
    ]


# -- properties --------------------------------------------------------


def _property_fixtures() -> list[tuple[AlgebraPresentation, object, list[HermitianForm]]]:
    """Algebras with certified references and nonsingular probe forms."""
    out = []
    m2x = matrix_algebra(Ring.polynomials(), 2)
    quatx = quaternion_algebra(Ring.localized(_X), _X, -1)
    for alg in (m2x, quatx):
        ref = find_reference_form(alg)
        one = HermitianForm.unit(alg)
        x_scaled = quad_tensor(
            QuadraticForm.diagonal(alg.ring, [alg.ring.coerce(_X)]), one
        )
        probes = [one, x_scaled, one.direct_sum(x_scaled.negated())]
        out.append((alg, ref, probes))
    return out


def _check_continuity() -> str:
    checked = 0
    for alg, ref, probes in _property_fixtures():
        for h in probes:
            # the guarantee only covers nonsingular forms
            if not h.is_nonsingular():
                continue
            t = total_eta_signature(h, ref)
            failures = continuity_failures(t)
            _expect(
                not failures,
                f"{alg.label}: signature jumps at {failures}",
            )
            checked += 1
    return f"{checked} nonsingular signatures locally constant"


def _check_additivity() -> str:
    checked = 0
    for _alg, ref, probes in _property_fixtures():
        for h1 in probes:
            for h2 in probes:
                lhs = total_eta_signature(h1.direct_sum(h2), ref)
                parts = [total_eta_signature(h1, ref), total_eta_signature(h2, ref)]
                rhs = step_combine(parts, sum)
                _expect(lhs == rhs, f"additivity fails for a pair over {_alg.label}")
                checked += 1
    return f"{checked} direct sums"


def _check_twist_multiplicativity() -> str:
    checked = 0
    for alg, ref, probes in _property_fixtures():
        q = QuadraticForm.diagonal(alg.ring, [alg.ring.coerce(2), alg.ring.coerce(_X)])
        for h in probes:
            lhs = total_eta_signature(quad_tensor(q, h), ref)
            factors = [total_signature(q), total_eta_signature(h, ref)]
            rhs = step_combine(factors, lambda v: v[0] * v[1])
            _expect(lhs == rhs, f"twist identity fails over {alg.label}")
            checked += 1
    return f"{checked} quadratic twists"


def _check_pivot(seed: int) -> str:
    rng = Random(seed + 2)
    checked = 0
    for kind in ("rational", "gauss", "hamilton"):
        a = split_model(_Q, 2, kind)
        for _ in range(2):
            h1, h2, h3 = (_random_diagonal(a, rng) for _ in range(3))
            lhs = quad_tensor(star(h1, h2), h3)
            rhs = quad_tensor(star(h3, h2), h1)
            s_lhs = star_signature(lhs, lhs, _ORD)
            s_rhs = star_signature(rhs, rhs, _ORD)
            _expect(
                s_lhs == s_rhs,
                f"{a.label}: pivot self-pairings differ, {s_lhs} vs {s_rhs}",
            )
            checked += 1
    return f"{checked} pivot triples"


def _check_bound() -> str:
    checked = 0
    for alg, ref, probes in _property_fixtures():
        limit_unit = alg.degree * alg.centre_rank
        for h in probes:
            bound = h.rank * limit_unit
            t = total_eta_signature(h, ref)
            worst = max(abs(v) for v in t.value_map())
            _expect(worst <= bound, f"{alg.label}: value {worst} exceeds {bound}")
            checked += 1
    return f"{checked} forms within the rank bound"


def properties_suite(seed: int = 0) -> list[Check]:
    return [
        _run("continuity", _check_continuity),
        _run("additivity", _check_additivity),
        _run("twist-multiplicativity", _check_twist_multiplicativity),
        _run("pivot", lambda: _check_pivot(seed)),
        _run("rank-bound", _check_bound),
    ]


def run_suite(name: str, seed: int = 0) -> list[Check]:
    """Run one named suite, or all of them in order."""
    if name == "paper-values":
        return paper_values_suite(seed)
    if name == "oracles":
        return oracles_suite(seed)
    if name == "properties":
        return properties_suite(seed)
    if name == "all":
        out: list[Check] = []
        for suite in SUITES:
            out.extend(run_suite(suite, seed))
        return out
    raise ValidationError(f"unknown suite {name!r}; choose from {SUITES + ('all',)}")
