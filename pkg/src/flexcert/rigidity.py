"""Bar-joint frameworks: compilation to edge-length equations and
rigidity/flexibility verdicts.

A framework (joints in n-space, bars of fixed length, optionally pinned
coordinates) compiles to one quadratic equation per bar in the unpinned
coordinates. The analyzer then runs the certificate engines and renders
the framework-level verdict, requiring a Flexible verdict to exhibit a
nontrivial flexion: some non-bar pair whose distance actually changes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import certify, ratlinalg
from .certify import (
    FLEXIBLE,
    INCONCLUSIVE,
    RIGID,
    AnalysisReport,
    AnalyzeConfig,
    Certificate,
    FirstOrderRigid,
    SecondOrderObstruction,
    SpanClosureFlex,
    TStandardFail,
)
from .quadsys import QuadraticSystem, evaluate, validate_and_symmetrize
from .ratlinalg import Matrix, Vector, vector
from .series import SeriesCoefficients


class PinningError(ValueError):
    """No admissible pinning frame; the user must pre-transform coordinates."""


class FrameworkError(ValueError):
    """Structurally invalid framework description."""


@dataclass(frozen=True)
class Framework:
    dimension: int
    joints: dict[str, Vector]
    bars: tuple[tuple[str, str], ...]
    pins: frozenset[tuple[str, int]]

    def joint_ids(self) -> list[str]:
        return sorted(self.joints)

    def is_bar(self, a: str, b: str) -> bool:
        return tuple(sorted((a, b))) in set(self.bars)


def framework(
    dimension: int,
    joints: dict[str, Sequence],
    bars: Sequence[Sequence[str]],
    pins: Sequence[tuple[str, int]] = (),
) -> Framework:
    """Validate and normalize a framework description."""
    if dimension < 1:
        raise FrameworkError("dimension must be positive")
    if not joints:
        raise FrameworkError("framework needs at least one joint")
    coords = {}
    for jid, c in joints.items():
        vec = vector(c)
        if len(vec) != dimension:
            raise FrameworkError(f"joint {jid!r} has {len(vec)} coordinates, expected {dimension}")
        coords[str(jid)] = vec
    norm_bars = set()
    for bar in bars:
        a, b = str(bar[0]), str(bar[1])
        if a == b:
            raise FrameworkError(f"self-loop bar at joint {a!r}")
        for end in (a, b):
            if end not in coords:
                raise FrameworkError(f"bar references unknown joint {end!r}")
        norm_bars.add((min(a, b), max(a, b)))
    adjacency = {jid: set() for jid in coords}
    for a, b in norm_bars:
        adjacency[a].add(b)
        adjacency[b].add(a)
    seen = set()
    stack = [next(iter(sorted(coords)))]
    while stack:
        j = stack.pop()
        if j in seen:
            continue
        seen.add(j)
        stack.extend(adjacency[j] - seen)
    if seen != set(coords):
        raise FrameworkError("framework graph is not connected")
    norm_pins = set()
    for jid, idx in pins:
        jid = str(jid)
        if jid not in coords:
            raise FrameworkError(f"pin references unknown joint {jid!r}")
        if not 0 <= int(idx) < dimension:
            raise FrameworkError(f"pin coordinate {idx} out of range for joint {jid!r}")
        norm_pins.add((jid, int(idx)))
    return Framework(dimension, coords, tuple(sorted(norm_bars)), frozenset(norm_pins))


def auto_pin(fw: Framework) -> Framework:
    """Pin a normal-position frame: the first joints (in id order) found
    at the origin, on axis 1, in the 1-2 plane, ... lose n, n-1, ..., 1
    coordinates respectively, n(n+1)/2 pins in total.

    Coordinates are never re-embedded (an isometric re-embedding of a
    rational framework can force irrational coordinates), so a framework
    without such a frame is rejected and must be pre-transformed.
    """
    if fw.pins:
        raise PinningError("auto_pin requires a framework with no pins set")
    n = fw.dimension
    chosen: list[str] = []
    for slot in range(1, n + 1):
        found = None
        for jid in fw.joint_ids():
            if jid in chosen:
                continue
            c = fw.joints[jid]
            # slot s joint lives in the span of axes 1..s-1 ...
            if any(c[i] != 0 for i in range(slot - 1, n)):
                continue
            # ... and off the span of axes 1..s-2 (affine independence)
            if slot >= 2 and c[slot - 2] == 0:
                continue
            found = jid
            break
        if found is None:
            raise PinningError(
                f"no joint in normal position for frame slot {slot} "
                "(origin, axis 1, plane 1-2, ...); pre-transform the coordinates"
            )
        chosen.append(found)
    pins = set()
    for slot, jid in enumerate(chosen, start=1):
        for idx in range(slot - 1, n):
            pins.add((jid, idx))
    return Framework(fw.dimension, fw.joints, fw.bars, frozenset(pins))


def coordinate_order(fw: Framework) -> list[tuple[str, int]]:
    """All (joint, coordinate) slots in lexicographic order."""
    return [(jid, c) for jid in fw.joint_ids() for c in range(fw.dimension)]


def build_edge_system(fw: Framework) -> tuple[QuadraticSystem, tuple[tuple[str, int], ...], Vector]:
    """Compile the bar-length constraints into a quadratic system.

    One equation per bar: sum_c (x_ic - x_jc)^2 - L_ij^2 = 0, with pinned
    coordinates substituted as constants. Returns the system, the
    coordinate map (variable index -> (joint, coordinate)), and the base
    point (the initial unpinned coordinates), which is verified to solve
    the system exactly.
    """
    slots = coordinate_order(fw)
    variables = [sc for sc in slots if sc not in fw.pins]
    var_index = {sc: i for i, sc in enumerate(variables)}
    m = len(variables)
    if not fw.bars:
        raise FrameworkError("framework has no bars to compile")
    alphas, betas, gammas = [], [], []
    for a, b in fw.bars:
        alpha = [[Fraction(0)] * m for _ in range(m)]
        beta = [Fraction(0)] * m
        gamma = Fraction(0)
        for c in range(fw.dimension):
            ia = var_index.get((a, c))
            ib = var_index.get((b, c))
            ka = fw.joints[a][c]
            kb = fw.joints[b][c]
            # expand (u - v)^2 with u, v each a variable or a constant
            if ia is not None and ib is not None:
                alpha[ia][ia] += 1
                alpha[ib][ib] += 1
                alpha[ia][ib] -= 1
                alpha[ib][ia] -= 1
            elif ia is not None:
                alpha[ia][ia] += 1
                beta[ia] += -2 * kb
                gamma += kb * kb
            elif ib is not None:
                alpha[ib][ib] += 1
                beta[ib] += -2 * ka
                gamma += ka * ka
            else:
                gamma += (ka - kb) ** 2
            gamma -= (ka - kb) ** 2  # subtract this coordinate's share of L^2
        alphas.append(alpha)
        betas.append(beta)
        gammas.append(gamma)
    names = [f"{jid}[{c}]" for jid, c in variables]
    sys = validate_and_symmetrize(alphas, betas, gammas, names)
    base = tuple(fw.joints[jid][c] for jid, c in variables)
    residual = evaluate(sys, base)
    if any(x != 0 for x in residual):
        raise FrameworkError("compiled edge system does not vanish at the base point")
    return sys, tuple(variables), base


def _row_space_basis(rows: list[Vector], cols: int) -> list[Vector]:
    if not rows:
        return []
    reduced, pivots = ratlinalg.rref(Matrix.from_rows(rows, cols=cols))
    return [reduced.row(i) for i in range(len(pivots))]


def trivial_motion_basis(fw: Framework) -> list[Vector]:
    """First-order velocity fields of ambient rigid motions, restricted to
    the unpinned coordinates and compatible with the pins (zero velocity
    at every pinned coordinate).

    Translations and infinitesimal plane rotations generate the isometry
    algebra; for a fully auto-pinned, affinely spanning framework the
    result is empty.
    """
    n = fw.dimension
    slots = coordinate_order(fw)
    variables = [sc for sc in slots if sc not in fw.pins]
    pinned = [sc for sc in slots if sc in fw.pins]
    generators: list[dict[tuple[str, int], Fraction]] = []
    for d in range(n):
        generators.append({(jid, d): Fraction(1) for jid in fw.joints})
    for a in range(n):
        for b in range(a + 1, n):
            gen = {}
            for jid, x in fw.joints.items():
                gen[(jid, a)] = -x[b]
                gen[(jid, b)] = x[a]
            generators.append(gen)
    # coefficients whose combination vanishes on every pinned coordinate
    if pinned:
        constraint = Matrix.from_rows(
            [[g.get(sc, Fraction(0)) for g in generators] for sc in pinned],
            cols=len(generators),
        )
        coeff_space = ratlinalg.kernel_basis(constraint)
    else:
        coeff_space = [
            tuple(Fraction(1 if i == g else 0) for i in range(len(generators)))
            for g in range(len(generators))
        ]
    candidates = []
    for coeffs in coeff_space:
        vec = []
        for sc in variables:
            val = sum(
                (c * g.get(sc, Fraction(0)) for c, g in zip(coeffs, generators)),
                Fraction(0),
            )
            vec.append(val)
        candidates.append(tuple(vec))
    return _row_space_basis([v for v in candidates if any(x != 0 for x in v)],
                            cols=len(variables))


@dataclass(frozen=True)
class FlexionReport:
    order: int
    flexion: SeriesCoefficients
    classification: str  # "Trivial" | "Nontrivial"
    witness_pair: Optional[tuple[str, str]] = None
    witness_order: Optional[int] = None
    witness_value: Optional[Fraction] = None


def _joint_series(
    fw: Framework,
    variables: Sequence[tuple[str, int]],
    s: SeriesCoefficients,
    jid: str,
) -> list[Vector]:
    """Coefficient vectors (one per order 0..q) of a joint's trajectory."""
    var_index = {sc: i for i, sc in enumerate(variables)}
    out = []
    for p in range(s.degree + 1):
        coeff = []
        for c in range(fw.dimension):
            idx = var_index.get((jid, c))
            if idx is None:
                coeff.append(fw.joints[jid][c] if p == 0 else Fraction(0))
            else:
                coeff.append(s.coefficient(p)[idx])
        out.append(tuple(coeff))
    return out


def squared_distance_series(
    fw: Framework,
    variables: Sequence[tuple[str, int]],
    s: SeriesCoefficients,
    a: str,
    b: str,
) -> list[Fraction]:
    """Exact coefficients of |x_a(t) - x_b(t)|^2 through order 2q."""
    q = s.degree
    sa = _joint_series(fw, variables, s, a)
    sb = _joint_series(fw, variables, s, b)
    diff = [tuple(x - y for x, y in zip(sa[p], sb[p])) for p in range(q + 1)]
    out = [Fraction(0)] * (2 * q + 1)
    for p1 in range(q + 1):
        for p2 in range(q + 1):
            dot = sum((x * y for x, y in zip(diff[p1], diff[p2])), Fraction(0))
            out[p1 + p2] += dot
    return out


def flexion_nontriviality(
    fw: Framework, variables: Sequence[tuple[str, int]], s: SeriesCoefficients
) -> FlexionReport:
    """Classify a flexion: Nontrivial iff some non-bar pair's squared
    distance has a nonzero coefficient at an order in [1, 2q]. On a
    complete bar graph there are no admissible witness pairs and the
    classification is Trivial by definition."""
    bar_set = set(fw.bars)
    ids = fw.joint_ids()
    for i, a in enumerate(ids):
        for b in ids[i + 1:]:
            if (a, b) in bar_set:
                continue
            coeffs = squared_distance_series(fw, variables, s, a, b)
            for order in range(1, len(coeffs)):
                if coeffs[order] != 0:
                    return FlexionReport(
                        order=s.degree,
                        flexion=s,
                        classification="Nontrivial",
                        witness_pair=(a, b),
                        witness_order=order,
                        witness_value=coeffs[order],
                    )
    return FlexionReport(order=s.degree, flexion=s, classification="Trivial")


@dataclass(frozen=True)
class FrameworkReport:
    verdict: str
    certificate: Optional[Certificate]
    depth_reached: int
    notes: tuple[str, ...]
    flexion: Optional[FlexionReport]
    pinned: Framework
    system_report: AnalysisReport


def analyze_framework(
    fw: Framework,
    config: AnalyzeConfig = AnalyzeConfig(),
    use_auto_pin: bool = False,
) -> FrameworkReport:
    """Compile the edge system, run the system analyzer, and render the
    framework verdict.

    Rigidity certificates pass through (trivial kernel, order-2
    obstruction, T-standard failure each imply a rigid framework). A
    flexibility certificate earns the Flexible verdict only when its
    series is a nontrivial flexion; otherwise the verdict stays
    Inconclusive.
    """
    pinned = fw
    if not fw.pins and use_auto_pin:
        pinned = auto_pin(fw)
    sys, variables, base = build_edge_system(pinned)
    report = certify.analyze_system(sys, base, config)
    notes = list(report.notes)
    if not pinned.pins:
        notes.append(
            "no pins set: rigid-motion directions stay in the kernel and a "
            "rigidity verdict cannot occur"
        )
    flexion = None
    verdict = report.verdict
    if report.verdict == RIGID:
        cert = report.certificate
        if isinstance(cert, FirstOrderRigid):
            notes.append("framework is first-order infinitesimally rigid, hence rigid")
        elif isinstance(cert, SecondOrderObstruction):
            notes.append("framework is second-order infinitesimally rigid, hence rigid")
        elif isinstance(cert, TStandardFail):
            notes.append(
                "single independent first-order flexion admits no order-"
                f"{cert.fail_index} extension, hence rigid"
            )
    elif report.verdict == FLEXIBLE:
        assert isinstance(report.certificate, SpanClosureFlex)
        flexion = flexion_nontriviality(pinned, variables, report.certificate.series)
        if flexion.classification == "Nontrivial":
            a, b = flexion.witness_pair
            notes.append(
                f"nontrivial flexion: distance of non-bar pair ({a}, {b}) changes "
                f"at order {flexion.witness_order}"
            )
        else:
            verdict = INCONCLUSIVE
            notes.append(
                "certified family is a trivial flexion (no non-bar distance "
                "changes); framework verdict stays inconclusive"
            )
    return FrameworkReport(
        verdict=verdict,
        certificate=report.certificate,
        depth_reached=report.depth_reached,
        notes=tuple(notes),
        flexion=flexion,
        pinned=pinned,
        system_report=report,
    )
