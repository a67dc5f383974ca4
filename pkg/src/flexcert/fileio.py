"""JSON file formats and exact serialization.

Rationals travel as decimal-integer strings or "p/q" strings so every
round trip is bit-exact. Indices are 0-based in files; report text uses
1-based coefficient orders. All emitters sort keys and use fixed
separators, so identical inputs produce byte-identical output.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional

from . import certify, quadsys, rigidity, series
from .quadsys import GeneralPolySystem, QuadraticSystem
from .ratlinalg import Vector
from .rigidity import Framework
from .series import SeriesCoefficients


class ParseError(ValueError):
    """Malformed or invalid input file."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


def _scalar_in(raw, path: str, where: str) -> Fraction:
    if isinstance(raw, str):
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError):
            raise ParseError(path, f"{where}: not a rational string: {raw!r}") from None
    if isinstance(raw, int):
        return Fraction(raw)
    raise ParseError(path, f"{where}: rationals must be strings or integers, got {type(raw).__name__}")


def _scalar_out(x: Fraction) -> str:
    return str(x)


def _vector_out(v) -> list[str]:
    return [_scalar_out(x) for x in v]


def load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ParseError(path, "file not found") from None
    except json.JSONDecodeError as exc:
        raise ParseError(path, f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


# ---------------------------------------------------------------------------
# Quadratic systems


def system_to_dict(sys: QuadraticSystem, base_point: Optional[Vector] = None) -> dict:
    equations = []
    for k in range(sys.n):
        alpha = []
        for i in range(sys.m):
            for j in range(sys.m):
                val = sys.alpha[k].entries[i][j]
                if val != 0:
                    alpha.append([i, j, _scalar_out(val)])
        beta = [[i, _scalar_out(v)] for i, v in enumerate(sys.beta[k]) if v != 0]
        equations.append({"alpha": alpha, "beta": beta, "gamma": _scalar_out(sys.gamma[k])})
    out = {"variables": list(sys.variable_names), "equations": equations}
    if base_point is not None:
        out["base_point"] = _vector_out(base_point)
    return out


def system_from_dict(data: dict, path: str = "<memory>") -> tuple[QuadraticSystem, Optional[Vector]]:
    if not isinstance(data, dict) or "equations" not in data:
        raise ParseError(path, "expected an object with an 'equations' field")
    variables = data.get("variables")
    if not isinstance(variables, list) or not all(isinstance(v, str) for v in variables):
        raise ParseError(path, "'variables' must be a list of names")
    m = len(variables)
    if m == 0:
        raise ParseError(path, "system needs at least one variable")
    alphas, betas, gammas = [], [], []
    for k, eq in enumerate(data["equations"]):
        where = f"equations[{k}]"
        if not isinstance(eq, dict):
            raise ParseError(path, f"{where}: expected an object")
        a = [[Fraction(0)] * m for _ in range(m)]
        for t, triple in enumerate(eq.get("alpha", [])):
            if not (isinstance(triple, list) and len(triple) == 3):
                raise ParseError(path, f"{where}.alpha[{t}]: expected [i, j, value]")
            i, j, raw = triple
            if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < m and 0 <= j < m):
                raise ParseError(path, f"{where}.alpha[{t}]: index out of range")
            a[i][j] += _scalar_in(raw, path, f"{where}.alpha[{t}]")
        b = [Fraction(0)] * m
        for t, pair in enumerate(eq.get("beta", [])):
            if not (isinstance(pair, list) and len(pair) == 2):
                raise ParseError(path, f"{where}.beta[{t}]: expected [i, value]")
            i, raw = pair
            if not (isinstance(i, int) and 0 <= i < m):
                raise ParseError(path, f"{where}.beta[{t}]: index out of range")
            b[i] += _scalar_in(raw, path, f"{where}.beta[{t}]")
        alphas.append(a)
        betas.append(b)
        gammas.append(_scalar_in(eq.get("gamma", "0"), path, f"{where}.gamma"))
    if not alphas:
        raise ParseError(path, "system needs at least one equation")
    sys = quadsys.validate_and_symmetrize(alphas, betas, gammas, variables)
    base = None
    if "base_point" in data:
        raw = data["base_point"]
        if not isinstance(raw, list) or len(raw) != m:
            raise ParseError(path, f"'base_point' must list {m} rationals")
        base = tuple(_scalar_in(x, path, f"base_point[{i}]") for i, x in enumerate(raw))
    return sys, base


def load_system(path: str) -> tuple[QuadraticSystem, Optional[Vector]]:
    return system_from_dict(load_json(path), path)


# ---------------------------------------------------------------------------
# General polynomial systems


def poly_to_dict(poly: GeneralPolySystem, base_point: Optional[Vector] = None) -> dict:
    equations = []
    for eq in poly.equations:
        terms = [
            {"exponents": list(exps), "coeff": _scalar_out(c)}
            for exps, c in sorted(eq.items())
        ]
        equations.append({"terms": terms})
    out = {"variables": list(poly.variable_names), "equations": equations}
    if base_point is not None:
        out["base_point"] = _vector_out(base_point)
    return out


def poly_from_dict(
    data: dict, path: str = "<memory>"
) -> tuple[GeneralPolySystem, Optional[Vector]]:
    if not isinstance(data, dict) or "equations" not in data:
        raise ParseError(path, "expected an object with an 'equations' field")
    variables = data.get("variables")
    if not isinstance(variables, list) or not variables:
        raise ParseError(path, "'variables' must be a non-empty list of names")
    m = len(variables)
    eqs = []
    for k, eq in enumerate(data["equations"]):
        where = f"equations[{k}]"
        if not isinstance(eq, dict) or "terms" not in eq:
            raise ParseError(path, f"{where}: expected an object with 'terms'")
        terms: dict[tuple[int, ...], Fraction] = {}
        for t, term in enumerate(eq["terms"]):
            exps = term.get("exponents")
            if not (isinstance(exps, list) and len(exps) == m
                    and all(isinstance(e, int) and e >= 0 for e in exps)):
                raise ParseError(path, f"{where}.terms[{t}]: bad exponent vector")
            key = tuple(exps)
            terms[key] = terms.get(key, Fraction(0)) + _scalar_in(
                term.get("coeff"), path, f"{where}.terms[{t}].coeff"
            )
        eqs.append(terms)
    poly = quadsys.poly_system(eqs, m, variables)
    base = None
    if "base_point" in data:
        raw = data["base_point"]
        if not isinstance(raw, list) or len(raw) != m:
            raise ParseError(path, f"'base_point' must list {m} rationals")
        base = tuple(_scalar_in(x, path, f"base_point[{i}]") for i, x in enumerate(raw))
    return poly, base


def load_poly(path: str) -> tuple[GeneralPolySystem, Optional[Vector]]:
    return poly_from_dict(load_json(path), path)


# ---------------------------------------------------------------------------
# Frameworks


def framework_to_dict(fw: Framework, auto_pin_flag: bool = False) -> dict:
    pins_by_joint: dict[str, list[int]] = {}
    for jid, idx in sorted(fw.pins):
        pins_by_joint.setdefault(jid, []).append(idx)
    return {
        "dimension": fw.dimension,
        "joints": [
            {"id": jid, "coords": _vector_out(fw.joints[jid])} for jid in fw.joint_ids()
        ],
        "bars": [list(bar) for bar in fw.bars],
        "pins": [
            {"joint": jid, "coords": sorted(idxs)} for jid, idxs in sorted(pins_by_joint.items())
        ],
        "auto_pin": auto_pin_flag,
    }


def framework_from_dict(data: dict, path: str = "<memory>") -> tuple[Framework, bool]:
    if not isinstance(data, dict):
        raise ParseError(path, "expected an object")
    for key in ("dimension", "joints", "bars"):
        if key not in data:
            raise ParseError(path, f"missing field {key!r}")
    dim = data["dimension"]
    if not isinstance(dim, int) or dim < 1:
        raise ParseError(path, "'dimension' must be a positive integer")
    joints = {}
    for t, joint in enumerate(data["joints"]):
        if not isinstance(joint, dict) or "id" not in joint or "coords" not in joint:
            raise ParseError(path, f"joints[{t}]: expected {{id, coords}}")
        coords = joint["coords"]
        if not isinstance(coords, list) or len(coords) != dim:
            raise ParseError(path, f"joints[{t}]: expected {dim} coordinates")
        jid = str(joint["id"])
        if jid in joints:
            raise ParseError(path, f"joints[{t}]: duplicate id {jid!r}")
        joints[jid] = [
            _scalar_in(c, path, f"joints[{t}].coords[{i}]") for i, c in enumerate(coords)
        ]
    bars = data["bars"]
    if not isinstance(bars, list) or not bars:
        raise ParseError(path, "'bars' must be a non-empty list of joint pairs")
    for t, bar in enumerate(bars):
        if not (isinstance(bar, list) and len(bar) == 2):
            raise ParseError(path, f"bars[{t}]: expected a pair of joint ids")
    pins = []
    for t, pin in enumerate(data.get("pins", [])):
        if not isinstance(pin, dict) or "joint" not in pin or "coords" not in pin:
            raise ParseError(path, f"pins[{t}]: expected {{joint, coords}}")
        for idx in pin["coords"]:
            if not isinstance(idx, int):
                raise ParseError(path, f"pins[{t}]: coordinate indices must be integers")
            pins.append((str(pin["joint"]), idx))
    try:
        fw = rigidity.framework(dim, joints, bars, pins)
    except rigidity.FrameworkError as exc:
        raise ParseError(path, str(exc)) from None
    return fw, bool(data.get("auto_pin", False))


def load_framework(path: str) -> tuple[Framework, bool]:
    return framework_from_dict(load_json(path), path)


# ---------------------------------------------------------------------------
# Series, certificates, reports


def series_to_dict(s: SeriesCoefficients) -> dict:
    return {
        "degree": s.degree,
        "coefficients": [_vector_out(c) for c in s.coeffs],
    }


def series_from_dict(data: dict, path: str = "<memory>") -> SeriesCoefficients:
    if not isinstance(data, dict) or "coefficients" not in data:
        raise ParseError(path, "expected an object with 'coefficients'")
    coeffs = []
    for p, row in enumerate(data["coefficients"]):
        if not isinstance(row, list):
            raise ParseError(path, f"coefficients[{p}] must be a list")
        coeffs.append(tuple(_scalar_in(x, path, f"coefficients[{p}][{i}]")
                            for i, x in enumerate(row)))
    if not coeffs:
        raise ParseError(path, "'coefficients' must be non-empty")
    return SeriesCoefficients(tuple(coeffs))


def certificate_to_dict(cert: certify.Certificate) -> dict:
    if isinstance(cert, certify.FirstOrderRigid):
        return {"kind": "first_order_rigid", "rank": cert.rank, "variables": cert.variables}
    if isinstance(cert, certify.SecondOrderObstruction):
        out = {
            "kind": "second_order_obstruction",
            "case": cert.case,
            "kernel": [_vector_out(k) for k in cert.kernel],
        }
        if cert.b_value is not None:
            out["b_value"] = _vector_out(cert.b_value)
        if cert.functional is not None:
            out["functional"] = _vector_out(cert.functional)
        if cert.form is not None:
            out["form"] = [_vector_out(row) for row in cert.form]
        if cert.forms is not None:
            out["forms"] = [_vector_out(t) for t in cert.forms]
        if cert.functionals is not None:
            out["functionals"] = [_vector_out(w) for w in cert.functionals]
        return out
    if isinstance(cert, certify.SpanClosureFlex):
        return {
            "kind": "span_closure_flex",
            "q": cert.q,
            "k": cert.k,
            "series": series_to_dict(cert.series),
            "pair_solutions": [
                {
                    "i": ps.i,
                    "j": ps.j,
                    "coefficients": _vector_out(ps.coefficients),
                    "vector": _vector_out(ps.vector),
                }
                for ps in cert.pair_solutions
            ],
        }
    if isinstance(cert, certify.TStandardFail):
        return {
            "kind": "t_standard_fail",
            "fail_index": cert.fail_index,
            "unreachable_rhs": _vector_out(cert.unreachable_rhs),
            "t_basis": [_vector_out(b) for b in cert.t_basis],
            "leading": _vector_out(cert.leading),
            "prefix": series_to_dict(cert.prefix),
        }
    if isinstance(cert, certify.TStandardSurvived):
        return {
            "kind": "t_standard_survived",
            "depth": cert.depth,
            "t_basis": [_vector_out(b) for b in cert.t_basis],
            "leading": _vector_out(cert.leading),
            "series": series_to_dict(cert.series),
        }
    raise TypeError(f"unknown certificate {cert!r}")


def report_to_dict(report) -> dict:
    out = {
        "verdict": report.verdict,
        "certificate": (
            certificate_to_dict(report.certificate) if report.certificate else None
        ),
        "depth": report.depth_reached,
        "notes": list(report.notes),
    }
    flexion = getattr(report, "flexion", None)
    if flexion is not None:
        flex = {
            "order": flexion.order,
            "classification": flexion.classification,
            "series": series_to_dict(flexion.flexion),
        }
        if flexion.witness_pair is not None:
            flex["witness_pair"] = list(flexion.witness_pair)
            flex["witness_order"] = flexion.witness_order
            flex["witness_value"] = _scalar_out(flexion.witness_value)
        out["flexion"] = flex
    pinned = getattr(report, "pinned", None)
    if pinned is not None:
        pins_by_joint: dict[str, list[int]] = {}
        for jid, idx in sorted(pinned.pins):
            pins_by_joint.setdefault(jid, []).append(idx)
        out["pins"] = [
            {"joint": jid, "coords": sorted(idxs)}
            for jid, idxs in sorted(pins_by_joint.items())
        ]
    return out


def dumps(data: dict) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"
