"""Inequality and identity checks for subdivision density lower bounds.

Each check computes one side of a proven inequality (or both sides of an
identity), wraps the outcome in a VerificationReport, and never asserts: the
caller decides what a failure means.  Inequality checks pass when
computed >= bound * (1 - tolerance); identity checks pass when the two sides
agree within max(rel * magnitude, abs).

Checks on patterns outside the known lower-bound registry still run but are
flagged advisory in their metadata, and advisory failures do not fail a suite.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from . import graphs as graphs_mod
from . import stepgraphon as sg
from .density import hom_density, hom_density_subdivided, hom_density_weighted
from .errors import (
    ConfigError,
    DegenerateInstanceError,
    EmptySetError,
    NotRegularError,
    PatternNotRegularError,
    UncertifiedDensityError,
)
from .graphs import Graph, in_knrs_registry, subdivide
from .localdensity import local_density_exact
from .operators import path_function, path_power, superlevel_set
from .stepgraphon import StepGraphon, as_occupancy, as_step_function, edge_density, restrict

INEQUALITY_TOL = 1e-9  # relative, on the bound
IDENTITY_REL_TOL = 1e-10
IDENTITY_ABS_TOL = 1e-12


@dataclass(eq=False)
class VerificationReport:
    check_name: str
    inputs_digest: str
    computed_value: float
    bound_value: float
    ratio: float
    passed: bool
    tolerance: float
    metadata: dict = field(default_factory=dict)

    @property
    def advisory(self) -> bool:
        return bool(self.metadata.get("advisory", False))

    def to_dict(self) -> dict:
        return {
            "check_name": self.check_name,
            "inputs_digest": self.inputs_digest,
            "computed_value": float(self.computed_value),
            "bound_value": float(self.bound_value),
            "ratio": float(self.ratio),
            "passed": bool(self.passed),
            "tolerance": float(self.tolerance),
            "metadata": _jsonable(self.metadata),
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):  # before int: bool subclasses int
        return bool(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    return obj


def _digest(payload: dict) -> str:
    text = json.dumps(_jsonable(payload), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _graph_payload(H: Graph) -> dict:
    return {"n": H.vertex_count, "edges": [list(e) for e in H.edge_list]}


def _graphon_payload(W: StepGraphon) -> dict:
    return {"values": W.values.tolist(), "measures": W.measures.tolist()}


def _ratio(computed: float, bound: float) -> float:
    if bound > 0.0:
        return computed / bound
    return float("inf")


def _inequality_report(name, computed, bound, metadata, digest, tol=INEQUALITY_TOL) -> VerificationReport:
    passed = computed >= bound * (1.0 - tol)
    return VerificationReport(
        check_name=name,
        inputs_digest=digest,
        computed_value=float(computed),
        bound_value=float(bound),
        ratio=_ratio(computed, bound),
        passed=bool(passed),
        tolerance=tol,
        metadata={"kind": "inequality", **metadata},
    )


def _identity_report(
    name, lhs, rhs, metadata, digest, rel=IDENTITY_REL_TOL, abs_=IDENTITY_ABS_TOL
) -> VerificationReport:
    tol_eff = max(rel * max(abs(lhs), abs(rhs)), abs_)
    passed = abs(lhs - rhs) <= tol_eff
    return VerificationReport(
        check_name=name,
        inputs_digest=digest,
        computed_value=float(lhs),
        bound_value=float(rhs),
        ratio=_ratio(lhs, rhs),
        passed=bool(passed),
        tolerance=tol_eff,
        metadata={"kind": "identity", **metadata},
    )


# --- inequality checks -----------------------------------------------------------


def check_sidorenko(H: Graph, W: StepGraphon, metadata: dict | None = None) -> VerificationReport:
    """t(H, W) >= edge_density^e(H); advisory when H is not bipartite."""
    bipartite, _ = graphs_mod.is_bipartite(H)
    computed = hom_density(H, W)
    bound = edge_density(W) ** H.edge_count
    meta = {"advisory": not bipartite, "bipartite": bipartite, **(metadata or {})}
    digest = _digest({"check": "sidorenko", "H": _graph_payload(H), "W": _graphon_payload(W)})
    return _inequality_report("sidorenko", computed, bound, meta, digest)


def check_knrs(
    H: Graph, W: StepGraphon, d: float | None = None, assume=(), metadata: dict | None = None
) -> VerificationReport:
    """t(H, W) >= d^e(H) for d-locally dense W; d defaults to the exact d*.

    A caller-supplied d above the certified local density is an error, not a
    failed check."""
    cert = local_density_exact(W)
    if d is None:
        d = cert.d_star
    elif d > cert.d_star + 1e-9:
        raise UncertifiedDensityError(
            f"claimed local density {d} exceeds certified {cert.d_star}"
        )
    registered = in_knrs_registry(H, assume)
    computed = hom_density(H, W)
    bound = float(d) ** H.edge_count
    meta = {"advisory": not registered, "registered": registered, "d": float(d), **(metadata or {})}
    digest = _digest(
        {"check": "knrs", "H": _graph_payload(H), "W": _graphon_payload(W), "d": float(d)}
    )
    return _inequality_report("knrs", computed, bound, meta, digest)


def check_weakly_knrs(
    H: Graph, k: int, W: StepGraphon, assume=(), metadata: dict | None = None
) -> VerificationReport:
    """Proven constant-factor bound for even subdivisions:
    t of the 2k-subdivision of H is at least c_H d^((2k+1) e(H)) with
    c_H = (1/2)^(v(H) + 2k e(H)) and d the exact local density.

    Metadata records whether the aspirational constant-free bound also held;
    that flag is never a pass criterion."""
    if k < 1:
        raise ValueError("k must be at least 1")
    cert = local_density_exact(W)
    d = cert.d_star
    e = H.edge_count
    registered = in_knrs_registry(H, assume)
    computed = hom_density_subdivided(H, 2 * k, W)
    strong = float(d) ** ((2 * k + 1) * e)
    c_H = 0.5 ** (H.vertex_count + 2 * k * e)
    bound = c_H * strong
    meta = {
        "advisory": not registered,
        "registered": registered,
        "d": float(d),
        "k": k,
        "constant": c_H,
        "strong_bound": strong,
        "strong_held": bool(computed >= strong * (1.0 - INEQUALITY_TOL)),
        **(metadata or {}),
    }
    digest = _digest(
        {"check": "weakly_knrs", "H": _graph_payload(H), "W": _graphon_payload(W), "k": k}
    )
    return _inequality_report("weakly_knrs", computed, bound, meta, digest)


def check_even_subdivision_sidorenko(
    H: Graph, k: int, W: StepGraphon, assume=(), metadata: dict | None = None
) -> VerificationReport:
    """For d-regular W: t of the (2k-1)-subdivision of H >= d^(2k e(H)).

    Requires the host graphon to be degree-regular within 1e-9."""
    if k < 1:
        raise ValueError("k must be at least 1")
    d = sg.is_regular(W, 1e-9)
    if d is None:
        raise NotRegularError("host graphon is not degree-regular within 1e-9")
    registered = in_knrs_registry(H, assume)
    computed = hom_density_subdivided(H, 2 * k - 1, W)
    bound = float(d) ** (2 * k * H.edge_count)
    meta = {
        "advisory": not registered,
        "registered": registered,
        "d": float(d),
        "k": k,
        **(metadata or {}),
    }
    digest = _digest(
        {
            "check": "even_subdivision_sidorenko",
            "H": _graph_payload(H),
            "W": _graphon_payload(W),
            "k": k,
        }
    )
    return _inequality_report("even_subdivision_sidorenko", computed, bound, meta, digest)


def check_regular_subdivision_knrs(
    H: Graph, k: int, W: StepGraphon, assume=(), metadata: dict | None = None
) -> VerificationReport:
    """For regular patterns H: t of the 2k-subdivision >= d*^((2k+1) e(H))."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if graphs_mod.is_regular(H) is None:
        raise PatternNotRegularError("pattern graph is not degree-regular")
    cert = local_density_exact(W)
    d = cert.d_star
    registered = in_knrs_registry(H, assume)
    computed = hom_density_subdivided(H, 2 * k, W)
    bound = float(d) ** ((2 * k + 1) * H.edge_count)
    meta = {
        "advisory": not registered,
        "registered": registered,
        "d": float(d),
        "k": k,
        **(metadata or {}),
    }
    digest = _digest(
        {
            "check": "regular_subdivision_knrs",
            "H": _graph_payload(H),
            "W": _graphon_payload(W),
            "k": k,
        }
    )
    return _inequality_report("regular_subdivision_knrs", computed, bound, meta, digest)


def check_superlevel_restriction(W: StepGraphon, k: int, metadata: dict | None = None) -> VerificationReport:
    """The superlevel set A of the k-walk density at threshold (d/2)^k has
    measure at least 1/2, and the restriction of the (2k+1)-walk kernel to A
    has local density at least d^(2k+1) / 2^(2k), with d the exact d*(W).

    Vacuous (an error) when d*(W) = 0."""
    if k < 1:
        raise ValueError("k must be at least 1")
    cert = local_density_exact(W)
    d = cert.d_star
    if d <= 0.0:
        raise DegenerateInstanceError("local density is zero; restriction bound is vacuous")
    walk = path_function(W, k)
    theta = (d / 2.0) ** k
    occupancy = superlevel_set(walk, theta)
    a_measure = occupancy.measure(W.measures)
    a_ok = a_measure >= 0.5 - 1e-9
    restricted = restrict(path_power(W, 2 * k + 1), occupancy)
    d_res = local_density_exact(restricted).d_star
    bound = float(d) ** (2 * k + 1) / 4.0**k
    meta = {
        "d": float(d),
        "k": k,
        "threshold": theta,
        "a_measure": float(a_measure),
        "a_measure_ok": bool(a_ok),
        **(metadata or {}),
    }
    digest = _digest(
        {"check": "superlevel_restriction", "W": _graphon_payload(W), "k": k}
    )
    report = _inequality_report("superlevel_restriction", d_res, bound, meta, digest)
    report.passed = bool(report.passed and a_ok)
    return report


def check_reiher(W: StepGraphon, f, metadata: dict | None = None) -> VerificationReport:
    """Quadratic-form lower bound: <f, W f> >= d* (int f)^2 for f >= 0."""
    func = as_step_function(f, W)
    cert = local_density_exact(W)
    m = func.values * W.measures
    computed = float(m @ W.values @ m)
    bound = cert.d_star * float(m.sum()) ** 2
    meta = {"d": float(cert.d_star), **(metadata or {})}
    digest = _digest(
        {"check": "reiher", "W": _graphon_payload(W), "f": func.values.tolist()}
    )
    return _inequality_report("reiher", computed, bound, meta, digest)


def check_extended_reiher(
    H: Graph, W: StepGraphon, omega, metadata: dict | None = None, assume=()
) -> VerificationReport:
    """Vertex-weighted density bound: the omega-weighted density of H is at
    least (int omega)^v(H) d*^e(H) for registry patterns."""
    func = as_step_function(omega, W)
    cert = local_density_exact(W)
    registered = in_knrs_registry(H, assume)
    computed = hom_density_weighted(H, W, func)
    bound = func.integral() ** H.vertex_count * cert.d_star**H.edge_count
    meta = {
        "advisory": not registered,
        "registered": registered,
        "d": float(cert.d_star),
        **(metadata or {}),
    }
    digest = _digest(
        {
            "check": "extended_reiher",
            "H": _graph_payload(H),
            "W": _graphon_payload(W),
            "omega": func.values.tolist(),
        }
    )
    return _inequality_report("extended_reiher", computed, bound, meta, digest)


# --- identity checks ---------------------------------------------------------------


def check_restriction_pullback(W: StepGraphon, a, b_prime, metadata: dict | None = None) -> VerificationReport:
    """Integrating W over a sub-box of the restriction equals the pulled-back
    integral over the original graphon divided by |A|^2, to 1e-12."""
    occ = as_occupancy(a, W.n)
    mass = occ.measure(W.measures)
    if mass <= 0.0:
        raise EmptySetError("occupancy selects a set of measure zero")
    restricted = restrict(W, occ)
    sub = as_occupancy(b_prime, restricted.n)
    weights = sub.values * restricted.measures
    lhs = float(weights @ restricted.values @ weights)
    keep = np.nonzero(occ.values > 0.0)[0]
    pullback = np.zeros(W.n)
    pullback[keep] = occ.values[keep] * sub.values
    pw = pullback * W.measures
    rhs = float(pw @ W.values @ pw) / mass**2
    meta = {"a_measure": float(mass), **(metadata or {})}
    digest = _digest(
        {
            "check": "restriction_pullback",
            "W": _graphon_payload(W),
            "a": occ.values.tolist(),
            "b_prime": sub.values.tolist(),
        }
    )
    return _identity_report(
        "restriction_pullback", lhs, rhs, meta, digest, rel=0.0, abs_=IDENTITY_ABS_TOL
    )


def check_transform(H: Graph, s: int, W: StepGraphon, metadata: dict | None = None) -> VerificationReport:
    """t of the s-subdivision of H equals t(H, W_{s+1}) exactly."""
    if s < 0:
        raise ValueError("subdivision count must be nonnegative")
    lhs = hom_density(subdivide(H, s), W)
    rhs = hom_density(H, path_power(W, s + 1)) if s > 0 else hom_density(H, W)
    meta = {"s": s, **(metadata or {})}
    digest = _digest(
        {"check": "transform", "H": _graph_payload(H), "W": _graphon_payload(W), "s": s}
    )
    return _identity_report("transform", lhs, rhs, meta, digest)


# --- suites ------------------------------------------------------------------------

DEFAULT_SUITE_NAME = "paper-default"
SUITE_CHECK_ORDER = (
    "transform",
    "sidorenko",
    "knrs",
    "weakly_knrs",
    "even_subdivision_sidorenko",
    "regular_subdivision_knrs",
    "superlevel_restriction",
    "reiher",
    "extended_reiher",
    "restriction_pullback",
)

_ALLOWED_CONFIG_KEYS = {"suite", "checks", "seed", "trials", "n_min", "n_max"}


def _parse_config(config: dict | None) -> dict:
    config = dict(config or {})
    unknown = set(config) - _ALLOWED_CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    suite = config.get("suite")
    checks = config.get("checks")
    if suite is None and checks is None:
        suite = DEFAULT_SUITE_NAME
    if suite is not None:
        if suite != DEFAULT_SUITE_NAME:
            raise ConfigError(f"unknown suite {suite!r}")
        if checks is not None:
            raise ConfigError("pass either 'suite' or 'checks', not both")
        checks = list(SUITE_CHECK_ORDER)
    else:
        checks = list(checks)
        for name in checks:
            if name not in SUITE_CHECK_ORDER:
                raise ConfigError(f"unknown check {name!r}")
    out = {
        "checks": checks,
        "seed": int(config.get("seed", 0)),
        "trials": int(config.get("trials", 5)),
        "n_min": int(config.get("n_min", 2)),
        "n_max": int(config.get("n_max", 5)),
    }
    if out["trials"] < 0:
        raise ConfigError("trials must be nonnegative")
    if not 1 <= out["n_min"] <= out["n_max"]:
        raise ConfigError("need 1 <= n_min <= n_max")
    return out


def _trial_rng(seed: int, check_index: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed, check_index, trial])


def _random_graphon(rng: np.random.Generator, n_min: int, n_max: int) -> StepGraphon:
    n = int(rng.integers(n_min, n_max + 1))
    values = rng.uniform(0.0, 1.0, size=(n, n))
    values = np.triu(values)
    values = values + np.triu(values, 1).T
    measures = rng.dirichlet(np.ones(n))
    return StepGraphon(values, measures)


def _positive_graphon(rng: np.random.Generator, n_min: int, n_max: int) -> StepGraphon:
    # bounded away from zero so the local density is positive
    n = int(rng.integers(n_min, n_max + 1))
    values = 0.05 + 0.95 * rng.uniform(0.0, 1.0, size=(n, n))
    values = np.triu(values)
    values = values + np.triu(values, 1).T
    measures = rng.dirichlet(np.ones(n))
    return StepGraphon(values, measures)


_TRANSFORM_PATTERNS = (("clique", 3), ("clique", 4), ("cycle", 5))
_SIDORENKO_PATTERNS = (("path", 2), ("path", 3), ("cycle", 4), ("cycle", 6))
_REGISTRY_PATTERNS = (
    ("clique", 3),
    ("cycle", 5),
    ("clique", 4),
    ("complete_multipartite", 2, 3),
)
_REGULAR_PATTERNS = (("clique", 3), ("cycle", 5), ("clique", 4))


def _pattern(spec) -> Graph:
    name, *args = spec
    return graphs_mod.catalog(name, *args)


def _pattern_label(spec) -> str:
    name, *args = spec
    if args:
        return f"{name}:{','.join(str(a) for a in args)}"
    return name


def _run_check(name: str, seed: int, check_index: int, trial: int, cfg: dict) -> VerificationReport:
    rng = _trial_rng(seed, check_index, trial)
    n_min, n_max = cfg["n_min"], cfg["n_max"]
    base_meta = {"seed": seed, "trial": trial}
    if name == "transform":
        spec = _TRANSFORM_PATTERNS[trial % len(_TRANSFORM_PATTERNS)]
        s = 1 + trial % 4
        W = _random_graphon(rng, n_min, n_max)
        return check_transform(_pattern(spec), s, W, metadata={**base_meta, "pattern": _pattern_label(spec)})
    if name == "sidorenko":
        spec = _SIDORENKO_PATTERNS[trial % len(_SIDORENKO_PATTERNS)]
        W = _random_graphon(rng, n_min, n_max)
        return check_sidorenko(_pattern(spec), W, metadata={**base_meta, "pattern": _pattern_label(spec)})
    if name == "knrs":
        spec = _REGISTRY_PATTERNS[trial % len(_REGISTRY_PATTERNS)]
        W = _random_graphon(rng, n_min, n_max)
        return check_knrs(_pattern(spec), W, metadata={**base_meta, "pattern": _pattern_label(spec)})
    if name == "weakly_knrs":
        k = 1 + trial % 2
        W = _random_graphon(rng, n_min, n_max)
        return check_weakly_knrs(
            graphs_mod.clique(3), k, W, metadata={**base_meta, "pattern": "clique:3"}
        )
    if name == "even_subdivision_sidorenko":
        spec = (("clique", 3), ("clique", 4))[trial % 2]
        k = 1 + trial % 2
        d = (0.2, 0.5, 0.8)[trial % 3]
        n = n_min + trial % (n_max - n_min + 1)
        W = sg.gen_regular(n, d, seed=int(rng.integers(2**32)))
        return check_even_subdivision_sidorenko(
            _pattern(spec), k, W, metadata={**base_meta, "pattern": _pattern_label(spec)}
        )
    if name == "regular_subdivision_knrs":
        spec = _REGULAR_PATTERNS[trial % len(_REGULAR_PATTERNS)]
        W = _random_graphon(rng, n_min, n_max)
        return check_regular_subdivision_knrs(
            _pattern(spec), 1 + trial % 2, W, metadata={**base_meta, "pattern": _pattern_label(spec)}
        )
    if name == "superlevel_restriction":
        W = _positive_graphon(rng, n_min, n_max)
        return check_superlevel_restriction(W, 1 + trial % 2, metadata=base_meta)
    if name == "reiher":
        W = _random_graphon(rng, n_min, n_max)
        f = rng.uniform(0.0, 2.0, size=W.n)
        return check_reiher(W, f, metadata=base_meta)
    if name == "extended_reiher":
        spec = _REGISTRY_PATTERNS[trial % len(_REGISTRY_PATTERNS)]
        W = _random_graphon(rng, n_min, n_max)
        omega = rng.uniform(0.0, 2.0, size=W.n)
        return check_extended_reiher(
            _pattern(spec), W, omega, metadata={**base_meta, "pattern": _pattern_label(spec)}
        )
    if name == "restriction_pullback":
        W = _random_graphon(rng, n_min, n_max)
        a = rng.uniform(0.0, 1.0, size=W.n)
        if not np.any(a > 0.0):
            a[0] = 1.0
        kept = int(np.count_nonzero(a > 0.0))
        b_prime = rng.uniform(0.0, 1.0, size=kept)
        return check_restriction_pullback(W, a, b_prime, metadata=base_meta)
    raise ConfigError(f"unknown check {name!r}")


def run_suite(config: dict | None = None) -> list:
    """Run the configured checks on deterministic instances.

    Returns the list of VerificationReports in a fixed order; rerunning with
    the same config reproduces it bit for bit."""
    cfg = _parse_config(config)
    reports = []
    for check_index, name in enumerate(cfg["checks"]):
        for trial in range(cfg["trials"]):
            reports.append(_run_check(name, cfg["seed"], check_index, trial, cfg))
    return reports


def summarize(reports) -> dict:
    failed = [r for r in reports if not r.passed and not r.advisory]
    advisory_failed = [r for r in reports if not r.passed and r.advisory]
    return {
        "total": len(reports),
        "passed": sum(1 for r in reports if r.passed),
        "failed": len(failed),
        "advisory_failed": len(advisory_failed),
    }


def reports_to_json(reports, config: dict | None = None) -> str:
    doc = {
        "schema": "v1",
        "reports": [r.to_dict() for r in reports],
        "summary": summarize(reports),
    }
    if config is not None:
        doc["config"] = _jsonable(config)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def reports_to_csv(reports) -> str:
    lines = ["check_name,ratio,passed,seed"]
    for r in reports:
        seed = r.metadata.get("seed", "")
        lines.append(f"{r.check_name},{r.ratio!r},{str(r.passed).lower()},{seed}")
    return "\n".join(lines) + "\n"
