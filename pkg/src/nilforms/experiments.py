"""Seeded Monte Carlo experiments with deterministic, JSON-stable reports.

Each experiment samples random form tuples (or takes a fixed one), evaluates
an exact predicate per trial, and compares aggregate behaviour against the
relevant closed-form prediction.  Every positive verdict in a report carries
an exactly verified certificate, and every record is a pure function of the
config plus the trial index, so reports are byte-identical across reruns and
across any degree of parallelism.
"""

from __future__ import annotations

import itertools
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .fields import QQ, is_prime
from .forms import (
    FormTuple,
    first_good_prime,
    random_tuple,
    reduce_tuple_mod_p,
    tuple_to_json_dict,
)
from .grassmann import basis_from_plucker, check_plucker_relations, dim_grassmannian, plucker
from .groups import (
    GroupPresentation,
    MalcevElement,
    bch_mul,
    commutator,
    inverse,
    malcev_map,
    multiply,
)
from .isotropy import (
    bound_k,
    bound_s,
    greedy_isotropic,
    max_isotropic_fp,
    quaternion_example,
    quaternion_minor_identity,
)
from .lie import (
    ExhaustiveFp,
    LieAlgebra2,
    RandomizedQ,
    StrategyError,
    bracket,
    center_dim,
    corollary_bound,
    ms_certificate,
    ms_search,
    ms_thresholds,
    theorem1_predict,
)
from .linalg import DEFAULT_ENUM_CAP, EnumerationCapError, Subspace, pfaffian
from .seeding import derive_rng, derive_seed


class ConfigError(ValueError):
    """Invalid experiment configuration."""


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    n: int
    t: int
    n0: int | None = None
    t0: int | None = None
    trials: int = 100
    bound: int = 20
    prime: int | None = None
    seed: int = 0
    enum_cap: int = DEFAULT_ENUM_CAP
    strategy: str = "exhaustive-fp"
    search_trials: int = 200
    restarts: int = 8
    jobs: int = 1
    input_tuple: FormTuple | None = None

    def validate(self) -> None:
        if self.kind not in ("center", "abelian", "ms"):
            raise ConfigError(f"unknown experiment kind {self.kind!r}")
        if self.n < 2:
            raise ConfigError("need n >= 2")
        if not 1 <= self.t <= self.n * (self.n - 1) // 2:
            raise ConfigError("need 1 <= t <= n(n-1)/2")
        if self.trials < 1:
            raise ConfigError("need trials >= 1")
        if self.bound < 1:
            raise ConfigError("need bound >= 1")
        if self.prime is not None and not is_prime(self.prime):
            raise ConfigError(f"{self.prime} is not prime")
        if self.enum_cap < 1 or self.jobs < 1 or self.restarts < 1 or self.search_trials < 1:
            raise ConfigError("enum_cap, jobs, restarts and search_trials must be >= 1")
        if self.kind == "abelian" and self.t < 2:
            raise ConfigError("isotropic bounds need t >= 2")
        if self.kind == "ms":
            if self.n0 is None or self.t0 is None:
                raise ConfigError("ms experiments need n0 and t0")
            if not 1 <= self.n0 <= self.n:
                raise ConfigError("need 1 <= n0 <= n")
            if not 1 <= self.t0 <= self.n0 * (self.n0 - 1) // 2:
                raise ConfigError("need 1 <= t0 <= n0(n0-1)/2")
            if self.strategy not in ("exhaustive-fp", "randomized-q"):
                raise ConfigError(f"unknown strategy {self.strategy!r}")
        if self.input_tuple is not None:
            if (self.input_tuple.n, self.input_tuple.t) != (self.n, self.t):
                raise ConfigError("fixed input tuple does not match (n, t)")
            if self.trials != 1:
                raise ConfigError("a fixed input tuple implies trials = 1")

    def to_json_dict(self) -> dict:
        # jobs is an execution detail: reports must not depend on parallelism
        return {
            "kind": self.kind,
            "n": self.n,
            "t": self.t,
            "n0": self.n0,
            "t0": self.t0,
            "trials": self.trials,
            "bound": self.bound,
            "prime": self.prime,
            "seed": self.seed,
            "enum_cap": self.enum_cap,
            "strategy": self.strategy,
            "search_trials": self.search_trials,
            "restarts": self.restarts,
            "input_tuple": tuple_to_json_dict(self.input_tuple) if self.input_tuple else None,
        }


def subspace_to_json(sub: Subspace) -> dict:
    field = sub.field
    return {
        "ambient": sub.ambient_dim,
        "dim": sub.dim,
        "basis": [[field.to_json(x) for x in row] for row in sub.basis.entries],
    }


def report_to_json(report: dict) -> str:
    """Canonical serialization; identical configs yield identical bytes."""
    return json.dumps(report, indent=2, sort_keys=True)


def _trial_tuple(cfg: ExperimentConfig, index: int) -> FormTuple:
    if cfg.input_tuple is not None:
        return cfg.input_tuple
    return random_tuple(cfg.n, cfg.t, cfg.bound, derive_rng(cfg.seed, "trial", index))


def _run_trials(cfg: ExperimentConfig, trial_fn) -> list[dict]:
    if cfg.jobs == 1:
        return [trial_fn(i) for i in range(cfg.trials)]
    with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
        return list(pool.map(trial_fn, range(cfg.trials)))


def _assemble(cfg: ExperimentConfig, records: list[dict], aggregate: dict, prediction: dict, flags: list[str]) -> dict:
    return {
        "kind": cfg.kind,
        "config": cfg.to_json_dict(),
        "records": records,
        "aggregate": aggregate,
        "prediction": prediction,
        "verdict": "ok" if not flags else "flagged",
        "flags": flags,
    }


# --- center dimension vs the generic prediction ------------------------------

def run_center_experiment(cfg: ExperimentConfig) -> dict:
    cfg.validate()
    if cfg.kind != "center":
        raise ConfigError("config kind must be 'center'")
    predicted = theorem1_predict(cfg.n, cfg.t)

    def trial(i: int) -> dict:
        phi = _trial_tuple(cfg, i)
        dim_z = center_dim(LieAlgebra2(phi))
        return {
            "trial": i,
            "tuple": tuple_to_json_dict(phi),
            "center_dim": dim_z,
            "match": dim_z == predicted,
        }

    records = _run_trials(cfg, trial)
    matches = sum(1 for r in records if r["match"])
    flags = [
        f"trial {r['trial']}: center dimension {r['center_dim']} != predicted {predicted}"
        for r in records
        if not r["match"]
    ]
    aggregate = {
        "match_count": matches,
        "match_frequency": matches / cfg.trials,
        "match_ratio": f"{matches}/{cfg.trials}",
    }
    prediction = {"center_dim": predicted}
    return _assemble(cfg, records, aggregate, prediction, flags)


# --- isotropic dimension vs the generic bounds --------------------------------

def run_abelian_experiment(cfg: ExperimentConfig) -> dict:
    cfg.validate()
    if cfg.kind != "abelian":
        raise ConfigError("config kind must be 'abelian'")
    bk = bound_k(cfg.n, cfg.t)
    bs = bound_s(cfg.n, cfg.t)
    floor = math.ceil(cfg.n / (cfg.t + 1))

    def trial(i: int) -> dict:
        phi = _trial_tuple(cfg, i)
        cert = greedy_isotropic(phi, seed=derive_seed(cfg.seed, "greedy", i), restarts=cfg.restarts)
        record = {
            "trial": i,
            "tuple": tuple_to_json_dict(phi),
            "greedy_dim": cert.subspace.dim,
            "greedy_verified": cert.verified,
            "greedy_basis": subspace_to_json(cert.subspace),
            "oracle": _oracle_column(cfg, phi, bk),
        }
        return record

    records = _run_trials(cfg, trial)
    flags = []
    for r in records:
        if not r["greedy_verified"]:
            flags.append(f"trial {r['trial']}: greedy certificate failed verification")
        if r["greedy_dim"] < floor:
            flags.append(f"trial {r['trial']}: greedy dimension {r['greedy_dim']} below the guarantee {floor}")
        if r["greedy_dim"] > bk:
            flags.append(f"trial {r['trial']}: rational isotropic dimension {r['greedy_dim']} exceeds bound {bk}")
        oracle = r["oracle"]
        if oracle["status"] == "degenerate":
            flags.append(f"trial {r['trial']}: tuple degenerates mod {cfg.prime}")
        elif oracle["status"] == "ok" and oracle["exceeds_bound"]:
            flags.append(
                f"trial {r['trial']}: mod-{cfg.prime} oracle found isotropic dimension {oracle['max_dim']} > {bk}"
            )
    attained = sum(1 for r in records if r["greedy_dim"] >= bk)
    oracle_ok = [r["oracle"] for r in records if r["oracle"]["status"] == "ok"]
    aggregate = {
        "greedy_attained_bound_count": attained,
        "greedy_attained_bound_frequency": attained / cfg.trials,
        "oracle_ran_count": len(oracle_ok),
        "oracle_exceed_count": sum(1 for o in oracle_ok if o["exceeds_bound"]),
        "oracle_skipped_count": sum(1 for r in records if r["oracle"]["status"] == "skipped"),
    }
    prediction = {"bound_k": bk, "bound_s": bs, "greedy_floor": floor}
    return _assemble(cfg, records, aggregate, prediction, flags)


def _oracle_column(cfg: ExperimentConfig, phi: FormTuple, bk: int) -> dict:
    if cfg.prime is None:
        return {"status": "off", "max_dim": None, "exceeds_bound": None, "witness": None}
    try:
        phi_p = reduce_tuple_mod_p(phi, cfg.prime)
    except ValueError:
        return {"status": "degenerate", "max_dim": None, "exceeds_bound": None, "witness": None}
    max_dim = 0
    witness = None
    try:
        for k in range(1, phi.n + 1):
            found = max_isotropic_fp(phi_p, cfg.prime, k, cfg.enum_cap)
            if found is None:
                break
            max_dim = k
            witness = found
    except EnumerationCapError:
        return {"status": "skipped", "max_dim": None, "exceeds_bound": None, "witness": None}
    return {
        "status": "ok",
        "max_dim": max_dim,
        "exceeds_bound": max_dim > bk,
        "witness": subspace_to_json(witness) if witness is not None and max_dim > bk else None,
    }


# --- small-quotient search vs the threshold regimes ---------------------------

def run_ms_experiment(cfg: ExperimentConfig) -> dict:
    cfg.validate()
    if cfg.kind != "ms":
        raise ConfigError("config kind must be 'ms'")
    absence, guaranteed = ms_thresholds(cfg.n, cfg.n0, cfg.t0)
    if cfg.t >= guaranteed:
        regime = "expect-present"
    elif cfg.t < absence:
        regime = "expect-absent"
    else:
        regime = "indeterminate"

    def trial(i: int) -> dict:
        phi = _trial_tuple(cfg, i)
        alg = LieAlgebra2(phi)
        record = {
            "trial": i,
            "tuple": tuple_to_json_dict(phi),
            "strategy": cfg.strategy,
            "prime": None,
            "degenerate": False,
            "found": False,
            "verified": None,
            "witness": None,
            "pfaffian_nonzero": None,
        }
        if cfg.strategy == "exhaustive-fp":
            p = cfg.prime if cfg.prime is not None else first_good_prime(phi, 3)
            record["prime"] = p
            try:
                searched = reduce_tuple_mod_p(phi, p)
            except ValueError:
                record["degenerate"] = True
                return record
            strat = ExhaustiveFp(p, cfg.enum_cap)
        else:
            searched = phi
            strat = RandomizedQ(
                trials=cfg.search_trials,
                seed=derive_seed(cfg.seed, "search", i),
                bound=min(cfg.bound, 9),
            )
        if cfg.t == 1 and cfg.n % 2 == 0:
            record["pfaffian_nonzero"] = not searched.field.is_zero(pfaffian(searched.forms[0].matrix))
        try:
            witness = ms_search(alg, cfg.n0, cfg.t0, strat)
        except StrategyError:
            record["degenerate"] = True
            return record
        if witness is not None:
            record["found"] = True
            record["witness"] = subspace_to_json(witness)
            check_alg = alg if witness.field == QQ else LieAlgebra2(searched)
            record["verified"] = ms_certificate(check_alg, witness, cfg.n0, cfg.t0)
        return record

    records = _run_trials(cfg, trial)
    flags = []
    for r in records:
        if r["degenerate"]:
            flags.append(f"trial {r['trial']}: tuple degenerates mod {cfg.prime}; pick another prime")
            continue
        if r["found"] and not r["verified"]:
            flags.append(f"trial {r['trial']}: witness failed certificate verification")
        if regime == "expect-present" and not r["found"]:
            flags.append(f"trial {r['trial']}: no witness found although t >= {guaranteed} guarantees one")
        # pfaffian_nonzero False marks the known degenerate event the absence
        # regime conditions on, so only unconditioned finds count against it
        if regime == "expect-absent" and r["found"] and r["pfaffian_nonzero"] is not False:
            flags.append(
                f"trial {r['trial']}: witness found in the generic-absence regime"
                f" (pfaffian_nonzero={r['pfaffian_nonzero']})"
            )
    found = sum(1 for r in records if r["found"])
    aggregate = {
        "found_count": found,
        "found_frequency": found / cfg.trials,
        "found_ratio": f"{found}/{cfg.trials}",
        "degenerate_count": sum(1 for r in records if r["degenerate"]),
        "all_found_verified": all(r["verified"] for r in records if r["found"]),
    }
    prediction = {
        "absence_below": str(absence),
        "guaranteed_at_or_above": str(guaranteed),
        "regime": regime,
    }
    return _assemble(cfg, records, aggregate, prediction, flags)


# --- group arithmetic property battery ----------------------------------------

def run_group_check(
    n: int,
    t: int,
    trials: int = 100,
    bound: int = 5,
    exp_bound: int = 9,
    seed: int = 0,
    input_tuple: FormTuple | None = None,
    jobs: int = 1,
) -> dict:
    """Exercise the group law, commutators, and the rational-completion bridge.

    One presentation (fixed or sampled from the seed) is tested on random
    elements; every check is exact, so any failure is a bug, not noise.
    """
    if trials < 1 or bound < 1 or exp_bound < 1 or jobs < 1:
        raise ConfigError("trials, bound, exp_bound and jobs must be >= 1")
    if input_tuple is not None:
        if (input_tuple.n, input_tuple.t) != (n, t):
            raise ConfigError("fixed input tuple does not match (n, t)")
        phi = input_tuple
    else:
        if n < 2 or not 1 <= t <= n * (n - 1) // 2:
            raise ConfigError("need n >= 2 and 1 <= t <= n(n-1)/2")
        phi = random_tuple(n, t, bound, derive_rng(seed, "presentation"))
    gp = GroupPresentation(phi)
    alg = gp.lie_algebra()
    identity = gp.identity()

    def sample(rng):
        return gp.element(
            [rng.randint(-exp_bound, exp_bound) for _ in range(n)],
            [rng.randint(-exp_bound, exp_bound) for _ in range(t)],
        )

    def trial(i: int) -> dict:
        rng = derive_rng(seed, "elements", i)
        g, h, m = sample(rng), sample(rng), sample(rng)
        x, y = malcev_map(g), malcev_map(h)
        word_commutator = multiply(multiply(inverse(g), inverse(h)), multiply(g, h))
        bch_comm = bch_mul(bch_mul(bch_mul(x, y), x.neg()), y.neg())
        return {
            "trial": i,
            "g": {"a": list(g.a_exp), "b": list(g.b_exp)},
            "h": {"a": list(h.a_exp), "b": list(h.b_exp)},
            "m": {"a": list(m.a_exp), "b": list(m.b_exp)},
            "associative": multiply(multiply(g, h), m) == multiply(g, multiply(h, m)),
            "inverse_identity": multiply(g, inverse(g)) == identity and multiply(inverse(g), g) == identity,
            "commutator_closed_form": commutator(g, h) == word_commutator,
            "malcev_homomorphism": malcev_map(multiply(g, h)) == bch_mul(x, y),
            "bch_associative": bch_mul(bch_mul(x, y), malcev_map(m)) == bch_mul(x, bch_mul(y, malcev_map(m))),
            "bch_inverse": bch_mul(x, x.neg()).element.is_zero(),
            "bch_commutator": bch_comm == MalcevElement(alg, bracket(alg, x.element, y.element)),
        }

    check_names = (
        "associative",
        "inverse_identity",
        "commutator_closed_form",
        "malcev_homomorphism",
        "bch_associative",
        "bch_inverse",
        "bch_commutator",
    )
    if jobs == 1:
        records = [trial(i) for i in range(trials)]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(trial, range(trials)))
    flags = [
        f"trial {r['trial']}: {name} failed"
        for r in records
        for name in check_names
        if not r[name]
    ]
    aggregate = {name + "_count": sum(1 for r in records if r[name]) for name in check_names}
    aggregate["trials"] = trials
    config = {
        "kind": "group-check",
        "n": n,
        "t": t,
        "trials": trials,
        "bound": bound,
        "exp_bound": exp_bound,
        "seed": seed,
        "input_tuple": tuple_to_json_dict(phi),
    }
    return {
        "kind": "group-check",
        "config": config,
        "records": records,
        "aggregate": aggregate,
        "prediction": {name: trials for name in check_names},
        "verdict": "ok" if not flags else "flagged",
        "flags": flags,
    }


# --- the quaternionic counterexample ------------------------------------------

def run_quaternion_example(minor_points: int = 200, seed: int = 0, restarts: int = 20) -> dict:
    """Reproduce the 3-tuple on Q^4 whose isotropic planes exist mod p but not over Q."""
    if minor_points < 1 or restarts < 1:
        raise ConfigError("minor_points and restarts must be >= 1")
    phi = quaternion_example()
    rng = derive_rng(seed, "minor-points")
    minor_ok = all(
        quaternion_minor_identity([rng.randint(-30, 30) for _ in range(4)])
        for _ in range(minor_points)
    )
    cert = greedy_isotropic(phi, seed=derive_seed(seed, "greedy"), restarts=restarts)
    plane5 = max_isotropic_fp(reduce_tuple_mod_p(phi, 5), 5, 2)
    plane3 = max_isotropic_fp(reduce_tuple_mod_p(phi, 3), 3, 2)
    flags = []
    if not minor_ok:
        flags.append("minor identity failed at a sampled point")
    if cert.subspace.dim != 1 or not cert.verified:
        flags.append(f"rational search reached dimension {cert.subspace.dim}, expected exactly 1")
    if plane5 is None:
        flags.append("no isotropic plane found over F_5, expected one")
    results = {
        "matrices": tuple_to_json_dict(phi)["forms"],
        "minor_identity_points": minor_points,
        "minor_identity_ok": minor_ok,
        "greedy_q_dim": cert.subspace.dim,
        "greedy_q_basis": subspace_to_json(cert.subspace),
        "f5_isotropic_plane": subspace_to_json(plane5) if plane5 is not None else None,
        "f3_isotropic_plane": subspace_to_json(plane3) if plane3 is not None else None,
        "bound_k": bound_k(4, 3),
    }
    config = {"kind": "example-quaternion", "minor_points": minor_points, "seed": seed, "restarts": restarts}
    return {
        "kind": "example-quaternion",
        "config": config,
        "records": [results],
        "aggregate": {
            "q_max_dim_seen": cert.subspace.dim,
            "f5_plane_found": plane5 is not None,
            "f3_plane_found": plane3 is not None,
        },
        "prediction": {"greedy_q_dim": 1, "f5_plane_found": True},
        "verdict": "ok" if not flags else "flagged",
        "flags": flags,
    }


# --- subspace coordinates round trip --------------------------------------------

def run_plucker(ambient: int, basis_rows: list) -> dict:
    """Embed the row span, check the quadratic relations, and recover a basis."""
    if ambient < 1:
        raise ConfigError("need ambient >= 1")
    if not basis_rows:
        raise ConfigError("need at least one basis row")
    if any(len(row) != ambient for row in basis_rows):
        raise ConfigError("basis rows must have length equal to the ambient dimension")
    try:
        sub = Subspace.from_vectors(QQ, ambient, [[QQ.of(x) for x in row] for row in basis_rows])
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad basis entries: {exc}") from None
    if sub.dim == 0:
        raise ConfigError("rows span the zero subspace")
    point = plucker(sub)
    relations_ok = check_plucker_relations(point)
    recovered = basis_from_plucker(point)
    round_trip = recovered == sub
    flags = []
    if not relations_ok:
        flags.append("embedded point fails the quadratic relations")
    if not round_trip:
        flags.append("basis recovery did not return the same canonical subspace")
    index_sets = [
        [i + 1 for i in idx] for idx in itertools.combinations(range(ambient), point.k)
    ]
    results = {
        "k": point.k,
        "n": point.n,
        "grassmannian_dim": dim_grassmannian(point.k, point.n),
        "index_sets": index_sets,
        "coords": [QQ.to_json(v) for v in point.as_list()],
        "relations_ok": relations_ok,
        "canonical_basis": subspace_to_json(sub),
        "recovered_basis": subspace_to_json(recovered),
        "round_trip": round_trip,
    }
    config = {"kind": "plucker", "ambient": ambient, "basis": basis_rows}
    return {
        "kind": "plucker",
        "config": config,
        "records": [results],
        "aggregate": {"relations_ok": relations_ok, "round_trip": round_trip},
        "prediction": {"relations_ok": True, "round_trip": True},
        "verdict": "ok" if not flags else "flagged",
        "flags": flags,
    }


def run_thresholds(n_max: int, n0_max: int) -> dict:
    rows = emit_threshold_table(range(2, n_max + 1), range(2, n0_max + 1))
    return {
        "kind": "thresholds",
        "config": {"kind": "thresholds", "n_max": n_max, "n0_max": n0_max},
        "records": rows,
        "aggregate": {"row_count": len(rows)},
        "prediction": {"ordering": "absence_below <= guaranteed_at_or_above on every row"},
        "verdict": "ok",
        "flags": [],
    }


# --- threshold table -----------------------------------------------------------

def emit_threshold_table(n_range, n0_range) -> list[dict]:
    """Rows (n, n0, t0, thresholds, dimension-N corollary value where defined).

    The absence threshold never exceeds the guarantee threshold (their gap is
    n0(n-n0)/t0); the assertion is a tripwire, not a reachable branch.
    """
    rows = []
    for n in n_range:
        for n0 in n0_range:
            if n0 < 2 or n0 > n:
                continue
            for t0 in range(1, n0 * (n0 - 1) // 2 + 1):
                absence, guaranteed = ms_thresholds(n, n0, t0)
                assert absence <= guaranteed
                target = n0 + t0
                rows.append(
                    {
                        "n": n,
                        "n0": n0,
                        "t0": t0,
                        "absence_below": str(absence),
                        "guaranteed_at_or_above": str(guaranteed),
                        "corollary_bound": str(corollary_bound(n, target)) if target < n else None,
                    }
                )
    return rows
