"""Seeded invariant suites shared by ``bifocal verify`` and the acceptance tests.

Every suite is deterministic in (trials, seed): each trial draws from its own
PCG64 stream keyed by the suite name, the configuration and the trial index.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .camera import (canonical_pair, make_pair, corresponding_subspaces, random_full_rank,
                     random_pair, random_rational)
from .canon import (act_big_group, decompose_tensor, reduce_to_canonical,
                    reduction_holds, transform_tensor)
from .exterior import compound, hodge_tensor
from .gtensor import (admissible_profiles, build_tensor, corresponding_generators,
                      evaluate, expected_rank, oracle_sign,
                      random_generators, system_determinant)
from .moduli import (acted_tensor_ratio, check_equivariance, entry_jacobian,
                     preimage_of_plane, psi, psi_oracle, random_calG, random_plane,
                     stabilizer_member, variety_dimension)
from .paper_example import reproduce
from .ratmat import det, inverse, rank_of

ORACLE_CONFIGS = ((3, 2, 2), (4, 3, 2), (5, 4, 3), (6, 4, 4))
JACOBIAN_CONFIGS = ((5, 4, 3), (4, 3, 2))


def all_configs(max_k: int = 7) -> list[tuple[int, int, int]]:
    """Every (k, h1, h2) with k <= max_k that admits at least one profile."""
    return [(k, h1, h2) for k in range(2, max_k + 1) for h1 in range(1, k) for h2 in range(1, k)
            if h1 + h2 >= k + 1]


def trial_rng(seed: int, *tags) -> np.random.Generator:
    key = [seed] + [zlib.crc32(repr(t).encode()) for t in tags]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(key)))


def trial_seed(seed: int, *tags) -> int:
    return int(trial_rng(seed, "seed", *tags).integers(0, 2**63 - 1))


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list[str] = field(default_factory=list)
    info: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, ok: bool, what: str) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < 20:
                self.failures.append(what)


def _nonzero_pair_sample(pair, profile, rng):
    for _ in range(100):
        S1 = random_generators(rng, pair.h1 + 1, profile.s1 + 1)
        S2 = random_generators(rng, pair.h2 + 1, profile.s2 + 1)
        T = build_tensor(pair, profile)
        if evaluate(T, S1, S2):
            return T, S1, S2
    raise RuntimeError("every sampled subspace pair corresponds")


def suite_oracle(trials: int = 100, seed: int = 7, configs=ORACLE_CONFIGS) -> SuiteResult:
    """evaluate and the system determinant agree up to one sign per configuration."""
    res = SuiteResult("oracle")
    for dims in configs:
        for profile in admissible_profiles(*dims):
            tag = (dims, profile.alpha1)
            constants = set()
            for t in range(trials):
                pair = random_pair(*dims, seed=trial_seed(seed, "oracle-pair", tag, t))
                rng = trial_rng(seed, "oracle", tag, t)
                T, S1, S2 = _nonzero_pair_sample(pair, profile, rng)
                constants.add(system_determinant(pair, S1, S2) / evaluate(T, S1, S2))
                S1c, S2c = corresponding_generators(pair, profile, rng)
                res.record(evaluate(T, S1c, S2c) == 0 and system_determinant(pair, S1c, S2c) == 0
                           and corresponding_subspaces(pair, S1c, S2c),
                           f"{tag} trial {t}: corresponding subspaces do not vanish")
            c = oracle_sign(*dims)
            res.record(constants == {c}, f"{tag}: constants {sorted(constants)} != {{{c}}}")
            res.info.append(f"{dims} alpha={profile.alpha1, profile.alpha2}: c = {c:+d}")
    return res


def suite_rank(trials: int = 5, seed: int = 7, max_k: int = 7) -> SuiteResult:
    res = SuiteResult("rank")
    for dims in all_configs(max_k):
        for profile in admissible_profiles(*dims):
            for t in range(trials):
                pair = random_pair(*dims, seed=trial_seed(seed, "rank", dims, profile.alpha1, t))
                r = rank_of(build_tensor(pair, profile).F)
                res.record(r == expected_rank(profile),
                           f"{dims} {profile}: rank {r} != {expected_rank(profile)}")
    return res


def suite_canon(trials: int = 50, seed: int = 7, configs=ORACLE_CONFIGS) -> SuiteResult:
    res = SuiteResult("canon")
    for dims in configs:
        for t in range(trials):
            pair = random_pair(*dims, seed=trial_seed(seed, "canon", dims, t))
            res.record(reduction_holds(pair, reduce_to_canonical(pair)), f"{dims} trial {t}")
    return res


def suite_decomp(trials: int = 50, seed: int = 7, configs=ORACLE_CONFIGS) -> SuiteResult:
    """Transformation law from the canonical tensor, reassembly and minimality."""
    res = SuiteResult("decomp")
    for dims in configs:
        canon = canonical_pair(*dims)
        for t in range(trials):
            pair = random_pair(*dims, seed=trial_seed(seed, "decomp", dims, t))
            red = reduce_to_canonical(pair)
            for profile in admissible_profiles(*dims):
                tag = f"{dims} alpha1={profile.alpha1} trial {t}"
                F = build_tensor(pair, profile)
                Fc = build_tensor(canon, profile)
                res.record(transform_tensor(Fc, red.K1, red.K2, red.detG).F == F.F,
                           f"{tag}: transformation law")
                dec = decompose_tensor(pair, profile)
                re = dec.reassemble()
                res.record(re == F.F, f"{tag}: reassembly")
                res.record(len(dec.terms) == expected_rank(profile) == rank_of(re),
                           f"{tag}: term count / rank")
    return res


def suite_action(trials: int = 20, seed: int = 7, configs=ORACLE_CONFIGS) -> SuiteResult:
    """build_tensor of a big-group translate follows the transformation law."""
    res = SuiteResult("action")
    for dims in configs:
        k, h1, h2 = dims
        for t in range(trials):
            rng = trial_rng(seed, "action", dims, t)
            pair = random_pair(*dims, seed=trial_seed(seed, "action-pair", dims, t))
            G = random_full_rank(rng, k + 1, k + 1)
            H1 = random_full_rank(rng, h1 + 1, h1 + 1)
            H2 = random_full_rank(rng, h2 + 1, h2 + 1)
            moved = act_big_group(pair, G, H1, H2)
            for profile in admissible_profiles(*dims):
                lhs = build_tensor(moved, profile).F
                rhs = transform_tensor(build_tensor(pair, profile), inverse(H1), inverse(H2),
                                       1 / det(G)).F
                res.record(lhs == rhs, f"{dims} alpha1={profile.alpha1} trial {t}")
    return res


def suite_hodge(trials: int = 100, seed: int = 7, max_i: int = 6) -> SuiteResult:
    """compound(Γ) · hodge · compound(Γ)^T = det(Γ) · hodge."""
    res = SuiteResult("hodge")
    for i in range(2, max_i + 1):
        for t in range(trials):
            gamma = random_full_rank(trial_rng(seed, "hodge", i, t), i, i)
            d = det(gamma)
            for r in range(1, i):
                H = hodge_tensor(i, r)
                lhs = compound(gamma, r) @ H @ compound(gamma, i - r).T
                res.record(lhs == H.scale(d), f"i={i} r={r} trial {t}")
    return res


def suite_psi(trials: int = 100, seed: int = 7, configs=ORACLE_CONFIGS,
              planes: int = 50) -> SuiteResult:
    """Psi-equivariance, Psi against the annihilator oracle, and preimage round trips."""
    res = SuiteResult("psi")
    for dims in configs:
        k, h1, h2 = dims
        i = h1 + h2 - k + 1
        for t in range(trials):
            pair = random_pair(*dims, seed=trial_seed(seed, "psi-pair", dims, t))
            g = random_calG(trial_rng(seed, "psi-g", dims, t), i, h1, h2)
            res.record(check_equivariance(pair, g), f"{dims} trial {t}: equivariance")
            res.record(psi(pair) == psi_oracle(pair), f"{dims} trial {t}: annihilator oracle")
        for t in range(planes):
            W = random_plane(k, i, trial_rng(seed, "plane", dims, t))
            pre = preimage_of_plane(W, h1, h2, seed=trial_seed(seed, "preimage", dims, t))
            res.record(psi(pre) == W, f"{dims} plane {t}: psi(preimage) != W")
    return res


def suite_stabilizer(trials: int = 50, seed: int = 7, configs=ORACLE_CONFIGS) -> SuiteResult:
    """Scalar H fixes the canonical tensor up to scalar; non-scalar H should move it."""
    res = SuiteResult("stabilizer")
    for dims in configs:
        k, h1, h2 = dims
        i = h1 + h2 - k + 1
        canon = canonical_pair(*dims)
        for t in range(trials):
            rng = trial_rng(seed, "stab", dims, t)
            g_in = random_calG(rng, i, h1, h2, scalar_H=True)
            g_out = random_calG(rng, i, h1, h2)
            while stabilizer_member(g_out):
                g_out = random_calG(rng, i, h1, h2)
            for profile in admissible_profiles(*dims):
                tag = f"{dims} alpha1={profile.alpha1} trial {t}"
                res.record(stabilizer_member(g_in)
                           and acted_tensor_ratio(canon, g_in, profile) is not None,
                           f"{tag}: scalar H does not fix the canonical tensor")
                res.record(acted_tensor_ratio(canon, g_out, profile) is None,
                           f"{tag}: non-scalar H leaves the canonical tensor proportional")
    return res


def suite_scaling(trials: int = 20, seed: int = 7, configs=ORACLE_CONFIGS) -> SuiteResult:
    """build_tensor(zλA, zμB) = z^(k+1) λ^α1 μ^α2 build_tensor(A, B)."""
    res = SuiteResult("scaling")
    for dims in configs:
        k = dims[0]
        for t in range(trials):
            rng = trial_rng(seed, "scaling", dims, t)
            pair = random_pair(*dims, seed=trial_seed(seed, "scaling-pair", dims, t))
            z, lam, mu = (random_rational(rng) for _ in range(3))
            scaled = make_pair(pair.A.scale(z * lam), pair.B.scale(z * mu))
            for profile in admissible_profiles(*dims):
                factor = z ** (k + 1) * lam ** profile.alpha1 * mu ** profile.alpha2
                res.record(build_tensor(scaled, profile).F == build_tensor(pair, profile).F.scale(factor),
                           f"{dims} alpha1={profile.alpha1} trial {t}")
    return res


def suite_jacobian(trials: int = 1, seed: int = 7, configs=JACOBIAN_CONFIGS) -> SuiteResult:
    """Rank of the exact Jacobian of (A, B) -> F equals (k+1) i, the affine cone dimension."""
    res = SuiteResult("jacobian")
    for dims in configs:
        for t in range(trials):
            pair = random_pair(*dims, seed=trial_seed(seed, "jacobian", dims, t))
            want = variety_dimension(*dims) + 1
            for profile in admissible_profiles(*dims):
                r = rank_of(entry_jacobian(pair, profile))
                res.record(r == want, f"{dims} alpha1={profile.alpha1}: rank {r} != {want}")
                res.info.append(f"{dims} alpha={profile.alpha1, profile.alpha2}: Jacobian rank {r}")
    return res


def suite_example(trials: int = 1, seed: int = 7) -> SuiteResult:
    res = SuiteResult("example")
    rep = reproduce()
    for c in rep.checks:
        res.record(c.ok, c.name)
    res.info.extend(rep.notes)
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "example": suite_example,
    "rank": suite_rank,
    "oracle": suite_oracle,
    "canon": suite_canon,
    "decomp": suite_decomp,
    "action": suite_action,
    "hodge": suite_hodge,
    "psi": suite_psi,
    "stabilizer": suite_stabilizer,
    "scaling": suite_scaling,
    "jacobian": suite_jacobian,
}

# trial counts used when the caller does not override them
DEFAULT_TRIALS = {"example": 1, "rank": 5, "oracle": 100, "canon": 50, "decomp": 50,
                  "action": 20, "hodge": 100, "psi": 100, "stabilizer": 50, "scaling": 20,
                  "jacobian": 1}


def run_suites(names: list[str], trials: int | None = None, seed: int = 7) -> list[SuiteResult]:
    out = []
    for name in names:
        n = DEFAULT_TRIALS[name] if trials is None else trials
        if name in ("example", "jacobian"):
            n = DEFAULT_TRIALS[name]
        out.append(SUITES[name](trials=n, seed=seed))
    return out
