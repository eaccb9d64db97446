"""Comparison cases: stable text ids, model construction, certificates.

A case compares two models of the same kind on one coordinate space: two
2-tree mixtures, two named networks, or two single trees.  Component ids are
the canonical split-list text for trees and the cycle serial for networks,
so ids round-trip through parsing and stay byte-stable across runs.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Sequence

from .certify import SearchOutcome, SZConfig, certify_exact, certify_sz, verify_separation
from .linalg import rank_mod_pivots
from .models import ModelKind, Parameterization, fourier_map, mixture_map
from .networks import NAMED_NETWORKS, CycleNetwork, named_network, network_map
from .poly import DEFAULT_PRIME
from .trees import Tree
from random import Random

FORMAT_VERSION = 1

#: conventions baked into every parameterization; recorded in certificates for
#: the kinds whose parameter identifications are a choice
CONVENTIONS = {
    "k2p": "per edge, the (0,1) and (1,1) parameters are identified",
    "jc": "per edge, all three nonzero-element parameters are identified",
}


@dataclass(frozen=True)
class CaseDescriptor:
    kind: ModelKind
    structure: str  # "mixture" | "network" | "tree"
    left: tuple[str, ...]
    right: tuple[str, ...]

    def __post_init__(self):
        want = 2 if self.structure == "mixture" else 1
        if self.structure not in ("mixture", "network", "tree"):
            raise ValueError(f"unknown case structure {self.structure!r}")
        if len(self.left) != want or len(self.right) != want:
            raise ValueError(f"{self.structure} cases take {want} component(s) per side")

    @property
    def case_id(self) -> str:
        left = "+".join(self.left)
        right = "+".join(self.right)
        return f"{self.kind.value}:{self.structure}:{left}~{right}"

    @classmethod
    def parse(cls, text: str) -> "CaseDescriptor":
        try:
            kind_s, structure, rest = text.split(":", 2)
            left_s, right_s = rest.split("~")
        except ValueError as exc:
            raise ValueError(f"malformed case id {text!r}") from exc
        kind = ModelKind(kind_s)
        left = tuple(left_s.split("+"))
        right = tuple(right_s.split("+"))
        if structure == "mixture":
            left = tuple(sorted(Tree.from_text(t).text() for t in left))
            right = tuple(sorted(Tree.from_text(t).text() for t in right))
        elif structure == "network":
            left = (named_network(left[0]).serial(),)
            right = (named_network(right[0]).serial(),)
        elif structure == "tree":
            left = (Tree.from_text(left[0]).text(),)
            right = (Tree.from_text(right[0]).text(),)
        return cls(kind, structure, left, right)

    def build(self) -> tuple[Parameterization, Parameterization]:
        sides = []
        for comps in (self.left, self.right):
            if self.structure == "mixture":
                t1, t2 = (Tree.from_text(t) for t in comps)
                sides.append(mixture_map(t1, t2, self.kind))
            elif self.structure == "network":
                sides.append(network_map(named_network(comps[0]), self.kind))
            else:
                sides.append(fourier_map(Tree.from_text(comps[0]), self.kind))
        left, right = sides
        if left.coords != right.coords:
            raise ValueError("case sides live on different coordinate spaces")
        return left, right


def mixture_case(kind: ModelKind, left: Sequence[Tree], right: Sequence[Tree]) -> CaseDescriptor:
    lt = tuple(sorted(t.text() for t in left))
    rt = tuple(sorted(t.text() for t in right))
    return CaseDescriptor(kind, "mixture", lt, rt)


def network_case(kind: ModelKind, left: str, right: str) -> CaseDescriptor:
    return CaseDescriptor(kind, "network",
                          (named_network(left).serial(),),
                          (named_network(right).serial(),))


def tree_case(kind: ModelKind, left: str, right: str) -> CaseDescriptor:
    return CaseDescriptor(kind, "tree",
                          (Tree.from_text(left).text(),),
                          (Tree.from_text(right).text(),))


@dataclass(frozen=True)
class Certificate:
    version: int
    model: str
    structure: str
    left: tuple[str, ...]
    right: tuple[str, ...]
    subset: tuple[tuple[int, ...], ...]  # coordinate g-tuples, internal encoding
    direction: str  # "left-independent" | "right-independent"
    verification: dict
    seed: int
    timestamp: str

    @property
    def descriptor(self) -> CaseDescriptor:
        return CaseDescriptor(ModelKind(self.model), self.structure,
                              self.left, self.right)

    @property
    def case_id(self) -> str:
        return self.descriptor.case_id

    def to_json(self) -> dict:
        kind = ModelKind(self.model)
        out = {
            "version": self.version,
            "model": self.model,
            "structure": self.structure,
            "case": {"left": list(self.left), "right": list(self.right)},
            "subset": [[kind.element_wire(g) for g in coord] for coord in self.subset],
            "direction": self.direction,
            "verification": self.verification,
            "seed": self.seed,
            "timestamp": self.timestamp,
        }
        if self.model in CONVENTIONS:
            out["conventions"] = CONVENTIONS[self.model]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Certificate":
        kind = ModelKind(obj["model"])
        subset = tuple(
            tuple(kind.element_unwire(g) for g in coord) for coord in obj["subset"]
        )
        return cls(
            version=obj["version"],
            model=obj["model"],
            structure=obj["structure"],
            left=tuple(obj["case"]["left"]),
            right=tuple(obj["case"]["right"]),
            subset=subset,
            direction=obj["direction"],
            verification=dict(obj["verification"]),
            seed=obj["seed"],
            timestamp=obj["timestamp"],
        )


@dataclass(frozen=True)
class CaseResult:
    case: CaseDescriptor
    certificate: Certificate | None
    trials_used: int
    screen_hits: int
    dims: tuple[int, int]

    @property
    def solved(self) -> bool:
        return self.certificate is not None


def case_seed(master_seed: int, case_id: str) -> int:
    digest = hashlib.sha256(f"{master_seed}|{case_id}".encode()).hexdigest()
    return int(digest[:16], 16)


def numeric_dimension(param: Parameterization, seed: int = 0xD1) -> int:
    """Fast high-confidence dimension estimate (exact lower bound): the best
    rank of the matroid matrix over a few random prime-field points."""
    M = param.matroid_matrix()
    rng = Random(seed)
    best = 0
    for _ in range(3):
        point = [rng.randrange(1, DEFAULT_PRIME) for _ in M.vars]
        best = max(best, len(rank_mod_pivots(M.eval_mod(point, DEFAULT_PRIME), DEFAULT_PRIME)))
    return best


def certify_case(case: CaseDescriptor, mode: str = "sz", epsilon: float = 1e-10,
                 trials: int = 2000, seed: int = 0,
                 sampler: str = "guided") -> CaseResult:
    """Run one certification case end to end.

    Orientation: the searched certificate is independent in the
    lower-dimensional model and dependent in the other; when the two numeric
    dimensions agree, both directions are accepted.
    """
    left, right = case.build()
    M_left, M_right = left.matroid_matrix(), right.matroid_matrix()
    d_left = numeric_dimension(left)
    d_right = numeric_dimension(right)
    same_dim = d_left == d_right
    # J1 is the side whose dependencies we hunt; spec orientation dim1 >= dim2
    if d_left >= d_right:
        J1, J2, ind_side_label = M_left, M_right, ("right-independent", "left-independent")
    else:
        J1, J2, ind_side_label = M_right, M_left, ("left-independent", "right-independent")
    bound = min(d_left, d_right)
    if mode == "exact":
        outcome = certify_exact(J1, J2, trials, bound, seed=seed,
                                same_dim=same_dim, sampler=sampler)
    elif mode == "sz":
        cfg = SZConfig.for_models(J1, J2, bound, epsilon=epsilon, trials=trials)
        outcome = certify_sz(J1, J2, cfg, seed=seed, same_dim=same_dim,
                             subset_bound=bound, sampler=sampler)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    cert = None
    if outcome.found:
        sep = outcome.separation
        direction = ind_side_label[0] if sep.independent_side == 2 else ind_side_label[1]
        coords = left.coords
        cert = Certificate(
            version=FORMAT_VERSION,
            model=case.kind.value,
            structure=case.structure,
            left=case.left,
            right=case.right,
            subset=tuple(coords[j] for j in sep.subset),
            direction=direction,
            verification=sep.verification,
            seed=seed,
            timestamp=datetime.now(timezone.utc).isoformat(),
        )
    return CaseResult(case, cert, outcome.trials_used, outcome.screen_hits,
                      (d_left, d_right))


def verify_certificate(cert: Certificate) -> bool:
    """Rebuild the case's models and replay the symbolic check on the stored
    subset; certificates produced in sampled mode must also pass this."""
    case = cert.descriptor
    left, right = case.build()
    coord_index = {g: j for j, g in enumerate(left.coords)}
    try:
        subset = [coord_index[g] for g in cert.subset]
    except KeyError as exc:
        raise ValueError(f"certificate subset has unknown coordinate {exc}") from exc
    if len(set(subset)) != len(subset) or not subset:
        return False
    if cert.direction == "left-independent":
        independent_side = 1
    elif cert.direction == "right-independent":
        independent_side = 2
    else:
        raise ValueError(f"bad direction {cert.direction!r}")
    return verify_separation(left.matroid_matrix(), right.matroid_matrix(),
                             subset, independent_side)
