"""Sequential measurement construction and verification.

A sequential strategy has Alice measure first with a seven-outcome
instrument and Bob finish on his subsystem conditioned on her label:

    announce j   Alice has identified state j; Bob reports j blindly
    exclude j    Alice has ruled out state j; Bob unambiguously separates
                 the remaining two
    defer        Alice learned nothing; Bob runs the full three-state
                 unambiguous measurement alone

Alice's announce operators are scaled rank-one projections onto vectors
with components 1/x_n (orthogonal to the other two states), the exclude
operators use components 1/(x_n z), and the defer operator sits on the
basis slot carrying the minimal joint amplitude.  The three weights
(u_1, u_2, u_3) are fixed by her completeness relation, a real 3x3
system; nonnegativity of its solution is exactly the optimality verdict,
so a negative weight raises NotGloballyOptimal.

`dual_certificate` re-proves optimality independently of how the
measurement was built: for each label it projects the dual witness
operator onto the subspace Bob can still use and checks positivity plus
the zero-eigenvalue structure the optimum forces.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    CertificateViolation,
    DegenerateStates,
    DomainError,
    InvalidPovm,
    NotGloballyOptimal,
    SingularSystem,
)
from .numerics import TOL, hermitian_eigen, solve3
from .optimality import filter_level, global_optimum
from .serialize import json_dumps
from .states import TAU, CanonicalPair, StateVectors, amplitudes_from_overlap, state_vectors

LABELS = (
    "announce0",
    "announce1",
    "announce2",
    "exclude0",
    "exclude1",
    "exclude2",
    "defer",
)

OUTCOME_LABELS = ("0", "1", "2", "inconclusive")


@dataclass(frozen=True)
class Povm:
    """Labeled positive operator-valued measure."""

    outcomes: tuple
    labels: tuple

    @property
    def dim(self) -> int:
        return self.outcomes[0].shape[0]


@dataclass(frozen=True)
class SequentialMeasurement:
    """Alice's instrument plus Bob's conditioned measurements.

    alice:   label -> 3x3 PSD operator, summing to the identity
    bob:     label -> four-outcome Povm ("0", "1", "2", "inconclusive")
    weights: (u_1, u_2, u_3) announce / exclude / defer scale factors
    branch:  construction regime, matches the optimality report branch
    """

    alice: dict
    bob: dict
    weights: tuple
    branch: str


@dataclass(frozen=True)
class PovmCheck:
    """psd_margin: smallest eigenvalue over all outcomes (want >= -1e-12);
    completeness: max |sum of outcomes - identity| entry."""

    psd_margin: float
    completeness: float


@dataclass(frozen=True)
class CertificateReport:
    """Dual-certificate diagnostics, keyed by Alice label where per-label."""

    psd_margin: dict
    kernel_residual: dict
    kernel_dim: dict
    completeness: float
    unambiguity: dict
    success: float


def binary_unambiguous(u, v) -> Povm:
    """Optimal unambiguous discrimination of two pure states.

    args:    u, v -- unit vectors (any common dimension)
    returns: Povm with labels ("first", "second", "inconclusive"); the
             "first" outcome has zero probability on v and vice versa,
             each conclusive probability is 1 - |<u|v>|
    raises:  DegenerateStates if the states are numerically parallel
    """
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    c = np.vdot(u, v)
    if abs(c) >= 1.0 - 1e-12:
        raise DegenerateStates(f"|<u|v>| = {abs(c):.15g} is too close to 1")
    wu = u - c.conjugate() * v  # component of u orthogonal to v
    wu = wu / np.linalg.norm(wu)
    wv = v - c * u
    wv = wv / np.linalg.norm(wv)
    scale = 1.0 / (1.0 + abs(c))
    detect_u = scale * np.outer(wu, wu.conj())
    detect_v = scale * np.outer(wv, wv.conj())
    eye = np.eye(len(u), dtype=complex)
    return Povm(
        outcomes=(detect_u, detect_v, eye - detect_u - detect_v),
        labels=("first", "second", "inconclusive"),
    )


def ternary_unambiguous(w) -> Povm:
    """Optimal unambiguous discrimination of three symmetric states.

    args:    w -- positive amplitude triple generating states
                  sum_n w_n tau^{rn} |n>, r = 0, 1, 2
    returns: four-outcome Povm; outcome r fires only on state r, with
             probability 3 * min(w)^2, and the inconclusive operator is
             diagonal
    """
    w = tuple(float(v) for v in w)
    if min(w) <= 0.0:
        raise DomainError(f"amplitudes must be positive, got {w}")
    wmin = min(w)
    detect = []
    for r in range(3):
        vec = np.array([(wmin / math.sqrt(3.0)) / w[n] * TAU ** (r * n) for n in range(3)])
        detect.append(np.outer(vec, vec.conj()))
    inconclusive = np.eye(3, dtype=complex) - sum(detect)
    return Povm(outcomes=(*detect, inconclusive), labels=OUTCOME_LABELS)


def solve_weights(pair: CanonicalPair):
    """Announce / exclude / defer weights from Alice's completeness relation.

    Row k of the system constrains the basis slot pair.perm[k]:

        u_1 / x_pk^2 + u_2 / (x_pk^2 z_k^2) + delta_{k,2} u_3 = 1

    returns: (u_1, u_2, u_3); any negative entry means no globally optimal
             sequential measurement exists
    raises:  SingularSystem when Bob's top offsets tie (z_0 == z_1)
    """
    level = filter_level(pair.kb)
    z = tuple(v**2 - level for v in pair.y)
    if min(abs(v) for v in z) == 0.0:
        raise SingularSystem("an offset z_k vanishes; weight system undefined")
    rows = []
    for k in range(3):
        xs = pair.x[pair.perm[k]] ** -2
        rows.append([xs, xs * z[k] ** -2, 1.0 if k == 2 else 0.0])
    return solve3(rows, (1.0, 1.0, 1.0))


def _always(j: int) -> Povm:
    eye = np.eye(3, dtype=complex)
    zero = np.zeros((3, 3), dtype=complex)
    outcomes = tuple(eye if r == j else zero for r in range(3)) + (zero,)
    return Povm(outcomes=outcomes, labels=OUTCOME_LABELS)


def _exclude_bob(j: int, b: np.ndarray) -> Povm:
    """Bob's measurement after Alice ruled out state j: unambiguously
    separate b_{j+1} from b_{j+2}; outcome j never fires."""
    r1, r2 = (j + 1) % 3, (j + 2) % 3
    binary = binary_unambiguous(b[r1], b[r2])
    outcomes = [np.zeros((3, 3), dtype=complex) for _ in range(4)]
    outcomes[r1] = binary.outcomes[0]
    outcomes[r2] = binary.outcomes[1]
    outcomes[3] = binary.outcomes[2]
    return Povm(outcomes=tuple(outcomes), labels=OUTCOME_LABELS)


def _bob_map(pair_y, b_rows) -> dict:
    bob = {}
    for j in range(3):
        bob[f"announce{j}"] = _always(j)
        bob[f"exclude{j}"] = _exclude_bob(j, b_rows)
    bob["defer"] = ternary_unambiguous(pair_y)
    return bob


def _product_sequential(pair: CanonicalPair, branch: str) -> SequentialMeasurement:
    """Alice and Bob each run their own optimal three-state measurement;
    Bob only acts when Alice defers."""
    tern = ternary_unambiguous(pair.x)
    zero = np.zeros((3, 3), dtype=complex)
    alice = {}
    for j in range(3):
        alice[f"announce{j}"] = tern.outcomes[j]
        alice[f"exclude{j}"] = zero
    alice["defer"] = tern.outcomes[3]
    b = state_vectors(pair).b
    weights = (min(pair.x) ** 2, 0.0, float(np.trace(alice["defer"]).real))
    return SequentialMeasurement(
        alice=alice, bob=_bob_map(pair.y, b), weights=weights, branch=branch
    )


def _product_success(pair: CanonicalPair) -> float:
    px = 3.0 * min(pair.x) ** 2
    py = 3.0 * min(pair.y) ** 2
    return px + py - px * py


def build_sequential(pair: CanonicalPair) -> SequentialMeasurement:
    """Globally optimal sequential measurement for a canonical pair.

    raises: NotGloballyOptimal when none exists (negative weight, or an
            underdetermined weight system whose product fallback misses
            the global optimum)
    """
    x, y, perm = pair.x, pair.y, pair.perm
    if y[1] - y[2] <= TOL.tie:
        return _product_sequential(pair, "PositiveRealB")

    branch = "PositiveRealA" if x[1] - x[2] <= TOL.tie else "Inequality"
    try:
        u = solve_weights(pair)
    except SingularSystem:
        # Bob's top offsets tie; the weight system degenerates.  The
        # product strategy is the only candidate left.
        if abs(_product_success(pair) - global_optimum(pair)) <= 1e-9:
            return _product_sequential(pair, branch)
        raise NotGloballyOptimal(
            "weight system is singular and the product strategy is suboptimal"
        ) from None

    if min(u) < -TOL.psd:
        raise NotGloballyOptimal(f"negative measurement weight: u = {u}")
    u = tuple(max(v, 0.0) for v in u)

    level = filter_level(pair.kb)
    z = tuple(v**2 - level for v in y)
    zero = np.zeros((3, 3), dtype=complex)
    alice = {}
    for j in range(3):
        vec1 = np.array([TAU ** (j * n) / x[n] for n in range(3)])
        alice[f"announce{j}"] = (u[0] / 3.0) * np.outer(vec1, vec1.conj())
        vec2 = np.array([TAU ** (j * n) / (x[n] * z[perm[n]]) for n in range(3)])
        alice[f"exclude{j}"] = (u[1] / 3.0) * np.outer(vec2, vec2.conj()) if u[1] > 0 else zero
    slot = np.zeros(3, dtype=complex)
    slot[perm[2]] = 1.0
    alice["defer"] = u[2] * np.outer(slot, slot.conj())

    b = state_vectors(pair).b
    return SequentialMeasurement(
        alice=alice, bob=_bob_map(y, b), weights=u, branch=branch
    )


def build_bob_only(ka, kb):
    """Construction for kb numerically zero: Alice defers outright and
    Bob's three states are (near-)orthogonal, so he discriminates alone.

    returns: (SequentialMeasurement, StateVectors) built from the raw,
             uncanonicalized amplitudes
    """
    x = amplitudes_from_overlap(ka)
    y = amplitudes_from_overlap(kb)
    sv = StateVectors(
        a=np.array([[x[n] * TAU ** (r * n) for n in range(3)] for r in range(3)]),
        b=np.array([[y[n] * TAU ** (r * n) for n in range(3)] for r in range(3)]),
    )
    zero = np.zeros((3, 3), dtype=complex)
    alice = {label: zero for label in LABELS[:6]}
    alice["defer"] = np.eye(3, dtype=complex)
    seq = SequentialMeasurement(
        alice=alice,
        bob=_bob_map(y, sv.b),
        weights=(0.0, 0.0, 3.0),
        branch="Orthogonal",
    )
    return seq, sv


def flatten(seq: SequentialMeasurement) -> Povm:
    """Combine Alice and Bob into one four-outcome POVM on the 9-dim space."""
    outcomes = []
    for r in range(4):
        total = np.zeros((9, 9), dtype=complex)
        for label in LABELS:
            total += np.kron(seq.alice[label], seq.bob[label].outcomes[r])
        outcomes.append(total)
    return Povm(outcomes=tuple(outcomes), labels=OUTCOME_LABELS)


def joint_states(sv: StateVectors) -> np.ndarray:
    """Rows are the three product states a_r (x) b_r."""
    return np.array([np.kron(sv.a[r], sv.b[r]) for r in range(3)])


def verify_povm(p: Povm) -> PovmCheck:
    """Structural POVM validation.

    returns: PovmCheck margins
    raises:  InvalidPovm on shape mismatch or a non-Hermitian outcome
    """
    dim = None
    min_eig = math.inf
    for label, op in zip(p.labels, p.outcomes):
        op = np.asarray(op)
        if op.ndim != 2 or op.shape[0] != op.shape[1]:
            raise InvalidPovm(f"outcome {label}: not square, shape {op.shape}")
        if dim is None:
            dim = op.shape[0]
        elif op.shape[0] != dim:
            raise InvalidPovm(f"outcome {label}: dimension {op.shape[0]} != {dim}")
        try:
            w, _ = hermitian_eigen(op)
        except Exception as exc:
            raise InvalidPovm(f"outcome {label}: {exc}") from exc
        min_eig = min(min_eig, float(w[0]))
    total = sum(np.asarray(op, dtype=complex) for op in p.outcomes)
    completeness = float(np.max(np.abs(total - np.eye(dim))))
    return PovmCheck(psd_margin=min_eig, completeness=completeness)


def verify_unambiguous(p: Povm, states, priors=(1 / 3, 1 / 3, 1 / 3)):
    """Success probability and worst misidentification leak.

    args:    states -- array with the three state vectors as rows,
             matching p's dimension; priors -- weights for the success
    returns: (success, residual) where residual is the largest
             probability of reporting r on a state r' != r
    """
    states = np.asarray(states, dtype=complex)
    success = 0.0
    residual = 0.0
    for r in range(3):
        for rp in range(3):
            prob = float(np.real(np.vdot(states[rp], p.outcomes[r] @ states[rp])))
            if r == rp:
                success += priors[r] * prob
            else:
                residual = max(residual, abs(prob))
    return success, residual


def _null_projector(vectors) -> np.ndarray:
    """Projector onto the orthocomplement of the span of the given vectors."""
    if not vectors:
        return np.eye(3, dtype=complex)
    gram = sum(np.outer(v, v.conj()) for v in vectors)
    w, vv = hermitian_eigen(gram)
    keep = [vv[:, i] for i in range(3) if w[i] < 1e-8]
    out = np.zeros((3, 3), dtype=complex)
    for v in keep:
        out += np.outer(v, v.conj())
    return out


def _allowed_states(label: str):
    """States Bob may still report after Alice's label."""
    if label.startswith("announce"):
        return (int(label[-1]),)
    if label.startswith("exclude"):
        j = int(label[-1])
        return ((j + 1) % 3, (j + 2) % 3)
    return (0, 1, 2)


def dual_certificate(pair: CanonicalPair, seq: SequentialMeasurement) -> CertificateReport:
    """Independent optimality proof for a constructed measurement.

    For each Alice label the witness X - sum_{r in T} (p_r/3) |a_r><a_r|
    is projected onto the orthocomplement of the states Bob can no longer
    report (T is the set he still may).  Checks per label:

      (i)   projected witness PSD within TOL.psd
      (ii)  it annihilates Alice's operator range (residual <= 1e-8)
      (iii) its kernel inside the projected subspace is one-dimensional
            (skipped where the construction legitimately has a larger
            kernel: the defer label off the generic branches)

    plus Alice completeness and per-label unambiguity leaks.

    raises: CertificateViolation naming every failed label and margin
    """
    x, y, perm = pair.x, pair.y, pair.perm
    sv = state_vectors(pair)
    witness = np.diag([3.0 * x[n] ** 2 * y[perm[n]] ** 2 for n in range(3)]).astype(complex)
    level = filter_level(pair.kb)
    p_value = {
        "announce": 1.0,
        "exclude": 3.0 * level,
        "defer": 3.0 * y[2] ** 2,
    }

    psd_margin = {}
    kernel_residual = {}
    kernel_dim = {}
    unambiguity = {}
    failures = []
    for label in LABELS:
        allowed = _allowed_states(label)
        blocked = tuple(r for r in range(3) if r not in allowed)
        pv = p_value[label.rstrip("012")]
        d = witness.copy()
        for r in allowed:
            d -= (pv / 3.0) * np.outer(sv.a[r], sv.a[r].conj())
        proj = _null_projector([sv.a[r] for r in blocked])
        g = proj @ d @ proj
        g = (g + g.conj().T) / 2.0
        w, _ = hermitian_eigen(g)
        psd_margin[label] = float(w[0])
        if w[0] < -TOL.psd:
            failures.append(f"{label}: witness eigenvalue {w[0]:.3e}")

        a_op = seq.alice[label]
        a_norm = float(np.linalg.norm(a_op))
        active = a_norm > 1e-14
        if active:
            kernel_residual[label] = float(np.linalg.norm(g @ a_op) / a_norm)
            if kernel_residual[label] > 1e-8:
                failures.append(f"{label}: kernel residual {kernel_residual[label]:.3e}")
        else:
            kernel_residual[label] = 0.0

        check_dim = active and (label != "defer" or seq.branch != "PositiveRealB")
        if check_dim:
            rank_proj = int(round(float(np.trace(proj).real)))
            near_zero = int(np.sum(np.abs(w) < 1e-9))
            dim_in = near_zero - (3 - rank_proj)
            kernel_dim[label] = dim_in
            if dim_in != 1:
                failures.append(f"{label}: kernel dimension {dim_in} != 1")

        leak = 0.0
        for r in blocked:
            leak = max(leak, abs(float(np.real(np.vdot(sv.a[r], a_op @ sv.a[r])))))
        unambiguity[label] = leak
        if leak > 1e-10:
            failures.append(f"{label}: unambiguity leak {leak:.3e}")

    total = sum(seq.alice[label] for label in LABELS)
    completeness = float(np.max(np.abs(total - np.eye(3))))
    if completeness > 1e-10:
        failures.append(f"completeness residual {completeness:.3e}")

    success, _ = verify_unambiguous(flatten(seq), joint_states(sv))
    report = CertificateReport(
        psd_margin=psd_margin,
        kernel_residual=kernel_residual,
        kernel_dim=kernel_dim,
        completeness=completeness,
        unambiguity=unambiguity,
        success=success,
    )
    if failures:
        raise CertificateViolation("; ".join(failures))
    return report


def sample_outcomes(p: Povm, state, shots, seed):
    """Multinomial outcome counts for repeated measurement of one state.

    returns: integer array, one count per outcome, summing to shots
    raises:  InvalidPovm if the outcome probabilities do not sum to 1
    """
    shots = int(shots)
    if shots < 0:
        raise DomainError(f"shots must be >= 0, got {shots}")
    state = np.asarray(state, dtype=complex)
    probs = np.array(
        [max(float(np.real(np.vdot(state, op @ state))), 0.0) for op in p.outcomes]
    )
    total = float(probs.sum())
    if abs(total - 1.0) > 1e-8:
        raise InvalidPovm(f"outcome probabilities sum to {total:.12g}")
    rng = np.random.default_rng(seed)
    return rng.multinomial(shots, probs / total)


def _matrix_to_json(op: np.ndarray):
    return [[[float(v.real), float(v.imag)] for v in row] for row in np.asarray(op, dtype=complex)]


def _matrix_from_json(data, dim, context):
    try:
        arr = np.array(
            [[complex(float(e[0]), float(e[1])) for e in row] for row in data], dtype=complex
        )
    except (TypeError, ValueError, IndexError) as exc:
        raise InvalidPovm(f"{context}: malformed matrix") from exc
    if arr.shape != (dim, dim):
        raise InvalidPovm(f"{context}: expected {dim}x{dim}, got {arr.shape}")
    if not np.all(np.isfinite(arr.view(float))):
        raise InvalidPovm(f"{context}: non-finite entries")
    return arr


def save_povm(path, seq: SequentialMeasurement, ka: complex, kb: complex, success: float):
    """Write a measurement file: flattened POVM, per-label pieces, meta."""
    flat = flatten(seq)
    doc = {
        "dim": 9,
        "outcomes": [
            {"label": label, "matrix": _matrix_to_json(op)}
            for label, op in zip(flat.labels, flat.outcomes)
        ],
        "meta": {
            "ka": [ka.real, ka.imag],
            "kb": [kb.real, kb.imag],
            "branch": seq.branch,
            "kappa": list(seq.weights),
            "success": success,
        },
        "sequential": {
            "alice": {label: _matrix_to_json(seq.alice[label]) for label in LABELS},
            "bob": {
                label: [_matrix_to_json(op) for op in seq.bob[label].outcomes]
                for label in LABELS
            },
        },
    }
    with open(path, "w", newline="\n") as fh:
        fh.write(json_dumps(doc))
        fh.write("\n")


@dataclass(frozen=True)
class LoadedMeasurement:
    povm: Povm
    seq: SequentialMeasurement
    meta: dict


def load_povm(path) -> LoadedMeasurement:
    """Read a measurement file back; inverse of save_povm.

    raises: InvalidPovm on any structural problem (missing keys, wrong
            shapes, non-numeric entries)
    """
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidPovm(f"not valid JSON: {exc}") from exc
    try:
        dim = int(doc["dim"])
        raw_outcomes = doc["outcomes"]
        meta = dict(doc["meta"])
        seq_block = doc["sequential"]
        ka = complex(float(meta["ka"][0]), float(meta["ka"][1]))
        kb = complex(float(meta["kb"][0]), float(meta["kb"][1]))
        branch = str(meta["branch"])
        weights = tuple(float(v) for v in meta["kappa"])
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InvalidPovm(f"missing or malformed field: {exc}") from exc
    if dim != 9:
        raise InvalidPovm(f"expected dim 9, got {dim}")
    if len(raw_outcomes) != 4:
        raise InvalidPovm(f"expected 4 outcomes, got {len(raw_outcomes)}")
    outcomes = []
    labels = []
    for i, entry in enumerate(raw_outcomes):
        try:
            labels.append(str(entry["label"]))
            matrix = entry["matrix"]
        except (KeyError, TypeError) as exc:
            raise InvalidPovm(f"outcome {i}: missing label or matrix") from exc
        outcomes.append(_matrix_from_json(matrix, 9, f"outcome {i}"))
    if tuple(labels) != OUTCOME_LABELS:
        raise InvalidPovm(f"unexpected outcome labels {labels}")

    try:
        alice = {
            label: _matrix_from_json(seq_block["alice"][label], 3, f"alice {label}")
            for label in LABELS
        }
        bob = {}
        for label in LABELS:
            ops = seq_block["bob"][label]
            if len(ops) != 4:
                raise InvalidPovm(f"bob {label}: expected 4 outcomes")
            bob[label] = Povm(
                outcomes=tuple(
                    _matrix_from_json(op, 3, f"bob {label}[{r}]") for r, op in enumerate(ops)
                ),
                labels=OUTCOME_LABELS,
            )
    except (KeyError, TypeError) as exc:
        raise InvalidPovm(f"malformed sequential block: {exc}") from exc

    meta["ka"] = ka
    meta["kb"] = kb
    povm = Povm(outcomes=tuple(outcomes), labels=OUTCOME_LABELS)
    seq = SequentialMeasurement(alice=alice, bob=bob, weights=weights, branch=branch)
    return LoadedMeasurement(povm=povm, seq=seq, meta=meta)
