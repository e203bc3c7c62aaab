"""Challenge-pack construction: public training data and sequestered truth.

One pack per system.  The public half carries ten training matrices
X1train..X10train plus a manifest; the sequestered half carries the nine
truth matrices X1test..X9test the challenger must approximate, the clean
counterparts of the noisy training matrices, the scoring configuration, and
the full generation record (seed, step sizes, true parameter values).

Task layout, mirrored by the metric table in scoring:

* X1train  -> X1test          clean forecast (scored short & long)
* X2train  (medium noise)     X2test = its clean version, X3test = clean
                              continuation
* X3train  (high noise)       X4test = clean version, X5test = continuation
* X4train  (truncated to M)   X6test = continuation
* X5train  (truncated, noisy) X7test = clean continuation
* X6..X8train at parameters p1<p2<p3; X9train/X10train are short burn-ins
  at held-out interpolatory/extrapolatory parameters whose continuations
  are X8test/X9test.

Nothing in the public half reveals the time step, numeric parameter values,
or any truth sample; everything is a deterministic function of
(system, seed).
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Mapping

import numpy as np

from . import npyio
from .integrators import (
    IntegratorConfig,
    TRANSIENT_TIME_ODE,
    TRANSIENT_TIME_PDE,
    integrate,
    method_for,
    spin_up_initial_condition,
)
from .scoring import SPECTRAL_SPACE, SPECTRAL_TIME, ScoringConfig
from .systems import (
    DEFAULT_TIME_STEP,
    PDE_SYSTEMS,
    SystemId,
    SystemParams,
    default_grid,
    default_params,
    state_dimension,
)

PACK_FORMAT_VERSION = "1"

TRAIN_NAMES = tuple(f"X{i}train" for i in range(1, 11))
TEST_NAMES = tuple(f"X{i}test" for i in range(1, 10))


class ConfigInvalid(ValueError):
    pass


class SchemaMismatch(ValueError):
    """Manifest or scoring file has an unknown version."""


class NoiseLevel(Enum):
    NONE = 0.0
    MEDIUM = 0.1
    HIGH = 0.5

    @property
    def multiplier(self) -> float:
        return self.value


# Standard sample counts per training matrix (test horizons are equal).
DEFAULT_TRAIN_SAMPLES: dict[SystemId, int] = {
    SystemId.LORENZ: 2000,
    SystemId.ROSSLER: 2000,
    SystemId.DOUBLE_PENDULUM: 2000,
    SystemId.LORENZ96: 2000,
    SystemId.KURAMOTO_SIVASHINSKY: 1000,
    SystemId.BURGERS: 1000,
}

# Held-out parameter sweep per system: (field, (p1, p2, p3), interp, extrap).
PARAM_SWEEPS: dict[SystemId, tuple[str, tuple[float, float, float], float, float]] = {
    SystemId.LORENZ: ("rho", (24.0, 28.0, 32.0), 30.0, 36.0),
    SystemId.ROSSLER: ("c", (5.0, 5.7, 6.5), 6.0, 7.5),
    SystemId.DOUBLE_PENDULUM: ("l2", (0.8, 1.0, 1.2), 1.1, 1.4),
    SystemId.LORENZ96: ("forcing", (6.0, 8.0, 10.0), 9.0, 12.0),
    SystemId.KURAMOTO_SIVASHINSKY: ("mu", (0.8, 1.0, 1.2), 1.1, 1.4),
    SystemId.BURGERS: ("nu", (0.08, 0.1, 0.12), 0.11, 0.14),
}

# Systems whose rows form a spatial profile get space-mode spectra; the
# three-to-four dimensional flows are profiled along the time axis instead.
_SPECTRAL_AXIS: dict[SystemId, str] = {
    SystemId.LORENZ: SPECTRAL_TIME,
    SystemId.ROSSLER: SPECTRAL_TIME,
    SystemId.DOUBLE_PENDULUM: SPECTRAL_TIME,
    SystemId.LORENZ96: SPECTRAL_SPACE,
    SystemId.KURAMOTO_SIVASHINSKY: SPECTRAL_SPACE,
    SystemId.BURGERS: SPECTRAL_SPACE,
}


@dataclass(frozen=True)
class GenerationConfig:
    """Knobs for pack generation; defaults reproduce the shipped packs."""

    train_samples: int | None = None      # None -> per-system default
    limited_fraction: float = 0.1         # M as a fraction of train_samples
    burn_in_samples: int = 50
    w_short: float = 0.1                  # short-window fraction of the test horizon
    w_long: float = 0.5                   # terminal-window fraction
    k_m: int = 100


@dataclass(frozen=True)
class ChallengeManifest:
    pack_id: str
    system: str
    input_shapes: dict[str, tuple[int, int]]
    output_shapes: dict[str, tuple[int, int]]
    required_output_names: tuple[str, ...]
    w_short: float
    w_long: float
    k_m: int
    parameter_labels: dict[str, str]
    noise_labels: dict[str, str]
    limited_columns: int
    burn_in_columns: int
    version: str = PACK_FORMAT_VERSION

    def to_json(self) -> str:
        payload = {
            "version": self.version,
            "pack_id": self.pack_id,
            "system": self.system,
            "input_shapes": {k: list(v) for k, v in self.input_shapes.items()},
            "output_shapes": {k: list(v) for k, v in self.output_shapes.items()},
            "required_output_names": list(self.required_output_names),
            "w_short": self.w_short,
            "w_long": self.w_long,
            "k_m": self.k_m,
            "parameter_labels": self.parameter_labels,
            "noise_labels": self.noise_labels,
            "limited_columns": self.limited_columns,
            "burn_in_columns": self.burn_in_columns,
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ChallengeManifest":
        raw = json.loads(text)
        if str(raw.get("version")) != PACK_FORMAT_VERSION:
            raise SchemaMismatch(f"unknown manifest version {raw.get('version')!r}")
        return cls(
            pack_id=raw["pack_id"],
            system=raw["system"],
            input_shapes={k: tuple(v) for k, v in raw["input_shapes"].items()},
            output_shapes={k: tuple(v) for k, v in raw["output_shapes"].items()},
            required_output_names=tuple(raw["required_output_names"]),
            w_short=raw["w_short"],
            w_long=raw["w_long"],
            k_m=raw["k_m"],
            parameter_labels=dict(raw["parameter_labels"]),
            noise_labels=dict(raw["noise_labels"]),
            limited_columns=raw["limited_columns"],
            burn_in_columns=raw["burn_in_columns"],
            version=str(raw["version"]),
        )


@dataclass
class PublicPack:
    manifest: ChallengeManifest
    train: dict[str, np.ndarray]


@dataclass
class PrivatePack:
    truths: dict[str, np.ndarray]
    clean: dict[str, np.ndarray]          # clean versions of the noisy inputs
    scoring: ScoringConfig
    generation: dict


@dataclass
class ChallengePack:
    public: PublicPack
    private: PrivatePack

    @property
    def pack_id(self) -> str:
        return self.public.manifest.pack_id


@dataclass(frozen=True)
class Violation:
    kind: str          # MissingOutput | ExtraOutput | ShapeMismatch | NonFiniteValue
    name: str
    detail: str


def add_noise(m: np.ndarray, level: NoiseLevel, seed: int) -> np.ndarray:
    """Add i.i.d. zero-mean Gaussian noise scaled to the matrix RMS.

    The noise standard deviation is level.multiplier times the
    root-mean-square of m, so a zero matrix stays zero.  Deterministic for a
    given seed.
    """
    if level is NoiseLevel.NONE:
        return m.copy()
    rms = float(np.sqrt(np.mean(m * m)))
    rng = np.random.default_rng(seed)
    return m + level.multiplier * rms * rng.standard_normal(m.shape)


def _pack_id(system: SystemId, seed: int) -> str:
    digest = hashlib.sha256(
        f"{system.value}|{seed}|{PACK_FORMAT_VERSION}".encode()
    ).hexdigest()
    return f"{system.value}-{digest[:12]}"


def _validate_cfg(cfg: GenerationConfig, m: int) -> int:
    if m < 40:
        raise ConfigInvalid(f"train_samples must be >= 40, got {m}")
    if not 0.0 < cfg.limited_fraction < 1.0:
        raise ConfigInvalid("limited_fraction must lie in (0, 1)")
    if cfg.burn_in_samples < 2:
        raise ConfigInvalid("burn_in_samples must be >= 2")
    if not (0.0 < cfg.w_short <= 1.0 and 0.0 < cfg.w_long <= 1.0):
        raise ConfigInvalid("window fractions must lie in (0, 1]")
    if cfg.k_m < 1:
        raise ConfigInvalid("k_m must be >= 1")
    limited = int(round(cfg.limited_fraction * m))
    if limited < 4:
        raise ConfigInvalid(f"limited window of {limited} columns is too short")
    return limited


def generate_pack(
    system: SystemId, seed: int, cfg: GenerationConfig | None = None
) -> ChallengePack:
    """Generate one system's full challenge pack, deterministically from seed."""
    cfg = cfg or GenerationConfig()
    params = default_params(system)
    grid = default_grid(system)
    dt, substeps = DEFAULT_TIME_STEP[system]
    m = cfg.train_samples or DEFAULT_TRAIN_SAMPLES[system]
    limited = _validate_cfg(cfg, m)
    burn = cfg.burn_in_samples

    child = [int(s) for s in np.random.SeedSequence(seed).generate_state(13, np.uint64)]

    def run(run_params: SystemParams, ic_seed: int, samples: int) -> np.ndarray:
        x0 = spin_up_initial_condition(system, run_params, grid, ic_seed)
        icfg = IntegratorConfig(
            dt=dt, steps=samples - 1, substeps_per_sample=substeps, method=method_for(system)
        )
        return integrate(system, run_params, grid, x0, icfg)

    # Test 1: clean forecast.
    x1 = run(params, child[0], 2 * m)
    # Test 2: denoise + forecast at two noise levels.
    x2_clean = run(params, child[1], 2 * m)
    x3_clean = run(params, child[3], 2 * m)
    # Test 3: limited data, clean and noisy.
    x4_full = run(params, child[5], limited + m)
    x5_full = run(params, child[6], limited + m)
    # Test 4: parameter sweep plus held-out burn-ins.
    sweep_field, (p1, p2, p3), p_int, p_ext = PARAM_SWEEPS[system]
    with_param = lambda v: replace(params, **{sweep_field: v})
    x6 = run(with_param(p1), child[8], m)
    x7 = run(with_param(p2), child[9], m)
    x8 = run(with_param(p3), child[10], m)
    x9_full = run(with_param(p_int), child[11], burn + m)
    x10_full = run(with_param(p_ext), child[12], burn + m)

    noise_plan = {
        "X2train": (NoiseLevel.MEDIUM, child[2]),
        "X3train": (NoiseLevel.HIGH, child[4]),
        "X5train": (NoiseLevel.MEDIUM, child[7]),
    }
    clean = {
        "X2train": x2_clean[:, :m].copy(),
        "X3train": x3_clean[:, :m].copy(),
        "X5train": x5_full[:, :limited].copy(),
    }
    train = {
        "X1train": x1[:, :m].copy(),
        "X2train": add_noise(clean["X2train"], *noise_plan["X2train"]),
        "X3train": add_noise(clean["X3train"], *noise_plan["X3train"]),
        "X4train": x4_full[:, :limited].copy(),
        "X5train": add_noise(clean["X5train"], *noise_plan["X5train"]),
        "X6train": x6,
        "X7train": x7,
        "X8train": x8,
        "X9train": x9_full[:, :burn].copy(),
        "X10train": x10_full[:, :burn].copy(),
    }
    truths = {
        "X1test": x1[:, m:].copy(),
        "X2test": clean["X2train"].copy(),
        "X3test": x2_clean[:, m:].copy(),
        "X4test": clean["X3train"].copy(),
        "X5test": x3_clean[:, m:].copy(),
        "X6test": x4_full[:, limited:].copy(),
        "X7test": x5_full[:, limited:].copy(),
        "X8test": x9_full[:, burn:].copy(),
        "X9test": x10_full[:, burn:].copy(),
    }

    rows = state_dimension(system, params, grid)
    axis = _SPECTRAL_AXIS[system]
    k_m = cfg.k_m if axis == SPECTRAL_TIME else min(cfg.k_m, rows // 2 - 1)
    scoring = ScoringConfig(
        k_short=math.ceil(cfg.w_short * m),
        k_long=math.ceil(cfg.w_long * m),
        k_m=k_m,
        spectral_axis=axis,
    )
    manifest = ChallengeManifest(
        pack_id=_pack_id(system, seed),
        system=system.value,
        input_shapes={k: v.shape for k, v in train.items()},
        output_shapes={k: v.shape for k, v in truths.items()},
        required_output_names=TEST_NAMES,
        w_short=cfg.w_short,
        w_long=cfg.w_long,
        k_m=k_m,
        parameter_labels={
            "X6train": "p1",
            "X7train": "p2",
            "X8train": "p3",
            "X9train": "p_interp",
            "X10train": "p_extrap",
        },
        noise_labels={"X2train": "medium", "X3train": "high", "X5train": "medium"},
        limited_columns=limited,
        burn_in_columns=burn,
    )
    generation = {
        "version": PACK_FORMAT_VERSION,
        "pack_id": manifest.pack_id,
        "system": system.value,
        "seed": seed,
        "dt": dt,
        "substeps_per_sample": substeps,
        "sample_dt": dt * substeps,
        "transient_time": TRANSIENT_TIME_PDE if system in PDE_SYSTEMS else TRANSIENT_TIME_ODE,
        "true_parameters": {k: v for k, v in params.__dict__.items()},
        "parameter_sweep": {
            "field": sweep_field,
            "p1": p1,
            "p2": p2,
            "p3": p3,
            "p_interp": p_int,
            "p_extrap": p_ext,
        },
        "noise": {
            name: {"level": level.name.lower(), "seed": noise_seed}
            for name, (level, noise_seed) in noise_plan.items()
        },
        "train_samples": m,
        "test_samples": m,
        "limited_columns": limited,
        "burn_in_columns": burn,
    }
    return ChallengePack(
        public=PublicPack(manifest=manifest, train=train),
        private=PrivatePack(truths=truths, clean=clean, scoring=scoring, generation=generation),
    )


def write_pack(pack: ChallengePack, public_dir: str | Path, private_dir: str | Path) -> None:
    """Write the public and sequestered halves to two directories."""
    public_dir = Path(public_dir)
    private_dir = Path(private_dir)
    public_dir.mkdir(parents=True, exist_ok=True)
    private_dir.mkdir(parents=True, exist_ok=True)

    (public_dir / "public.npz").write_bytes(npyio.write_archive(pack.public.train))
    (public_dir / "manifest.json").write_text(pack.public.manifest.to_json())

    private_entries = dict(pack.private.truths)
    for name, matrix in pack.private.clean.items():
        private_entries[f"{name}_clean"] = matrix
    (private_dir / "private.npz").write_bytes(npyio.write_archive(private_entries))
    (private_dir / "scoring.json").write_text(pack.private.scoring.to_json())
    (private_dir / "generation.json").write_text(
        json.dumps(pack.private.generation, indent=2, sort_keys=True)
    )


def load_public(directory: str | Path) -> PublicPack:
    """Load the public half written by write_pack."""
    directory = Path(directory)
    manifest = ChallengeManifest.from_json((directory / "manifest.json").read_text())
    train = npyio.read_archive((directory / "public.npz").read_bytes())
    return PublicPack(manifest=manifest, train=train)


def load_private(directory: str | Path) -> PrivatePack:
    """Load the sequestered half written by write_pack."""
    directory = Path(directory)
    scoring = ScoringConfig.from_json((directory / "scoring.json").read_text())
    generation = json.loads((directory / "generation.json").read_text())
    if str(generation.get("version")) != PACK_FORMAT_VERSION:
        raise SchemaMismatch(f"unknown generation record version {generation.get('version')!r}")
    entries = npyio.read_archive((directory / "private.npz").read_bytes())
    truths = {k: v for k, v in entries.items() if not k.endswith("_clean")}
    clean = {k[: -len("_clean")]: v for k, v in entries.items() if k.endswith("_clean")}
    return PrivatePack(truths=truths, clean=clean, scoring=scoring, generation=generation)


def validate_outputs(
    required_names: tuple[str, ...],
    output_shapes: Mapping[str, tuple[int, int]],
    bundle: Mapping[str, np.ndarray],
) -> list[Violation]:
    """Check a bundle against an output contract, reporting every violation."""
    violations: list[Violation] = []
    for name in required_names:
        if name not in bundle:
            violations.append(Violation("MissingOutput", name, "required output is missing"))
    for name in bundle:
        if name not in required_names:
            violations.append(Violation("ExtraOutput", name, "not a required output"))
    for name in required_names:
        if name not in bundle:
            continue
        got = bundle[name]
        want = tuple(output_shapes[name])
        if tuple(got.shape) != want:
            violations.append(
                Violation("ShapeMismatch", name, f"expected {want}, got {tuple(got.shape)}")
            )
            continue
        if not np.all(np.isfinite(got)):
            violations.append(Violation("NonFiniteValue", name, "contains NaN or Inf"))
    return violations


def validate_submission(
    manifest: ChallengeManifest, bundle: Mapping[str, np.ndarray]
) -> list[Violation]:
    """Check a submission bundle against the manifest's output contract.

    Returns every violation rather than stopping at the first: missing or
    extra entries, shape mismatches, and non-finite values.
    """
    return validate_outputs(manifest.required_output_names, manifest.output_shapes, bundle)
