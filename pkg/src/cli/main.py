"""
bellparity command-line front end.

Parses flags into a validated RunConfig, calls one library operation and
writes the resulting records as JSON or CSV. Exit codes: 0 on success,
2 on invalid flags or input, 1 when a numerical invariant fails.
"""

import argparse
import contextlib
import math
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, TextIO, Tuple

import jsonschema
from pydantic import BaseModel, ConfigDict, Field, model_validator

from config.settings import settings
from ..montecarlo import SignModel, random_triples, sample_lhv, sample_quantum, verify_lhv_bell
from ..quantum.bellcat import StateParams, closed_form_elements, oracle_elements
from ..quantum.correlation import (
    BellTriple,
    ChshQuad,
    CorrelationBreakdown,
    Mode,
    Which,
    bell_lhs_rhs,
    chsh,
    correlate,
)
from ..quantum.spincore import Direction, SpinQuantum
from ..search import Objective, SearchSpec, maximize, parity_sweep
from ..utils.logger import get_logger, setup_logging
from ..utils.validators import (
    TOLERANCE,
    NumericalError,
    ValidationError,
    validate_finite,
    validate_seed,
    validate_shots,
    validate_two_s,
)
from .emitters import emit, render

logger = get_logger("cli")

PROG = "bellparity"
LETTERS = ("a", "b", "c", "d")
CHSH_BOUND = 2.0


class RunConfig(BaseModel):
    """Parsed command line; angles are already in radians."""

    model_config = ConfigDict(frozen=True)

    command: str
    spin2: Optional[int] = None
    spin2_max: Optional[int] = None
    xi: float = math.pi / 4.0
    eta: float = 0.0
    thetas: Dict[str, float] = Field(default_factory=dict)
    phis: Dict[str, float] = Field(default_factory=dict)
    coplanar: Optional[List[float]] = None
    which: Which = Which.TOTAL
    mode: Mode = Mode.CLOSED_FORM
    objective: Objective = Objective.CHSH_TOTAL
    optimize_state: bool = False
    grid: int = Field(16, ge=4)
    refine: int = Field(4000, ge=0)
    shots: int = Field(100000, ge=1)
    seed: int = 0
    batches: int = Field(1, ge=1)
    triples: int = Field(100, ge=1)
    format: str = "json"
    out: Optional[Path] = None

    @model_validator(mode="after")
    def check_state(self) -> "RunConfig":
        if self.spin2 is not None:
            StateParams.of(self.spin2, self.xi, self.eta)
        return self

    @classmethod
    def from_namespace(cls, args: argparse.Namespace) -> "RunConfig":
        scale = math.pi / 180.0 if getattr(args, "degrees", False) else 1.0
        values = {k: v for k, v in vars(args).items() if v is not None}
        values.pop("log_level", None)
        values.pop("degrees", None)

        for key in ("xi", "eta"):
            if key in values:
                values[key] *= scale
        values["thetas"] = {x: values.pop(f"theta_{x}") * scale for x in LETTERS if f"theta_{x}" in values}
        values["phis"] = {x: values.pop(f"phi_{x}") * scale for x in LETTERS if f"phi_{x}" in values}
        if "coplanar" in values:
            values["coplanar"] = [alpha * scale for alpha in values["coplanar"]]
        if "out" in values and not values["out"].is_absolute():
            values["out"] = settings.output_path / values["out"]
        return cls(**values)

    @property
    def params(self) -> StateParams:
        return StateParams.of(self.spin2, self.xi, self.eta)

    def directions(self, n: int) -> List[Direction]:
        """First n measurement directions, from --coplanar or the per-letter angles."""
        if self.coplanar is not None:
            if len(self.coplanar) != n:
                raise ValidationError(f"--coplanar needs {n} angles for {self.command}, got {len(self.coplanar)}")
            return [Direction.coplanar(alpha) for alpha in self.coplanar]
        return [
            Direction.from_angles(self.thetas.get(x, 0.0), self.phis.get(x, 0.0))
            for x in LETTERS[:n]
        ]


# Flag types

def _spin2(value: str) -> int:
    try:
        return validate_two_s(int(value))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid 2s {value!r}: {e}")


def _finite(value: str) -> float:
    try:
        return validate_finite(float(value), "value")
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid number {value!r}: {e}")


def _angle_list(value: str) -> List[float]:
    return [_finite(part) for part in value.split(",") if part.strip()]


def _shots(value: str) -> int:
    try:
        return validate_shots(int(value))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid count {value!r}: {e}")


def _seed(value: str) -> int:
    try:
        return validate_seed(int(value))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid seed {value!r}: {e}")


def _count_at_least(minimum: int):
    def parse(value: str) -> int:
        try:
            count = int(value)
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid integer {value!r}")
        if count < minimum:
            raise argparse.ArgumentTypeError(f"{count} is below the minimum {minimum}")
        return count
    return parse


def _add_state(parser: argparse.ArgumentParser, spin: bool = True) -> None:
    if spin:
        parser.add_argument("--spin2", type=_spin2, required=True, help="Twice the spin, 1..50")
    parser.add_argument("--xi", type=_finite, help="State mixing angle (default pi/4)")
    parser.add_argument("--eta", type=_finite, help="State relative phase (default 0)")


def _add_angles(parser: argparse.ArgumentParser, n: int) -> None:
    for x in LETTERS[:n]:
        parser.add_argument(f"--theta-{x}", type=_finite, help=f"Polar angle of direction {x}")
        parser.add_argument(f"--phi-{x}", type=_finite, help=f"Azimuth of direction {x}")
    parser.add_argument(
        "--coplanar", type=_angle_list,
        help="Comma-separated x-z plane angles; write --coplanar=-0.5,... for a leading minus",
    )


def _add_sampling(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--shots", type=_shots, help="Samples per estimate")
    parser.add_argument("--seed", type=_seed, help="Run seed")


def _add_search(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--objective", choices=[o.value for o in Objective])
    parser.add_argument("--optimize-state", action="store_true", default=None)
    parser.add_argument("--grid", type=_count_at_least(4), help="Grid points per angle (>= 4)")
    parser.add_argument("--refine", type=_count_at_least(0), help="Nelder-Mead iterations per stage (0 disables)")


def create_parser() -> argparse.ArgumentParser:
    """Build the argument parser with every subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], help="Output format (default json)")
    common.add_argument("--out", type=Path, help="Output file (default stdout)")
    common.add_argument("--degrees", action="store_true", help="Read every angle flag in degrees")
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"])

    parser = argparse.ArgumentParser(prog=PROG, description="Bell cat spin-parity numerical engine")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("correlate", parents=[common], help="Correlation P(ab) with local/non-local split")
    _add_state(p)
    _add_angles(p, 2)
    p.add_argument("--mode", choices=[m.value for m in Mode])

    for name, n, text in (("bell", 3, "Modified Bell inequality"), ("chsh", 4, "CHSH combination")):
        p = sub.add_parser(name, parents=[common], help=text)
        _add_state(p)
        _add_angles(p, n)
        p.add_argument("--which", choices=[w.value for w in Which])
        p.add_argument("--mode", choices=[m.value for m in Mode])

    p = sub.add_parser("maximize", parents=[common], help="Maximize an objective over directions")
    _add_state(p)
    _add_search(p)

    p = sub.add_parser("parity-sweep", parents=[common], help="Maximize for every spin up to --spin2-max")
    p.add_argument("--spin2-max", type=_spin2, required=True, help="Largest 2s in the sweep")
    _add_state(p, spin=False)
    _add_search(p)

    p = sub.add_parser("sample-quantum", parents=[common], help="Sample joint outcomes from the state")
    _add_state(p)
    _add_angles(p, 2)
    _add_sampling(p)
    p.add_argument("--batches", type=_shots, help="Independent seeded batches")

    p = sub.add_parser("sample-lhv", parents=[common], help="Sample the sign hidden-variable model")
    _add_angles(p, 2)
    _add_sampling(p)

    p = sub.add_parser("verify-lhv", parents=[common], help="Bell battery against the sign model")
    _add_sampling(p)
    p.add_argument("--triples", type=_shots, help="Random direction triples")

    return parser


# Commands

def _pair_record(a: Direction, b: Direction) -> dict:
    return {"theta_a": a.theta, "phi_a": a.phi, "theta_b": b.theta, "phi_b": b.phi}


def _angles(directions: Sequence[Direction]) -> list:
    return [[d.theta, d.phi] for d in directions]


def _state_record(cfg: RunConfig) -> dict:
    return {"s2": cfg.spin2, "xi": cfg.xi, "eta": cfg.eta}


def cmd_correlate(cfg: RunConfig) -> List[dict]:
    a, b = cfg.directions(2)
    p = cfg.params
    elements = oracle_elements(p, a, b) if cfg.mode is Mode.ORACLE else closed_form_elements(p, a, b)
    breakdown = CorrelationBreakdown.from_elements(elements)
    return [{
        **_state_record(cfg),
        "mode": cfg.mode.value,
        **_pair_record(a, b),
        "p_lc": breakdown.p_lc,
        "p_nlc": breakdown.p_nlc,
        "p_total": breakdown.p_total,
        "weight": breakdown.weight,
        "local_weight": elements.local_weight,
        **elements.to_record(),
    }]


def cmd_bell(cfg: RunConfig) -> List[dict]:
    a, b, c = cfg.directions(3)
    result = bell_lhs_rhs(BellTriple(params=cfg.params, a=a, b=b, c=c), cfg.which, cfg.mode)
    return [{
        **_state_record(cfg),
        "which": cfg.which.value,
        "mode": cfg.mode.value,
        "angles": _angles((a, b, c)),
        "lhs": result.lhs,
        "rhs": result.rhs,
        "margin": result.margin,
        "violated": result.violated,
    }]


def cmd_chsh(cfg: RunConfig) -> List[dict]:
    a, b, c, d = cfg.directions(4)
    value = chsh(ChshQuad(params=cfg.params, a=a, b=b, c=c, d=d), cfg.which, cfg.mode)
    return [{
        **_state_record(cfg),
        "which": cfg.which.value,
        "mode": cfg.mode.value,
        "angles": _angles((a, b, c, d)),
        "value": value,
        "bound": CHSH_BOUND,
        "violated": value > CHSH_BOUND + TOLERANCE,
    }]


def _search_spec(cfg: RunConfig, two_s: int) -> SearchSpec:
    return SearchSpec(
        spin=SpinQuantum(two_s=two_s),
        objective=cfg.objective,
        optimize_state=cfg.optimize_state,
        grid_points_per_angle=cfg.grid,
        refine_iterations=cfg.refine,
        xi=cfg.xi,
        eta=cfg.eta,
    )


def cmd_maximize(cfg: RunConfig) -> List[dict]:
    return [maximize(_search_spec(cfg, cfg.spin2)).to_record()]


def cmd_parity_sweep(cfg: RunConfig) -> List[dict]:
    reports = parity_sweep(SpinQuantum(two_s=cfg.spin2_max), _search_spec(cfg, 1))
    return [report.to_record() for report in reports]


def cmd_sample_quantum(cfg: RunConfig) -> List[dict]:
    a, b = cfg.directions(2)
    p = cfg.params
    stats = sample_quantum(p, a, b, cfg.shots, cfg.seed, batches=cfg.batches, workers=cfg.batches)
    analytic = correlate(p, a, b)
    return [{
        **_state_record(cfg),
        **_pair_record(a, b),
        "analytic_p_total": analytic.p_total,
        "weight": analytic.weight,
        "batches": cfg.batches,
        **stats.model_dump(),
    }]


def cmd_sample_lhv(cfg: RunConfig) -> List[dict]:
    a, b = cfg.directions(2)
    model = SignModel()
    stats = sample_lhv(model, a, b, cfg.shots, cfg.seed)
    return [{"model": type(model).__name__, **_pair_record(a, b), **stats.model_dump()}]


def cmd_verify_lhv(cfg: RunConfig) -> List[dict]:
    triples = random_triples(cfg.triples, cfg.seed)
    return [verify_lhv_bell(SignModel(), triples, cfg.shots, cfg.seed).to_record()]


COMMANDS: Dict[str, Tuple[Callable[[RunConfig], List[dict]], bool]] = {
    # name: (handler, JSON lines)
    "correlate": (cmd_correlate, False),
    "bell": (cmd_bell, False),
    "chsh": (cmd_chsh, False),
    "maximize": (cmd_maximize, False),
    "parity-sweep": (cmd_parity_sweep, True),
    "sample-quantum": (cmd_sample_quantum, False),
    "sample-lhv": (cmd_sample_lhv, False),
    "verify-lhv": (cmd_verify_lhv, False),
}


def _error(stderr: TextIO, message: str) -> None:
    stderr.write(f"{PROG}: error: {message}\n")


def run(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """
    Run one subcommand.

    Args:
        argv: Arguments without the program name (default sys.argv[1:])
        stdout: Stream for records when --out is not given
        stderr: Stream for diagnostics

    Returns:
        Exit code 0, 1 or 2
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = create_parser()
    try:
        with contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    setup_logging(
        config_path=settings.logging_config_path,
        log_level=args.log_level or settings.log_level,
        log_format=settings.log_format,
        log_dir=settings.log_path,
    )

    handler, lines = COMMANDS[args.command]
    try:
        cfg = RunConfig.from_namespace(args)
        logger.debug(f"running {cfg.command}")
        text = render(cfg.command, handler(cfg), cfg.format, lines=lines)
        emit(text, cfg.out, stdout)
    except NumericalError as e:
        logger.error(f"{args.command}: numerical check failed: {e}")
        _error(stderr, str(e))
        return 1
    except jsonschema.ValidationError as e:
        logger.error(f"{args.command}: record breaks its schema: {e.message}")
        _error(stderr, f"output record breaks its schema: {e.message}")
        return 1
    except ValueError as e:
        _error(stderr, str(e))
        return 2
    return 0


def main() -> None:
    sys.exit(run())
