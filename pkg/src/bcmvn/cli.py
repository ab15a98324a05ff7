"""``bcmvn`` command line: gen, train, verify, bounds and run.

Exit codes: 0 success, 1 violations or failed bound checks, 2 training did
not converge, 3 unparseable input, 4 bound check without hidden weights.
``BCMVN_SEED`` in the environment overrides the generator seed.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import serialize
from .activation import SectorConfig, sector_index, sector_index_bc
from .datagen import audit, gen_ksep_bc, gen_ksep_complex, gen_real
from .datasets import GenSpec
from .errors import GenerationStalledError, MissingHiddenError, NotConvergedError, ParseError, ZeroArgumentError
from .algebra import Bicomplex, bc_mul_cartesian
from .perceptron import TrainConfig, mvn_train_bc, mvn_train_complex, real_perceptron_train, trace_bound_checks

EXIT_OK, EXIT_FAIL, EXIT_NOT_CONVERGED, EXIT_PARSE, EXIT_MISSING_HIDDEN = 0, 1, 2, 3, 4
MODES = ("real", "complex", "bicomplex")
FORMATS = ("json", "csv")


@dataclass
class ExperimentConfig:
    mode: str = "complex"
    gen: GenSpec = field(default_factory=lambda: GenSpec(n=3))
    train: TrainConfig = field(default_factory=TrainConfig)
    output_dir: str = "."
    formats: tuple = FORMATS

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        bad = set(self.formats) - set(FORMATS)
        if bad or not self.formats:
            raise ValueError(f"formats must be a non-empty subset of {FORMATS}")
        self.formats = tuple(f for f in FORMATS if f in self.formats)

    @classmethod
    def from_json(cls, obj):
        try:
            return cls(
                mode=obj.get("mode", "complex"),
                gen=GenSpec.from_json(obj["gen"]) if "gen" in obj else GenSpec(n=3),
                train=TrainConfig.from_json(obj.get("train", {})),
                output_dir=obj.get("output_dir", "."),
                formats=tuple(obj.get("formats", FORMATS)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad config: {exc}") from exc

    def to_json(self):
        return {
            "mode": self.mode,
            "gen": self.gen.to_json(),
            "train": self.train.to_json(),
            "output_dir": self.output_dir,
            "formats": list(self.formats),
        }


def _load_config(path):
    if path is None:
        return ExperimentConfig()
    return ExperimentConfig.from_json(serialize.read_json(path))


def _seed_override(seed):
    env = os.environ.get("BCMVN_SEED")
    if env is None or env == "":
        return seed
    try:
        return int(env, 0)
    except ValueError:
        raise ParseError(f"BCMVN_SEED is not an integer: {env!r}") from None


def _merged_spec(base: GenSpec, args) -> GenSpec:
    r_min, r_max = base.radius_range
    return GenSpec(
        n=args.n if args.n is not None else base.n,
        k=args.k if args.k is not None else base.k,
        count=args.count if args.count is not None else base.count,
        margin=args.margin if args.margin is not None else base.margin,
        seed=_seed_override(args.seed if args.seed is not None else base.seed),
        radius_range=(args.r_min if args.r_min is not None else r_min, args.r_max if args.r_max is not None else r_max),
    )


def _merged_train(base: TrainConfig, args) -> TrainConfig:
    updates = {
        name: getattr(args, name)
        for name in ("C", "max_epochs", "rule_form", "target", "schedule")
        if getattr(args, name, None) is not None
    }
    if getattr(args, "train_seed", None) is not None:
        updates["seed"] = args.train_seed
    if getattr(args, "shuffle", False):
        updates["shuffle"] = True
    return replace(base, **updates)


def generate(mode, spec):
    if mode == "real":
        return gen_real(spec)
    if mode == "complex":
        return gen_ksep_complex(spec)
    return gen_ksep_bc(spec)


def train(dataset, cfg: TrainConfig):
    """Dispatch to the trainer for ``dataset.mode``; returns ``(weights, trace)``."""
    if dataset.mode == "real":
        return real_perceptron_train(dataset, max_epochs=cfg.max_epochs)
    if dataset.mode == "complex":
        return mvn_train_complex(dataset, cfg)
    return mvn_train_bc(dataset, cfg)


def _norm_text(trace, weights):
    if trace.mode == "real":
        return f"||a||={serialize.fmt_float(np.linalg.norm(weights))}"
    n = weights.norm()
    if trace.mode == "complex":
        return f"||W||={serialize.fmt_float(n)}"
    return f"||W||_D=({serialize.fmt_float(n.s)})e1+({serialize.fmt_float(n.t)})e2"


def write_training_outputs(out_dir, dataset, weights, trace, formats):
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    k = None if dataset.mode == "real" else dataset.k
    serialize.save_weights(out_dir / "weights.json", weights, dataset.mode, k)
    if "json" in formats:
        serialize.save_trace(out_dir / "trace.json", trace)
    if "csv" in formats:
        serialize.save_trace_csv(out_dir / "trace.csv", trace)


def _weighted_sum_cartesian(weights, X):
    terms = bc_mul_cartesian(weights.w, X)
    return weights.bias + Bicomplex(complex(np.sum(terms.z1)), complex(np.sum(terms.z2)))


def verify(dataset, mode, k, weights):
    """Returns ``(violations, notes)``; each violation is a one-line description.

    Bicomplex sums are formed with cartesian products and then compared with
    the two slot classifiers run separately; any disagreement is a note.
    """
    if mode != dataset.mode:
        raise ParseError(f"weights are for mode {mode}, dataset is {dataset.mode}")
    violations, notes = [], []
    if mode == "real":
        for i, (x, y) in enumerate(zip(dataset.X, dataset.labels)):
            d = float(np.dot(weights, x))
            if d == 0:
                violations.append(f"sample {i}: ZeroArgument (a.x = 0)")
            elif (1 if d > 0 else -1) != y:
                violations.append(f"sample {i}: label {y}, got {1 if d > 0 else -1}")
        return violations, notes
    if k != dataset.k:
        raise ParseError(f"weights are for k={k}, dataset has k={dataset.k}")
    cfg = SectorConfig(k)
    if mode == "complex":
        for i, (x, q) in enumerate(zip(dataset.X, dataset.labels)):
            try:
                s = sector_index(weights.weighted_sum(x), cfg)
            except ZeroArgumentError:
                violations.append(f"sample {i}: ZeroArgument")
                continue
            if s != q:
                violations.append(f"sample {i}: target sector {q}, got {s}")
        return violations, notes
    slot_w = weights.slots()
    slot_ds = [dataset.slot(0), dataset.slot(1)]
    for i in range(len(dataset)):
        q = tuple(int(v) for v in dataset.labels[i])
        try:
            s = sector_index_bc(_weighted_sum_cartesian(weights, dataset.vector(i)), cfg)
        except ZeroArgumentError as exc:
            violations.append(f"sample {i}: ZeroArgument in slot {exc.slot}")
            continue
        slotwise = []
        for w, ds in zip(slot_w, slot_ds):
            try:
                slotwise.append(sector_index(w.weighted_sum(ds.X[i]), cfg))
            except ZeroArgumentError:
                slotwise.append(None)
        if tuple(slotwise) != s:
            notes.append(f"sample {i}: bicomplex sectors {s} differ from slotwise {tuple(slotwise)}")
        if s != q:
            violations.append(f"sample {i}: target sectors {q}, got {s}")
    return violations, notes


# commands


def cmd_gen(args):
    cfg = _load_config(args.config)
    mode = args.mode or cfg.mode
    spec = _merged_spec(cfg.gen, args)
    ds = generate(mode, spec)
    bad = audit(ds)
    if args.no_hidden:
        ds = ds.without_hidden()
    text = serialize.dumps(serialize.dataset_to_json(ds)) + "\n"
    if args.out in (None, "-"):
        sys.stdout.write(text)
        report = sys.stderr
    else:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text, encoding="utf-8")
        report = sys.stdout
    status = "PASS" if not bad else "FAIL"
    print(f"audit {status}: {len(ds)} samples, {len(bad)} violations", file=report)
    return EXIT_OK if not bad else EXIT_FAIL


def cmd_train(args):
    cfg = _load_config(args.config)
    dataset = serialize.load_dataset(args.dataset)
    tcfg = _merged_train(cfg.train, args)
    if dataset.mode != "real":
        tcfg = replace(tcfg, k=dataset.k)
    formats = tuple(args.formats.split(",")) if args.formats else cfg.formats
    out_dir = args.out_dir or cfg.output_dir
    try:
        weights, trace = train(dataset, tcfg)
    except NotConvergedError as exc:
        write_training_outputs(out_dir, dataset, exc.weights, exc.trace, formats)
        print(
            f"not converged: {exc}; {len(exc.trace.updates)} updates, best epoch errors {exc.best_epoch_errors}",
            file=sys.stderr,
        )
        return EXIT_NOT_CONVERGED
    write_training_outputs(out_dir, dataset, weights, trace, formats)
    extra = ""
    if trace.mode == "bicomplex":
        n1, n2 = trace.slot_steps()
        extra = f" (slot steps n1={n1}, n2={n2})"
    print(f"converged: steps_to_converge={trace.steps_to_converge}{extra} {_norm_text(trace, weights)}")
    return EXIT_OK


def cmd_verify(args):
    dataset = serialize.load_dataset(args.dataset)
    mode, k, weights = serialize.load_weights(args.weights)
    violations, notes = verify(dataset, mode, k, weights)
    for line in violations + notes:
        print(line)
    ok = not violations and not notes
    print(f"verify {'PASS' if ok else 'FAIL'}: {len(dataset)} samples, {len(violations)} violations")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bounds(args):
    dataset = serialize.load_dataset(args.dataset)
    trace = serialize.load_trace(args.trace)
    if trace.mode != dataset.mode:
        raise ParseError(f"trace is for mode {trace.mode}, dataset is {dataset.mode}")
    checks = trace_bound_checks(dataset, trace, rel_tol=args.rel_tol)
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


def cmd_run(args):
    """gen -> train -> verify -> bounds for one or more seeds, each in its own directory."""
    cfg = _load_config(args.config)
    mode = args.mode or cfg.mode
    spec = _merged_spec(cfg.gen, args)
    tcfg = _merged_train(cfg.train, args)
    root = Path(args.out_dir or cfg.output_dir)
    worst = EXIT_OK
    for trial in range(args.trials):
        tspec = replace(spec, seed=spec.seed + trial)
        out = root if args.trials == 1 else root / f"trial-{trial:03d}"
        out.mkdir(parents=True, exist_ok=True)
        ds = generate(mode, tspec)
        serialize.save_dataset(out / "dataset.json", ds)
        cfg_t = tcfg if mode == "real" else replace(tcfg, k=ds.k)
        try:
            weights, trace = train(ds, cfg_t)
        except NotConvergedError as exc:
            write_training_outputs(out, ds, exc.weights, exc.trace, cfg.formats)
            print(f"seed {tspec.seed}: not converged ({exc})")
            worst = max(worst, EXIT_NOT_CONVERGED)
            continue
        write_training_outputs(out, ds, weights, trace, cfg.formats)
        violations, notes = verify(ds, ds.mode, None if mode == "real" else ds.k, weights)
        checks = trace_bound_checks(ds, trace)
        ok = not violations and not notes and all(c.passed for c in checks)
        failed = [c.name for c in checks if not c.passed]
        print(
            f"seed {tspec.seed}: {'PASS' if ok else 'FAIL'} steps={trace.steps_to_converge} "
            f"violations={len(violations)} failed_bounds={failed}"
        )
        if not ok:
            worst = max(worst, EXIT_FAIL)
    return worst


def _add_gen_flags(p):
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--n", type=int, help="dimension")
    p.add_argument("--k", type=int, help="number of sectors (ignored for real mode)")
    p.add_argument("--count", type=int)
    p.add_argument("--margin", type=float, help="angular margin (rad), or linear margin for real mode")
    p.add_argument("--seed", type=int)
    p.add_argument("--r-min", dest="r_min", type=float)
    p.add_argument("--r-max", dest="r_max", type=float)


def _add_train_flags(p):
    p.add_argument("--C", type=float, help="learning-rate constant")
    p.add_argument("--max-epochs", dest="max_epochs", type=int)
    p.add_argument("--train-seed", dest="train_seed", type=int, help="seed for --shuffle")
    p.add_argument("--shuffle", action="store_true")
    p.add_argument("--rule-form", dest="rule_form", choices=("idempotent", "direct"))
    p.add_argument("--target", choices=("bisector", "root"))
    p.add_argument("--schedule", choices=("lockstep", "sample"))


def build_parser():
    parser = argparse.ArgumentParser(prog="bcmvn", description="Bicomplex MVN perceptron experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a separable dataset")
    _add_gen_flags(p)
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--no-hidden", dest="no_hidden", action="store_true", help="strip hidden weights")
    p.add_argument("--config", help="ExperimentConfig JSON")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("train", help="train on a dataset file")
    p.add_argument("dataset")
    p.add_argument("--out-dir", dest="out_dir")
    p.add_argument("--formats", help="comma-separated subset of json,csv")
    p.add_argument("--config")
    _add_train_flags(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("verify", help="classify a dataset with trained weights")
    p.add_argument("dataset")
    p.add_argument("weights")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="check convergence bounds along a trace")
    p.add_argument("dataset")
    p.add_argument("trace", help="trace.json")
    p.add_argument("--rel-tol", dest="rel_tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("run", help="gen, train, verify and bounds in one go")
    _add_gen_flags(p)
    _add_train_flags(p)
    p.add_argument("--out-dir", dest="out_dir")
    p.add_argument("--trials", type=int, default=1, help="consecutive seeds, one directory each")
    p.add_argument("--config")
    p.set_defaults(func=cmd_run)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except MissingHiddenError as exc:
        print(f"missing hidden weights: {exc}", file=sys.stderr)
        return EXIT_MISSING_HIDDEN
    except GenerationStalledError as exc:
        print(f"generation stalled: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
