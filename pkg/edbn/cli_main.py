# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""Command-line entry point: ``gen``, ``train``, ``eval`` and ``predict``.

Progress goes to stderr through logging; results are printed to stdout as
``key=value`` lines. Exit codes: 0 ok, 1 usage/config, 2 data/schema/file,
3 runtime/numeric.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Sequence

from core import unilog
from core.data import SynthSpec, generate_synthetic, load_csv, time_split, write_csv, write_predictions
from core.errors import ConfigError, EdbnError, UndefinedCorrelation
from core.model import format_breakdown, load, save
from core.tensor import set_deterministic
from core.training import TrainConfig, evaluate, predict, train
from core.version import VERSION
from edbn.config_file import load_config_file
from edbn.logging_setup import setup_logging
from edbn.settings import Settings

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_RUNTIME = 3

# train flag dest -> TrainConfig field
TRAIN_FLAGS = {
    "lr": "lr_base",
    "batch_size": "batch_size",
    "epochs": "total_epochs",
    "warmup_steps": "warmup_steps",
    "embed_dim": "embed_dim",
    "pretrain": "pretrain_mode",
    "pretrain_epochs": "pretrain_epochs",
    "joint_epochs": "joint_epochs",
    "val_frac": "val_fraction",
    "seed": "seed",
    "features_include": "features_include",
    "freeze_pretrained": "freeze_pretrained",
    "per_time": "per_time_metric",
}


class CliUsageError(Exception):
    def __init__(self, message: str, usage: str):
        super().__init__(message)
        self.usage = usage


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise CliUsageError(message, self.format_usage())


def _csv_list(value: str) -> list[str]:
    return [item.strip() for item in value.split(",") if item.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="edbn", description="Embedding-based dual-branch return regression.")
    parser.add_argument("--version", action="version", version=f"edbn {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="Write a seeded synthetic market CSV")
    gen.add_argument("--out", required=True, type=Path)
    gen.add_argument("--rows", type=int, default=2000)
    gen.add_argument("--ids", type=int, default=100)
    gen.add_argument("--features", type=int, default=30)
    gen.add_argument("--id-std", type=float, default=1.0)
    gen.add_argument("--noise-std", type=float, default=0.5)
    gen.add_argument("--nonlinearity", type=float, default=0.5)
    gen.add_argument("--weight-scale", type=float, default=1.0)
    gen.add_argument("--seed", type=int, default=0)
    gen.set_defaults(handler=cmd_gen)

    tr = sub.add_parser("train", help="Train a model on a CSV and save it")
    tr.add_argument("--data", required=True, type=Path)
    tr.add_argument("--model-out", required=True, type=Path)
    tr.add_argument("--report-out", type=Path)
    tr.add_argument("--config", type=Path, help="key=value file; flags override it")
    tr.add_argument("--lr", type=float)
    tr.add_argument("--batch-size", type=int)
    tr.add_argument("--epochs", type=int)
    tr.add_argument("--warmup-steps", type=int)
    tr.add_argument("--embed-dim", type=int)
    tr.add_argument("--pretrain", choices=["dense", "id", "both", "none"])
    tr.add_argument("--pretrain-epochs", type=int)
    tr.add_argument("--joint-epochs", type=int)
    tr.add_argument("--val-frac", type=float)
    tr.add_argument("--seed", type=int)
    tr.add_argument("--features-include", type=_csv_list)
    tr.add_argument("--dense-only", action="store_true", default=None, help="Drop the id branch (ablation)")
    tr.add_argument("--freeze-pretrained", action="store_true", default=None)
    tr.add_argument("--per-time", action="store_true", default=None)
    tr.add_argument("--impute-missing", action="store_true")
    tr.set_defaults(handler=cmd_train)

    ev = sub.add_parser("eval", help="Score a saved model on a labelled CSV")
    ev.add_argument("--model", required=True, type=Path)
    ev.add_argument("--data", required=True, type=Path)
    ev.add_argument("--per-time", action="store_true")
    ev.add_argument("--impute-missing", action="store_true")
    ev.set_defaults(handler=cmd_eval)

    pr = sub.add_parser("predict", help="Write row_id,prediction for every CSV row")
    pr.add_argument("--model", required=True, type=Path)
    pr.add_argument("--data", required=True, type=Path)
    pr.add_argument("--out", required=True, type=Path)
    pr.add_argument("--impute-missing", action="store_true")
    pr.set_defaults(handler=cmd_predict)
    return parser


def _emit(pairs) -> None:
    for key, value in pairs:
        print(f"{key}={value}")


def train_config_from(args: argparse.Namespace) -> TrainConfig:
    """Defaults, then ``--config`` file values, then explicit flags."""
    values: Dict[str, Any] = load_config_file(args.config) if args.config else {}
    for dest, field in TRAIN_FLAGS.items():
        value = getattr(args, dest)
        if value is not None:
            values[field] = value
    if args.dense_only:
        values["use_id_branch"] = False
    return TrainConfig.create(**values)


def cmd_gen(args: argparse.Namespace) -> int:
    spec = SynthSpec.create(
        rows=args.rows,
        ids=args.ids,
        features=args.features,
        id_std=args.id_std,
        noise_std=args.noise_std,
        nonlinearity=args.nonlinearity,
        weight_scale=args.weight_scale,
        seed=args.seed,
    )
    ds = generate_synthetic(spec)
    path = write_csv(ds, args.out)
    _emit([("rows", ds.n_rows), ("ids", len(ds.vocab)), ("features", ds.feature_count), ("out", path)])
    return EXIT_OK


def cmd_train(args: argparse.Namespace) -> int:
    cfg = train_config_from(args)
    ds = load_csv(args.data, features_include=cfg.features_include, impute_missing=args.impute_missing)
    net, report = train(cfg, ds)
    logger.info("layer breakdown:\n%s", format_breakdown(net.config))
    save(net, args.model_out)
    if args.report_out:
        report.write_csv(args.report_out)

    train_ds, val_ds = time_split(ds, cfg.val_fraction)
    scored, split = (val_ds, "val") if val_ds.n_rows >= 2 else (train_ds, "train")
    pairs: list[tuple[str, Any]] = [("split", split)]
    try:
        metrics = evaluate(net, scored, batch_size=cfg.eval_batch_size, per_time=cfg.per_time_metric)
        pairs += metrics.as_pairs()
    except UndefinedCorrelation as exc:
        logger.warning("%s", exc)
        pairs += [("pearson", "nan"), ("n", scored.n_rows)]
    pairs += [
        ("params", report.param_count),
        ("checksum", report.checksum),
        ("wall_time_s", f"{report.wall_time_s:.3f}"),
        ("model", args.model_out),
    ]
    _emit(pairs)
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    net = load(args.model)
    ds = load_csv(args.data, features_include=net.feature_names, impute_missing=args.impute_missing)
    _emit(evaluate(net, ds, per_time=args.per_time).as_pairs())
    return EXIT_OK


def cmd_predict(args: argparse.Namespace) -> int:
    net = load(args.model)
    ds = load_csv(
        args.data,
        features_include=net.feature_names,
        impute_missing=args.impute_missing,
        require_target=False,
    )
    preds = predict(net, ds)
    path = write_predictions(ds.row_ids(), preds, args.out)
    _emit([("rows", ds.n_rows), ("out", path)])
    return EXIT_OK


def _configure(settings: Settings) -> None:
    log_path = settings.resolve_log_path() if settings.log_to_file else None
    setup_logging(settings.log_level, log_path)
    if settings.event_log:
        os.environ.setdefault(unilog.ENV_VAR, settings.event_log)
    set_deterministic(not settings.fast_matmul)


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except CliUsageError as exc:
        sys.stderr.write(exc.usage)
        print(f"edbn: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)

    try:
        _configure(Settings())
    except ValueError as exc:
        print(f"edbn: error: bad environment settings: {exc}", file=sys.stderr)
        return EXIT_USAGE

    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except ConfigError as exc:
        print(f"edbn: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EdbnError as exc:
        logger.debug("%s failed", args.command, exc_info=True)
        print(f"edbn: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        where = exc.filename if getattr(exc, "filename", None) else ""
        detail = f"{exc.strerror}: {where}" if exc.strerror and where else str(exc)
        print(f"edbn: error: {detail}", file=sys.stderr)
        return EXIT_DATA


def main() -> int:
    return run(sys.argv[1:])


__all__ = ["build_parser", "main", "run", "train_config_from"]


if __name__ == "__main__":
    sys.exit(main())
