# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""Staged training: per-branch pre-training with temporary heads, then joint
training of the combined net.

Randomness comes from one root ``RngState(cfg.seed)`` split into labelled
child streams (``init``, ``temp_head/<branch>``, ``shuffle/<phase>``), so a
phase draws the same numbers whether or not other phases ran.
"""

from __future__ import annotations

import logging
import math
import time
from typing import Callable, Iterable, Optional

import numpy as np

from core.data.batching import iter_batches, make_batches
from core.data.dataset import Dataset
from core.data.split import time_split
from core.data.vocab import Vocab
from core.errors import ArgumentError, ShapeError, UndefinedCorrelation
from core.layers import get_loss
from core.metrics import MetricReport, metric_report, mse_metric, pearson
from core.model import (
    BranchKind,
    BranchNet,
    DualBranchNet,
    backward,
    branch_backward,
    branch_forward,
    branch_from,
    build,
    forward,
    install_branch,
    param_count,
    payload_digest,
)
from core.optim import AdamState, adam_step, warmup_lr
from core.tensor import RngState
from core.training.config import TrainConfig
from core.training.report import EpochRecord, LrPoint, TrainReport
from core.unilog import write as uni_write

logger = logging.getLogger(__name__)

JOINT_PHASE = "joint"
ForwardFn = Callable[..., tuple]
BackwardFn = Callable[..., dict]


def phase_label(kind: BranchKind) -> str:
    return f"pretrain_{BranchKind(kind).value}"


def _predict_rows(model, fwd: ForwardFn, ds: Dataset, vocab: Vocab, batch_size: int) -> np.ndarray:
    out = np.empty(ds.n_rows, dtype=np.float64)
    for batch in iter_batches(ds, batch_size, vocab=vocab):
        pred, _ = fwd(model, batch.features, batch.ids)
        out[batch.rows] = pred.reshape(-1)
    return out


def _val_metrics(model, fwd: ForwardFn, val: Optional[Dataset], vocab: Vocab, cfg: TrainConfig):
    if val is None or val.n_rows < 2:
        return None, None
    preds = _predict_rows(model, fwd, val, vocab, cfg.eval_batch_size)
    try:
        rho = pearson(preds, val.target)
    except UndefinedCorrelation:
        logger.warning("validation pearson undefined (constant predictions or targets)")
        rho = math.nan
    return rho, mse_metric(preds, val.target)


def _run_phase(
    phase: str,
    model,
    fwd: ForwardFn,
    bwd: BackwardFn,
    train_ds: Dataset,
    val_ds: Optional[Dataset],
    vocab: Vocab,
    cfg: TrainConfig,
    epochs: int,
    rng: RngState,
    report: TrainReport,
    *,
    skip: Iterable[str] = (),
    run_id: Optional[str] = None,
) -> None:
    """Adam + warm-up over ``epochs``; the schedule and moments restart here."""
    if epochs == 0:
        return
    schedule = cfg.schedule()
    loss_fn = get_loss(cfg.loss)
    params = model.parameters()
    state = AdamState.for_params(params)
    shuffle_rng = rng.child("shuffle", phase)
    frozen = tuple(skip)
    step = 0
    lr = 0.0
    for epoch in range(1, epochs + 1):
        loss_sum = 0.0
        seen = 0
        for batch in make_batches(train_ds, cfg.batch_size, shuffle_rng, vocab=vocab):
            step += 1
            lr = warmup_lr(step, schedule)
            pred, cache = fwd(model, batch.features, batch.ids)
            loss, d_pred = loss_fn(pred, batch.targets)
            grads = bwd(model, cache, d_pred)
            adam_step(params, grads, state, lr, skip=frozen)
            model.touch()
            report.lr_trace.append(LrPoint(phase=phase, step=step, lr=lr))
            loss_sum += loss * batch.size
            seen += batch.size
        val_pearson, val_mse = _val_metrics(model, fwd, val_ds, vocab, cfg)
        record = EpochRecord(
            phase=phase,
            epoch=epoch,
            train_loss=loss_sum / seen,
            val_pearson=val_pearson,
            val_mse=val_mse,
            lr=lr,
        )
        report.epochs.append(record)
        logger.info(
            "[%s] epoch %d/%d loss=%.6f val_pearson=%s lr=%.3g",
            phase,
            epoch,
            epochs,
            record.train_loss,
            "-" if val_pearson is None else f"{val_pearson:.4f}",
            lr,
        )
        uni_write("train.epoch", run_id, **record.model_dump())
    uni_write("train.phase_end", run_id, phase=phase, steps=step)


def _net_forward(net: DualBranchNet, features, ids):
    return forward(net, features, ids)


def _net_backward(net: DualBranchNet, cache, d_pred):
    return backward(net, cache, d_pred)


def pretrain_branch(
    branch: BranchKind | str,
    ds: Dataset,
    cfg: TrainConfig,
    rng: RngState,
    *,
    init: Optional[DualBranchNet] = None,
    val: Optional[Dataset] = None,
    report: Optional[TrainReport] = None,
    run_id: Optional[str] = None,
) -> BranchNet:
    """Train one branch under a temporary linear head.

    The starting weights are those of ``init`` (or of a net freshly built from
    ``rng``'s ``init`` stream). Returns the trained branch; its temporary head
    is not used afterwards.
    """
    if ds.n_rows == 0:
        raise ArgumentError("pretrain_branch: empty dataset")
    kind = BranchKind(branch)
    if init is None:
        init = build(cfg.model_config_for(ds), rng.child("init"))
    net = branch_from(init, kind, rng.child("temp_head", kind.value))
    _run_phase(
        phase_label(kind),
        net,
        branch_forward,
        branch_backward,
        ds,
        val,
        ds.vocab,
        cfg,
        cfg.pretrain_epochs,
        rng,
        report if report is not None else TrainReport(),
        run_id=run_id,
    )
    return net


def fit(
    net: DualBranchNet,
    train_ds: Dataset,
    val_ds: Optional[Dataset],
    cfg: TrainConfig,
    epochs: int,
    rng: RngState,
    report: TrainReport,
    *,
    frozen: Iterable[str] = (),
    run_id: Optional[str] = None,
) -> None:
    """Joint training of every (non-frozen) parameter of ``net``."""
    _run_phase(
        JOINT_PHASE,
        net,
        _net_forward,
        _net_backward,
        train_ds,
        val_ds,
        train_ds.vocab,
        cfg,
        epochs,
        rng,
        report,
        skip=frozen,
        run_id=run_id,
    )


def _frozen_names(net: DualBranchNet, kinds: Iterable[BranchKind]) -> list[str]:
    prefixes: list[str] = []
    for kind in kinds:
        prefixes += ["branch_a."] if kind is BranchKind.DENSE else ["branch_b.", "embedding"]
    return [name for name in net.parameters() if name.startswith(tuple(prefixes))]


def train(cfg: TrainConfig, ds: Dataset, *, run_id: Optional[str] = None) -> tuple[DualBranchNet, TrainReport]:
    started = time.perf_counter()
    run_id = run_id or f"seed-{cfg.seed}"
    if cfg.features_include:
        ds = ds.select_features(cfg.features_include)
    train_ds, val_ds = time_split(ds, cfg.val_fraction)
    if train_ds.n_rows < 1:
        raise ArgumentError("no training rows after the time split")

    root = RngState(cfg.seed)
    net = build(cfg.model_config_for(train_ds), root.child("init"))
    net.vocab = train_ds.vocab
    net.feature_names = list(train_ds.feature_names)
    report = TrainReport(param_count=param_count(net.config))
    uni_write(
        "train.start",
        run_id,
        rows=train_ds.n_rows,
        val_rows=val_ds.n_rows,
        params=report.param_count,
        config=cfg.model_dump(),
    )
    logger.info(
        "training %d params on %d rows (%d val), phases: pretrain=%s x%d, joint x%d",
        report.param_count,
        train_ds.n_rows,
        val_ds.n_rows,
        cfg.pretrain_mode,
        cfg.pretrain_epochs,
        cfg.joint_epochs,
    )

    pretrained: list[BranchKind] = []
    if cfg.pretrain_epochs > 0:
        for kind in cfg.pretrain_branches():
            branch = pretrain_branch(kind, train_ds, cfg, root, init=net, val=val_ds, report=report, run_id=run_id)
            install_branch(net, branch)
            pretrained.append(kind)

    frozen = _frozen_names(net, pretrained) if cfg.freeze_pretrained else []
    fit(net, train_ds, val_ds, cfg, cfg.joint_epochs, root, report, frozen=frozen, run_id=run_id)

    report.wall_time_s = time.perf_counter() - started
    report.checksum = payload_digest(net)
    uni_write("train.done", run_id, wall_time_s=report.wall_time_s, checksum=report.checksum, epochs=len(report.epochs))
    return net, report


def _aligned(net: DualBranchNet, ds: Dataset) -> Dataset:
    if net.feature_names:
        ds = ds.select_features(net.feature_names)
    if ds.feature_count != net.config.feature_count:
        raise ShapeError("predict", (ds.n_rows, ds.feature_count), (ds.n_rows, net.config.feature_count))
    return ds


def predict(net: DualBranchNet, ds: Dataset, *, batch_size: int = 8192) -> np.ndarray:
    """Predictions for every row of ``ds`` in row order; unseen ids use the OOV row."""
    ds = _aligned(net, ds)
    if ds.n_rows == 0:
        return np.empty(0, dtype=np.float64)
    return _predict_rows(net, _net_forward, ds, net.vocab or ds.vocab, batch_size)


def evaluate(net: DualBranchNet, ds: Dataset, *, batch_size: int = 8192, per_time: bool = False) -> MetricReport:
    if ds.n_rows < 2:
        raise ArgumentError(f"evaluate needs at least 2 rows, got {ds.n_rows}")
    preds = predict(net, ds, batch_size=batch_size)
    try:
        return metric_report(preds, ds.target, ds.time_id, per_time=per_time)
    except UndefinedCorrelation as exc:
        raise UndefinedCorrelation(f"evaluate over {ds.n_rows} rows: {exc}") from exc


__all__ = ["JOINT_PHASE", "evaluate", "fit", "phase_label", "predict", "pretrain_branch", "train"]
