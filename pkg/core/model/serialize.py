# Copyright (C) 2026 EDBN Authors
# SPDX-License-Identifier: AGPL-3.0-or-later
"""Versioned binary model files.

Layout (all integers little-endian):

    MAGIC            4 bytes  b"EDBN"
    version          u16
    header_len       u32
    header           header_len bytes of UTF-8 ``key=value`` lines
    payload          float32 LE scalars: embedding (row-major), branch A
                     layers (weight then bias each), branch B layers, head layers

The header carries the full ModelConfig plus the id vocabulary and the
feature names the net was trained on.
"""

from __future__ import annotations

import hashlib
import logging
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List

import numpy as np

from core.data.vocab import Vocab
from core.errors import ModelFileError, NotAModelFile, TruncatedModelFile, UnsupportedModelVersion
from core.layers import EmbeddingTable, LinearParams
from core.model.config import ModelConfig, layer_shapes, param_count
from core.model.network import DualBranchNet
from core.unilog import write as uni_write

logger = logging.getLogger(__name__)

MAGIC = b"EDBN"
FORMAT_VERSION = 1
_PREFIX = struct.Struct("<4sHI")
_PAYLOAD_DTYPE = np.dtype("<f4")


@dataclass(frozen=True)
class ModelHeader:
    version: int
    fields: Dict[str, str]


def _join(values) -> str:
    return ",".join(str(v) for v in values)


def _split_ints(text: str) -> List[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _render_header(net: DualBranchNet) -> bytes:
    cfg = net.config
    fields = {
        "feature_count": cfg.feature_count,
        "id_vocab": cfg.id_vocab,
        "embed_dim": cfg.embed_dim,
        "branch_a_widths": _join(cfg.branch_a_widths),
        "branch_b_widths": _join(cfg.branch_b_widths),
        "head_widths": _join(cfg.head_widths),
        "use_id_branch": "true" if cfg.use_id_branch else "false",
        "activation": cfg.activation,
        "feature_names": _join(net.feature_names or []),
        "vocab_ids": _join(net.vocab.raw_ids.tolist()) if net.vocab is not None else "",
    }
    return "".join(f"{key}={value}\n" for key, value in fields.items()).encode("utf-8")


def _parse_header(text: str) -> Dict[str, str]:
    fields: Dict[str, str] = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        if "=" not in line:
            raise ModelFileError(f"malformed header line: {line!r}")
        key, value = line.split("=", 1)
        fields[key.strip()] = value.strip()
    return fields


def _config_from_header(fields: Dict[str, str]) -> ModelConfig:
    try:
        return ModelConfig.create(
            feature_count=int(fields["feature_count"]),
            id_vocab=int(fields["id_vocab"]),
            embed_dim=int(fields["embed_dim"]),
            branch_a_widths=_split_ints(fields["branch_a_widths"]),
            branch_b_widths=_split_ints(fields["branch_b_widths"]),
            head_widths=_split_ints(fields["head_widths"]),
            use_id_branch=fields.get("use_id_branch", "true") == "true",
            activation=fields.get("activation", "swish"),
        )
    except KeyError as exc:
        raise ModelFileError(f"header is missing {exc.args[0]}") from None
    except ValueError as exc:
        raise ModelFileError(f"bad header: {exc}") from exc


def dumps(net: DualBranchNet) -> bytes:
    header = _render_header(net)
    parts = [_PREFIX.pack(MAGIC, FORMAT_VERSION, len(header)), header]
    for arr in net.parameters().values():
        parts.append(np.ascontiguousarray(arr, dtype=_PAYLOAD_DTYPE).tobytes())
    return b"".join(parts)


def payload_digest(net: DualBranchNet) -> str:
    """sha256 over the serialized parameter payload."""
    digest = hashlib.sha256()
    for arr in net.parameters().values():
        digest.update(np.ascontiguousarray(arr, dtype=_PAYLOAD_DTYPE).tobytes())
    return f"sha256:{digest.hexdigest()}"


def read_header(blob: bytes, source: str | None = None) -> tuple[ModelHeader, int]:
    """Validate the fixed prefix and header; returns the header and payload offset."""
    if len(blob) < len(MAGIC) or blob[: len(MAGIC)] != MAGIC:
        raise NotAModelFile(source)
    if len(blob) < _PREFIX.size:
        raise TruncatedModelFile("truncated model file: incomplete prefix")
    _, version, header_len = _PREFIX.unpack_from(blob, 0)
    if version == 0 or version > FORMAT_VERSION:
        raise UnsupportedModelVersion(version, FORMAT_VERSION)
    end = _PREFIX.size + header_len
    if len(blob) < end:
        raise TruncatedModelFile("truncated model file: incomplete header")
    try:
        text = blob[_PREFIX.size:end].decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ModelFileError("header is not valid UTF-8") from exc
    return ModelHeader(version=version, fields=_parse_header(text)), end


def loads(blob: bytes, source: str | None = None) -> DualBranchNet:
    header, offset = read_header(blob, source)
    config = _config_from_header(header.fields)
    expected = param_count(config) * _PAYLOAD_DTYPE.itemsize
    payload = blob[offset:]
    if len(payload) < expected:
        raise TruncatedModelFile(f"truncated model file: payload has {len(payload)} of {expected} bytes")
    if len(payload) > expected:
        raise ModelFileError(f"model file has {len(payload) - expected} trailing bytes")
    flat = np.frombuffer(payload, dtype=_PAYLOAD_DTYPE).astype(np.float32)

    cursor = 0

    def take(rows: int, cols: int | None = None) -> np.ndarray:
        nonlocal cursor
        count = rows * (cols or 1)
        chunk = flat[cursor:cursor + count].copy()
        cursor += count
        return chunk.reshape(rows, cols) if cols is not None else chunk

    embedding = None
    if config.use_id_branch:
        embedding = EmbeddingTable(take(config.id_vocab, int(config.embed_dim)))
    towers: Dict[str, List[LinearParams]] = {"branch_a": [], "branch_b": [], "head": []}
    for block, chain in layer_shapes(config).items():
        for fan_in, fan_out in chain:
            weight = take(fan_in, fan_out)
            towers[block].append(LinearParams(weight, take(fan_out)))

    names = [n for n in header.fields.get("feature_names", "").split(",") if n]
    vocab_text = header.fields.get("vocab_ids", "")
    vocab = Vocab(_split_ints(vocab_text)) if vocab_text else None
    if vocab is not None and config.use_id_branch and vocab.size != config.id_vocab:
        raise ModelFileError(f"vocabulary has {vocab.size} rows, config says {config.id_vocab}")
    return DualBranchNet(
        config=config,
        embedding=embedding,
        branch_a=towers["branch_a"],
        branch_b=towers["branch_b"],
        head=towers["head"],
        vocab=vocab,
        feature_names=names or None,
    )


def save(net: DualBranchNet, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    blob = dumps(net)
    tmp_path = path.with_suffix(path.suffix + ".tmp")
    tmp_path.write_bytes(blob)
    tmp_path.replace(path)
    logger.info("saved model to %s (%d bytes)", path, len(blob))
    uni_write("model.saved", None, path=str(path), bytes=len(blob), params=param_count(net.config))
    return path


def load(path: str | Path) -> DualBranchNet:
    path = Path(path)
    net = loads(path.read_bytes(), source=str(path))
    uni_write("model.loaded", None, path=str(path), params=param_count(net.config))
    return net


def payload_scalar_count(path: str | Path) -> int:
    """Number of float32 scalars stored after the header."""
    blob = Path(path).read_bytes()
    _, offset = read_header(blob, str(path))
    return (len(blob) - offset) // _PAYLOAD_DTYPE.itemsize


__all__ = [
    "FORMAT_VERSION",
    "MAGIC",
    "ModelHeader",
    "dumps",
    "load",
    "loads",
    "payload_digest",
    "payload_scalar_count",
    "read_header",
    "save",
]
