"""Checkpoint container: versioned header plus raw little-endian float64 arrays.

Layout: 4-byte magic "NSPF", uint32 format version, uint32 header length,
UTF-8 JSON header (metadata and per-array shapes, in order), then each
array's row-major float64 bytes. Everything is little-endian.
"""

from __future__ import annotations

import json
import struct

import numpy as np

from .nets import PolicyParams, ShapeMismatchError

MAGIC = b"NSPF"
FORMAT_VERSION = 1


class CheckpointError(RuntimeError):
    """Checkpoint file is unreadable, corrupt, or shape-inconsistent."""


def save_checkpoint(params: PolicyParams, path) -> None:
    params.validate()
    arrays = params.arrays()
    header = {
        "format_version": FORMAT_VERSION,
        "scenario": params.scenario,
        "role": params.role,
        "obs_len": params.obs_len,
        "action_count": params.action_count,
        "hidden_sizes": list(params.hidden_sizes),
        "arrays": [{"name": name, "shape": list(a.shape)} for name, a in arrays],
    }
    blob = json.dumps(header, sort_keys=True).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<I", FORMAT_VERSION))
        fh.write(struct.pack("<I", len(blob)))
        fh.write(blob)
        for _, arr in arrays:
            fh.write(np.ascontiguousarray(arr, dtype="<f8").tobytes())


def load_checkpoint(path) -> PolicyParams:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as err:
        raise CheckpointError(f"cannot read checkpoint: {err}") from err

    try:
        if raw[:4] != MAGIC:
            raise CheckpointError(f"bad magic {raw[:4]!r}, not a checkpoint file")
        version, header_len = struct.unpack_from("<II", raw, 4)
        if version != FORMAT_VERSION:
            raise CheckpointError(f"unsupported checkpoint version {version}")
        header_end = 12 + header_len
        header = json.loads(raw[12:header_end].decode("utf-8"))
        offset = header_end
        loaded: dict[str, np.ndarray] = {}
        for spec in header["arrays"]:
            shape = tuple(spec["shape"])
            count = int(np.prod(shape)) if shape else 1
            nbytes = count * 8
            if offset + nbytes > len(raw):
                raise CheckpointError(f"truncated array {spec['name']}")
            arr = np.frombuffer(raw[offset : offset + nbytes], dtype="<f8").reshape(shape)
            loaded[spec["name"]] = arr.astype(np.float64)
            offset += nbytes
        if offset != len(raw):
            raise CheckpointError(f"{len(raw) - offset} trailing bytes after arrays")

        n_layers = len(header["hidden_sizes"]) + 1
        params = PolicyParams(
            obs_len=int(header["obs_len"]),
            action_count=int(header["action_count"]),
            hidden_sizes=tuple(header["hidden_sizes"]),
            scenario=header["scenario"],
            role=header["role"],
            actor_weights=[loaded[f"actor_w{i}"] for i in range(n_layers)],
            actor_biases=[loaded[f"actor_b{i}"] for i in range(n_layers)],
            critic_weights=[loaded[f"critic_w{i}"] for i in range(n_layers)],
            critic_biases=[loaded[f"critic_b{i}"] for i in range(n_layers)],
        )
    except CheckpointError:
        raise
    except (KeyError, ValueError, IndexError, struct.error, UnicodeDecodeError, json.JSONDecodeError) as err:
        raise CheckpointError(f"corrupt checkpoint: {err}") from err

    try:
        params.validate()
    except ShapeMismatchError as err:
        raise CheckpointError(f"checkpoint shapes inconsistent: {err}") from err
    return params
