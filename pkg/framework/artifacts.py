"""Versioned binary artifacts and content digests."""
from __future__ import annotations

import hashlib
import json
import struct
import zlib
from pathlib import Path
from typing import Any, Iterable, Tuple, Union

from framework.errors import IndexFormatError

PathLike = Union[str, Path]

_LENGTH = struct.Struct("<Q")


def canonical_json(payload: Any) -> bytes:
    """JSON with sorted keys and no whitespace; identical payloads give identical bytes."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode("utf-8")


def digest_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def digest_parts(parts: Iterable[str]) -> str:
    sha = hashlib.sha256()
    for part in parts:
        sha.update(part.encode("utf-8"))
        sha.update(b"\0")
    return sha.hexdigest()


def _check_magic(data: bytes, magic: bytes, path: PathLike) -> bytes:
    if not data.startswith(magic):
        raise IndexFormatError(f"{path}: not a {magic.decode().strip()} file (bad header)")
    return data[len(magic):]


def write_compressed_json(path: PathLike, magic: bytes, payload: Any) -> bytes:
    # level pinned so equal payloads give equal bytes
    data = magic + zlib.compress(canonical_json(payload), 9)
    Path(path).write_bytes(data)
    return data


def read_compressed_json(path: PathLike, magic: bytes) -> Any:
    body = _check_magic(Path(path).read_bytes(), magic, path)
    try:
        return json.loads(zlib.decompress(body).decode("utf-8"))
    except (zlib.error, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise IndexFormatError(f"{path}: corrupt payload ({exc})") from exc


def write_meta_and_blob(path: PathLike, magic: bytes, meta: Any, blob: bytes) -> bytes:
    meta_bytes = canonical_json(meta)
    data = magic + _LENGTH.pack(len(meta_bytes)) + meta_bytes + blob
    Path(path).write_bytes(data)
    return data


def read_meta_and_blob(path: PathLike, magic: bytes) -> Tuple[Any, bytes]:
    body = _check_magic(Path(path).read_bytes(), magic, path)
    if len(body) < _LENGTH.size:
        raise IndexFormatError(f"{path}: truncated header")
    (length,) = _LENGTH.unpack_from(body)
    start = _LENGTH.size
    try:
        meta = json.loads(body[start:start + length].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise IndexFormatError(f"{path}: corrupt metadata ({exc})") from exc
    return meta, body[start + length:]
