"""Code descriptors and word files.

A descriptor is canonical JSON (sorted keys) carrying the parameters, the
field modulus, the evaluation points and the information set, sealed with a
SHA-256 over every other field.  Extension elements are written as
little-endian coefficient lists of decimal integers.

Word files are three short text lines::

    mrlrc-word 1 <descriptor sha256>
    c0,c1 c0,c1 ...           one symbol per token
    mask 00101000             optional, 1 = erased
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .code import MrLrcCode, make_code
from .construction import CodeParams, ParityCheck, assemble_H, derive_params
from .gf import ExtField, PrimeField

FORMAT = "mrlrc-descriptor"
VERSION = 1
WORD_MAGIC = "mrlrc-word"


class DescriptorError(ValueError):
    pass


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def content_hash(body: dict) -> str:
    body = {k: v for k, v in body.items() if k != "sha256"}
    return hashlib.sha256(canonical_json(body).encode()).hexdigest()


def build_descriptor(code: MrLrcCode, emit_H: bool = False, shuffle_seed: int | None = None) -> dict:
    p = code.params
    body = {
        "format": FORMAT,
        "version": VERSION,
        "params": {k: getattr(p, k) for k in ("n", "r", "h", "a", "g", "t", "m", "q", "k")},
        "field": code.field.descriptor(),
        "points": code.parity.points.tolist(),
        "info_positions": list(code.info_positions),
        "shuffle_seed": shuffle_seed,
    }
    if emit_H:
        body["H"] = code.H.tolist()
    body["sha256"] = content_hash(body)
    return body


def dumps(descriptor: dict) -> str:
    return json.dumps(descriptor, sort_keys=True, indent=1) + "\n"


@dataclass
class LoadedDescriptor:
    raw: dict
    params: CodeParams
    parity: ParityCheck
    hash_ok: bool
    warnings: list[str]

    @property
    def sha256(self) -> str:
        return self.raw.get("sha256", "")

    def code(self) -> MrLrcCode:
        return make_code(self.parity)


def load_descriptor(path: str | Path, force: bool = False) -> LoadedDescriptor:
    """Read and check a descriptor; ``force`` downgrades integrity errors to warnings.

    ``H`` is always rebuilt from the stored points, so an edited point
    changes the code that gets verified.
    """
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DescriptorError(f"cannot read descriptor {path}: {exc}") from None
    if raw.get("format") != FORMAT or raw.get("version") != VERSION:
        raise DescriptorError(f"{path} is not a version-{VERSION} {FORMAT}")
    warnings = []

    def problem(msg: str) -> None:
        if not force:
            raise DescriptorError(msg)
        warnings.append(msg)

    hash_ok = raw.get("sha256") == content_hash(raw)
    if not hash_ok:
        problem("content hash mismatch")

    sp = raw["params"]
    params = derive_params(sp["n"], sp["r"], sp["h"], sp["a"], sp["g"], q=sp["q"])
    for key in ("t", "m", "k"):
        if sp[key] != getattr(params, key):
            problem(f"stored {key}={sp[key]} disagrees with derived {getattr(params, key)}")
    f = raw["field"]
    if (f["q"], f["m"]) != (params.q, params.m):
        raise DescriptorError(f"field ({f['q']}, {f['m']}) does not match params")
    field = ExtField(PrimeField(f["q"]), f["m"], f["modulus"])
    parity = assemble_H(params, np.array(raw["points"], dtype=np.int64), field)
    if "H" in raw and not np.array_equal(np.array(raw["H"], dtype=np.int64), parity.H.data):
        problem("stored H does not match the matrix rebuilt from the points")
    return LoadedDescriptor(raw=raw, params=params, parity=parity, hash_ok=hash_ok, warnings=warnings)


# ---------------------------------------------------------------------------
# Word files
# ---------------------------------------------------------------------------

def format_word(symbols: np.ndarray, digest: str, mask: str | None = None) -> str:
    toks = " ".join(",".join(str(int(c)) for c in s) for s in np.asarray(symbols))
    lines = [f"{WORD_MAGIC} 1 {digest}", toks]
    if mask is not None:
        lines.append(f"mask {mask}")
    return "\n".join(lines) + "\n"


def parse_word(text: str, m: int, digest: str | None = None) -> tuple[np.ndarray, str | None]:
    lines = [ln.strip() for ln in text.strip().splitlines()]
    if not lines or not lines[0].startswith(WORD_MAGIC):
        raise DescriptorError("not a word file")
    head = lines[0].split()
    if len(head) != 3 or head[1] != "1":
        raise DescriptorError(f"bad word header {lines[0]!r}")
    if digest is not None and head[2] != digest:
        raise DescriptorError("word file was written for a different descriptor")
    body = lines[1] if len(lines) > 1 else ""
    symbols = []
    for tok in body.split():
        coeffs = [int(c) for c in tok.split(",")]
        if len(coeffs) != m:
            raise DescriptorError(f"symbol {tok!r} has {len(coeffs)} coefficients, expected {m}")
        symbols.append(coeffs)
    mask = None
    for ln in lines[2:]:
        if ln.startswith("mask "):
            mask = ln.split(None, 1)[1].strip()
    return np.array(symbols, dtype=np.int64).reshape(-1, m), mask


def mask_to_positions(mask: str, n: int) -> list[int]:
    if len(mask) != n or set(mask) - {"0", "1"}:
        raise DescriptorError(f"mask must be {n} characters of 0/1, got {mask!r}")
    return [i for i, c in enumerate(mask) if c == "1"]


def positions_to_mask(positions, n: int) -> str:
    s = set(positions)
    return "".join("1" if i in s else "0" for i in range(n))
