"""File formats: PGM images, histogram CSV/JSON, and result JSON records.

Images are 2-D uint8 numpy arrays throughout. Readers reject malformed
input with positions (byte offsets for PGM, line numbers for CSV) instead
of truncating silently, and every writer/reader pair round-trips losslessly.
"""

from __future__ import annotations

import json

import numpy as np

from .histogram import GrayHistogram, histogram_from_counts
from .objectives import ThresholdSet


class PgmParseError(ValueError):
    """Malformed PGM input; the message carries the byte offset."""


_WS = b" \t\r\n\x0b\x0c"


class _Tokens:
    """Whitespace/comment-aware tokenizer over a PGM header."""

    def __init__(self, data: bytes, pos: int):
        self.data = data
        self.pos = pos

    def skip_separators(self):
        d, n = self.data, len(self.data)
        while self.pos < n:
            c = self.data[self.pos : self.pos + 1]
            if c in (b"#",):
                nl = d.find(b"\n", self.pos)
                self.pos = n if nl < 0 else nl + 1
            elif c in _WS:
                self.pos += 1
            else:
                return

    def next_int(self, what: str) -> int:
        self.skip_separators()
        start = self.pos
        d, n = self.data, len(self.data)
        while self.pos < n and d[self.pos : self.pos + 1] not in _WS and d[self.pos] != ord("#"):
            self.pos += 1
        tok = d[start : self.pos]
        if not tok:
            raise PgmParseError(f"missing {what} at offset {start}")
        try:
            return int(tok)
        except ValueError:
            raise PgmParseError(f"bad {what} {tok!r} at offset {start}") from None


def read_pgm(data: bytes) -> np.ndarray:
    """Parse P2 (ASCII) or P5 (binary) PGM bytes into a (height, width) array."""
    if not isinstance(data, (bytes, bytearray, memoryview)):
        raise TypeError("read_pgm takes bytes")
    data = bytes(data)
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise PgmParseError(f"expected magic P2 or P5 at offset 0, got {magic!r}")
    toks = _Tokens(data, 2)
    width = toks.next_int("width")
    height = toks.next_int("height")
    maxval = toks.next_int("maxval")
    if width <= 0 or height <= 0:
        raise PgmParseError(f"dimensions must be positive, got {width}x{height}")
    if not 0 < maxval <= 255:
        raise PgmParseError(f"maxval {maxval} outside (0, 255]")
    count = width * height
    if magic == b"P5":
        start = toks.pos + 1
        if toks.pos >= len(data) or data[toks.pos : toks.pos + 1] not in _WS:
            raise PgmParseError(f"expected a whitespace byte after maxval at offset {toks.pos}")
        payload = data[start : start + count]
        if len(payload) < count:
            raise PgmParseError(
                f"truncated pixel payload at offset {start}: expected {count} bytes, found {len(payload)}"
            )
        pixels = np.frombuffer(payload, dtype=np.uint8)
    else:
        vals = np.empty(count, dtype=np.uint8)
        for i in range(count):
            v = toks.next_int(f"pixel {i}")
            if not 0 <= v <= maxval:
                raise PgmParseError(f"pixel value {v} exceeds maxval {maxval}")
            vals[i] = v
        pixels = vals
    if magic == b"P5" and maxval < 255 and int(pixels.max(initial=0)) > maxval:
        raise PgmParseError(f"pixel value {int(pixels.max())} exceeds maxval {maxval}")
    return pixels.reshape(height, width).copy()


def write_pgm(img) -> bytes:
    """Serialize a 2-D array of values in [0, 255] as canonical binary PGM."""
    a = np.asarray(img)
    if a.ndim != 2 or a.size == 0:
        raise ValueError("image must be 2-D and non-empty")
    if a.min() < 0 or a.max() > 255:
        raise ValueError("pixel values must lie in [0, 255]")
    h, w = a.shape
    header = f"P5\n{w} {h}\n255\n".encode("ascii")
    return header + a.astype(np.uint8).tobytes()


def load_pgm(path) -> np.ndarray:
    with open(path, "rb") as f:
        return read_pgm(f.read())


def save_pgm(path, img) -> None:
    with open(path, "wb") as f:
        f.write(write_pgm(img))


def write_histogram_csv(path, h: GrayHistogram) -> None:
    """Write all levels as `level,count` rows under the standard header."""
    lines = ["level,count"]
    lines += [f"{i},{int(c)}" for i, c in enumerate(h.counts)]
    with open(path, "w", encoding="ascii") as f:
        f.write("\n".join(lines) + "\n")


def read_histogram_csv(path) -> GrayHistogram:
    """Read `level,count` rows; levels may be sparse, missing ones count 0."""
    with open(path, "r", encoding="ascii") as f:
        lines = f.read().splitlines()
    if not lines or lines[0].strip() != "level,count":
        raise ValueError(f"{path}: line 1: expected header 'level,count'")
    pairs = {}
    for ln, raw in enumerate(lines[1:], start=2):
        row = raw.strip()
        if not row:
            continue
        parts = row.split(",")
        if len(parts) != 2:
            raise ValueError(f"{path}: line {ln}: expected 'level,count', got {raw!r}")
        try:
            level, count = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"{path}: line {ln}: non-integer field in {raw!r}") from None
        if level < 0 or count < 0:
            raise ValueError(f"{path}: line {ln}: negative value in {raw!r}")
        if level in pairs:
            raise ValueError(f"{path}: line {ln}: duplicate level {level}")
        pairs[level] = count
    if not pairs:
        raise ValueError(f"{path}: no histogram rows (empty histogram)")
    counts = np.zeros(max(pairs) + 1, dtype=np.int64)
    for level, count in pairs.items():
        counts[level] = count
    return histogram_from_counts(counts)


def write_histogram_json(path, h: GrayHistogram) -> None:
    with open(path, "w", encoding="ascii") as f:
        json.dump({"levels": h.levels, "counts": [int(c) for c in h.counts]}, f)
        f.write("\n")


def read_histogram_json(path) -> GrayHistogram:
    with open(path, "r", encoding="ascii") as f:
        obj = json.load(f)
    if not isinstance(obj, dict) or "levels" not in obj or "counts" not in obj:
        raise ValueError(f"{path}: expected an object with 'levels' and 'counts'")
    levels, counts = obj["levels"], obj["counts"]
    if not isinstance(levels, int) or len(counts) != levels:
        raise ValueError(f"{path}: counts length {len(counts)} does not match levels {levels}")
    return histogram_from_counts(counts)


def result_record(method: str, mode: str, ts: ThresholdSet, regions=None, metrics=None) -> dict:
    """The JSON-serializable record of one thresholding run."""
    rec = {
        "method": method,
        "mode": mode,
        "n": ts.n,
        "thresholds": list(ts.thresholds),
        "objective": ts.objective_value,
    }
    if regions is not None:
        rec["regions"] = [{"lo": r.lo, "hi": r.hi, "level": r.level} for r in regions]
    if metrics is not None:
        rec["metrics"] = {
            "mse": metrics.mse,
            "psnr": metrics.psnr if metrics.psnr != float("inf") else "inf",
            "ssim": metrics.ssim,
            "ssim_params": metrics.ssim_params,
        }
    return rec


def parse_threshold_set(rec: dict) -> ThresholdSet:
    """Rebuild the ThresholdSet stored in a result record."""
    return ThresholdSet(
        thresholds=tuple(int(t) for t in rec["thresholds"]),
        objective_value=float(rec["objective"]),
    )


def write_result_json(path, rec: dict) -> None:
    text = json.dumps(rec, indent=2)
    if path is None:
        print(text)
        return
    with open(path, "w", encoding="ascii") as f:
        f.write(text + "\n")


def read_result_json(path) -> dict:
    with open(path, "r", encoding="ascii") as f:
        return json.load(f)
