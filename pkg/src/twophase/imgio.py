"""Image and results I/O.

Reads PGM (P2/P5, maxval up to 65535, comments tolerated) and PNG (8/16-bit
grayscale, 8-bit RGB); the format is detected from magic bytes, never from
the file extension. Intensities are normalized to [0, 1] by the format's
maximum at ingestion so model parameters are bit-depth independent; RGB
collapses to Rec. 601 luminance. Writers produce binary masks (8-bit, 255
foreground), 16-bit u-field snapshots, and energy-trace CSVs.
"""

import io
from dataclasses import dataclass

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import EmptyImageError, ImageFormatError
from .grid import as_field

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"

_REC601 = (0.299, 0.587, 0.114)


@dataclass
class ImageSource:
    """What a file actually contains, per its magic bytes and header."""

    path: str
    format: str  # "pgm" | "png"
    bit_depth: int  # 8 | 16
    channels: int  # 1 | 3


def _detect(data: bytes) -> str:
    if data[:2] in (b"P2", b"P5") and (len(data) == 2 or data[2:3].isspace()
                                       or data[2:3] == b"#"):
        return "pgm"
    if data.startswith(_PNG_MAGIC):
        return "png"
    raise ImageFormatError("not a PGM (P2/P5) or PNG file")


def _pgm_tokens(data: bytes):
    """Header/ASCII tokens: whitespace-separated, '#' comments to EOL."""
    pos = 0
    n = len(data)
    while pos < n:
        c = data[pos:pos + 1]
        if c.isspace():
            pos += 1
        elif c == b"#":
            while pos < n and data[pos:pos + 1] != b"\n":
                pos += 1
        else:
            start = pos
            while pos < n and not data[pos:pos + 1].isspace() \
                    and data[pos:pos + 1] != b"#":
                pos += 1
            yield data[start:pos], pos
    return


def _parse_pgm_header(data: bytes):
    tokens = []
    end = 0
    for tok, pos in _pgm_tokens(data):
        tokens.append(tok)
        end = pos
        if len(tokens) == 4:
            break
    if len(tokens) < 4:
        raise ImageFormatError("truncated PGM header")
    magic = tokens[0]
    try:
        width, height, maxval = (int(t) for t in tokens[1:4])
    except ValueError:
        raise ImageFormatError("non-numeric PGM header field") from None
    if width < 1 or height < 1:
        raise EmptyImageError(f"PGM declares {width}x{height} pixels")
    if not 1 <= maxval <= 65535:
        raise ImageFormatError(f"PGM maxval {maxval} out of range")
    return magic, width, height, maxval, end


def _read_pgm(data: bytes) -> np.ndarray:
    magic, width, height, maxval, end = _parse_pgm_header(data)
    count = width * height
    if magic == b"P2":
        values = []
        for tok, _ in _pgm_tokens(data[end:]):
            values.append(tok)
            if len(values) == count:
                break
        if len(values) < count:
            raise ImageFormatError("P2 raster has too few samples")
        try:
            arr = np.array([int(v) for v in values], dtype=np.float64)
        except ValueError:
            raise ImageFormatError("non-numeric P2 sample") from None
    else:
        # single whitespace byte separates maxval from the binary raster
        raster = data[end + 1:]
        if maxval < 256:
            need = count
            arr = np.frombuffer(raster[:need], dtype=np.uint8)
        else:
            need = 2 * count
            arr = np.frombuffer(raster[:need], dtype=">u2")
        if arr.size < count:
            raise ImageFormatError("P5 raster is truncated")
        arr = arr.astype(np.float64)
    if arr.max(initial=0.0) > maxval:
        raise ImageFormatError("PGM sample exceeds declared maxval")
    return arr.reshape(height, width) / float(maxval)


def _read_png(data: bytes) -> np.ndarray:
    try:
        img = Image.open(io.BytesIO(data))
        img.load()
    except (UnidentifiedImageError, OSError, SyntaxError) as exc:
        raise ImageFormatError(f"cannot decode PNG: {exc}") from None
    if img.width == 0 or img.height == 0:
        raise EmptyImageError("PNG has zero pixels")
    arr = np.asarray(img)
    if img.mode == "L":
        return arr.astype(np.float64) / 255.0
    if img.mode in ("I;16", "I;16B", "I"):
        return arr.astype(np.float64) / 65535.0
    if img.mode == "RGB":
        rgb = arr.astype(np.float64) / 255.0
        return (_REC601[0] * rgb[..., 0] + _REC601[1] * rgb[..., 1]
                + _REC601[2] * rgb[..., 2])
    raise ImageFormatError(f"unsupported PNG mode {img.mode!r}")


def probe_image(path) -> ImageSource:
    """Identify format, bit depth, and channel count without full decode."""
    with open(path, "rb") as fh:
        data = fh.read()
    kind = _detect(data)
    if kind == "pgm":
        _, _, _, maxval, _ = _parse_pgm_header(data)
        return ImageSource(str(path), "pgm", 8 if maxval < 256 else 16, 1)
    try:
        img = Image.open(io.BytesIO(data))
    except (UnidentifiedImageError, OSError) as exc:
        raise ImageFormatError(f"cannot decode PNG: {exc}") from None
    depth = {"L": 8, "RGB": 8, "I;16": 16, "I;16B": 16, "I": 16}.get(img.mode)
    if depth is None:
        raise ImageFormatError(f"unsupported PNG mode {img.mode!r}")
    return ImageSource(str(path), "png", depth, 3 if img.mode == "RGB" else 1)


def read_image(path) -> np.ndarray:
    """Grayscale field in [0, 1]; format per magic bytes, not extension."""
    with open(path, "rb") as fh:
        data = fh.read()
    kind = _detect(data)
    f = _read_pgm(data) if kind == "pgm" else _read_png(data)
    if f.size == 0:
        raise EmptyImageError("image has zero pixels")
    return as_field(f)


def write_mask(mask: np.ndarray, path) -> None:
    """Binary mask as 8-bit grayscale (255 foreground), PGM or PNG by
    extension; round-trips losslessly through read_image."""
    mask = np.asarray(mask)
    if mask.ndim != 2 or not np.isin(mask, (0, 1)).all():
        raise ValueError("mask must be a 2-D field of 0/1 values")
    data = (mask.astype(np.uint8) * 255)
    if str(path).lower().endswith(".pgm"):
        h, w = data.shape
        with open(path, "wb") as fh:
            fh.write(b"P5\n%d %d\n255\n" % (w, h))
            fh.write(data.tobytes())
    else:
        Image.fromarray(data, mode="L").save(path, format="PNG")


def write_field(u: np.ndarray, path) -> None:
    """u snapshot as 16-bit grayscale PNG, value round(u * 65535)."""
    u = np.asarray(u, dtype=np.float64)
    if u.size and (u.min() < 0.0 or u.max() > 1.0 or not np.isfinite(u).all()):
        raise ValueError("field values must lie in [0, 1]")
    q = np.rint(u * 65535.0).astype(np.uint16)
    Image.fromarray(q).save(path, format="PNG")  # uint16 maps to mode I;16


def write_energy_csv(trace, path) -> None:
    """Two-column CSV 'iteration,energy', one row per recorded value.

    Energies use up to 17 significant digits so parsing the file back
    reproduces the exact doubles.
    """
    if not trace:
        raise ValueError("energy trace is empty")
    with open(path, "w", newline="") as fh:
        fh.write("iteration,energy\n")
        for k, e in enumerate(trace):
            fh.write(f"{k},{e:.17g}\n")
