"""Loading grayscale rasters and enumerating class-per-directory datasets."""

import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import (
    BitDepthUnsupported,
    EmptyDataset,
    UnknownLabelDirectory,
    UnreadableFile,
    UnsupportedFormat,
)

SUPPORTED_SUFFIXES = (".pgm", ".png")

# Rec.601 luma weights
_LUMA = np.array([0.299, 0.587, 0.114])


@dataclass(frozen=True, eq=False)
class GrayImage:
    """8-bit single channel raster; ``pixels`` has shape (height, width)."""

    pixels: np.ndarray
    source_path: str = ""

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.ndim != 2 or px.size == 0:
            raise ValueError(f"expected a non-empty 2-D raster, got shape {px.shape}")
        if px.dtype != np.uint8:
            if np.any(px < 0) or np.any(px > 255) or np.any(px != np.round(px)):
                raise ValueError("pixel values must be integers in [0, 255]")
            px = px.astype(np.uint8)
        object.__setattr__(self, "pixels", px)

    @property
    def width(self):
        return self.pixels.shape[1]

    @property
    def height(self):
        return self.pixels.shape[0]

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)

    __hash__ = None


def _read_pgm(data, path):
    # header tokens: magic, width, height, maxval; '#' starts a comment
    tokens = []
    pos = 0
    n = len(data)
    while len(tokens) < 4:
        while pos < n and data[pos:pos + 1].isspace():
            pos += 1
        if pos < n and data[pos:pos + 1] == b"#":
            while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise UnsupportedFormat(f"{path}: truncated PGM header")
        tokens.append(data[start:pos])
    magic = tokens[0]
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError:
        raise UnsupportedFormat(f"{path}: malformed PGM header") from None
    if width <= 0 or height <= 0 or maxval <= 0:
        raise UnsupportedFormat(f"{path}: invalid PGM dimensions")
    if maxval > 255:
        raise BitDepthUnsupported(f"{path}: PGM maxval {maxval} exceeds 8 bits")

    count = width * height
    if magic == b"P5":
        body = data[pos + 1:pos + 1 + count]
        if len(body) != count:
            raise UnsupportedFormat(f"{path}: expected {count} bytes of raster, got {len(body)}")
        px = np.frombuffer(body, dtype=np.uint8)
    else:
        lines = [ln.split(b"#", 1)[0] for ln in data[pos:].splitlines()]
        try:
            values = [int(v) for v in b" ".join(lines).split()]
        except ValueError:
            raise UnsupportedFormat(f"{path}: non-integer sample in P2 raster") from None
        if len(values) < count:
            raise UnsupportedFormat(f"{path}: expected {count} samples, got {len(values)}")
        px = np.array(values[:count], dtype=np.int64)
        if px.min() < 0 or px.max() > maxval:
            raise UnsupportedFormat(f"{path}: sample outside [0, {maxval}]")
    px = px.reshape(height, width)
    if maxval != 255:
        # rescale to the full 8-bit range
        px = np.floor(px.astype(np.float64) * 255.0 / maxval + 0.5)
    return px.astype(np.uint8)


def rgb_to_luminance(rgb):
    """Rec.601 luma, rounded half up, as uint8."""
    rgb = np.asarray(rgb, dtype=np.float64)
    return np.floor(rgb[..., :3] @ _LUMA + 0.5).clip(0, 255).astype(np.uint8)


def _read_png(path):
    try:
        with Image.open(path) as im:
            im.load()
            mode = im.mode
            if mode in ("I;16", "I;16B", "I;16L", "I", "F"):
                raise BitDepthUnsupported(f"{path}: {mode} PNG is not 8-bit")
            if mode == "P":
                im = im.convert("RGBA")
                mode = "RGBA"
            elif mode == "1":
                im = im.convert("L")
                mode = "L"
            arr = np.asarray(im)
    except UnidentifiedImageError:
        raise UnsupportedFormat(f"{path}: not a readable PNG") from None
    if mode in ("L", "LA"):
        return arr if arr.ndim == 2 else arr[..., 0]
    if mode in ("RGB", "RGBA"):
        return rgb_to_luminance(arr)
    raise UnsupportedFormat(f"{path}: unsupported PNG mode {mode}")


def load_image(path):
    """Load a PGM (P2/P5) or 8-bit PNG as a :class:`GrayImage`.

    RGB(A) inputs are reduced to luminance with the Rec.601 weights; alpha
    is ignored.
    """
    path = os.fspath(path)
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise UnreadableFile(f"{path}: {exc.strerror or exc}") from exc

    if data[:2] in (b"P2", b"P5"):
        px = _read_pgm(data, path)
    elif data[:8] == b"\x89PNG\r\n\x1a\n":
        px = _read_png(path)
    else:
        raise UnsupportedFormat(f"{path}: not a PGM (P2/P5) or PNG file")
    return GrayImage(px, source_path=path)


def write_pgm(image, path, binary=True):
    """Write ``image`` as P5 (default) or P2."""
    px = image.pixels if isinstance(image, GrayImage) else np.asarray(image, dtype=np.uint8)
    h, w = px.shape
    with open(path, "wb") as fh:
        if binary:
            fh.write(b"P5\n%d %d\n255\n" % (w, h))
            fh.write(np.ascontiguousarray(px, dtype=np.uint8).tobytes())
        else:
            fh.write(b"P2\n%d %d\n255\n" % (w, h))
            for row in px:
                fh.write(" ".join(str(int(v)) for v in row).encode() + b"\n")


@dataclass(frozen=True)
class LabeledImageSet:
    """Image paths paired with integer class labels 0..C-1."""

    entries: tuple
    label_names: tuple = field(default_factory=tuple)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def counts(self):
        out = [0] * len(self.label_names)
        for _, label in self.entries:
            out[label] += 1
        return out

    def load(self, index):
        path, label = self.entries[index]
        return load_image(path), label

    def serialize(self):
        """Stable text form, one ``label<TAB>path`` line per entry."""
        head = "\t".join(self.label_names)
        body = "".join(f"{label}\t{path}\n" for path, label in self.entries)
        return f"{head}\n{body}"


def _image_files(directory):
    return sorted(
        p.name for p in directory.iterdir()
        if p.is_file() and p.suffix.lower() in SUPPORTED_SUFFIXES
    )


def scan_dataset(root, label_order=None):
    """Enumerate ``root/<class>/*.{pgm,png}`` into a :class:`LabeledImageSet`.

    Labels follow ``label_order`` when given, otherwise lexicographic
    subdirectory names. Entries are sorted by (label, filename).
    """
    root = Path(root)
    if not root.is_dir():
        raise EmptyDataset(f"{root}: not a directory")
    subdirs = sorted(p.name for p in root.iterdir() if p.is_dir())

    if label_order is not None:
        label_order = list(label_order)
        unknown = [d for d in subdirs if d not in label_order and _image_files(root / d)]
        if unknown:
            raise UnknownLabelDirectory(
                f"{root}: directories not in label_order: {', '.join(unknown)}")
        missing = [d for d in label_order if d not in subdirs]
        if missing:
            raise EmptyDataset(f"{root}: label directories missing: {', '.join(missing)}")
        names = label_order
    else:
        names = [d for d in subdirs if _image_files(root / d)]

    entries = []
    for label, name in enumerate(names):
        files = _image_files(root / name)
        if not files and label_order is not None:
            raise EmptyDataset(f"{root / name}: no supported image files")
        entries.extend((str(root / name / f), label) for f in files)
    if not entries:
        raise EmptyDataset(f"{root}: no class directory holds a supported image")
    return LabeledImageSet(tuple(entries), tuple(names))
