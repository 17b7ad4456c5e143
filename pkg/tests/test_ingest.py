import numpy as np
import pytest
from PIL import Image

from benford_forensics.errors import (
    BitDepthUnsupported,
    EmptyDataset,
    UnknownLabelDirectory,
    UnreadableFile,
    UnsupportedFormat,
)
from benford_forensics.ingest import GrayImage, load_image, scan_dataset, write_pgm


def test_ascii_pgm_2x2(tmp_path):
    path = tmp_path / "a.pgm"
    path.write_text("P2\n# comment\n2 2\n255\n0 10\n20 255\n")
    img = load_image(path)
    assert (img.width, img.height) == (2, 2)
    assert img.pixels.ravel().tolist() == [0, 10, 20, 255]
    assert img.source_path == str(path)


def test_p2_and_p5_agree(tmp_path, rng):
    px = rng.integers(0, 256, (13, 21), dtype=np.uint8)
    write_pgm(px, tmp_path / "b.pgm", binary=True)
    write_pgm(px, tmp_path / "a.pgm", binary=False)
    a, b = load_image(tmp_path / "a.pgm"), load_image(tmp_path / "b.pgm")
    assert a == b
    assert np.array_equal(a.pixels, px)


def test_pgm_low_maxval_rescaled(tmp_path):
    path = tmp_path / "m.pgm"
    path.write_bytes(b"P5 2 1 15\n" + bytes([0, 15]))
    assert load_image(path).pixels.tolist() == [[0, 255]]


def test_sixteen_bit_pgm_rejected(tmp_path):
    path = tmp_path / "w.pgm"
    path.write_bytes(b"P5\n1 1\n65535\n\x00\x01")
    with pytest.raises(BitDepthUnsupported):
        load_image(path)


@pytest.mark.parametrize("rgb, expected", [((255, 255, 255), 255), ((100, 150, 200), 141), ((0, 0, 0), 0)])
def test_rgb_png_luminance(tmp_path, rgb, expected):
    path = tmp_path / "c.png"
    Image.new("RGB", (3, 2), rgb).save(path)
    img = load_image(path)
    assert img.pixels.shape == (2, 3)
    assert np.all(img.pixels == expected)


def test_gray_png_roundtrip(tmp_path, rng):
    px = rng.integers(0, 256, (9, 11), dtype=np.uint8)
    Image.fromarray(px, mode="L").save(tmp_path / "g.png")
    assert np.array_equal(load_image(tmp_path / "g.png").pixels, px)


def test_sixteen_bit_png_rejected(tmp_path):
    Image.fromarray(np.full((4, 4), 40000, dtype=np.uint16)).save(tmp_path / "d.png")
    with pytest.raises(BitDepthUnsupported):
        load_image(tmp_path / "d.png")


def test_missing_and_unsupported(tmp_path):
    with pytest.raises(UnreadableFile):
        load_image(tmp_path / "nope.pgm")
    (tmp_path / "x.bmp").write_bytes(b"BM" + bytes(60))
    with pytest.raises(UnsupportedFormat):
        load_image(tmp_path / "x.bmp")


def test_gray_image_rejects_out_of_range():
    with pytest.raises(ValueError):
        GrayImage(np.array([[0, 256]]))


def _touch_images(root, layout):
    for name, n in layout.items():
        (root / name).mkdir(parents=True)
        for i in range(n):
            write_pgm(np.zeros((8, 8), np.uint8), root / name / f"f{i:03d}.pgm")


def test_scan_five_source_layout(tmp_path):
    _touch_images(tmp_path, {"DB1": 80, "DB2": 80, "DB3": 80, "DB4": 80, "contactless": 48})
    s = scan_dataset(tmp_path)
    assert len(s) == 368
    assert s.label_names == ("DB1", "DB2", "DB3", "DB4", "contactless")
    assert s.counts() == [80, 80, 80, 80, 48]
    labels = [lbl for _, lbl in s.entries]
    assert labels == sorted(labels)


def test_scan_singleton(tmp_path):
    _touch_images(tmp_path, {"only": 1})
    s = scan_dataset(tmp_path)
    assert len(s) == 1 and s.entries[0][1] == 0


def test_scan_explicit_order(tmp_path):
    _touch_images(tmp_path, {"DB1": 2, "DB2": 2})
    s = scan_dataset(tmp_path, label_order=["DB2", "DB1"])
    assert s.label_names == ("DB2", "DB1")
    assert all(lbl == 0 for p, lbl in s.entries if "/DB2/" in p)


def test_scan_errors(tmp_path):
    with pytest.raises(EmptyDataset):
        scan_dataset(tmp_path)
    _touch_images(tmp_path, {"DB1": 1, "DB2": 1})
    with pytest.raises(UnknownLabelDirectory):
        scan_dataset(tmp_path, label_order=["DB1"])


def test_rescan_is_identical(tmp_path):
    _touch_images(tmp_path, {"b": 3, "a": 2})
    (tmp_path / "a" / "notes.txt").write_text("ignored")
    assert scan_dataset(tmp_path).serialize() == scan_dataset(tmp_path).serialize()
