import json

import numpy as np
import pytest

from twophase import cli, imgio
from twophase.cli import make_synthetic, parse_args, run, synthetic_mask


class TestParseArgs:
    def test_defaults(self):
        cfg = parse_args(["segment", "in.png", "-o", "mask.png"])
        assert cfg.command == "segment"
        assert cfg.input_path == "in.png"
        assert cfg.output_mask_path == "mask.png"
        p = cfg.solver
        assert (p.lam, p.gamma, p.tau) == (1.0, 0.1, 0.01)
        assert (p.avg_window, p.tol) == (10, 1e-4)
        assert (p.weight.sigma, p.weight.rho) == (2.0, 0.1)
        assert p.threshold == 0.5 and p.max_iters == 10000
        assert not p.weight.uniform
        assert cfg.summary_format == "text"

    def test_overrides(self):
        cfg = parse_args(["segment", "in.png", "-o", "m.png",
                          "--lambda", "2.0", "--snapshot-every", "20",
                          "--snapshot-dir", "snaps/", "--uniform-weight",
                          "--summary", "json"])
        assert cfg.solver.lam == 2.0
        assert cfg.snapshot_every == 20 and cfg.snapshot_dir == "snaps/"
        assert cfg.solver.weight.uniform
        assert cfg.summary_format == "json"

    def test_negative_lambda_rejected(self, capsys):
        with pytest.raises(SystemExit) as err:
            parse_args(["segment", "in.png", "-o", "m.png", "--lambda", "-1"])
        assert err.value.code == 2
        assert "--lambda" in capsys.readouterr().err

    def test_snapshot_every_requires_dir(self):
        with pytest.raises(SystemExit) as err:
            parse_args(["segment", "in.png", "-o", "m.png",
                        "--snapshot-every", "5"])
        assert err.value.code == 2

    def test_input_or_synthetic_required(self):
        with pytest.raises(SystemExit) as err:
            parse_args(["segment", "-o", "m.png"])
        assert err.value.code == 2
        with pytest.raises(SystemExit) as err:
            parse_args(["segment", "in.png", "--synthetic", "disk", "-o", "m.png"])
        assert err.value.code == 2

    def test_unknown_flag_rejected(self):
        with pytest.raises(SystemExit) as err:
            parse_args(["segment", "in.png", "-o", "m.png", "--bogus"])
        assert err.value.code == 2


class TestMakeSynthetic:
    def test_noise_free_has_two_values(self):
        f = make_synthetic("disk", 32, 0.0, 0)
        assert set(np.unique(f)) == {0.1, 0.9}

    def test_seed_determinism(self):
        a = make_synthetic("bars", 64, 0.1, 5)
        b = make_synthetic("bars", 64, 0.1, 5)
        assert np.array_equal(a, b)
        c = make_synthetic("bars", 64, 0.1, 6)
        assert not np.array_equal(a, c)

    def test_disk_area_matches_inequality_count(self):
        # oracle: count pixels satisfying the disk inequality directly
        size = 128
        c = (size - 1) / 2.0
        count = sum(1 for j in range(size) for i in range(size)
                    if (i - c) ** 2 + (j - c) ** 2 <= (size / 4.0) ** 2)
        gt = synthetic_mask("disk", size)
        assert int(gt.sum()) == count
        assert abs(count - np.pi * 32 ** 2) <= 40

    def test_values_stay_in_unit_range(self):
        f = make_synthetic("disk", 64, 0.5, 1)
        assert f.min() >= 0.0 and f.max() <= 1.0

    def test_rejects_bad_args(self):
        with pytest.raises(ValueError):
            make_synthetic("disk", 8)
        with pytest.raises(ValueError):
            make_synthetic("blob", 32)
        with pytest.raises(ValueError):
            make_synthetic("disk", 32, -0.1)


class TestRun:
    def test_otsu_on_binary_image(self, tmp_path, capsys):
        mask = synthetic_mask("disk", 32)
        src = tmp_path / "in.pgm"
        imgio.write_mask(mask, src)
        out = tmp_path / "out.pgm"
        code = cli.main(["otsu", str(src), "-o", str(out), "--summary", "json"])
        assert code == 0
        assert np.array_equal(imgio.read_image(out), mask.astype(float))
        info = json.loads(capsys.readouterr().out)
        assert info["command"] == "otsu"
        assert 0 < info["threshold"] < 1

    def test_segment_synthetic_disk(self, tmp_path, capsys):
        out = tmp_path / "mask.png"
        csv = tmp_path / "e.csv"
        code = cli.main(["segment", "--synthetic", "disk", "--seed", "7",
                         "-o", str(out), "--energy-csv", str(csv),
                         "--summary", "json"])
        assert code == 0
        info = json.loads(capsys.readouterr().out)
        assert info["stop_reason"] in ("energy_rise", "tolerance_met")
        assert out.exists()
        rows = csv.read_text().splitlines()
        assert len(rows) - 1 == info["iterations"] + 1  # header + E^0..E^k

    def test_snapshots_written(self, tmp_path):
        out = tmp_path / "mask.png"
        snaps = tmp_path / "snaps"
        code = cli.main(["segment", "--synthetic", "disk", "--size", "32",
                         "--seed", "1", "-o", str(out),
                         "--snapshot-every", "5", "--snapshot-dir", str(snaps)])
        assert code == 0
        assert (snaps / "iter_0.png").exists()
        assert (snaps / "iter_5.png").exists()
        assert (snaps / "iter_10.png").exists()

    def test_u_field_written(self, tmp_path):
        out = tmp_path / "mask.png"
        ufield = tmp_path / "u.png"
        code = cli.main(["segment", "--synthetic", "bars", "--size", "32",
                         "-o", str(out), "--u-field", str(ufield)])
        assert code == 0
        u = imgio.read_image(ufield)
        assert u.shape == (32, 32) and u.min() >= 0.0 and u.max() <= 1.0

    def test_byte_identical_reruns(self, tmp_path, capsys):
        args = ["segment", "--synthetic", "disk", "--size", "64",
                "--noise", "0.1", "--seed", "9"]
        blobs = []
        for run_dir in ("a", "b"):
            d = tmp_path / run_dir
            d.mkdir()
            code = cli.main(args + ["-o", str(d / "m.png"),
                                    "--energy-csv", str(d / "e.csv")])
            assert code == 0
            blobs.append(((d / "m.png").read_bytes(), (d / "e.csv").read_bytes()))
        assert blobs[0] == blobs[1]

    def test_unreadable_input_exits_one(self, tmp_path, capsys):
        code = cli.main(["segment", str(tmp_path / "missing.png"),
                         "-o", str(tmp_path / "m.png")])
        assert code == 1
        assert "error" in capsys.readouterr().err

    def test_text_summary_lists_quantities(self, tmp_path, capsys):
        out = tmp_path / "mask.png"
        code = cli.main(["segment", "--synthetic", "bars", "--size", "32",
                         "-o", str(out)])
        assert code == 0
        text = capsys.readouterr().out
        for key in ("iterations:", "stop_reason:", "c1:", "c2:",
                    "final_energy:", "elapsed_seconds:"):
            assert key in text
