import subprocess
import sys

import numpy as np
import pytest

from gridrender.io import parse_grid
from gridrender.plot import render


def make_grid(tmp_path, n=9, name="g.csv"):
    xs = np.linspace(-2, 2, n)
    lines = ["x,y,logabs"]
    for y in xs:
        for x in xs:
            v = np.log10(abs(complex(x, y) - 1) + 1e-12)
            lines.append(f"{x:.17g},{y:.17g},{v:.17g}")
    p = tmp_path / name
    p.write_text("\n".join(lines) + "\n")
    return str(p)


class TestRender:
    def test_two_by_two(self, tmp_path):
        p = tmp_path / "tiny.csv"
        p.write_text("x,y,logabs\n0,0,1\n1,0,2\n0,1,3\n1,1,4\n")
        out = tmp_path / "tiny.png"
        render(parse_grid(str(p)), str(out))
        assert out.stat().st_size > 1000

    def test_constant_grid(self, tmp_path):
        p = tmp_path / "flat.csv"
        p.write_text("x,y,logabs\n0,0,2\n1,0,2\n0,1,2\n1,1,2\n")
        out = tmp_path / "flat.png"
        render(parse_grid(str(p)), str(out))
        assert out.exists()

    def test_highlight_level(self, tmp_path):
        g = parse_grid(make_grid(tmp_path))
        out = tmp_path / "lvl.png"
        render(g, str(out), highlight_level=0.0)
        assert out.stat().st_size > 1000

    def test_highlight_outside_range_rejected(self, tmp_path):
        g = parse_grid(make_grid(tmp_path))
        with pytest.raises(ValueError, match="outside"):
            render(g, str(tmp_path / "x.png"), highlight_level=99.0)

    def test_vector_output(self, tmp_path):
        g = parse_grid(make_grid(tmp_path))
        out = tmp_path / "v.svg"
        render(g, str(out))
        assert b"<svg" in out.read_bytes()[:200]


class TestCli:
    def run(self, *args):
        return subprocess.run([sys.executable, "-m", "gridrender.cli", *args],
                              capture_output=True, text=True, timeout=120)

    def test_ok(self, tmp_path):
        src = make_grid(tmp_path)
        out = tmp_path / "o.png"
        res = self.run(src, str(out))
        assert res.returncode == 0, res.stderr
        assert out.exists()

    def test_malformed_grid_exit_1(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("nope\n")
        res = self.run(str(p), str(tmp_path / "o.png"))
        assert res.returncode == 1
        assert "error:" in res.stderr

    def test_missing_args_exit_2(self):
        res = self.run()
        assert res.returncode == 2

    def test_level_flag(self, tmp_path):
        src = make_grid(tmp_path)
        out = tmp_path / "o.png"
        res = self.run(src, str(out), "--level", "0.0")
        assert res.returncode == 0, res.stderr
