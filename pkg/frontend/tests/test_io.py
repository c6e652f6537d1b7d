import io

import pytest

from gridrender.io import GridFormatError, parse_grid

GOOD = """x,y,logabs
-1,-0.5,0.25
0,-0.5,-3.0999999999999996
1,-0.5,16
-1,0.5,-16
0,0.5,4.25e-05
1,0.5,0.125
"""


def write(tmp_path, text, name="g.csv"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


class TestParse:
    def test_shape_and_values(self, tmp_path):
        g = parse_grid(write(tmp_path, GOOD))
        assert g.nx == 3 and g.ny == 2
        assert list(g.xs) == [-1.0, 0.0, 1.0]
        assert list(g.ys) == [-0.5, 0.5]
        assert g.values[0, 1] == pytest.approx(-3.0999999999999996)
        assert g.values[1, 0] == -16

    def test_roundtrip_is_byte_exact(self, tmp_path):
        path = write(tmp_path, GOOD)
        g = parse_grid(path)
        out = io.StringIO()
        g.write(out)
        assert out.getvalue() == GOOD

    def test_row_order_does_not_matter(self, tmp_path):
        lines = GOOD.splitlines()
        shuffled = "\n".join([lines[0]] + lines[:0:-1]) + "\n"
        g = parse_grid(write(tmp_path, shuffled))
        assert g.values[0, 1] == pytest.approx(-3.0999999999999996)

    def test_bad_header(self, tmp_path):
        with pytest.raises(GridFormatError, match="first line"):
            parse_grid(write(tmp_path, "a,b,c\n1,2,3\n"))

    def test_wrong_field_count(self, tmp_path):
        with pytest.raises(GridFormatError, match="3 fields"):
            parse_grid(write(tmp_path, "x,y,logabs\n1,2\n"))

    def test_non_numeric(self, tmp_path):
        with pytest.raises(GridFormatError, match="non-numeric"):
            parse_grid(write(tmp_path, "x,y,logabs\n1,2,zebra\n"))

    def test_incomplete_lattice(self, tmp_path):
        text = "x,y,logabs\n0,0,1\n1,0,1\n0,1,1\n"
        with pytest.raises(GridFormatError, match="lattice"):
            parse_grid(write(tmp_path, text))

    def test_duplicate_node(self, tmp_path):
        text = "x,y,logabs\n0,0,1\n0,0,2\n1,0,1\n1,1,1\n"
        with pytest.raises(GridFormatError):
            parse_grid(write(tmp_path, text))

    def test_empty_body(self, tmp_path):
        with pytest.raises(GridFormatError, match="no data"):
            parse_grid(write(tmp_path, "x,y,logabs\n"))
