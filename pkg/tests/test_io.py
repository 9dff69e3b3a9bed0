import json

import pytest

from dgquot import io
from dgquot.category import ValidationError, ext_table, validate
from dgquot.library import build_example_i2, k_resolution
from dgquot.linalg import GF, QQ
from dgquot.randgen import random_table_category

MINIMAL = """dgcat 1
field Q
mode table
objects P
hom P P: id 0
unit P = id
"""


def bundled_i2():
    from importlib import resources
    return (resources.files("dgquot") / "data" / "i2.dgcat").read_text(encoding="utf-8")


def test_minimal_file_is_the_ground_field():
    C = io.loads(MINIMAL)
    assert C.objects == ("P",)
    assert validate(C).ok
    assert ext_table(C, "P", "P", (-1, 1)).as_dict() == {-1: 0, 0: 1, 1: 0}


def test_bundled_i2_equals_library_construction():
    C = io.loads(bundled_i2())
    A, _, _ = build_example_i2()
    assert C.structurally_equal(A)


@pytest.mark.parametrize("seed", range(20))
def test_render_parse_fixpoint(seed):
    F = [QQ, GF(5), GF(2)][seed % 3]
    C = random_table_category(seed, F)
    text = io.render(C)
    C2 = io.loads(text)
    assert io.render(C2) == text
    assert C2.structurally_equal(io.loads(io.render(C2)))
    assert io.dumps(io.loads(io.dumps(C, "json")), "json") == io.dumps(C, "json")


def test_free_roundtrip():
    K = k_resolution()
    text = io.render(K)
    K2 = io.loads(text)
    assert io.render(K2) == text
    assert K2.weights == K.weights
    doc = json.loads(io.dumps(K, "json"))
    assert doc["format_version"] == 1
    assert io.render(io.from_json(doc)) == text


def test_exact_coefficients_survive():
    text = MINIMAL.replace("objects P", "objects P").replace("hom P P: id 0", "hom P P: id 0, x 1, y 2") + \
        "d x = 3/7*y\n"
    C = io.loads(text, check=False)
    assert "3/7" in io.render(C)


@pytest.mark.parametrize("bad,line,col", [
    ("dgcat 1\nfield Q\nmode table\nobjects P\nhom P P: id zero\nunit P = id\n", 5, 13),
    ("dgcat 1\nfield Q\nmode table\nobjects P\nhom P Q: id 0\n", 5, 5),
    ("dgcat 2\n", 1, 1),
    ("dgcat 1\nfield Q\nmode table\nobjects P\nhom P P: id 0\nunit P = id\nd id = 2 * *\n", 7, None),
])
def test_syntax_errors_carry_positions(bad, line, col):
    with pytest.raises(io.DGCatSyntaxError) as e:
        io.loads(bad)
    assert e.value.line == line
    if col is not None:
        assert e.value.column == col
    assert f"line {line}" in str(e.value)


def test_invalid_category_is_reported():
    text = MINIMAL.replace("hom P P: id 0", "hom P P: id 0, x -1") + "d id = x\n"
    with pytest.raises(ValidationError):
        io.loads(text)
    C = io.loads(text, check=False)
    assert not validate(C).ok
