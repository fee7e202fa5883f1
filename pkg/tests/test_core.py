import bz2

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paritybench.core import (
    InvalidGameError,
    ParityGame,
    ParseError,
    Player,
    load_game,
    parse_pgsolver,
    save_game,
    validate,
    write_pgsolver,
)


def test_parse_two_vertex_game():
    g = parse_pgsolver("parity 1;\n0 0 0 1;\n1 1 1 0;\n")
    assert g.num_vertices == 2
    assert g.priorities == (0, 1)
    assert g.owner(0) is Player.EVEN and g.owner(1) is Player.ODD
    assert g.successors == ((1,), (0,))


def test_parse_without_header_and_label():
    g = parse_pgsolver('0 3 0 0 "self";\n')
    assert g.num_vertices == 1
    assert g.priorities == (3,)
    assert g.successors == ((0,),)
    assert g.labels == ("self",)


def test_empty_successor_list_rejected():
    with pytest.raises(ParseError, match="empty successor list"):
        parse_pgsolver("0 0 0 ;\n")


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("0 0 0 5;\n", "out of range"),
        ("parity 2;\n0 0 0 1;\n1 0 0 0;\n", "vertex 2 is missing"),
        ("0 0 0 0;\n0 1 0 0;\n", "duplicate definition"),
        ("0 0 2 0;\n", "owner must be 0 or 1"),
        ("0 -1 0 0;\n", "negative priority"),
        ("-1 0 0 0;\n", "negative vertex id"),
        ("0 0 0 0\n", "missing ';'"),
        ("0 x 0 0;\n", "expected integer priority"),
        ("0 0 0 0,,1;\n1 0 0 0;\n", "empty successor entry"),
        ("0 0 0 0 \"a\" 1;\n", "label must be the last field"),
        ('0 0 0 0 "open;\n', "unterminated label"),
        ("parity 0;\n0 0 0 0;\n1 0 0 0;\n", "exceeds header bound"),
        ("0 0 0 0;\nparity 0;\n", "must come first"),
        ("bogus 1;\n", "unknown directive"),
        ("", "no vertices"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError) as info:
        parse_pgsolver(text)
    assert fragment in str(info.value)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as info:
        parse_pgsolver("parity 1;\n0 0 0 1;\n1 1 1 7;\n")
    assert (info.value.line, info.value.column) == (3, 1)


def test_duplicate_successors_collapsed_with_diagnostic():
    diags = []
    g = parse_pgsolver("0 0 0 1,1,0;\n1 0 1 0;\n", diagnostics=diags)
    assert set(g.successors[0]) == {0, 1}
    assert len(g.successors[0]) == 2
    assert [d.code for d in diags] == ["DuplicateSuccessor"]
    assert diags[0].vertex == 0 and diags[0].target == 1


def test_lenient_mode_renumbers_sparse_ids():
    g = parse_pgsolver("parity 9;\n3 1 0 9;\n9 2 1 3;\n", strict=False)
    assert g.num_vertices == 2
    assert g.priorities == (1, 2)
    assert g.successors == ((1,), (0,))
    with pytest.raises(ParseError):
        parse_pgsolver("parity 9;\n3 1 0 9;\n9 2 1 3;\n")


def test_start_directive_sets_initial_vertex():
    g = parse_pgsolver("parity 1;\nstart 1;\n0 0 0 1;\n1 1 1 0;\n")
    assert g.initial_vertex == 1
    assert parse_pgsolver(write_pgsolver(g)).initial_vertex == 1


def test_whitespace_and_final_newline_insensitive():
    a = parse_pgsolver("parity 1;\n0 0 0 1;\n1 1 1 0;\n")
    b = parse_pgsolver("parity 1;  \n0 0 0 1;\t\n1 1 1 0;")
    c = parse_pgsolver("parity 1;\r\n0 0 0 1 ;\r\n1 1 1 0;\r\n\r\n   ")
    d = parse_pgsolver("parity 1;\n0 0 0 1, 0;\n1 1 1 0;\n")
    assert a == b == c
    assert set(d.successors[0]) == {0, 1}


def test_label_with_semicolon_and_escapes():
    g = parse_pgsolver('0 1 1 0 "a;b \\"q\\"";\n')
    assert g.labels == ('a;b "q"',)
    assert parse_pgsolver(write_pgsolver(g)) == g


def test_bzip2_input_detected(tmp_path):
    text = "parity 1;\n0 0 0 1;\n1 1 1 0;\n"
    assert parse_pgsolver(bz2.compress(text.encode())) == parse_pgsolver(text)
    g = parse_pgsolver(text)
    save_game(g, tmp_path / "g.gm.bz2", compress=True)
    assert (tmp_path / "g.gm.bz2").read_bytes()[:3] == b"BZh"
    assert load_game(tmp_path / "g.gm.bz2") == g


def test_write_canonical_form():
    g = ParityGame([0], [3], [[0]])
    assert write_pgsolver(g) == "parity 0;\n0 3 0 0;\n"


def test_write_sorts_successors():
    g = ParityGame([0, 1, 0], [0, 1, 2], [[2, 1], [0], [0]])
    assert write_pgsolver(g).splitlines()[1] == "0 0 0 1,2;"


def test_round_trip_two_vertex_game():
    g = parse_pgsolver("parity 1;\n0 0 0 1;\n1 1 1 0;\n")
    assert parse_pgsolver(write_pgsolver(g)) == g


def test_validate_reports_each_problem():
    assert validate(ParityGame([0, 1], [1, 2], [[1], [0]])) == []
    diags = validate(ParityGame([0, 1], [0, 0], [[1, 99], [0]]))
    assert [(d.code, d.vertex, d.target) for d in diags] == [("DanglingEdge", 0, 99)]
    diags = validate(ParityGame([0, 1], [0, 0], [[], [0]]))
    assert [(d.code, d.vertex) for d in diags] == [("NonTotal", 0)]
    diags = validate(ParityGame([0], [-1], [[0, 0]]))
    assert {d.code for d in diags} == {"NegativePriority", "DuplicateSuccessor"}
    assert validate(ParityGame([3], [0], [[0]]))[0].code == "BadOwner"


def test_check_raises_with_diagnostics():
    with pytest.raises(InvalidGameError) as info:
        ParityGame([0], [0], [[]]).check()
    assert info.value.diagnostics[0].code == "NonTotal"


@st.composite
def games(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    owners = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    prios = draw(st.lists(st.integers(0, 20), min_size=n, max_size=n))
    succs = [draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=4, unique=True)) for _ in range(n)]
    label_text = st.text(alphabet=st.characters(blacklist_categories=("Cs",)), max_size=8)
    labels = draw(st.lists(st.none() | label_text, min_size=n, max_size=n))
    return ParityGame(owners, prios, succs, labels)


@given(games())
@settings(max_examples=200, deadline=None)
def test_round_trip_property(g):
    back = parse_pgsolver(write_pgsolver(g))
    assert back == g
    assert write_pgsolver(back) == write_pgsolver(g)
