import pytest

from dualbench.documents import (
    DocumentSet,
    build_lattice_from,
    frame_document,
    lattice_document,
    parse_document,
    parse_documents,
    serialize_document,
    serialize_documents,
)
from dualbench.errors import DocumentError, LatticeError
from dualbench.corpus import corpus_frames, corpus_lattices

CHAIN3 = """\
# a comment line
kind: lattice
name: chain3
elements: 0 m 1
leq: 0<=m m<=1
bottom: 0
top: 1
"""


def test_parse_valid_lattice(chain3):
    doc = parse_document(CHAIN3)
    assert doc.kind == "lattice" and doc.name == "chain3"
    lat = build_lattice_from(doc)
    assert lat.elements == chain3.elements
    assert lat.leq == chain3.leq


def test_cycle_rejected_at_build():
    doc = parse_document(
        "kind: lattice\nname: bad\nelements: 0 1\nleq: 0<=1 1<=0\nbottom: 0\ntop: 1\n"
    )
    with pytest.raises(LatticeError) as err:
        build_lattice_from(doc)
    assert err.value.code == "not-a-poset"


def test_dangling_truth_reference():
    text = (
        "kind: algebra\nname: a\nsignature: lvl\ntruth_lattice: nowhere\n"
        "elements: 0 1\nleq: 0<=1\nbottom: 0\ntop: 1\n"
    )
    docset = DocumentSet(parse_documents(text))
    with pytest.raises(DocumentError) as err:
        docset.algebra("a", budget=4096)
    assert err.value.code == "dangling-reference"


def test_unknown_kind_with_line():
    with pytest.raises(DocumentError) as err:
        parse_documents("kind: banana\nname: x\n")
    assert err.value.code == "unknown-kind"
    assert err.value.line == 1


def test_malformed_line_number():
    with pytest.raises(DocumentError) as err:
        parse_documents("kind: lattice\nname: x\nelements 0 1\n")
    assert err.value.code == "malformed-syntax"
    assert err.value.line == 3


def test_duplicate_field():
    with pytest.raises(DocumentError) as err:
        parse_documents("kind: frame\nname: x\nworlds: a\nworlds: b\n")
    assert err.value.code == "schema-violation"


def test_missing_field():
    with pytest.raises(DocumentError) as err:
        parse_documents("kind: lattice\nname: x\nelements: 0 1\n")
    assert err.value.code == "schema-violation"


def test_unknown_field():
    with pytest.raises(DocumentError) as err:
        parse_documents(CHAIN3 + "flavour: sour\n")
    assert err.value.code == "schema-violation"


def test_space_topology_shape_rules():
    with pytest.raises(DocumentError):
        parse_documents("kind: space\nname: s\npoints: p\ntopo: {p}\ntopo1: {p}\ntopo2: {p}\n")
    with pytest.raises(DocumentError):
        parse_documents("kind: space\nname: s\npoints: p\ntopo1: {p}\n")
    with pytest.raises(DocumentError):
        parse_documents("kind: space\nname: s\npoints: p\n")
    with pytest.raises(DocumentError):
        parse_documents("kind: space\nname: s\npoints: p\ntopo: {p}\nalpha: {0,1}:{p}\n")


def test_algebra_shape_rules():
    with pytest.raises(DocumentError):
        parse_documents(
            "kind: algebra\nname: a\nsignature: lvl\ntruth_lattice: t\n"
        )
    with pytest.raises(DocumentError):
        parse_documents(
            "kind: algebra\nname: a\nsignature: isp_i\ntruth_lattice: t\n"
            "presentation: power\nframe: f\nelements: 0 1\nleq: 0<=1\nbottom: 0\ntop: 1\n"
        )


def test_multi_document_file_and_separator():
    docs = parse_documents(CHAIN3 + "---\nkind: frame\nname: w1\nworlds: w\n")
    assert [d.kind for d in docs] == ["lattice", "frame"]


def test_duplicate_names_rejected():
    with pytest.raises(DocumentError):
        DocumentSet(parse_documents(CHAIN3 + "---\n" + CHAIN3))


def test_round_trip_identity():
    doc = parse_document(CHAIN3)
    assert parse_document(serialize_document(doc)) == doc


def test_round_trip_corpus_lattices():
    for lat in corpus_lattices(5):
        doc = lattice_document(lat)
        rebuilt = build_lattice_from(parse_document(serialize_document(doc)))
        assert rebuilt.elements == lat.elements
        assert rebuilt.leq == lat.leq
        assert rebuilt.meet == lat.meet
        assert rebuilt.join == lat.join


def test_round_trip_corpus_frames():
    from dualbench.documents import build_frame_from

    for frame in corpus_frames(3):
        doc = frame_document(frame)
        rebuilt = build_frame_from(parse_document(serialize_document(doc)))
        assert rebuilt.elements == frame.elements
        assert rebuilt.leq == frame.leq


def test_serialize_documents_joint():
    docs = parse_documents(CHAIN3 + "---\nkind: frame\nname: w1\nworlds: w\n")
    again = parse_documents(serialize_documents(docs))
    assert again == docs


def test_algebra_with_explicit_tables(chain3):
    text = (
        "kind: algebra\nname: weird\nsignature: lvl\ntruth_lattice: chain3\n"
        "elements: 0 m 1\nleq: 0<=m m<=1\nbottom: 0\ntop: 1\n"
        "op.t[1]: 0 m 1\n"
        "---\n" + CHAIN3
    )
    docset = DocumentSet(parse_documents(text))
    algebra = docset.algebra("weird", budget=4096)
    # the table overrides the characteristic default: now the identity
    assert algebra.t_ops[chain3.top] == (0, 1, 2)
    assert algebra.t_ops[0] == (2, 0, 0)


def test_algebra_bad_table_width():
    text = (
        "kind: algebra\nname: a\nsignature: lvl\ntruth_lattice: chain3\n"
        "elements: 0 m 1\nleq: 0<=m m<=1\nbottom: 0\ntop: 1\n"
        "op.t[1]: 0 m\n---\n" + CHAIN3
    )
    docset = DocumentSet(parse_documents(text))
    with pytest.raises(DocumentError):
        docset.algebra("a", budget=4096)


def test_power_generators_validation():
    base = (
        "kind: algebra\nname: p\nsignature: isp_i\ntruth_lattice: chain2\n"
        "presentation: power\nframe: w2\ngenerators: (0,1,1)\n"
        "---\nkind: frame\nname: w2\nworlds: w0 w1\norder: w0<=w1\n"
        "---\nkind: lattice\nname: chain2\nelements: 0 1\nleq: 0<=1\nbottom: 0\ntop: 1\n"
    )
    docset = DocumentSet(parse_documents(base))
    with pytest.raises(DocumentError):
        docset.algebra("p", budget=4096)


def test_space_with_alpha_builds(chain2):
    text = (
        "kind: space\nname: s\npoints: z u\ntopo1: {z} {u}\ntopo2: {z} {u}\n"
        "truth_lattice: chain2\nalpha: {0,1}:{z,u}\n"
        "---\nkind: lattice\nname: chain2\nelements: 0 1\nleq: 0<=1\nbottom: 0\ntop: 1\n"
    )
    docset = DocumentSet(parse_documents(text))
    obj = docset.space("s")
    from dualbench.topology import PbsObject, verify_pbs_object

    assert isinstance(obj, PbsObject)
    checks = verify_pbs_object(obj)
    assert all(r.passed for r in checks.values())


def test_unknown_point_in_alpha():
    text = (
        "kind: space\nname: s\npoints: z\ntopo1: {z}\ntopo2: {z}\n"
        "truth_lattice: chain2\nalpha: {0,1}:{nope}\n"
        "---\nkind: lattice\nname: chain2\nelements: 0 1\nleq: 0<=1\nbottom: 0\ntop: 1\n"
    )
    docset = DocumentSet(parse_documents(text))
    with pytest.raises(DocumentError) as err:
        docset.space("s")
    assert err.value.code == "dangling-reference"
