from pathlib import Path

from fracture_cat import zoo
from fracture_cat.catlang import Document, close_generators, parse, serialize
from fracture_cat.errors import (
    ClosureExceeded,
    DocumentValidationError,
    ParseError,
    UnresolvedReference,
)
from fracture_cat.fincat import same_cat, search_cat_iso, validate

import pytest


GOLDEN = Path(__file__).parent / "golden"


INTERVAL_SRC = """category I {
  objects: 0 1;
  mor a: 0 -> 1;
}
"""


def test_parse_interval_four_lines():
    doc = parse(INTERVAL_SRC)
    C = doc.get("I", "category")
    assert len(C.morphisms) == 3
    assert validate(C).ok
    assert C.identity == {"0": "id_0", "1": "id_1"}


def test_parse_total_table_with_compose():
    src = """
    category Two {
      objects: a b c;
      mor f: a -> b;
      mor g: b -> c;
      mor h: a -> c;
      compose g.f = h;
    }
    """
    C = parse(src).get("Two", "category")
    assert validate(C).ok
    assert C.table[("g", "f")] == "h"


def test_parse_error_position():
    with pytest.raises(ParseError) as err:
        parse("category X {\n  objects a;\n}")
    assert err.value.line == 2


def test_unresolved_reference():
    with pytest.raises(UnresolvedReference):
        parse("functor F: A -> B { }")


def test_validation_error_names_bad_entry():
    src = """
    category Bad {
      objects: a b c;
      mor f: a -> b;
      mor g: b -> c;
      mor k: a -> b;
      compose g.f = k;
    }
    """
    with pytest.raises(DocumentValidationError) as err:
        parse(src)
    assert any("('g', 'f')" in v or "(g, f)" in v for v in err.value.violations)


def test_parse_functor_and_nattrans():
    src = """
    category I { objects: 0 1; mor a: 0 -> 1; }
    functor F: I -> I { obj 0 => 0; obj 1 => 0; mor a => id_0; }
    functor G: I -> I { obj 0 => 1; obj 1 => 1; mor a => id_1; }
    nattrans eta: F => G { at 0 => a; at 1 => a; }
    """
    doc = parse(src)
    eta = doc.get("eta", "nattrans")
    assert eta.components == {"0": "a", "1": "a"}


def test_parse_presheaf_diagram_profunctor_over():
    src = """
    category I { objects: 0 1; mor a: 0 -> 1; }
    presheaf P on I {
      at 0 = {x y};
      at 1 = {z};
      act a: z => x;
    }
    diagram D on I {
      at 0 = {u};
      at 1 = {v};
      act a: u => v;
    }
    profunctor H: I -/-> I {
      at (0, 0) = {e};
      at (0, 1) = {e2};
      at (1, 0) = {};
      at (1, 1) = {e3};
      lact a, 1: e3 => e2;
      ract a, 0: e => e2;
    }
    functor F: I -> I { obj 0 => 0; obj 1 => 1; mor a => a; }
    over M = F;
    """
    doc = parse(src)
    P = doc.get("P", "presheaf")
    assert P.action["a"] == {"z": "x"}
    D = doc.get("D", "diagram")
    assert D.action["a"] == {"u": "v"}
    H = doc.get("H", "profunctor")
    assert H.lact[("a", "1")] == {"e3": "e2"}
    M = doc.get("M", "over")
    assert same_cat(M.total, doc.get("I", "category"))


def test_close_generators_walking_iso():
    src = """
    category I {
      objects: x y;
      mor a: x -> y;
      mor b: y -> x;
      rel a.b = id(y);
      rel b.a = id(x);
      close(max=8);
    }
    """
    C = parse(src).get("I", "category")
    assert validate(C).ok
    assert len(C.morphisms) == 4
    assert search_cat_iso(C, zoo.walking_iso()) is not None


def test_close_generators_free_chain():
    C = close_generators(
        "chain", ["a", "b", "c"],
        [("f", "a", "b"), ("g", "b", "c")], [], 8,
    )
    assert validate(C).ok
    assert len(C.morphisms) == 6
    assert "g_f" in C.morphisms


def test_close_generators_idempotent():
    src = """
    category E {
      objects: x;
      mor e: x -> x;
      rel e.e = e;
      close(max=4);
    }
    """
    C = parse(src).get("E", "category")
    assert len(C.morphisms) == 2


def test_close_generators_free_monoid_exceeds():
    src = """
    category N {
      objects: x;
      mor s: x -> x;
      close(max=8);
    }
    """
    with pytest.raises(ClosureExceeded):
        parse(src)


def test_close_generators_cyclic_group():
    src = """
    category Z3 {
      objects: x;
      mor s: x -> x;
      rel s.s.s = id(x);
      close(max=8);
    }
    """
    C = parse(src).get("Z3", "category")
    assert len(C.morphisms) == 3
    assert search_cat_iso(C, zoo.cyclic_group(3)) is not None


def test_rel_without_close_is_an_error():
    with pytest.raises(ParseError):
        parse("category X { objects: x; mor e: x -> x; rel e.e = e; }")


def test_serialize_roundtrip_structural():
    src = """
    category I { objects: 0 1; mor a: 0 -> 1; }
    functor F: I -> I { obj 0 => 0; obj 1 => 0; mor a => id_0; }
    presheaf P on I { at 0 = {x}; at 1 = {z}; act a: z => x; }
    """
    doc = parse(src)
    text = serialize(doc)
    doc2 = parse(text)
    assert set(doc.entries) == set(doc2.entries)
    assert same_cat(doc.get("I"), doc2.get("I"))
    assert doc.get("F").obj_map == doc2.get("F").obj_map
    assert doc.get("F").mor_map == doc2.get("F").mor_map
    assert doc.get("P").at == doc2.get("P").at
    assert doc.get("P").action == doc2.get("P").action
    # and byte stability on the second pass
    assert serialize(doc2) == text


def test_quoted_identifiers_roundtrip():
    src = 'category C { objects: "(a,b)" plain; mor "m(1)": "(a,b)" -> plain; }'
    doc = parse(src)
    C = doc.get("C")
    assert "(a,b)" in C.objects
    doc2 = parse(serialize(doc))
    assert same_cat(C, doc2.get("C"))


def test_golden_files_byte_stable():
    for path in sorted(GOLDEN.glob("*.fincat")):
        text = path.read_text()
        doc = parse(text)
        assert serialize(doc) + "\n" == text, path.name
