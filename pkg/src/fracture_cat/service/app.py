"""The computation service: theorem verification runs and ad-hoc categorical
computations on parsed documents, exposed over HTTP. The CLI talks to this
app in-process by default; `fracture-cat serve` runs it standalone.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..catlang import Document, parse, serialize
from ..collage import (
    collage,
    extract_profunctor,
    hom_set_over_interval,
    internal_hom_over_interval,
)
from ..corpus import CorpusSpec
from ..errors import (
    CapExceeded,
    DocumentValidationError,
    FractureCatError,
    ParseError,
    ShapeMismatch,
    UnknownTheorem,
    UnresolvedReference,
)
from ..fibrations import classify
from ..fincat import CatOverBase, opposite, product, same_cat
from ..fracture import fracture_check
from ..presheaf import left_kan
from ..theorems import THEOREMS, run_theorem
from ..twisted import brute_nat_set, coend_of, end_of, hom_functor, nat_set_via_end
from .models import (
    ErrorDetail,
    HealthResponse,
    OpRequest,
    OpResponse,
    TheoremListResponse,
    VerifyRequest,
    VerifyResponse,
)

app = FastAPI(title="fracture-cat", version=__version__)


def _bad_request(kind: str, message: str, line=None, col=None, status=400):
    raise HTTPException(
        status_code=status,
        detail=ErrorDetail(kind=kind, message=message, line=line, col=col).model_dump(),
    )


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(version=__version__)


@app.get("/theorems", response_model=TheoremListResponse)
def theorems() -> TheoremListResponse:
    return TheoremListResponse(theorems=sorted(THEOREMS))


@app.post("/verify/{theorem}", response_model=VerifyResponse)
def verify(theorem: str, req: VerifyRequest) -> VerifyResponse:
    spec = CorpusSpec(
        seed=req.seed,
        max_objects=req.max_objects,
        max_morphisms=req.max_morphisms,
        instance_count=req.count,
        kind=req.kind,
    )
    try:
        report = run_theorem(theorem, spec, mutate=req.mutate)
    except UnknownTheorem:
        _bad_request("unknown-theorem", f"unknown theorem {theorem!r}", status=404)
    return VerifyResponse(**report.to_json_dict())


def _parse_document(req: OpRequest) -> Document:
    try:
        return parse(req.document)
    except ParseError as exc:
        _bad_request("parse", str(exc), exc.line, exc.col)
    except UnresolvedReference as exc:
        _bad_request("unresolved", str(exc), exc.line, exc.col)
    except DocumentValidationError as exc:
        _bad_request("validation", str(exc))


def _arg(req: OpRequest, key: str) -> str:
    if key not in req.args:
        _bad_request("usage", f"missing argument {key!r}")
    return req.args[key]


def _get(doc: Document, name: str, kind: str):
    try:
        return doc.get(name, kind)
    except UnresolvedReference as exc:
        _bad_request("unresolved", str(exc))


@app.post("/ops/{op}", response_model=OpResponse)
def run_op(op: str, req: OpRequest) -> OpResponse:
    handler = _OPS.get(op)
    if handler is None:
        _bad_request("usage", f"unknown operation {op!r}", status=404)
    doc = _parse_document(req)
    try:
        result = handler(doc, req)
    except CapExceeded as exc:
        _bad_request("cap-exceeded", str(exc), status=409)
    except ShapeMismatch as exc:
        _bad_request("usage", str(exc))
    except FractureCatError as exc:
        _bad_request("error", str(exc))
    return OpResponse(op=op, result=result)


def _op_end(doc: Document, req: OpRequest) -> dict:
    C = _get(doc, _arg(req, "cat"), "category")
    if "diagram" in req.args:
        T = _get(doc, req.args["diagram"], "diagram")
        if not same_cat(T.shape, product(opposite(C), C)):
            _bad_request("usage", "diagram shape must be op(cat) x cat")
    else:
        T = hom_functor(C)
    res = end_of(C, T)
    return {"cardinality": len(res.apex), "elements": list(res.apex.elements)}


def _op_coend(doc: Document, req: OpRequest) -> dict:
    C = _get(doc, _arg(req, "cat"), "category")
    if "diagram" in req.args:
        T = _get(doc, req.args["diagram"], "diagram")
        if not same_cat(T.shape, product(opposite(C), C)):
            _bad_request("usage", "diagram shape must be op(cat) x cat")
    else:
        T = hom_functor(C)
    res = coend_of(C, T)
    return {"cardinality": len(res.coapex), "elements": list(res.coapex.elements)}


def _op_nat(doc: Document, req: OpRequest) -> dict:
    F = _get(doc, _arg(req, "f"), "functor")
    G = _get(doc, _arg(req, "g"), "functor")
    if not (same_cat(F.dom, G.dom) and same_cat(F.cod, G.cod)):
        _bad_request("usage", "functors must be parallel")
    via_end = nat_set_via_end(F, G)
    brute = brute_nat_set(F, G)
    return {
        "cardinality": len(via_end.elements),
        "oracle_cardinality": len(brute.elements),
        "agree": via_end.elements.elements == brute.elements.elements,
        "families": {el: fam for el, fam in sorted(via_end.families.items())},
    }


def _op_kan(doc: Document, req: OpRequest) -> dict:
    F = _get(doc, _arg(req, "functor"), "functor")
    P = _get(doc, _arg(req, "presheaf"), "presheaf")
    if not same_cat(F.dom, P.base):
        _bad_request("usage", "presheaf must live over the functor's domain")
    L = left_kan(F, P)
    out = Document()
    cod_name = _arg(req, "cod") if "cod" in req.args else "codomain"
    out.entries[cod_name] = ("category", F.cod)
    out.entries["extension"] = ("presheaf", L)
    return {
        "values": {x: list(L.at[x].elements) for x in F.cod.objects},
        "document": serialize(out),
    }


def _op_collage(doc: Document, req: OpRequest) -> dict:
    H = _get(doc, _arg(req, "profunctor"), "profunctor")
    res = collage(H)
    out = Document()
    out.entries["total"] = ("category", res.over.total)
    out.entries["base"] = ("category", res.over.base)
    out.entries["proj"] = ("functor", res.over.proj)
    out.entries["M"] = ("over", res.over)
    return {
        "objects": len(res.over.total.objects),
        "morphisms": len(res.over.total.morphisms),
        "document": serialize(out),
    }


def _op_extract(doc: Document, req: OpRequest) -> dict:
    M = _get(doc, _arg(req, "over"), "over")
    H = extract_profunctor(M)
    out = Document()
    out.entries["left"] = ("category", H.left)
    out.entries["right"] = ("category", H.right)
    out.entries["het"] = ("profunctor", H)
    return {
        "cells": {f"({c},{d})": len(H.at[(c, d)]) for c in H.left.objects for d in H.right.objects},
        "document": serialize(out),
    }


def _op_classify(doc: Document, req: OpRequest) -> dict:
    M = _get(doc, _arg(req, "over"), "over")
    cls = classify(M)
    return {
        "flags": cls.flags(),
        "witnesses": {
            "left": cls.is_left.detail,
            "right": cls.is_right.detail,
            "cocartesian": cls.is_cocartesian.detail,
            "cartesian": cls.is_cartesian.detail,
            "locally_cocartesian": cls.is_locally_cocartesian.detail,
            "locally_cartesian": cls.is_locally_cartesian.detail,
            "exponential": cls.is_exponential.detail,
        },
    }


def _op_fracture(doc: Document, req: OpRequest) -> dict:
    M = _get(doc, _arg(req, "over"), "over")
    report = fracture_check(M)
    local = None
    if report.local is not None:
        local = {
            rep: {
                "block": list(datum.block),
                "fiber_objects": list(datum.fiber.objects),
                "aut_order": len(datum.aut.carrier),
                "action_on_objects": {
                    a: dict(sorted(F.obj_map.items())) for a, F in datum.action.items()
                },
            }
            for rep, datum in report.local.per_class.items()
        }
    return {
        "ok": report.ok,
        "iso_found": report.iso is not None,
        "iso_on_objects": dict(sorted(report.iso.obj_map.items())) if report.iso else None,
        "gluing_valid": report.gluing_valid.ok,
        "local_data": local,
        "local_obstruction": report.local_obstruction,
        "local_consistent": report.local_consistent,
    }


def _op_internal_hom(doc: Document, req: OpRequest) -> dict:
    M = _get(doc, _arg(req, "m"), "over")
    N = _get(doc, _arg(req, "n"), "over")
    cap = int(req.args.get("cap", 10000))
    ih = internal_hom_over_interval(M, N, cap=cap)
    out = Document()
    out.entries["total"] = ("category", ih.over.total)
    out.entries["base"] = ("category", ih.over.base)
    out.entries["proj"] = ("functor", ih.over.proj)
    out.entries["hom"] = ("over", ih.over)
    return {
        "fiber0_objects": len(ih.fiber0.cat.objects),
        "fiber1_objects": len(ih.fiber1.cat.objects),
        "heteromorphisms": len(ih.het_families),
        "document": serialize(out),
    }


_OPS = {
    "end": _op_end,
    "coend": _op_coend,
    "nat": _op_nat,
    "kan": _op_kan,
    "collage": _op_collage,
    "extract": _op_extract,
    "classify": _op_classify,
    "fracture": _op_fracture,
    "internal-hom": _op_internal_hom,
}
