"""Command-line front end: a thin client over the computation service.

By default the service runs in-process; `--url` points the client at a
remote server instead. `serve` starts a standalone server.

Exit codes: 0 pass, 1 property failure, 2 input or usage error,
3 cap exceeded. FRACTURE_CAT_SEED overrides --seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import httpx


def make_client(url: str | None):
    if url:
        return httpx.Client(base_url=url, timeout=600.0)
    from fastapi.testclient import TestClient

    from .service.app import app

    return TestClient(app)


def _fail_usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _emit(payload: dict, json_path: str | None, render) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2)
    if json_path:
        with open(json_path, "w") as fh:
            fh.write(text + "\n")
    else:
        render(payload)


def _status_exit(resp) -> int | None:
    """Map service errors to exit codes; None when the response is fine."""
    if resp.status_code < 400:
        return None
    try:
        detail = resp.json().get("detail", {})
    except Exception:  # noqa: BLE001
        detail = {}
    kind = detail.get("kind", "")
    message = detail.get("message", resp.text)
    print(f"error: {message}", file=sys.stderr)
    if kind == "cap-exceeded":
        return 3
    return 2


def cmd_verify(args) -> int:
    seed = args.seed
    env_seed = os.environ.get("FRACTURE_CAT_SEED")
    if env_seed is not None:
        try:
            seed = int(env_seed)
        except ValueError:
            return _fail_usage(f"FRACTURE_CAT_SEED must be an integer, got {env_seed!r}")
    body = {
        "seed": seed,
        "count": args.count,
        "max_objects": args.max_objects,
        "max_morphisms": args.max_morphisms,
        "kind": args.kind,
        "mutate": args.mutate,
    }
    with make_client(args.url) as client:
        resp = client.post(f"/verify/{args.theorem}", json=body)
    code = _status_exit(resp)
    if code is not None:
        return code
    payload = resp.json()

    def render(p):
        status = "PASS" if not p["failures"] else "FAIL"
        print(f"{p['theorem']}: {status} "
              f"({p['instances']} instances, {len(p['failures'])} failures, "
              f"{len(p['cap_events'])} cap events, {p['millis']} ms)")
        for failure in p["failures"][:10]:
            print(f"  failure: {json.dumps(failure, sort_keys=True)}")
        if len(p["failures"]) > 10:
            print(f"  ... {len(p['failures']) - 10} more")

    _emit(payload, args.json, render)
    if payload["failures"]:
        return 1
    if payload["cap_events"] and payload["instances"] == 0:
        return 3
    return 0


def cmd_op(args) -> int:
    try:
        with open(args.doc) as fh:
            document = fh.read()
    except OSError as exc:
        return _fail_usage(str(exc))
    op_args = {}
    for key in ("cat", "diagram", "f", "g", "functor", "presheaf", "profunctor",
                "over", "m", "n", "cap", "cod"):
        value = getattr(args, key.replace("-", "_"), None)
        if value is not None:
            op_args[key] = value
    with make_client(args.url) as client:
        resp = client.post(f"/ops/{args.op}", json={"document": document, "args": op_args})
    code = _status_exit(resp)
    if code is not None:
        return code
    payload = resp.json()

    def render(p):
        result = p["result"]
        if "cardinality" in result:
            print(f"{p['op']}: cardinality {result['cardinality']}")
            for el in result.get("elements", []):
                print(f"  {el}")
        if "agree" in result:
            print(f"oracle agreement: {result['agree']}")
        if "flags" in result:
            for flag, val in sorted(result["flags"].items()):
                print(f"{flag}: {val}")
        if "ok" in result:
            print(f"ok: {result['ok']}")
        for key in ("iso_found", "gluing_valid", "local_obstruction", "heteromorphisms",
                    "objects", "morphisms", "fiber0_objects", "fiber1_objects"):
            if key in result and result[key] is not None:
                print(f"{key}: {result[key]}")
        if "values" in result:
            for x, elems in sorted(result["values"].items()):
                print(f"at {x}: {{{' '.join(elems)}}}")
        if "document" in result and args.emit_document:
            print(result["document"])

    _emit(payload, args.json, render)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracture-cat",
        description="Finite-category fracture engine and verification harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a theorem verification suite")
    verify.add_argument("theorem")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--count", type=int, default=200)
    verify.add_argument("--max-objects", type=int, default=4)
    verify.add_argument("--max-morphisms", type=int, default=16)
    verify.add_argument("--kind", default="general",
                        choices=["general", "posets", "groupoids", "over-[1]", "over-[2]"])
    verify.add_argument("--mutate", action="store_true",
                        help="fault-inject the oracles; the suite must fail")
    verify.add_argument("--json", metavar="PATH", help="write the JSON report here")
    verify.add_argument("--url", help="remote service URL (default: in-process)")
    verify.set_defaults(func=cmd_verify)

    op_specs = {
        "end": ["cat", "diagram"],
        "coend": ["cat", "diagram"],
        "nat": ["f", "g"],
        "kan": ["functor", "presheaf", "cod"],
        "collage": ["profunctor"],
        "extract": ["over"],
        "classify": ["over"],
        "fracture": ["over"],
        "internal-hom": ["m", "n", "cap"],
    }
    for op, keys in op_specs.items():
        p = sub.add_parser(op, help=f"run {op} on a document")
        p.add_argument("--doc", required=True, help="path to a .fincat document")
        for key in keys:
            p.add_argument(f"--{key}", required=key in ("cat", "f", "g", "functor",
                                                        "presheaf", "profunctor",
                                                        "over", "m", "n"))
        p.add_argument("--json", metavar="PATH")
        p.add_argument("--url")
        p.add_argument("--emit-document", action="store_true",
                       help="also print the computed object as .fincat text")
        p.set_defaults(func=cmd_op, op=op)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
