"""Command-line entry points.

Thin wrappers over the library: machine-readable JSON goes to stdout,
diagnostics to stderr. Exit codes: 0 success, 1 usage error, 2 data or
model error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classifier import classify, result_to_doc
from .errors import ConceptSpaceError
from .explain import WhatIfRequest, explain, report_to_doc, whatif, whatif_result_to_doc
from .knowledge import DEFAULT_UTILISATION_DIMS, ground_utilisation, grounding_to_doc, load_fixture
from .knowledge.fixture import builtin_fixture_path
from .learning import TrainingConfig, load_dataset, load_dataset_csv, train
from .model import DEFAULT_DELTA, Instance, validate_space
from .scenegen import builtin_fixture, config_from_doc, generate_to_file
from .serialization import load_space, save_space

USAGE_ERROR = 1
DATA_ERROR = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse defaults to exit 2
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _emit(doc: dict) -> None:
    from .serialization import canonical_json

    sys.stdout.write(canonical_json(doc) + "\n")


def _load_instance(path: str) -> Instance:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    return Instance(id=doc.get("id", "instance"), values=dict(doc["values"]), label=doc.get("label"))


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.config:
        config = config_from_doc(json.loads(Path(args.config).read_text(encoding="utf-8")))
    else:
        config = builtin_fixture(args.fixture)
    if args.seed is not None:
        from dataclasses import replace

        config = replace(config, seed=args.seed)
    dataset = generate_to_file(config, args.out)
    print(f"wrote {len(dataset.instances)} instances to {args.out}", file=sys.stderr)
    return 0


def _cmd_train(args: argparse.Namespace) -> int:
    if args.csv:
        if not args.schema:
            raise ConceptSpaceError("--csv requires --schema with the dimension list")
        dataset = load_dataset_csv(args.csv, args.schema)
    else:
        dataset = load_dataset(args.data)
    space = train(dataset, TrainingConfig(min_support=args.min_support))
    violations = validate_space(space)
    if violations:
        raise ConceptSpaceError("trained space fails validation: " + violations[0].message)
    save_space(space, args.out)
    print(f"trained {len(space.concepts)} concepts over {len(space.dimensions)} dimensions -> {args.out}", file=sys.stderr)
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    space = load_space(args.model)
    instance = _load_instance(args.instance)
    result = classify(instance, space, args.delta)
    _emit(result_to_doc(result))
    return 0


def _cmd_explain(args: argparse.Namespace) -> int:
    space = load_space(args.model)
    instance = _load_instance(args.instance)
    report = explain(instance, space, args.delta)
    _emit(report_to_doc(report))
    return 0


def _cmd_whatif(args: argparse.Namespace) -> int:
    space = load_space(args.model)
    doc = json.loads(Path(args.request).read_text(encoding="utf-8"))
    overrides = doc.get("overrides", {})
    request = WhatIfRequest(
        instance=Instance(id=doc["instance"].get("id", "instance"), values=dict(doc["instance"]["values"])),
        weight_overrides=overrides.get("weights", {}),
        membership_overrides=overrides.get("memberships", {}),
        value_overrides=overrides.get("values", {}),
        delta=doc.get("delta", args.delta),
    )
    _emit(whatif_result_to_doc(whatif(request, space)))
    return 0


def _cmd_extract(args: argparse.Namespace) -> int:
    if args.live:
        from .knowledge.live import ConceptNetClient

        client = ConceptNetClient(cache_dir=args.cache or "./knowledge_cache")
        client.fetch_usedfor(args.label)
        fixture = load_fixture(args.cache or "./knowledge_cache")
    else:
        fixture = load_fixture(args.fixtures) if args.fixtures else load_fixture(builtin_fixture_path())
    dims = args.dims.split(",") if args.dims else list(DEFAULT_UTILISATION_DIMS)
    grounding = ground_utilisation(args.label, dims, fixture)
    _emit(grounding_to_doc(grounding))
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import ServiceConfig, create_app

    config = ServiceConfig.from_env(
        model_path=args.model,
        host=args.host,
        port=args.port,
        delta=args.delta,
        fixture_paths=tuple(args.fixtures or ()),
        live_knowledge=args.live,
        cors_origins=tuple(args.cors.split(",")) if args.cors else (),
    )
    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="conceptspace", description="Prototype-based interpretable classification over conceptual spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a synthetic labelled dataset")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--fixture", help="built-in scene fixture name")
    group.add_argument("--config", help="scene config JSON file")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("train", help="learn a model from a labelled dataset")
    p.add_argument("--data", help="dataset JSON file")
    p.add_argument("--csv", help="dataset CSV file (needs --schema)")
    p.add_argument("--schema", help="dimension schema JSON for --csv")
    p.add_argument("--min-support", type=int, default=2)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("classify", help="classify one instance")
    p.add_argument("--model", required=True)
    p.add_argument("--instance", required=True)
    p.add_argument("--delta", type=float, default=DEFAULT_DELTA)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("explain", help="classify and explain one instance")
    p.add_argument("--model", required=True)
    p.add_argument("--instance", required=True)
    p.add_argument("--delta", type=float, default=DEFAULT_DELTA)
    p.set_defaults(func=_cmd_explain)

    p = sub.add_parser("whatif", help="counterfactual re-classification under overrides")
    p.add_argument("--model", required=True)
    p.add_argument("--request", required=True, help="what-if request JSON file")
    p.add_argument("--delta", type=float, default=DEFAULT_DELTA)
    p.set_defaults(func=_cmd_whatif)

    p = sub.add_parser("extract", help="ground utilisation dimensions for a label")
    p.add_argument("--label", required=True)
    p.add_argument("--fixtures", help="knowledge fixture file or directory (default: built-in)")
    p.add_argument("--dims", help="comma-separated utilisation dimensions")
    p.add_argument("--live", action="store_true", help="consult the live knowledge service (cached)")
    p.add_argument("--cache", help="cache directory for --live")
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("serve", help="run the HTTP probing service")
    p.add_argument("--model", help="model JSON file (or CONCEPTSPACE_MODEL)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--delta", type=float, default=DEFAULT_DELTA)
    p.add_argument("--fixtures", nargs="*")
    p.add_argument("--live", action="store_true")
    p.add_argument("--cors", help="comma-separated CORS allow-list")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    if args.command == "train" and not args.data and not args.csv:
        print("conceptspace train: error: one of --data or --csv is required", file=sys.stderr)
        return USAGE_ERROR
    try:
        return args.func(args)
    except ConceptSpaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON input: {exc}", file=sys.stderr)
        return DATA_ERROR


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
