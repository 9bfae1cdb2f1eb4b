"""
Command line interface.

Exit codes: 0 when every asserted check passes, 1 when a check or a mathematical
assertion fails, 2 for input errors.

"""
import sys
from argparse import ArgumentParser
from typing import Any, Sequence

from microcosm.api import create_object_graph, load_from_dict
from microcosm.config.types import comma_separated_list
from microcosm.object_graph import ObjectGraph
from microcosm_logging.decorators import logger

from spinlab.bounds import BoundsInput, compare
from spinlab.catalog import CatalogEntry
from spinlab.errors import SpinlabError
from spinlab.geometry import load, to_document
from spinlab.report import analysis_document, bounds_document, dumps, render_bounds, render_table
from spinlab.scalars import decode_number


def create_spinlab_graph(debug: bool = False, testing: bool = False, **config) -> ObjectGraph:
    """
    Create the object graph from explicit configuration only.

    """
    graph = create_object_graph(
        name="spinlab",
        debug=debug,
        testing=testing,
        import_name="spinlab",
        loader=load_from_dict(config),
    )
    components = ["catalog", "analysis_pipeline"]
    if debug:
        components.insert(0, "logging")
    graph.use(*components)
    graph.lock()
    return graph


def number_list(value: str) -> list:
    return [decode_number(item) for item in comma_separated_list(value)]


@logger
class SpinlabCli:

    def __init__(self):
        self.parser = ArgumentParser(prog="spinlab", description="Spin geometry verification toolkit")
        self.parser.add_argument("--debug", action="store_true", default=False, help="Log pipeline stages to stderr")
        self.subparsers = self.parser.add_subparsers()

        self._add_catalog_command()
        self._add_analyze_command()
        self._add_bounds_command()

    def __call__(self, argv: Sequence[str] | None = None) -> int:
        args = self.parser.parse_args(argv)

        # If no command is provided, display help
        if not hasattr(args, "func"):
            self.parser.print_help()
            return 2

        try:
            return args.func(args)
        except SpinlabError as error:
            self.logger.info(
                "Command failed: {error}",
                extra=dict(
                    error=str(error),
                    exit_code=error.exit_code,
                ),
                exc_info=error.include_stack_trace and args.debug,
            )
            print(f"error: {error}", file=sys.stderr)  # noqa: T201
            return error.exit_code

    def catalog_list(self, args: Any) -> int:
        graph = create_spinlab_graph(debug=args.debug)
        for name in graph.catalog.list():
            print(name)  # noqa: T201
        return 0

    def catalog_run(self, args: Any) -> int:
        graph = self._create_graph(args)
        return self._analyze(graph, graph.catalog.get(args.name), args.format)

    def catalog_export(self, args: Any) -> int:
        graph = create_spinlab_graph(debug=args.debug)
        text = dumps(to_document(graph.catalog.get(args.name)))
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fp:
                fp.write(text)
        else:
            print(text, end="")  # noqa: T201
        return 0

    def analyze(self, args: Any) -> int:
        graph = self._create_graph(args)
        return self._analyze(graph, load(args.path), args.format)

    def bounds(self, args: Any) -> int:
        bounds_input = BoundsInput(
            n=args.n,
            n_k=args.nk,
            scal_g_min=args.scal,
            t_norm2=args.t2,
            mu2_list=args.mu2,
        )
        report = compare(bounds_input)
        if args.format == "json":
            print(dumps(bounds_document(bounds_input, report)), end="")  # noqa: T201
        else:
            print(render_bounds(bounds_input, report), end="")  # noqa: T201
        return 0

    def _create_graph(self, args: Any) -> ObjectGraph:
        config = {}
        if args.tol is not None:
            config["analysis_pipeline"] = dict(tolerance=args.tol)
        return create_spinlab_graph(debug=args.debug, **config)

    def _analyze(self, graph: ObjectGraph, entry: CatalogEntry, output_format: str) -> int:
        analysis = graph.analysis_pipeline.run(entry)
        if output_format == "json":
            print(dumps(analysis_document(analysis)), end="")  # noqa: T201
        else:
            print(render_table(analysis), end="")  # noqa: T201
        return 0 if analysis.passed else 1

    def _add_report_arguments(self, parser: ArgumentParser):
        parser.add_argument("--format", choices=["table", "json"], default="table", help="Report format")
        parser.add_argument("--tol", type=float, default=None, help="Tolerance for floating assertions")

    def _add_catalog_command(self):
        catalog_parser = self.subparsers.add_parser("catalog", help="Built-in geometries")
        catalog_subparsers = catalog_parser.add_subparsers()

        list_parser = catalog_subparsers.add_parser("list", help="List entry names")
        list_parser.set_defaults(func=self.catalog_list)

        run_parser = catalog_subparsers.add_parser("run", help="Run the verification pipeline on an entry")
        run_parser.add_argument("name")
        self._add_report_arguments(run_parser)
        run_parser.set_defaults(func=self.catalog_run)

        export_parser = catalog_subparsers.add_parser("export", help="Write an entry as a geometry file")
        export_parser.add_argument("name")
        export_parser.add_argument("--output", "-o", default=None, help="Output path (default: stdout)")
        export_parser.set_defaults(func=self.catalog_export)

    def _add_analyze_command(self):
        analyze_parser = self.subparsers.add_parser("analyze", help="Run the verification pipeline on a geometry file")
        analyze_parser.add_argument("path")
        self._add_report_arguments(analyze_parser)
        analyze_parser.set_defaults(func=self.analyze)

    def _add_bounds_command(self):
        bounds_parser = self.subparsers.add_parser("bounds", help="Evaluate the eigenvalue bounds directly")
        bounds_parser.add_argument("--n", type=int, required=True, help="Manifold dimension")
        bounds_parser.add_argument("--nk", type=int, required=True, help="Largest block size")
        bounds_parser.add_argument(
            "--scal", type=decode_number, required=True, help="Minimal scalar curvature Scal^g_min",
        )
        bounds_parser.add_argument("--t2", type=decode_number, required=True, help="Torsion norm ‖T‖²")
        bounds_parser.add_argument("--mu2", type=number_list, required=True, help="Comma separated μ² values")
        bounds_parser.add_argument("--format", choices=["table", "json"], default="table", help="Report format")
        bounds_parser.set_defaults(func=self.bounds)


def main() -> int:
    return SpinlabCli()()


if __name__ == "__main__":
    sys.exit(main())
