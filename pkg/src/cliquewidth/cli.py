"""Command-line interface.

Exit codes: 0 success (or domain answer "yes"), 1 domain answer "no"
(forbidden graph found, not in class, verification failed, unbounded), 2
usage or I/O errors.  All output is deterministic for fixed inputs.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from . import certify as cert
from .constructions import (
    complemented_wall,
    gi_reduce,
    to_partitioned_text,
    verify_complemented_wall,
    verify_gi_profile,
    wall,
)
from .graphs import (
    Graph,
    from_edge_list_text,
    from_graph6,
    to_edge_list_text,
    to_graph6,
)
from .kexpr import KMAX_LIMIT, SOLVER_LIMIT, clique_width_exact, print_expression
from .recognition import SizeLimitError
from .search import is_free


@dataclass
class RunConfig:
    command: str
    fmt: str = "edgelist"
    specs: tuple[str, ...] = ()
    kmax: int = KMAX_LIMIT
    seed: int = 0
    out: str | None = None
    unsafe_size: bool = False


class CliError(Exception):
    pass


def _read_graph(path: str, fmt: str) -> Graph:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    try:
        return from_edge_list_text(text) if fmt == "edgelist" else from_graph6(text)
    except ValueError as exc:
        raise CliError(f"cannot parse {path}: {exc}") from exc


def _write_out(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_check_free(args: argparse.Namespace) -> int:
    cfg = RunConfig("check-free", fmt=args.format, specs=tuple(args.spec))
    g = _read_graph(args.graph, cfg.fmt)
    if not cfg.specs:
        raise CliError("at least one --spec is required")
    free, witness = is_free(g, list(cfg.specs))
    if free:
        print("free")
        return 0
    print(f"contains {witness.spec_text} on vertices {list(witness.embedding.image())}")
    return 1


def _cmd_clique_width(args: argparse.Namespace) -> int:
    cfg = RunConfig(
        "clique-width",
        fmt=args.format,
        kmax=args.kmax,
        out=args.out,
        unsafe_size=args.unsafe_size,
    )
    g = _read_graph(args.graph, cfg.fmt)
    limit = g.n if cfg.unsafe_size else SOLVER_LIMIT
    try:
        result = clique_width_exact(g, cfg.kmax, size_limit=limit)
    except SizeLimitError as exc:
        raise CliError(str(exc)) from exc
    if result is None:
        print(f"clique-width exceeds {cfg.kmax}")
        return 1
    k, expr = result
    print(f"clique-width {k}")
    if expr is not None:
        _write_out(cfg, print_expression(expr) + "\n")
    return 0


_CERTIFIERS = {
    "3P1+P2": cert.certify_diamond_3p1p2,
    "2P1+P3": cert.certify_diamond_2p1p3,
    "P2+P3": cert.certify_diamond_p2p3,
}


def _cmd_certify(args: argparse.Namespace) -> int:
    cfg = RunConfig("certify", fmt=args.format, out=args.out)
    g = _read_graph(args.graph, cfg.fmt)
    certifier = _CERTIFIERS[args.forbidden]
    try:
        certificate = certifier(g)
    except cert.NotInClassError as exc:
        w = exc.witness
        print(
            f"not in class: contains {w.spec_text} on vertices {list(w.embedding.image())}"
        )
        return 1
    except SizeLimitError as exc:
        raise CliError(str(exc)) from exc
    verdict = cert.verify_certificate(g, certificate)
    if not verdict.ok:
        for failure in verdict.failures:
            print(f"self-verification failed: {failure}", file=sys.stderr)
        return 2
    _write_out(cfg, cert.certificate_to_json(certificate))
    if cfg.out:
        print(f"certificate written to {cfg.out} (self-verified)")
    return 0


def _cmd_verify_certificate(args: argparse.Namespace) -> int:
    cfg = RunConfig("verify-certificate", fmt=args.format)
    g = _read_graph(args.graph, cfg.fmt)
    try:
        with open(args.certificate, "r", encoding="utf-8") as fh:
            certificate = cert.certificate_from_json(fh.read())
    except (OSError, ValueError, KeyError) as exc:
        raise CliError(f"cannot load certificate: {exc}") from exc
    verdict = cert.verify_certificate(g, certificate)
    if verdict.ok:
        print(f"certificate valid ({len(verdict.leaves)} leaves)")
        return 0
    for failure in verdict.failures:
        print(failure)
    return 1


def _cmd_construct(args: argparse.Namespace) -> int:
    cfg = RunConfig("construct", fmt=args.format, out=args.out)
    kind = args.kind
    if kind == "wall":
        try:
            height = int(args.param)
        except ValueError:
            raise CliError("wall expects an integer height") from None
        try:
            g = wall(height)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        text = to_edge_list_text(g) if cfg.fmt == "edgelist" else to_graph6(g) + "\n"
        _write_out(cfg, text)
        print(f"wall height {height}: {g.n} vertices, {g.m} edges")
        return 0
    if kind == "complemented-wall":
        try:
            height = int(args.param)
        except ValueError:
            raise CliError("complemented-wall expects an integer height") from None
        try:
            pg = complemented_wall(height)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        report = verify_complemented_wall(pg)
        _write_out(cfg, to_partitioned_text(pg))
        print(
            f"complemented wall height {height}: {pg.graph.n} vertices, "
            f"{pg.graph.m} edges, structure {'ok' if report.ok else 'BROKEN'}"
        )
        return 0 if report.ok else 2
    # gi-reduce
    g = _read_graph(args.param, cfg.fmt)
    pg = gi_reduce(g)
    report = verify_gi_profile(pg)
    _write_out(cfg, to_partitioned_text(pg))
    print(
        f"reduction output: {pg.graph.n} vertices, {pg.graph.m} edges, "
        f"profile {'ok' if report.ok else 'BROKEN'}"
    )
    return 0 if report.ok else 2


def _cmd_classify_pair(args: argparse.Namespace) -> int:
    status = cert.classify_pair(args.s, args.t)
    print(status.status)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cliquewidth",
        description="Clique-width recognizers, exact solver, certificates and constructions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("edgelist", "graph6"), default="edgelist")
        p.add_argument("--seed", type=int, default=0, help="reproducibility seed")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument(
            "--unsafe-size",
            action="store_true",
            help="lift the built-in size limits",
        )

    p = sub.add_parser("check-free", help="test forbidden induced subgraphs")
    p.add_argument("graph")
    p.add_argument("--spec", action="append", default=[], help="forbidden graph name")
    common(p)
    p.set_defaults(func=_cmd_check_free)

    p = sub.add_parser("clique-width", help="exact clique-width with a witness")
    p.add_argument("graph")
    p.add_argument("--kmax", type=int, default=KMAX_LIMIT)
    common(p)
    p.set_defaults(func=_cmd_clique_width)

    p = sub.add_parser("certify", help="boundedness certificate for a class member")
    p.add_argument("graph")
    p.add_argument(
        "forbidden",
        choices=sorted(_CERTIFIERS),
        help="second forbidden graph of the diamond-free class",
    )
    common(p)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("verify-certificate", help="replay and check a certificate")
    p.add_argument("graph")
    p.add_argument("certificate")
    common(p)
    p.set_defaults(func=_cmd_verify_certificate)

    p = sub.add_parser("construct", help="wall, complemented-wall, or gi-reduce")
    p.add_argument("kind", choices=("wall", "complemented-wall", "gi-reduce"))
    p.add_argument("param", help="height, or a graph file for gi-reduce")
    common(p)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("classify-pair", help="boundedness of the (sP1+P2, co(tP1+P2)) family")
    p.add_argument("s", type=int)
    p.add_argument("t", type=int)
    common(p)
    p.set_defaults(func=_cmd_classify_pair)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
