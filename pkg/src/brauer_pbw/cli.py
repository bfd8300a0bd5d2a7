"""Command-line entry point: ``brauer-pbw <subcommand> [flags]``.

Results are written as JSON to standard output (or ``--output FILE``); logs go
to standard error.  Exit codes: 0 on success, 1 on domain errors (with an
``{"error": code, "detail": text}`` object), 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Sequence

from . import classification, jacobi, specialization
from .combinatorics import Partition, Pseudograph, enumerate_basis
from .diagram_core import ArcDiagram, Morphism, ShapeError, compose, random_diagram, tensor

log = logging.getLogger("brauer_pbw")

SUITES = ("functoriality", "form-lie", "jacobi-specialized", "tsymbaliuk", "egg", "omega-oracle")


class InputError(Exception):
    """Malformed input (bad JSON, wrong structure); maps to exit code 2."""


@dataclass
class Config:
    subcommand: str
    args: argparse.Namespace
    output: Path | None
    verbosity: int


# -- input helpers ------------------------------------------------------------------------


def _load_json(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path}: {exc}") from exc


def _load_morphism(path: str) -> Morphism:
    data = _load_json(path)
    try:
        if isinstance(data, dict) and "arcs" in data:
            return Morphism.from_diagram(ArcDiagram.from_json(data))
        return Morphism.from_json(data)
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"{path} is not a diagram or morphism: {exc}") from exc


def _load_graph(path: str) -> Pseudograph:
    data = _load_json(path)
    try:
        return Pseudograph.from_json(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"{path} is not a pseudograph: {exc}") from exc


def _partition(text: str) -> Partition:
    text = text.strip()
    if not text:
        return Partition()
    try:
        return Partition(tuple(int(x) for x in text.split(",")))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad partition {text!r}") from exc


def _rho(text: str) -> int:
    if text in ("+1", "1", "+"):
        return 1
    if text in ("-1", "-"):
        return -1
    raise argparse.ArgumentTypeError(f"rho must be +1 or -1, got {text!r}")


def _positive(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("bounds must be non-negative")
    return value


# -- subcommands -----------------------------------------------------------------------------


def cmd_compose(cfg: Config) -> dict:
    a, b = _load_morphism(cfg.args.a), _load_morphism(cfg.args.b)
    return compose(a, b).to_json()


def cmd_tensor(cfg: Config) -> dict:
    a, b = _load_morphism(cfg.args.a), _load_morphism(cfg.args.b)
    return tensor(a, b).to_json()


def cmd_basis(cfg: Config) -> dict:
    a = cfg.args
    pairs = enumerate_basis(a.p, a.e, a.d)
    return {
        "p": a.p,
        "e": a.e,
        "d": a.d,
        "basis": [{"graph": g.to_json(), "partition": lam.to_json()} for g, lam in pairs],
    }


def cmd_omega(cfg: Config) -> dict:
    a = cfg.args
    graph = _load_graph(a.graph)
    if graph.valence != a.e:
        raise ShapeError(f"graph has valence {graph.valence}, expected {a.e}")
    out: dict[str, Any] = {"e": a.e, "rho": a.rho, "mode": a.mode}
    if a.mode in ("graphical", "both"):
        out["graphical"] = jacobi.omega_graphical(graph, a.partition, a.rho).to_json()
    if a.mode in ("direct", "both"):
        direct = jacobi.omega_direct(graph, a.partition, a.rho)
        out["direct"] = direct.to_json()
        if a.mode == "both":
            graphical = jacobi.omega_graphical(graph, a.partition, a.rho)
            out["equal"] = graphical.expand() == direct
    return out


def cmd_classify(cfg: Config) -> dict:
    a = cfg.args
    families = classification.classify(a.e, a.rho, a.dmax)
    out: dict[str, Any] = {
        "e": a.e,
        "rho": a.rho,
        "dmax": a.dmax,
        "families": [dict(f.to_json(), name=f.name, kappa=f.build().to_json()) for f in families],
    }
    if a.audit:
        report = classification.audit(a.e, a.rho, a.dmax)
        out["audit"] = report.to_json()
        if a.figures:
            out["figures"] = [str(p) for p in render_audit_figure(report, Path(a.figures))]
    return out


def cmd_specialize(cfg: Config) -> dict:
    a = cfg.args
    f = _load_morphism(a.morphism)
    return specialization.specialize(f, a.m, a.n).to_json()


# -- verification suites -------------------------------------------------------------------------


def suite_functoriality(a: argparse.Namespace) -> dict:
    rng = random.Random(a.seed)
    failures = []
    for trial in range(a.samples):
        k, l, r = rng.randint(0, 4), rng.randint(0, 4), rng.randint(0, 4)
        l += (k + l) % 2
        r += (l + r) % 2
        x, y = random_diagram(k, l, rng), random_diagram(l, r, rng)
        lhs = specialization.specialize(compose(x, y), a.m, a.n)
        rhs = specialization.specialize(x, a.m, a.n).compose(specialization.specialize(y, a.m, a.n))
        if lhs != rhs:
            failures.append({"trial": trial, "a": x.to_json(), "b": y.to_json()})
    return {"samples": a.samples, "seed": a.seed, "failures": failures, "passed": not failures}


def suite_form_lie(a: argparse.Namespace) -> dict:
    report = specialization.verify_form_and_lie(a.m, a.n)
    return dict(report.to_json(), passed=report.ok)


def suite_jacobi_specialized(a: argparse.Namespace) -> dict:
    cases = []
    for e, rho in [(1, 1), (1, -1), (2, 1), (2, -1)]:
        for fam in classification.classify(e, rho, a.dmax):
            kappa = fam.build()
            residuals = specialization.specialized_jacobi(kappa, a.m, a.n)
            cases.append({"family": fam.name, "zero": {str(d): r.is_zero() for d, r in residuals.items()}})
    return {"m": a.m, "n": a.n, "dmax": a.dmax, "cases": cases, "passed": all(all(c["zero"].values()) for c in cases)}


def suite_generating(variant: str) -> Callable[[argparse.Namespace], dict]:
    def run(a: argparse.Namespace) -> dict:
        reports = [specialization.compare_generating_function(variant, N, a.m, a.n) for N in range(a.N + 1)]
        return {"reports": [r.to_json() for r in reports], "passed": all(r.ok for r in reports)}

    return run


def suite_omega_oracle(a: argparse.Namespace) -> dict:
    cases = []
    for d in range(1, a.dmax + 1):
        for graph, lam in enumerate_basis(2, a.e, d):
            for rho in (1, -1):
                equal = jacobi.omega_graphical(graph, lam, rho).expand() == jacobi.omega_direct(graph, lam, rho)
                cases.append({"graph": graph.to_json(), "partition": lam.to_json(), "rho": rho, "equal": equal})
                log.info("omega %s %s rho=%+d: %s", graph, lam, rho, "ok" if equal else "MISMATCH")
    return {"e": a.e, "dmax": a.dmax, "cases": cases, "passed": all(c["equal"] for c in cases)}


SUITE_RUNNERS: dict[str, Callable[[argparse.Namespace], dict]] = {
    "functoriality": suite_functoriality,
    "form-lie": suite_form_lie,
    "jacobi-specialized": suite_jacobi_specialized,
    "tsymbaliuk": suite_generating("orthogonal"),
    "egg": suite_generating("symplectic"),
    "omega-oracle": suite_omega_oracle,
}


def cmd_verify(cfg: Config) -> dict:
    a = cfg.args
    if a.suite == "tsymbaliuk" and a.n:
        raise ShapeError("the tsymbaliuk suite needs n == 0")
    if a.suite == "egg" and a.m:
        raise ShapeError("the egg suite needs m == 0")
    start = time.perf_counter()
    out = SUITE_RUNNERS[a.suite](a)
    log.info("suite %s finished in %.2fs: %s", a.suite, time.perf_counter() - start, "pass" if out["passed"] else "FAIL")
    return {"suite": a.suite, **out}


# -- figures ------------------------------------------------------------------------------------


def render_audit_figure(report: classification.AuditReport, directory: Path) -> list[Path]:
    """Bar chart of kernel dimension against family dimension per degree."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.ticker import MaxNLocator

    directory.mkdir(parents=True, exist_ok=True)
    degrees = [r.degree for r in report.degrees]
    width = 0.38
    fig, ax = plt.subplots(figsize=(5, 3))
    ax.bar([d - width / 2 for d in degrees], [r.kernel_dim for r in report.degrees], width, label="kernel")
    ax.bar([d + width / 2 for d in degrees], [r.family_dim for r in report.degrees], width, label="families")
    for r in report.degrees:
        if not r.ok:
            ax.annotate("x", (r.degree, max(r.kernel_dim, r.family_dim)), ha="center", va="bottom", color="red")
    ax.set_xlabel("degree d")
    ax.set_ylabel("dimension")
    ax.set_xticks(degrees)
    ax.yaxis.set_major_locator(MaxNLocator(integer=True))
    ax.set_title(f"e={report.e}, rho={report.rho:+d}")
    ax.legend()
    fig.tight_layout()
    path = directory / f"audit_e{report.e}_rho{'p' if report.rho > 0 else 'm'}.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return [path]


# -- argument parsing ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="brauer-pbw", description=__doc__.splitlines()[0])
    parser.add_argument("--output", help="write the JSON result to this file instead of stdout")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging on stderr")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    for name in ("compose", "tensor"):
        p = sub.add_parser(name, help=f"{name} two diagrams or morphisms given as JSON files")
        p.add_argument("--a", required=True)
        p.add_argument("--b", required=True)

    p = sub.add_parser("basis", help="orbit representatives (graph, partition) of Hom(W^p, S^d g)")
    p.add_argument("--p", type=_positive, required=True)
    p.add_argument("--e", type=_positive, required=True)
    p.add_argument("--d", type=_positive, required=True)

    p = sub.add_parser("omega", help="evaluate the reduced Jacobi operator on one basis element")
    p.add_argument("--e", type=_positive, required=True)
    p.add_argument("--rho", type=_rho, required=True)
    p.add_argument("--graph", required=True, help="pseudograph JSON file")
    p.add_argument("--partition", type=_partition, default=Partition())
    p.add_argument("--mode", choices=("graphical", "direct", "both"), default="graphical")

    p = sub.add_parser("classify", help="list the deformation families and optionally audit the kernel")
    p.add_argument("--e", type=_positive, required=True)
    p.add_argument("--rho", type=_rho, required=True)
    p.add_argument("--dmax", type=_positive, required=True)
    p.add_argument("--audit", action="store_true")
    p.add_argument("--figures", help="with --audit, render a dimension chart into this directory")

    p = sub.add_parser("specialize", help="apply the functor to k^{m|2n}")
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--morphism", required=True)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--m", type=_positive, default=3)
    p.add_argument("--n", type=_positive, default=0)
    p.add_argument("--e", type=_positive, default=1)
    p.add_argument("--dmax", type=_positive, default=3)
    p.add_argument("--N", type=_positive, default=1, help="highest generating-function order")
    p.add_argument("--samples", type=_positive, default=200)
    p.add_argument("--seed", type=int, default=0)
    return parser


COMMANDS: dict[str, Callable[[Config], dict]] = {
    "compose": cmd_compose,
    "tensor": cmd_tensor,
    "basis": cmd_basis,
    "omega": cmd_omega,
    "classify": cmd_classify,
    "specialize": cmd_specialize,
    "verify": cmd_verify,
}


def _emit(payload: dict, output: Path | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=False)
    if output is None:
        sys.stdout.write(text + "\n")
    else:
        output.write_text(text + "\n")


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = Config(args.subcommand, args, Path(args.output) if args.output else None, args.verbose)
    logging.basicConfig(
        level=logging.DEBUG if cfg.verbosity > 1 else logging.INFO if cfg.verbosity else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(message)s",
    )
    try:
        result = COMMANDS[cfg.subcommand](cfg)
    except InputError as exc:
        _emit({"error": "malformed-input", "detail": str(exc)}, None)
        return 2
    except ShapeError as exc:
        _emit({"error": "shape", "detail": str(exc)}, None)
        return 1
    except classification.FamilyError as exc:
        _emit({"error": "family", "detail": str(exc)}, None)
        return 1
    except ValueError as exc:
        _emit({"error": "domain", "detail": str(exc)}, None)
        return 1
    _emit(result, cfg.output)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
