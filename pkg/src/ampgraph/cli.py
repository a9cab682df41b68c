"""Command-line front end.

Every subcommand produces a single report object: the echoed command, an
``ok`` flag, and either a structured result or an error message.  With
``--json`` the report is printed as canonical JSON (sorted keys, no spaces),
so identical invocations are byte identical; the human-readable rendering is
derived from the same structure and never carries extra information.

Exit status: 0 when every check passed, 1 for input errors (bad files, bad
flags, precondition violations), 2 when a mathematical verification failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from .coxeter import DynkinSpec, MAX_RANK, flag_graph
from .cw import cw_kk_summary
from .graphio import graph_to_dict, load_graph
from .graphs import AmpGraph
from .ktheory import check_chain_k0, check_split_exact_k0, k_groups
from .splitting import (
    VerificationFailure,
    build_splitting,
    first_sink_first_star,
    kk_chain,
    prefer_source_star,
    valid_stars,
    verify_split_exact,
)
from .algebra import VerificationReport

DEFAULT_HEREDITARY_BOUND = 20
BOUND_ENV = "CK_SPLIT_MAX_VERTICES"

_POLICIES = {
    "first": first_sink_first_star,
    "source": prefer_source_star,
}


def _hereditary_bound() -> int:
    raw = os.environ.get(BOUND_ENV)
    if raw is None:
        return DEFAULT_HEREDITARY_BOUND
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{BOUND_ENV} must be an integer, got {raw!r}") from None


def _split_labels(raw: str) -> tuple[str, ...]:
    labels = tuple(part.strip() for part in raw.split(",") if part.strip())
    if not labels:
        raise ValueError(f"expected a comma-separated vertex list, got {raw!r}")
    return labels


def _parse_tags(raw: str) -> frozenset[int]:
    try:
        return frozenset(int(part) for part in raw.split(",") if part.strip())
    except ValueError:
        raise ValueError(f"--tag expects comma-separated integers, got {raw!r}") from None


def _checks_json(report: VerificationReport) -> list[dict]:
    return [
        {"name": c.name, "passed": c.passed, "detail": c.detail, "required": c.required}
        for c in report.checks
    ]


def _matrix_json(m: np.ndarray) -> list[list[int]]:
    return [[int(x) for x in row] for row in m]


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (ok, result dict)


def _cmd_classify(ns) -> tuple[bool, dict]:
    g = load_graph(ns.file)
    cls = g.classify()
    return True, {
        "amplified": cls.amplified,
        "acyclic": cls.acyclic,
        "sinks": list(cls.sinks),
        "sources": list(cls.sources),
    }


def _cmd_hereditary(ns) -> tuple[bool, dict]:
    g = load_graph(ns.file)
    if ns.closure is not None:
        given = _split_labels(ns.closure)
        return True, {
            "given": list(given),
            "closure": list(g.hereditary_closure(given)),
        }
    bound = _hereditary_bound()
    sets = g.enumerate_hereditary(max_vertices=bound)
    return True, {
        "max_vertices": bound,
        "count": len(sets),
        "sets": [list(s) for s in sets],
    }


def _cmd_quotient(ns) -> tuple[bool, dict]:
    g = load_graph(ns.file)
    removed = _split_labels(ns.remove)
    q = g.quotient(removed)
    return True, {
        "removed": sorted(removed),
        "graph": graph_to_dict(q),
    }


def _cmd_stars(ns) -> tuple[bool, dict]:
    g = load_graph(ns.file)
    return True, {"sink": ns.sink, "stars": list(valid_stars(g, ns.sink))}


def _cmd_split(ns) -> tuple[bool, dict]:
    g = load_graph(ns.file)
    if ns.embed:
        star = None
    elif ns.star is not None:
        star = ns.star
    else:
        found = valid_stars(g, ns.sink)
        star = found[0] if found else None
    sd = build_splitting(g, ns.sink, star)
    result = {
        "sink": sd.sink,
        "star": sd.star,
        "ideal": sd.ideal_kind,
        "iota": sd.iota_class,
        "augmented": [list(pair) for pair in sd.augmented],
        "quotient_vertices": list(sd.quotient_graph.vertices),
        "section": sd.sigma.render_table(),
    }
    if ns.verify:
        report = verify_split_exact(sd)
        k0 = check_split_exact_k0(sd)
        result["checks"] = _checks_json(report)
        result["k0"] = {
            "q": _matrix_json(k0.q),
            "s": _matrix_json(k0.s),
            "checks": _checks_json(k0.report),
        }
        return bool(report.ok and k0.report.ok), result
    return True, result


def _cmd_chain(ns) -> tuple[bool, dict]:
    g = load_graph(ns.file)
    chain = kk_chain(g, policy=_POLICIES[ns.policy])
    k0 = check_chain_k0(chain)
    result = {
        "policy": ns.policy,
        "steps": [
            {
                "sink": sd.sink,
                "star": sd.star,
                "ideal": sd.ideal_kind,
                "augmented": [list(pair) for pair in sd.augmented],
            }
            for sd in chain.steps
        ],
        "iota": list(chain.iota_terms),
        "pi": list(chain.pi_terms),
        "terminal": list(chain.terminal.vertices),
        "k0": {
            "forward": _matrix_json(k0.forward),
            "backward": _matrix_json(k0.backward),
            "checks": _checks_json(k0.report),
        },
    }
    return bool(k0.report.ok), result


def _cmd_ktheory(ns) -> tuple[bool, dict]:
    g = load_graph(ns.file)
    kg = k_groups(g)
    return True, {
        "k0_rank": kg.k0_rank,
        "k0_generators": list(kg.k0_generators),
        "k1_rank": kg.k1_rank,
    }


def _flag_spec(ns) -> DynkinSpec:
    return DynkinSpec(rank=ns.rank, tagged=_parse_tags(ns.tag))


def _cmd_flag(ns) -> tuple[bool, dict]:
    g = flag_graph(_flag_spec(ns))
    return True, graph_to_dict(g)


def _cmd_cw(ns) -> tuple[bool, dict]:
    summary = cw_kk_summary(_flag_spec(ns))
    result = {
        "summary": str(summary),
        "records": [
            {
                "text": r.text,
                "compacts": r.compacts,
                "level": r.level,
                "vertices": list(r.vertices),
            }
            for r in summary.records
        ],
        "sinks": list(summary.chain.sinks),
        "iota": list(summary.chain.iota_terms),
        "pi": list(summary.chain.pi_terms),
        "checks": _checks_json(summary.report),
    }
    return bool(summary.report.ok), result


# ---------------------------------------------------------------------------
# human renderings, derived from the JSON result and nothing else


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def _render_graph_dict(data: dict) -> list[str]:
    lines = ["vertices: " + " ".join(data["vertices"])]
    if data["edges"]:
        lines.append("families:")
        for e in data["edges"]:
            lines.append(f"  {e['src']} -> {e['dst']}  ({e['mult']})")
    else:
        lines.append("families: (none)")
    return lines


def _render_checks(checks: list[dict]) -> list[str]:
    lines = []
    for c in checks:
        mark = "ok" if c["passed"] else "FAIL"
        note = "" if c["required"] else " (informational)"
        detail = f": {c['detail']}" if c["detail"] else ""
        lines.append(f"  [{mark}] {c['name']}{note}{detail}")
    return lines


def _render_classify(result: dict) -> list[str]:
    return [
        f"amplified: {_yesno(result['amplified'])}",
        f"acyclic: {_yesno(result['acyclic'])}",
        "sinks: " + (" ".join(result["sinks"]) or "(none)"),
        "sources: " + (" ".join(result["sources"]) or "(none)"),
    ]


def _render_hereditary(result: dict) -> list[str]:
    if "closure" in result:
        return ["closure: " + (" ".join(result["closure"]) or "{}")]
    lines = [f"hereditary subsets: {result['count']}"]
    for s in result["sets"]:
        lines.append("  {" + ", ".join(s) + "}")
    return lines


def _render_quotient(result: dict) -> list[str]:
    return ["removed: " + " ".join(result["removed"])] + _render_graph_dict(result["graph"])


def _render_stars(result: dict) -> list[str]:
    if result["stars"]:
        return [" ".join(result["stars"])]
    return ["(no valid star; only the non-unital embedding applies)"]


def _render_split(result: dict) -> list[str]:
    star = result["star"] if result["star"] is not None else "(embedding, no star)"
    lines = [
        f"sink: {result['sink']}",
        f"star: {star}",
        f"ideal: {result['ideal']}",
    ]
    if result["augmented"]:
        lines.append(
            "added families: " + " ".join(f"{a}->{b}" for a, b in result["augmented"])
        )
    lines.append("section on generators:")
    for gen, image in result["section"].items():
        lines.append(f"  {gen} |-> {image}")
    if "checks" in result:
        lines.append("checks:")
        lines.extend(_render_checks(result["checks"]))
        lines.append("K_0 checks:")
        lines.extend(_render_checks(result["k0"]["checks"]))
    return lines


def _render_chain(result: dict) -> list[str]:
    lines = [f"steps: {len(result['steps'])}  (policy: {result['policy']})"]
    for i, step in enumerate(result["steps"], start=1):
        star = step["star"] if step["star"] is not None else "(embedding)"
        lines.append(f"  {i}. remove {step['sink']}  star {star}  ideal {step['ideal']}")
    lines.append("iota: " + ", ".join(result["iota"]))
    lines.append("pi: " + ", ".join(result["pi"]))
    lines.append("terminal vertices: " + " ".join(result["terminal"]))
    lines.append("K_0 checks:")
    lines.extend(_render_checks(result["k0"]["checks"]))
    return lines


def _render_ktheory(result: dict) -> list[str]:
    gens = " ".join(f"[p[{v}]]" for v in result["k0_generators"])
    return [
        f"K_0 = Z^{result['k0_rank']}  generators: {gens}",
        f"K_1 = Z^{result['k1_rank']}" if result["k1_rank"] else "K_1 = 0",
    ]


def _render_cw(result: dict) -> list[str]:
    lines = [result["summary"], "sinks removed: " + " ".join(result["sinks"])]
    lines.append("checks:")
    lines.extend(_render_checks(result["checks"]))
    return lines


_RENDERERS: dict[str, Callable[[dict], list[str]]] = {
    "classify": _render_classify,
    "hereditary": _render_hereditary,
    "quotient": _render_quotient,
    "stars": _render_stars,
    "split": _render_split,
    "chain": _render_chain,
    "ktheory": _render_ktheory,
    "flag": _render_graph_dict,
    "cw": _render_cw,
}

_HANDLERS = {
    "classify": _cmd_classify,
    "hereditary": _cmd_hereditary,
    "quotient": _cmd_quotient,
    "stars": _cmd_stars,
    "split": _cmd_split,
    "chain": _cmd_chain,
    "ktheory": _cmd_ktheory,
    "flag": _cmd_flag,
    "cw": _cmd_cw,
}


@dataclass(frozen=True)
class Report:
    """Outcome of one command: echoed argv, payload or error, exit status."""

    command: tuple[str, ...]
    ok: bool
    result: dict | None
    error: str | None
    exit_code: int

    def to_json(self) -> dict:
        doc: dict[str, Any] = {"command": list(self.command), "ok": self.ok}
        if self.error is None:
            doc["result"] = self.result
        else:
            doc["error"] = self.error
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"), ensure_ascii=True)

    def render(self) -> str:
        if self.error is not None:
            return f"error: {self.error}"
        lines = _RENDERERS[self.command[0]](self.result)
        return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ampgraph",
        description="Construct and verify splittings of amplified graph algebras.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True, metavar="COMMAND")

    def add(name: str, help_text: str, *, file: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        if file:
            p.add_argument("file", help="graph JSON file")
        p.add_argument("--json", action="store_true", help="emit the report as canonical JSON")
        return p

    add("classify", "report amplified/acyclic flags, sinks and sources")

    p = add("hereditary", "list hereditary vertex sets, or close a given set")
    p.add_argument("--closure", metavar="V1,V2,...", help="hereditary closure of these vertices")

    p = add("quotient", "quotient by a hereditary vertex set")
    p.add_argument("--remove", required=True, metavar="V1,V2,...", help="vertices to remove")

    p = add("stars", "valid star vertices for a splitting at the given sink")
    p.add_argument("--sink", required=True, help="sink vertex")

    p = add("split", "build one split sink-removal extension")
    p.add_argument("--sink", required=True, help="sink vertex to remove")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--star", help="star vertex receiving the sink's class")
    mode.add_argument("--embed", action="store_true",
                      help="use the non-unital embedding instead of a star")
    p.add_argument("--verify", action="store_true", help="include the full checklist")

    p = add("chain", "iterate split removals down to a single vertex")
    p.add_argument("--policy", choices=sorted(_POLICIES), default="first",
                   help="sink/star choice per step (default: first)")

    add("ktheory", "K-groups of an acyclic amplified graph algebra")

    p = add("flag", "flag graph of a tagged A-series diagram", file=False)
    p.add_argument("--rank", type=int, required=True, metavar="N",
                   help=f"rank of the A-series diagram (1..{MAX_RANK})")
    p.add_argument("--tag", required=True, metavar="I,J,...", help="tagged node indices")

    p = add("cw", "skeleton filtration chain summary of a flag graph", file=False)
    p.add_argument("--rank", type=int, required=True, metavar="N",
                   help=f"rank of the A-series diagram (1..{MAX_RANK})")
    p.add_argument("--tag", required=True, metavar="I,J,...", help="tagged node indices")

    return parser


def run_command(argv: list[str]) -> Report:
    """Execute one command line and return its report without printing."""
    command = tuple(argv)
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        ok, result = _HANDLERS[ns.cmd](ns)
    except VerificationFailure as exc:
        return Report(command=command, ok=False, result=None, error=str(exc), exit_code=2)
    except (ValueError, OSError) as exc:
        return Report(command=command, ok=False, result=None, error=str(exc), exit_code=1)
    return Report(command=command, ok=ok, result=result, error=None,
                  exit_code=0 if ok else 2)


def main(argv: list[str] | None = None) -> int:
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        report = run_command(args)
    except SystemExit as exc:
        # argparse exits with its own codes; the contract reserves 2 for
        # verification failures, so every usage problem maps to 1.
        code = exc.code if isinstance(exc.code, int) else 1
        return 0 if code == 0 else 1
    wants_json = "--json" in args
    if wants_json:
        print(report.dumps())
    elif report.error is not None:
        print(report.render(), file=sys.stderr)
    else:
        print(report.render())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
