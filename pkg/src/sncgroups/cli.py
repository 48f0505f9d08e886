"""Command-line front end.

Exit codes:
  0   success
  1   input file could not be parsed
  2   verification failed (not a C-group, not a hypertope, wrong index)
  3   a resource limit was hit (coset space, chamber count)
  4   coset enumeration inconclusive
  64  usage error
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .cgroup import CGroupCandidate, is_c_group_full
from .classify import (FAMILIES, RANK_N_MINUS_1_RANGE, RANK_N_MINUS_2_RANGE, build_family_instance,
                       enumerate_rank_n_minus_1, enumerate_rank_n_minus_2, leaf_orbit_representatives,
                       structural_screen)
from .geometry import (DEFAULT_CHAMBER_LIMIT, ChamberOverflow, CosetGeometry, IndexOverflow,
                       certify_regular_hypertope, incidence_dot)
from .perm import parse_perm_lines
from .presentations import (DEFAULT_COSET_LIMIT, CosetLimitExceeded, certify_presentation,
                            relators_rank_n_minus_1, relators_rank_n_minus_2)
from .repgraph import NoFracture, build_rep_graph, coxeter_diagram, enumerate_trees, fracture_graph

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_VERIFY = 2
EXIT_RESOURCE = 3
EXIT_INCONCLUSIVE = 4
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    rank: str | None = None
    families: list = field(default_factory=lambda: list(FAMILIES))
    chamber_limit: int = DEFAULT_CHAMBER_LIMIT
    coset_limit: int = DEFAULT_COSET_LIMIT
    out: str | None = None
    jobs: int = 1

    def __post_init__(self):
        if self.chamber_limit <= 0 or self.coset_limit <= 0:
            raise UsageError("limits must be positive")
        if self.jobs <= 0:
            raise UsageError("--jobs must be positive")
        bad = [f for f in self.families if f not in FAMILIES]
        if bad:
            raise UsageError(f"unknown family {bad[0]!r}; choose from {','.join(FAMILIES)}")


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def _read_gens(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValueError(f"{path}: {exc.strerror}") from None
    gens = parse_perm_lines(text)
    if not gens:
        raise ValueError(f"{path}: no generators")
    return gens


def cmd_enumerate(cfg: RunConfig) -> int:
    if cfg.rank == "n-1":
        rng = RANK_N_MINUS_1_RANGE
    else:
        rng = RANK_N_MINUS_2_RANGE
    if cfg.n not in rng:
        raise UsageError(f"--n must lie in {rng.start}..{rng.stop - 1} for rank {cfg.rank}")
    if cfg.rank == "n-1":
        res = enumerate_rank_n_minus_1(cfg.n, jobs=cfg.jobs, chamber_limit=cfg.chamber_limit)
    else:
        res = enumerate_rank_n_minus_2(cfg.n, families=cfg.families, jobs=cfg.jobs,
                                       chamber_limit=cfg.chamber_limit)
    _emit(cfg, "".join(_dumps(r.to_json()) + "\n" for r in res.instances))
    sys.stderr.write(_dumps({"summary": res.summary()}) + "\n")
    return EXIT_OK if res.all_verified else EXIT_VERIFY


def cmd_verify(cfg: RunConfig, path: str) -> int:
    gens = _read_gens(path)
    cand = CGroupCandidate(gens)
    rep = certify_regular_hypertope(gens, candidate=cand, chamber_limit=cfg.chamber_limit)
    out = rep.to_json()
    out["order"] = cand.group().order()
    if len(gens) <= 6:
        full = is_c_group_full(cand)
        out["c_group_full"] = full.is_c_group
        if full.witness is not None:
            out["witness"] = dict(out["witness"] or {}, c_group_full=full.witness.to_json())
    _emit(cfg, _dumps(out) + "\n")
    return EXIT_OK if rep.is_c_group and rep.is_regular_hypertope else EXIT_VERIFY


def _present_instance(cfg: RunConfig, args):
    """Generators and presentation chosen by the present subcommand's options."""
    if args.file:
        gens = _read_gens(args.file)
        if args.family:
            return gens, relators_rank_n_minus_2(gens, args.family, supplement=args.supplement)
        g = build_rep_graph(gens)
        if not (g.is_tree() and len(gens) == g.n - 1):
            raise UsageError("generators are not the transpositions of a tree; pass --family")
        return gens, relators_rank_n_minus_1(g)
    if cfg.n is None:
        raise UsageError("present needs a generator file or --n")
    if args.family:
        if cfg.n not in RANK_N_MINUS_2_RANGE:
            raise UsageError(f"--n must lie in {RANK_N_MINUS_2_RANGE.start}..{RANK_N_MINUS_2_RANGE.stop - 1}")
        tails = enumerate_trees(cfg.n - 3)
        tail = tails[_index(args.tree, len(tails))]
        reps = leaf_orbit_representatives(tail)
        attach = reps[0] if args.attach is None else args.attach
        if attach not in tail.leaves():
            raise UsageError(f"--attach {attach} is not a leaf of the tail tree")
        gens = list(build_family_instance(args.family, tail, attach).gens)
        return gens, relators_rank_n_minus_2(gens, args.family, supplement=args.supplement)
    if cfg.n not in RANK_N_MINUS_1_RANGE:
        raise UsageError(f"--n must lie in {RANK_N_MINUS_1_RANGE.start}..{RANK_N_MINUS_1_RANGE.stop - 1}")
    trees = enumerate_trees(cfg.n)
    t = trees[_index(args.tree, len(trees))]
    return t.permutations(), relators_rank_n_minus_1(t)


def _index(k: int, size: int) -> int:
    if not 0 <= k < size:
        raise UsageError(f"--tree must lie in 0..{size - 1}")
    return k


def cmd_present(cfg: RunConfig, args) -> int:
    gens, pres = _present_instance(cfg, args)
    if args.emit:
        Path(args.emit).write_text(pres.to_text())
    try:
        res = certify_presentation(gens, pres, max_cosets=cfg.coset_limit)
    except CosetLimitExceeded as exc:
        _emit(cfg, _dumps({"certified": None, "inconclusive": True, "coset_limit": exc.limit,
                           "relators": len(pres.relators)}) + "\n")
        return EXIT_INCONCLUSIVE
    res["relators"] = len(pres.relators)
    _emit(cfg, _dumps(res) + "\n")
    return EXIT_OK if res["certified"] else EXIT_VERIFY


def cmd_screen(cfg: RunConfig, path: str) -> int:
    gens = _read_gens(path)
    try:
        diag = structural_screen(gens)
    except NoFracture as exc:
        _emit(cfg, _dumps({"ok": False, "no_fracture": list(exc.labels)}) + "\n")
        return EXIT_VERIFY
    _emit(cfg, _dumps(diag.to_json()) + "\n")
    return EXIT_OK if diag.ok else EXIT_VERIFY


def cmd_export_dot(cfg: RunConfig, path: str, what: str) -> int:
    gens = _read_gens(path)
    if what == "graph":
        text = build_rep_graph(gens).to_dot()
    elif what == "diagram":
        text = coxeter_diagram(gens).to_dot()
    elif what == "fracture":
        g = build_rep_graph(gens)
        text = fracture_graph(gens).to_dot(g)
    else:
        cand = CGroupCandidate(gens)
        if cand.rank > 4:
            raise UsageError("incidence export is limited to rank 4")
        subs = {t: cand.parabolic([t]) for t in range(cand.rank)}
        text = incidence_dot(CosetGeometry(cand.group(), subs, check_subgroups=False))
    _emit(cfg, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sncgroups", description="C-groups of high rank for symmetric groups.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--chamber-limit", type=int, default=DEFAULT_CHAMBER_LIMIT)

    e = sub.add_parser("enumerate", help="classify and verify all instances for one n")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--rank", choices=["n-1", "n-2"], required=True)
    e.add_argument("--family", help="comma-separated subset of A,B,C (rank n-2 only)")
    e.add_argument("--jobs", type=int, default=1)
    common(e)

    v = sub.add_parser("verify", help="full report for a generator file")
    v.add_argument("file")
    common(v)

    pr = sub.add_parser("present", help="certify a presentation by coset enumeration")
    pr.add_argument("file", nargs="?", help="generator file")
    pr.add_argument("--n", type=int)
    pr.add_argument("--family", choices=list(FAMILIES))
    pr.add_argument("--tree", type=int, default=0, help="index into the tree (or tail) list")
    pr.add_argument("--attach", type=int, help="tail leaf to attach the head at")
    pr.add_argument("--supplement", action="store_true", help="add the supplementary family relators")
    pr.add_argument("--coset-limit", type=int, default=DEFAULT_COSET_LIMIT)
    pr.add_argument("--emit", help="also write the presentation text here")
    common(pr)

    s = sub.add_parser("screen", help="structural screen of a generator file")
    s.add_argument("file")
    common(s)

    d = sub.add_parser("export-dot", help="DOT rendering of a generator file")
    d.add_argument("file")
    d.add_argument("--what", choices=["graph", "diagram", "fracture", "incidence"], default="graph")
    common(d)
    return p


def _config(args) -> RunConfig:
    fams = list(FAMILIES)
    if args.command == "enumerate" and args.family:
        if args.rank != "n-2":
            raise UsageError("--family applies to rank n-2 only")
        fams = [f.strip() for f in args.family.split(",") if f.strip()]
    return RunConfig(command=args.command, n=getattr(args, "n", None), rank=getattr(args, "rank", None),
                     families=fams, chamber_limit=args.chamber_limit,
                     coset_limit=getattr(args, "coset_limit", DEFAULT_COSET_LIMIT),
                     out=args.out, jobs=getattr(args, "jobs", 1))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "enumerate":
            return cmd_enumerate(cfg)
        if args.command == "verify":
            return cmd_verify(cfg, args.file)
        if args.command == "present":
            return cmd_present(cfg, args)
        if args.command == "screen":
            return cmd_screen(cfg, args.file)
        return cmd_export_dot(cfg, args.file, args.what)
    except UsageError as exc:
        sys.stderr.write(f"sncgroups: usage error: {exc}\n")
        return EXIT_USAGE
    except ValueError as exc:
        sys.stderr.write(f"sncgroups: parse error: {exc}\n")
        return EXIT_PARSE
    except (IndexOverflow, ChamberOverflow) as exc:
        sys.stderr.write(f"sncgroups: resource limit: {exc}\n")
        return EXIT_RESOURCE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
