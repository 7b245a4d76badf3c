"""Command-line interface: build a configuration (G, N, omega), inspect it, verify it."""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from dataclasses import dataclass
from functools import cached_property

from .characters import CharacterTableError, character_table
from .cocycles import theta_conjugation_check, parse_cocycle_spec, theta_restricted_is_2cocycle, InflatedCocycle, verify_3cocycle
from .fusion import Representations, fusion_coefficient, fusion_json, fusion_with_G_module, inner_product
from .groups import (DEFAULT_CAP, GroupError, Subgroup, center, centralizer, is_normal, quotient, subgroup_from,
                     trivial_subgroup, whole_group)
from .mckay import build_graph, verify_theorem
from .polyhedral import BuiltGroup, build, parse_group_spec, recognize
from .qdouble import FULL_MODE_LIMIT, GTQD, check_normal_image, verify_quasihopf

SCHEMA = "gtqd/1"
SUITES = ("cocycle", "conjugation", "quasihopf", "normality", "orthonormality", "theorem")
GRAM_EXHAUSTIVE = 48


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    group: str
    normal: str
    cocycle: str
    output: str
    seed: int
    cap: int

    @cached_property
    def built(self) -> BuiltGroup:
        try:
            return build(parse_group_spec(self.group), cap=self.cap)
        except (ValueError, GroupError) as exc:
            raise UsageError(str(exc)) from None

    @cached_property
    def N(self) -> Subgroup:
        return resolve_normal(self.built, self.normal)

    @cached_property
    def quotient(self):
        return quotient(self.built.group, self.N)

    @cached_property
    def omega(self):
        try:
            return parse_cocycle_spec(self.cocycle, self.quotient.target)
        except ValueError as exc:
            raise UsageError(str(exc)) from None

    @cached_property
    def D(self) -> GTQD:
        return GTQD(self.built.group, self.N, self.omega, quotient_map=self.quotient)

    @cached_property
    def reps(self) -> Representations:
        return Representations(self.D)


def resolve_element(G, token: str) -> int:
    """An element given by its label, by g<index>, or by a word like x2y."""
    token = token.strip()
    if token in G.labels:
        return G.labels.index(token)
    m = re.fullmatch(r"g(\d+)", token)
    if m and int(m.group(1)) < G.order:
        return int(m.group(1))
    names = "xyzuvw"
    gens = G.gens or ()
    if not re.fullmatch(r"(?:[a-z]\d*)+", token):
        raise UsageError(f"cannot parse element {token!r}")
    out = 0
    for letter, power in re.findall(r"([a-z])(\d*)", token):
        i = names.find(letter)
        if i < 0 or i >= len(gens):
            raise UsageError(f"unknown generator {letter!r} in {token!r}")
        out = int(G.mul[out, G.power(gens[i], int(power or 1))])
    return out


def resolve_normal(built: BuiltGroup, text: str) -> Subgroup:
    """trivial | center (G meet the center {+-I} of SU2) | full | gens:<labels>."""
    G = built.group
    text = text.strip()
    if text == "trivial":
        return trivial_subgroup(G)
    if text == "full":
        return whole_group(G)
    if text == "center":
        return subgroup_from(G, [built.involution]) if built.involution is not None else trivial_subgroup(G)
    if text.startswith("gens:"):
        elems = [resolve_element(G, t) for t in text[5:].split(",") if t.strip()]
        N = subgroup_from(G, elems)
        if not is_normal(G, N):
            raise UsageError(f"subgroup generated by {text[5:]} is not normal")
        return N
    raise UsageError(f"bad normal subgroup {text!r}; expected trivial, center, full or gens:<labels>")


# -- output helpers -----------------------------------------------------------------

def _emit(cfg: RunConfig, payload: dict, text_lines: list[str]) -> None:
    if cfg.output == "json":
        payload = {"schema": SCHEMA, **payload}
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print("\n".join(text_lines))


def _header(cfg: RunConfig) -> dict:
    return {"group": cfg.group, "normal": cfg.normal, "cocycle": cfg.cocycle,
            "order": cfg.built.group.order, "normal_order": cfg.N.order}


def _kind(H) -> str:
    try:
        return recognize(H).description
    except GroupError:
        return f"order {H.order}"


# -- commands ---------------------------------------------------------------------

def cmd_group_info(cfg: RunConfig, args) -> int:
    B = cfg.built
    G = B.group
    q = cfg.quotient
    Z = center(G)
    cls = []
    for c in G.classes:
        cen = centralizer(G, quotient(G, trivial_subgroup(G)), c.representative)
        cls.append({"rep": G.labels[c.representative], "size": c.size,
                    "order": int(G.element_orders[c.representative]), "centralizer": _kind(cen)})
    qcls = []
    for c in q.target.classes:
        st = centralizer(G, q, c.representative)
        qcls.append({"rep": q.target.labels[c.representative], "size": c.size,
                     "order": int(q.target.element_orders[c.representative]), "stabilizer": _kind(st),
                     "stabilizer_order": st.order})
    payload = {**_header(cfg), "kind": "group-info", "description": B.spec.description,
               "center": [G.labels[z] for z in Z.members], "normal": [G.labels[n] for n in cfg.N.members],
               "classes": cls, "quotient_order": q.target.order, "quotient_classes": qcls}
    lines = [f"{B.spec.description}: order {G.order}, {len(G.classes)} classes",
             f"center: {{{', '.join(payload['center'])}}}",
             f"N = {{{', '.join(payload['normal'])}}}, |G/N| = {q.target.order}",
             "classes of G (rep, size, order, centralizer):"]
    lines += [f"  {c['rep']:>8}  {c['size']:>3}  {c['order']:>3}  {c['centralizer']}" for c in cls]
    lines.append("classes of G/N (rep, size, order, stabilizer in G):")
    lines += [f"  {c['rep']:>8}  {c['size']:>3}  {c['order']:>3}  {c['stabilizer']}" for c in qcls]
    _emit(cfg, payload, lines)
    return 0


def cmd_chartab(cfg: RunConfig, args) -> int:
    G = cfg.built.group
    if args.stabilizer is None:
        T = character_table(G)
        classes = [G.labels[c.representative] for c in T.classes]
        rows = [[str(v) for v in r] for r in T.table]
        payload = {**_header(cfg), "kind": "chartab", "stabilizer": None, "classes": classes, "rows": rows,
                   "degrees": list(T.degrees)}
    else:
        Gb = cfg.quotient.target
        if not 0 <= args.stabilizer < len(Gb.classes):
            raise UsageError(f"--stabilizer must be a class index below {len(Gb.classes)}")
        f = Gb.classes[args.stabilizer].representative
        C = centralizer(G, cfg.quotient, f)
        TT = cfg.reps.classes[args.stabilizer].table
        classes = [G.labels[C.members[c.representative]] for c in TT.base.classes]
        rows = [[str(TT.rows[r][c.representative]) for c in TT.base.classes] for r in range(len(TT.rows))]
        payload = {**_header(cfg), "kind": "chartab", "stabilizer": args.stabilizer, "stabilizer_type": _kind(C),
                   "classes": classes, "rows": rows, "degrees": list(TT.degrees)}
    lines = ["classes: " + "  ".join(payload["classes"])]
    lines += ["  ".join(r) for r in payload["rows"]]
    _emit(cfg, payload, lines)
    return 0


def cmd_irreps(cfg: RunConfig, args) -> int:
    R = cfg.reps
    G, Gb = cfg.built.group, cfg.quotient.target
    per_class = []
    for cd in R.classes:
        per_class.append({"class_index": cd.index, "rep": Gb.labels[cd.rep], "size": len(cd.members),
                          "stabilizer": _kind(cd.stabilizer), "irreps": len(cd.table.rows),
                          "degrees": list(cd.table.degrees)})
    labels = [{"index": i, "class_index": l.class_index, "stab_char_index": l.stab_char_index,
               "degree": l.degree, "dimension": l.dimension} for i, l in enumerate(R.labels)]
    payload = {**_header(cfg), "kind": "irreps", "total": len(R.labels), "classes": per_class, "labels": labels,
               "dimension_check": sum(l.dimension ** 2 for l in R.labels) == cfg.D.dim}
    lines = ["class rep | stabilizer | # irreps | degrees"]
    lines += [f"{c['rep']:>9} | {c['stabilizer']} | {c['irreps']} | {c['degrees']}" for c in per_class]
    lines.append(f"Total # irreps = {len(R.labels)}")
    _emit(cfg, payload, lines)
    return 0


def cmd_fusion(cfg: RunConfig, args) -> int:
    R = cfg.reps
    n = len(R.labels)
    W = cfg.built.W.values
    entries = []
    if args.canonical:
        if not args.full and len(args.indices) != 2:
            raise UsageError("fusion --canonical needs V U indices, or --full")
        pairs = [(v, u) for v in range(n) for u in range(n)] if args.full else [tuple(args.indices)]
        for v, u in pairs:
            _check_index(v, n), _check_index(u, n)
            entries.append((v, "W", u, fusion_with_G_module(R, R.labels[v], W, R.labels[u])))
    else:
        if args.full:
            triples = [(a, b, c) for a in range(n) for b in range(n) for c in range(n)]
        elif len(args.indices) == 3:
            triples = [tuple(args.indices)]
        else:
            raise UsageError("fusion needs V W U indices, or --full")
        ch = R.characters
        for a, b, c in triples:
            for i in (a, b, c):
                _check_index(i, n)
            entries.append((a, b, c, fusion_coefficient(ch[a], ch[b], ch[c])))
    payload = {**_header(cfg), **fusion_json(R, entries, "canonical" if args.canonical else None)}
    lines = [f"N({v}, {w}, {u}) = {m}" for v, w, u, m in entries if m or not args.full]
    _emit(cfg, payload, lines)
    return 0


def _check_index(i: int, n: int) -> None:
    if not 0 <= i < n:
        raise UsageError(f"label index {i} out of range 0..{n - 1}")


def cmd_mckay(cfg: RunConfig, args) -> int:
    g = build_graph(cfg.D, cfg.built.W.values, cfg.reps)
    if cfg.output == "dot":
        sys.stdout.write(g.to_dot())
        return 0
    payload = {**_header(cfg), **g.to_json()}
    payload.pop("schema")
    lines = [f"{len(g.nodes)} nodes, {len(g.components)} components"]
    for comp, c, t in zip(g.components, g.component_class, g.component_type):
        lines.append(f"  class {g._class_name(c)}: {t if t else 'unrecognized'} on {len(comp)} nodes")
    _emit(cfg, payload, lines)
    return 0


# -- verification suites ------------------------------------------------------------

def _suite_cocycle(cfg):
    ok, wit = verify_3cocycle(cfg.omega, seed=cfg.seed)
    out = [("3-cocycle identity", ok, wit)]
    w = InflatedCocycle(cfg.omega, cfg.quotient)
    for c in cfg.quotient.target.classes:
        ok, wit = theta_restricted_is_2cocycle(w, c.representative)
        out.append((f"theta 2-cocycle on stabilizer of class {c.representative}", ok, wit))
    return out


def _suite_conjugation(cfg):
    ok, wit = theta_conjugation_check(cfg.quotient, cfg.omega)
    return [("conjugation identity for theta", ok, wit)]


def _suite_quasihopf(cfg):
    mode = "full" if cfg.D.dim <= FULL_MODE_LIMIT else "sampled"
    r = verify_quasihopf(cfg.D, mode, seed=cfg.seed)
    return [(f"{x.name} ({mode}, {x.checked} instances)", x.passed, x.witness) for x in r.results]


def _suite_normality(cfg):
    G = cfg.built.group
    closed, wit = check_normal_image(G, cfg.N, cfg.omega)
    central = set(cfg.N.members) <= set(center(G).members)
    note = "normal as subalgebra: N is central" if closed else "not normal as subalgebra: N ⊄ Z(G)"
    return [(f"image closed under adjoint actions iff N central ({note})", closed == central,
             None if closed == central else wit)]


def _suite_orthonormality(cfg):
    R = cfg.reps
    ch = R.characters
    n = len(ch)
    if cfg.built.group.order <= GRAM_EXHAUSTIVE:
        idx = list(range(n))
        name = f"Gram matrix is the identity ({n}x{n})"
    else:
        idx = sorted(random.Random(cfg.seed).sample(range(n), min(10, n)))
        name = f"sub-Gram matrix is the identity ({len(idx)}x{len(idx)}, seed {cfg.seed})"
    for i in idx:
        for j in idx:
            v = inner_product(ch[i], ch[j])
            if v != (1 if i == j else 0):
                return [(name, False, (i, j, str(v)))]
    return [(name, True, None)]


def _suite_theorem(cfg):
    r = verify_theorem(cfg.D, cfg.built.W.values, cfg.reps)
    tag = "" if r.asserted else " [reported only, |N| > 2]"
    return [(c.name + tag, c.passed or not r.asserted, c.witness) for c in r.clauses]


_SUITE_FNS = {"cocycle": _suite_cocycle, "conjugation": _suite_conjugation, "quasihopf": _suite_quasihopf,
              "normality": _suite_normality, "orthonormality": _suite_orthonormality, "theorem": _suite_theorem}


def cmd_verify(cfg: RunConfig, args) -> int:
    suites = SUITES if args.suite == "all" else (args.suite,)
    results = []
    for s in suites:
        for name, ok, wit in _SUITE_FNS[s](cfg):
            results.append({"suite": s, "check": name, "passed": bool(ok),
                            "witness": None if wit is None else str(wit)})
    passed = all(r["passed"] for r in results)
    payload = {**_header(cfg), "kind": "verify", "passed": passed, "results": results}
    lines = [f"[{'PASS' if r['passed'] else 'FAIL'}] {r['suite']}: {r['check']}"
             + (f"  witness={r['witness']}" if r["witness"] and not r["passed"] else "") for r in results]
    lines.append("all checks passed" if passed else "verification FAILED")
    _emit(cfg, payload, lines)
    return 0 if passed else 1


# -- parser ------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--group", default=d("bo"), help="cyclic:m | bd:n | bt | bo | bi (default bo)")
    p.add_argument("--normal", default=d("center"), help="trivial | center | full | gens:<labels> (default center)")
    p.add_argument("--cocycle", default=d("trivial"), help="trivial | cyclic:q (default trivial)")
    p.add_argument("--output", default=d("text"), choices=("text", "json", "dot"))
    p.add_argument("--seed", type=int, default=d(0), help="seed for sampled verification")
    p.add_argument("--cap", type=int, default=d(DEFAULT_CAP), help="bound on generated group order")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gtqd", description="Generalized twisted quantum doubles and orbifold McKay graphs")
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        _common(p, suppress=True)
        p.set_defaults(func=fn)
        return p

    add("group-info", cmd_group_info, "orders, classes and stabilizers")
    p = add("chartab", cmd_chartab, "character table of G or of a stabilizer")
    p.add_argument("--stabilizer", type=int, default=None, metavar="CLASS",
                   help="index of a class of G/N; prints the projective table of its stabilizer")
    add("irreps", cmd_irreps, "simple modules and per-class counts")
    p = add("fusion", cmd_fusion, "fusion coefficients")
    p.add_argument("indices", type=int, nargs="*", help="V W U label indices (V U with --canonical)")
    p.add_argument("--full", action="store_true", help="all triples (all pairs with --canonical)")
    p.add_argument("--canonical", action="store_true", help="fuse with the canonical 2-dimensional module")
    add("mckay", cmd_mckay, "orbifold McKay graph")
    p = add("verify", cmd_verify, "run verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(args.group, args.normal, args.cocycle, args.output, args.seed, args.cap)
    if cfg.output == "dot" and args.command != "mckay":
        print("gtqd: error: --output dot is only available for mckay", file=sys.stderr)
        return 2
    try:
        return args.func(cfg, args)
    except (UsageError, GroupError) as exc:
        print(f"gtqd: error: {exc}", file=sys.stderr)
        return 2
    except CharacterTableError as exc:
        print(f"gtqd: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
