"""Command-line front end.

    qplex <group> <command> [options]

Exit status is 0 when every check in the run report passes, 1 when one
fails and 2 for usage or input errors.  Randomized commands print the seed
they ran with.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import __version__
from .docio import (
    Document,
    DocumentError,
    decode_complex,
    fiducial_doc,
    fiducial_from,
    load_document,
    operator_doc,
    points_doc,
    prob_doc,
    save_document,
    sic_system_doc,
    system_from,
)
from .geometry import (
    find_mmd_sets,
    is_germ,
    make_geometry,
    polar_membership,
    polar_point,
    stem_membership,
)
from .germlab import (
    EigProfile,
    generalized_params,
    grow_sorted_qplex,
    sample_constraint_variety,
    spectra_lemma_check,
)
from .linalg import check_density, haar_unitary, random_densities
from .rep import (
    DimensionParams,
    MeasurementMatrix,
    evolve,
    prob_to_operator,
    state_to_prob,
    urgleichung,
)
from .sic import (
    FiducialSearchError,
    build_quasi_sic,
    find_sic_fiducial,
    sic_defect,
    sic_from_fiducial,
    standard_sic,
    verify_sic,
)
from .symmetry import (
    StretchedMatrix,
    group_closure_check,
    stretch,
    stretched_from_antiunitary,
    stretched_from_unitary,
    verify_stretched,
)


class InputError(ValueError):
    pass


@dataclass
class RunReport:
    command: str
    checks: dict[str, bool] = field(default_factory=dict)
    summaries: dict[str, object] = field(default_factory=dict)
    tolerances: dict[str, float] = field(default_factory=dict)
    seed: int | None = None
    input_digest: str = ""
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_document(self, dim=None) -> Document:
        data = {
            "command": self.command,
            "checks": dict(self.checks),
            "summaries": _plain(self.summaries),
            "passed": self.passed,
            "input_digest": self.input_digest,
            "wall_time": self.wall_time,
        }
        meta = {"tolerances": dict(self.tolerances)}
        if self.seed is not None:
            meta["seed"] = self.seed
        return Document("report", dim, data, meta)


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, np.generic):
        return x.item()
    return x


class _Context:
    def __init__(self, args):
        self.args = args
        self.inputs: list[bytes] = []
        self.report = RunReport(args.command_name)
        self.dim = args.dim

    def load(self, path) -> Document:
        doc = load_document(path)
        with open(path, "rb") as fh:
            self.inputs.append(fh.read())
        if self.dim is None and doc.dim is not None:
            self.dim = doc.dim
        elif doc.dim is not None and self.dim is not None and doc.dim != self.dim:
            raise InputError(f"{path}: document has dim {doc.dim}, --dim is {self.dim}")
        if self.args.verify and doc.kind in ("sic_system", "fiducial"):
            self._verify_loaded(doc)
        return doc

    def _verify_loaded(self, doc):
        if doc.kind == "fiducial":
            defect = sic_defect(fiducial_from(doc))
            self.check("loaded_fiducial_defect", defect < 1e-8, defect=defect)
            return
        system = system_from(doc)
        if doc.data.get("quasi"):
            gram = system.gram()
            d = system.dim
            target = (d * np.eye(d * d) + 1) / (d + 1)
            dev = float(np.abs(gram - target).max())
            self.check("loaded_quasi_gram", dev < 1e-10, gram_dev=dev)
            return
        rep = verify_sic(system)
        self.check("loaded_sic_valid", rep.passed, overlap_dev=rep.overlap_dev)

    def need_dim(self) -> int:
        if self.dim is None:
            raise InputError("--dim is required (or an input document carrying dim)")
        if self.dim < 2:
            raise InputError(f"--dim must be at least 2, got {self.dim}")
        return self.dim

    def system(self):
        if self.args.sic:
            return system_from(self.load(self.args.sic))
        return standard_sic(self.need_dim())

    def seed(self) -> int:
        s = self.args.seed
        self.report.seed = s
        self.say(f"seed = {s}")
        return s

    def tol(self, default: float) -> float:
        t = default if self.args.tol is None else self.args.tol
        self.report.tolerances["tol"] = t
        return t

    def check(self, name: str, ok: bool, **numbers):
        self.report.checks[name] = bool(ok)
        self.report.summaries.update(numbers)

    def summary(self, **numbers):
        self.report.summaries.update(numbers)

    def write(self, doc: Document):
        if self.args.out:
            doc.meta.setdefault("tolerances", dict(self.report.tolerances))
            if self.report.seed is not None:
                doc.meta.setdefault("seed", self.report.seed)
            save_document(doc, self.args.out)
            self.say(f"wrote {self.args.out}")

    def say(self, msg: str):
        if not self.args.quiet:
            print(msg)


# sic ---------------------------------------------------------------------------

def cmd_sic_find(ctx: _Context):
    d = ctx.need_dim()
    seed = ctx.seed()
    tol = ctx.tol(1e-16)
    restarts = ctx.args.max_iter or 50
    try:
        fid = find_sic_fiducial(d, seed=seed, tol=tol, max_restarts=restarts)
    except FiducialSearchError as exc:
        ctx.check("converged", False, best_defect=exc.best_defect, restarts=restarts)
        return
    defect = sic_defect(fid)
    ctx.check("converged", defect < tol, defect=defect)
    ctx.write(fiducial_doc(fid))


def cmd_sic_verify(ctx: _Context):
    tol = ctx.tol(1e-8)
    if ctx.args.inp:
        doc = ctx.load(ctx.args.inp)
        if doc.kind == "fiducial":
            system = sic_from_fiducial(fiducial_from(doc), tol=np.inf)
        elif doc.kind == "sic_system":
            system = system_from(doc)
        else:
            raise InputError(f"sic verify needs a fiducial or sic_system document, got {doc.kind!r}")
    else:
        system = standard_sic(ctx.need_dim())
    rep = verify_sic(system, tol)
    for name in ("trace_dev", "idempotency_dev", "overlap_dev", "resolution_dev"):
        dev = getattr(rep, name)
        ctx.check(name.replace("_dev", ""), dev < tol, **{name: dev})
    ctx.write(sic_system_doc(system))


def cmd_sic_quasi(ctx: _Context):
    d = ctx.need_dim()
    tol = ctx.tol(1e-10)
    q = build_quasi_sic(d)
    tr = float(np.abs(np.trace(q.operators, axis1=1, axis2=2) - 1).max())
    target = (d * np.eye(d * d) + 1) / (d + 1)
    gram = float(np.abs(q.gram() - target).max())
    ctx.check("unit_trace", tr < tol, trace_dev=tr)
    ctx.check("sic_gram", gram < tol, gram_dev=gram)
    eig = np.linalg.eigvalsh(q.operators)
    ctx.summary(min_eigenvalue=float(eig.min()), non_psd_operators=int((eig[:, 0] < -1e-10).sum()))
    ctx.write(sic_system_doc(q, quasi=True))


# rep ---------------------------------------------------------------------------

def _prob_input(ctx, path) -> np.ndarray:
    doc = ctx.load(path)
    if doc.kind == "prob_vector":
        return np.asarray(doc.data["p"], float)
    if doc.kind == "point_set":
        return np.asarray(doc.data["points"], float)
    raise InputError(f"{path}: expected a prob_vector or point_set document, got {doc.kind!r}")


def _single_input(ctx, path) -> np.ndarray:
    p = _prob_input(ctx, path)
    if p.ndim == 2 and len(p) == 1:
        p = p[0]
    if p.ndim != 1:
        raise InputError(f"{path}: expected a single vector, got {len(p)} points")
    return p


def cmd_rep_to_prob(ctx: _Context):
    tol = ctx.tol(1e-10)
    if ctx.args.inp:
        doc = ctx.load(ctx.args.inp)
        if doc.kind != "operator":
            raise InputError(f"rep to-prob needs an operator document, got {doc.kind!r}")
        rho = decode_complex(doc.data["matrix"], "data.matrix")
    else:
        d = ctx.need_dim()
        rho = random_densities(d, ctx.args.rank or d, ctx.args.count, ctx.seed())
        if ctx.args.count == 1:
            rho = rho[0]
    single = rho.ndim == 2
    stack = rho[None] if single else rho
    for k, r in enumerate(stack):
        try:
            check_density(r, 1e-10)
        except ValueError as exc:
            raise InputError(f"operator {k}: {exc}") from None
    system = ctx.system()
    p = state_to_prob(stack, system)
    err = float(np.abs(prob_to_operator(p, system) - stack).max())
    ctx.check("round_trip", err < tol, reconstruction_error=err)
    d = system.dim
    ctx.write(prob_doc(p[0], d) if single else points_doc(p, d))


def cmd_rep_to_op(ctx: _Context):
    p = _prob_input(ctx, ctx.args.inp)
    system = ctx.system()
    ops = prob_to_operator(p, system)
    ops2 = ops[None] if ops.ndim == 2 else ops
    eig = np.linalg.eigvalsh(0.5 * (ops2 + np.conj(np.swapaxes(ops2, 1, 2))))
    lo = float(eig[:, 0].min())
    ctx.check("positive", lo >= -ctx.tol(1e-10), min_eigenvalue=lo,
              non_psd=int((eig[:, 0] < -ctx.tol(1e-10)).sum()))
    ctx.write(operator_doc(ops, system.dim))


def cmd_rep_urgleichung(ctx: _Context):
    tol = ctx.tol(1e-10)
    p = _prob_input(ctx, ctx.args.inp)
    mdoc = ctx.load(ctx.args.measurement)
    if mdoc.kind != "measurement":
        raise InputError(f"{ctx.args.measurement}: expected a measurement document, got {mdoc.kind!r}")
    d = ctx.need_dim()
    r = MeasurementMatrix(mdoc.data["r"])
    res = urgleichung(p, r, DimensionParams(d), tol)
    ctx.check("measurement_valid", r.is_valid)
    ctx.check("consistent", res.consistent, q=res.q, min_q=float(np.min(res.q)))
    ctx.write(points_doc(res.q, None))


def cmd_rep_evolve(ctx: _Context):
    tol = ctx.tol(1e-12)
    p = _prob_input(ctx, ctx.args.inp)
    system = ctx.system()
    u = haar_unitary(system.dim, ctx.seed())
    q = evolve(p, u, system)
    rho = prob_to_operator(p, system)
    direct = state_to_prob(u @ rho @ u.conj().T, system)
    err = float(np.abs(q - direct).max())
    ctx.check("matches_conjugation", err < tol, conjugation_error=err)
    ctx.write(prob_doc(q, system.dim) if q.ndim == 1 else points_doc(q, system.dim))


# geom --------------------------------------------------------------------------

def cmd_geom_check_germ(ctx: _Context):
    pts = np.atleast_2d(_prob_input(ctx, ctx.args.inp))
    params = DimensionParams(ctx.need_dim())
    rep = is_germ(pts, params, ctx.tol(1e-12))
    ctx.check("germ", rep.passed, min_inner=rep.min_inner, max_inner=rep.max_inner,
              violations=len(rep.violations), n_points=rep.n_points)


def cmd_geom_polar(ctx: _Context):
    u = _single_input(ctx, ctx.args.inp)
    params = DimensionParams(ctx.need_dim())
    tol = ctx.tol(1e-12)
    if ctx.args.set:
        pts = _prob_input(ctx, ctx.args.set)
        v = polar_membership(u, pts, params, tol)
        ctx.check("in_polar", v.member, min_gap=v.min_gap, worst_index=v.worst_index)
        return
    q = polar_point(u, params)
    back = polar_point(q, params)
    err = float(np.abs(back - u).max())
    ctx.check("involution", err < max(tol, 1e-12), involution_error=err, polar_point=q)
    ctx.write(points_doc(q, params.d))


def cmd_geom_mmd(ctx: _Context):
    pts = np.atleast_2d(_prob_input(ctx, ctx.args.inp))
    params = DimensionParams(ctx.need_dim())
    sets = find_mmd_sets(pts, params, ctx.tol(1e-8))
    largest = max((len(s) for s in sets), default=0)
    ctx.check("size_bound", largest <= params.m_max, largest=largest, sets=sets)


def cmd_geom_stem(ctx: _Context):
    p = _single_input(ctx, ctx.args.inp)
    geom = make_geometry(DimensionParams(ctx.need_dim()))
    v = stem_membership(p, geom, ctx.tol(1e-8), ctx.args.max_iter or 500)
    ctx.check("member", v.member, status=v.status, residual=v.residual, lam=v.lam)


# sym ---------------------------------------------------------------------------

def _symmetry_checks(ctx, R, params):
    rep = verify_stretched(R, params, ctx.tol(1e-9))
    ctx.check("orthogonal", rep.orthogonal, orthogonality_defect=rep.orthogonality_defect,
              barycenter_defect=rep.barycenter_defect)
    ctx.check("entry_bound", not rep.bound_violations, min_entry=rep.min_entry)
    ctx.check("row_col_sums", max(rep.row_sum_defect, rep.col_sum_defect) <= rep.tol,
              row_sum_defect=rep.row_sum_defect, col_sum_defect=rep.col_sum_defect)
    ctx.check("regular_simplex", rep.regular_simplex, vertex_norm_defect=rep.vertex_norm_defect,
              regularity_defect=rep.regularity_defect)


def _stretched_doc(R: StretchedMatrix, d) -> Document:
    return Document("stretched_matrix", d, {"R": R.R.tolist()})


def cmd_sym_stretch(ctx: _Context):
    doc = ctx.load(ctx.args.inp)
    if doc.kind != "measurement":
        raise InputError(f"sym stretch needs a measurement document, got {doc.kind!r}")
    params = DimensionParams(ctx.need_dim())
    R = stretch(MeasurementMatrix(doc.data["r"]), params)
    _symmetry_checks(ctx, R, params)
    ctx.write(_stretched_doc(R, params.d))


def cmd_sym_from_unitary(ctx: _Context):
    system = ctx.system()
    params = DimensionParams(system.dim)
    u = haar_unitary(system.dim, ctx.seed())
    build = stretched_from_antiunitary if ctx.args.anti else stretched_from_unitary
    R = build(u, system, params)
    _symmetry_checks(ctx, R, params)
    ctx.write(_stretched_doc(R, params.d))


def cmd_sym_closure(ctx: _Context):
    seed = ctx.seed()
    if ctx.args.inp:
        mats = []
        for path in ctx.args.inp:
            doc = ctx.load(path)
            if doc.kind != "stretched_matrix":
                raise InputError(f"{path}: expected a stretched_matrix document, got {doc.kind!r}")
            mats.append(StretchedMatrix(doc.data["R"]))
        params = DimensionParams(ctx.need_dim())
    else:
        system = ctx.system()
        params = DimensionParams(system.dim)
        rngs = np.random.SeedSequence(seed).spawn(ctx.args.n_unitaries)
        mats = [stretched_from_unitary(haar_unitary(system.dim, np.random.default_rng(s)), system, params)
                for s in rngs]
    rep = group_closure_check(mats, params, ctx.args.n_products, seed, tol=ctx.tol(1e-9))
    ctx.check("inputs_stochastic", not rep.rejected_inputs, rejected_inputs=rep.rejected_inputs)
    ctx.check("products_stochastic", not rep.failures, n_products=rep.n_products,
              failures=len(rep.failures), worst_orthogonality=rep.worst_orthogonality,
              worst_min_entry=rep.worst_min_entry)


# germ --------------------------------------------------------------------------

def cmd_germ_grow(ctx: _Context):
    d = ctx.need_dim()
    seed = ctx.seed()
    tol = ctx.tol(0.0)
    t0 = time.perf_counter()
    state = grow_sorted_qplex(d, ctx.args.n_candidates, seed, tol)
    elapsed = time.perf_counter() - t0
    params = DimensionParams(d)
    rep = is_germ(state.accepted, params, max(tol, 1e-12))
    eig = np.linalg.eigvalsh(prob_to_operator(state.accepted.points, standard_sic(d)))
    ctx.check("germ", rep.passed, accepted=len(state.accepted), rejected=state.rejected,
              regions_visited=len(state.region_order), regions_total=state.n_regions_total,
              growth_seconds=elapsed)
    ctx.summary(non_psd_points=int((eig[:, 0] < -1e-10).sum()), min_eigenvalue=float(eig.min()))
    ctx.write(points_doc(state.accepted.points, d))


def cmd_germ_lemma(ctx: _Context):
    tol = ctx.tol(1e-12)
    if ctx.args.values:
        v = spectra_lemma_check(EigProfile(ctx.args.values), tol)
        ctx.check("lemma", v.holds, product=v.product, equality=v.equality, family=v.family)
        return
    d = ctx.need_dim()
    lam = sample_constraint_variety(d, ctx.args.count, ctx.seed())
    up = np.sort(lam, axis=1)
    prod = np.einsum("ij,ij->i", up, up[:, ::-1])
    ctx.check("lemma", bool(prod.max() <= tol), max_product=float(prod.max()), samples=len(lam))


def cmd_params(ctx: _Context):
    a = ctx.args
    if a.N is not None or a.alpha is not None:
        if a.N is None or a.alpha is None:
            raise InputError("give both --N and --alpha, or --dim")
        g = generalized_params(a.N, a.alpha)
    else:
        d = ctx.need_dim()
        g = generalized_params(d * d, d + 1)
    vals = {"N": g.N, "alpha": g.alpha, "beta": g.beta, "L": g.L, "U": g.U, "m_max": g.m_max,
            "bounds_doubled": g.bounds_doubled, "quantum_point": g.quantum_point,
            "m_max_integral": g.m_max_integral}
    ctx.summary(**vals)
    ctx.write(Document("params", g.d, vals))


COMMANDS: dict[tuple[str, str | None], Callable[[_Context], None]] = {
    ("sic", "find"): cmd_sic_find,
    ("sic", "verify"): cmd_sic_verify,
    ("sic", "quasi"): cmd_sic_quasi,
    ("rep", "to-prob"): cmd_rep_to_prob,
    ("rep", "to-op"): cmd_rep_to_op,
    ("rep", "urgleichung"): cmd_rep_urgleichung,
    ("rep", "evolve"): cmd_rep_evolve,
    ("geom", "check-germ"): cmd_geom_check_germ,
    ("geom", "polar"): cmd_geom_polar,
    ("geom", "mmd"): cmd_geom_mmd,
    ("geom", "stem"): cmd_geom_stem,
    ("sym", "stretch"): cmd_sym_stretch,
    ("sym", "from-unitary"): cmd_sym_from_unitary,
    ("sym", "closure"): cmd_sym_closure,
    ("germ", "grow"): cmd_germ_grow,
    ("germ", "lemma"): cmd_germ_lemma,
    ("params", None): cmd_params,
}


def _global_flags() -> argparse.ArgumentParser:
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--dim", type=int, help="Hilbert-space dimension d")
    g.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    g.add_argument("--tol", type=float, help="check tolerance (command-specific default)")
    g.add_argument("--max-iter", type=int, help="restarts for sic find, iterations for geom stem")
    g.add_argument("--out", help="write the command's main result here")
    g.add_argument("--report", help="write the run report as a document here")
    g.add_argument("--verify", action="store_true", help="verify SIC documents on load")
    g.add_argument("--quiet", action="store_true", help="print nothing on success")
    g.add_argument("--sic", help="sic_system document to use instead of the built-in SIC")
    return g


def build_parser() -> argparse.ArgumentParser:
    parent = _global_flags()
    top = argparse.ArgumentParser(prog="qplex", description="SIC representation and qplex toolkit")
    top.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    groups = top.add_subparsers(dest="group", required=True, metavar="GROUP")

    def leaf(sub, name, help_):
        p = sub.add_parser(name, parents=[parent], help=help_)
        return p

    sic = groups.add_parser("sic", help="SIC construction and checks").add_subparsers(
        dest="cmd", required=True, metavar="COMMAND")
    leaf(sic, "find", "search for a Weyl-Heisenberg fiducial")
    leaf(sic, "verify", "check the SIC defining relations").add_argument("--in", dest="inp")
    leaf(sic, "quasi", "build a quasi-SIC from a regular simplex")

    rep = groups.add_parser("rep", help="probability representation").add_subparsers(
        dest="cmd", required=True, metavar="COMMAND")
    p = leaf(rep, "to-prob", "density operator(s) to probability vector(s)")
    p.add_argument("--in", dest="inp", help="operator document; omit to sample random states")
    p.add_argument("--rank", type=int, help="rank of sampled states (default d)")
    p.add_argument("--count", type=int, default=1, help="number of sampled states")
    leaf(rep, "to-op", "probability vector(s) to operator(s)").add_argument("--in", dest="inp", required=True)
    p = leaf(rep, "urgleichung", "apply the urgleichung to a measurement")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--measurement", required=True)
    leaf(rep, "evolve", "evolve under a Haar-random unitary").add_argument("--in", dest="inp", required=True)

    geom = groups.add_parser("geom", help="qplex geometry").add_subparsers(
        dest="cmd", required=True, metavar="COMMAND")
    leaf(geom, "check-germ", "pairwise consistency check").add_argument("--in", dest="inp", required=True)
    p = leaf(geom, "polar", "polar point, or polar membership with --set")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--set", help="point_set document")
    leaf(geom, "mmd", "mutually maximally distant subsets").add_argument("--in", dest="inp", required=True)
    leaf(geom, "stem", "principal stem membership").add_argument("--in", dest="inp", required=True)

    sym = groups.add_parser("sym", help="symmetries").add_subparsers(
        dest="cmd", required=True, metavar="COMMAND")
    leaf(sym, "stretch", "stretch a measurement matrix and check it").add_argument("--in", dest="inp", required=True)
    leaf(sym, "from-unitary", "transfer matrix of a Haar-random unitary").add_argument(
        "--anti", action="store_true", help="compose with complex conjugation")
    p = leaf(sym, "closure", "random products of transfer matrices")
    p.add_argument("--in", dest="inp", nargs="*", help="stretched_matrix documents")
    p.add_argument("--n-unitaries", type=int, default=20)
    p.add_argument("--n-products", type=int, default=100)

    germ = groups.add_parser("germ", help="germ constructions").add_subparsers(
        dest="cmd", required=True, metavar="COMMAND")
    leaf(germ, "grow", "grow a germ through sorted regions").add_argument(
        "--n-candidates", type=int, default=10_000)
    p = leaf(germ, "lemma", "eigenvalue lemma on samples or given values")
    p.add_argument("--values", type=float, nargs="+")
    p.add_argument("--count", type=int, default=100_000)

    p = groups.add_parser("params", parents=[parent], help="urgleichung constants")
    p.add_argument("--N", type=int)
    p.add_argument("--alpha", type=float)
    return top


def _digest(ctx: _Context) -> str:
    h = hashlib.sha256()
    for blob in ctx.inputs:
        h.update(hashlib.sha256(blob).digest())
    opts = {k: v for k, v in sorted(vars(ctx.args).items()) if k not in ("out", "report", "quiet")}
    h.update(json.dumps(opts, sort_keys=True, default=str).encode())
    return h.hexdigest()


def dispatch(argv=None) -> tuple[int, RunReport | None]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None
    key = (args.group, getattr(args, "cmd", None))
    args.command_name = " ".join(k for k in key if k)
    ctx = _Context(args)
    t0 = time.perf_counter()
    try:
        COMMANDS[key](ctx)
    except (InputError, DocumentError, ValueError, OSError) as exc:
        print(f"qplex {args.command_name}: error: {exc}", file=sys.stderr)
        return 2, None
    rep = ctx.report
    rep.wall_time = time.perf_counter() - t0
    rep.input_digest = _digest(ctx)
    if not args.quiet:
        for name, ok in rep.checks.items():
            print(f"{'PASS' if ok else 'FAIL'}  {name}")
        for name, val in rep.summaries.items():
            if isinstance(val, (np.ndarray, list)) and np.size(val) > 8:
                continue
            print(f"  {name} = {val}")
    if args.report:
        save_document(rep.to_document(ctx.dim), args.report)
    return (0 if rep.passed else 1), rep


def main(argv=None) -> int:
    status, _ = dispatch(argv)
    return status


if __name__ == "__main__":
    sys.exit(main())
