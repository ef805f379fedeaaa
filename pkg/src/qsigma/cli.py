"""Command-line front end: deterministic text and JSON verification reports.

Subcommands: tangent | sigma | spectrum | relations | verify-paper.
Exit codes: 0 success, 1 verification-claim failure, 2 usage error,
3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__, sigma as sg
from .cartan import ConfigError, build
from .scalar import ONE, ZERO, ScalarError, q_power, parse as parse_scalar, render
from .tangent import ConsistencyError, TangentSpace, build_tangent

SCHEMA_VERSION = 1
DEFAULT_SPECIALIZE = ("2", "7/3")


def _parse_rational(text: str) -> Fraction:
    try:
        if "/" in text:
            a, b = text.split("/")
            return Fraction(int(a), int(b))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad rational {text!r}") from exc


class RunConfig:
    """Validated invocation parameters for one subcommand."""

    def __init__(self, command, series, rank, node, output_format,
                 cache_dir, specialize):
        self.command = command
        self.series = series.upper()
        self.rank = rank
        self.node = node
        self.output_format = output_format
        self.cache_dir = cache_dir
        self.specialize = specialize
        self.cartan = build(self.series, self.rank)
        if node not in self.cartan.cominuscule_nodes:
            raise ConfigError(
                f"node {node} is not a cominuscule node of "
                f"{self.series}{self.cartan.rank} "
                f"(valid: {sorted(self.cartan.cominuscule_nodes)})")
        for p in specialize:
            if p in (Fraction(-1), Fraction(0), Fraction(1)):
                raise ConfigError(f"specialization point {p} is excluded")

    def echo(self) -> dict:
        return {
            "command": self.command,
            "series": self.series,
            "rank": self.cartan.rank,
            "node": self.node,
            "format": self.output_format,
            "specialize": [str(p) for p in self.specialize],
        }


# -- sigma-matrix disk cache -------------------------------------------------


def _cache_path(cfg: RunConfig) -> Path | None:
    if not cfg.cache_dir:
        return None
    name = f"sigma-{cfg.series}{cfg.cartan.rank}-node{cfg.node}-v{__version__}.json"
    return Path(cfg.cache_dir) / name


def _load_cached_sigma(cfg: RunConfig, tangent: TangentSpace):
    path = _cache_path(cfg)
    if path is None or not path.exists():
        return None
    words = [" ".join(f"E{i}" for i in w) for w in tangent.basis_words]
    try:
        payload = json.loads(path.read_text())
        if (payload.get("tool_version") != __version__
                or payload.get("basis") != words):
            return None
        cols = {}
        for r, c, text in payload["entries"]:
            cols.setdefault(int(c), {})[int(r)] = parse_scalar(text)
    except (OSError, ValueError, KeyError, TypeError, ScalarError):
        return None  # stale or corrupt cache entries are recomputed
    return sg.SigmaMatrix(tangent, cols)


def _save_cached_sigma(cfg: RunConfig, tangent: TangentSpace,
                       matrix: sg.SigmaMatrix):
    path = _cache_path(cfg)
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    entries = []
    for c in sorted(matrix.cols):
        for r in sorted(matrix.cols[c]):
            entries.append([r, c, render(matrix.cols[c][r])])
    payload = {
        "tool_version": __version__,
        "series": cfg.series,
        "rank": cfg.cartan.rank,
        "node": cfg.node,
        "basis": [" ".join(f"E{i}" for i in w) for w in tangent.basis_words],
        "entries": entries,
    }
    path.write_text(json.dumps(payload, indent=2) + "\n")


def _get_sigma(cfg: RunConfig, tangent: TangentSpace) -> sg.SigmaMatrix:
    cached = _load_cached_sigma(cfg, tangent)
    if cached is not None:
        return cached
    matrix = sg.sigma_matrix(tangent)
    _save_cached_sigma(cfg, tangent, matrix)
    return matrix


# -- report assembly ----------------------------------------------------------


def _word_str(word) -> str:
    return " ".join(f"E{i}" for i in word) if word else "1"


def _tensor_coords(tangent: TangentSpace, vec) -> dict:
    n = tangent.dim
    out = {}
    for flat, v in enumerate(vec):
        if v:
            i, j = divmod(flat, n)
            key = f"{_word_str(tangent.basis_words[i])} (x) {_word_str(tangent.basis_words[j])}"
            out[key] = render(v)
    return out


def _base_report(cfg: RunConfig, tangent: TangentSpace) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "config": cfg.echo(),
        "tangent_dim": tangent.dim,
        "basis": [
            {
                "word": _word_str(w),
                "weight": list(mu),
                "lift": _word_str(l),
            }
            for w, mu, l in zip(tangent.basis_words, tangent.basis_weights,
                                tangent.lifts)
        ],
    }


def _lwv_report(tangent: TangentSpace) -> list:
    out = []
    for vec in tangent.lowest_weight_vectors():
        flat = next(i for i, v in enumerate(vec) if v)
        out.append({
            "weight": list(tangent.tensor_weight(flat)),
            "coords": _tensor_coords(tangent, vec),
        })
    return out


def _discrepancy_notes(cfg: RunConfig, tangent: TangentSpace,
                       matrix=None) -> list:
    notes = []
    x = cfg.node
    a = cfg.cartan.root_norm(x)
    if matrix is not None:
        n = tangent.dim
        i_x = tangent.x_index
        exex = [ZERO] * (n * n)
        exex[i_x * n + i_x] = ONE
        lam = sg.eigenvalue_of(matrix, exex)
        sign = "-" if lam == q_power(-a) else "+"
        notes.append(
            f"E{x} (x) E{x} eigenvalue computed from the formula: "
            f"{render(lam)} (exponent sign {sign}; the opposite-sign variant "
            "does not occur)")
        if _interior_a_node(cfg):
            nu = _derive_nu(cfg, tangent, matrix)
            notes.append(
                f"four-term eigenvector reduction scalar nu = {render(nu)}")
    notes.append(
        "two-term lowest-weight vectors use the corrected form "
        "Ej Ex (x) Ex - q^(aj,ax) Ex (x) Ej Ex per diagram neighbour j")
    if not tangent.levi:
        notes.append(
            "degenerate Levi (rank 1): the joint F-kernel convention returns "
            "the whole tensor square")
    return notes


def _interior_a_node(cfg: RunConfig) -> bool:
    return cfg.series == "A" and 1 < cfg.node < cfg.cartan.rank


def _derive_nu(cfg: RunConfig, tangent: TangentSpace, matrix: sg.SigmaMatrix):
    """Read off nu from the column of sigma at E_{x-1}E_{x+1}E_x (x) E_x."""
    x = cfg.node
    alpha = tangent.cartan.simple_root
    wt_eee = tuple(a + b + c for a, b, c in
                   zip(alpha(x - 1), alpha(x), alpha(x + 1)))
    wt_a = tuple(a + b for a, b in zip(alpha(x - 1), alpha(x)))
    wt_b = tuple(a + b for a, b in zip(alpha(x), alpha(x + 1)))
    n = tangent.dim
    i_eee = tangent.index_of_weight[wt_eee]
    i_x = tangent.x_index
    i_a = tangent.index_of_weight[wt_a]
    i_b = tangent.index_of_weight[wt_b]
    col = matrix.cols.get(i_eee * n + i_x, {})
    return -col.get(i_a * n + i_b, ZERO)


# -- subcommands ---------------------------------------------------------------


def cmd_tangent(cfg: RunConfig) -> dict:
    tangent = build_tangent(cfg.cartan, cfg.node)
    report = _base_report(cfg, tangent)
    report["lowest_weight_vectors"] = _lwv_report(tangent)
    report["discrepancy_notes"] = _discrepancy_notes(cfg, tangent)
    return report


def cmd_sigma(cfg: RunConfig) -> dict:
    tangent = build_tangent(cfg.cartan, cfg.node)
    matrix = _get_sigma(cfg, tangent)
    report = _base_report(cfg, tangent)
    entries = []
    for c in sorted(matrix.cols):
        for r in sorted(matrix.cols[c]):
            entries.append([r, c, render(matrix.cols[c][r])])
    report["sigma_matrix"] = {
        "dim": matrix.dim,
        "entries": entries,
        "weight_blocks": [
            {"weight": list(w), "indices": idxs}
            for w, idxs in matrix.blocks()
        ],
    }
    report["discrepancy_notes"] = _discrepancy_notes(cfg, tangent, matrix)
    return report


def cmd_spectrum(cfg: RunConfig) -> dict:
    tangent = build_tangent(cfg.cartan, cfg.node)
    matrix = _get_sigma(cfg, tangent)
    rep = sg.spectrum(matrix, points=cfg.specialize)
    report = _base_report(cfg, tangent)
    report["lowest_weight_vectors"] = _lwv_report(tangent)
    report["spectrum"] = [
        {"eigenvalue": render(lam), "multiplicity": m}
        for lam, m in rep.eigenvalues
    ]
    report["minus_one_dim"] = rep.minus_one_dim
    report["classical_dim"] = rep.classical_lambda2_dim
    report["strongly_torsion_free"] = rep.strongly_torsion_free
    report["lowest_weight_summary"] = [
        {"weight": list(w),
         "eigenvalue": render(lam) if lam is not None else "not an eigenvector"}
        for w, lam in rep.lowest_weight_summary
    ]
    report["discrepancy_notes"] = _discrepancy_notes(cfg, tangent, matrix)
    return report


def cmd_relations(cfg: RunConfig) -> dict:
    tangent = build_tangent(cfg.cartan, cfg.node)
    matrix = _get_sigma(cfg, tangent)
    kernel = sg.relation_space_dual(matrix)
    restriction_ok = all(
        matrix.apply(vec) == [-v for v in vec] for vec in kernel)
    inverse = sg.invert(matrix)
    inverse_ok = all(
        inverse.apply(vec) == matrix.apply(vec) for vec in kernel)
    report = _base_report(cfg, tangent)
    report["relation_space"] = {
        "dimension": len(kernel),
        "classical_dim": tangent.dim * (tangent.dim - 1) // 2,
        "vectors": [_tensor_coords(tangent, vec) for vec in kernel],
        "restriction_is_minus_identity": restriction_ok,
        "inverse_agrees_on_kernel": inverse_ok,
    }
    report["discrepancy_notes"] = _discrepancy_notes(cfg, tangent, matrix)
    return report


def _two_term_vector(tangent: TangentSpace, j: int):
    """E_j E_x (x) E_x - q^{(a_j, a_x)} E_x (x) E_j E_x in tensor coordinates."""
    cd = tangent.cartan
    x = tangent.node
    wt = tuple(a + b for a, b in zip(cd.simple_root(j), cd.simple_root(x)))
    i_jx = tangent.index_of_weight[wt]
    i_x = tangent.x_index
    n = tangent.dim
    vec = [ZERO] * (n * n)
    vec[i_jx * n + i_x] = ONE
    vec[i_x * n + i_jx] = -q_power(cd.pairing(cd.simple_root(j),
                                              cd.simple_root(x)))
    return vec


def cmd_verify_paper(cfg: RunConfig) -> dict:
    tangent = build_tangent(cfg.cartan, cfg.node)
    matrix = _get_sigma(cfg, tangent)
    cd = cfg.cartan
    x = cfg.node
    n = tangent.dim
    claims = []

    def claim(cid, description, expected, actual):
        claims.append({
            "id": cid,
            "description": description,
            "expected": expected,
            "actual": actual,
            "passed": expected == actual,
        })

    exex = [ZERO] * (n * n)
    exex[tangent.x_index * n + tangent.x_index] = ONE
    killed = all(
        all(v.is_zero() for v in tangent.act_tensor("F", j, exex))
        for j in tangent.levi)
    claim("lowest-weight-ExEx",
          f"every Levi F annihilates E{x} (x) E{x}", True, killed)

    a = cd.root_norm(x)
    try:
        lam = sg.eigenvalue_of(matrix, exex)
        actual = render(lam)
        ok = lam in (q_power(a), q_power(-a))
    except sg.NotAnEigenvectorError:
        actual = "not an eigenvector"
        ok = False
    claim("eigenvalue-ExEx",
          f"E{x} (x) E{x} is an eigenvector with eigenvalue q^{a} or q^-{a}",
          True, ok)
    claims[-1]["actual_eigenvalue"] = actual

    neighbours = [j for j in tangent.levi
                  if cd.cartan_matrix[x - 1][j - 1] < 0]
    for j in neighbours:
        vec = _two_term_vector(tangent, j)
        killed = all(
            all(v.is_zero() for v in tangent.act_tensor("F", k, vec))
            for k in tangent.levi)
        claim(f"lowest-weight-two-term-E{j}",
              f"every Levi F annihilates E{j}E{x} (x) E{x} "
              f"- q^(a{j},a{x}) E{x} (x) E{j}E{x}", True, killed)
        try:
            lam = sg.eigenvalue_of(matrix, vec)
            actual = render(lam)
        except sg.NotAnEigenvectorError:
            actual = "not an eigenvector"
        claim(f"eigenvalue-two-term-E{j}",
              f"the E{j}-type two-term vector has eigenvalue -1",
              "-1", actual)

    if _interior_a_node(cfg):
        alpha = cd.simple_root
        wt_eee = tuple(p + q_ + r for p, q_, r in
                       zip(alpha(x - 1), alpha(x), alpha(x + 1)))
        wt_a = tuple(p + q_ for p, q_ in zip(alpha(x - 1), alpha(x)))
        wt_b = tuple(p + q_ for p, q_ in zip(alpha(x), alpha(x + 1)))
        i_eee = tangent.index_of_weight[wt_eee]
        i_a = tangent.index_of_weight[wt_a]
        i_b = tangent.index_of_weight[wt_b]
        i_x = tangent.x_index
        vec = [ZERO] * (n * n)
        vec[i_x * n + i_eee] = ONE
        vec[i_eee * n + i_x] = q_power(2)
        vec[i_a * n + i_b] = -q_power(1)
        vec[i_b * n + i_a] = -q_power(1)
        try:
            lam = sg.eigenvalue_of(matrix, vec)
            actual = render(lam)
        except sg.NotAnEigenvectorError:
            actual = "not an eigenvector"
        claim("eigenvalue-q2-four-term",
              "the four-term vector is an eigenvector with eigenvalue q^2",
              "q^2", actual)

    if cfg.series == "A":
        count = len(tangent.lowest_weight_vectors())
        expected = 1 if cd.rank == 1 else (4 if _interior_a_node(cfg) else 2)
        claim("branching-count",
              "number of joint-F-kernel vectors on T (x) T",
              expected, count)

        rep = sg.spectrum(matrix, points=cfg.specialize)
        claim("strong-torsion-freeness",
              "dim ker(sigma + id) equals the classical two-form dimension "
              f"{n}({n}-1)/2", rep.classical_lambda2_dim, rep.minus_one_dim)

    try:
        sg.check_equivariance(matrix, tangent)
        equivariant = True
    except sg.EquivarianceError:
        equivariant = False
    claim("equivariance",
          "sigma commutes with every Levi generator on T (x) T",
          True, equivariant)

    report = _base_report(cfg, tangent)
    report["claims"] = claims
    report["all_passed"] = all(c["passed"] for c in claims)
    report["discrepancy_notes"] = _discrepancy_notes(cfg, tangent, matrix)
    return report


COMMANDS = {
    "tangent": cmd_tangent,
    "sigma": cmd_sigma,
    "spectrum": cmd_spectrum,
    "relations": cmd_relations,
    "verify-paper": cmd_verify_paper,
}


# -- output --------------------------------------------------------------------


def _render_text(report: dict, elapsed_ms: int) -> str:
    lines = []
    cfg = report["config"]
    lines.append(f"qsigma {report['tool_version']} — {cfg['command']} "
                 f"{cfg['series']}{cfg['rank']} node {cfg['node']}")
    lines.append(f"tangent dimension: {report['tangent_dim']}")
    lines.append("basis: " + ", ".join(b["word"] for b in report["basis"]))
    if "lowest_weight_vectors" in report:
        lines.append(f"lowest weight vectors: {len(report['lowest_weight_vectors'])}")
        for entry in report["lowest_weight_vectors"]:
            coords = "; ".join(f"{k}: {v}" for k, v in entry["coords"].items())
            lines.append(f"  weight {entry['weight']}: {coords}")
    if "spectrum" in report:
        spec = ", ".join(f"{e['eigenvalue']} (x{e['multiplicity']})"
                         for e in report["spectrum"])
        lines.append(f"spectrum: {spec}")
        lines.append(f"dim ker(sigma + id): {report['minus_one_dim']}  "
                     f"classical: {report['classical_dim']}  "
                     f"strongly torsion-free: {report['strongly_torsion_free']}")
    if "sigma_matrix" in report:
        sm = report["sigma_matrix"]
        lines.append(f"sigma matrix: {sm['dim']}x{sm['dim']}, "
                     f"{len(sm['entries'])} nonzero entries, "
                     f"{len(sm['weight_blocks'])} weight blocks")
    if "relation_space" in report:
        rs = report["relation_space"]
        lines.append(f"relation space dimension: {rs['dimension']} "
                     f"(classical {rs['classical_dim']})")
        lines.append(f"restriction is -id: {rs['restriction_is_minus_identity']}  "
                     f"inverse agrees on kernel: {rs['inverse_agrees_on_kernel']}")
    if "claims" in report:
        for c in report["claims"]:
            mark = "PASS" if c["passed"] else "FAIL"
            lines.append(f"[{mark}] {c['id']}: {c['description']} "
                         f"(expected {c['expected']}, got {c['actual']})")
        lines.append(f"all claims passed: {report['all_passed']}")
    for note in report.get("discrepancy_notes", []):
        lines.append(f"note: {note}")
    lines.append(f"timing_ms: {elapsed_ms}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsigma",
        description="Exact analysis of the dual braiding-type map on "
                    "cominuscule quantum flag tangent spaces.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--series", required=True,
                       help="A, B, C, D, E6 or E7")
        p.add_argument("--rank", type=int, required=True)
        p.add_argument("--node", type=int, required=True,
                       help="1-based cominuscule node")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--cache-dir", default=None)
        p.add_argument("--specialize", action="append", default=None,
                       help="rational cross-check point (repeatable), e.g. 7/3")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        points = tuple(
            _parse_rational(p)
            for p in (args.specialize or DEFAULT_SPECIALIZE))
        cache_dir = os.environ.get("QSIGMA_CACHE") or args.cache_dir
        cfg = RunConfig(
            command=args.command,
            series=args.series,
            rank=args.rank,
            node=args.node,
            output_format=args.format,
            cache_dir=cache_dir,
            specialize=points,
        )
    except ConfigError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2

    start = time.monotonic()
    try:
        report = COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ConsistencyError, ScalarError, sg.SpectrumError,
            sg.EquivarianceError, sg.SingularMatrixError) as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 3
    elapsed_ms = int((time.monotonic() - start) * 1000)

    if cfg.output_format == "json":
        # timing is excluded from JSON so reports are byte-stable
        print(json.dumps(report, indent=2))
    else:
        print(_render_text(report, elapsed_ms))

    if args.command == "verify-paper" and not report["all_passed"]:
        failed = [c["id"] for c in report["claims"] if not c["passed"]]
        print("failed claims: " + ", ".join(failed), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
