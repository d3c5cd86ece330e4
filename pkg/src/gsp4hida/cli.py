"""Command-line front end.

Every subcommand prints JSON (with a top-level "schema" field) or TSV.
Exit codes: 0 pass, 1 verification failure, 2 usage or configuration
error, 3 scale refusal.  ``--config FILE`` reads flat ``key = value``
lines; flags given on the command line win.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

import click

from . import __version__
from .errors import Gsp4Error

SCHEMA = "gsp4hida/1"


def _emit(obj: dict) -> None:
    click.echo(json.dumps({"schema": SCHEMA, **obj}, indent=2))


def _fail(exc: Gsp4Error):
    click.echo(json.dumps({"schema": SCHEMA, "error": exc.code, "message": str(exc)}), err=True)
    sys.exit(exc.exit_code)


def _ints(text: str, n: int | None = None, name: str = "value") -> tuple:
    try:
        vals = tuple(int(x) for x in str(text).replace(" ", "").split(",") if x != "")
    except ValueError:
        raise click.BadParameter(f"{name} must be comma-separated integers, got {text!r}")
    if n is not None and len(vals) != n:
        raise click.BadParameter(f"{name} needs {n} comma-separated integers, got {text!r}")
    return vals


def _rational(text: str) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"not a rational number: {text!r}")


def _plain(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    return x


def read_config(path: str) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment; dashes in keys
    are read as underscores."""
    out = {}
    for n, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise click.UsageError(f"{path}:{n}: expected key = value")
        k, v = (x.strip() for x in line.split("=", 1))
        out[k.replace("-", "_").lower()] = v
    return out


class _Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except Gsp4Error as exc:
            _fail(exc)


@click.group(cls=_Group)
@click.version_option(__version__)
@click.option("--config", "config", type=click.Path(exists=True, dir_okay=False),
              help="Flat key = value file supplying defaults for any subcommand.")
@click.pass_context
def main(ctx, config):
    """Exact finite computations for GSp(4) Hida theory."""
    if config:
        flat = read_config(config)
        ctx.default_map = {
            name: {p.name: flat[p.name] for p in cmd.params if p.name in flat}
            for name, cmd in main.commands.items()
        }


# ---------------------------------------------------------------- tables


@main.command()
@click.option("--q", "q", required=True, help="B, P or P*.")
@click.option("--format", "fmt", type=click.Choice(["tsv", "json"]), default="tsv")
def tables(q, fmt):
    """Double-coset sets and degree tables for Q."""
    from .roots import emit_tables

    click.echo(emit_tables(q, fmt), nl=False)


# ---------------------------------------------------------------- verify


@main.command()
@click.argument("kind", type=click.Choice(["contract", "hecke", "kernel", "spherical"]))
@click.option("--p", "p", type=int, default=3)
@click.option("--r", "r", type=int, default=2)
@click.option("--s", "s", type=int, default=1)
@click.option("--q", "q", default="B")
def verify(kind, p, r, s, q):
    """Run one exhaustive verification and report JSON; exit 1 on failure."""
    from .roots import parabolic

    Q = parabolic(q)
    if kind == "contract":
        from .flags import contraction_report

        rep = contraction_report(Q, p, r, s).as_dict()
    elif kind == "hecke":
        from .hecke import commutativity_sweep

        rep = commutativity_sweep(Q, p, r, min(s, r)).as_dict()
    elif kind == "kernel":
        from .hecke import evaluation_kernel_check

        rep = evaluation_kernel_check(Q, p, s).as_dict()
    else:
        from .flags import standard_element
        from .hecke import poincare_degree, spherical_decomposition_count

        d = standard_element(Q)
        counts = spherical_decomposition_count(d, p)
        expected = poincare_degree(d, p)
        rep = {
            "parameters": {"parabolic": Q.label, "p": p, "d": str(d)},
            "counts": {**counts, "expected": expected},
            "pass": counts["total"] == expected,
            "witnesses": [],
        }
    _emit({"check": kind, **rep})
    if not rep["pass"]:
        sys.exit(1)


# ---------------------------------------------------------------- polygons


@main.command()
@click.option("--weight", "weight", required=True, multiple=True,
              help="a,b,c; repeat once per embedding.")
@click.option("--q", "q", required=True)
@click.option("--field", "field", default="1,1", help="e,f of the local field.")
@click.option("--hecke-vals", "hecke_vals", default="",
              help="Known slopes, e.g. alpha0=0 or alpha1=5.")
@click.option("--tsv", "tsv", type=click.Path(dir_okay=False),
              help="Write Hodge and Newton vertex lists to this TSV file.")
def polygon(weight, q, field, hecke_vals, tsv):
    """Hodge-Tate data, Q-ordinary slopes, polygons and the filtration verdict."""
    from .polygons import polygon_pipeline

    triples = [_ints(w, 3, "--weight") for w in weight]
    if len({t[2] for t in triples}) != 1:
        raise click.BadParameter("all embeddings share the same c")
    e, f = _ints(field, 2, "--field")
    vals = {}
    for item in filter(None, hecke_vals.split(",")):
        k, _, v = item.partition("=")
        vals[k.strip()] = _rational(v)
    ws = [(a, b) for a, b, _ in triples]
    if len(ws) == 1:
        ws = ws * (e * f)
    c = triples[0][2]
    out = polygon_pipeline(q, ws[0][0], ws[0][1], c, e, f, weights=ws, valuations=vals)
    if tsv:
        lines = ["polygon\tx\ty"]
        for name in ("hodge", "newton"):
            lines += [f"{name}\t{x}\t{y}" for x, y in out[name]]
        Path(tsv).write_text("\n".join(lines) + "\n")
    out.pop("schema")
    _emit(out)


# ---------------------------------------------------------------- weights


@main.command()
@click.option("--q", "q", default="B", help="Parabolic whose unipotent radical is used.")
@click.option("--weight", "weight", default="0,0", help="a,b dominant for Sp4.")
@click.option("--levi", "levi", default=None, help="Q for the Levi-level datum.")
@click.option("--stratum", "stratum", default=None, help="Sigma for the Levi-level datum.")
@click.option("--w", "w", default=None, help="Weyl class for the Levi-level datum.")
def kostant(q, weight, levi, stratum, w):
    """Kostant weights per degree."""
    from .roots import by_name, parabolic
    from .weights import kostant_weights

    lam = _ints(weight, 2, "--weight")
    if levi or stratum or w:
        if not (levi and stratum and w):
            raise click.UsageError("--levi, --stratum and --w go together")
        U = (parabolic(levi), parabolic(stratum), by_name(w))
    else:
        U = parabolic(q)
    _emit({"weight": list(lam), "data": [k.as_dict() for k in kostant_weights(U, lam)]})


@main.command()
@click.option("--weight", "weight", required=True, multiple=True, help="a,b,c per embedding.")
def weight(weight):
    """Dominance, regularity, separability and admissibility flags."""
    from .weights import HighestWeight, dominance_tests

    triples = [_ints(w, 3, "--weight") for w in weight]
    if len({t[2] for t in triples}) != 1:
        raise click.BadParameter("all embeddings share the same c")
    lam = HighestWeight(tuple((a, b) for a, b, _ in triples), triples[0][2])
    _emit({"weight": [list(t) for t in triples], "flags": dominance_tests(lam)})


@main.command()
@click.option("--q", "q", required=True)
@click.option("--degree", "degree", type=int, required=True)
@click.option("--level", "level", default="Gamma0", help="Gamma0 or Gamma1.")
@click.option("--weight", "weight", default="0,0", help="a,b.")
def boundary(q, degree, level, weight):
    """Graded pieces of ordinary boundary cohomology over Q."""
    from .boundary import boundary_summands

    lam = _ints(weight, 2, "--weight")
    items = boundary_summands(q, degree, level, lam)
    _emit({"q": q, "degree": degree, "level": level, "summands": [s.as_dict() for s in items]})


@main.command()
@click.option("--T", "T", required=True)
@click.option("--R", "R", required=True)
@click.option("--S", "S", required=True)
@click.option("--q", "q", required=True)
@click.option("--json", "as_json", is_flag=True)
def charpoly(T, R, S, q, as_json):
    """The Hecke polynomial at p in X."""
    from .hecke import char_poly

    poly = char_poly(*(_rational(x) for x in (T, R, S, q)))
    if as_json:
        _emit({"coefficients": [_plain(c) for c in poly.coefficients],
               "autodual": poly.autodual(), "text": str(poly)})
    else:
        click.echo(str(poly))


@main.command("hida-rank")
@click.option("--d", "d", type=int, required=True)
@click.option("--delta", "delta", type=int, default=0)
@click.option("--types", "types", required=True, help="One parabolic per place, comma-separated.")
@click.option("--local-degrees", "local_degrees", default=None,
              help="d_v per place; default splits d evenly.")
def hida_rank_cmd(d, delta, types, local_degrees):
    """Rank 1 + delta + sum r_v d_v."""
    from .boundary import HidaGroupParams, hida_rank

    kinds = [t.strip() for t in types.split(",") if t.strip()]
    if local_degrees is None:
        if d % len(kinds):
            raise click.BadParameter("give --local-degrees when d is not a multiple of the places")
        dvs = [d // len(kinds)] * len(kinds)
    else:
        dvs = list(_ints(local_degrees, len(kinds), "--local-degrees"))
    click.echo(hida_rank(HidaGroupParams(d, delta, tuple(zip(dvs, kinds)))))


@main.command()
@click.option("--params", "params", default=None, help="c1,c2,c3,c4 (rationals).")
@click.option("--w", "w", default="-id")
@click.option("--p", "p", type=int, default=3)
@click.option("--precision", "precision", type=int, default=8)
@click.option("--random", "count", type=int, default=0, help="Run this many seeded random cases.")
@click.option("--seed", "seed", type=int, default=0)
def bruhat(params, w, p, precision, count, seed):
    """Iwahori-Bruhat certificate for u lift(w), or a seeded random sweep."""
    from .bruhat import bruhat_decompose, bruhat_sweep
    from .roots import by_name

    if count:
        report = bruhat_sweep(count, p, precision, seed)
        stats = report["counts"]
        report["pass"] = stats["verified"] == stats["cases"] and not stats["cell_drop_fails"]
        _emit(report)
        if not report["pass"]:
            sys.exit(1)
        return
    if params is None:
        raise click.UsageError("give --params or --random")
    u = [_rational(x) for x in params.split(",")]
    if len(u) != 4:
        raise click.BadParameter("--params needs four coordinates")
    cert = bruhat_decompose(u, by_name(w), p, precision)
    ok = cert.verify(p)
    _emit({
        "w": cert.w.name, "wPrime": cert.w_prime.name, "branches": list(cert.branches),
        "i": [[str(x) for x in row] for row in cert.i],
        "b": [[str(x) for x in row] for row in cert.b],
        "verified": ok,
    })
    if not ok:
        sys.exit(1)


if __name__ == "__main__":  # pragma: no cover
    main()
