"""The forge command line.

Groups are given either as a stock name (Z2, Z3, Z4, Z6, S2, S3) or as a
path to a JSON config {"cyclotomic_order", "dim", "generators"}.  Verify
subcommands emit a deterministic report (sorted keys, fixed seed) and exit
with 0 on success, 1 on a failed check, 2 on bad configuration.
"""

from __future__ import annotations

import json
import sys

import click

from . import suites
from .cherednik import CherednikContext
from .dunkl import DunklContext
from .groups import Group


class ConfigError(click.ClickException):
    """Configuration problems exit with status 2."""
    exit_code = 2


def _load_group(spec: str) -> Group:
    try:
        return suites.resolve_group(spec)
    except Exception as exc:
        raise ConfigError(str(exc)) from exc


def _emit(report: dict, json_path: str | None) -> None:
    text = json.dumps(report, sort_keys=True, indent=2, default=str)
    if json_path:
        with open(json_path, "w") as fh:
            fh.write(text + "\n")
    click.echo(text)
    if not report.get("ok", False):
        sys.exit(1)


def _group_options(f):
    f = click.option("--seed", type=int, default=0, show_default=True,
                     help="seed for randomized checks")(f)
    f = click.option("--json", "json_path", type=click.Path(), default=None,
                     help="also write the report to this file")(f)
    return f


@click.group()
def main():
    """Exact identity checking for rational Cherednik algebras."""


# -- group ------------------------------------------------------------------

@main.group()
def group():
    """Inspect reflection groups."""


@group.command("define")
@click.option("--group", "gspec", required=True,
              help="stock name or JSON config path")
def group_define(gspec):
    """Validate a group config and print its basic data."""
    G = _load_group(gspec)
    info = {
        "order": G.size,
        "dim": G.dim,
        "cyclotomic_order": G.order,
        "reflections": len(G.reflections),
        "reflection_classes": G.nclasses,
        "hyperplanes": len(G.hyperplanes),
    }
    click.echo(json.dumps(info, sort_keys=True, indent=2))


@group.command("list")
@click.option("--group", "gspec", required=True)
def group_list(gspec):
    """List the elements as matrices."""
    G = _load_group(gspec)
    for gi, M in enumerate(G.elements):
        rows = ["[" + ", ".join(str(c) for c in row) + "]" for row in M]
        click.echo(f"g{gi}: " + " ".join(rows))


@group.command("reflections")
@click.option("--group", "gspec", required=True)
def group_reflections(gspec):
    """List reflections with roots, coroots and eigenvalues."""
    G = _load_group(gspec)
    for k, r in enumerate(G.reflections):
        click.echo(f"s{k+1} = g{r.element}: alpha = "
                   f"({', '.join(str(c) for c in r.alpha)}), alpha_vee = "
                   f"({', '.join(str(c) for c in r.alpha_vee)}), "
                   f"lambda = {r.lam}, class = {r.cls}")


# -- rca --------------------------------------------------------------------

@main.group()
def rca():
    """Arithmetic in the rational Cherednik algebra."""


@rca.command("mul")
@click.option("--group", "gspec", required=True)
@click.option("--a", "a_text", required=True, help="left factor, e.g. 'u1'")
@click.option("--b", "b_text", required=True, help="right factor, e.g. 'y1'")
def rca_mul(gspec, a_text, b_text):
    """Multiply two elements and print the PBW normal form."""
    alg = CherednikContext(_load_group(gspec))
    try:
        a = alg.parse(a_text)
        b = alg.parse(b_text)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    click.echo(str(a * b))


# -- dunkl ------------------------------------------------------------------

@main.group()
def dunkl():
    """The Dunkl embedding."""


@dunkl.command("show")
@click.option("--group", "gspec", required=True)
@click.option("--index", type=int, default=1, show_default=True,
              help="which Dunkl operator (1-based)")
def dunkl_show(gspec, index):
    """Print a Dunkl operator."""
    G = _load_group(gspec)
    if not 1 <= index <= G.dim:
        raise ConfigError(f"index must be in 1..{G.dim}")
    dctx = DunklContext(CherednikContext(G))
    click.echo(str(dctx.dunkl_operator(index - 1)))


@dunkl.command("apply")
@click.option("--group", "gspec", required=True)
@click.option("--op", "op_text", required=True,
              help="algebra element to push through the embedding")
@click.option("--poly", "poly_text", required=True,
              help="polynomial in y1..yl to apply it to")
def dunkl_apply(gspec, op_text, poly_text):
    """Apply the Dunkl image of an element to a polynomial."""
    alg = CherednikContext(_load_group(gspec))
    dctx = DunklContext(alg)
    try:
        op = dctx.theta(alg.parse(op_text))
        poly = alg.parse(poly_text)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    zu = (0,) * alg.dim
    num = {}
    for (a, g, b), c in poly.terms.items():
        if g or b != zu:
            raise ConfigError("--poly must involve only y-variables")
        num[a] = c
    click.echo(str(op.apply(dctx.coeff(num))))


# -- verify -----------------------------------------------------------------

@main.group()
def verify():
    """Exact identity suites with JSON reports."""


@verify.command("pbw")
@click.option("--group", "gspec", required=True)
@click.option("--triples", type=int, default=100, show_default=True)
@_group_options
def verify_pbw(gspec, triples, seed, json_path):
    _emit(suites.verify_pbw(_load_group(gspec), seed=seed,
                            ntriples=triples), json_path)


@verify.command("dunkl-commute")
@click.option("--group", "gspec", required=True)
@_group_options
def verify_dunkl_commute(gspec, seed, json_path):
    _emit(suites.verify_dunkl_commute(_load_group(gspec)), json_path)


@verify.command("dunkl-embed")
@click.option("--group", "gspec", required=True)
@click.option("--pairs", type=int, default=20, show_default=True)
@_group_options
def verify_dunkl_embed(gspec, pairs, seed, json_path):
    _emit(suites.verify_dunkl_embed(_load_group(gspec), seed=seed,
                                    npairs=pairs), json_path)


@verify.command("hc")
@click.option("--group", "gspec", required=True)
@click.option("--codim", type=int, default=1, show_default=True,
              help="number of stratum directions in the tensor factor")
@click.option("--order", type=int, default=3, show_default=True)
@click.option("--elements", type=int, default=10, show_default=True)
@_group_options
def verify_hc(gspec, codim, order, elements, seed, json_path):
    _emit(suites.verify_hc(_load_group(gspec), codim=codim, order=order,
                           seed=seed, nelems=elements), json_path)


@verify.command("jets")
@click.option("--dim", type=int, default=2, show_default=True)
@click.option("--order", type=int, default=3, show_default=True)
@click.option("--ops", type=int, default=20, show_default=True)
@click.option("--paths", type=int, default=5, show_default=True)
@_group_options
def verify_jets(dim, order, ops, paths, seed, json_path):
    _emit(suites.verify_jets(dim=dim, order=order, seed=seed, nops=ops,
                             npaths=paths), json_path)


@verify.command("gluing")
@click.option("--n", type=int, default=2, show_default=True)
@click.option("--group", "gspec", default="Z2", show_default=True,
              help="transversal group (only Z2 is supported)")
@click.option("--orders", default="4,4", show_default=True,
              help="truncation K_x,K_y")
@click.option("--random-elements", type=int, default=20, show_default=True)
@click.option("--shadow", is_flag=True,
              help="also run the uniqueness shadow at (8,8)")
@_group_options
def verify_gluing(n, gspec, orders, random_elements, shadow, seed, json_path):
    if gspec != "Z2":
        raise ConfigError("the slice model supports --group Z2 only")
    try:
        kx, ky = (int(v) for v in orders.split(","))
    except ValueError as exc:
        raise ConfigError("--orders expects K_x,K_y") from exc
    _emit(suites.verify_gluing(n=n, orders=(kx, ky), seed=seed,
                               nrandom=random_elements, shadow=shadow),
          json_path)


@verify.command("induction")
@click.option("--G", "gname", default="S3", show_default=True)
@click.option("--H", "hname", default="S2", show_default=True)
@click.option("--A", "aname", default="C[x]/(x^3)", show_default=True)
@click.option("--triples", type=int, default=100, show_default=True)
@click.option("--pairs", type=int, default=50, show_default=True)
@_group_options
def verify_induction(gname, hname, aname, triples, pairs, seed, json_path):
    try:
        rep = suites.verify_induction(gname, hname, algebra=aname, seed=seed,
                                      ntriples=triples, npairs=pairs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    _emit(rep, json_path)


@verify.command("all")
@_group_options
def verify_all(seed, json_path):
    _emit(suites.verify_all(seed=seed), json_path)


# -- jets -------------------------------------------------------------------

@main.group()
def jets():
    """Jet-calculus utilities."""


@jets.command("flat-check")
@click.option("--dim", type=int, required=True)
@click.option("--order", type=int, required=True)
@click.option("--op", "op_text", required=True,
              help="operator in x1..xm, d1..dm, e.g. 'x1^2*d1'")
@click.option("--paths", default="auto", show_default=True,
              help="'auto' or a path count")
@_group_options
def jets_flat_check(dim, order, op_text, paths, seed, json_path):
    npaths = 5 if paths == "auto" else int(paths)
    try:
        rep = suites.flat_check(dim, order, op_text, seed=seed,
                                npaths=npaths)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    _emit(rep, json_path)


if __name__ == "__main__":
    main()
