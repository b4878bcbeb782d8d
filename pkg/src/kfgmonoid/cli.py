"""Command-line interface."""

from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path

import click

from . import catalog
from .errors import KFGError
from .topology import Topology, from_base

# catalog whose collapse is reported next to each generated monoid
GENERATORS = {"ab": "K", "abf": "KF", "abfg": "KFG"}


def load_space(path: str) -> Topology:
    """Read a space from JSON: a closure table, singleton closures, or a base."""
    data = json.loads(Path(path).read_text())
    if "closure" in data:
        return Topology.from_dict(data)
    if "closures" in data:
        return Topology.from_point_closures(data["closures"])
    if "base" in data:
        return from_base(data["base"], int(data["n"]))
    raise click.UsageError(f"{path}: expected a 'closure', 'closures' or 'base' field")


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


class _Group(click.Group):
    # bad input files and oversized sums are usage errors (exit status 2)
    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except KFGError as exc:
            raise click.UsageError(f"{type(exc).__name__}: {exc}") from exc


@click.group(cls=_Group)
@click.version_option(package_name="artifact")
def main() -> None:
    """Operator monoids of finite topological spaces."""


@main.command("enumerate")
@click.option("--n", "n", type=click.IntRange(1, 11), required=True, help="Number of points.")
@click.option("--cache", type=click.Path(file_okay=False), default=None, help="Cache directory.")
def enumerate_command(n: int, cache: str | None) -> None:
    """List one space per homeomorphism class as CSV."""
    from .enumeration import enumerate_classes

    spaces = enumerate_classes(n, cache)
    rows = [[i, s.space_type.value, " ".join(str(c) for c in s.closures)] for i, s in enumerate(spaces)]
    click.echo(_csv(["index", "type", "closures"], rows), nl=False)


@main.command()
@click.option("--space", "space_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--subset", type=int, required=True, help="Subset as a bit code.")
def classify(space_file: str, subset: int) -> None:
    """Space type, φ, ψ and orbit sizes of one subset."""
    from .monoid import classify_space
    from .subsets import profile

    t = load_space(space_file)
    p = profile(t, subset)
    out = {"type": classify_space(t).value, "subset": subset, "phi": p.phi, "psi": p.psi, "k": p.k, "kf": p.kf}
    click.echo(json.dumps(out, sort_keys=True))


@main.command()
@click.option("--space", "space_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--generators", type=click.Choice(sorted(GENERATORS)), default="abf", show_default=True)
def monoid(space_file: str, generators: str) -> None:
    """Size and global collapse of the generated monoid."""
    from .monoid import classify_space, generate_monoid, space_collapse

    t = load_space(space_file)
    ops = generate_monoid(t, generators)
    collapse = space_collapse(t, catalog.CATALOGS[GENERATORS[generators]])
    out = {
        "type": classify_space(t).value,
        "generators": generators,
        "size": len(ops),
        "catalog_size": len(collapse),
        "collapse": [list(c) for c in collapse.classes],
    }
    click.echo(json.dumps(out, sort_keys=True))


@main.command("sum")
@click.option("--spaces", "space_files", type=click.Path(exists=True, dir_okay=False), multiple=True, required=True)
def sum_command(space_files: tuple[str, ...]) -> None:
    """Disjoint union of the given spaces, as JSON."""
    from .sums import sum_space

    click.echo(sum_space([load_space(f) for f in space_files]).to_json())


@main.command()
@click.option("--name", type=click.Choice(["table5", "table8", "table12", "meet", "meet-phi"]), required=True)
@click.option("--max-n", type=click.IntRange(1, 11), default=None, help="Largest space size to scan.")
def tables(name: str, max_n: int | None) -> None:
    """Reproduced tables as CSV."""
    if name == "table5":
        from .enumeration import monoid_frequencies

        rows = []
        for n in range(1, (max_n or 7) + 1):
            rec = monoid_frequencies(n)
            rows.append([n, *rec.row(), rec.total])
        click.echo(_csv(["n", "GE", "KD", "ED", "OU", "EO", "P", "D", "total"], rows), nl=False)
    elif name == "table8":
        from .census import minimal_psi_sizes
        from .subsets import psi_dual

        sizes = minimal_psi_sizes(max_n or 8)
        rows = [[m, psi_dual(m), sizes.get(m, "")] for m in range(1, 71)]
        click.echo(_csv(["psi", "dual", "least_points"], rows), nl=False)
    elif name == "table12":
        from .sums import TOPSUM_SPACES, topsum_report

        rows = []
        for kind, (n, _) in TOPSUM_SPACES.items():
            for count in range(1, 16 // n + 1):
                r = topsum_report(kind, count)
                rows.append([kind, count, " ".join(str(m) for m in sorted(r.new_psi)), r.k, r.kf, int(r.completely_full)])
        click.echo(_csv(["space", "copies", "new_psi", "k", "kf", "completely_full"], rows), nl=False)
    else:
        from .sums import meet_table

        click.echo(meet_table("phi" if name == "meet-phi" else "psi").to_csv(), nl=False)


@main.command("verify-paper")
@click.option("--suite", default=None, help="Run one suite instead of all default suites.")
@click.option("--max-n", type=click.IntRange(1, 11), default=None, help="Override each suite's size bound.")
@click.option("--jobs", type=click.IntRange(1, 64), default=1, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "text"]), default="text", show_default=True)
def verify_paper_command(suite: str | None, max_n: int | None, jobs: int, fmt: str) -> None:
    """Re-run the reproduction suites; exit status 1 when any criterion fails."""
    from .verify import verify_paper

    report = verify_paper(suite, max_n, jobs)
    text = {"json": report.to_json, "csv": report.to_csv, "text": report.to_text}[fmt]()
    click.echo(text, nl=False)
    sys.exit(0 if report.ok else 1)


if __name__ == "__main__":
    main()
