"""Rows of the ``W^{P0}`` table and the golden fixtures they are compared against."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, fields
from importlib import resources

from .hodge import boundary_face_weight
from .kostant import coset_factorize, dot_action, kostant_representatives, label_of
from .rootsys import RootSystemData, SymbolicWeight
from .weyl import render_cycles

HEADER = ("w", "sigma", "f", "l(w)", "weight+2c", "W2^0 W^P2", "n1", "n2")


@dataclass(frozen=True)
class TableRow:
    label: str
    sigma_text: str
    f_text: str
    length: int
    weight_plus_2c_text: str
    factorization_text: str
    n1_text: str
    n2_text: str

    def cells(self) -> tuple[str, ...]:
        return tuple(str(getattr(self, f.name)) for f in fields(self))


def build_table(rs: RootSystemData) -> list[TableRow]:
    lam = SymbolicWeight.symbolic(rs.l)
    p0 = kostant_representatives(rs, 0)
    rows = []
    for w, ell in zip(p0.elements, p0.lengths):
        d = dot_action(w, lam, rs)
        fz = coset_factorize(w, rs, 2)
        f_text = "{" + ",".join(str(m) for m in w.flips) + "}"
        weight = boundary_face_weight(w, lam, rs) + 2 * lam.kappa
        rows.append(TableRow(
            label_of(w, rs), render_cycles(w.sigma), f_text, ell,
            weight.render(const_first=True),
            f"{label_of(fz.tilde, rs)} {label_of(fz.rep, rs)}",
            d.eps[0].render(), d.eps[1].render(),
        ))
    return rows


def render_markdown(rows: list[TableRow]) -> str:
    out = ["| " + " | ".join(HEADER) + " |", "|" + "---|" * len(HEADER)]
    out += ["| " + " | ".join(r.cells()) + " |" for r in rows]
    return "\n".join(out) + "\n"


def render_csv(rows: list[TableRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HEADER)
    for r in rows:
        writer.writerow(r.cells())
    return buf.getvalue()


def render_json_lines(rows: list[TableRow], n: int, schema_version: int) -> str:
    return "".join(json.dumps({"schema_version": schema_version, "n": n, **asdict(r)}, sort_keys=True) + "\n"
                   for r in rows)


def parse_markdown(text: str) -> list[tuple[str, ...]]:
    """Data rows of a Markdown table as tuples of stripped cells."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip().startswith("|")]
    return [tuple(c.strip() for c in ln.strip("|").split("|")) for ln in lines[2:]]


FIXTURE_CASES = (4, 5)


def fixture_text(n: int) -> str:
    return resources.files("ghostclass").joinpath("fixtures", f"table_n{n}.md").read_text()


def compare_with_fixture(rs: RootSystemData, text: str | None = None) -> list[str]:
    """Mismatching cells as ``label/column: got != want``, empty when identical."""
    want = parse_markdown(fixture_text(rs.n) if text is None else text)
    got = [r.cells() for r in build_table(rs)]
    problems = []
    if len(got) != len(want):
        problems.append(f"row count: {len(got)} != {len(want)}")
    for g, w in zip(got, want):
        for col, a, b in zip(HEADER, g, w):
            if a != b:
                problems.append(f"{w[0]}/{col}: {a} != {b}")
    return problems
