import pandas as pd
from pydantic import BaseModel, Field, TypeAdapter

from . import logger_config
from .perm_core import StatKind
from .qpoly import QPolynomial

# Get a logger for this module
logger = logger_config.get_logger(__name__)


class PolynomialRecord(BaseModel):
    """One F_n^st(Π; q) row; the JSON output schema of the ``poly`` command."""

    n: int = Field(ge=0)
    stat: StatKind
    patterns: str
    coeffs: list[int]

    @classmethod
    def from_poly(cls, n: int, stat: StatKind, patterns: str, poly: QPolynomial) -> "PolynomialRecord":
        return cls(n=n, stat=stat, patterns=patterns, coeffs=poly.to_list())

    @property
    def poly(self) -> QPolynomial:
        return QPolynomial(tuple(self.coeffs))


_RECORDS = TypeAdapter(list[PolynomialRecord])


def records_to_frame(records: list[PolynomialRecord]) -> pd.DataFrame:
    """Rows ``n, c0, c1, ...``; short rows are padded with zeros."""
    width = max((len(r.coeffs) for r in records), default=0)
    columns = ["n"] + [f"c{e}" for e in range(width)]
    rows = [[r.n] + r.coeffs + [0] * (width - len(r.coeffs)) for r in records]
    frame = pd.DataFrame(rows, columns=columns)
    logger.debug(f"[TABLE] built {len(frame)} row(s), {width} coefficient column(s)")
    return frame


def render_text(records: list[PolynomialRecord]) -> str:
    lines = []
    for r in records:
        lines.append(
            f"n={r.n} {r.stat.value} coeffs={','.join(map(str, r.coeffs))} poly={r.poly}"
        )
    return "\n".join(lines) + "\n"


def render_json(records: list[PolynomialRecord]) -> str:
    if len(records) == 1:
        return records[0].model_dump_json() + "\n"
    return _RECORDS.dump_json(records).decode() + "\n"


def render_csv(records: list[PolynomialRecord]) -> str:
    return records_to_frame(records).to_csv(index=False, lineterminator="\n")


RENDERERS = {
    "text": render_text,
    "json": render_json,
    "csv": render_csv,
}


def render(records: list[PolynomialRecord], fmt: str) -> str:
    try:
        return RENDERERS[fmt](records)
    except KeyError:
        raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(RENDERERS)}") from None
