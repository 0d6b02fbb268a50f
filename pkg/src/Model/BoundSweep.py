"""
Sweep of the bounds over every basis count M for one dimension N, with
CSV export and an SVG chart of the refined bound against the two weak
bounds (weak bounds dashed).
"""
import logging
from dataclasses import asdict, dataclass, field

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402

from src import constants  # noqa: E402
from src.Model.EntropicBounds import BoundKind, bound_report, \
    weak_bound_crossing  # noqa: E402
from src.Model.Measurement import BITS, DomainError  # noqa: E402
from src.Model.OutputFiles import atomic_write  # noqa: E402

CSV_COLUMNS = ["M", "weak_pairwise", "weak_subtraction", "intermediate",
               "refined", "best"]


class EmptySweepError(Exception):
    pass


@dataclass(frozen=True)
class SweepRow:
    m: int
    weak_pairwise: float
    weak_subtraction: float
    intermediate: float
    refined: float
    best: str


# Series name -> matplotlib line style
SERIES_STYLES = {
    "refined": {"linestyle": "-", "color": "black"},
    "intermediate": {"linestyle": ":", "color": "grey"},
    "weak_pairwise": {"linestyle": "--", "color": "tab:blue"},
    "weak_subtraction": {"linestyle": "--", "color": "tab:red"},
}


@dataclass(frozen=True)
class ChartSpec:
    width: int = constants.CHART_WIDTH
    height: int = constants.CHART_HEIGHT
    series: tuple = ("refined", "weak_pairwise", "weak_subtraction")
    x_label: str = "M"
    y_label: str = "lower bound on sum of entropies"
    title: str = None
    extra: dict = field(default_factory=dict)

    def series_values(self, rows):
        """
        Named value lists for the chart, all the length of rows.
        """
        values = {name: [getattr(row, name) for row in rows]
                  for name in self.series}
        for name, extra_values in self.extra.items():
            if len(extra_values) != len(rows):
                raise ValueError(
                    "Series %s has %d values for %d rows"
                    % (name, len(extra_values), len(rows)))
            values[name] = list(extra_values)
        return values


def run_sweep(dim, base=BITS):
    """
    One row per M in 1..dim + 1.
    :param dim: dimension N >= 2.
    :param base: LogBase
    :return: list of SweepRow
    """
    if int(dim) != dim or dim < 2:
        raise DomainError("Sweep dimension must be an integer >= 2")
    rows = []
    for m in range(1, dim + 2):
        report = bound_report(dim, m, base)
        values = report.values
        rows.append(SweepRow(
            m=m,
            weak_pairwise=values[BoundKind.PairwiseWeak],
            weak_subtraction=values[BoundKind.SubtractionWeak],
            intermediate=values[BoundKind.Intermediate],
            refined=values[BoundKind.RefinedIntermediate],
            best=report.best.value))
    logging.info("Swept %d basis counts for N=%d", len(rows), dim)
    return rows


def dominance_window(rows, dim=None):
    """
    Contiguous run of rows where refined exceeds both weak bounds and
    which contains the weak-bound crossing.
    :param rows: list of SweepRow from run_sweep
    :param dim: N; inferred from the row count when omitted.
    :return: (first M, last M), or None if refined does not dominate at
             the crossing.
    """
    if not rows:
        raise EmptySweepError("No rows to scan")
    dim = dim or len(rows) - 1
    crossing = min(max(int(round(weak_bound_crossing(dim))), 1), len(rows))

    def dominates(row):
        return row.refined > max(row.weak_pairwise, row.weak_subtraction)

    by_m = {row.m: row for row in rows}
    if crossing not in by_m or not dominates(by_m[crossing]):
        return None
    first = last = crossing
    while first - 1 in by_m and dominates(by_m[first - 1]):
        first -= 1
    while last + 1 in by_m and dominates(by_m[last + 1]):
        last += 1
    return first, last


def rows_to_frame(rows):
    """
    Sweep rows as a DataFrame with the CSV column names.
    """
    frame = pd.DataFrame([asdict(row) for row in rows])
    return frame.rename(columns={"m": "M"})[CSV_COLUMNS]


def emit_csv(rows, destination):
    """
    Write the sweep as CSV: header then one row per M, numbers with six
    significant digits.
    :param rows: non-empty list of SweepRow
    :param destination: output path
    """
    if not rows:
        raise EmptySweepError("Refusing to write an empty sweep")
    frame = rows_to_frame(rows)
    with atomic_write(destination) as handle:
        frame.to_csv(handle, index=False,
                     float_format=constants.CSV_FLOAT_FORMAT)
    logging.info("Wrote %d sweep rows to %s", len(rows), destination)


def build_chart(rows, spec=None):
    """
    Draw the bound series against M. The figure uses 72 dpi so SVG user
    units equal pixels.
    :return: matplotlib Figure
    """
    if not rows:
        raise EmptySweepError("Nothing to chart")
    spec = spec or ChartSpec()
    series = spec.series_values(rows)
    m_values = [row.m for row in rows]
    single = len(rows) == 1

    with plt.rc_context({"path.simplify": False}):
        figure = plt.figure(figsize=(spec.width / 72, spec.height / 72),
                            dpi=72)
        axes = figure.add_subplot(1, 1, 1)
        for name, values in series.items():
            style = SERIES_STYLES.get(name, {"linestyle": "-"})
            axes.plot(m_values, values, label=name, gid=name,
                      marker="o" if single else None, **style)
        axes.set_xlabel(spec.x_label)
        axes.set_ylabel(spec.y_label)
        if spec.title:
            axes.set_title(spec.title)
        lowest = min(min(values) for values in series.values())
        if lowest < 0:
            axes.axhline(0, color="lightgrey", linewidth=0.5, zorder=0)
        axes.legend(loc="upper left")
    return figure


def emit_svg_chart(rows, spec, destination):
    """
    Write the chart as a standalone SVG. Output is byte-reproducible:
    no date metadata and a fixed hash salt.
    :return: the matplotlib Figure that was rendered, for inspection.
    """
    figure = build_chart(rows, spec)
    try:
        with plt.rc_context({"svg.hashsalt": "mubentropy",
                             "svg.fonttype": "none",
                             "path.simplify": False}):
            with atomic_write(destination) as handle:
                figure.savefig(handle, format="svg",
                               metadata={"Date": None})
    finally:
        plt.close(figure)
    logging.info("Wrote chart of %d rows to %s", len(rows), destination)
    return figure


def axis_transform(figure):
    """
    Map SVG coordinates of a chart from build_chart back to (M, value).
    :return: function (x_svg, y_svg) -> (m, value)
    """
    axes = figure.axes[0]
    height = figure.bbox.height
    inverse = axes.transData.inverted()

    def to_data(x_svg, y_svg):
        m, value = inverse.transform((x_svg, height - y_svg))
        return float(m), float(value)
    return to_data


def figure_title(dim, base):
    return "Refined intermediate bound vs. M for N=%d (log base %s)" \
        % (dim, base.name)

