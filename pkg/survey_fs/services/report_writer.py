"""
ReportWriter Service
Score tables, evaluation reports, sweep CSV, SVG accuracy charts and the text summary
"""

import json
import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, TextIO, Union

import matplotlib
import pandas as pd
from matplotlib.figure import Figure

from config import (
    CHART_HEIGHT_PX,
    CHART_WIDTH_PX,
    CLASSIFIER_LABELS,
    CSV_FLOAT_FORMAT,
    SUMMARY_FILE,
    SVG_HASH_SALT,
    SWEEP_CHART_TEMPLATE,
    SWEEP_FILE,
)
from core.analysis.scoring import ScoreVector
from core.data.tabular import DataTable
from core.errors import ReportError, SchemaError
from services.cross_validator import EvaluationReport
from services.sweep_runner import SweepResult, best_cell, method_peaks

logger = logging.getLogger(__name__)

Metadata = Optional[Mapping[str, object]]

CHART_DPI = 72
TOP_N_SUMMARY = 3


def metadata_line(metadata: Metadata) -> str:
    """Single `# key=value ...` comment line, empty when there is no metadata"""
    if not metadata:
        return ""
    return "# " + " ".join(f"{key}={value}" for key, value in metadata.items()) + "\n"


def svg_metadata(metadata: Metadata) -> Dict[str, Optional[str]]:
    """SVG metadata: no date, run metadata as sorted JSON in the description"""
    fields: Dict[str, Optional[str]] = {"Date": None}
    if metadata:
        fields["Description"] = json.dumps(dict(metadata), sort_keys=True, default=str)
    return fields


@contextmanager
def _writing(path: Union[str, Path]) -> Iterator[TextIO]:
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            yield f
    except OSError as e:
        raise ReportError(path, e.strerror or str(e)) from e


def prepare_output_dir(out_dir: Union[str, Path]) -> Path:
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise ReportError(out_dir, e.strerror or str(e)) from e
    if not out_dir.is_dir():
        raise ReportError(out_dir, "not a directory")
    return out_dir


# Rank output

def scores_frame(table: DataTable, vectors: Sequence[ScoreVector]) -> pd.DataFrame:
    """
    One row per attribute, one column per method, rows in the first method's
    ranking order. `n_values` is the attribute's category count.
    """
    if not vectors:
        raise SchemaError("No score vectors to tabulate")

    schema = table.schema
    rows = []
    for index in vectors[0].ranking:
        row = {"attribute_name": schema.variables[index].name}
        for vector in vectors:
            row[vector.method.name] = vector.scores[index]
        row["n_values"] = schema.variables[index].n_categories
        rows.append(row)
    return pd.DataFrame(rows, columns=["attribute_name"] + [v.method.name for v in vectors] + ["n_values"])


def write_scores_csv(frame: pd.DataFrame, target: Union[str, Path, TextIO], metadata: Metadata = None) -> None:
    if isinstance(target, (str, Path)):
        with _writing(target) as f:
            write_scores_csv(frame, f, metadata)
        logger.info(f" Scores written to {target}")
        return
    target.write(metadata_line(metadata))
    frame.to_csv(target, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")


# Evaluation output

def write_evaluation_csv(report: EvaluationReport, path: Union[str, Path], metadata: Metadata = None) -> Path:
    frame = report.to_frame()
    frame["positive_class"] = report.positive_class
    with _writing(path) as f:
        f.write(metadata_line(metadata))
        frame.to_csv(f, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    logger.info(f" Evaluation CSV written to {path}")
    return Path(path)


def write_evaluation_json(report: EvaluationReport, path: Union[str, Path], metadata: Metadata = None) -> Path:
    payload = {"metadata": dict(metadata or {}), **report.to_dict()}
    with _writing(path) as f:
        json.dump(payload, f, indent=2)
        f.write("\n")
    logger.info(f" Evaluation JSON written to {path}")
    return Path(path)


def format_evaluation(report: EvaluationReport) -> str:
    """Human-readable metric table, one row per classifier"""
    lines = [f"{'classifier':<14}{'AUC':>8}{'CA':>8}{'F1':>8}{'Precision':>11}{'Recall':>8}"]
    for result in report.results:
        m = result.metrics
        auc_text = "n/a" if m.auc is None else f"{m.auc:.3f}"
        lines.append(
            f"{result.label:<14}{auc_text:>8}{m.ca:>8.3f}{m.f1:>8.3f}{m.precision:>11.3f}{m.recall:>8.3f}"
        )
    lines.append(
        f"seed={report.seed} folds={report.k} rows={report.n_rows} positive_class={report.positive_class}"
    )
    return "\n".join(lines) + "\n"


# Sweep output

def sweep_frame(result: SweepResult) -> pd.DataFrame:
    rows = [
        {
            "method": cell.method,
            "classifier": cell.classifier,
            "k": cell.k,
            "ca": cell.ca,
            "attributes": "|".join(cell.attribute_names),
        }
        for cell in result.iter_cells()
    ]
    return pd.DataFrame(rows, columns=["method", "classifier", "k", "ca", "attributes"])


def write_sweep_csv(result: SweepResult, path: Union[str, Path], metadata: Metadata = None) -> Path:
    frame = sweep_frame(result)
    with _writing(path) as f:
        f.write(metadata_line(metadata))
        frame.to_csv(f, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    return Path(path)


def render_sweep_chart(
    result: SweepResult, classifier: str, path: Union[str, Path], metadata: Metadata = None
) -> Path:
    """
    One line per method, x = number of attributes, y = CA in percent. Run
    metadata goes into the SVG description as sorted JSON.
    """
    path = Path(path)
    fig = Figure(figsize=(CHART_WIDTH_PX / CHART_DPI, CHART_HEIGHT_PX / CHART_DPI), dpi=CHART_DPI)
    ax = fig.add_subplot(1, 1, 1)
    k_values = list(result.config.k_values)
    for vector in result.rankings:
        curve = result.curve(vector.method.name, classifier)
        ax.plot(
            [k for k, _ in curve],
            [ca * 100 for _, ca in curve],
            marker="o",
            markersize=3,
            linewidth=1.5,
            label=vector.method.algorithm.label,
        )
    ax.set_xticks(k_values)
    ax.set_xlabel("Number of attributes")
    ax.set_ylabel("CA (%)")
    ax.set_title(CLASSIFIER_LABELS.get(classifier, classifier))
    ax.grid(True, linewidth=0.5, alpha=0.5)
    ax.legend(loc="lower right", fontsize="small")
    fig.tight_layout()

    with matplotlib.rc_context({"svg.hashsalt": SVG_HASH_SALT, "svg.fonttype": "path"}):
        try:
            fig.savefig(path, format="svg", metadata=svg_metadata(metadata))
        except OSError as e:
            raise ReportError(path, e.strerror or str(e)) from e
    return path


def format_summary(result: SweepResult) -> str:
    best = best_cell(result)
    lines = [
        f"best: method={best.method} classifier={best.classifier} k={best.k} "
        f"ca={best.ca:.4f} attributes={'|'.join(best.attribute_names)}",
        "",
        "peak CA per method:",
    ]
    for peak in method_peaks(result):
        lines.append(f"  {peak.method:<10} {peak.classifier:<9} ca={peak.ca:.4f} k={peak.k}")

    lines += ["", f"top-{TOP_N_SUMMARY} attributes per method:"]
    for vector in result.rankings:
        names = [result.attribute_names[i] for i in vector.top(TOP_N_SUMMARY)]
        lines.append(f"  {vector.method.name:<10} {', '.join(names)}")
    return "\n".join(lines) + "\n"


def write_summary(result: SweepResult, path: Union[str, Path], metadata: Metadata = None) -> Path:
    with _writing(path) as f:
        f.write(metadata_line(metadata))
        f.write(format_summary(result))
    return Path(path)


def emit_report(result: SweepResult, out_dir: Union[str, Path], metadata: Metadata = None) -> List[Path]:
    """Sweep CSV plus one SVG chart per classifier; returns the written paths."""
    out_dir = prepare_output_dir(out_dir)
    written = [write_sweep_csv(result, out_dir / SWEEP_FILE, metadata)]
    for classifier in result.classifiers:
        chart = out_dir / SWEEP_CHART_TEMPLATE.format(classifier=classifier)
        written.append(render_sweep_chart(result, classifier, chart, metadata))
    for path in written:
        logger.info(f" Wrote {path}")
    return written


def emit_summary(result: SweepResult, out_dir: Union[str, Path], metadata: Metadata = None) -> Path:
    path = write_summary(result, prepare_output_dir(out_dir) / SUMMARY_FILE, metadata)
    logger.info(f" Wrote {path}")
    return path


class ReportWriter:
    """
    Service for writing run artifacts, each stamped with the same run metadata
    """

    def __init__(self, metadata: Metadata = None):
        self.metadata = dict(metadata or {})

    def write_scores(self, frame: pd.DataFrame, target: Union[str, Path, TextIO]) -> None:
        """
        Write the rank table

        Args:
            frame: output of scores_frame
            target: file path or open text stream
        """
        write_scores_csv(frame, target, self.metadata)

    def write_evaluation(
        self,
        report: EvaluationReport,
        csv_path: Optional[Union[str, Path]] = None,
        json_path: Optional[Union[str, Path]] = None,
    ) -> List[Path]:
        """
        Write the evaluation report as CSV and/or JSON

        Returns:
            Paths written, CSV first
        """
        written = []
        if csv_path:
            written.append(write_evaluation_csv(report, csv_path, self.metadata))
        if json_path:
            written.append(write_evaluation_json(report, json_path, self.metadata))
        return written

    def write_sweep(self, result: SweepResult, out_dir: Union[str, Path]) -> List[Path]:
        """
        Write sweep.csv, one SVG chart per classifier and summary.txt

        Returns:
            Paths written, summary last
        """
        written = emit_report(result, out_dir, self.metadata)
        written.append(emit_summary(result, out_dir, self.metadata))
        return written
