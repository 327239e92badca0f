# Structured-Text File Formats
# MatrixFile (split real/imaginary Hermitian matrix) and RunReport (one solve, trace embedded)

import csv
import json
from dataclasses import asdict
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from config import HERMITIAN_TOL_REL, MATRIX_FILE_FORMAT, RUN_REPORT_FORMAT, VERSION
from core import log_debug
from cr_calculus import HermitianMatrix
from error_handler import InputFileError
from optimizer import IterationRecord, OptimizerConfig, SolveResult
from problems import ProblemInstance

PathLike = Union[str, Path]


class MatrixFile(BaseModel):
    """a_ik = re[i][k] + j*im[i][k]; re symmetric and im antisymmetric within tolerance"""
    model_config = ConfigDict(extra="forbid")

    format: str = MATRIX_FILE_FORMAT
    n: int = Field(ge=1)
    re: List[List[float]]
    im: List[List[float]]
    label: Optional[str] = None
    provenance: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_hermitian_split(self) -> "MatrixFile":
        if self.format != MATRIX_FILE_FORMAT:
            raise ValueError(f"unsupported format {self.format!r}, expected {MATRIX_FILE_FORMAT!r}")
        re = np.asarray(self.re, dtype=np.float64)
        im = np.asarray(self.im, dtype=np.float64)
        for name, part in (("re", re), ("im", im)):
            if part.shape != (self.n, self.n):
                raise ValueError(f"{name} has shape {part.shape}, expected ({self.n}, {self.n})")
            if not np.all(np.isfinite(part)):
                raise ValueError(f"{name} has non-finite entries")

        tol = HERMITIAN_TOL_REL * float(np.max(np.abs(re + 1j * im)))
        if np.max(np.abs(re - re.T)) > tol:
            raise ValueError("Hermitian invariant violated: re is not symmetric")
        if np.max(np.abs(im + im.T)) > tol:
            raise ValueError("Hermitian invariant violated: im is not antisymmetric")
        return self

    @classmethod
    def from_matrix(cls, A: HermitianMatrix, label: Optional[str] = None,
                    provenance: Optional[Dict[str, Any]] = None) -> "MatrixFile":
        return cls(
            n=A.n,
            re=A.entries.real.tolist(),
            im=A.entries.imag.tolist(),
            label=label,
            provenance=provenance or {},
        )

    @classmethod
    def from_instance(cls, instance: ProblemInstance) -> "MatrixFile":
        return cls.from_matrix(instance.A, instance.label, instance.provenance)

    def to_hermitian(self) -> HermitianMatrix:
        a = np.empty((self.n, self.n), dtype=np.complex128)
        a.real = self.re
        a.imag = self.im
        return HermitianMatrix(a)


class TraceRow(BaseModel):
    iter: int
    cost: float
    grad_norm: float
    step: float
    backtracks: int


class RunReport(BaseModel):
    """Same schema for every status; failed runs carry an error record and null results"""
    format: str = RUN_REPORT_FORMAT
    version: str = VERSION
    provenance: Dict[str, Any] = Field(default_factory=dict)
    config: Dict[str, Any] = Field(default_factory=dict)
    status: str
    cost_final: Optional[float] = None
    grad_norm_final: Optional[float] = None
    iterations: Optional[int] = None
    trace: List[TraceRow] = Field(default_factory=list)
    wall_time: float = 0.0
    error: Optional[Dict[str, Any]] = None

    @classmethod
    def from_result(cls, result: SolveResult, provenance: Dict[str, Any],
                    config: Dict[str, Any], wall_time: float) -> "RunReport":
        return cls(
            provenance=provenance,
            config=config,
            status=result.status.value,
            cost_final=result.cost_final,
            grad_norm_final=result.grad_norm_final,
            iterations=result.iterations,
            trace=[TraceRow(**asdict(record)) for record in result.trace],
            wall_time=wall_time,
        )


def config_echo(config: OptimizerConfig, A: Optional[HermitianMatrix] = None) -> Dict[str, Any]:
    echo = config.model_dump()
    if A is not None:
        echo["initial_step"] = config.resolve_initial_step(A)
    return echo


def _dump(model: BaseModel) -> str:
    # json.dumps writes floats with repr, the shortest string that reads back bit-exactly
    return json.dumps(model.model_dump(mode="json"), indent=2) + "\n"


def _write_text(path: PathLike, text: str):
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise InputFileError(f"cannot write {path}: {e.strerror or e}", path=str(path)) from e


def write_matrix_file(path: PathLike, matrix_file: MatrixFile):
    _write_text(path, _dump(matrix_file))
    log_debug("Matrix file written", {"path": str(path), "n": matrix_file.n})


def read_matrix_file(path: PathLike) -> MatrixFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputFileError(f"cannot read {path}: {e.strerror or e}", path=str(path)) from e
    try:
        matrix_file = MatrixFile.model_validate(json.loads(text))
    except json.JSONDecodeError as e:
        raise InputFileError(f"invalid matrix file {path}: not JSON ({e.msg})", path=str(path)) from e
    except ValidationError as e:
        violations = "; ".join(err["msg"] for err in e.errors())
        raise InputFileError(f"invalid matrix file {path}: {violations}", path=str(path)) from e
    log_debug("Matrix file read", {"path": str(path), "n": matrix_file.n})
    return matrix_file


def write_run_report(path: PathLike, report: RunReport):
    _write_text(path, _dump(report))
    log_debug("Run report written", {"path": str(path), "status": report.status})


def write_trace_csv(path: PathLike, trace: List[IterationRecord]):
    """One row per iteration: iter, cost, grad_norm, step, backtracks"""
    try:
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(["iter", "cost", "grad_norm", "step", "backtracks"])
            for record in trace:
                writer.writerow([record.iter, repr(record.cost), repr(record.grad_norm),
                                 repr(record.step), record.backtracks])
    except OSError as e:
        raise InputFileError(f"cannot write {path}: {e.strerror or e}", path=str(path)) from e
