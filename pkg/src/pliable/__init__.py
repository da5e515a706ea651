"""Linear pliable index codes over small finite fields."""

from .bench import BenchRow, SuiteSpec, rows_to_csv, run_benchmark, run_suite
from .bingreedy import encode, group_messages, sort_messages
from .bingreedy_t import encode_t
from .bounds import BoundReport, bound_report, constant_weight_code, constant_weight_rows, lower_bound
from .decoding import SatisfactionReport, VectorCode, decodable_set, vector_decodable_set, verify
from .field import FieldError, Matrix, in_span, rank, row_basis
from .instances import (
    GenSpec,
    Instance,
    InstanceError,
    complete,
    complete_t,
    field_size_instance,
    generate,
    heterogeneous,
    random_instance,
    validate,
)
from ._greedy import EncodeResult, EncodingError
from .oracle import NoCodeFound, OracleInfeasible, OracleResult, minrank_fit, optimal_code_length

__version__ = "0.1.0"
