from .code_types import BudgetExceededError as BudgetExceededError
from .code_types import DistanceReport as DistanceReport
from .code_types import FieldMismatchError as FieldMismatchError
from .code_types import GraphCodeError as GraphCodeError
from .code_types import InternalError as InternalError
from .code_types import PreconditionError as PreconditionError
from .code_types import RankDeficientError as RankDeficientError
from .code_types import UsageError as UsageError
from .families import get_family_builder as get_family_builder
from .fields import FieldContext as FieldContext
from .fields import FieldElement as FieldElement
from .fields import get_field as get_field
from .format_error import error_hint as error_hint
from .format_error import format_error_message as format_error_message
from .graph_metric import GraphCode as GraphCode
from .graph_metric import GraphWord as GraphWord
from .graph_metric import MatrixWord as MatrixWord
from .graph_metric import code_distance as code_distance
from .graph_metric import composite_distance_report as composite_distance_report
from .graph_metric import singleton_check as singleton_check
from .hamming_codes import LinearCode as LinearCode
from .hamming_codes import hamming_min_distance as hamming_min_distance
from .log import logger as logger
from .log import setup_logging as setup_logging
from .report_renderer import format_markdown_table as format_markdown_table
from .report_renderer import render_report as render_report
from .run_config import ConfigLoader as ConfigLoader
from .run_config import RunConfig as RunConfig
