from .report_store import ReportStore, dumps, format_real
from .serializers import eigenform_to_dict, family_metadata, qexpansion_to_dict
from .table_writer import BOUND_COLUMNS, LVALUE_COLUMNS, MARGIN_COLUMNS, TableWriter, chain_rows

__all__ = [
    "BOUND_COLUMNS",
    "LVALUE_COLUMNS",
    "MARGIN_COLUMNS",
    "ReportStore",
    "TableWriter",
    "chain_rows",
    "dumps",
    "eigenform_to_dict",
    "family_metadata",
    "format_real",
    "qexpansion_to_dict",
]
