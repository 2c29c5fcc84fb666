"""Pajek and CSV file formats."""

from .pajek import (
    parse_clu,
    parse_net,
    read_clu,
    read_labels,
    read_net,
    save_clu,
    save_net,
    save_vector,
    write_clu,
    write_net,
    write_vector,
)
from .reports import read_table, save_report, write_report

__all__ = [
    "parse_clu",
    "parse_net",
    "read_clu",
    "read_labels",
    "read_net",
    "read_table",
    "save_clu",
    "save_net",
    "save_report",
    "save_vector",
    "write_clu",
    "write_net",
    "write_report",
    "write_vector",
]
