"""
Output formatters for RareLens
"""

from .console import ConsoleOutput
from .json_export import JsonExporter
from .csv_export import CsvExporter

__all__ = ['ConsoleOutput', 'JsonExporter', 'CsvExporter']
