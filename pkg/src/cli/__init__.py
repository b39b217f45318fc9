"""
Command-line interface.
"""

from .main import RunConfig, create_parser, main, run

__all__ = ['RunConfig', 'create_parser', 'main', 'run']
