"""
Main entry point for the fnlie package.
"""

from .cli import cli

if __name__ == '__main__':
    cli()
