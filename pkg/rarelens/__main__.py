"""
RareLens - Imbalanced Regression Toolkit

Entry point for running as a module:
    python -m rarelens <command>
"""

from .cli import main

if __name__ == '__main__':
    main()
