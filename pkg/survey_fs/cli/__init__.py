"""
Subcommands for survey-fs
"""

from . import evaluate, generate, rank, sweep

COMMANDS = [generate, rank, evaluate, sweep]

__all__ = ["COMMANDS", "evaluate", "generate", "rank", "sweep"]
