"""Tak rules engine and 3x3 proof solver."""

from ._core import (
    ContractError,
    DomainError,
    GameService,
    IllegalMove,
    LineFileError,
    ParseError,
    Position,
    Solver,
    aturan_position,
    bundled_line_files,
    fall_count,
    fall_patterns,
    game_length_bound,
    perft,
    verify_line_file,
)

__all__ = [
    "ContractError",
    "DomainError",
    "GameService",
    "IllegalMove",
    "LineFileError",
    "ParseError",
    "Position",
    "Solver",
    "aturan_position",
    "bundled_line_files",
    "fall_count",
    "fall_patterns",
    "game_length_bound",
    "perft",
    "verify_line_file",
]
