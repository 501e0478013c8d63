#!/usr/bin/env python3
"""
Console Formatter - Report Formatting
Tables for command results; ASCII by default so stdout stays
byte-stable across terminals
"""

from typing import Sequence
from enum import Enum


class BoxStyle(Enum):
    """Box drawing styles"""
    ASCII = {
        'tl': '+', 'tr': '+', 'bl': '+', 'br': '+',
        'h': '-', 'v': '|', 'cross': '+',
        'left': '+', 'right': '+', 'top': '+', 'bottom': '+'
    }
    SINGLE = {
        'tl': '┌', 'tr': '┐', 'bl': '└', 'br': '┘',
        'h': '─', 'v': '│', 'cross': '┼',
        'left': '├', 'right': '┤', 'top': '┬', 'bottom': '┴'
    }


class ConsoleFormatter:
    """
    Report formatting utilities

    Features:
    - Tables for axiom reports, atom lists and E(g) summaries
    - Status words for verdicts
    """

    STATUS_WORDS = {
        'pass': 'PASS',
        'fail': 'FAIL',
        'assumed': 'ASSUMED',
        'unchecked': 'UNCHECKED',
    }

    @staticmethod
    def table(headers: Sequence[str], rows: Sequence[Sequence[object]],
              style: BoxStyle = BoxStyle.ASCII) -> str:
        """
        Create a formatted table

        Args:
            headers: Column headers
            rows: Data rows (cells are str()-ed)
            style: Box style

        Returns:
            Formatted table
        """
        chars = style.value

        col_widths = [len(h) for h in headers]
        for row in rows:
            for i, cell in enumerate(row):
                col_widths[i] = max(col_widths[i], len(str(cell)))
        col_widths = [w + 2 for w in col_widths]

        def border(left: str, middle: str, right: str) -> str:
            return left + middle.join(chars['h'] * w for w in col_widths) + right

        def line(cells: Sequence[object]) -> str:
            return chars['v'] + chars['v'].join(
                f" {str(cell).ljust(width - 1)}" for cell, width in zip(cells, col_widths)
            ) + chars['v']

        result = [border(chars['tl'], chars['top'], chars['tr']), line(headers),
                  border(chars['left'], chars['cross'], chars['right'])]
        result.extend(line(row) for row in rows)
        result.append(border(chars['bl'], chars['bottom'], chars['br']))
        return '\n'.join(result)

    @staticmethod
    def status_badge(status: str, width: int = 9) -> str:
        word = ConsoleFormatter.STATUS_WORDS.get(status.lower(), status.upper())
        return word.ljust(width)


# === HELPER FUNCTIONS ===

def print_table(headers: Sequence[str], rows: Sequence[Sequence[object]],
                style: BoxStyle = BoxStyle.ASCII):
    """Quick helper to print a table"""
    print(ConsoleFormatter.table(headers, rows, style))
