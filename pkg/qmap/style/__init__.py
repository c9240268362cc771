"""
    Figure Style
    Colour themes and font sizes for the SVG figures
"""

from .theme import light_theme, dark_theme, themes
from .font import font

__all__ = ['light_theme', 'dark_theme', 'themes', 'font']
