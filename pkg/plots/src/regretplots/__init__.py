"""Static figures from graphbandit CSV outputs.

Pure view layer: the scripts render exactly what the CSV files contain and
never recompute regret. Rendering is byte-deterministic (fixed style, no
timestamps), so regenerating a figure from the same inputs reproduces the
same file.
"""

from regretplots.figures import FigureSpec, MissingColumnError, NoDataError, plot

__all__ = ["FigureSpec", "MissingColumnError", "NoDataError", "plot"]
