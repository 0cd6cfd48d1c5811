"""Command-line surface: experiment runs, baselines, data utilities, plots."""
