"""Chat-completions stub server and wire schemas."""
