"""JSON schemas of the command-line reports."""
