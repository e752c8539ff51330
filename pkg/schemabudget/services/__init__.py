"""Benchmark generation, experiment orchestration and reporting."""
