"""Benchmark generator, ground-truth oracle and evaluation harness for hard
long-context retrieval: multi-matching and logic-based tasks over synthetic
key-value and student-resume corpora, with chain-of-thought trace auditing."""

__version__ = "0.1.0"
