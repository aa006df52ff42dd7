"""Exact double-groupoid toolkit: examples, verification, and convolution norms."""

from ._dgkit import ConvElement, Example, Fragment, build_example, list_examples

__all__ = ["ConvElement", "Example", "Fragment", "build_example", "list_examples"]
