"""modkit: author personal text classifiers by labeling, rules, or prompts."""

__version__ = "0.1.0"

from .types import Comment, Label, Prediction, Strategy

__all__ = ["Comment", "Label", "Prediction", "Strategy", "__version__"]
