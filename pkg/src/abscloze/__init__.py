"""Multiple-choice cloze answering over long articles.

Scores five candidate options for a blank in a question, improves the raw
decision with lexical-database knowledge (concreteness features, hypernym and
hyponym structure), handles long articles by overlapping-chunk voting, and
explains predictions with integrated gradients.  Model inference sits behind
a small scoring contract with a deterministic built-in scorer and an HTTP
client for an external inference service.
"""

__version__ = "0.1.0"
