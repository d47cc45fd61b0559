"""Text notations: graphs, formulas, proof scripts and natural-deduction proofs."""
