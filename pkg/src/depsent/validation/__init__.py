from .verifier import TreeVerifier, Violation, validate_tree

__all__ = ["TreeVerifier", "Violation", "validate_tree"]
