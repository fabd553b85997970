"""Closed-form evaluators and integrands of the identity catalog."""
