"""Classification tools for principally polarized abelian surfaces isogenous to Jacobians
over finite prime fields, together with the exact arithmetic they rest on."""

__version__ = "0.1.0"
