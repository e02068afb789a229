"""Exact symbolic calculus for rational Cherednik algebras: reflection
groups over cyclotomic fields, PBW arithmetic, Dunkl operators, centralizer
(Harish-Chandra) maps, jet calculus, a slice gluing model and induction
functors, all with zero-residual identity checking."""

__version__ = "0.1.0"
