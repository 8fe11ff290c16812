"""Discrete reductive perturbation toolkit for nonlinear lattice equations."""
