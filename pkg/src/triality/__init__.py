"""Ternary derivations and automorphisms of finite-dimensional algebras, exactly."""
