"""Berge hypergraphs, shadows and cover Turan numbers."""
