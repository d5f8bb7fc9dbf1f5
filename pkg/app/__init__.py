"""Finite experiments around the fourth moment of level-one Hecke eigenforms."""
