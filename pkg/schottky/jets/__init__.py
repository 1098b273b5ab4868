from schottky.jets.taylor import UNITARY, OddJet, RestrictedCubic, odd_jet, restrict_cubic

__all__ = ["UNITARY", "OddJet", "RestrictedCubic", "odd_jet", "restrict_cubic"]
