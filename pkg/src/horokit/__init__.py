"""Horospherical Cauchy/Radon transforms and Hardy spaces on rank-one hyperboloids."""

__version__ = "0.1.0"
