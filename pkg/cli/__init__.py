"""Experiment orchestration behind the regfactor command line."""
