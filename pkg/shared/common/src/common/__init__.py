"""Shared settings, logging and report models for lieperiod."""
