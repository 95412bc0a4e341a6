"""
Utilities - logging, serialization and job execution helpers.
"""
