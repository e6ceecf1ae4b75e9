"""Sentence embedding HTTP service."""

from .app import create_app, main
