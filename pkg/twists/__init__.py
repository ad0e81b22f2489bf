"""Jordanian twist family F_u: exact Hopf algebra checks and κ-Minkowski star products."""
from logging import getLogger

logger = getLogger(__name__)
