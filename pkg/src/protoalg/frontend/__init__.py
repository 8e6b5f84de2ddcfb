"""Definition language, CLI, JSON reporting, and random generation."""
