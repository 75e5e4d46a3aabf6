"""Bundled study files (configs, matrices, example survey)."""
