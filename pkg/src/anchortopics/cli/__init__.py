"""Subcommand implementations behind the ``anchortopics`` console script."""
