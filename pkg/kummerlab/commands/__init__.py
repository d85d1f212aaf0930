"""CLI commands: one class per subcommand, collected in the registry."""
