"""Command registry."""
from typing import Dict, List, Optional

from kummerlab.commands.base import Command
from kummerlab.commands.char_commands import CharsumCommand, MixingCommand
from kummerlab.commands.construct_commands import ConstructCommand, DensityCommand, VerifyCommand
from kummerlab.commands.fourier_commands import (
    AssemblyCommand,
    BoxesCommand,
    BuchstabCommand,
    DenominatorsCommand,
    FourierCommand,
)
from kummerlab.commands.kummer_commands import FCommand, SeedApssvCommand, TableCommand
from kummerlab.utils.logger import get_logger

logger = get_logger(__name__)


class CommandRegistry:
    """Registry for CLI commands."""

    def __init__(self):
        """Initialize command registry with all available commands."""
        self._commands: Dict[str, Command] = {}
        self._register_default_commands()

    def _register_default_commands(self):
        """Register default commands."""
        # f(n) itself
        self.register(FCommand())
        self.register(TableCommand())
        self.register(SeedApssvCommand())

        # Multiplier construction
        self.register(ConstructCommand())
        self.register(VerifyCommand())
        self.register(DensityCommand())

        # Fourier side
        self.register(FourierCommand())
        self.register(BoxesCommand())
        self.register(DenominatorsCommand())
        self.register(AssemblyCommand())
        self.register(BuchstabCommand())

        # Characters
        self.register(CharsumCommand())
        self.register(MixingCommand())

        logger.debug(f"Registered {len(self._commands)} commands")

    def register(self, command: Command):
        """Register a command."""
        self._commands[command.name] = command

    def get_command(self, name: str) -> Optional[Command]:
        """Get a command by name."""
        return self._commands.get(name)

    def get_all_commands(self) -> List[Command]:
        """Get all registered commands."""
        return list(self._commands.values())


# Global registry instance
command_registry = CommandRegistry()
