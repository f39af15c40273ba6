"""
This file contains the command registry driving the command-line front end.
"""

from __future__ import annotations

import argparse
import logging
from typing import Dict, Optional, Tuple

from core.errors import CommandError, CommandLoadError, ExitCommandError
from core.utils import Timer

logger = logging.getLogger(__name__)


class Command:
    name: str = ""
    help: str = ""
    # destinations a config file may set for this command
    config_keys: Tuple[str, ...] = ()
    manager: Optional[CommandManager] = None

    def __init__(self) -> None:
        self.timer = Timer()

    @classmethod
    def command_name(cls) -> str:
        return cls.name or cls.__name__.lower()

    def setup(self) -> None:
        """This method is only called once, right after the class has been
        instantiated inside the CommandManager.
        """

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        """Registers the command's own flags on its subparser."""

    def run(self, args: argparse.Namespace) -> None:
        """Executes the command. Leaving with a nonzero code goes through
        `CommandManager.exit`.
        """


class CommandManager:
    __slots__ = (
        "__commands",
        "__current_command",
        "__last_command",
    )

    def __init__(self) -> None:
        Command.manager = self

        self.__commands: Dict[str, Command] = {}
        self.__current_command: Optional[Command] = None
        self.__last_command: Optional[Command] = None

    def load_commands(self, *commands: type[Command], force: bool = False, **kwargs) -> None:
        """Loads the Commands into the CommandManager.

        Parameters
        ----------
        *commands: :type:`Command`
            The `Command`s to be loaded into the manager.

        force: :class:`bool`, default `False`
            Loads the Command regardless of whether it has already been loaded or
            not without raising any internal error.

        **kwargs:
            The keyword arguments to be passed to the `Command`'s subclass on
            instantiation.

        Raises
        ------
        :exc:`CommandLoadError`
            Raised when the command has already been loaded.
            Only raised when `force` is set to `False`.
        """

        for command in commands:
            name = command.command_name()
            if not force and name in self.__commands:
                raise CommandLoadError(
                    f"Command: {name} has already been loaded.",
                    last_command=self.__last_command,
                )

            self.__commands[name] = command(**kwargs)
            self.__commands[name].setup()

    def unload_command(self, command_name: str, force: bool = False) -> type[Command]:
        """Unloads the `Command` from the CommandManager.

        Parameters
        ----------
        command_name: :class:`str`
            The name of the Command to be unloaded.

        force: :class:`bool`, default `False`
            Unloads the Command even if it's the active one without raising any
            internal error.

        Returns
        --------
        type[:class:`Command`]
            The :class:`Command` class of the deleted Command name.

        Raises
        ------
        :exc:`CommandLoadError`
            Raised when the command doesn't exist in the manager to be unloaded.

        :exc:`CommandError`
            Raised when trying to unload the active Command.
            Only raised when `force` is set to `False`.
        """

        if command_name not in self.__commands:
            raise CommandLoadError(
                f"Command: {command_name} doesn't exist to be unloaded.",
                last_command=self.__last_command,
            )

        elif (
            not force
            and self.__current_command is not None
            and command_name == self.__current_command.command_name()
        ):
            raise CommandError(
                "Cannot unload the active command.",
                last_command=self.__last_command,
            )

        cls_ref = self.__commands[command_name].__class__
        del self.__commands[command_name]
        return cls_ref

    def reload_command(self, command_name: str, force: bool = False, **kwargs) -> Command:
        """Reloads the specified Command. A short hand to
        `CommandManager.unload_command` & `CommandManager.load_commands`.

        Returns
        --------
        :class:`Command`
            Returns the newly made :class:`Command` instance.
        """

        deleted_cls = self.unload_command(command_name=command_name, force=force)
        self.load_commands(deleted_cls, force=force, **kwargs)
        return self.__commands[command_name]

    def get_current_command(self) -> Optional[Command]:
        return self.__current_command

    def get_last_command(self) -> Optional[Command]:
        return self.__last_command

    def get_command_map(self) -> Dict[str, Command]:
        """Gets the dictionary copy of all commands.

        Returns
        --------
        Dict[:class:`str`, :class:`Command`]
            Returns the dictionary copy of all commands.
        """

        return self.__commands.copy()

    def add_subparsers(self, parser: argparse.ArgumentParser) -> Dict[str, argparse.ArgumentParser]:
        """Adds one subparser per loaded command and returns them by name."""

        subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
        subparsers.required = True

        built = {}
        for name, command in self.__commands.items():
            subparser = subparsers.add_parser(name, help=command.help)
            command.add_arguments(subparser)
            built[name] = subparser
        return built

    def change_command(self, command_name: str) -> None:
        """Changes the current command and updates the last command.

        Raises
        ------
        :exc:`CommandError`
            Raised when the command name doesn't exist in the manager.
        """

        if command_name not in self.__commands:
            raise CommandError(
                f"Command `{command_name}` isn't present from the available commands: "
                f"`{', '.join(self.get_command_map().keys())}`."
            )

        self.__last_command = self.__current_command
        self.__current_command = self.__commands[command_name]

    def run_command(self, args: argparse.Namespace) -> None:
        """Runs the current command and logs how long it took.

        Raises
        ------
        :exc:`CommandError`
            Raised when no command has been set to run.
        """

        if self.__current_command is None:
            raise CommandError(
                "No command has been set to run.", last_command=self.__last_command
            )

        command = self.__current_command
        with command.timer:
            command.run(args)
        logger.debug("%s finished in %.3f s", command.command_name(), command.timer.elapsed)

    def exit(self, exit_code: int = 0, **kwargs) -> None:
        """Leaves the running command.

        Raises
        ------
        :exc:`ExitCommandError`
            Always raised, carrying `exit_code`.
        """

        raise ExitCommandError(
            f"Command exited with code {exit_code}.",
            exit_code=exit_code,
            last_command=self.__last_command,
            **kwargs,
        )
