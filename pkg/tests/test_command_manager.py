import argparse

import pytest

from core import Command, CommandManager
from core.errors import CommandError, CommandLoadError, ExitCommandError


class Echo(Command):
    name = "echo"
    help = "records what it was run with"

    def setup(self) -> None:
        self.seen = []

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--word", default="hello")

    def run(self, args: argparse.Namespace) -> None:
        self.seen.append(args.word)


class Quit(Command):
    def run(self, args: argparse.Namespace) -> None:
        self.manager.exit(5)


@pytest.fixture
def manager():
    manager = CommandManager()
    manager.load_commands(Echo, Quit)
    return manager


def test_load_commands(manager):
    assert set(manager.get_command_map()) == {"echo", "quit"}
    assert isinstance(manager.get_command_map()["echo"], Echo)


def test_double_load_raises(manager):
    with pytest.raises(CommandLoadError):
        manager.load_commands(Echo)
    manager.load_commands(Echo, force=True)


def test_unload_command(manager):
    assert manager.unload_command("quit") is Quit
    assert "quit" not in manager.get_command_map()

    with pytest.raises(CommandLoadError):
        manager.unload_command("quit")


def test_unload_active_command(manager):
    manager.change_command("echo")
    with pytest.raises(CommandError):
        manager.unload_command("echo")
    assert manager.unload_command("echo", force=True) is Echo


def test_reload_command_gives_fresh_instance(manager):
    before = manager.get_command_map()["echo"]
    after = manager.reload_command("echo")

    assert after is not before
    assert after.seen == []


def test_change_command_tracks_last(manager):
    manager.change_command("echo")
    manager.change_command("quit")

    assert isinstance(manager.get_current_command(), Quit)
    assert isinstance(manager.get_last_command(), Echo)

    with pytest.raises(CommandError):
        manager.change_command("missing")


def test_run_without_command(manager):
    with pytest.raises(CommandError):
        manager.run_command(argparse.Namespace())


def test_run_through_subparsers(manager):
    parser = argparse.ArgumentParser()
    subparsers = manager.add_subparsers(parser)
    args = parser.parse_args(["echo", "--word", "stable"])

    manager.change_command(args.command)
    manager.run_command(args)

    assert set(subparsers) == {"echo", "quit"}
    assert manager.get_current_command().seen == ["stable"]
    assert manager.get_current_command().timer.elapsed >= 0.0


def test_exit_carries_code(manager):
    manager.change_command("quit")
    with pytest.raises(ExitCommandError) as info:
        manager.run_command(argparse.Namespace())
    assert info.value.exit_code == 5
