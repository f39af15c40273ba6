from core.command_manager import Command, CommandManager
