"""toriq 的子命令注册表。"""

from core.commands.atlas import AtlasCommand
from core.commands.base import Command, CommandOutput
from core.commands.classify import ClassifyCommand
from core.commands.reduce import ReduceCommand
from core.commands.render import RenderCommand
from core.commands.sample import SampleCommand
from core.commands.validate import ValidateCommand

COMMANDS = {
    cls.name: cls
    for cls in (ValidateCommand, ReduceCommand, AtlasCommand, ClassifyCommand, SampleCommand, RenderCommand)
}

__all__ = ["COMMANDS", "Command", "CommandOutput"]
