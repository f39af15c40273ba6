from typing import Tuple

from commands.simulate import Probe, Simulate, Verify
from commands.solve import Solve
from commands.sweep import Sweep, Table1
from commands.tables import Figure1, Table2
from core import Command

COMMANDS: Tuple[type[Command], ...] = (
    Solve,
    Sweep,
    Table1,
    Table2,
    Figure1,
    Simulate,
    Verify,
    Probe,
)
