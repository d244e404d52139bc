from .menus import IntervalMenu, build_menu
from .solver import DUPLICATOR, FP, SPOILER, US, GameOutcome, MoveRecord, duplicator_wins, replay
