from dataclasses import dataclass, field
from enum import Enum
from numbers import Number


class FontType(Enum):
    COURIER = "Courier"
    HELVETICA = "Helvetica"
    TIMES = "Times"


@dataclass
class Margins:
    top: Number = 10
    right: Number = 10
    bottom: Number = 10
    left: Number = 10


@dataclass
class ReportConfig:
    margins: Margins = field(default_factory=Margins)
    font_type: FontType = FontType.HELVETICA
    max_rows: int = 0
    """Trace rows shown; 0 keeps all of them."""
