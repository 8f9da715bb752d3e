from .monoid import Monoid
from .monoid import parse_monoid
from .monoid import solve_transport
from .monoid import TransportInstance

from .krelation import Attribute
from .krelation import AttributeSet
from .krelation import KRelation
from .krelation import WitnessFunction

from .hypergraph import Hypergraph
from .hypergraph import WeakCycle

from ._common import ElementDomainError
from ._common import MonoidMismatch
from ._common import SchemaError
from ._common import UnsupportedMonoid
from ._common import BudgetExceeded
from ._common import WitnessContractError
from ._common import ExpressionSyntaxError
from ._common import DocumentError

__version__ = '0.1.0'
