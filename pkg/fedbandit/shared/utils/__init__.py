from .install import *
from .misc import *
from .strings import *
