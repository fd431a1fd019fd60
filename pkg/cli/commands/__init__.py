# Make commands importable
from . import algebra
from . import kondo
from . import spectrum
from . import freefermion
