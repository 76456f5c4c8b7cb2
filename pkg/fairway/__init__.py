from .SpeciesDetails import *
from .Pathway import *
from .TransitionSystem import *
from .ComponentMap import *
from .AbstractPathway import *
from .Formula import *
from .FairChecker import *
from .PathOracle import *
from .SmvExport import *
from .RunConfig import *
from .PathwayGenerator import *
from .FairwayApiWrapper import *
from .FairwayConsole import *
from .FairwayEpcServer import *
