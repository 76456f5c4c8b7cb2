#
# RunConfig.py
#
# Run settings shared by the command line, the console and the editor
# server, and the modular verification plan file.
#

import logging
import os
from dataclasses import dataclass

from .TransitionSystem import DEFAULT_STATE_CAP
from .PathOracle import DEFAULT_ORACLE_CAP

log = logging.getLogger(__name__)

STATE_CAP_ENVIRONMENT = "FAIRWAY_STATE_CAP"
COMPLETE_MODEL = "*"
FORMATS = ("text", "json")


class ConfigError(ValueError):
    pass


class PlanFileError(ConfigError):
    """
    A plan file that cannot be read or names undefined properties.
    """


def _asBool(name, value):
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return value != 0
    if isinstance(value, str):
        if value.lower() in ("true", "1", "on", "yes"):
            return True
        if value.lower() in ("false", "0", "off", "no"):
            return False
    raise ConfigError("{} needs to be 0/1 or True/False".format(name))


def _asPositiveInt(name, value):
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise ConfigError("{} needs to be a positive integer".format(name))
    if number <= 0:
        raise ConfigError("{} needs to be a positive integer".format(name))
    return number


def _asNames(name, value):
    if value is None:
        return ()
    if isinstance(value, str):
        value = value.split(",")
    names = tuple(v.strip() for v in value if v.strip())
    return names


def _asFormat(name, value):
    if value not in FORMATS:
        raise ConfigError("{} needs to be one of {}".format(name, ", ".join(FORMATS)))
    return value


def _asPath(name, value):
    return None if value in (None, "") else str(value)


_CONVERTERS = {
    "fairness": _asBool,
    "stateCap": _asPositiveInt,
    "oracleCap": _asPositiveInt,
    "format": _asFormat,
    "strict": _asBool,
    "inferInit": _asBool,
    "pathwayPath": _asPath,
    "propertyPath": _asPath,
    "planPath": _asPath,
    "namesPath": _asPath,
    "onto": _asNames,
    "disable": _asNames,
    "manual": _asNames,
}


def defaultStateCap(environ=None):
    """
    The state cap from the environment, or the built-in default.
    """
    environ = os.environ if environ is None else environ
    value = environ.get(STATE_CAP_ENVIRONMENT)
    if value is None:
        return DEFAULT_STATE_CAP
    return _asPositiveInt(STATE_CAP_ENVIRONMENT, value)


class RunConfig(object):
    """
    Named, validated settings for one run.
    """

    def __init__(self, environ=None, **kwargs):
        self.settings = {
            "fairness": True,
            "stateCap": defaultStateCap(environ),
            "oracleCap": DEFAULT_ORACLE_CAP,
            "format": "text",
            "strict": False,
            "inferInit": False,
            "pathwayPath": None,
            "propertyPath": None,
            "planPath": None,
            "namesPath": None,
            "onto": (),
            "disable": (),
            "manual": (),
        }
        for name, value in kwargs.items():
            if value is not None:
                self.setConfig(name, value)

    def setConfig(self, name, value):
        if name not in _CONVERTERS:
            raise ConfigError("unknown configuration option '{}'".format(name))
        self.settings[name] = _CONVERTERS[name](name, value)
        log.debug("config %s = %r", name, self.settings[name])

    def __getitem__(self, name):
        return self.settings[name]

    def options(self):
        return sorted(_CONVERTERS)


@dataclass(frozen=True)
class PlanEntry:
    """
    A property and the component names it is checked on. An empty
    scope means the complete model.
    """

    property: str
    scope: tuple = ()


class ModularPlan(object):
    def __init__(self, entries=(), companions=None, combination=""):
        self.entries = list(entries)
        self.companions = dict(companions or {})
        self.combination = combination

    def scopes(self):
        """
        Distinct scopes in first-use order.
        """
        seen = []
        for entry in self.entries:
            if entry.scope not in seen:
                seen.append(entry.scope)
        return seen

    def names(self):
        names = [e.property for e in self.entries]
        for primary, companion in self.companions.items():
            names.append(companion)
        return names


def parsePlanFile(text):
    """
    Read a plan: `name: Comp, Comp` checks a property on a projection
    (`*` for the complete model), `companion name: other` adds a
    fallback property for the same scope, `combine: text` records the
    claimed decomposition.
    """
    entries = []
    companions = {}
    combination = []
    for lineNumber, rawLine in enumerate(text.splitlines(), 1):
        line = rawLine.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise PlanFileError("plan line {}: expected 'name: components'".format(lineNumber))
        key, value = (part.strip() for part in line.split(":", 1))
        if key == "combine":
            combination.append(value)
        elif key.startswith("companion "):
            primary = key[len("companion ") :].strip()
            if not primary or not value:
                raise PlanFileError("plan line {}: expected 'companion name: other'".format(lineNumber))
            companions[primary] = value
        elif key:
            scope = _asNames(key, value)
            if not scope:
                raise PlanFileError("plan line {}: no components for '{}'".format(lineNumber, key))
            if COMPLETE_MODEL in scope:
                scope = ()
            entries.append(PlanEntry(key, tuple(scope)))
        else:
            raise PlanFileError("plan line {}: missing property name".format(lineNumber))
    listed = {e.property for e in entries}
    for primary in companions:
        if primary not in listed:
            raise PlanFileError("companion given for unplanned property '{}'".format(primary))
    return ModularPlan(entries, companions, " ".join(combination))


def loadPlanFile(path):
    with open(path, "r", encoding="utf-8") as fin:
        return parsePlanFile(fin.read())
