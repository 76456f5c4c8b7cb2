#
# FairwayApiWrapper.py
#
# The simple, exposed code interface for fairway. Used by the command
# line, the console and the EPC server.
#

import json
import logging
import time
from dataclasses import dataclass
from importlib import resources

import jsonschema

from .Pathway import *
from .TransitionSystem import *
from .ComponentMap import *
from .AbstractPathway import *
from .Formula import *
from .FairChecker import *
from .SmvExport import *
from .RunConfig import *

log = logging.getLogger(__name__)


def loadReportSchema():
    text = resources.files("fairway").joinpath("data").joinpath("report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


@dataclass
class PropertyReport:
    """
    The outcome of one property on one scope.
    """

    property: str
    formula: str
    scope: str
    fairness: bool
    verdict: bool
    complete: bool
    states: int
    timeMs: int
    witness: dict = None
    companionOf: str = None

    @property
    def conclusive(self):
        """
        Whether the verdict carries over to the complete model.
        Projections preserve truth only.
        """
        return self.complete or self.verdict

    def describe(self):
        text = "{}: {}".format(self.property, "true" if self.verdict else "false")
        if not self.complete:
            text += " on {} ({})".format(
                self.scope,
                "holds in complete model, preserved by projection"
                if self.verdict
                else "inconclusive for complete model",
            )
        if self.companionOf:
            text += " [companion of {}]".format(self.companionOf)
        return text

    def toJson(self):
        report = {
            "property": self.property,
            "formula": self.formula,
            "scope": self.scope,
            "fairness": self.fairness,
            "verdict": self.verdict,
            "conclusive_for_complete_model": self.conclusive,
            "states": self.states,
            "time_ms": self.timeMs,
        }
        if self.companionOf:
            report["companion_of"] = self.companionOf
        if self.witness is not None:
            report["witness"] = self.witness
        return report


def witnessToJson(lts, witness):
    """
    States as lists of species names; `loop` is the index the last
    label returns to, or None for a finite path.
    """
    if isinstance(witness, Lasso):
        indices = list(witness.stem.states) + list(witness.cycleStates[1:])
        labels = list(witness.stem.labels) + list(witness.cycleLabels)
        loop = len(witness.stem.states) - 1
    else:
        indices = list(witness.states)
        labels = list(witness.labels)
        loop = None
    return {"states": [lts.stateNames(i) for i in indices], "labels": labels, "loop": loop}


def formatWitness(witnessJson):
    lines = []
    for k, names in enumerate(witnessJson["states"]):
        marker = "  loop>" if k == witnessJson["loop"] else "       "
        lines.append("{} {{{}}}".format(marker, ", ".join(names)))
        if k < len(witnessJson["labels"]):
            lines.append("          --{}-->".format(witnessJson["labels"][k]))
    if witnessJson["loop"] is not None:
        lines.append("        (back to loop)")
    return "\n".join(lines)


class Fairway(object):
    """
    Combined API wrapper for fairway.
    """

    def __init__(self, pathway=None, config=None):
        """
        Construct a new Fairway instance.

        Args:
            pathway - Pathway to work on. If None, the shipped four-reaction example is used.
            config  - RunConfig. If None, defaults and the environment apply.
        """
        self.config = config if config is not None else RunConfig()
        self.names = {}
        if self.config["namesPath"]:
            self.names = loadNameMap(self.config["namesPath"])
        if pathway is None:
            if self.config["pathwayPath"]:
                pathway = loadPathway(self.config["pathwayPath"])
            else:
                pathway = loadExamplePathway()
        self.setPathway(pathway)

    def setPathway(self, pathway):
        self.pathway = pathway
        self.__componentMap = None
        self.__ltsCache = {}
        if self.config["inferInit"]:
            self.pathway = pathway.withInitial(
                inferInitialState(
                    pathway, self.componentMap, self.config["manual"], self.config["strict"]
                )
            )
            self.__ltsCache = {}

    @property
    def componentMap(self):
        if self.__componentMap is None:
            self.__componentMap = identifyComponents(self.pathway, self.names)
        return self.__componentMap

    def validate(self):
        """
        Problems found in the pathway, one message each. An empty list
        means components can be identified.
        """
        messages = [str(v) for v in validateNormalForm(self.pathway)]
        for s in self.pathway.unusedSpecies():
            messages.append("species '{}' is declared but used by no reaction".format(s.name))
        return messages

    def components(self):
        return self.componentMap.describe()

    def graph(self):
        return toDot(interactionGraph(self.pathway, self.componentMap))

    def disabled(self, disable=()):
        """
        The pathway with every species of the named components removed
        from the initial state.
        """
        if not disable:
            return self.pathway
        m = self.componentMap
        species = [s for cid in m.resolve(disable) for s in m.speciesOf(cid)]
        log.info("disabling %s", ", ".join(disable))
        return self.pathway.withInitial(self.pathway.initial.without(species))

    def system(self, onto=(), disable=()):
        """
        The pathway, or its projection onto the named components, after
        disabling. Returns (pathway, abstract pathway or None).
        """
        pathway = self.disabled(disable)
        if not onto:
            return pathway, None
        return pathway, project(pathway, self.componentMap, self.componentMap.resolve(onto))

    def buildLts(self, onto=(), disable=()):
        key = (tuple(sorted(onto)), tuple(sorted(disable)))
        if key not in self.__ltsCache:
            pathway, ap = self.system(onto, disable)
            cap = self.config["stateCap"]
            lts = ap.buildLts(cap) if ap is not None else buildLts(pathway, cap)
            scope = ap.scopeName() if ap is not None else "complete model"
            complete = ap is None or ap.isIdentity()
            self.__ltsCache[key] = (lts, scope, complete)
        return self.__ltsCache[key]

    def ltsStats(self, onto=(), disable=()):
        return self.buildLts(onto, disable)[0].stats()

    def ltsDump(self, onto=(), disable=()):
        return self.buildLts(onto, disable)[0].dump()

    def project(self, onto):
        return self.system(onto)[1].toText()

    def exportSmv(self, onto=(), disable=()):
        pathway, ap = self.system(onto, disable)
        return exportSmv(ap if ap is not None else pathway, self.config["fairness"])

    def parseProperties(self, text):
        return parsePropertyFile(text, self.pathway.speciesNames())

    def loadProperties(self, path):
        return loadPropertyFile(path, self.pathway.speciesNames())

    def checkFormula(self, name, formula, onto=(), disable=(), companionOf=None):
        if isinstance(formula, str):
            formula = parseFormula(formula, self.pathway.speciesNames())
        started = time.perf_counter()
        lts, scope, complete = self.buildLts(onto, disable)
        checkScope(formula, lts.names, "projection onto " + scope if not complete else "pathway")
        pairs = compassionPairs(lts, self.config["fairness"])
        result = check(lts, pairs, formula)
        witness = None
        if result.witness is not None:
            witness = witnessToJson(lts, result.witness)
        return PropertyReport(
            name,
            str(formula),
            scope,
            self.config["fairness"],
            result.verdict,
            complete,
            lts.numStates,
            int((time.perf_counter() - started) * 1000),
            witness,
            companionOf,
        )

    def checkProperties(self, properties, onto=(), disable=(), companions=None, companionFormulas=None):
        """
        Check named formulas on one scope. A companion is checked when
        its primary is not conclusive for the complete model.

        Args:
            properties        - dict of name to Formula (or formula text).
            onto              - component names to project onto; empty for the complete model.
            disable           - component names whose species start absent.
            companions        - dict of primary name to companion name.
            companionFormulas - where companion formulas are looked up; properties by default.

        Returns:
            A list of PropertyReport, each companion right after its primary.
        """
        companions = companions or {}
        companionFormulas = properties if companionFormulas is None else companionFormulas
        for name, other in companions.items():
            if other not in companionFormulas:
                raise PlanFileError("companion property '{}' is not defined".format(other))
        reports = []
        for name, formula in properties.items():
            report = self.checkFormula(name, formula, onto, disable)
            reports.append(report)
            if name in companions and not report.conclusive:
                other = companions[name]
                reports.append(
                    self.checkFormula(other, companionFormulas[other], onto, disable, name)
                )
        return reports

    def runPlan(self, plan, properties, disable=()):
        """
        Check every planned property on its scope, one LTS per scope.
        """
        for entry in plan.entries:
            if entry.property not in properties:
                raise PlanFileError("planned property '{}' is not defined".format(entry.property))
            if entry.scope:
                self.componentMap.resolve(entry.scope)
        reports = []
        for scope in plan.scopes():
            planned = {e.property: properties[e.property] for e in plan.entries if e.scope == scope}
            companions = {k: v for k, v in plan.companions.items() if k in planned}
            reports.extend(self.checkProperties(planned, scope, disable, companions, properties))
            self.__ltsCache.pop((tuple(sorted(scope)), tuple(sorted(disable))), None)
        if plan.combination:
            log.info("claimed decomposition: %s", plan.combination)
        return reports

    def necessity(self, properties, componentNames=None):
        """
        Disable each component in turn and check every property on the
        complete model. A component is necessary for a property when
        the property fails without it.

        Returns:
            A list of (component name, property name, verdict) tuples.
        """
        m = self.componentMap
        if componentNames is None:
            componentNames = [m.name(c) for c in m.components()]
        m.resolve(componentNames)
        rows = []
        for name in componentNames:
            for prop, formula in properties.items():
                report = self.checkFormula(prop, formula, (), (name,))
                rows.append((name, prop, report.verdict))
        return rows

    def validateReport(self, reports):
        schema = loadReportSchema()
        for report in reports:
            jsonschema.validate(instance=report.toJson(), schema=schema)

