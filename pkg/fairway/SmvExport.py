#
# SmvExport.py
#
# Write a pathway, or a projection of one, as an SMV module for
# symbolic checkers. One boolean per species, an input choosing the
# reaction to fire, a stall move for deadlocks and one compassion
# declaration per fair reaction.
#

import io
import logging
import re

from .SpeciesDetails import *
from .TransitionSystem import compileReaction

log = logging.getLogger(__name__)


def smvName(index, name):
    return "s{}_{}".format(index, re.sub(r"[^A-Za-z0-9]", "_", name))


def _conjunction(terms):
    return " & ".join(terms) if terms else "TRUE"


def dumpHeader(out, title, rules):
    out.write("-- fairway SMV export: {}\n".format(title))
    for k, rule in enumerate(rules, 1):
        out.write("-- r{} = {}\n".format(k, rule.label))
    out.write("MODULE main\n")


def dumpVariables(out, variables, rules):
    choices = ["r{}".format(k) for k in range(1, len(rules) + 1)] + ["stall"]
    out.write("VAR\n")
    for v in variables:
        out.write("  {} : boolean;\n".format(v))
    out.write("  taken : {{{}}};\n".format(", ".join(["none"] + choices)))
    out.write("IVAR\n")
    out.write("  choice : {{{}}};\n".format(", ".join(choices)))


def dumpDefines(out, variables, rules):
    out.write("DEFINE\n")
    width = len(variables)
    for k, rule in enumerate(rules, 1):
        terms = [variables[b] for b in bitsSet(rule.reactantMask | rule.catalystMask, width)]
        if rule.guarded:
            products = [variables[b] for b in bitsSet(rule.productMask, width)]
            terms.append("!({})".format(_conjunction(products)))
        out.write("  enabled_r{} := {};\n".format(k, _conjunction(terms)))
    if rules:
        anyEnabled = " | ".join("enabled_r{}".format(k) for k in range(1, len(rules) + 1))
        out.write("  deadlock := !({});\n".format(anyEnabled))
    else:
        out.write("  deadlock := TRUE;\n")


def dumpAssignments(out, variables, rules, initial):
    out.write("ASSIGN\n")
    for b, v in enumerate(variables):
        out.write("  init({}) := {};\n".format(v, "TRUE" if initial >> b & 1 else "FALSE"))
    out.write("  init(taken) := none;\n")
    out.write("  next(taken) := choice;\n")
    for b, v in enumerate(variables):
        cases = []
        for k, rule in enumerate(rules, 1):
            if rule.productMask >> b & 1:
                cases.append((k, "TRUE"))
            elif rule.consumes and rule.reactantMask >> b & 1:
                cases.append((k, "FALSE"))
        if not cases:
            out.write("  next({0}) := {0};\n".format(v))
            continue
        out.write("  next({}) :=\n".format(v))
        out.write("    case\n")
        for k, value in cases:
            out.write("      choice = r{} : {};\n".format(k, value))
        out.write("      TRUE : {};\n".format(v))
        out.write("    esac;\n")


def dumpTransitions(out, rules):
    out.write("TRANS\n")
    terms = ["(choice = r{0} -> enabled_r{0})".format(k) for k in range(1, len(rules) + 1)]
    terms.append("(choice = stall -> deadlock)")
    out.write("  " + " &\n  ".join(terms) + "\n")


def dumpCompassion(out, rules, fairness):
    if not fairness:
        return 0
    count = 0
    for k, rule in enumerate(rules, 1):
        if rule.fair:
            out.write("COMPASSION (enabled_r{0}, taken = r{0});\n".format(k))
            count += 1
    return count


def exportRules(names, rules, initial, title, fairness=True):
    variables = [smvName(i, n) for i, n in enumerate(names)]
    out = io.StringIO()
    dumpHeader(out, title, rules)
    dumpVariables(out, variables, rules)
    dumpDefines(out, variables, rules)
    dumpAssignments(out, variables, rules, initial)
    dumpTransitions(out, rules)
    count = dumpCompassion(out, rules, fairness)
    log.info("exported %d variables, %d rules, %d compassion declarations", len(variables), len(rules), count)
    return out.getvalue()


def exportSmv(system, fairness=True):
    """
    SMV text for a Pathway or an AbstractPathway. Only reactions that
    carry compassion pairs in the checker get COMPASSION declarations.
    """
    if hasattr(system, "rules"):
        names = [s.name for s in system.domain]
        return exportRules(
            names, system.rules(), system.initialState(), "projection onto " + system.scopeName(), fairness
        )
    rules = [compileReaction(r) for r in system.reactions]
    return exportRules(system.speciesNames(), rules, system.initialState(), "complete model", fairness)
