import argparse
import json
import logging
import random
import sys

from . import *

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_BUDGET = 4


def exitCodeFor(error):
    """
    Exit status for an error that ends a run.
    """
    if isinstance(error, (StateBudgetExceeded, OracleBudgetExceeded)):
        return EXIT_BUDGET
    if isinstance(error, (PathwayError, FormulaSyntaxError, FormulaScopeError, PlanFileError)):
        return EXIT_PARSE
    return EXIT_USAGE


def buildParser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("pathway", help="The .pw file to work on.")
    common.add_argument("-v", "--verbose", action="count", default=argparse.SUPPRESS)
    common.add_argument("--names", help="File mapping component names to member species.")
    common.add_argument(
        "--infer-init", action="store_true", help="Derive the initial state from never-produced species."
    )
    common.add_argument("--manual", help="Species to add to an inferred initial state, comma separated.")
    common.add_argument(
        "--strict", action="store_true", help="Fail when inference leaves components without species."
    )
    common.add_argument("--state-cap", type=int, help="Largest number of states an LTS may have.")

    scoped = argparse.ArgumentParser(add_help=False)
    scoped.add_argument("--onto", help="Components to project onto, comma separated.")
    scoped.add_argument("--disable", help="Components whose species start absent, comma separated.")

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("-o", "--output", help="Write to a file instead of standard output.")

    parser = argparse.ArgumentParser(
        prog="fairway", description="Check temporal properties of qualitative pathway models."
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="More logging; repeat for debug.")
    parser.add_argument("-p", "--pathway", dest="consolePathway", help="Pathway for the console.")
    parser.add_argument("-c", "--command", help="Run a one-off console command.")
    parser.add_argument("-e", "--emacs_server", action="store_true", help="Start Emacs RPC Server")
    commands = parser.add_subparsers(dest="subcommand", metavar="command")

    commands.add_parser("validate", parents=[common], help="Report normal form violations.")
    commands.add_parser("components", parents=[common], help="List the molecular components.")
    graph = commands.add_parser("graph", parents=[common, output], help="Write the interaction graph.")
    graph.add_argument("--dot", action="store_true", help="Graphviz DOT output, the only format so far.")

    lts = commands.add_parser("lts", parents=[common, scoped], help="Build the LTS and print its size.")
    lts.add_argument("--dump", action="store_true", help="Also print every edge.")

    project = commands.add_parser("project", parents=[common, output], help="Print a projection as a pathway.")
    project.add_argument("--onto", required=True, help="Components to project onto, comma separated.")

    check = commands.add_parser("check", parents=[common, scoped], help="Check properties.")
    check.add_argument("properties", nargs="?", help="A property file of 'name: formula' lines.")
    check.add_argument("-f", "--formula", action="append", default=[], help="A formula to check.")
    check.add_argument("--plan", help="A modular plan file.")
    check.add_argument("--no-fairness", action="store_true", help="Drop the fairness assumption.")
    check.add_argument("--json", action="store_true", help="Print reports as JSON.")

    smv = commands.add_parser("export-smv", parents=[common, scoped, output], help="Write an SMV module.")
    smv.add_argument("--no-fairness", action="store_true", help="Leave out the compassion constraints.")

    necessity = commands.add_parser(
        "necessity", parents=[common], help="Check properties with each component disabled."
    )
    necessity.add_argument("properties", nargs="?", help="A property file of 'name: formula' lines.")
    necessity.add_argument("-f", "--formula", action="append", default=[], help="A formula to check.")
    necessity.add_argument("--components", help="Components to try, comma separated. Default: all.")

    generate = commands.add_parser("generate", parents=[output], help="Write a synthetic pathway.")
    generate.add_argument("--stages", type=int, default=57, help="Length of the kinase chain.")
    generate.add_argument("--random", type=int, metavar="SEED", help="A random pathway instead.")
    return parser


def configFor(args):
    settings = {
        "pathwayPath": args.pathway,
        "namesPath": args.names,
        "inferInit": args.infer_init,
        "manual": args.manual,
        "strict": args.strict,
        "stateCap": args.state_cap,
    }
    if getattr(args, "no_fairness", False):
        settings["fairness"] = False
    if getattr(args, "json", False):
        settings["format"] = "json"
    return RunConfig(**settings)


def namesOf(text):
    return tuple(n.strip() for n in (text or "").split(",") if n.strip())


def emit(text, path=None):
    if path:
        with open(path, "w", encoding="utf-8") as fout:
            fout.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def propertiesFor(api, args):
    properties = {}
    if args.properties:
        properties.update(api.loadProperties(args.properties))
    for k, text in enumerate(args.formula, 1):
        properties["formula{}".format(k) if len(args.formula) > 1 else "formula"] = parseFormula(
            text, api.pathway.speciesNames()
        )
    if not properties:
        raise ConfigError("no properties given; pass a property file or --formula")
    return properties


def runValidate(api, args):
    for message in api.validate():
        print(message)
    if validateNormalForm(api.pathway):
        return EXIT_PARSE
    print("ok")
    return EXIT_OK


def runCheck(api, args):
    properties = propertiesFor(api, args)
    onto, disable = namesOf(args.onto), namesOf(args.disable)
    plan = None
    if args.plan and onto:
        raise ConfigError("--plan gives every property its own scope; drop --onto")
    if args.plan:
        plan = loadPlanFile(args.plan)
        reports = api.runPlan(plan, properties, disable)
    else:
        reports = api.checkProperties(properties, onto, disable)
    if api.config["format"] == "json":
        api.validateReport(reports)
        print(json.dumps([r.toJson() for r in reports], indent=2))
    else:
        for report in reports:
            print(report.describe())
            if report.witness is not None:
                print(formatWitness(report.witness))
        if plan is not None and plan.combination:
            print("combine: {}".format(plan.combination))
    return EXIT_OK if all(r.verdict for r in reports) else EXIT_FALSE


def runNecessity(api, args):
    properties = propertiesFor(api, args)
    components = namesOf(args.components) or None
    for component, prop, verdict in api.necessity(properties, components):
        print("{} {}: {}".format(component, prop, "not needed" if verdict else "necessary"))
    return EXIT_OK


def runGenerate(args):
    if args.random is not None:
        pathway = randomPathway(random.Random(args.random))
        header = "random pathway, seed {}".format(args.random)
    else:
        pathway = cascadePathway(stages=args.stages)
        header = "kinase cascade, {} stages".format(args.stages)
    emit(printPathway(pathway, header), args.output)
    return EXIT_OK


def run(args):
    if args.subcommand == "generate":
        return runGenerate(args)
    api = Fairway(config=configFor(args))
    if args.subcommand == "validate":
        return runValidate(api, args)
    if args.subcommand == "components":
        emit("\n".join(api.components()))
    elif args.subcommand == "graph":
        emit(api.graph(), args.output)
    elif args.subcommand == "lts":
        onto, disable = namesOf(args.onto), namesOf(args.disable)
        emit(api.ltsStats(onto, disable))
        if args.dump:
            emit(api.ltsDump(onto, disable))
    elif args.subcommand == "project":
        emit(api.project(namesOf(args.onto)), args.output)
    elif args.subcommand == "check":
        return runCheck(api, args)
    elif args.subcommand == "export-smv":
        emit(api.exportSmv(namesOf(args.onto), namesOf(args.disable)), args.output)
    elif args.subcommand == "necessity":
        return runNecessity(api, args)
    return EXIT_OK


def runConsole(args):
    api = Fairway(pathway=loadPathway(args.consolePathway) if args.consolePathway else None)
    if args.emacs_server:
        startEpcServer(api)
        return EXIT_OK
    console = FairwayConsole()
    console.setApi(api)
    if args.command:
        console.onecmd(args.command)
    else:
        console.run()
    return EXIT_OK


def main(argv=None):
    parser = buildParser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code
    logging.basicConfig(
        level=logging.DEBUG if args.verbose > 1 else logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.subcommand is None:
            return runConsole(args)
        return run(args)
    except (
        UnknownComponentError,
        ConfigError,
        OSError,
        PathwayError,
        FormulaSyntaxError,
        FormulaScopeError,
        StateBudgetExceeded,
        OracleBudgetExceeded,
    ) as e:
        print("fairway: error: {}".format(e), file=sys.stderr)
        return exitCodeFor(e)


if __name__ == "__main__":
    sys.exit(main())
