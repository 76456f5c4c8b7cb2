#
# FairwayConsole.py
#
# Interactive console for fairway
#

import cmd
import shlex

from .FairwayApiWrapper import *


class FairwayConsole(cmd.Cmd):
    """
    Simple REPL for exploring a pathway.
    """

    #
    # External APIs
    #

    def setApi(self, api):
        """
        Set a Fairway instance externally
        """
        self.api = api

    def run(self):
        """
        Launch
        """
        return self.cmdloop()

    def setConfig(self, *args, **kwargs):
        """
        Settings for the console
        """
        interactive = kwargs.get("interactive", False)
        if len(args) != 2:
            if interactive:
                self.errorMessage(
                    "Need an option and a value. Type 'help config' for more information."
                )
                return
            raise ConfigError("config needs an option and a value")
        try:
            self.checkApi()
            self.api.config.setConfig(args[0], args[1])
        except ConfigError as e:
            if not interactive:
                raise
            self.errorMessage(str(e))
            return
        # Drop cached LTSs.
        self.api.setPathway(self.api.pathway)

    #
    # Internal APIs
    #

    def __init__(self, stdout=None):
        cmd.Cmd.__init__(self, stdout=stdout)
        self.prompt = "\nfairway> "
        self.intro = "\n    Type 'help' for options, press enter to quit."
        self.settings = {"onto": (), "disable": ()}

    def checkApi(self):
        """
        Load the shipped example if no pathway is set.
        """
        if not hasattr(self, "api"):
            self.api = Fairway()

    def tokenizeArgs(self, line):
        """
        Split it up.
        """
        return shlex.split(line)

    def errorMessage(self, msg):
        """
        Print an error message.
        """
        self.stdout.write("ERROR: {}\n".format(msg))

    def write(self, text):
        self.stdout.write(text if text.endswith("\n") else text + "\n")

    def guarded(self, action):
        """
        Run an action, reporting expected failures instead of raising.
        """
        try:
            return action()
        except (PathwayError, FormulaSyntaxError, FormulaScopeError, ConfigError) as e:
            self.errorMessage(str(e))
        except UnknownComponentError as e:
            self.errorMessage(str(e))
        except StateBudgetExceeded as e:
            self.errorMessage(str(e))
        except OSError as e:
            self.errorMessage(str(e))

    #
    # CMD APIs
    #

    def emptyline(self):
        """
        What happens when no command is entered.
        """
        self.stdout.write("\n")
        return True

    def default(self, arg):
        """
        Called for unknown commands.
        """
        self.errorMessage("Unknown command. Type 'help' for help.")

    def do_config(self, arg):
        """
        Configure the checker.

        fairness   bool - Check under strong fairness.
        stateCap   int  - Largest number of states an LTS may have.
        oracleCap  int  - Largest LTS the brute-force oracle accepts.
        strict     bool - Fail when initial state inference leaves components empty.
        """
        args = self.tokenizeArgs(arg)
        self.setConfig(*args, interactive=True)

    def do_load(self, arg):
        """
        Load a pathway file.

        Try it out:
          load fairway/data/fourreactions.pw
        """
        args = self.tokenizeArgs(arg)
        if len(args) != 1:
            self.errorMessage("Need a single argument -- the pathway file.")
            return
        self.checkApi()
        pathway = self.guarded(lambda: loadPathway(args[0]))
        if pathway is not None:
            self.guarded(lambda: self.api.setPathway(pathway))
            self.settings = {"onto": (), "disable": ()}
            self.write("{}".format(pathway))

    def do_validate(self, arg):
        """
        Report normal form violations and unused species.
        """
        self.checkApi()
        messages = self.api.validate()
        self.write("\n".join(messages) if messages else "ok")

    def do_components(self, arg):
        """
        List the molecular components, one per line.
        """
        self.checkApi()
        lines = self.guarded(self.api.components)
        if lines is not None:
            self.write("\n".join(lines))

    def do_graph(self, arg):
        """
        Print the component interaction graph as DOT.
        """
        self.checkApi()
        dot = self.guarded(self.api.graph)
        if dot is not None:
            self.write(dot)

    def do_onto(self, arg):
        """
        Project onto the named components for later commands. No
        arguments returns to the complete model.

        Try it out:
          onto A
        """
        self.checkApi()
        names = tuple(self.tokenizeArgs(arg))
        if self.guarded(lambda: self.api.componentMap.resolve(names)) is not None:
            self.settings["onto"] = names

    def do_disable(self, arg):
        """
        Start the named components absent for later commands. No
        arguments re-enables everything.

        Try it out:
          disable D
        """
        self.checkApi()
        names = tuple(self.tokenizeArgs(arg))
        if self.guarded(lambda: self.api.componentMap.resolve(names)) is not None:
            self.settings["disable"] = names

    def do_lts(self, arg):
        """
        Build the LTS for the current scope and print its size. With
        'dump', print every edge.
        """
        self.checkApi()
        onto, disable = self.settings["onto"], self.settings["disable"]
        stats = self.guarded(lambda: self.api.ltsStats(onto, disable))
        if stats is None:
            return
        self.write(stats)
        if self.tokenizeArgs(arg) == ["dump"]:
            self.write(self.api.ltsDump(onto, disable))

    def do_project(self, arg):
        """
        Print the projection onto the current scope as a pathway.
        """
        self.checkApi()
        if not self.settings["onto"]:
            self.errorMessage("No projection set. Use 'onto' first.")
            return
        text = self.guarded(lambda: self.api.project(self.settings["onto"]))
        if text is not None:
            self.write(text)

    def do_check(self, arg):
        """
        Check a formula on the current scope.

        Try it out:
          check AF C
          check A[(A | B) U C]
        """
        self.checkApi()
        if not arg.strip():
            self.errorMessage("Need a formula. Type 'help check' to learn more.")
            return
        onto, disable = self.settings["onto"], self.settings["disable"]
        report = self.guarded(lambda: self.api.checkFormula("formula", arg.strip(), onto, disable))
        if report is None:
            return
        self.write(report.describe())
        if report.witness is not None:
            self.write(formatWitness(report.witness))

    def do_necessity(self, arg):
        """
        Disable each component in turn and check a formula on the
        complete model.

        Try it out:
          necessity AF C
        """
        self.checkApi()
        if not arg.strip():
            self.errorMessage("Need a formula.")
            return
        rows = self.guarded(lambda: self.api.necessity({"formula": arg.strip()}))
        for component, _, verdict in rows or []:
            self.write("{}: {}".format(component, "not needed" if verdict else "necessary"))

    def do_smv(self, arg):
        """
        Print the current scope as an SMV module.
        """
        self.checkApi()
        onto, disable = self.settings["onto"], self.settings["disable"]
        text = self.guarded(lambda: self.api.exportSmv(onto, disable))
        if text is not None:
            self.write(text)
