#
# FairwayEpcServer.py
#
# RPC Server for Emacs-Lisp
#

from .FairwayApiWrapper import *


def registerFunctions(server, api):
    """
    Expose a Fairway instance through an EPC server. Results are plain
    lists, strings and dicts.
    """

    @server.register_function
    def load(path):
        api.setPathway(loadPathway(str(path)))
        return str(api.pathway)

    @server.register_function
    def validate():
        return api.validate()

    @server.register_function
    def components():
        return api.components()

    @server.register_function
    def lts_stats(*onto):
        return api.ltsStats(tuple(str(n) for n in onto))

    @server.register_function
    def check(formula, *onto):
        report = api.checkFormula("formula", str(formula), tuple(str(n) for n in onto))
        return report.toJson()

    @server.register_function
    def export_smv(*onto):
        return api.exportSmv(tuple(str(n) for n in onto))

    return server


def startEpcServer(api):
    """
    Start the Emacs RPC Server.
    """
    from epc.server import EPCServer

    server = EPCServer(("localhost", 0))
    registerFunctions(server, api)
    server.print_port()
    server.serve_forever()
