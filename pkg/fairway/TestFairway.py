#
# TestFairway.py
#
# Unit tests for the Fairway class
#

import unittest
from .FairwayApiWrapper import Fairway, PlanFileError, loadReportSchema
from .ComponentMap import UnknownComponentError
from .RunConfig import RunConfig, parsePlanFile


class TestFairway(unittest.TestCase):
    """
    Unit testing for the Fairway class, on the shipped four-reaction
    pathway.
    """

    def verifyReport(self, report):
        """
        Complain if a report does not fit the report schema.
        """
        import jsonschema

        jsonschema.validate(instance=report.toJson(), schema=loadReportSchema())

    def setUp(self):
        """
        Create the Fairway object.
        """
        self.fairway = Fairway()
        self.properties = self.fairway.parseProperties(
            "reachC: AF C\nkeepD: AG D\nneverC: AG !C\n"
        )

    def test_validate(self):
        """
        The example is in normal form and uses every species.
        """
        self.assertEqual(self.fairway.validate(), [])

    def test_components(self):
        """
        Fairway.components() names each component after its least species.
        """
        self.assertEqual(self.fairway.components(), ["A: A, B, C", "D: D"])

    def test_graph(self):
        """
        The catalyst component points at the substrate component.
        """
        dot = self.fairway.graph()
        self.assertTrue(dot.startswith("digraph {"))
        self.assertIn('"D" -> "A";', dot)

    def test_ltsStats(self):
        self.assertEqual(self.fairway.ltsStats(), "states=3 edges=4 deadlocks=0")

    def test_checkComplete(self):
        """
        Verdicts on the complete model are conclusive either way.
        """
        reports = self.fairway.checkProperties(self.properties)
        verdicts = {r.property: r.verdict for r in reports}
        self.assertEqual(verdicts, {"reachC": True, "keepD": True, "neverC": False})
        for report in reports:
            self.assertTrue(report.conclusive)
            self.assertEqual(report.scope, "complete model")
            self.verifyReport(report)

    def test_witness(self):
        """
        A false AG comes with a finite path to a counterexample state.
        """
        report = self.fairway.checkFormula("neverC", "AG !C")
        self.assertFalse(report.verdict)
        self.assertIsNone(report.witness["loop"])
        self.assertIn("C", report.witness["states"][-1])

    def test_checkProjection(self):
        """
        On the projection onto A, AF C fails and is only inconclusive.
        """
        report = self.fairway.checkFormula("reachC", "AF C", ("A",))
        self.assertFalse(report.verdict)
        self.assertFalse(report.conclusive)
        self.assertEqual(report.scope, "A")
        self.verifyReport(report)

    def test_disable(self):
        """
        Without the catalyst component, C is never produced.
        """
        self.assertFalse(self.fairway.checkFormula("reachC", "AF C", (), ("D",)).verdict)
        self.assertTrue(self.fairway.checkFormula("neverC", "AG !C", (), ("D",)).verdict)

    def test_unknownComponent(self):
        with self.assertRaises(UnknownComponentError):
            self.fairway.checkFormula("reachC", "AF C", ("Q",))

    def test_noFairness(self):
        """
        Without fairness the A/B toggle can run forever.
        """
        fairway = Fairway(config=RunConfig(fairness=False))
        self.assertFalse(fairway.checkFormula("reachC", "AF C").verdict)

    def test_runPlan(self):
        plan = parsePlanFile("reachC: A\nkeepD: D\ncompanion reachC: neverC\n")
        reports = self.fairway.runPlan(plan, self.properties)
        self.assertEqual([r.property for r in reports], ["reachC", "neverC", "keepD"])
        self.assertEqual(reports[1].companionOf, "reachC")

    def test_runPlanUndefined(self):
        with self.assertRaises(PlanFileError):
            self.fairway.runPlan(parsePlanFile("missing: A\n"), self.properties)

    def test_necessity(self):
        rows = self.fairway.necessity({"reachC": self.properties["reachC"]})
        self.assertEqual(sorted(rows), [("A", "reachC", False), ("D", "reachC", False)])


if __name__ == "__main__":
    unittest.main()
