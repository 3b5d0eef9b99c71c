import os
import sys
import unittest

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from ellft import EllFT
from ellft.utils.logger import Logger, logger


class TestShippedCatalogIdentities(unittest.TestCase):
    """Every identity stated by the shipped catalog holds, or is reported partial."""

    @classmethod
    def setUpClass(cls):
        Logger.set_debug_mode(False)
        logger.info("Setting up TestShippedCatalogIdentities class")
        cls.ft = EllFT()
        cls.report = cls.ft.verify("all")

    def entries(self, check_id):
        return [c for c in self.report if c.check_id == check_id]

    def assert_no_failures(self, check_id):
        failed = [f"{c.scope}: {c.detail}" for c in self.entries(check_id) if c.status == "fail"]
        self.assertEqual(failed, [], "\n".join(failed))

    def test_counts(self):
        logger.info("\nTesting the pair counts of all records:")
        self.assertEqual(len(self.entries("counts")), 40)
        self.assert_no_failures("counts")

    def test_main(self):
        logger.info("\nTesting restriction against FT on all records:")
        self.assertEqual(len(self.entries("main")), len(self.ft.catalog.restrictions))
        self.assert_no_failures("main")

    def test_zeta(self):
        logger.info("\nTesting the leading coefficients of all records:")
        self.assert_no_failures("zeta")
        self.assertGreater(sum(1 for c in self.entries("zeta") if c.status == "pass"), 0)

    def test_selfdual(self):
        logger.info("\nTesting the claims of all named combinations:")
        self.assert_no_failures("selfdual")
        partial = {c.scope for c in self.entries("selfdual") if c.status == "partial"}
        self.assertIn("tail(E7:A3+A2+A1)", partial)
        self.assertNotIn("C2:v2", partial)

    def test_exit_status(self):
        logger.info("\nTesting the exit status of the full run:")
        self.assertEqual(self.report.exit_status(), 0)
        self.assertEqual(self.report.exit_status(allow_partial=False), 1)

    def test_e8_torsion_models(self):
        logger.info("\nTesting the E8 records with torsion models:")
        by_scope = {c.scope: c for c in self.entries("counts")}
        self.assertEqual(by_scope["E8/A4+2A1"].witness, {"stored": 3, "recomputed": 3})
        self.assertEqual(by_scope["E8/D4(a1)+A2"].witness, {"stored": 1, "recomputed": 1})
        self.assertEqual(by_scope["E8/E8(a7)"].witness, {"stored": 39, "recomputed": 39})


if __name__ == '__main__':
    unittest.main()
