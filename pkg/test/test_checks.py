import json
import os
import random
import sys
import tempfile
import unittest
from fractions import Fraction
from unittest.mock import patch

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from ellft import EllFT
from ellft.catalog import DEFAULT_CATALOG_PATH, expand_restriction
from ellft.checks.base_check import BaseCheck
from ellft.cyclo import CycNum, cyc_matrix, format_coeff, parse_coeff, rank
from ellft.families import apply_ft, combination_term, is_ft_fixed, named_combination
from ellft.utils.error_handler import CatalogError, CheckConfigError
from ellft.utils.logger import Logger, logger


def shipped_data() -> dict:
    with open(DEFAULT_CATALOG_PATH, encoding="utf-8") as f:
        return json.load(f)


def find_restriction(data: dict, group: str, unipotent: str, s: str, h: str) -> dict:
    for r in data["restrictions"]:
        if r["group"] == group and r["unipotent"] == unipotent and r.get("s") == s and r.get("h") == h:
            return r
    raise LookupError(f"{group}/{unipotent}/({s},{h})")


def find_unipotent(data: dict, group: str, label: str) -> dict:
    for g in data["groups"]:
        if g["name"] == group:
            for u in g["unipotents"]:
                if u["label"] == label:
                    return u
    raise LookupError(f"{group}/{label}")


class TestEllFT(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        Logger.set_debug_mode(True)
        logger.info("Setting up TestEllFT class")
        cls.ft = EllFT(config={"debug": True})

    def test_list_checks(self):
        logger.info("\nTesting check discovery:")
        self.assertEqual(EllFT.list_checks(), ["counts", "main", "zeta", "selfdual"])

    def test_unknown_check(self):
        logger.info("\nTesting an unknown check name:")
        with self.assertRaises(CheckConfigError) as ctx:
            self.ft.run_check("parity")
        self.assertEqual(ctx.exception.error_code, "UNKNOWN_CHECK")
        with self.assertRaises(CheckConfigError):
            self.ft.verify(["main", "parity"])

    def test_unknown_filter(self):
        logger.info("\nTesting filters naming unknown records:")
        with self.assertRaises(CatalogError):
            self.ft.verify("main", group="E9")
        with self.assertRaises(CatalogError):
            self.ft.verify("zeta", group="E7", unipotent="E8(a7)")

    def test_environment_overrides(self):
        logger.info("\nTesting ELLFT_* variables on the facade:")
        missing = os.path.join(tempfile.gettempdir(), "no-such-ellft-catalog.json")
        with patch.dict(os.environ, {"ELLFT_CATALOG": missing}):
            with self.assertRaises(CatalogError) as ctx:
                EllFT()
            self.assertEqual(ctx.exception.error_code, "CATALOG_IO")
            self.assertIsNotNone(EllFT(catalog_path=DEFAULT_CATALOG_PATH).catalog)
        with patch.dict(os.environ, {"ELLFT_ALLOW_PARTIAL": "false"}):
            self.assertFalse(EllFT().config.get("allow_partial"))
            self.assertTrue(EllFT(config={"allow_partial": True}).config.get("allow_partial"))

    def test_check_instances(self):
        logger.info("\nTesting check instantiation and caching:")
        check = self.ft.get_check("main")
        self.assertIsInstance(check, BaseCheck)
        self.assertEqual(check.check_id, "main")
        self.assertIs(self.ft.get_check("main"), check)
        self.assertEqual(check.get_check_specific_methods(), ["check_pair"])

    def test_verify_order(self):
        logger.info("\nTesting the order of merged reports:")
        report = self.ft.verify(["selfdual", "zeta", "counts"], group="F4")
        ids = [c.check_id for c in report]
        self.assertEqual(ids[0], "counts")
        self.assertEqual(ids, sorted(ids, key=["counts", "main", "zeta", "selfdual"].index))
        self.assertEqual(ids.count("counts"), 5)

    def test_character_table(self):
        logger.info("\nTesting labelled character tables:")
        table = self.ft.character_table("S4")
        self.assertEqual(sorted(table.degrees), [1, 1, 2, 3, 3])
        for name in ("lambda1", "lambda2", "lambda3", "sigma"):
            self.assertIn(name, table.char_labels)
        self.assertIs(self.ft.character_table("S4"), table)

    def test_fourier_matrix(self):
        logger.info("\nTesting Fourier matrices through the facade:")
        out = self.ft.fourier_matrix("C2", as_json=True)
        self.assertEqual(out["basis"], ["(1,1)", "(1,eps)", "(g2,1)", "(g2,eps)"])
        self.assertEqual(out["ft"][0], ["1/2", "1/2", "1/2", "1/2"])
        self.assertFalse(out["delta_twisted"])
        twisted = self.ft.fourier_matrix("C2", twisted=True, as_json=True)
        self.assertTrue(twisted["delta_twisted"])
        self.assertIsInstance(self.ft.fourier_matrix("S3"), str)

    def test_elliptic_pairs(self):
        logger.info("\nTesting the pair listing of E7 A4+A1:")
        pairs = self.ft.elliptic_pairs("E7", "A4+A1")
        self.assertEqual(len(pairs), 6)
        self.assertEqual(pairs[0]["pair"], "(1,delta)")
        self.assertEqual(pairs[0]["dual"], "(delta,1)")
        self.assertEqual([p["counted"] for p in pairs], [True, True, True, False, False, False])
        self.assertTrue(all(p["restriction"] for p in pairs))
        self.assertTrue(all(p["combination"] for p in pairs))

        e6 = self.ft.elliptic_pairs("E7", "E6(a1)")
        self.assertEqual([p["split"] for p in e6], [True, True, True, False, False, False])
        self.assertIsNone(e6[3]["combination"])

    def test_s4_virtual_combinations(self):
        logger.info("\nTesting the 21 virtual combinations of F4(a3) against the sigma vectors:")
        cat = self.ft.catalog
        rec = cat.unipotent("F4", "F4(a3)")
        combos = cat.virtual_combinations(rec)
        self.assertEqual(len(combos), 21)
        self.assertTrue(all(p["combination"] for p in self.ft.elliptic_pairs("F4", "F4(a3)")))
        family = cat.prototype("S4")
        rows = []
        for pair, vc in combos:
            xi, yi = pair.key
            orbit = next(o for o in family.orbits if (o.x_class, o.y_class) == (xi, yi))
            sigma = family.sigma_orbit(orbit)
            table = family.tables[xi]
            regenerated = [CycNum.rational(0)] * len(family)
            for name, c in vc.coeffs:
                self.assertEqual(c, table.values[table.row(name)][yi].conj())
                regenerated[family.m_basis.index((xi, table.row(name)))] = c
            self.assertEqual(regenerated, list(sigma.coords))
            rows.append(regenerated)
        self.assertEqual(rank(cyc_matrix(rows)), 21)


class TestMainCheck(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        Logger.set_debug_mode(True)
        logger.info("Setting up TestMainCheck class")
        cls.ft = EllFT()

    def test_twisted_family(self):
        logger.info("\nTesting E7 A4+A1:")
        report = self.ft.run_check("main", group="E7", unipotent="A4+A1")
        self.assertEqual(len(report), 6)
        self.assertEqual(report.summary, {"pass": 6, "fail": 0, "partial": 0})

    def test_check_pair(self):
        logger.info("\nTesting single pairs:")
        self.ft.get_check("main")
        result = self.ft.check_pair("E7", "A4+A1", "1", "delta")
        self.assertEqual(result.status, "pass")
        self.assertEqual(result.detail, "maps to (delta,1)")
        self.assertEqual(self.ft.check_pair("E7", "A4+A1", "delta", "delta").detail, "self-dual")

    def test_pairs_without_record(self):
        logger.info("\nTesting a pair without a restriction record:")
        self.ft.get_check("main")
        result = self.ft.check_pair("E7", "E6(a1)", "-1", "delta")
        self.assertEqual(result.status, "partial")

    def test_finite_centralizer(self):
        logger.info("\nTesting F4(a3):")
        report = self.ft.run_check("main", group="F4", unipotent="F4(a3)")
        self.assertEqual(len(report), 21)
        self.assertTrue(report.ok)

    def test_elided_remainder(self):
        logger.info("\nTesting a record with an elided remainder:")
        report = self.ft.run_check("main", group="E7", unipotent="A3+A2+A1")
        self.assertEqual(len(report), 1)
        entry = report.checks[0]
        self.assertEqual(entry.status, "partial")
        self.assertIn("tail(E7:A3+A2+A1)", entry.detail)
        self.assertEqual(entry.witness, {"pending": ["tail(E7:A3+A2+A1)"]})

    def test_symmetric_restrictions(self):
        logger.info("\nTesting that (1,g2) agrees with (g2,1) and all g3 pairs coincide:")
        cat = self.ft.catalog
        rec = cat.unipotent("G2", "G2(a1)")
        for parahoric in ("A2", "A1+~A1"):
            def expansion(s, h, parahoric=parahoric):
                return expand_restriction(cat, cat.restriction(rec, cat.pair_key(rec, s, h), parahoric))

            self.assertEqual(expansion("1", "g2"), expansion("g2", "1"))
            g3_pairs = [expansion(s, h) for s, h in (("1", "g3"), ("g3", "1"), ("g3", "g3"), ("g3", "g3^-1"))]
            for other in g3_pairs[1:]:
                self.assertEqual(other, g3_pairs[0])

            report = {c.scope: c for c in self.ft.run_check("main", group="G2", unipotent="G2(a1)",
                                                            parahoric=parahoric)}
            self.assertEqual(report[f"G2/G2(a1)/(1,g2)@{parahoric}"].status, "pass")
            self.assertEqual(report[f"G2/G2(a1)/(1,g2)@{parahoric}"].status,
                             report[f"G2/G2(a1)/(g2,1)@{parahoric}"].status)
            g3_scopes = [scope for scope in report if "g3" in scope]
            self.assertEqual(len(g3_scopes), 4)
            self.assertTrue(all(report[scope].status == "pass" for scope in g3_scopes))

    def test_other_parahorics(self):
        logger.info("\nTesting restrictions to other parahorics:")
        report = self.ft.run_check("main", group="G2", unipotent="G2(a1)", parahoric="A2")
        self.assertGreater(len(report), 0)
        self.assertTrue(all(c.scope.endswith("@A2") for c in report))
        self.assertTrue(report.ok)


class TestZetaCheck(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        Logger.set_debug_mode(True)
        logger.info("Setting up TestZetaCheck class")
        cls.ft = EllFT()

    def test_zeta_values(self):
        logger.info("\nTesting the leading coefficients of E7 A4+A1:")
        self.ft.get_check("zeta")
        self.assertEqual(self.ft.zeta_values("E7", "A4+A1"), {
            "(1,delta)": "-1", "(delta,1)": "1", "(delta,delta)": "-z4",
            "(delta,-delta)": "z4", "(-1,delta)": "1", "(delta,-1)": "-1",
        })

    def test_delta_on_twisted_family(self):
        logger.info("\nTesting zeta(s,h) conj(zeta(h,s)) = Delta:")
        report = self.ft.run_check("zeta", group="E7", unipotent="A4+A1")
        self.assertEqual(report.summary["pass"], 6)
        by_scope = {c.scope: c for c in report}
        entry = by_scope["E7/A4+A1/(1,delta)"]
        self.assertEqual(entry.witness["zeta"], "-1")
        self.assertEqual(entry.witness["dual_zeta"], "1")
        self.assertEqual(entry.witness["product"], "-1")
        self.assertEqual(by_scope["E7/A4+A1/(delta,delta)"].witness["product"], "1")

    def test_only_hyperspecial(self):
        logger.info("\nTesting that zeta skips other parahorics:")
        report = self.ft.run_check("zeta", group="G2")
        self.assertTrue(all("@" not in c.scope for c in report))
        self.assertTrue(report.ok)


class TestSelfDualCheck(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        Logger.set_debug_mode(True)
        logger.info("Setting up TestSelfDualCheck class")
        cls.ft = EllFT()
        cls.check = cls.ft.get_check("selfdual")

    def test_claims(self):
        logger.info("\nTesting self_dual, maps_to and equals claims:")
        result = self.ft.check_combination("C2:v2")
        self.assertEqual((result.status, result.detail), ("pass", "FT(v) = v"))
        result = self.ft.check_combination("C2:(1,1)-(g2,1)")
        self.assertEqual((result.status, result.detail), ("pass", "FT(v) = C2:(1,eps)+(g2,eps)"))
        result = self.ft.check_combination("C2:half sigma sum")
        self.assertEqual((result.status, result.detail), ("pass", "v = C2:v2"))
        self.assertEqual(self.ft.check_combination("C2~:sigma(1,g2)").status, "pass")
        self.assertEqual(self.ft.check_combination("S3:(1,r)+z3^2(g3,theta)+z3(g3,theta2)").status, "pass")

    def test_partial_combination(self):
        logger.info("\nTesting a combination elided in the source:")
        result = self.ft.check_combination("tail(E7:A3+A2+A1)")
        self.assertEqual(result.status, "partial")
        self.assertIn("unspecified", result.detail)

    def test_unknown_name(self):
        logger.info("\nTesting unknown combination names:")
        with self.assertRaises(CheckConfigError) as ctx:
            self.ft.run_check("selfdual", names=["C2:v2", "C2:v9"])
        self.assertEqual(ctx.exception.error_code, "UNKNOWN_COMBINATION")
        with self.assertRaises(CatalogError):
            self.ft.check_combination("C2:v9")

    def test_selection(self):
        logger.info("\nTesting the selection by group and unipotent class:")
        self.assertEqual(self.check.select("E7", "A4+A1"), ["gamma(E7:A4+A1)"])
        self.assertEqual(self.check.select(names=["C2:v2"]), ["C2:v2"])
        everything = self.check.select()
        self.assertIn("C2:v2", everything)
        self.assertIn("v5'", everything)
        self.assertEqual(len(everything), len(set(everything)))

    def test_explicit_names(self):
        logger.info("\nTesting a run over explicit names:")
        report = self.ft.run_check("selfdual", names=["v5'", "v5''", "u5", "v5", "u5'"])
        self.assertEqual(report.summary, {"pass": 5, "fail": 0, "partial": 0})

    def test_completed_u5_prime(self):
        logger.info("\nTesting the completion of the printed u5':")
        family = self.ft.catalog.family("4480_16")
        printed = named_combination(family, [
            ("xrho", "1", "1", 3), ("xrho", "1", "lambda1", 1), ("xrho", "1", "nu", 2), ("xrho", "g5", "1", 2),
            ("xrho", "g4", "1", 1), ("xrho", "g6", "1", 4), ("xrho", "g3", "1", 3), ("xrho", "g3", "-1", -1),
            ("xrho", "g2'", "1", 3), ("xrho", "g2'", "eps''", 1), ("xrho", "g2", "1", 4), ("xrho", "g2", "eps", 1),
            ("xrho", "g2", "r", 1)])
        # the (1,1) coordinate of the image only sees degrees and centralizer orders
        image = apply_ft(family, printed)
        self.assertEqual(image.coords[family.index("1", "1")], CycNum.rational(Fraction(23, 8)))
        self.assertFalse(is_ft_fixed(family, printed))
        completed = printed + combination_term(family, "xrho", "g2'", "eps'")
        self.assertTrue(is_ft_fixed(family, completed))
        self.assertEqual(self.ft.check_combination("u5'").status, "pass")
        self.assertIn("u5'", [c.where for c in self.ft.catalog.corrections])


class TestCountsCheck(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        Logger.set_debug_mode(True)
        logger.info("Setting up TestCountsCheck class")
        cls.ft = EllFT()

    def test_finite_centralizer(self):
        logger.info("\nTesting the pair count of F4(a3):")
        report = self.ft.run_check("counts", group="F4", unipotent="F4(a3)")
        self.assertEqual(len(report), 1)
        entry = report.checks[0]
        self.assertEqual(entry.status, "pass")
        self.assertEqual(entry.witness, {"stored": 21, "recomputed": 21})

    def test_torsion_model(self):
        logger.info("\nTesting the counted pairs of E7 A4+A1:")
        entry = self.ft.run_check("counts", group="E7", unipotent="A4+A1").checks[0]
        self.assertEqual(entry.status, "pass")
        self.assertEqual(entry.witness, {"stored": 3, "recomputed": 3})

    def test_all_records(self):
        logger.info("\nTesting one entry per unipotent record:")
        self.assertEqual(len(self.ft.run_check("counts")), 40)


class TestMutatedCatalog(unittest.TestCase):
    """A corrupted entry must turn into a failing report entry with a witness."""

    @classmethod
    def setUpClass(cls):
        Logger.set_debug_mode(True)
        logger.info("Setting up TestMutatedCatalog class")

    def load_mutated(self, mutate) -> EllFT:
        data = shipped_data()
        mutate(data)
        fd, path = tempfile.mkstemp(suffix=".json")
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            json.dump(data, f)
        self.addCleanup(os.remove, path)
        return EllFT(catalog_path=path)

    def test_changed_coefficient(self):
        logger.info("\nTesting a changed coefficient in F4(a3):")

        def mutate(data):
            find_restriction(data, "F4", "F4(a3)", "1", "g4")["terms"][1] = ["4_13", "xy", "1", "g2", 2]

        ft = self.load_mutated(mutate)
        report = ft.verify("main", group="F4", unipotent="F4(a3)")
        failed = {c.scope: c for c in report.by_status("fail")}
        self.assertEqual(sorted(failed), ["F4/F4(a3)/(1,g4)", "F4/F4(a3)/(g4,1)"])
        witness = failed["F4/F4(a3)/(1,g4)"].witness
        self.assertEqual(witness["family"], "4_13")
        self.assertEqual(witness["dual"], "F4/F4(a3)/(g4,1)")
        self.assertEqual(report.exit_status(), 1)

    def test_flipped_sign_on_twisted_family(self):
        logger.info("\nTesting a flipped sign in E7 A4+A1:")

        def mutate(data):
            find_restriction(data, "E7", "A4+A1", "1", "delta")["terms"][0] = ["512_11", "xy", "1", "g2"]

        ft = self.load_mutated(mutate)
        main = {c.scope: c for c in ft.verify("main", group="E7", unipotent="A4+A1")}
        self.assertEqual(main["E7/A4+A1/(1,delta)"].status, "fail")
        self.assertEqual(main["E7/A4+A1/(1,delta)"].witness["family"], "512_11")
        self.assertEqual(main["E7/A4+A1/(delta,delta)"].status, "pass")

        zeta = {c.scope: c for c in ft.verify("zeta", group="E7", unipotent="A4+A1")}
        entry = zeta["E7/A4+A1/(1,delta)"]
        self.assertEqual(entry.status, "fail")
        self.assertEqual(entry.witness["zeta"], "1")
        self.assertEqual(entry.witness["product"], "1")

    def test_non_root_of_unity(self):
        logger.info("\nTesting a leading coefficient that is not a root of unity:")

        def mutate(data):
            r = find_restriction(data, "E7", "A4+A1", "delta", "delta")
            r["terms"][0] = ["512_11", "xy", "g2", "g2", "-2*z4"]

        ft = self.load_mutated(mutate)
        zeta = {c.scope: c for c in ft.verify("zeta", group="E7", unipotent="A4+A1")}
        entry = zeta["E7/A4+A1/(delta,delta)"]
        self.assertEqual(entry.status, "fail")
        self.assertIn("root of unity", entry.detail)

    def test_missing_leading_term(self):
        logger.info("\nTesting a record without its leading term:")

        def mutate(data):
            r = find_restriction(data, "E7", "A4+A1", "delta", "delta")
            r["terms"] = r["terms"][1:]

        ft = self.load_mutated(mutate)
        entry = {c.scope: c for c in ft.run_check("zeta", group="E7", unipotent="A4+A1")}["E7/A4+A1/(delta,delta)"]
        self.assertEqual(entry.status, "fail")
        self.assertEqual(entry.witness, {"missing": "E7/A4+A1/(delta,delta)"})

    def test_wrong_pair_count(self):
        logger.info("\nTesting a wrong printed pair count:")

        def mutate(data):
            find_unipotent(data, "F4", "F4(a1)")["pair_count"] = 5

        ft = self.load_mutated(mutate)
        entry = ft.run_check("counts", group="F4", unipotent="F4(a1)").checks[0]
        self.assertEqual(entry.status, "fail")
        self.assertEqual(entry.witness, {"stored": 5, "recomputed": 4})
        self.assertIn("4 pairs recomputed, 5 printed", entry.detail)

    def test_broken_dual_reference(self):
        logger.info("\nTesting a dual reference that is not an involution:")

        def mutate(data):
            rec = find_unipotent(data, "E7", "A4+A1")
            rec["pairs"][0]["dual"] = ["delta", "delta"]

        ft = self.load_mutated(mutate)
        entry = ft.run_check("counts", group="E7", unipotent="A4+A1").checks[0]
        self.assertEqual(entry.status, "fail")
        self.assertIn("(1,delta)", entry.detail)

    def test_sampled_mutations(self):
        logger.info("\nTesting sampled single-entry mutations of E7 and E8 records:")
        data = shipped_data()
        explicit = {(r["group"], r["unipotent"], r.get("parahoric"), r["s"], r["h"]): r
                    for r in data["restrictions"] if "s" in r and r.get("completeness", "complete") == "complete"}
        pool = [key for key in explicit
                if key[0] in ("E7", "E8") and key[2] is None and key[3] != key[4]
                and (key[0], key[1], None, key[4], key[3]) in explicit]
        self.assertGreaterEqual(len(pool), 10)
        rng = random.Random(20240601)
        for _ in range(12):
            group, unipotent, _, s, h = rng.choice(pool)
            r = explicit[(group, unipotent, None, s, h)]
            entries = [("term", i) for i in range(len(r.get("terms", [])))]
            entries += [("singleton", name) for name in sorted(r.get("singletons", {}))]
            where, key = rng.choice(entries)
            flip = rng.random() < 0.5

            def mutate(data, where=where, key=key, flip=flip, target=(group, unipotent, s, h)):
                record = next(r for r in data["restrictions"] if "parahoric" not in r
                              and (r["group"], r["unipotent"], r.get("s"), r.get("h")) == target)
                if where == "term":
                    term = record["terms"][key]
                    coeff = term[4] if len(term) > 4 else 1
                    term[4:] = [f"-({coeff})" if flip else f"({coeff})+1"]
                else:
                    value = record["singletons"][key]
                    record["singletons"][key] = -value if flip else value + 1

            with self.subTest(record=f"{group}/{unipotent}/({s},{h})", entry=key, flip=flip):
                ft = self.load_mutated(mutate)
                failed = {c.scope for c in ft.verify("main", group=group, unipotent=unipotent).by_status("fail")}
                self.assertIn(f"{group}/{unipotent}/({s},{h})", failed)
                self.assertIn(f"{group}/{unipotent}/({h},{s})", failed)

    def test_wrong_self_dual_claim(self):
        logger.info("\nTesting a false self-duality claim:")

        def mutate(data):
            for combo in data["named_combinations"]:
                if combo["name"] == "C2:(1,1)-(g2,1)":
                    combo["claim"] = "self_dual"

        ft = self.load_mutated(mutate)
        result = ft.run_check("selfdual", names=["C2:(1,1)-(g2,1)"]).checks[0]
        self.assertEqual(result.status, "fail")
        self.assertEqual(result.witness["family"], "4_13")


class TestGaloisInvariance(unittest.TestCase):
    """Replacing i by -i in every coefficient leaves every verdict unchanged."""

    @classmethod
    def setUpClass(cls):
        Logger.set_debug_mode(True)
        logger.info("Setting up TestGaloisInvariance class")

    def verdicts(self, ft: EllFT) -> dict:
        return {(c.check_id, c.scope): c.status for c in ft.verify()}

    def test_i_to_minus_i(self):
        logger.info("\nTesting verdicts under z4 -> z4^3 on all coefficients:")
        data = shipped_data()
        changed = 0
        for section in ("restrictions", "named_combinations"):
            for entry in data[section]:
                for term in entry.get("terms", []):
                    if isinstance(term, list) and len(term) > 4:
                        old = parse_coeff(term[4])
                        new = old.galois(7)
                        changed += new != old
                        term[4] = format_coeff(new)
        self.assertGreater(changed, 0)
        fd, path = tempfile.mkstemp(suffix=".json")
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            json.dump(data, f)
        self.addCleanup(os.remove, path)

        shipped = self.verdicts(EllFT())
        conjugated = self.verdicts(EllFT(catalog_path=path))
        self.assertEqual(conjugated, shipped)
        self.assertNotIn("fail", shipped.values())


if __name__ == '__main__':
    unittest.main()
