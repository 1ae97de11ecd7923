import unittest
import sys
import os
import json
import logging
import tempfile
from pathlib import Path
from unittest.mock import patch

from pydantic import ValidationError

# Add src to path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src import logger_config
from src import settings_manager
from src.config import Config
from src.perm_core import StatKind
from src.poly_table import PolynomialRecord, records_to_frame, render
from src.qpoly import QPolynomial


class TestConfig(unittest.TestCase):
    def test_defaults(self):
        with patch.dict(os.environ, {}, clear=True):
            cfg = Config()
        self.assertEqual(cfg.JOBS, 1)
        self.assertEqual(cfg.LOG_LEVEL, "INFO")
        self.assertEqual(
            cfg.get_paths(),
            {"settings_file": "./config/verify_settings.json", "report_dir": "./reports", "log_dir": "./logs"},
        )

    def test_environment_overrides(self):
        with patch.dict(os.environ, {"PERMSTATS_JOBS": "4", "PERMSTATS_LOG_LEVEL": "debug"}):
            cfg = Config()
        self.assertEqual(cfg.JOBS, 4)
        self.assertEqual(cfg.LOG_LEVEL, "DEBUG")

    def test_invalid_values_listed_together(self):
        with patch.dict(os.environ, {"PERMSTATS_JOBS": "zero", "PERMSTATS_LOG_LEVEL": "LOUD"}):
            with self.assertRaises(ValueError) as ctx:
                Config()
        message = str(ctx.exception)
        self.assertIn("PERMSTATS_JOBS", message)
        self.assertIn("PERMSTATS_LOG_LEVEL", message)

    def test_jobs_must_be_positive(self):
        with patch.dict(os.environ, {"PERMSTATS_JOBS": "0"}):
            with self.assertRaises(ValueError):
                Config()


class TestSettings(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.path = Path(self.tmp.name) / "verify_settings.json"
        fresh = json.loads(json.dumps(settings_manager.DEFAULT_SETTINGS))
        self.patches = [
            patch.object(settings_manager, "SETTINGS_FILE", self.path),
            patch.object(settings_manager, "_current_settings", fresh),
        ]
        for p in self.patches:
            p.start()

    def tearDown(self):
        for p in self.patches:
            p.stop()
        self.tmp.cleanup()

    def test_missing_file_gives_defaults(self):
        self.assertEqual(settings_manager.default_max_n("table1"), 8)
        self.assertEqual(settings_manager.get_setting("default_format"), "text")

    def test_partial_bounds_merge_over_defaults(self):
        self.path.write_text(json.dumps({"max_n": {"table1": 6}}))
        self.assertEqual(settings_manager.default_max_n("table1"), 6)
        self.assertEqual(settings_manager.default_max_n("thm3.4"), 10)

    def test_save_and_reload(self):
        settings_manager.save_settings({"default_format": "json"})
        saved = json.loads(self.path.read_text())
        self.assertEqual(saved["default_format"], "json")
        self.assertEqual(settings_manager.get_setting("default_format"), "json")

    def test_unreadable_file_keeps_defaults(self):
        self.path.write_text("{not json")
        self.assertEqual(settings_manager.default_max_n("sanity"), 7)

    def test_unknown_check_name(self):
        with self.assertRaises(KeyError):
            settings_manager.default_max_n("thm9.9")


class TestPolyTable(unittest.TestCase):
    def setUp(self):
        self.records = [
            PolynomialRecord.from_poly(2, StatKind.DES, "132", QPolynomial((1, 1))),
            PolynomialRecord.from_poly(3, StatKind.DES, "132", QPolynomial((1, 3, 1))),
        ]

    def test_record(self):
        self.assertEqual(self.records[1].poly, QPolynomial((1, 3, 1)))
        with self.assertRaises(ValidationError):
            PolynomialRecord(n=-1, stat="des", patterns="", coeffs=[1])
        with self.assertRaises(ValidationError):
            PolynomialRecord(n=1, stat="peaks", patterns="", coeffs=[1])

    def test_frame_pads_short_rows(self):
        frame = records_to_frame(self.records)
        self.assertEqual(list(frame.columns), ["n", "c0", "c1", "c2"])
        self.assertEqual(frame.iloc[0].tolist(), [2, 1, 1, 0])

    def test_text(self):
        self.assertEqual(
            render(self.records, "text"),
            "n=2 des coeffs=1,1 poly=1+q\nn=3 des coeffs=1,3,1 poly=1+3q+q^2\n",
        )

    def test_json(self):
        rows = json.loads(render(self.records, "json"))
        self.assertEqual([r["coeffs"] for r in rows], [[1, 1], [1, 3, 1]])
        single = json.loads(render(self.records[:1], "json"))
        self.assertEqual(single["stat"], "des")

    def test_csv(self):
        self.assertEqual(render(self.records, "csv"), "n,c0,c1,c2\n2,1,1,0\n3,1,3,1\n")

    def test_unknown_format(self):
        with self.assertRaises(ValueError):
            render(self.records, "xlsx")


class TestLogging(unittest.TestCase):
    def test_named_loggers(self):
        logger = logger_config.get_logger("src.enumeration")
        self.assertEqual(logger.name, "src.enumeration")

    def test_console_level(self):
        logger_config.set_console_level(logging.INFO)
        levels = [h.level for h in logging.getLogger().handlers if type(h).__name__ == "RichHandler"]
        self.assertEqual(levels, [logging.INFO])
        logger_config.set_console_level(logger_config.CONSOLE_LOG_LEVEL)


if __name__ == "__main__":
    unittest.main()
