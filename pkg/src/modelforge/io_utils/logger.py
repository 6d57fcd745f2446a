#*------------------------------------------------------------------------------*
#* MODELFORGE -                                                                 *
#*                                                                              *
#* A finite-model-theory workbench: reduced products, coherent families,        *
#* Delta-embeddings and Ehrenfeucht-Fraisse games on finite structures.         *
#* Copyright (C) 2026  MODELFORGE developers                                    *
#*                                                                              *
#* This program is free software: you can redistribute it and/or modify         *
#* it under the terms of the GNU General Public License as published by         *
#* the Free Software Foundation, either version 3 of the License, or            *
#* (at your option) any later version.                                          *
#*                                                                              *
#* This program is distributed in the hope that it will be useful,              *
#* but WITHOUT ANY WARRANTY; without even the implied warranty of               *
#* MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the                *
#* GNU General Public License for more details.                                 *
#*                                                                              *
#* You should have received a copy of the GNU General Public License            *
#* along with this program.  If not, see <https://www.gnu.org/licenses/>.       *
#*                                                                              *
#*------------------------------------------------------------------------------*

import logging
import os
import sys
from typing import Dict, List, Optional


class Logger:
    """Logger for the MODELFORGE workbench.
    Logs information on a subcommand run to file and/or screen. Screen
    output goes to stderr, stdout carries the JSON report only."""

    def __init__(self, logger_name: str = "modelforge", logging_level: str = "INFO") -> None:
        self.logger_name = logger_name

        self.level_dict    = {
            "DEBUG": logging.DEBUG,
            "INFO": logging.INFO,
            "WARNING": logging.WARNING,
            "ERROR": logging.ERROR,
            "NONE": logging.CRITICAL}

        self.is_streamoutput = True
        if logging_level in ["DEBUG_TO_FILE", "INFO_TO_FILE", "WARNING_TO_FILE", "ERROR_TO_FILE"]:
            logging_level = logging_level[:-8]
            self.is_streamoutput = False

        assert logging_level in self.level_dict, \
            "logging level must be one of %s or a *_TO_FILE variant" % list(self.level_dict)
        self.logging_level = self.level_dict[logging_level]
        self.logger = logging.getLogger(self.logger_name)

    def configure_logger(self, log_path: Optional[str] = None) -> None:
        """Configures the logger. Sets up formatter, stream handler and,
        if a path is given, a file handler writing output.log.

        :param log_path: Folder to which the log is saved, defaults to None
        :type log_path: Optional[str], optional
        """
        logger = logging.getLogger(self.logger_name)
        if logger.hasHandlers():
            logger.handlers.clear()
        logger.propagate = False

        logger.setLevel(self.logging_level)
        formatter = logging.Formatter('%(message)s')

        if self.is_streamoutput:
            stream_handler = logging.StreamHandler(sys.stderr)
            stream_handler.setLevel(self.logging_level)
            stream_handler.setFormatter(formatter)
            logger.addHandler(stream_handler)

        if log_path is not None:
            file_handler = logging.FileHandler(os.path.join(os.path.abspath(log_path), 'output.log'))
            file_handler.setLevel(self.logging_level)
            file_handler.setFormatter(formatter)
            logger.addHandler(file_handler)

        self.logger = logger

    def log_modelforge(self) -> None:
        self.logger.info("*                                                                              *")
        self.logger.info("*     __  __  ___  ___   ___  _     ___  ___   ___  ___  ___                   *")
        self.logger.info("*    |  \\/  |/ _ \\|   \\ | __|| |   | __|/ _ \\ | _ \\/ __|| __|                  *")
        self.logger.info("*    | |\\/| | (_) | |) || _| | |__ | _|| (_) ||   / (_ || _|                   *")
        self.logger.info("*    |_|  |_|\\___/|___/ |___||____||_|  \\___/ |_|_\\\\___||___|                  *")
        self.logger.info("*                                                                              *")

    def log_initialization(self) -> None:
        """Logs the initialization of the WorkbenchManager.
        """
        self.hline()
        self.nline()
        self.log_modelforge()
        self.logger.info("{}{:^78}{}".format("*", "finite model theory workbench", "*"))
        self.nline()
        self.hline()

    def log_setup(self, setup_dict: Dict) -> None:
        """Logs the run configuration.

        :param setup_dict: Dictionary with the run configuration.
        :type setup_dict: Dict
        """
        self.nline()
        self.logger.info("{}{:^78}{}".format("*", "RUN CONFIGURATION", "*"))
        self.nline()
        for key, item in setup_dict.items():
            if isinstance(item, dict):
                self.logger.info("{}    {:<74}{}".format("*", key, "*"))
                for subkey, subitem in item.items():
                    self.logger.info("{}        {:<29}:    {:<36}{}".format("*", subkey, str(subitem)[:36], "*"))
            else:
                self.logger.info("{}    {:<33}:    {:<36}{}".format("*", key, str(item)[:36], "*"))
        self.nline()
        self.hline()

    def log_subcommand_start(self, subcommand: str) -> None:
        self.nline()
        self.logger.info("{}{:^78}{}".format("*", "RUNNING %s" % subcommand.upper(), "*"))
        self.nline()

    def log_step(self, info_list: List[str]) -> None:
        """Logs information on an intermediate step of a subcommand.

        :param info_list: Lines to be printed.
        :type info_list: List[str]
        """
        for line in info_list:
            self.logger.info("{}    {:<74}{}".format("*", line[:74], "*"))

    def log_report(self, summary: Dict[str, bool]) -> None:
        """Logs the verdict of every checked condition.

        :param summary: Condition name to pass/fail.
        :type summary: Dict[str, bool]
        """
        self.nline()
        for name, passed in summary.items():
            self.logger.info("{}    {:<33}:    {:<36}{}".format("*", name[:33], "PASSED" if passed else "FAILED", "*"))
        self.nline()

    def log_budget_warning(self, message: str) -> None:
        self.logger.warning("{}    {:<74}{}".format("*", ("BUDGET: " + message)[:74], "*"))

    def log_subcommand_finish(self, status: str, wall_time: float) -> None:
        """Logs the end of a subcommand.

        :param status: Final status, e.g. "SUCCESS" or "VIOLATION".
        :type status: str
        :param wall_time: Wall clock time in seconds.
        :type wall_time: float
        """
        self.hline()
        self.nline()
        self.logger.info("{}{:^78}{}".format("*", "FINISHED WITH STATUS %s" % status, "*"))
        self.logger.info("{}{:^78}{}".format("*", "WALL TIME %.3es" % wall_time, "*"))
        self.nline()
        self.hline()

        self._shutdown_logger()

    def _shutdown_logger(self) -> None:
        """Shutsdown logger.
        Closes handlers and removes them from logger.
        """
        for handler in self.logger.handlers[:]:
            handler.close()
            self.logger.removeHandler(handler)

    def hline(self) -> None:
        """Inserts a dashed horizontal line in log.
        """
        self.logger.info("{}{}{}".format("*", "-"*78, "*"))

    def nline(self) -> None:
        """Inserts a line break in log.
        """
        self.logger.info("{:<40}{:>40}".format("*", "*"))
