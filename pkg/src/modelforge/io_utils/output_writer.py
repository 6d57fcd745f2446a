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

import json
import os
from typing import Dict, List, Optional

import h5py
import numpy as np


def dumps(data: Dict, pretty: bool = False) -> str:
    """Deterministic JSON text of a report: sorted keys, compact unless pretty."""
    if pretty:
        return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


class OutputWriter:
    """Output writer for MODELFORGE. Every run gets its own folder below
    save_path named after the case, with a -1, -2, ... suffix if the
    name is taken. The folder holds the run configuration, the JSON
    report, JSON-lines transcripts and, on request, h5 dumps of the
    arrays a subcommand produced.

    run_folder
    ---- run_config.json
    ---- <subcommand>.json
    ---- <subcommand>.jsonl
    ---- <subcommand>.h5
    ---- instance-<k>/<role>.json
    """

    def __init__(self, save_path: str, case_name: str, pretty: bool = False, is_h5: bool = False) -> None:
        self.save_path  = save_path
        self.case_name  = case_name
        self.pretty     = pretty
        self.is_h5      = is_h5

        self.save_path_case = self.get_folder_name()

    def create_folder(self, run_config: Dict) -> None:
        """Creates the run folder and dumps the run configuration into it.

        :param run_config: Run configuration.
        :type run_config: Dict
        """
        os.makedirs(self.save_path_case)
        with open(os.path.join(self.save_path_case, "run_config.json"), "w") as json_file:
            json.dump(run_config, json_file, ensure_ascii=False, indent=4, sort_keys=True)

    def get_folder_name(self) -> str:
        """Returns a name for the run folder based on the case name.

        :return: Path to the run folder.
        :rtype: str
        """
        case_name_folder = self.case_name

        if not os.path.exists(self.save_path):
            os.makedirs(self.save_path)

        i = 1
        while os.path.exists(os.path.join(self.save_path, case_name_folder)):
            case_name_folder = self.case_name + "-%d" % i
            i += 1
        return os.path.join(self.save_path, case_name_folder)

    def write_report(self, name: str, report: Dict) -> str:
        path = os.path.join(self.save_path_case, name + ".json")
        with open(path, "w") as json_file:
            json_file.write(dumps(report, self.pretty) + "\n")
        return path

    def write_jsonl(self, name: str, records: List[Dict]) -> str:
        path = os.path.join(self.save_path_case, name + ".jsonl")
        with open(path, "w") as jsonl_file:
            for record in records:
                jsonl_file.write(dumps(record) + "\n")
        return path

    def write_h5file(self, name: str, arrays: Dict[str, np.ndarray],
            attributes: Optional[Dict[str, int]] = None) -> Optional[str]:
        """Writes the arrays as datasets of <name>.h5, nothing unless h5
        output is active.

        :param name: File name without extension.
        :type name: str
        :param arrays: Dataset name to array, "/" separated names create groups.
        :type arrays: Dict[str, np.ndarray]
        :param attributes: Integer attributes of the root group, defaults to None
        :type attributes: Optional[Dict[str, int]], optional
        :return: Path of the file or None.
        :rtype: Optional[str]
        """
        if not self.is_h5 or not arrays:
            return None
        path = os.path.join(self.save_path_case, name + ".h5")
        with h5py.File(path, "w") as h5file:
            for key, array in sorted(arrays.items()):
                array = np.asarray(array)
                dtype = "u1" if array.dtype == bool else "i8"
                h5file.create_dataset(name=key, data=array.astype(dtype), dtype=dtype)
            for key, value in sorted((attributes or {}).items()):
                h5file.attrs[key] = value
        return path

    def write_instance(self, k: int, instance: Dict[str, Dict]) -> str:
        """Writes one generated instance as folder instance-k with one
        JSON file per input role."""
        folder = os.path.join(self.save_path_case, "instance-%d" % k)
        os.makedirs(folder, exist_ok=True)
        for role, data in sorted(instance.items()):
            with open(os.path.join(folder, role + ".json"), "w") as json_file:
                json_file.write(dumps(data, self.pretty) + "\n")
        return folder
