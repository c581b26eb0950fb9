# Copyright 2026 The densecode Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python interface to the densecode library.

Scalar quantities come straight from the native core. Reports (bundles,
simulations, verification suites) are produced by the same code path as the
command-line tool and returned as parsed JSON.
"""

import json

from ._densecode import (
    InvariantError,
    PreconditionError,
    compute_r,
    gamma_closed_form,
    p1_bound_general,
    p1_equal_tail,
    parse_spectrum,
    run_cli,
    uniformity_witness,
)

__all__ = [
    "InvariantError",
    "PreconditionError",
    "CommandError",
    "bundle",
    "compute_r",
    "example_d2",
    "gamma_closed_form",
    "p1_bound_general",
    "p1_equal_tail",
    "parse_spectrum",
    "run_cli",
    "simulate",
    "uniformity_witness",
    "verify",
]


class CommandError(RuntimeError):
    def __init__(self, code, stderr):
        super().__init__(f"densecode exited with {code}: {stderr.strip()}")
        self.code = code
        self.stderr = stderr


def _json_command(*args, allow_failure=False):
    code, out, err = run_cli([str(a) for a in args] + ["--format", "json"])
    if code != 0 and not (allow_failure and code == 1 and out):
        raise CommandError(code, err)
    return json.loads(out)


def example_d2(seed=None):
    args = ["example-d2"]
    if seed is not None:
        args += ["--seed", seed]
    return _json_command(*args, allow_failure=True)


def bundle(spectrum="81/160,79/160", seed=None):
    args = ["bundle", "--spectrum", spectrum]
    if seed is not None:
        args += ["--seed", seed]
    return _json_command(*args)


def simulate(message, trials, spectrum="81/160,79/160", variant="measure", seed=None, threads=1):
    args = ["simulate", "--spectrum", spectrum, "--message", message, "--trials", trials,
            "--variant", variant, "--threads", threads]
    if seed is not None:
        args += ["--seed", seed]
    return _json_command(*args)


def verify(suite="all", d=2):
    return _json_command("verify", "--suite", suite, "--d", d, allow_failure=True)
