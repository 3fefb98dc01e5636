# Copyright 2026 The wgsq-lib Authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

from scipy.sparse.linalg import ArpackNoConvergence


def is_retryable_exception(err):
    """
    Args:
        err: An exception

    Returns:
        True if the exception should trigger a retry of an eigen-solve with a
        larger Krylov subspace

    """
    if isinstance(err, ArpackNoConvergence):
        return True

    if isinstance(err, NumericalError):
        return err.retryable

    return False


class WgsqException(Exception):
    pass


class RangeError(WgsqException, ValueError):
    """A wavelength, frequency or table lookup fell outside the valid range"""

    def __init__(self, message, name=None, bounds=None):
        super().__init__(message)
        self.name = name
        self.bounds = bounds


class GeometryError(WgsqException, ValueError):
    pass


class NumericalError(WgsqException):
    def __init__(self, message, residual=None, retryable=False):
        super().__init__(message)
        self.residual = residual
        self.retryable = retryable


class BracketError(WgsqException, ValueError):
    pass


class DispersionError(WgsqException, ValueError):
    pass


class DomainError(WgsqException, ValueError):
    pass


class InconsistentBudgetError(WgsqException, ValueError):
    pass


class FitError(WgsqException):
    def __init__(self, message, best_params=None):
        super().__init__(message)
        self.best_params = best_params


class SettingsError(WgsqException, ValueError):
    pass


class ParseError(WgsqException):
    def __init__(self, message, line=None, source=None):
        if line is not None:
            message = "{} (line {})".format(message, line)
        if source is not None:
            message = "{}: {}".format(source, message)
        super().__init__(message)
        self.line = line
        self.source = source


class ConfigError(WgsqException):
    def __init__(self, message, key=None):
        if key is not None:
            message = "{}: {}".format(key, message)
        super().__init__(message)
        self.key = key


class UsageError(WgsqException, ValueError):
    pass
