# Copyright 2026 The Datadesc Authors
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

"""Python bindings for the datadesc toolchain."""

import json as _json

from . import _core

__version__ = _core.__version__

LANGUAGE_ID = "datadesc"
FILE_EXTENSION = ".ddesc"


class DescriptionError(ValueError):
    """A description or input that does not build. ``diagnostics`` holds the details."""

    def __init__(self, diagnostics):
        self.diagnostics = diagnostics
        codes = ", ".join(d["code"] for d in diagnostics) or "unknown"
        super().__init__(f"invalid input ({codes})")


def _call(fn, *args):
    try:
        return fn(*args)
    except ValueError as e:
        payload = _json.loads(str(e))
        raise DescriptionError(payload if isinstance(payload, list) else [payload]) from None


def check(text, csv=""):
    """Diagnostics as a list of dicts with code, severity, message and span."""
    return _json.loads(_core.check(text, csv))


def load(text):
    """The semantic model as canonical JSON (a dict)."""
    return _json.loads(_call(_core.model_json, text))


def format(text):
    return _call(_core.format, text)


def to_markdown(text):
    return _call(_core.to_markdown, text)


def to_html(text):
    return _call(_core.to_html, text)


def completeness(text):
    return _json.loads(_call(_core.completeness, text))


def diff(a, b):
    return _json.loads(_call(_core.diff, a, b))


def scaffold(csv, title, name="data"):
    return _call(_core.scaffold, csv, title, name)


class Registry:
    """In-memory search index over descriptions."""

    def __init__(self):
        self._impl = _core.Registry()

    def add(self, text):
        return _call(self._impl.add, text)

    def search(self, query=""):
        return _json.loads(_call(self._impl.search, query))["matches"]

    def __len__(self):
        return len(self._impl)


__all__ = [
    "DescriptionError",
    "Registry",
    "check",
    "completeness",
    "diff",
    "format",
    "load",
    "scaffold",
    "to_html",
    "to_markdown",
]
