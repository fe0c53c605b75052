# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Name normalization, imputation, record linkage and tagging for Persian/Dari records.

CSV arguments are CSV text in the dariq column layout, not paths.
"""

import json

from . import _dariq
from ._dariq import (
    DariqError,
    Profile,
    clean,
    dice_similarity,
    edit_ratio,
    normalize,
    normalized_key,
    strip_all_spaces,
    substitute,
    transliterate,
    trim_builtin,
)

__all__ = [
    "DariqError",
    "Profile",
    "clean",
    "dice_similarity",
    "edit_ratio",
    "generate",
    "impute",
    "link",
    "normalize",
    "normalized_key",
    "strip_all_spaces",
    "substitute",
    "tag",
    "top_n",
    "transliterate",
    "trim_builtin",
    "validate",
]


def top_n(csv, field="first_name", n=10, keying="stripped", gender=None, profile=None):
    """Most frequent names as dicts with rank, key, display and count."""
    rows = _dariq.top_n(csv, field, n, keying, gender, profile or Profile.defaults())
    return [dict(zip(("rank", "key", "display", "count"), r)) for r in rows]


def impute(csv, target, min_support=2, dominance=0.9, use_school_hint=False, profile=None):
    """Fill missing gender or province. Returns (csv_text, report)."""
    out, report = _dariq.impute(csv, target, min_support, dominance, use_school_hint, profile or Profile.defaults())
    return out, json.loads(report)


def link(left, right, profile=None):
    """Exact join of person rows to school rows. Returns (matches_csv, result)."""
    matches, result = _dariq.link(left, right, profile or Profile.defaults())
    return matches, json.loads(result)


def generate(provider, n, seed, **missing):
    """Synthetic person CSV. `provider` is a dict or JSON text in the provider format."""
    if not isinstance(provider, str):
        provider = json.dumps(provider, ensure_ascii=False)
    return _dariq.generate(provider, n, seed, **missing)


def tag(text, gazetteer_csv, with_provinces=True, profile=None):
    """Entity spans found in `text`, as a list of dicts."""
    return json.loads(_dariq.tag(text, gazetteer_csv, with_provinces, profile or Profile.defaults()))["entities"]


def validate(csv, schema="person"):
    return json.loads(_dariq.validate(csv, schema))
