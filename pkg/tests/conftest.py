from __future__ import annotations

import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

# Всегда добавляем корень репозитория в PYTHONPATH, чтобы `import app`
# работал независимо от того, из какого интерпретатора запускают pytest.
ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from app.algebra.elements import ZERO_ELEMENT, BasisSym, Element, Family  # noqa: E402
from app.algebra.homlie import HomAlgebra, make_wq  # noqa: E402
from app.config import get_settings  # noqa: E402
from app.kernel.qfield import ang  # noqa: E402

# Точная арифметика медленная: без дедлайна.
settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=150, deadline=None)
settings.register_profile("quick", max_examples=10, deadline=None)
settings.load_profile(os.getenv("HOMLIE_HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(autouse=True)
def _fresh_settings():
    """Не тащить закэшированные настройки между тестами."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture()
def wq() -> HomAlgebra:
    return make_wq()


@pytest.fixture()
def corrupted() -> HomAlgebra:
    """W_q, у которой [L_n, L_m] = L_(m+n) с коэффициентом 1: Hom-Якоби ломается."""

    def rule(x: BasisSym, y: BasisSym) -> Element:
        if x.family is Family.L and y.family is Family.L:
            return Element.of(BasisSym(Family.L, x.degree + y.degree))
        return ZERO_ELEMENT

    def twist(x: BasisSym) -> Element:
        return Element.of(x, ang(x.degree))

    return HomAlgebra("corrupted", (Family.L, Family.M), rule, twist)
